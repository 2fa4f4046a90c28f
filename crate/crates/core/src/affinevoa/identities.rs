//! Weight-one Lie structure, the commutator formula, and Zhu's products.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{binomial, sign, Scalar};

use super::module::{State, TruncatedModule};

fn expect_grade(s: &State, g: i64) -> Result<()> {
    if s.grade != g {
        return Err(Error::WrongGrade {
            expected: g as usize,
            found: s.grade.max(0) as usize,
        });
    }
    Ok(())
}

/// `[u, v] = u_0 v` on `V_1`.
pub fn weight_one_bracket(m: &TruncatedModule, u: &State, v: &State) -> Result<State> {
    expect_grade(u, 1)?;
    expect_grade(v, 1)?;
    m.field_coeff(u, 0, v)
}

/// `B(u, v)` with `u_1 v = B(u, v)1`.
pub fn weight_one_form(m: &TruncatedModule, u: &State, v: &State) -> Result<Scalar> {
    expect_grade(u, 1)?;
    expect_grade(v, 1)?;
    Ok(m.field_coeff(u, 1, v)?.vec.get(0))
}

fn parity_sign(m: &TruncatedModule, u: &State, v: &State) -> Result<Scalar> {
    let p = |s: &State| {
        if s.is_zero() {
            Ok(false)
        } else {
            m.parity(s)
                .map(|p| p.is_odd())
                .ok_or_else(|| Error::InvalidArgument("state is not parity-homogeneous".into()))
        }
    };
    Ok(sign(p(u)? && p(v)?))
}

/// Checks `u_m v_n w - (-1)^{[u][v]} v_n u_m w = Σ_{i≥0} C(m,i) (u_i v)_{m+n-i} w`.
pub fn commutator_identity_check(
    m: &TruncatedModule,
    u: &State,
    v: &State,
    w: &State,
    mm: i32,
    n: i32,
) -> Result<bool> {
    let s = parity_sign(m, u, v)?;
    let lhs1 = m.field_coeff(u, mm, &m.field_coeff(v, n, w)?)?;
    let lhs2 = m.field_coeff(v, n, &m.field_coeff(u, mm, w)?)?;
    let lhs = m.add(&lhs1, &m.scale(&lhs2, &-s));
    let mut rhs = m.zero(lhs.grade);
    // u_i v = 0 once i ≥ wt u + wt v.
    for i in 0..(u.grade + v.grade).max(0) {
        let c = binomial(mm as i64, i as u32);
        if c.is_zero() {
            continue;
        }
        let uv = m.field_coeff(u, i as i32, v)?;
        let t = m.field_coeff(&uv, mm + n - i as i32, w)?;
        rhs = m.add(&rhs, &m.scale(&t, &c));
    }
    Ok(lhs == rhs)
}

/// `Σ_{i=0}^{wt u} C(wt u, i) u_{i+shift} v`, keyed by grade.
fn zhu_sum(m: &TruncatedModule, u: &State, v: &State, shift: i32) -> Result<BTreeMap<i64, State>> {
    if u.grade < 0 {
        return Err(Error::InvalidArgument(
            "u must have nonnegative grade".into(),
        ));
    }
    let mut out: BTreeMap<i64, State> = BTreeMap::new();
    for i in 0..=u.grade {
        let t = m.field_coeff(u, i as i32 + shift, v)?;
        if t.is_zero() {
            continue;
        }
        let t = m.scale(&t, &binomial(u.grade, i as u32));
        match out.remove(&t.grade) {
            Some(prev) => {
                let sum = m.add(&prev, &t);
                if !sum.is_zero() {
                    out.insert(sum.grade, sum);
                }
            }
            None => {
                out.insert(t.grade, t);
            }
        }
    }
    Ok(out)
}

/// `u∘v = Res_z (1+z)^{wt u} z^{-2} Y(u,z)v = Σ_i C(wt u, i) u_{i-2} v`.
pub fn zhu_circle(m: &TruncatedModule, u: &State, v: &State) -> Result<BTreeMap<i64, State>> {
    zhu_sum(m, u, v, -2)
}

/// `u*v = Res_z (1+z)^{wt u} z^{-1} Y(u,z)v = Σ_i C(wt u, i) u_{i-1} v`.
pub fn zhu_star(m: &TruncatedModule, u: &State, v: &State) -> Result<BTreeMap<i64, State>> {
    zhu_sum(m, u, v, -1)
}
