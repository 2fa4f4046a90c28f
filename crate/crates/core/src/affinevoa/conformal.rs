use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{frac, int, Scalar};

use super::module::{State, TruncatedModule};

/// The Sugawara conformal vector and the central charge read off from it.
#[derive(Clone, Debug)]
pub struct ConformalData {
    pub omega: State,
    pub h_dual: Scalar,
    /// `c = 2·⟨1, L(2)ω⟩`, from `[L(2), L(-2)]1 = (4L(0) + c/2)1`.
    pub c: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConformalJson {
    pub h_dual: String,
    pub c: String,
    pub c_sugawara: String,
}

impl ConformalData {
    /// `k·sdim(g)/(k+h∨)`, an independent formula for `c`.
    pub fn sugawara_c(&self, m: &TruncatedModule) -> Scalar {
        let k = m.level();
        k * int(m.algebra().superdimension()) / (k + &self.h_dual)
    }

    pub fn to_json(&self, m: &TruncatedModule) -> ConformalJson {
        ConformalJson {
            h_dual: self.h_dual.to_string(),
            c: self.c.to_string(),
            c_sugawara: self.sugawara_c(m).to_string(),
        }
    }
}

/// `ω = 1/(2(k+h∨)) Σ_i b^i(-1)a^i(-1)1` with `(a^i|b^j) = δ_ij`.
///
/// With this ordering `L(0)` acts on `x(-1)1` by 1 for odd `x` as well; the
/// opposite ordering introduces the sign `(-1)^{[a^i]}`.
pub fn conformal(m: &TruncatedModule) -> Result<ConformalData> {
    if m.cutoff() < 2 {
        return Err(Error::CutoffExceeded {
            grade: 2,
            cutoff: m.cutoff(),
        });
    }
    let g = m.algebra();
    let h_dual = g.dual_coxeter()?;
    let denom = m.level() + &h_dual;
    if denom.is_zero() {
        return Err(Error::CriticalLevel(m.level().clone()));
    }
    let pair = g.dual_bases()?;
    let mut omega = m.zero(2);
    for (a, b) in pair.a.iter().zip(&pair.b) {
        let s = m.weight_one(a)?;
        let t = m.mode_action_vec(b, -1, &s)?;
        omega = m.add(&omega, &t);
    }
    let omega = m.scale(&omega, &(frac(1, 2) / denom));
    let l2 = virasoro(m, &omega, 2, &omega)?;
    let c = int(2) * l2.vec.get(0);
    Ok(ConformalData { omega, h_dual, c })
}

/// `L(n)v = ω_{n+1}v`.
pub fn virasoro(m: &TruncatedModule, omega: &State, n: i32, v: &State) -> Result<State> {
    m.field_coeff(omega, n + 1, v)
}

/// Outcome of checking the Virasoro relations on basis states.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VirasoroSummary {
    pub max_grade: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Checks `[L(a), L(b)] = (a-b)L(a+b) + δ_{a+b,0}(a³-a)c/12` for
/// `-2 ≤ a, b ≤ 2` on the basis states of grades `≤ max_grade`, skipping
/// combinations that would leave the cutoff.
pub fn virasoro_check(
    m: &TruncatedModule,
    cd: &ConformalData,
    max_grade: usize,
) -> Result<VirasoroSummary> {
    let top = m.cutoff() as i64;
    let fits = |g: i64| (0..=top).contains(&g);
    let mut summary = VirasoroSummary {
        max_grade: max_grade.min(m.cutoff()),
        ..Default::default()
    };
    for g in 0..=summary.max_grade {
        for i in m.quotient_basis(g) {
            let v = m.basis_state(g, i);
            let gi = g as i64;
            for a in -2..=2i32 {
                for b in -2..=2i32 {
                    if !(fits(gi - a as i64) && fits(gi - b as i64) && fits(gi - (a + b) as i64)) {
                        continue;
                    }
                    let ab = virasoro(m, &cd.omega, a, &virasoro(m, &cd.omega, b, &v)?)?;
                    let ba = virasoro(m, &cd.omega, b, &virasoro(m, &cd.omega, a, &v)?)?;
                    let lhs = m.add(&ab, &m.scale(&ba, &int(-1)));
                    let mut rhs =
                        m.scale(&virasoro(m, &cd.omega, a + b, &v)?, &int((a - b) as i64));
                    if a + b == 0 {
                        let central = frac((a * a * a - a) as i64, 12) * &cd.c;
                        rhs = m.add(&rhs, &m.scale(&v, &central));
                    }
                    summary.checked += 1;
                    if lhs != rhs {
                        summary
                            .failures
                            .push(format!("[L({a}), L({b})] on {}", m.format_state(&v)));
                    }
                }
            }
        }
    }
    Ok(summary)
}
