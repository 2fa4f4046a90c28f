//! Graded `C_2` spans, `C_2` quotient dimensions, the closure lemmas, and
//! nilpotency of vertex operators of root vectors.
//!
//! `C_2(V)` is spanned by the `u_{-2}v`, which are homogeneous of weight
//! `wt u + wt v + 1`, so `C_2(V)` is graded and each graded piece only
//! involves states of lower grade. This is what makes the computation exact
//! at a finite cutoff.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::affinevoa::{State, TruncatedModule};
use crate::error::{Error, Result};
use crate::linalg::{self, int, EchelonBuilder, Scalar, SparseVec, Subspace};

/// `C_2(V)_m` as a subspace of grade `m`, spanned by canonical
/// representatives (so its rank is the dimension inside the quotient).
///
/// For `n ≥ 2`, `x(-n)v = (x(-1)1)_{-n}v ∈ C_2(V)`. Conversely the iterate
/// formula writes `(x(-1)w)_{-2}v` as `x(-1)(w_{-2}v)` plus terms `x(-n)(…)`,
/// `n ≥ 2`, plus `w_{-3-i}(x(i)v)`, so by induction on the length of `w`,
/// `C_2(V)` is the span of the PBW monomials containing a mode `≤ -2`. The
/// quotient case follows from `C_2(V/I) = (C_2(V)+I)/I`.
pub fn c2_grade(m: &TruncatedModule, grade: usize) -> Result<Subspace> {
    if grade > m.cutoff() {
        return Err(Error::CutoffExceeded {
            grade: grade as i64,
            cutoff: m.cutoff(),
        });
    }
    let basis = m.basis(grade);
    let spanning: Vec<SparseVec> = basis
        .monomials
        .iter()
        .enumerate()
        .filter(|(_, mono)| mono.first().is_some_and(|x| x.n <= -2))
        .map(|(i, _)| Ok(m.canonical(m.basis_state(grade, i))?.vec))
        .collect::<Result<_>>()?;
    span_by_blocks(m, grade, spanning)
}

/// Echelon form of `vs` in grade `grade`, split along weight blocks. Each
/// input vector must lie in a single block.
fn span_by_blocks(m: &TruncatedModule, grade: usize, vs: Vec<SparseVec>) -> Result<Subspace> {
    let dim = m.pbw_dim(grade);
    let block_of = &m.weight_blocks()[grade];
    let mut per_block: HashMap<usize, Vec<SparseVec>> = HashMap::new();
    for v in vs {
        let Some((lead, _)) = v.leading() else {
            continue;
        };
        debug_assert!(v.iter().all(|(i, _)| block_of[i] == block_of[lead]));
        per_block.entry(block_of[lead]).or_default().push(v);
    }
    let mut groups: Vec<Vec<SparseVec>> = per_block.into_values().collect();
    groups.sort_by_key(|g| g[0].leading().map(|(i, _)| i));
    let blocks: Vec<Subspace> = groups
        .into_par_iter()
        .map(|g| {
            let mut b = EchelonBuilder::new(dim);
            b.insert_many(&g)?;
            Ok(b.finish())
        })
        .collect::<Result<_>>()?;
    Ok(Subspace::from_disjoint_blocks(dim, blocks))
}

/// The same span computed directly from the definition: `u_{-2}v` for all
/// basis states `u` of grades `1..m` and `v` of grade `m - 1 - wt u`.
pub fn c2_grade_brute_force(m: &TruncatedModule, grade: usize) -> Result<Subspace> {
    if grade > m.cutoff() {
        return Err(Error::CutoffExceeded {
            grade: grade as i64,
            cutoff: m.cutoff(),
        });
    }
    let mut rows = Vec::new();
    for a in 1..grade {
        let b = grade - 1 - a;
        for i in m.quotient_basis(a) {
            let u = m.basis_state(a, i);
            for j in m.quotient_basis(b) {
                let v = m.basis_state(b, j);
                rows.push(m.field_coeff(&u, -2, &v)?.vec);
            }
        }
    }
    linalg::echelonize_dim(m.pbw_dim(grade), &rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C2Row {
    pub grade: usize,
    pub pbw_dim: usize,
    pub dim: usize,
    pub c2_rank: usize,
    pub quotient_dim: usize,
}

/// Graded dimensions of `V/C_2(V)` up to the cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C2Report {
    pub algebra: String,
    pub k: String,
    #[serde(rename = "N")]
    pub cutoff: usize,
    pub simple_quotient: bool,
    pub rows: Vec<C2Row>,
    /// Least grade from which every computed quotient dimension is zero.
    /// Only an observation at this cutoff.
    pub m0: Option<usize>,
}

pub fn c2_report(m: &TruncatedModule) -> Result<C2Report> {
    let rows: Vec<C2Row> = (0..=m.cutoff())
        .map(|g| {
            let c2 = c2_grade(m, g)?;
            let dim = m.grade_dim(g);
            Ok(C2Row {
                grade: g,
                pbw_dim: m.pbw_dim(g),
                dim,
                c2_rank: c2.rank(),
                quotient_dim: dim - c2.rank(),
            })
        })
        .collect::<Result<_>>()?;
    let m0 = match rows.iter().rposition(|r| r.quotient_dim != 0) {
        Some(last) if last == m.cutoff() => None,
        Some(last) => Some(last + 1),
        None => Some(0),
    };
    Ok(C2Report {
        algebra: m.name().to_string(),
        k: m.level().to_string(),
        cutoff: m.cutoff(),
        simple_quotient: m.is_quotient(),
        rows,
        m0,
    })
}

impl C2Report {
    /// Aligned text table.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} at k = {}, N = {}",
            self.algebra, self.k, self.cutoff
        );
        let _ = writeln!(
            out,
            "{:>5} {:>8} {:>8} {:>8} {:>12}",
            "grade", "pbw_dim", "dim", "c2_rank", "quotient_dim"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>5} {:>8} {:>8} {:>8} {:>12}",
                r.grade, r.pbw_dim, r.dim, r.c2_rank, r.quotient_dim
            );
        }
        match self.m0 {
            Some(m0) => {
                let _ = writeln!(
                    out,
                    "quotient dims vanish from grade {m0} up to {}",
                    self.cutoff
                );
            }
            None => {
                let _ = writeln!(out, "no m0 up to grade {}", self.cutoff);
            }
        }
        out
    }
}

/// Outcome of sampled checks of the closure lemmas.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub samples: usize,
    /// Samples for which no states fit below the cutoff.
    pub skipped: usize,
    pub violations: Vec<String>,
}

/// Samples `v_0 w, v_{-1} w ∈ C_2` for `w ∈ C_2`, and `u_{-m}x ∈ C_2` for
/// `m ∈ {2, 3}`, half of `sample_size` each, from a seeded generator.
pub fn closure_checks(m: &TruncatedModule, sample_size: usize, seed: u64) -> Result<ClosureReport> {
    let n = m.cutoff();
    let c2: Vec<Subspace> = (0..=n).map(|g| c2_grade(m, g)).collect::<Result<_>>()?;
    let bases: Vec<Vec<usize>> = (0..=n).map(|g| m.quotient_basis(g)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ClosureReport::default();
    let c2_grades: Vec<usize> = (0..=n).filter(|&g| c2[g].rank() > 0).collect();
    let random_grade = |rng: &mut ChaCha8Rng, max: usize| -> Option<usize> {
        let fits: Vec<usize> = (0..=max).filter(|&g| !bases[g].is_empty()).collect();
        (!fits.is_empty()).then(|| fits[rng.gen_range(0..fits.len())])
    };
    let random_basis = |rng: &mut ChaCha8Rng, g: usize| {
        m.basis_state(g, bases[g][rng.gen_range(0..bases[g].len())])
    };
    let check = |report: &mut ClosureReport, r: State, what: String| -> Result<()> {
        if !c2[r.grade as usize].reduce(&r.vec)?.is_zero() {
            report.violations.push(what);
        }
        Ok(())
    };
    for s in 0..sample_size {
        report.samples += 1;
        if s < sample_size / 2 {
            // v_0 w and v_{-1} w with wt v + wt w ≤ N.
            if c2_grades.is_empty() {
                report.skipped += 1;
                continue;
            }
            let b = c2_grades[rng.gen_range(0..c2_grades.len())];
            let rows = c2[b].rows();
            let w = State {
                grade: b as i64,
                vec: rows[rng.gen_range(0..rows.len())].clone(),
            };
            let Some(a) = random_grade(&mut rng, n - b) else {
                report.skipped += 1;
                continue;
            };
            let v = random_basis(&mut rng, a);
            for k in [0, -1] {
                let r = m.field_coeff(&v, k, &w)?;
                let what = format!(
                    "v_{k} w not in C2: v = {}, w = {}",
                    m.format_state(&v),
                    m.format_state(&w)
                );
                check(&mut report, r, what)?;
            }
        } else {
            let k: usize = rng.gen_range(2..=3);
            if k - 1 > n {
                report.skipped += 1;
                continue;
            }
            let Some(a) = random_grade(&mut rng, n + 1 - k) else {
                report.skipped += 1;
                continue;
            };
            let Some(b) = random_grade(&mut rng, n + 1 - k - a) else {
                report.skipped += 1;
                continue;
            };
            let u = random_basis(&mut rng, a);
            let x = random_basis(&mut rng, b);
            let r = m.field_coeff(&u, -(k as i32), &x)?;
            let what = format!(
                "u_-{k} x not in C2: u = {}, x = {}",
                m.format_state(&u),
                m.format_state(&x)
            );
            check(&mut report, r, what)?;
        }
    }
    Ok(report)
}

/// The coefficient `E_n = Σ_{n_1+…+n_p = n} e(n_1)⋯e(n_p)` of
/// `Y(e(-1)1, z)^p = Σ_n E_n z^{-n-p}`, applied to `v`.
///
/// The modes of `e` must commute. Each multiset of mode numbers is applied
/// once with its multinomial multiplicity, nonnegative modes first, so only
/// finitely many terms contribute and every intermediate state has grade at
/// most that of `v` or of the result.
pub fn power_coefficient(
    m: &TruncatedModule,
    e: usize,
    p: usize,
    n: i64,
    v: &State,
) -> Result<State> {
    let target = v.grade - n;
    if target > m.cutoff() as i64 {
        return Err(Error::CutoffExceeded {
            grade: target,
            cutoff: m.cutoff(),
        });
    }
    let mut acc = m.zero(target);
    if target < 0 || v.grade < 0 || v.is_zero() {
        return Ok(acc);
    }
    let g = v.grade;
    let mut seqs = Vec::new();
    let mut cur = Vec::with_capacity(p);
    multisets(p, n, n - g, g, g, &mut cur, &mut seqs);
    for seq in seqs {
        let mut s = v.clone();
        for &k in seq.iter().rev() {
            s = m.mode_action(e, k as i32, &s)?;
            if s.is_zero() {
                break;
            }
        }
        if !s.is_zero() {
            acc = m.add(&acc, &m.scale(&s, &multinomial(&seq)));
        }
    }
    Ok(acc)
}

/// Nondecreasing sequences of length `p` in `[lo, hi]` summing to `sum`,
/// whose positive entries sum to at most `budget`.
fn multisets(
    p: usize,
    sum: i64,
    lo: i64,
    hi: i64,
    budget: i64,
    cur: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if p == 0 {
        if sum == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let p_i = p as i64;
    for k in lo..=hi {
        // The remaining entries are all ≥ k.
        if k * p_i > sum || (k > 0 && k * p_i > budget) {
            break;
        }
        if sum - k > hi * (p_i - 1) {
            continue;
        }
        cur.push(k);
        multisets(p - 1, sum - k, k, hi, budget - k.max(0), cur, out);
        cur.pop();
    }
}

fn multinomial(seq: &[i64]) -> Scalar {
    let mut result = Scalar::one();
    let mut run = 0i64;
    for (i, k) in seq.iter().enumerate() {
        if i > 0 && seq[i - 1] == *k {
            run += 1;
        } else {
            run = 1;
        }
        result = result * int(i as i64 + 1) / int(run);
    }
    result
}

/// Whether every coefficient of `Y(e(-1)1, z)^p` whose value on a basis state
/// of grade `≤ N - p` stays within the cutoff annihilates that state.
pub fn nilpotency_check(m: &TruncatedModule, e: usize, p: usize) -> Result<bool> {
    let g = m.algebra();
    if e >= g.dim() {
        return Err(Error::InvalidArgument(format!(
            "generator {e} out of range"
        )));
    }
    if !g.basis_bracket(e, e).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "modes of {} do not commute",
            g.label(e)
        )));
    }
    if p == 0 || p > m.cutoff() {
        return Err(Error::Untestable(p));
    }
    let top = (m.cutoff() - p) as i64;
    let cases: Vec<(usize, usize)> = (0..=top as usize)
        .flat_map(|a| m.quotient_basis(a).into_iter().map(move |i| (a, i)))
        .collect();
    let failures = cases
        .par_iter()
        .map(|&(a, i)| {
            let v = m.basis_state(a, i);
            let lo = a as i64 - m.cutoff() as i64;
            for n in lo..=a as i64 {
                if !power_coefficient(m, e, p, n, &v)?.is_zero() {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(!failures.into_iter().any(|f| f))
}
