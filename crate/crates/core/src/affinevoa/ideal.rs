//! Singular vectors, ideals generated by states, and simple quotients.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, is_integer, EchelonBuilder, Scalar, SparseVec, Subspace};
use crate::realizations::Realization;

use super::module::{State, TruncatedModule};

/// Whether `x(n)s = 0` for every generator `x` and `1 ≤ n ≤ wt s`, and
/// `x(0)s = 0` for every `x` in `raising`.
pub fn is_singular(m: &TruncatedModule, s: &State, raising: &[usize]) -> Result<bool> {
    for x in 0..m.algebra().dim() {
        for n in 1..=s.grade.max(0) as i32 {
            if !m.mode_action(x, n, s)?.is_zero() {
                return Ok(false);
            }
        }
    }
    for &e in raising {
        if !m.mode_action(e, 0, s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `g = [g, g]`. Then `g⊗t^{-1}` generates the negative modes and
/// `g⊗t` the positive ones.
pub fn is_perfect(m: &TruncatedModule) -> bool {
    let g = m.algebra();
    let d = g.dim();
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..d {
            rows.push(g.basis_bracket(i, j).clone());
        }
    }
    linalg::echelonize_dim(d, &rows)
        .map(|s| s.rank() == d)
        .unwrap_or(false)
}

/// Per-grade echelon builders split by weight block.
struct Blocks {
    /// `block_of[grade][column]`.
    block_of: Vec<Vec<usize>>,
    builders: Vec<Vec<EchelonBuilder>>,
}

impl Blocks {
    fn new(m: &TruncatedModule) -> Self {
        let block_of = m.weight_blocks();
        let builders = block_of
            .iter()
            .enumerate()
            .map(|(g, b)| {
                let count = b.iter().copied().max().map_or(0, |x| x + 1);
                (0..count)
                    .map(|_| EchelonBuilder::new(m.pbw_dim(g)))
                    .collect()
            })
            .collect();
        Blocks { block_of, builders }
    }

    fn split(&self, grade: usize, v: &SparseVec) -> Vec<(usize, SparseVec)> {
        let mut parts: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for (i, x) in v.iter() {
            parts
                .entry(self.block_of[grade][i])
                .or_default()
                .push((i, x.clone()));
        }
        let mut out: Vec<(usize, SparseVec)> = parts
            .into_iter()
            .map(|(b, e)| (b, SparseVec::from_entries(v.dim(), e)))
            .collect();
        out.sort_by_key(|p| p.0);
        out
    }

    /// Inserts `v`; returns the new echelon rows it contributed.
    fn insert(&mut self, grade: usize, v: &SparseVec) -> Result<Vec<SparseVec>> {
        let mut new = Vec::new();
        for (b, part) in self.split(grade, v) {
            if let Some(r) = self.builders[grade][b].insert(&part)? {
                new.push(r.clone());
            }
        }
        Ok(new)
    }

    /// Inserts many vectors of one grade, blocks in parallel.
    fn insert_all(&mut self, grade: usize, vs: Vec<SparseVec>) -> Result<()> {
        let mut per_block: Vec<Vec<SparseVec>> = vec![Vec::new(); self.builders[grade].len()];
        for v in &vs {
            for (b, part) in self.split(grade, v) {
                per_block[b].push(part);
            }
        }
        self.builders[grade]
            .par_iter_mut()
            .zip(per_block.into_par_iter())
            .try_for_each(|(builder, parts)| builder.insert_many(&parts))
    }

    fn rows(&self, grade: usize) -> Vec<SparseVec> {
        self.builders[grade]
            .iter()
            .flat_map(|b| b.rows().iter().cloned())
            .collect()
    }

    fn finish(self) -> Vec<Subspace> {
        self.builders
            .into_iter()
            .enumerate()
            .map(|(g, bs)| {
                let dim = self.block_of[g].len();
                Subspace::from_disjoint_blocks(
                    dim,
                    bs.into_par_iter().map(|b| b.finish()).collect(),
                )
            })
            .collect()
    }
}

/// Graded components, in grades `0..=N`, of the submodule of `V^k(g)`
/// generated by `generators` under all modes `x(n)`, `n ∈ ℤ`.
///
/// Computed in three passes following `U(ĝ) = U(ĝ_-)U(g)U(ĝ_+)`: closure
/// under positive modes, then under zero modes, then the negative modes
/// grade by grade. Each pass is exact at truncation because it never needs
/// states above the grade being built.
pub fn ideal_closure(m: &TruncatedModule, generators: &[State]) -> Result<Vec<Subspace>> {
    if m.is_quotient() {
        return Err(Error::InvalidArgument(
            "ideal closure runs in the vacuum module".into(),
        ));
    }
    let n = m.cutoff();
    let d = m.algebra().dim();
    let perfect = is_perfect(m);
    let mut blocks = Blocks::new(m);

    let mut work: Vec<State> = Vec::new();
    for s in generators {
        if s.grade < 0 || s.grade > n as i64 {
            return Err(Error::CutoffExceeded {
                grade: s.grade,
                cutoff: n,
            });
        }
        for r in blocks.insert(s.grade as usize, &s.vec)? {
            work.push(State {
                grade: s.grade,
                vec: r,
            });
        }
    }
    // U(ĝ_+)
    let mut all = work.clone();
    while let Some(s) = work.pop() {
        let top = if perfect { s.grade.min(1) } else { s.grade };
        for x in 0..d {
            for k in 1..=top as i32 {
                let t = m.mode_action(x, k, &s)?;
                for r in blocks.insert(t.grade as usize, &t.vec)? {
                    let st = State {
                        grade: t.grade,
                        vec: r,
                    };
                    work.push(st.clone());
                    all.push(st);
                }
            }
        }
    }
    // U(g)
    let mut work = all;
    while let Some(s) = work.pop() {
        for x in 0..d {
            let t = m.mode_action(x, 0, &s)?;
            for r in blocks.insert(t.grade as usize, &t.vec)? {
                work.push(State {
                    grade: t.grade,
                    vec: r,
                });
            }
        }
    }
    // U(ĝ_-)
    for g in 1..=n {
        let mut jobs: Vec<(usize, i32, usize)> = Vec::new();
        let steps: Vec<usize> = if perfect { vec![1] } else { (1..=g).collect() };
        for &step in &steps {
            let rows = blocks.rows(g - step);
            for x in 0..d {
                for r in 0..rows.len() {
                    jobs.push((g - step, -(step as i32), x * rows.len() + r));
                }
            }
        }
        let row_cache: HashMap<usize, Vec<SparseVec>> =
            steps.iter().map(|&s| (g - s, blocks.rows(g - s))).collect();
        let images: Vec<SparseVec> = jobs
            .par_iter()
            .map(|&(src, k, code)| {
                let rows = &row_cache[&src];
                let (x, r) = (code / rows.len(), code % rows.len());
                let s = State {
                    grade: src as i64,
                    vec: rows[r].clone(),
                };
                m.mode_action(x, k, &s).map(|t| t.vec)
            })
            .collect::<Result<_>>()?;
        blocks.insert_all(g, images)?;
    }
    Ok(blocks.finish())
}

/// `e_θ(-1)^{k+1}1`.
pub fn theta_power(m: &TruncatedModule, e_theta: usize, power: usize) -> Result<State> {
    let mut s = m.vacuum();
    for _ in 0..power {
        s = m.mode_action(e_theta, -1, &s)?;
    }
    Ok(s)
}

/// `L_g(k,0)` computed as `V^k(g)/I` with `I` generated by `e_θ(-1)^{k+1}1`.
pub struct SimpleQuotient {
    pub module: TruncatedModule,
    pub generator: State,
    pub closure_ranks: Vec<usize>,
    /// Nonzero singular vectors of the quotient in grades `1..=N`; empty when
    /// the quotient is simple up to the cutoff.
    pub residual_singular: Vec<State>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleQuotientJson {
    pub algebra: String,
    pub k: String,
    #[serde(rename = "N")]
    pub cutoff: usize,
    pub generator_grade: i64,
    pub generator_singular: bool,
    pub grade_dims: Vec<usize>,
    pub closure_ranks: Vec<usize>,
    pub quotient_grade_dims: Vec<usize>,
    pub residual_singular: Vec<String>,
}

pub fn check_positive_integer(k: &Scalar) -> Result<usize> {
    if !is_integer(k) || k <= &Scalar::zero() {
        return Err(Error::InvalidArgument(format!(
            "level must be a positive integer, got {k}"
        )));
    }
    k.to_integer()
        .try_into()
        .map_err(|_| Error::InvalidArgument(format!("level {k} is too large")))
}

pub fn simple_quotient(r: &Realization, k: &Scalar, cutoff: usize) -> Result<SimpleQuotient> {
    let kk = check_positive_integer(k)?;
    let v = super::build_vacuum_for(r, k.clone(), cutoff);
    let generator = if kk < cutoff {
        theta_power(&v, r.e_theta(), kk + 1)?
    } else {
        // The generator lies above the cutoff; nothing is quotiented.
        v.zero(kk as i64 + 1)
    };
    let gens: Vec<State> = if generator.grade <= cutoff as i64 {
        vec![generator.clone()]
    } else {
        vec![]
    };
    let relations = ideal_closure(&v, &gens)?;
    let closure_ranks = relations.iter().map(|s| s.rank()).collect();
    let module = v.quotient(relations)?;
    let residual_singular = residual_singular_vectors(&module, &r.theta_raising())?;
    Ok(SimpleQuotient {
        module,
        generator,
        closure_ranks,
        residual_singular,
    })
}

impl SimpleQuotient {
    pub fn to_json(&self, raising: &[usize]) -> Result<SimpleQuotientJson> {
        let amb = self.module.ambient();
        let generator_singular = self.generator.grade <= amb.cutoff() as i64
            && is_singular(&amb, &self.generator, raising)?;
        Ok(SimpleQuotientJson {
            algebra: self.module.name().to_string(),
            k: self.module.level().to_string(),
            cutoff: self.module.cutoff(),
            generator_grade: self.generator.grade,
            generator_singular,
            grade_dims: self.module.pbw_dims(),
            closure_ranks: self.closure_ranks.clone(),
            quotient_grade_dims: self.module.grade_dims(),
            residual_singular: self
                .residual_singular
                .iter()
                .map(|s| self.module.format_state(s))
                .collect(),
        })
    }
}

/// Singular vectors of a (quotient) module in grades `1..=N`: states killed
/// by every `x(1)` and by `e(0)` for `e` in `raising`. For perfect `g` the
/// `x(1)` generate all positive modes.
pub fn residual_singular_vectors(m: &TruncatedModule, raising: &[usize]) -> Result<Vec<State>> {
    let d = m.algebra().dim();
    let mut found = Vec::new();
    for g in 1..=m.cutoff() {
        let basis = m.quotient_basis(g);
        if basis.is_empty() {
            continue;
        }
        let below = m.pbw_dim(g - 1);
        let here = m.pbw_dim(g);
        let target = d * below + raising.len() * here;
        let blocks = &m.weight_blocks()[g];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for &j in &basis {
            let next = groups.len();
            let s = *slot.entry(blocks[j]).or_insert(next);
            if s == groups.len() {
                groups.push(Vec::new());
            }
            groups[s].push(j);
        }
        // Mode actions preserve weight, so the kernel splits by weight block.
        let kernels: Vec<Vec<State>> = groups
            .par_iter()
            .map(|group| {
                let images: Vec<SparseVec> = group
                    .iter()
                    .map(|&j| {
                        let s = m.basis_state(g, j);
                        let mut entries: Vec<(usize, Scalar)> = Vec::new();
                        for x in 0..d {
                            let t = m.mode_action(x, 1, &s)?;
                            entries.extend(t.vec.iter().map(|(i, c)| (x * below + i, c.clone())));
                        }
                        for (a, &e) in raising.iter().enumerate() {
                            let t = m.mode_action(e, 0, &s)?;
                            entries.extend(
                                t.vec
                                    .iter()
                                    .map(|(i, c)| (d * below + a * here + i, c.clone())),
                            );
                        }
                        Ok(SparseVec::from_entries(target, entries))
                    })
                    .collect::<Result<_>>()?;
                // Full rank modulo a prime forces full rank over ℚ.
                if linalg::rank_mod_p(&images) == Some(images.len()) {
                    return Ok(Vec::new());
                }
                Ok(linalg::kernel(&images, target)?
                    .into_iter()
                    .map(|kv| State {
                        grade: g as i64,
                        vec: SparseVec::from_entries(
                            here,
                            kv.iter().map(|(i, c)| (group[i], c.clone())),
                        ),
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        found.extend(kernels.into_iter().flatten());
    }
    Ok(found)
}

/// Whether every row of `ideal` is mapped into `ideal` by every mode that
/// stays within the cutoff. Test helper for closures.
pub fn is_closed(m: &TruncatedModule, ideal: &[Subspace]) -> Result<bool> {
    let d = m.algebra().dim();
    let n = m.cutoff() as i64;
    for (g, s) in ideal.iter().enumerate() {
        for row in s.rows() {
            let st = State {
                grade: g as i64,
                vec: row.clone(),
            };
            for x in 0..d {
                for k in (g as i64 - n)..=(g as i64) {
                    let t = m.mode_action(x, k as i32, &st)?;
                    if t.grade >= 0 && !linalg::contains(&ideal[t.grade as usize], &t.vec)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
