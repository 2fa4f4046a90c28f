use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liesuper::{LieSuperalgebra, Parity};
use crate::linalg::{Scalar, SparseVec, Subspace};
use crate::realizations::Realization;

use super::engine::ModeEngine;
use super::pbw::{self, Combo, Mode, Monomial, MonomialDisplay};

/// PBW basis of one grade.
#[derive(Clone, Debug)]
pub struct GradeBasis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradeBasis {
    fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        GradeBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &[Mode]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A homogeneous vector of a truncated module. Negative grades hold only 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub grade: i64,
    pub vec: SparseVec,
}

impl State {
    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }
}

/// `V^k(g)` truncated to grades `0..=N`, optionally modulo a graded ideal.
///
/// In a quotient, states are canonical representatives: reduced against the
/// RREF relation subspace of their grade.
pub struct TruncatedModule {
    name: String,
    algebra: Arc<LieSuperalgebra>,
    k: Scalar,
    cutoff: usize,
    bases: Vec<GradeBasis>,
    relations: Option<Vec<Subspace>>,
    engine: Arc<ModeEngine>,
    /// Cartan weight of each generator, when known; used to split linear
    /// algebra into weight blocks.
    gen_weights: Option<Arc<Vec<Vec<Scalar>>>>,
}

/// Builds the PBW bases of `V^k(g)` in grades `0..=N`.
pub fn build_vacuum(g: Arc<LieSuperalgebra>, k: Scalar, cutoff: usize) -> TruncatedModule {
    let bases = (0..=cutoff)
        .map(|m| GradeBasis::new(pbw::enumerate_grade(g.parities(), m)))
        .collect();
    TruncatedModule {
        name: "g".into(),
        engine: Arc::new(ModeEngine::new(g.clone(), k.clone())),
        algebra: g,
        k,
        cutoff,
        bases,
        relations: None,
        gen_weights: None,
    }
}

/// `V^k(g)` for a realization: named, with weight blocks from its roots.
pub fn build_vacuum_for(r: &Realization, k: Scalar, cutoff: usize) -> TruncatedModule {
    let rank = r.roots.cartan.len();
    let mut weights = vec![vec![Scalar::zero(); rank]; r.algebra.dim()];
    for root in &r.roots.roots {
        weights[root.vector] = root.values.clone();
    }
    let mut m = build_vacuum(r.algebra.clone(), k, cutoff).with_name(r.name.clone());
    m.gen_weights = Some(Arc::new(weights));
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleReport {
    pub algebra: String,
    pub k: String,
    #[serde(rename = "N")]
    pub cutoff: usize,
    pub grade_dims: Vec<usize>,
    pub quotient_grade_dims: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermJson {
    pub monomial: Vec<(String, i32)>,
    pub coeff: String,
}

impl TruncatedModule {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<LieSuperalgebra> {
        &self.algebra
    }

    pub fn level(&self) -> &Scalar {
        &self.k
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn engine(&self) -> &Arc<ModeEngine> {
        &self.engine
    }

    pub fn basis(&self, m: usize) -> &GradeBasis {
        &self.bases[m]
    }

    /// PBW dimension of grade `m`.
    pub fn pbw_dim(&self, m: usize) -> usize {
        self.bases[m].len()
    }

    pub fn pbw_dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn is_quotient(&self) -> bool {
        self.relations.is_some()
    }

    pub fn relations(&self, m: usize) -> Option<&Subspace> {
        self.relations.as_ref().map(|r| &r[m])
    }

    /// Dimension of grade `m` of the module (of the quotient, if any).
    pub fn grade_dim(&self, m: usize) -> usize {
        match &self.relations {
            Some(r) => self.bases[m].len() - r[m].rank(),
            None => self.bases[m].len(),
        }
    }

    pub fn grade_dims(&self) -> Vec<usize> {
        (0..=self.cutoff).map(|m| self.grade_dim(m)).collect()
    }

    /// Monomials whose classes form a basis of grade `m`.
    pub fn quotient_basis(&self, m: usize) -> Vec<usize> {
        match &self.relations {
            Some(r) => r[m].free_columns(),
            None => (0..self.bases[m].len()).collect(),
        }
    }

    /// The same module modulo a graded subspace (an ideal, by assumption).
    pub fn quotient(&self, relations: Vec<Subspace>) -> Result<TruncatedModule> {
        if relations.len() != self.cutoff + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.cutoff + 1,
                found: relations.len(),
            });
        }
        for (m, r) in relations.iter().enumerate() {
            if r.dim() != self.bases[m].len() {
                return Err(Error::DimensionMismatch {
                    expected: self.bases[m].len(),
                    found: r.dim(),
                });
            }
        }
        let relations = match &self.relations {
            Some(old) => old
                .iter()
                .zip(&relations)
                .map(|(a, b)| a.join(b))
                .collect::<Result<_>>()?,
            None => relations,
        };
        Ok(TruncatedModule {
            name: self.name.clone(),
            algebra: self.algebra.clone(),
            k: self.k.clone(),
            cutoff: self.cutoff,
            bases: self.bases.clone(),
            relations: Some(relations),
            engine: self.engine.clone(),
            gen_weights: self.gen_weights.clone(),
        })
    }

    /// The underlying vacuum module (dropping any relations).
    pub fn ambient(&self) -> TruncatedModule {
        TruncatedModule {
            name: self.name.clone(),
            algebra: self.algebra.clone(),
            k: self.k.clone(),
            cutoff: self.cutoff,
            bases: self.bases.clone(),
            relations: None,
            engine: self.engine.clone(),
            gen_weights: self.gen_weights.clone(),
        }
    }

    /// Truncation of the same module to a smaller cutoff.
    pub fn truncate(&self, cutoff: usize) -> TruncatedModule {
        assert!(cutoff <= self.cutoff);
        TruncatedModule {
            name: self.name.clone(),
            algebra: self.algebra.clone(),
            k: self.k.clone(),
            cutoff,
            bases: self.bases[..=cutoff].to_vec(),
            relations: self.relations.as_ref().map(|r| r[..=cutoff].to_vec()),
            engine: self.engine.clone(),
            gen_weights: self.gen_weights.clone(),
        }
    }

    /// Weight of a monomial, when generator weights are known.
    pub fn monomial_weight(&self, m: &[Mode]) -> Option<Vec<Scalar>> {
        let w = self.gen_weights.as_ref()?;
        let rank = w.first().map_or(0, |x| x.len());
        let mut acc = vec![Scalar::zero(); rank];
        for x in m {
            for (a, b) in acc.iter_mut().zip(&w[x.gen as usize]) {
                *a += b;
            }
        }
        Some(acc)
    }

    /// For each grade, a block id per basis monomial; monomials of equal
    /// weight share a block. Without weights every grade is one block.
    pub fn weight_blocks(&self) -> Vec<Vec<usize>> {
        self.bases
            .iter()
            .map(|b| {
                let mut ids: HashMap<Vec<Scalar>, usize> = HashMap::new();
                b.monomials
                    .iter()
                    .map(|m| {
                        let key = self.monomial_weight(m).unwrap_or_default();
                        let next = ids.len();
                        *ids.entry(key).or_insert(next)
                    })
                    .collect()
            })
            .collect()
    }

    fn check_grade(&self, grade: i64) -> Result<()> {
        if grade > self.cutoff as i64 {
            return Err(Error::CutoffExceeded {
                grade,
                cutoff: self.cutoff,
            });
        }
        Ok(())
    }

    pub fn zero(&self, grade: i64) -> State {
        let dim = if grade < 0 || grade > self.cutoff as i64 {
            0
        } else {
            self.bases[grade as usize].len()
        };
        State {
            grade,
            vec: SparseVec::zero(dim),
        }
    }

    pub fn vacuum(&self) -> State {
        self.monomial_state(&[]).expect("grade 0 is always present")
    }

    /// The class of a PBW monomial (which need not be canonically ordered).
    pub fn monomial_state(&self, m: &[Mode]) -> Result<State> {
        let grade = pbw::weight(m);
        self.check_grade(grade)?;
        if pbw::is_canonical(m, self.engine.parities()) {
            let mut c = Combo::new();
            c.insert(m.to_vec(), Scalar::one());
            return self.from_combo(grade, &c);
        }
        let mut s = self.vacuum();
        for x in m.iter().rev() {
            s = self.mode_action(x.gen as usize, x.n, &s)?;
        }
        Ok(s)
    }

    /// `x(-1)1` for a linear combination `x` of generators.
    pub fn weight_one(&self, x: &SparseVec) -> Result<State> {
        if x.dim() != self.algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.algebra.dim(),
                found: x.dim(),
            });
        }
        let mut c = Combo::new();
        for (i, a) in x.iter() {
            c.insert(vec![Mode::new(i, -1)], a.clone());
        }
        self.from_combo(1, &c)
    }

    pub fn generator(&self, x: usize) -> State {
        self.weight_one(&self.algebra.basis_vector(x))
            .expect("grade 1 is present when N >= 1")
    }

    pub fn basis_state(&self, m: usize, i: usize) -> State {
        State {
            grade: m as i64,
            vec: SparseVec::unit(self.bases[m].len(), i),
        }
    }

    pub fn to_combo(&self, s: &State) -> Combo {
        if s.grade < 0 {
            return Combo::new();
        }
        let b = &self.bases[s.grade as usize];
        s.vec
            .iter()
            .map(|(i, x)| (b.monomials[i].clone(), x.clone()))
            .collect()
    }

    /// Converts a combination of canonical monomials of one grade to a state,
    /// reducing modulo relations.
    pub fn from_combo(&self, grade: i64, c: &Combo) -> Result<State> {
        if grade < 0 {
            debug_assert!(c.is_empty());
            return Ok(self.zero(grade));
        }
        self.check_grade(grade)?;
        let b = &self.bases[grade as usize];
        let v = SparseVec::from_entries(
            b.len(),
            c.iter().map(|(m, x)| {
                let i = b
                    .index_of(m)
                    .unwrap_or_else(|| panic!("monomial {m:?} is not in grade {grade}"));
                (i, x.clone())
            }),
        );
        self.canonical(State { grade, vec: v })
    }

    /// Reduces a state to its canonical representative.
    pub fn canonical(&self, s: State) -> Result<State> {
        match (&self.relations, s.grade) {
            (Some(r), g) if g >= 0 => Ok(State {
                grade: g,
                vec: r[g as usize].reduce(&s.vec)?,
            }),
            _ => Ok(s),
        }
    }

    pub fn add(&self, a: &State, b: &State) -> State {
        assert_eq!(a.grade, b.grade, "adding states of different grades");
        State {
            grade: a.grade,
            vec: a.vec.add(&b.vec),
        }
    }

    pub fn scale(&self, a: &State, c: &Scalar) -> State {
        State {
            grade: a.grade,
            vec: a.vec.scaled(c),
        }
    }

    /// Parity of a homogeneous state; `None` for zero or mixed states.
    pub fn parity(&self, s: &State) -> Option<Parity> {
        let mut found = None;
        for (m, _) in self.to_combo(s) {
            let p = pbw::parity(&m, self.engine.parities());
            match found {
                None => found = Some(p),
                Some(q) if q == p => {}
                Some(_) => return None,
            }
        }
        found
    }

    /// `x(n)` applied to a state.
    pub fn mode_action(&self, x: usize, n: i32, s: &State) -> Result<State> {
        if x >= self.algebra.dim() {
            return Err(Error::InvalidArgument(format!(
                "generator {x} out of range"
            )));
        }
        let grade = s.grade - n as i64;
        self.check_grade(grade)?;
        if grade < 0 || s.grade < 0 {
            return Ok(self.zero(grade));
        }
        let c = self.engine.apply_combo(x as u16, n, &self.to_combo(s));
        self.from_combo(grade, &c)
    }

    /// `x(n)` for a linear combination `x` of generators.
    pub fn mode_action_vec(&self, x: &SparseVec, n: i32, s: &State) -> Result<State> {
        let mut acc = self.zero(s.grade - n as i64);
        self.check_grade(acc.grade)?;
        for (i, a) in x.iter() {
            let t = self.mode_action(i, n, s)?;
            acc = self.add(&acc, &self.scale(&t, a));
        }
        Ok(acc)
    }

    /// The coefficient `u_n v` of the vertex operator `Y(u, z)`.
    pub fn field_coeff(&self, u: &State, n: i32, v: &State) -> Result<State> {
        let grade = u.grade + v.grade - n as i64 - 1;
        self.check_grade(grade)?;
        if grade < 0 || u.grade < 0 || v.grade < 0 {
            return Ok(self.zero(grade));
        }
        let c = self
            .engine
            .field_combo(&self.to_combo(u), n, &self.to_combo(v));
        self.from_combo(grade, &c)
    }

    pub fn state_json(&self, s: &State) -> Vec<TermJson> {
        let labels = self.algebra.labels();
        let mut terms: Vec<(Monomial, Scalar)> = self.to_combo(s).into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        terms
            .into_iter()
            .map(|(m, c)| TermJson {
                monomial: m
                    .iter()
                    .map(|x| (labels[x.gen as usize].clone(), x.n))
                    .collect(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn format_state(&self, s: &State) -> String {
        let labels = self.algebra.labels();
        let mut terms: Vec<(Monomial, Scalar)> = self.to_combo(s).into_iter().collect();
        if terms.is_empty() {
            return "0".into();
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        terms
            .iter()
            .map(|(m, c)| {
                let mono = MonomialDisplay {
                    monomial: m,
                    labels,
                };
                if c.is_one() {
                    mono.to_string()
                } else {
                    format!("({c}) {mono}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn report(&self) -> ModuleReport {
        ModuleReport {
            algebra: self.name.clone(),
            k: self.k.to_string(),
            cutoff: self.cutoff,
            grade_dims: self.pbw_dims(),
            quotient_grade_dims: self.relations.as_ref().map(|_| self.grade_dims()),
        }
    }

    /// Whether `k + h∨ = 0`, where no Sugawara vector exists.
    pub fn is_critical(&self) -> Result<bool> {
        Ok((&self.k + self.algebra.dual_coxeter()?).is_zero())
    }
}
