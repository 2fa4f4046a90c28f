//! Finite-dimensional Lie superalgebras given by structure constants.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, scalar_str, scalar_vec_str, Scalar, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn sum(self, other: Parity) -> Parity {
        if self.is_odd() != other.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// The Koszul sign `(-1)^{[x][y]}`.
    pub fn koszul(self, other: Parity) -> Scalar {
        linalg::sign(self.is_odd() && other.is_odd())
    }
}

/// A Lie superalgebra with a chosen even supersymmetric invariant form.
///
/// `brackets[i][j]` holds `[x_i, x_j]` in the basis; `form[i][j]` holds
/// `(x_i | x_j)`. Both are the source of truth: matrix realizations compile
/// down to them.
#[derive(Clone, Debug, PartialEq)]
pub struct LieSuperalgebra {
    labels: Vec<String>,
    parity: Vec<Parity>,
    brackets: Vec<Vec<SparseVec>>,
    form: Vec<Vec<Scalar>>,
}

impl LieSuperalgebra {
    pub fn new(
        labels: Vec<String>,
        parity: Vec<Parity>,
        brackets: Vec<Vec<SparseVec>>,
        form: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let dim = parity.len();
        let bad = |found| {
            Err(Error::DimensionMismatch {
                expected: dim,
                found,
            })
        };
        if labels.len() != dim {
            return bad(labels.len());
        }
        if brackets.len() != dim {
            return bad(brackets.len());
        }
        if form.len() != dim {
            return bad(form.len());
        }
        for row in &brackets {
            if row.len() != dim {
                return bad(row.len());
            }
            for v in row {
                if v.dim() != dim {
                    return bad(v.dim());
                }
            }
        }
        for row in &form {
            if row.len() != dim {
                return bad(row.len());
            }
        }
        Ok(LieSuperalgebra {
            labels,
            parity,
            brackets,
            form,
        })
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn even_dim(&self) -> usize {
        self.parity.iter().filter(|p| !p.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    /// `sdim = dim g_0 - dim g_1`.
    pub fn superdimension(&self) -> i64 {
        self.even_dim() as i64 - self.odd_dim() as i64
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    pub fn basis_form(&self, i: usize, j: usize) -> &Scalar {
        &self.form[i][j]
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.form
    }

    pub fn basis_vector(&self, i: usize) -> SparseVec {
        SparseVec::unit(self.dim(), i)
    }

    /// Replaces one structure constant. Used to build deliberately broken
    /// algebras for the axiom checker.
    pub fn set_basis_bracket(&mut self, i: usize, j: usize, value: SparseVec) {
        assert_eq!(value.dim(), self.dim());
        self.brackets[i][j] = value;
    }

    pub fn set_basis_form(&mut self, i: usize, j: usize, value: Scalar) {
        self.form[i][j] = value;
    }

    fn check(&self, v: &SparseVec) -> Result<()> {
        if v.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            })
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        self.check(x)?;
        self.check(y)?;
        let mut acc = SparseVec::zero(self.dim());
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let c = a * b;
                acc = acc.add_scaled(&c, &self.brackets[i][j]);
            }
        }
        Ok(acc)
    }

    pub fn form_value(&self, x: &SparseVec, y: &SparseVec) -> Result<Scalar> {
        self.check(x)?;
        self.check(y)?;
        let mut acc = Scalar::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let f = &self.form[i][j];
                if !f.is_zero() {
                    acc += a * b * f;
                }
            }
        }
        Ok(acc)
    }

    /// Parity of a homogeneous vector; `None` for zero or mixed vectors.
    pub fn parity_of(&self, x: &SparseVec) -> Option<Parity> {
        let mut it = x.iter().map(|(i, _)| self.parity[i]);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Lists every violated axiom instance. Exhaustive over basis tuples.
    pub fn verify_axioms(&self) -> AxiomReport {
        let d = self.dim();
        let mut violations = Vec::new();

        for i in 0..d {
            for j in 0..d {
                let target = self.parity[i].sum(self.parity[j]);
                if self.brackets[i][j]
                    .iter()
                    .any(|(l, _)| self.parity[l] != target)
                {
                    violations.push(Violation::BracketParity { i, j });
                }
                let sign = self.parity[i].koszul(self.parity[j]);
                let swapped = self.brackets[j][i].scaled(&sign);
                if !self.brackets[i][j].add(&swapped).is_zero() {
                    violations.push(Violation::SkewSymmetry { i, j });
                }
                let f = &self.form[i][j];
                if !f.is_zero() && self.parity[i] != self.parity[j] {
                    violations.push(Violation::FormParity { i, j });
                }
                if *f != &self.form[j][i] * &sign {
                    violations.push(Violation::FormSupersymmetry { i, j });
                }
            }
        }

        let basis: Vec<SparseVec> = (0..d).map(|i| self.basis_vector(i)).collect();
        for i in 0..d {
            for j in 0..d {
                let xy = &self.brackets[i][j];
                for l in 0..d {
                    // [x,[y,z]] = [[x,y],z] + (-1)^{[x][y]} [y,[x,z]]
                    let lhs = self.bracket(&basis[i], &self.brackets[j][l]).unwrap();
                    let t1 = self.bracket(xy, &basis[l]).unwrap();
                    let t2 = self.bracket(&basis[j], &self.brackets[i][l]).unwrap();
                    let rhs = t1.add_scaled(&self.parity[i].koszul(self.parity[j]), &t2);
                    if lhs != rhs {
                        violations.push(Violation::Jacobi { i, j, l });
                    }
                    // ([x,y]|z) = (x|[y,z])
                    let left = self.form_value(xy, &basis[l]).unwrap();
                    let right = self.form_value(&basis[i], &self.brackets[j][l]).unwrap();
                    if left != right {
                        violations.push(Violation::Invariance { i, j, l });
                    }
                }
            }
        }

        let rank = linalg::dense_rank(&self.form);
        if rank != d {
            violations.push(Violation::Degenerate { rank, dim: d });
        }
        AxiomReport { violations }
    }

    /// Dual bases for the standard basis: `a^i = x_i` and `b^j` with
    /// `(a^i | b^j) = δ_ij`.
    pub fn dual_bases(&self) -> Result<DualBasisPair> {
        let basis = (0..self.dim()).map(|i| self.basis_vector(i)).collect();
        self.dual_bases_for(basis)
    }

    /// Dual bases for an arbitrary basis `a`, obtained by inverting its Gram matrix.
    pub fn dual_bases_for(&self, a: Vec<SparseVec>) -> Result<DualBasisPair> {
        let d = self.dim();
        if a.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: a.len(),
            });
        }
        let gram: Vec<Vec<Scalar>> = a
            .iter()
            .map(|x| {
                a.iter()
                    .map(|y| self.form_value(x, y))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let inv = linalg::invert(&gram).ok_or(Error::DegenerateForm)?;
        // b^j = Σ_l inv[l][j] a^l, so (a^i | b^j) = Σ_l gram[i][l] inv[l][j] = δ_ij.
        let b = (0..d)
            .map(|j| {
                let mut acc = SparseVec::zero(d);
                for (l, al) in a.iter().enumerate() {
                    acc = acc.add_scaled(&inv[l][j], al);
                }
                acc
            })
            .collect();
        Ok(DualBasisPair { a, b })
    }

    /// Casimir operator `Σ_i (-1)^{[a^i]} [a^i, [b^i, x]]` on the adjoint module.
    ///
    /// The sign makes the operator independent of which side of the pairing
    /// carries the dual basis when odd elements are present.
    pub fn casimir_adjoint(&self, pair: &DualBasisPair, x: &SparseVec) -> Result<SparseVec> {
        let mut acc = SparseVec::zero(self.dim());
        for (a, b) in pair.a.iter().zip(&pair.b) {
            let inner = self.bracket(b, x)?;
            let outer = self.bracket(a, &inner)?;
            let p = self.parity_of(a).unwrap_or(Parity::Even);
            acc = acc.add_scaled(&linalg::sign(p.is_odd()), &outer);
        }
        Ok(acc)
    }

    /// Dual Coxeter number: half the Casimir eigenvalue on the adjoint module.
    pub fn dual_coxeter(&self) -> Result<Scalar> {
        self.dual_coxeter_with(&self.dual_bases()?)
    }

    pub fn dual_coxeter_with(&self, pair: &DualBasisPair) -> Result<Scalar> {
        let mut eigen: Option<Scalar> = None;
        for l in 0..self.dim() {
            let x = self.basis_vector(l);
            let cx = self.casimir_adjoint(pair, &x)?;
            let lambda = cx.get(l);
            if cx != x.scaled(&lambda) {
                return Err(Error::NotSimple);
            }
            match &eigen {
                None => eigen = Some(lambda),
                Some(e) if *e == lambda => {}
                Some(_) => return Err(Error::NotSimple),
            }
        }
        let e = eigen.ok_or(Error::NotSimple)?;
        Ok(e / linalg::int(2))
    }

    pub fn to_json(&self) -> AlgebraJson {
        let d = self.dim();
        let mut brackets = Vec::new();
        let mut form = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if !self.brackets[i][j].is_zero() {
                    brackets.push(BracketEntry {
                        left: self.labels[i].clone(),
                        right: self.labels[j].clone(),
                        value: self.brackets[i][j]
                            .iter()
                            .map(|(l, c)| Term {
                                label: self.labels[l].clone(),
                                coeff: c.clone(),
                            })
                            .collect(),
                    });
                }
                if !self.form[i][j].is_zero() {
                    form.push(FormEntry {
                        left: self.labels[i].clone(),
                        right: self.labels[j].clone(),
                        value: self.form[i][j].clone(),
                    });
                }
            }
        }
        AlgebraJson {
            dim: d,
            labels: self.labels.clone(),
            parity: self.parity.clone(),
            brackets,
            form,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    BracketParity { i: usize, j: usize },
    SkewSymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, l: usize },
    FormParity { i: usize, j: usize },
    FormSupersymmetry { i: usize, j: usize },
    Invariance { i: usize, j: usize, l: usize },
    Degenerate { rank: usize, dim: usize },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Bases `{a^i}`, `{b^i}` with `(a^i | b^j) = δ_ij`.
#[derive(Clone, Debug)]
pub struct DualBasisPair {
    pub a: Vec<SparseVec>,
    pub b: Vec<SparseVec>,
}

impl DualBasisPair {
    pub fn pairing_holds(&self, g: &LieSuperalgebra) -> Result<bool> {
        for (i, a) in self.a.iter().enumerate() {
            for (j, b) in self.b.iter().enumerate() {
                let expect = if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                if g.form_value(a, b)? != expect {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Root {
    /// Eigenvalues on the Cartan basis elements, in order.
    #[serde(with = "scalar_vec_str")]
    pub values: Vec<Scalar>,
    pub parity: Parity,
    /// Basis index of the root vector.
    pub vector: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootDatum {
    pub cartan: Vec<usize>,
    pub roots: Vec<Root>,
    /// Indices into `roots`.
    pub simple: Vec<usize>,
    /// Index into `roots` of the highest even root, when one is designated.
    pub highest: Option<usize>,
}

impl RootDatum {
    pub fn root_of_vector(&self, vector: usize) -> Option<usize> {
        self.roots.iter().position(|r| r.vector == vector)
    }

    /// Index of the root with the given functional.
    pub fn find(&self, values: &[Scalar]) -> Option<usize> {
        self.roots.iter().position(|r| r.values == values)
    }

    pub fn negative_of(&self, root: usize) -> Option<usize> {
        let neg: Vec<Scalar> = self.roots[root].values.iter().map(|x| -x).collect();
        self.find(&neg)
    }

    pub fn simple_root_vectors(&self) -> Vec<usize> {
        self.simple.iter().map(|&r| self.roots[r].vector).collect()
    }
}

/// Root decomposition with respect to the span of the basis elements in
/// `cartan`. Every other basis element must be a simultaneous eigenvector
/// with a nonzero rational eigenvalue functional.
pub fn root_decomposition(g: &LieSuperalgebra, cartan: &[usize]) -> Result<RootDatum> {
    let d = g.dim();
    for &h in cartan {
        if h >= d {
            return Err(Error::InvalidArgument(format!(
                "cartan index {h} out of range"
            )));
        }
        if g.parity(h).is_odd() {
            return Err(Error::UnsupportedCartan(format!("{} is odd", g.label(h))));
        }
        for &h2 in cartan {
            if !g.basis_bracket(h, h2).is_zero() {
                return Err(Error::UnsupportedCartan(
                    "selected elements do not commute".into(),
                ));
            }
        }
    }
    let mut roots = Vec::new();
    for j in (0..d).filter(|j| !cartan.contains(j)) {
        let mut values = Vec::with_capacity(cartan.len());
        for &h in cartan {
            let v = g.basis_bracket(h, j);
            let lambda = v.get(j);
            if *v != g.basis_vector(j).scaled(&lambda) {
                return Err(Error::UnsupportedCartan(format!(
                    "{} is not an eigenvector of ad({})",
                    g.label(j),
                    g.label(h)
                )));
            }
            values.push(lambda);
        }
        if values.iter().all(|x| x.is_zero()) {
            return Err(Error::UnsupportedCartan(format!(
                "{} centralizes the selected subalgebra",
                g.label(j)
            )));
        }
        roots.push(Root {
            values,
            parity: g.parity(j),
            vector: j,
        });
    }
    Ok(RootDatum {
        cartan: cartan.to_vec(),
        roots,
        simple: Vec::new(),
        highest: None,
    })
}

/// Inverse Gram matrix of the form restricted to the Cartan subalgebra.
pub fn cartan_gram_inverse(d: &RootDatum, form: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let gram: Vec<Vec<Scalar>> = d
        .cartan
        .iter()
        .map(|&a| d.cartan.iter().map(|&b| form[a][b].clone()).collect())
        .collect();
    linalg::invert(&gram).ok_or(Error::DegenerateForm)
}

/// `(λ|μ) = λᵀ G⁻¹ μ` for functionals given by their values on the Cartan basis.
pub fn functional_inner_product(gram_inv: &[Vec<Scalar>], l: &[Scalar], m: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, la) in l.iter().enumerate() {
        if la.is_zero() {
            continue;
        }
        for (b, mb) in m.iter().enumerate() {
            if !mb.is_zero() {
                acc += la * &gram_inv[a][b] * mb;
            }
        }
    }
    acc
}

/// Inner products of all root functionals under the form induced on `h*`.
pub fn root_inner_products(d: &RootDatum, form: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let inv = cartan_gram_inverse(d, form)?;
    Ok(d.roots
        .iter()
        .map(|a| {
            d.roots
                .iter()
                .map(|b| functional_inner_product(&inv, &a.values, &b.values))
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub label: String,
    #[serde(with = "scalar_str")]
    pub coeff: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormEntry {
    pub left: String,
    pub right: String,
    #[serde(with = "scalar_str")]
    pub value: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub parity: Vec<Parity>,
    pub brackets: Vec<BracketEntry>,
    pub form: Vec<FormEntry>,
}

/// Compact `label -> coefficient` view of a vector, for diagnostics.
pub fn describe(g: &LieSuperalgebra, x: &SparseVec) -> BTreeMap<String, String> {
    x.iter()
        .map(|(i, c)| (g.label(i).to_string(), c.to_string()))
        .collect()
}
