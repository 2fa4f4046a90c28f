//! Matrix realizations of the algebras under study, compiled down to
//! structure constants, together with their root data.
//!
//! Basis ordering is fixed: Cartan elements first, then even root vectors,
//! then odd root vectors; root vectors within a parity class are sorted by
//! their ε-coordinate tuple in decreasing lexicographic order.

mod g3;
mod supermatrix;

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use g3::{g3_root_data, G3Json, G3RootData};
pub use supermatrix::SuperMatrix;

use crate::error::{Error, Result};
use crate::liesuper::{self, LieSuperalgebra, Parity, RootDatum};
use crate::linalg::{self, frac, int, scalar_vec_str, Coordinates, Scalar, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `sl(1|n)`, `n ≥ 2`.
    Sl1n,
    /// `osp(2|2n)`, `n ≥ 1`.
    Osp22n,
    /// `osp(1|2n)`, `n ≥ 1`.
    Osp12n,
    /// `sl_n`, `n ≥ 2`.
    Sl,
    /// `sp(2n)`, `n ≥ 1`.
    Sp,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Sl1n => "sl1n",
            Family::Osp22n => "osp22n",
            Family::Osp12n => "osp12n",
            Family::Sl => "sl",
            Family::Sp => "sp",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        Some(match tag {
            "sl1n" => Family::Sl1n,
            "osp22n" => Family::Osp22n,
            "osp12n" => Family::Osp12n,
            "sl" => Family::Sl,
            "sp" => Family::Sp,
            _ => return None,
        })
    }

    pub fn build(self, n: usize) -> Result<Realization> {
        match self {
            Family::Sl1n => make_sl1n(n),
            Family::Osp22n => make_osp2_2n(n),
            Family::Osp12n => make_osp1_2n(n),
            Family::Sl => make_sl(n),
            Family::Sp => make_sp(n),
        }
    }
}

/// The ε-coordinate system of a realization.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonSystem {
    pub labels: Vec<String>,
    /// `(ε_i | ε_j)`.
    pub gram: Vec<Vec<Scalar>>,
    /// ε-coordinates of the weight of each standard basis vector of the
    /// defining superspace.
    position: Vec<Vec<Scalar>>,
}

impl EpsilonSystem {
    /// Builds the system from the ε-coordinates of each diagonal position
    /// and a family of diagonal matrices on which the form `-Str(XY)` is
    /// nondegenerate and which separates the ε's.
    fn new(labels: Vec<String>, position: Vec<Vec<Scalar>>, diagonal: &[SuperMatrix]) -> Self {
        let r = labels.len();
        // p_i: the position whose weight is +ε_i.
        let defining: Vec<usize> = (0..r)
            .map(|i| {
                position
                    .iter()
                    .position(|c| {
                        c.iter()
                            .enumerate()
                            .all(|(j, x)| *x == if i == j { int(1) } else { int(0) })
                    })
                    .expect("every ε appears at some diagonal position")
            })
            .collect();
        let m: Vec<Vec<Scalar>> = diagonal
            .iter()
            .map(|a| diagonal.iter().map(|b| -a.mul(b).supertrace()).collect())
            .collect();
        let minv = linalg::invert(&m).expect("diagonal form is nondegenerate");
        let f: Vec<Vec<Scalar>> = (0..r)
            .map(|i| {
                diagonal
                    .iter()
                    .map(|d| d.get(defining[i], defining[i]).clone())
                    .collect()
            })
            .collect();
        let gram = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let mut acc = Scalar::zero();
                        for a in 0..diagonal.len() {
                            for b in 0..diagonal.len() {
                                acc += &f[i][a] * &minv[a][b] * &f[j][b];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        EpsilonSystem {
            labels,
            gram,
            position,
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                acc += a * &self.gram[i][j] * b;
            }
        }
        acc
    }

    /// ε-coordinates of a matrix unit's weight, `wt(p) - wt(q)`.
    fn unit_weight(&self, p: usize, q: usize) -> Vec<Scalar> {
        self.position[p]
            .iter()
            .zip(&self.position[q])
            .map(|(a, b)| a - b)
            .collect()
    }

    pub fn format(&self, coords: &[Scalar]) -> String {
        format_combination(coords, &self.labels)
    }

    pub fn coords(&self, spec: &[(usize, i64)]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rank()];
        for (i, c) in spec {
            out[*i] += int(*c);
        }
        out
    }
}

/// Renders `Σ c_i label_i` as e.g. `eps0-eps1`, `2eps3`, `1/2alpha0-alpha2`.
pub fn format_combination(coords: &[Scalar], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in coords.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(l);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A Lie superalgebra built from supermatrices, with its root datum.
#[derive(Clone, Debug)]
pub struct Realization {
    pub family: Family,
    pub rank: usize,
    pub name: String,
    pub algebra: Arc<LieSuperalgebra>,
    pub matrices: Vec<SuperMatrix>,
    pub roots: RootDatum,
    pub epsilon: EpsilonSystem,
    /// ε-coordinates of each root, aligned with `roots.roots`.
    pub root_coords: Vec<Vec<Scalar>>,
}

impl Realization {
    pub fn root_by_coords(&self, coords: &[Scalar]) -> Option<usize> {
        self.root_coords.iter().position(|c| c == coords)
    }

    pub fn highest_root(&self) -> usize {
        self.roots
            .highest
            .expect("realizations designate a highest even root")
    }

    /// Basis index of `e_θ`.
    pub fn e_theta(&self) -> usize {
        self.roots.roots[self.highest_root()].vector
    }

    /// Basis index of `f_θ`.
    pub fn f_theta(&self) -> usize {
        let neg = self
            .roots
            .negative_of(self.highest_root())
            .expect("-θ is a root");
        self.roots.roots[neg].vector
    }

    pub fn root_label(&self, root: usize) -> String {
        self.epsilon.format(&self.root_coords[root])
    }

    pub fn root_norm(&self, root: usize) -> Scalar {
        let c = &self.root_coords[root];
        self.epsilon.inner(c, c)
    }

    /// `t = 2/(α|α)` for an even root `α`; `None` for odd or isotropic roots.
    pub fn t_value(&self, root: usize) -> Option<Scalar> {
        if self.roots.roots[root].parity.is_odd() {
            return None;
        }
        let norm = self.root_norm(root);
        (!norm.is_zero()).then(|| int(2) / norm)
    }

    /// Coefficients of a root in the simple roots, from ε-coordinates.
    pub fn simple_root_coefficients(&self, root: usize) -> Vec<Scalar> {
        let simple: Vec<SparseVec> = self
            .roots
            .simple
            .iter()
            .map(|&s| SparseVec::from_dense(&self.root_coords[s]))
            .collect();
        let coords = Coordinates::new(&simple).expect("simple roots are independent");
        coords
            .express(&SparseVec::from_dense(&self.root_coords[root]))
            .expect("dimension")
            .expect("simple roots span the root lattice")
            .to_dense()
    }

    pub fn is_positive(&self, root: usize) -> bool {
        let c = self.simple_root_coefficients(root);
        c.iter().all(|x| !x.is_negative())
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.roots.roots.len())
            .filter(|&r| self.is_positive(r))
            .collect()
    }

    /// Simple roots of a positive system in which `θ` is the highest root.
    ///
    /// The distinguished simple roots make `θ` highest only in the even part (for
    /// `sl(1|n)`, `ε0-ε1` plus `θ` is a root), so singularity of
    /// `e_θ(-1)^{k+1}1` is tested against this system instead. Positivity is
    /// the sign of `φ(α) = M(α·θ) + Σ_i α_i 10^{-i}` in ε-coordinates; `θ` has
    /// the largest coordinate norm, so it is the unique maximizer of `α·θ`.
    pub fn theta_simple_roots(&self) -> Vec<usize> {
        let theta = &self.root_coords[self.highest_root()];
        let phi = |c: &[Scalar]| -> Scalar {
            let dot: Scalar = c.iter().zip(theta).map(|(a, b)| a * b).sum();
            let mut tie = Scalar::zero();
            let mut w = Scalar::one();
            for a in c {
                w /= int(10);
                tie += a * &w;
            }
            dot * int(100) + tie
        };
        let positive: Vec<usize> = (0..self.root_coords.len())
            .filter(|&r| phi(&self.root_coords[r]).is_positive())
            .collect();
        let sums: std::collections::HashSet<Vec<Scalar>> = positive
            .iter()
            .flat_map(|&a| {
                positive.iter().map(move |&b| {
                    self.root_coords[a]
                        .iter()
                        .zip(&self.root_coords[b])
                        .map(|(x, y)| x + y)
                        .collect()
                })
            })
            .collect();
        positive
            .into_iter()
            .filter(|&r| !sums.contains(&self.root_coords[r]))
            .collect()
    }

    /// Basis indices of the root vectors of [`Self::theta_simple_roots`].
    pub fn theta_raising(&self) -> Vec<usize> {
        self.theta_simple_roots()
            .into_iter()
            .map(|r| self.roots.roots[r].vector)
            .collect()
    }

    pub fn to_json(&self) -> RealizationJson {
        let gi = liesuper::cartan_gram_inverse(&self.roots, self.algebra.gram())
            .expect("shipped Cartans are nondegenerate");
        RealizationJson {
            name: self.name.clone(),
            family: self.family,
            rank: self.rank,
            dim: self.algebra.dim(),
            even_dim: self.algebra.even_dim(),
            odd_dim: self.algebra.odd_dim(),
            epsilon_labels: self.epsilon.labels.clone(),
            epsilon_gram: self
                .epsilon
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
            roots: (0..self.roots.roots.len())
                .map(|r| RootJson {
                    label: self.root_label(r),
                    coords: self.root_coords[r].clone(),
                    parity: self.roots.roots[r].parity,
                    vector: self.algebra.label(self.roots.roots[r].vector).to_string(),
                    norm: liesuper::functional_inner_product(
                        &gi,
                        &self.roots.roots[r].values,
                        &self.roots.roots[r].values,
                    )
                    .to_string(),
                    positive: self.is_positive(r),
                })
                .collect(),
            simple_roots: self
                .roots
                .simple
                .iter()
                .map(|&r| self.root_label(r))
                .collect(),
            highest_root: self.roots.highest.map(|r| self.root_label(r)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootJson {
    pub label: String,
    #[serde(with = "scalar_vec_str")]
    pub coords: Vec<Scalar>,
    pub parity: Parity,
    pub vector: String,
    pub norm: String,
    pub positive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationJson {
    pub name: String,
    pub family: Family,
    pub rank: usize,
    pub dim: usize,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub epsilon_labels: Vec<String>,
    pub epsilon_gram: Vec<Vec<String>>,
    pub roots: Vec<RootJson>,
    pub simple_roots: Vec<String>,
    pub highest_root: Option<String>,
}

struct Blueprint {
    family: Family,
    rank: usize,
    name: String,
    cartan: Vec<SuperMatrix>,
    root_vectors: Vec<SuperMatrix>,
    epsilon: EpsilonSystem,
    simple: Vec<Vec<Scalar>>,
    highest: Vec<Scalar>,
}

fn assemble(bp: Blueprint) -> Result<Realization> {
    let mut tagged: Vec<(Parity, Vec<Scalar>, SuperMatrix)> = bp
        .root_vectors
        .into_iter()
        .map(|m| {
            let mut weights = m
                .nonzero_entries()
                .map(|(p, q, _)| bp.epsilon.unit_weight(p, q));
            let w = weights.next().expect("root vectors are nonzero");
            assert!(weights.all(|x| x == w), "root vector mixes weights");
            drop(weights);
            (m.parity().expect("root vectors are homogeneous"), w, m)
        })
        .collect();
    tagged.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));

    let mut labels: Vec<String> = (1..=bp.cartan.len()).map(|i| format!("h{i}")).collect();
    labels.extend(
        tagged
            .iter()
            .map(|(_, w, _)| format!("e[{}]", bp.epsilon.format(w))),
    );
    let mut matrices = bp.cartan.clone();
    matrices.extend(tagged.iter().map(|(_, _, m)| m.clone()));
    let coords: Vec<Vec<Scalar>> = tagged.iter().map(|(_, w, _)| w.clone()).collect();

    let algebra = compile(labels, &matrices)?;
    let cartan: Vec<usize> = (0..bp.cartan.len()).collect();
    let mut roots = liesuper::root_decomposition(&algebra, &cartan)?;
    let find = |c: &Vec<Scalar>| {
        coords
            .iter()
            .position(|x| x == c)
            .ok_or_else(|| Error::InvalidArgument(format!("no root {}", bp.epsilon.format(c))))
    };
    roots.simple = bp.simple.iter().map(find).collect::<Result<_>>()?;
    roots.highest = Some(find(&bp.highest)?);

    Ok(Realization {
        family: bp.family,
        rank: bp.rank,
        name: bp.name,
        algebra: Arc::new(algebra),
        matrices,
        roots,
        epsilon: bp.epsilon,
        root_coords: coords,
    })
}

/// Structure constants and the form `-Str(XY)` of a family of homogeneous
/// supermatrices closed under the supercommutator.
pub fn compile(labels: Vec<String>, matrices: &[SuperMatrix]) -> Result<LieSuperalgebra> {
    let flat: Vec<SparseVec> = matrices.iter().map(|m| m.flatten()).collect();
    let coords = Coordinates::new(&flat)?;
    let parity: Vec<Parity> = matrices
        .iter()
        .map(|m| {
            m.parity()
                .ok_or_else(|| Error::InvalidArgument("inhomogeneous basis matrix".into()))
        })
        .collect::<Result<_>>()?;
    let d = matrices.len();
    let mut brackets = vec![vec![SparseVec::zero(d); d]; d];
    let mut form = vec![vec![Scalar::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let c = matrices[i].supercommutator(&matrices[j]);
            brackets[i][j] = coords.express(&c.flatten())?.ok_or_else(|| {
                Error::InvalidArgument("matrices are not closed under the bracket".into())
            })?;
            form[i][j] = -matrices[i].mul(&matrices[j]).supertrace();
        }
    }
    LieSuperalgebra::new(labels, parity, brackets, form)
}

fn eps_labels(indices: impl Iterator<Item = usize>) -> Vec<String> {
    indices.map(|i| format!("eps{i}")).collect()
}

fn unit_coords(r: usize, i: usize, sign: i64) -> Vec<Scalar> {
    (0..r)
        .map(|j| if j == i { int(sign) } else { int(0) })
        .collect()
}

/// `sl(1|n)` as supertraceless `(1|n)` supermatrices with form `-Str(XY)`.
///
/// The argument is the `n` of `sl(1|n)`; the family `sl(1|n+1)`, `n ≥ 1`,
/// is `make_sl1n(n + 1)`.
pub fn make_sl1n(n: usize) -> Result<Realization> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "sl(1|n) needs n >= 2, got {n}"
        )));
    }
    let unit = |i, j| SuperMatrix::unit(1, n, i, j);
    // Coroots of the simple roots ε0-ε1, ε1-ε2, ...
    let mut cartan = vec![unit(0, 0).add_scaled(&int(1), &unit(1, 1))];
    for i in 2..=n {
        cartan.push(unit(i - 1, i - 1).add_scaled(&int(-1), &unit(i, i)));
    }
    let mut root_vectors = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                root_vectors.push(unit(i, j));
            }
        }
    }
    let r = n + 1;
    let position = (0..r).map(|p| unit_coords(r, p, 1)).collect();
    // The ε's are separated by the full diagonal of gl(1|n).
    let diagonal: Vec<SuperMatrix> = (0..r).map(|p| unit(p, p)).collect();
    let epsilon = EpsilonSystem::new(eps_labels(0..=n), position, &diagonal);
    let simple = (0..n)
        .map(|i| epsilon.coords(&[(i, 1), (i + 1, -1)]))
        .collect();
    let highest = epsilon.coords(&[(1, 1), (n, -1)]);
    assemble(Blueprint {
        family: Family::Sl1n,
        rank: n,
        name: format!("sl(1|{n})"),
        cartan,
        root_vectors,
        epsilon,
        simple,
        highest,
    })
}

/// `osp(2|2n)` in the block form
///
/// ```text
/// (  a     0    y   y1 )
/// (  0    -a    z   z1 )
/// ( -z1ᵗ -y1ᵗ   d   e  )
/// (  zᵗ   yᵗ    f  -dᵗ )
/// ```
///
/// with `e`, `f` symmetric, and form `-Str(XY)`. ε-coordinates are taken in
/// the basis `(ε1, ε3, …, ε_{n+2})`; `ε2 = -ε1` and `ε_{n+2+i} = -ε_{2+i}`.
pub fn make_osp2_2n(n: usize) -> Result<Realization> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "osp(2|2n) needs n >= 1, got {n}"
        )));
    }
    let s = 2 + 2 * n;
    let m = |entries: &[(usize, usize, i64)]| {
        SuperMatrix::from_entries(
            2,
            2 * n,
            &entries
                .iter()
                .map(|(i, j, x)| (*i, *j, int(*x)))
                .collect::<Vec<_>>(),
        )
    };
    let d = |i: usize| 2 + i;
    let dd = |i: usize| 2 + n + i;

    let mut cartan = vec![m(&[(0, 0, 1), (1, 1, -1)])];
    for i in 0..n {
        cartan.push(m(&[(d(i), d(i), 1), (dd(i), dd(i), -1)]));
    }
    let mut root_vectors = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                // d = E_ij
                root_vectors.push(m(&[(d(i), d(j), 1), (dd(j), dd(i), -1)]));
            }
        }
        for j in i..n {
            // e, f = E_ij + E_ji (or E_ii)
            if i == j {
                root_vectors.push(m(&[(d(i), dd(i), 1)]));
                root_vectors.push(m(&[(dd(i), d(i), 1)]));
            } else {
                root_vectors.push(m(&[(d(i), dd(j), 1), (d(j), dd(i), 1)]));
                root_vectors.push(m(&[(dd(i), d(j), 1), (dd(j), d(i), 1)]));
            }
        }
        // odd: y, y1, z, z1
        root_vectors.push(m(&[(0, d(i), 1), (dd(i), 1, 1)]));
        root_vectors.push(m(&[(0, dd(i), 1), (d(i), 1, -1)]));
        root_vectors.push(m(&[(1, d(i), 1), (dd(i), 0, 1)]));
        root_vectors.push(m(&[(1, dd(i), 1), (d(i), 0, -1)]));
    }
    let r = n + 1;
    let mut position = vec![unit_coords(r, 0, 1), unit_coords(r, 0, -1)];
    position.extend((0..n).map(|i| unit_coords(r, i + 1, 1)));
    position.extend((0..n).map(|i| unit_coords(r, i + 1, -1)));
    debug_assert_eq!(position.len(), s);
    let labels = eps_labels(std::iter::once(1).chain(3..=n + 2));
    let epsilon = EpsilonSystem::new(labels, position, &cartan);
    // Π = {ε1-ε3, ε3-ε4, …, ε_{n+1}-ε_{n+2}, 2ε_{n+2}}
    let mut simple = vec![epsilon.coords(&[(0, 1), (1, -1)])];
    for i in 1..n {
        simple.push(epsilon.coords(&[(i, 1), (i + 1, -1)]));
    }
    simple.push(epsilon.coords(&[(n, 2)]));
    let highest = epsilon.coords(&[(1, 2)]);
    assemble(Blueprint {
        family: Family::Osp22n,
        rank: n,
        name: format!("osp(2|{})", 2 * n),
        cartan,
        root_vectors,
        epsilon,
        simple,
        highest,
    })
}

/// Builds a supermatrix from `(row, column, entry)` triples.
type MatrixUnits<'a> = dyn Fn(&[(usize, usize, i64)]) -> SuperMatrix + 'a;

/// Symplectic block `[[d, e], [f, -dᵗ]]` root vectors and Cartan on the
/// positions `offset..offset+2n`.
fn symplectic_part(
    n: usize,
    offset: usize,
    m: &MatrixUnits<'_>,
) -> (Vec<SuperMatrix>, Vec<SuperMatrix>) {
    let d = |i: usize| offset + i;
    let dd = |i: usize| offset + n + i;
    let cartan = (0..n)
        .map(|i| m(&[(d(i), d(i), 1), (dd(i), dd(i), -1)]))
        .collect();
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                roots.push(m(&[(d(i), d(j), 1), (dd(j), dd(i), -1)]));
            }
        }
        for j in i..n {
            if i == j {
                roots.push(m(&[(d(i), dd(i), 1)]));
                roots.push(m(&[(dd(i), d(i), 1)]));
            } else {
                roots.push(m(&[(d(i), dd(j), 1), (d(j), dd(i), 1)]));
                roots.push(m(&[(dd(i), d(j), 1), (dd(j), d(i), 1)]));
            }
        }
    }
    (cartan, roots)
}

/// `osp(1|2n)`: supermatrices on `ℂ^{1|2n}` preserving the even
/// supersymmetric form with Gram matrix `diag(1) ⊕ [[0, I], [-I, 0]]`.
///
/// The even part is `sp(2n)` in the block form `[[d, e], [f, -dᵗ]]`; the odd
/// part is `X_c = [[0, -cᵗΩ], [c, 0]]`. The form is `-Str(XY)`, which
/// restricts to the trace form on `sp(2n)` (long roots of norm 2) and is
/// forced on the odd part by invariance.
pub fn make_osp1_2n(n: usize) -> Result<Realization> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "osp(1|2n) needs n >= 1, got {n}"
        )));
    }
    let m = |entries: &[(usize, usize, i64)]| {
        SuperMatrix::from_entries(
            1,
            2 * n,
            &entries
                .iter()
                .map(|(i, j, x)| (*i, *j, int(*x)))
                .collect::<Vec<_>>(),
        )
    };
    let (cartan, mut root_vectors) = symplectic_part(n, 1, &m);
    for i in 0..n {
        // c = e_i: column entry 1 at row 1+i, row entry -(e_iᵗΩ) = -e_{n+i}ᵗ.
        root_vectors.push(m(&[(1 + i, 0, 1), (0, 1 + n + i, -1)]));
        // c = e_{n+i}: e_{n+i}ᵗΩ = -e_iᵗ.
        root_vectors.push(m(&[(1 + n + i, 0, 1), (0, 1 + i, 1)]));
    }
    let mut position = vec![vec![Scalar::zero(); n]];
    position.extend((0..n).map(|i| unit_coords(n, i, 1)));
    position.extend((0..n).map(|i| unit_coords(n, i, -1)));
    let epsilon = EpsilonSystem::new(eps_labels(1..=n), position, &cartan);
    let mut simple: Vec<Vec<Scalar>> = (0..n - 1)
        .map(|i| epsilon.coords(&[(i, 1), (i + 1, -1)]))
        .collect();
    simple.push(epsilon.coords(&[(n - 1, 1)]));
    let highest = epsilon.coords(&[(0, 2)]);
    assemble(Blueprint {
        family: Family::Osp12n,
        rank: n,
        name: format!("osp(1|{})", 2 * n),
        cartan,
        root_vectors,
        epsilon,
        simple,
        highest,
    })
}

/// `sl_n` with the trace form, as `(0|n)` supermatrices so that `-Str` is the trace.
pub fn make_sl(n: usize) -> Result<Realization> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "sl_n needs n >= 2, got {n}"
        )));
    }
    let unit = |i, j| SuperMatrix::unit(0, n, i, j);
    let cartan = (0..n - 1)
        .map(|i| unit(i, i).add_scaled(&int(-1), &unit(i + 1, i + 1)))
        .collect();
    let mut root_vectors = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                root_vectors.push(unit(i, j));
            }
        }
    }
    let position = (0..n).map(|p| unit_coords(n, p, 1)).collect();
    let diagonal: Vec<SuperMatrix> = (0..n).map(|p| unit(p, p)).collect();
    let epsilon = EpsilonSystem::new(eps_labels(1..=n), position, &diagonal);
    let simple = (0..n - 1)
        .map(|i| epsilon.coords(&[(i, 1), (i + 1, -1)]))
        .collect();
    let highest = epsilon.coords(&[(0, 1), (n - 1, -1)]);
    assemble(Blueprint {
        family: Family::Sl,
        rank: n,
        name: format!("sl({n})"),
        cartan,
        root_vectors,
        epsilon,
        simple,
        highest,
    })
}

/// `sp(2n)` with the trace form; the argument is `n`.
pub fn make_sp(n: usize) -> Result<Realization> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "sp(2n) needs n >= 1, got {n}"
        )));
    }
    let m = |entries: &[(usize, usize, i64)]| {
        SuperMatrix::from_entries(
            0,
            2 * n,
            &entries
                .iter()
                .map(|(i, j, x)| (*i, *j, int(*x)))
                .collect::<Vec<_>>(),
        )
    };
    let (cartan, root_vectors) = symplectic_part(n, 0, &m);
    let mut position: Vec<Vec<Scalar>> = (0..n).map(|i| unit_coords(n, i, 1)).collect();
    position.extend((0..n).map(|i| unit_coords(n, i, -1)));
    let epsilon = EpsilonSystem::new(eps_labels(1..=n), position, &cartan);
    let mut simple: Vec<Vec<Scalar>> = (0..n - 1)
        .map(|i| epsilon.coords(&[(i, 1), (i + 1, -1)]))
        .collect();
    simple.push(epsilon.coords(&[(n - 1, 2)]));
    let highest = epsilon.coords(&[(0, 2)]);
    assemble(Blueprint {
        family: Family::Sp,
        rank: n,
        name: format!("sp({})", 2 * n),
        cartan,
        root_vectors,
        epsilon,
        simple,
        highest,
    })
}

/// The element `h = diag(1, I/n)` of `sl(1|n)`, in the compiled basis.
pub fn sl1n_central_element(r: &Realization) -> SparseVec {
    assert_eq!(r.family, Family::Sl1n);
    let n = r.rank;
    let mut h = SuperMatrix::unit(1, n, 0, 0);
    for i in 1..=n {
        h = h.add_scaled(&frac(1, n as i64), &SuperMatrix::unit(1, n, i, i));
    }
    let flat: Vec<SparseVec> = r.matrices.iter().map(|m| m.flatten()).collect();
    Coordinates::new(&flat)
        .unwrap()
        .express(&h.flatten())
        .unwrap()
        .expect("h lies in sl(1|n)")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<Realization> {
        vec![
            make_sl1n(2).unwrap(),
            make_sl1n(3).unwrap(),
            make_osp2_2n(1).unwrap(),
            make_osp2_2n(2).unwrap(),
            make_osp1_2n(1).unwrap(),
            make_osp1_2n(2).unwrap(),
            make_sl(2).unwrap(),
            make_sl(3).unwrap(),
            make_sp(1).unwrap(),
            make_sp(2).unwrap(),
        ]
    }

    #[test]
    fn constructors_satisfy_axioms() {
        for r in all() {
            let report = r.algebra.verify_axioms();
            assert!(report.is_empty(), "{}: {:?}", r.name, report.violations);
        }
    }

    #[test]
    fn dimensions() {
        let g = make_sl1n(2).unwrap();
        assert_eq!(
            (g.algebra.dim(), g.algebra.even_dim(), g.algebra.odd_dim()),
            (8, 4, 4)
        );
        let g = make_sl1n(3).unwrap();
        assert_eq!(g.algebra.dim(), 15);
        let g = make_osp2_2n(1).unwrap();
        assert_eq!(
            (g.algebra.dim(), g.algebra.even_dim(), g.algebra.odd_dim()),
            (8, 4, 4)
        );
        let g = make_osp2_2n(2).unwrap();
        assert_eq!((g.algebra.even_dim(), g.algebra.odd_dim()), (11, 8));
        let g = make_osp1_2n(1).unwrap();
        assert_eq!(
            (g.algebra.dim(), g.algebra.even_dim(), g.algebra.odd_dim()),
            (5, 3, 2)
        );
        assert_eq!(make_sl(2).unwrap().algebra.dim(), 3);
        assert_eq!(make_sp(1).unwrap().algebra.dim(), 3);
        assert_eq!(make_sp(2).unwrap().algebra.dim(), 10);
    }

    #[test]
    fn rank_errors() {
        assert!(make_sl1n(1).is_err());
        assert!(make_osp2_2n(0).is_err());
        assert!(make_osp1_2n(0).is_err());
        assert!(make_sl(1).is_err());
        assert!(make_sp(0).is_err());
    }

    #[test]
    fn sl1n_epsilon_table() {
        for n in 2..=4 {
            let g = make_sl1n(n).unwrap();
            for i in 0..=n {
                for j in 0..=n {
                    let expect = match (i, j) {
                        (0, 0) => int(-1),
                        (a, b) if a == b => int(1),
                        _ => int(0),
                    };
                    assert_eq!(g.epsilon.gram[i][j], expect);
                }
            }
        }
    }

    #[test]
    fn osp22n_epsilon_table() {
        for n in 1..=3 {
            let g = make_osp2_2n(n).unwrap();
            for i in 0..=n {
                for j in 0..=n {
                    let expect = match (i, j) {
                        (0, 0) => frac(-1, 2),
                        (a, b) if a == b => frac(1, 2),
                        _ => int(0),
                    };
                    assert_eq!(g.epsilon.gram[i][j], expect);
                }
            }
        }
    }

    /// The induced form on h* must agree with the ε-table on every pair of roots.
    #[test]
    fn root_products_match_epsilon_table() {
        for r in all() {
            let ip = liesuper::root_inner_products(&r.roots, r.algebra.gram()).unwrap();
            for a in 0..r.roots.roots.len() {
                for b in 0..r.roots.roots.len() {
                    assert_eq!(
                        ip[a][b],
                        r.epsilon.inner(&r.root_coords[a], &r.root_coords[b]),
                        "{} roots {} {}",
                        r.name,
                        r.root_label(a),
                        r.root_label(b)
                    );
                }
            }
        }
    }

    fn labels_of(r: &Realization, parity: Parity) -> Vec<String> {
        let mut v: Vec<String> = (0..r.roots.roots.len())
            .filter(|&i| r.roots.roots[i].parity == parity)
            .map(|i| r.root_label(i))
            .collect();
        v.sort();
        v
    }

    fn sorted(xs: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn sl12_roots() {
        let g = make_sl1n(2).unwrap();
        assert_eq!(g.roots.cartan.len(), 2);
        assert_eq!(
            labels_of(&g, Parity::Even),
            sorted(&["eps1-eps2", "-eps1+eps2"])
        );
        assert_eq!(
            labels_of(&g, Parity::Odd),
            sorted(&["eps0-eps1", "-eps0+eps1", "eps0-eps2", "-eps0+eps2"])
        );
        let theta = g.highest_root();
        assert_eq!(g.root_label(theta), "eps1-eps2");
    }

    #[test]
    fn sl13_theta_norm() {
        let g = make_sl1n(3).unwrap();
        let t = g.highest_root();
        assert_eq!(g.root_label(t), "eps1-eps3");
        assert_eq!(g.root_norm(t), int(2));
    }

    #[test]
    fn osp22_roots() {
        let g = make_osp2_2n(1).unwrap();
        assert_eq!(labels_of(&g, Parity::Even), sorted(&["2eps3", "-2eps3"]));
        let odd = labels_of(&g, Parity::Odd);
        assert!(odd.contains(&"eps1-eps3".to_string()));
        assert!(odd.contains(&"-eps1+eps3".to_string()));
        // ε1+ε3 = ε1-ε4 once ε4 = -ε3 is eliminated.
        assert_eq!(odd.len(), 4);
        assert_eq!(g.root_label(g.highest_root()), "2eps3");
    }

    #[test]
    fn osp24_even_roots() {
        let g = make_osp2_2n(2).unwrap();
        assert_eq!(
            labels_of(&g, Parity::Even),
            sorted(&[
                "eps3-eps4",
                "-eps3+eps4",
                "eps3+eps4",
                "-eps3-eps4",
                "2eps3",
                "-2eps3",
                "2eps4",
                "-2eps4"
            ])
        );
    }

    #[test]
    fn osp12n_t_values() {
        let g = make_osp1_2n(1).unwrap();
        let pos_even: Vec<usize> = g
            .positive_roots()
            .into_iter()
            .filter(|&r| !g.roots.roots[r].parity.is_odd())
            .collect();
        assert_eq!(pos_even.len(), 1);
        assert_eq!(g.t_value(pos_even[0]), Some(int(1)));

        let g = make_osp1_2n(2).unwrap();
        let short = g.root_by_coords(&[int(1), int(-1)]).unwrap();
        assert_eq!(g.t_value(short), Some(int(2)));
        let long = g.root_by_coords(&[int(2), int(0)]).unwrap();
        assert_eq!(g.t_value(long), Some(int(1)));
    }

    #[test]
    fn osp12_odd_form_value() {
        // Invariance pins the odd part of the form: (X_{e1} | X_{e2}) = 2.
        let g = make_osp1_2n(1).unwrap();
        let a = g.algebra.index_of("e[eps1]").unwrap();
        let b = g.algebra.index_of("e[-eps1]").unwrap();
        assert_eq!(g.algebra.basis_form(a, b), &int(2));
        assert_eq!(g.algebra.basis_form(b, a), &int(-2));
    }

    #[test]
    fn sp2_matches_sl2() {
        let a = make_sp(1).unwrap();
        let b = make_sl(2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.algebra.basis_bracket(i, j), b.algebra.basis_bracket(i, j));
                assert_eq!(a.algebra.basis_form(i, j), b.algebra.basis_form(i, j));
            }
        }
    }

    #[test]
    fn positive_roots_split_evenly() {
        for r in all() {
            let total = r.roots.roots.len();
            assert_eq!(r.positive_roots().len() * 2, total, "{}", r.name);
            for &s in &r.roots.simple {
                assert!(r.is_positive(s));
            }
        }
    }

    #[test]
    fn root_spaces_partition_and_coroots_in_cartan() {
        for r in all() {
            let d = &r.roots;
            assert_eq!(d.cartan.len() + d.roots.len(), r.algebra.dim());
            for (i, root) in d.roots.iter().enumerate() {
                let neg = d.negative_of(i).expect("roots come in ± pairs");
                let h = r.algebra.basis_bracket(root.vector, d.roots[neg].vector);
                assert!(h.iter().all(|(j, _)| d.cartan.contains(&j)), "{}", r.name);
            }
        }
    }

    #[test]
    fn root_vectors_have_unit_entries() {
        for r in all() {
            for &v in r.roots.roots.iter().map(|x| &x.vector) {
                for (_, _, x) in r.matrices[v].nonzero_entries() {
                    assert!(x.abs().is_one());
                }
            }
        }
    }

    /// The even part of sl(1|n) is sl_n ⊕ ℂh with h central in the even part
    /// and acting by a scalar on the odd part.
    #[test]
    fn sl1n_even_part() {
        for n in 2..=3 {
            let g = make_sl1n(n).unwrap();
            let sl = make_sl(n).unwrap();
            // Labels in sl(1|n) for the sl_n part: Cartan h2..hn, even roots.
            let map: Vec<usize> = (0..sl.algebra.dim())
                .map(|i| {
                    if i < n - 1 {
                        i + 1
                    } else {
                        g.algebra.index_of(sl.algebra.label(i)).unwrap()
                    }
                })
                .collect();
            for i in 0..sl.algebra.dim() {
                for j in 0..sl.algebra.dim() {
                    let expect = sl
                        .algebra
                        .basis_bracket(i, j)
                        .remap(g.algebra.dim(), |k| map[k]);
                    assert_eq!(g.algebra.basis_bracket(map[i], map[j]), &expect);
                }
            }
            let h = sl1n_central_element(&g);
            for k in 0..g.algebra.dim() {
                let x = g.algebra.basis_vector(k);
                let hx = g.algebra.bracket(&h, &x).unwrap();
                if g.algebra.parity(k).is_odd() {
                    let c = hx.get(k);
                    assert!(!c.is_zero());
                    assert_eq!(hx, x.scaled(&c));
                    assert_eq!(c.abs(), frac(n as i64 - 1, n as i64));
                } else {
                    assert!(hx.is_zero());
                }
            }
        }
    }

    #[test]
    fn dual_coxeter_numbers() {
        let h = |r: Realization| r.algebra.dual_coxeter().unwrap();
        assert_eq!(h(make_sl(2).unwrap()), int(2));
        assert_eq!(h(make_sl(3).unwrap()), int(3));
        assert_eq!(h(make_sp(2).unwrap()), int(3));
        assert_eq!(h(make_sl1n(2).unwrap()), int(1));
        assert_eq!(h(make_sl1n(3).unwrap()), int(2));
        assert_eq!(h(make_osp2_2n(1).unwrap()), int(1));
        assert_eq!(h(make_osp2_2n(2).unwrap()), int(2));
        assert_eq!(h(make_osp1_2n(1).unwrap()), frac(3, 2));
        assert_eq!(h(make_osp1_2n(2).unwrap()), frac(5, 2));
    }

    #[test]
    fn theta_is_highest_for_its_simple_roots() {
        for g in [
            make_sl1n(2),
            make_sl1n(3),
            make_osp2_2n(1),
            make_osp2_2n(2),
            make_osp1_2n(2),
            make_sp(2),
        ] {
            let g = g.unwrap();
            let simple = g.theta_simple_roots();
            assert_eq!(simple.len(), g.roots.cartan.len(), "{}", g.name);
            let theta = &g.root_coords[g.highest_root()];
            for &a in &simple {
                let sum: Vec<Scalar> = theta
                    .iter()
                    .zip(&g.root_coords[a])
                    .map(|(x, y)| x + y)
                    .collect();
                assert!(
                    g.root_by_coords(&sum).is_none(),
                    "{}: θ + {}",
                    g.name,
                    g.root_label(a)
                );
            }
        }
        let g = make_sl1n(2).unwrap();
        let mut labels: Vec<String> = g
            .theta_simple_roots()
            .into_iter()
            .map(|r| g.root_label(r))
            .collect();
        labels.sort();
        assert_eq!(labels, ["-eps0+eps1", "eps0-eps2"]);
    }
}
