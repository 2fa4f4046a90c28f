//! Level-`k` integrability conditions for highest weights of the affine
//! superalgebras of `sl(1|n)` and `osp(2|2n)`, enumeration of the solution
//! sets, and validation of the shipped `G(3)` root data.
//!
//! Labels are exact rationals. The conditions only constrain `b_0 + b_1`, so
//! the continuous solutions are recorded symbolically as `b_0 = t`,
//! `b_1 = m - t` and tested through rational specializations.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{int, is_integer, Scalar};
use crate::realizations::G3RootData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelFamily {
    Sl1n,
    Osp22n,
}

impl LabelFamily {
    pub fn tag(self) -> &'static str {
        match self {
            LabelFamily::Sl1n => "sl1n",
            LabelFamily::Osp22n => "osp22n",
        }
    }

    pub fn from_tag(tag: &str) -> Option<LabelFamily> {
        match tag {
            "sl1n" => Some(LabelFamily::Sl1n),
            "osp22n" => Some(LabelFamily::Osp22n),
            _ => None,
        }
    }

    fn min_rank(self) -> usize {
        match self {
            LabelFamily::Sl1n => 2,
            LabelFamily::Osp22n => 1,
        }
    }

    /// Label indices: `0..=n` for `sl(1|n)`; `0, 1, 4, …, n+3` for
    /// `osp(2|2n)`, which has no `b_2`, `b_3`.
    pub fn indices(self, n: usize) -> Vec<usize> {
        match self {
            LabelFamily::Sl1n => (0..=n).collect(),
            LabelFamily::Osp22n => [0, 1].into_iter().chain(4..=n + 3).collect(),
        }
    }
}

/// Labels `b_i` of a highest weight `λ`, in the order of
/// [`LabelFamily::indices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLabels {
    pub family: LabelFamily,
    pub n: usize,
    pub labels: Vec<Scalar>,
}

impl WeightLabels {
    pub fn new(family: LabelFamily, n: usize, labels: Vec<Scalar>) -> Result<Self> {
        if n < family.min_rank() {
            return Err(Error::InvalidArgument(format!(
                "{} needs n >= {}",
                family.tag(),
                family.min_rank()
            )));
        }
        let expected = family.indices(n).len();
        if labels.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: labels.len(),
            });
        }
        Ok(WeightLabels { family, n, labels })
    }

    pub fn from_ints(family: LabelFamily, n: usize, labels: &[i64]) -> Result<Self> {
        Self::new(family, n, labels.iter().map(|&x| int(x)).collect())
    }

    /// `(index, value)` pairs.
    pub fn named(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.family.indices(self.n).into_iter().zip(&self.labels)
    }

    pub fn strings(&self) -> Vec<String> {
        self.labels.iter().map(|x| x.to_string()).collect()
    }
}

fn is_nonneg_integer(x: &Scalar) -> bool {
    is_integer(x) && !x.is_negative()
}

/// Conditions shared by both families: (i) labels past `b_1` are
/// nonnegative integers; (ii) `b_0 = b_1 = 0` or `b_0 + b_1 ∈ ℤ_{>0}`;
/// (iii) all labels sum to `k`.
fn check(k: &Scalar, w: &WeightLabels) -> bool {
    let (b0, b1) = (&w.labels[0], &w.labels[1]);
    let rest = &w.labels[2..];
    let cond_i = rest.iter().all(is_nonneg_integer);
    let cond_ii = (b0.is_zero() && b1.is_zero()) || {
        let s = b0 + b1;
        is_integer(&s) && s.is_positive()
    };
    let total: Scalar = w.labels.iter().sum();
    cond_i && cond_ii && &total == k
}

fn expect_family(w: &WeightLabels, family: LabelFamily) -> Result<()> {
    if w.family != family {
        return Err(Error::FamilyMismatch {
            expected: family.tag().into(),
            found: w.family.tag().into(),
        });
    }
    Ok(())
}

fn expect_level(k: &Scalar) -> Result<()> {
    if !is_integer(k) || !k.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "level must be a positive integer, got {k}"
        )));
    }
    Ok(())
}

/// Integrability of `L_Σ(λ)` over the affine `sl(1|n)` at level `k`.
pub fn check_sl1n(k: &Scalar, w: &WeightLabels) -> Result<bool> {
    expect_level(k)?;
    expect_family(w, LabelFamily::Sl1n)?;
    Ok(check(k, w))
}

/// Integrability of `L_Σ(λ)` over the affine `osp(2|2n)` at level `k`.
pub fn check_osp22n(k: &Scalar, w: &WeightLabels) -> Result<bool> {
    expect_level(k)?;
    expect_family(w, LabelFamily::Osp22n)?;
    Ok(check(k, w))
}

pub fn check_labels(k: &Scalar, w: &WeightLabels) -> Result<bool> {
    match w.family {
        LabelFamily::Sl1n => check_sl1n(k, w),
        LabelFamily::Osp22n => check_osp22n(k, w),
    }
}

/// The one-parameter family `b_0 = t`, `b_1 = m - t`, other labels fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousFamily {
    pub m: u64,
    /// Values of the labels past `b_1`.
    pub fixed: Vec<u64>,
}

/// All level-`k` integrable highest weights of one family and rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCertificate {
    pub family: LabelFamily,
    pub n: usize,
    pub k: u64,
    pub discrete: Vec<WeightLabels>,
    pub families: Vec<ContinuousFamily>,
    pub infinite: bool,
}

impl ContinuousFamily {
    /// The member with `b_0 = t`.
    pub fn specialize(&self, family: LabelFamily, n: usize, t: &Scalar) -> WeightLabels {
        let mut labels = vec![t.clone(), int(self.m as i64) - t];
        labels.extend(self.fixed.iter().map(|&x| int(x as i64)));
        WeightLabels { family, n, labels }
    }
}

/// Compositions of `total` into `parts` nonnegative integers, in
/// lexicographic order.
fn compositions(parts: usize, total: u64) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(parts - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn enumerate(family: LabelFamily, n: usize, k: &Scalar) -> Result<FamilyCertificate> {
    expect_level(k)?;
    if n < family.min_rank() {
        return Err(Error::InvalidArgument(format!(
            "{} needs n >= {}",
            family.tag(),
            family.min_rank()
        )));
    }
    let kk: u64 = k
        .to_integer()
        .try_into()
        .map_err(|_| Error::InvalidArgument(format!("level {k} is too large")))?;
    let rest = family.indices(n).len() - 2;
    let discrete = compositions(rest, kk)
        .into_iter()
        .map(|c| {
            let mut labels = vec![Scalar::zero(), Scalar::zero()];
            labels.extend(c.iter().map(|&x| int(x as i64)));
            WeightLabels { family, n, labels }
        })
        .collect();
    let families: Vec<ContinuousFamily> = (1..=kk)
        .flat_map(|m| {
            compositions(rest, kk - m)
                .into_iter()
                .map(move |fixed| ContinuousFamily { m, fixed })
        })
        .collect();
    let infinite = !families.is_empty();
    Ok(FamilyCertificate {
        family,
        n,
        k: kk,
        discrete,
        families,
        infinite,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyJson {
    pub free: String,
    pub constraint: String,
    pub m: u64,
    pub fixed: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub family: LabelFamily,
    pub n: usize,
    pub k: u64,
    pub labels: Vec<String>,
    pub discrete: Vec<Vec<String>>,
    pub families: Vec<FamilyJson>,
    pub infinite: bool,
}

impl FamilyCertificate {
    pub fn to_json(&self) -> CertificateJson {
        let indices = self.family.indices(self.n);
        CertificateJson {
            family: self.family,
            n: self.n,
            k: self.k,
            labels: indices.iter().map(|i| format!("b{i}")).collect(),
            discrete: self.discrete.iter().map(|w| w.strings()).collect(),
            families: self
                .families
                .iter()
                .map(|f| FamilyJson {
                    free: "b0".into(),
                    constraint: "b0+b1=m".into(),
                    m: f.m,
                    fixed: indices[2..]
                        .iter()
                        .zip(&f.fixed)
                        .map(|(i, &x)| (format!("b{i}"), x))
                        .collect(),
                })
                .collect(),
            infinite: self.infinite,
        }
    }
}

/// A named list of roots and its expected printed form.
type RootList<'a> = (&'a str, &'a [Vec<Scalar>], &'a [&'a str]);

/// Compares `d` against the `G(3)` data printed in the literature: the Gram
/// values, `(θ_2|θ_2) = 2`, both positive root lists and the weights of `V`
/// and `V_1`. Returns one entry per mismatch.
pub fn validate_g3_data(d: &G3RootData) -> Vec<String> {
    let mut report = Vec::new();
    let expected_gram = [["-8/3", "0", "0"], ["0", "2", "-1"], ["0", "-1", "2/3"]];
    for (i, row) in expected_gram.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            let found = d.gram.get(i).and_then(|r| r.get(j)).map(|x| x.to_string());
            if found.as_deref() != Some(*want) {
                report.push(format!(
                    "gram[{i}][{j}]: expected {want}, found {}",
                    found.unwrap_or_default()
                ));
            }
        }
    }
    let theta = d.format(&d.theta2);
    if theta != "2alpha1+3alpha2" {
        report.push(format!("theta2: expected 2alpha1+3alpha2, found {theta}"));
    }
    let norm = d.inner(&d.theta2, &d.theta2);
    if norm != int(2) {
        report.push(format!("(theta2|theta2): expected 2, found {norm}"));
    }
    let sets: [RootList; 4] = [
        (
            "positive even roots",
            &d.positive_even,
            &[
                "alpha0",
                "alpha1",
                "alpha2",
                "alpha1+alpha2",
                "alpha1+2alpha2",
                "alpha1+3alpha2",
                "2alpha1+3alpha2",
            ],
        ),
        (
            "positive odd roots",
            &d.positive_odd,
            &[
                "1/2alpha0",
                "1/2alpha0+alpha2",
                "1/2alpha0-alpha2",
                "1/2alpha0+alpha1+2alpha2",
                "1/2alpha0-alpha1-2alpha2",
                "1/2alpha0+alpha1+alpha2",
                "1/2alpha0-alpha1-alpha2",
            ],
        ),
        (
            "weights of V",
            &d.weights_v,
            &[
                "alpha1+2alpha2",
                "alpha1+alpha2",
                "alpha2",
                "0",
                "-alpha2",
                "-alpha1-alpha2",
                "-alpha1-2alpha2",
            ],
        ),
        (
            "weights of V_1",
            &d.weights_v1,
            &["1/2alpha0", "-1/2alpha0"],
        ),
    ];
    for (name, found, want) in sets {
        let found: BTreeSet<String> = found.iter().map(|x| d.format(x)).collect();
        let want: BTreeSet<String> = want.iter().map(|s| s.to_string()).collect();
        if found.len() != want.len() {
            report.push(format!(
                "{name}: expected {} elements, found {}",
                want.len(),
                found.len()
            ));
        }
        for w in want.difference(&found) {
            report.push(format!("{name}: missing {w}"));
        }
        for f in found.difference(&want) {
            report.push(format!("{name}: unexpected {f}"));
        }
    }
    report
}
