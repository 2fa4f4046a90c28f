//! Root data of `G(3)` in the coordinates `(α0, α1, α2)`.
//!
//! `α0` is the positive root of the `sl_2` summand, `α1` (long) and `α2`
//! (short) are simple roots of `G_2`. Only root and weight data are shipped.

use num_traits::Zero;
use serde::Serialize;

use crate::linalg::{frac, int, Scalar};

use super::format_combination;

#[derive(Clone, Debug, PartialEq)]
pub struct G3RootData {
    pub labels: Vec<String>,
    /// `(α_i | α_j)`.
    pub gram: Vec<Vec<Scalar>>,
    pub positive_even: Vec<Vec<Scalar>>,
    pub positive_odd: Vec<Vec<Scalar>>,
    /// Indecomposable positive roots.
    pub simple: Vec<Vec<Scalar>>,
    /// Weights of the 7-dimensional `G_2`-module `V`.
    pub weights_v: Vec<Vec<Scalar>>,
    /// Weights of the standard `sl_2`-module `V_1`.
    pub weights_v1: Vec<Vec<Scalar>>,
    pub theta2: Vec<Scalar>,
}

fn v(a0: Scalar, a1: i64, a2: i64) -> Vec<Scalar> {
    vec![a0, int(a1), int(a2)]
}

pub fn g3_root_data() -> G3RootData {
    let half = frac(1, 2);
    let z = Scalar::zero;
    let gram = vec![
        vec![frac(-8, 3), z(), z()],
        vec![z(), int(2), int(-1)],
        vec![z(), int(-1), frac(2, 3)],
    ];
    let g2_positive = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)];
    let mut positive_even = vec![v(int(1), 0, 0)];
    positive_even.extend(g2_positive.iter().map(|&(a, b)| v(z(), a, b)));
    let weights_v: Vec<Vec<Scalar>> = [(1, 2), (1, 1), (0, 1), (0, 0), (0, -1), (-1, -1), (-1, -2)]
        .iter()
        .map(|&(a, b)| v(z(), a, b))
        .collect();
    // Odd positive roots: ½α0 + (weights of V).
    let positive_odd: Vec<Vec<Scalar>> = weights_v
        .iter()
        .map(|w| vec![half.clone(), w[1].clone(), w[2].clone()])
        .collect();
    let weights_v1 = vec![v(half.clone(), 0, 0), v(-half, 0, 0)];
    let mut data = G3RootData {
        labels: vec!["alpha0".into(), "alpha1".into(), "alpha2".into()],
        gram,
        positive_even,
        positive_odd,
        simple: Vec::new(),
        weights_v,
        weights_v1,
        theta2: v(z(), 2, 3),
    };
    data.simple = data.indecomposable();
    data
}

impl G3RootData {
    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (xi, row) in x.iter().zip(&self.gram) {
            for (g, yj) in row.iter().zip(y) {
                acc += xi * g * yj;
            }
        }
        acc
    }

    pub fn positive(&self) -> Vec<Vec<Scalar>> {
        self.positive_even
            .iter()
            .chain(&self.positive_odd)
            .cloned()
            .collect()
    }

    /// Positive roots that are not a sum of two positive roots.
    pub fn indecomposable(&self) -> Vec<Vec<Scalar>> {
        let pos = self.positive();
        pos.iter()
            .filter(|r| {
                !pos.iter().any(|a| {
                    let rest: Vec<Scalar> = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                    pos.contains(&rest)
                })
            })
            .cloned()
            .collect()
    }

    pub fn format(&self, x: &[Scalar]) -> String {
        format_combination(x, &self.labels)
    }

    pub fn to_json(&self) -> G3Json {
        let f = |xs: &[Vec<Scalar>]| xs.iter().map(|x| self.format(x)).collect();
        G3Json {
            labels: self.labels.clone(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
            positive_even: f(&self.positive_even),
            positive_odd: f(&self.positive_odd),
            simple: f(&self.simple),
            weights_v: f(&self.weights_v),
            weights_v1: f(&self.weights_v1),
            theta2: self.format(&self.theta2),
            theta2_norm: self.inner(&self.theta2, &self.theta2).to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct G3Json {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub positive_even: Vec<String>,
    pub positive_odd: Vec<String>,
    pub simple: Vec<String>,
    pub weights_v: Vec<String>,
    pub weights_v1: Vec<String>,
    pub theta2: String,
    pub theta2_norm: String,
}
