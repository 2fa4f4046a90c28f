use num_traits::{One, Zero};

use crate::liesuper::Parity;
use crate::linalg::{Scalar, SparseVec};

/// Square supermatrix acting on a superspace of dimension `(m|n)`.
///
/// Rows and columns `0..m` are even, `m..m+n` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    even: usize,
    odd: usize,
    entries: Vec<Scalar>,
}

impl SuperMatrix {
    pub fn zero(even: usize, odd: usize) -> Self {
        let n = even + odd;
        SuperMatrix {
            even,
            odd,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(even: usize, odd: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(even, odd);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn from_entries(even: usize, odd: usize, entries: &[(usize, usize, Scalar)]) -> Self {
        let mut m = Self::zero(even, odd);
        for (i, j, x) in entries {
            let cur = m.get(*i, *j).clone();
            m.set(*i, *j, cur + x);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.even + self.odd
    }

    pub fn blocks(&self) -> (usize, usize) {
        (self.even, self.odd)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.size() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        let n = self.size();
        self.entries[i * n + j] = x;
    }

    fn index_parity(&self, i: usize) -> Parity {
        if i < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of a nonzero homogeneous matrix; `None` if zero or mixed.
    pub fn parity(&self) -> Option<Parity> {
        let n = self.size();
        let mut found: Option<Parity> = None;
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j).is_zero() {
                    continue;
                }
                let p = self.index_parity(i).sum(self.index_parity(j));
                match found {
                    None => found = Some(p),
                    Some(q) if q == p => {}
                    Some(_) => return None,
                }
            }
        }
        found
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let n = self.size();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (k / n, k % n, x))
    }

    pub fn mul(&self, other: &SuperMatrix) -> SuperMatrix {
        assert_eq!(self.blocks(), other.blocks());
        let n = self.size();
        let mut out = SuperMatrix::zero(self.even, self.odd);
        for (i, k, a) in self.nonzero_entries() {
            for j in 0..n {
                let b = other.get(k, j);
                if !b.is_zero() {
                    let cur = &out.entries[i * n + j] + a * b;
                    out.entries[i * n + j] = cur;
                }
            }
        }
        out
    }

    pub fn add_scaled(&self, c: &Scalar, other: &SuperMatrix) -> SuperMatrix {
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x += c * y;
        }
        out
    }

    /// Supercommutator `XY - (-1)^{[X][Y]} YX` of homogeneous matrices.
    pub fn supercommutator(&self, other: &SuperMatrix) -> SuperMatrix {
        let p = self.parity().unwrap_or(Parity::Even);
        let q = other.parity().unwrap_or(Parity::Even);
        let sign = -p.koszul(q);
        self.mul(other).add_scaled(&sign, &other.mul(self))
    }

    /// `Str = tr(A) - tr(D)`.
    pub fn supertrace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.size() {
            if i < self.even {
                acc += self.get(i, i);
            } else {
                acc -= self.get(i, i);
            }
        }
        acc
    }

    pub fn flatten(&self) -> SparseVec {
        SparseVec::from_dense(&self.entries)
    }

    pub fn is_diagonal(&self) -> bool {
        self.nonzero_entries().all(|(i, j, _)| i == j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn odd_units_anticommute_to_diagonal() {
        let e = SuperMatrix::unit(1, 2, 0, 1);
        let f = SuperMatrix::unit(1, 2, 1, 0);
        assert_eq!(e.parity(), Some(Parity::Odd));
        let h = e.supercommutator(&f);
        assert_eq!(
            h,
            SuperMatrix::from_entries(1, 2, &[(0, 0, int(1)), (1, 1, int(1))])
        );
        assert_eq!(h.supertrace(), int(0));
    }

    #[test]
    fn mixed_matrix_has_no_parity() {
        let m = SuperMatrix::unit(1, 1, 0, 0).add_scaled(&int(1), &SuperMatrix::unit(1, 1, 0, 1));
        assert_eq!(m.parity(), None);
        assert_eq!(SuperMatrix::zero(1, 1).parity(), None);
    }
}
