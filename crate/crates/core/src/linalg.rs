//! Exact rational scalars and sparse row reduction.
//!
//! Every quantity in the crate is a [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms. Spans are stored as [`Subspace`]s in
//! reduced row-echelon form with the smallest available column as pivot,
//! which makes them canonical: two subspaces are equal iff their row lists
//! are equal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};

/// Exact rational number. Its `Display` form is `p/q`, or `p` when `q = 1`.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| Error::ParseScalar(s.to_string()))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| Error::ParseScalar(s.to_string()))?;
            if q.is_zero() {
                return Err(Error::ParseScalar(s.to_string()));
            }
            Scalar::new(p, q)
        }
        None => Scalar::from_integer(
            BigInt::from_str(t).map_err(|_| Error::ParseScalar(s.to_string()))?,
        ),
    };
    Ok(parsed)
}

pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// Serde adapter writing scalars as `"p/q"` strings.
pub mod scalar_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let raw = String::deserialize(d)?;
        parse_scalar(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Scalar>`.
pub mod scalar_vec_str {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Scalar>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|r| parse_scalar(r).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Sparse vector over a fixed ordered basis of size `dim`.
///
/// Entries are sorted by index and never hold an explicit zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        assert!(index < dim, "unit index {index} out of range for dim {dim}");
        SparseVec {
            dim,
            entries: vec![(index, Scalar::one())],
        }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing repeats.
    pub fn from_entries<I>(dim: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in entries {
            assert!(i < dim, "index {i} out of range for dim {dim}");
            if x.is_zero() {
                continue;
            }
            *acc.entry(i).or_insert_with(Scalar::zero) += x;
        }
        Self::from_map(dim, acc)
    }

    fn from_map(dim: usize, acc: BTreeMap<usize, Scalar>) -> Self {
        SparseVec {
            dim,
            entries: acc.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn from_dense(xs: &[Scalar]) -> Self {
        SparseVec {
            dim: xs.len(),
            entries: xs
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Scalar {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add_scaled");
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + y * c;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec {
            dim: self.dim,
            entries: out,
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&-Scalar::one(), other)
    }

    /// Re-embeds the vector in a space of different dimension via an index map.
    pub fn remap(&self, dim: usize, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(dim, self.iter().map(|(i, x)| (f(i), x.clone())))
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (i, x)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{x}")?;
        }
        write!(f, "]")
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Row space in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    rows: Vec<SparseVec>,
    /// Pivot column to row index.
    lookup: HashMap<usize, usize>,
}

impl Subspace {
    fn from_rref(dim: usize, rows: Vec<SparseVec>) -> Self {
        let lookup = rows
            .iter()
            .enumerate()
            .map(|(r, v)| (v.leading().expect("echelon rows are nonzero").0, r))
            .collect();
        Subspace { dim, rows, lookup }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_rref(dim, Vec::new())
    }

    /// Direct sum of reduced subspaces supported on pairwise disjoint
    /// coordinate sets.
    pub fn from_disjoint_blocks(dim: usize, blocks: Vec<Subspace>) -> Self {
        let mut rows: Vec<SparseVec> = blocks
            .into_iter()
            .flat_map(|b| {
                assert_eq!(b.dim, dim);
                b.rows
            })
            .collect();
        rows.sort_by_key(|r| r.leading().unwrap().0);
        let s = Self::from_rref(dim, rows);
        debug_assert_eq!(s.lookup.len(), s.rows.len(), "blocks overlap");
        s
    }

    pub fn full(dim: usize) -> Self {
        Self::from_rref(dim, (0..dim).map(|i| SparseVec::unit(dim, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows
            .iter()
            .map(|r| r.leading().expect("echelon rows are nonzero").0)
    }

    /// Canonical representative of `v` modulo the subspace: all pivot
    /// coordinates are cleared.
    pub fn reduce(&self, v: &SparseVec) -> Result<SparseVec> {
        check_dim(self.dim, v.dim())?;
        if self.rows.is_empty() || v.is_zero() {
            return Ok(v.clone());
        }
        Ok(reduce_against_rref(&self.rows, &self.lookup, v))
    }

    /// Columns that are not pivots, in increasing order. They index a basis
    /// of the quotient of the ambient space by this subspace.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for p in self.pivots() {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|c| !is_pivot[*c]).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for r in &self.rows {
            if !contains(other, r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.dim, other.dim)?;
        echelonize_in(self.dim, self.rows.iter().chain(other.rows.iter()).cloned())
    }
}

fn reduce_against_rref(
    rows: &[SparseVec],
    lookup: &HashMap<usize, usize>,
    v: &SparseVec,
) -> SparseVec {
    // Rows have zeros at every other pivot column, so one pass suffices.
    let mut acc: BTreeMap<usize, Scalar> = v.iter().map(|(i, x)| (i, x.clone())).collect();
    for (col, x) in v.iter() {
        if let Some(&r) = lookup.get(&col) {
            let c = x.clone();
            for (j, y) in rows[r].iter() {
                let e = acc.entry(j).or_insert_with(Scalar::zero);
                *e -= &c * y;
            }
        }
    }
    SparseVec::from_map(v.dim(), acc)
}

/// Incremental row reduction. Rows are kept in semi-echelon form (distinct
/// leading columns, leading coefficient one); [`EchelonBuilder::finish`]
/// back-substitutes to the canonical reduced form.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl EchelonBuilder {
    pub fn new(dim: usize) -> Self {
        EchelonBuilder {
            dim,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    /// Starts from an existing subspace.
    pub fn from_subspace(s: &Subspace) -> Self {
        let mut b = EchelonBuilder::new(s.dim);
        for r in &s.rows {
            let lead = r.leading().unwrap().0;
            b.pivot_row.insert(lead, b.rows.len());
            b.rows.push(r.clone());
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Fully eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &SparseVec) -> Result<SparseVec> {
        check_dim(self.dim, v.dim())?;
        if self.rows.is_empty() || v.is_zero() {
            return Ok(v.clone());
        }
        let mut acc: BTreeMap<usize, Scalar> = v.iter().map(|(i, x)| (i, x.clone())).collect();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).next().map(|(c, _)| *c);
            let Some(col) = next else { break };
            cursor = col + 1;
            if let Some(&r) = self.pivot_row.get(&col) {
                let c = acc.remove(&col).unwrap();
                // Row entries beyond the pivot all sit at columns > col.
                for (j, y) in self.rows[r].iter().skip(1) {
                    let e = acc.entry(j).or_insert_with(Scalar::zero);
                    *e -= &c * y;
                    if e.is_zero() {
                        acc.remove(&j);
                    }
                }
            }
        }
        Ok(SparseVec::from_map(self.dim, acc))
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Adds `v` to the span. Returns the new normalized row when `v` was
    /// independent of the rows so far.
    pub fn insert(&mut self, v: &SparseVec) -> Result<Option<&SparseVec>> {
        let r = self.reduce(v)?;
        let Some((lead, c)) = r.leading() else {
            return Ok(None);
        };
        let inv = c.recip();
        let row = r.scaled(&inv);
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        Ok(self.rows.last())
    }

    /// Adds all of `vs` to the span.
    ///
    /// Candidates are screened modulo a prime: only those independent there
    /// are eliminated exactly. Each remaining candidate is then reduced
    /// against the exact reduced form and inserted if anything survives, so
    /// the result does not depend on the prime being lucky.
    pub fn insert_many(&mut self, vs: &[SparseVec]) -> Result<()> {
        for v in vs {
            check_dim(self.dim, v.dim())?;
        }
        let mut screen = ModPEchelon::default();
        let mut screened = true;
        for r in &self.rows {
            screened &= screen.insert(r).is_some();
        }
        let mut rest = Vec::new();
        for v in vs {
            if !screened {
                self.insert(v)?;
                continue;
            }
            match screen.insert(v) {
                Some(true) => {
                    self.insert(v)?;
                }
                Some(false) => rest.push(v),
                None => {
                    screened = false;
                    self.insert(v)?;
                }
            }
        }
        if rest.is_empty() {
            return Ok(());
        }
        let mut rref = self.clone().finish();
        for v in rest {
            if !rref.reduce(v)?.is_zero() {
                self.insert(v)?;
                rref = self.clone().finish();
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().unwrap().0);
        let lookup: HashMap<usize, usize> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.leading().unwrap().0, i))
            .collect();
        // Back-substitute from the bottom so every used row is already reduced.
        for i in (0..rows.len()).rev() {
            let targets: Vec<(usize, Scalar)> = rows[i]
                .iter()
                .skip(1)
                .filter_map(|(c, x)| lookup.get(&c).map(|&r| (r, x.clone())))
                .collect();
            if targets.is_empty() {
                continue;
            }
            let mut acc: BTreeMap<usize, Scalar> =
                rows[i].iter().map(|(c, x)| (c, x.clone())).collect();
            for (r, x) in targets {
                for (j, y) in rows[r].iter() {
                    let e = acc.entry(j).or_insert_with(Scalar::zero);
                    *e -= &x * y;
                }
            }
            rows[i] = SparseVec::from_map(self.dim, acc);
        }
        Subspace::from_rref(self.dim, rows)
    }
}

fn echelonize_in<I>(dim: usize, rows: I) -> Result<Subspace>
where
    I: IntoIterator<Item = SparseVec>,
{
    let mut b = EchelonBuilder::new(dim);
    for r in rows {
        b.insert(&r)?;
    }
    Ok(b.finish())
}

/// Reduced row-echelon basis of the span of `rows`.
///
/// An empty input has no ambient dimension to report, so it yields the zero
/// subspace of dimension 0; use [`echelonize_dim`] when the dimension matters.
pub fn echelonize(rows: &[SparseVec]) -> Result<Subspace> {
    let dim = rows.first().map_or(0, |r| r.dim());
    echelonize_dim(dim, rows)
}

pub fn echelonize_dim(dim: usize, rows: &[SparseVec]) -> Result<Subspace> {
    for r in rows {
        check_dim(dim, r.dim())?;
    }
    echelonize_in(dim, rows.iter().cloned())
}

pub fn contains(s: &Subspace, v: &SparseVec) -> Result<bool> {
    Ok(s.reduce(v)?.is_zero())
}

pub fn quotient_dim(ambient_dim: usize, s: &Subspace) -> Result<usize> {
    check_dim(ambient_dim, s.dim())?;
    Ok(ambient_dim - s.rank())
}

/// Basis of the kernel of the map sending the `i`-th basis vector of a
/// `images.len()`-dimensional space to `images[i]`.
pub fn kernel(images: &[SparseVec], target_dim: usize) -> Result<Vec<SparseVec>> {
    let n = images.len();
    let mut b = EchelonBuilder::new(target_dim + n);
    for (i, img) in images.iter().enumerate() {
        check_dim(target_dim, img.dim())?;
        let aug = SparseVec::from_entries(
            target_dim + n,
            img.iter()
                .map(|(j, x)| (j, x.clone()))
                .chain(std::iter::once((target_dim + i, Scalar::one()))),
        );
        b.insert(&aug)?;
    }
    // Rows leading in the identity block have zero image part and number
    // n - rank, so they span the kernel without full back-substitution.
    let raw: Vec<SparseVec> = b
        .rows()
        .iter()
        .filter(|r| r.leading().unwrap().0 >= target_dim)
        .map(|r| r.remap(n, |j| j - target_dim))
        .collect();
    Ok(echelonize_in(n, raw)?.rows)
}

/// The prime `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Image of a rational in `F_p`, `None` when `p` divides the denominator.
pub fn reduce_mod_p(x: &Scalar) -> Option<u64> {
    let p = BigInt::from(MODULUS);
    let residue = |z: &BigInt| -> u64 {
        let r = ((z % &p) + &p) % &p;
        r.try_into().expect("residue fits in u64")
    };
    let d = residue(x.denom());
    if d == 0 {
        return None;
    }
    Some(mul_mod(residue(x.numer()), pow_mod(d, MODULUS - 2)))
}

/// Semi-echelon rows over `F_p`, `p = 2^61 - 1`.
#[derive(Default)]
struct ModPEchelon {
    rows: Vec<BTreeMap<usize, u64>>,
    pivot_row: HashMap<usize, usize>,
}

impl ModPEchelon {
    /// `Some(true)` if `v` was independent, `Some(false)` if dependent, and
    /// `None` if `v` has no image in `F_p`.
    fn insert(&mut self, v: &SparseVec) -> Option<bool> {
        let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
        for (j, x) in v.iter() {
            let r = reduce_mod_p(x)?;
            if r != 0 {
                acc.insert(j, r);
            }
        }
        let mut cursor = 0usize;
        while let Some((&col, &c)) = acc.range(cursor..).next() {
            cursor = col + 1;
            if let Some(&r) = self.pivot_row.get(&col) {
                acc.remove(&col);
                for (&j, &y) in self.rows[r].range(col + 1..) {
                    let e = acc.entry(j).or_insert(0);
                    *e = (*e + MODULUS - mul_mod(c, y)) % MODULUS;
                    if *e == 0 {
                        acc.remove(&j);
                    }
                }
            }
        }
        let Some((&lead, &c)) = acc.iter().next() else {
            return Some(false);
        };
        let inv = pow_mod(c, MODULUS - 2);
        for x in acc.values_mut() {
            *x = mul_mod(*x, inv);
        }
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(acc);
        Some(true)
    }
}

/// Rank of the rows over `F_p` with `p = 2^61 - 1`; `None` when some entry
/// has a denominator divisible by `p`. Never exceeds the rank over `ℚ`.
pub fn rank_mod_p(rows: &[SparseVec]) -> Option<usize> {
    let mut cols: HashMap<usize, usize> = HashMap::new();
    for r in rows {
        for (j, _) in r.iter() {
            let next = cols.len();
            cols.entry(j).or_insert(next);
        }
    }
    let width = cols.len();
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
    for r in rows {
        let mut dense = vec![0u64; width];
        for (j, x) in r.iter() {
            dense[cols[&j]] = reduce_mod_p(x)?;
        }
        m.push(dense);
    }
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][c], MODULUS - 2);
        for i in rank + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let f = mul_mod(m[i][c], inv);
            let (top, bottom) = m.split_at_mut(i);
            for (x, &y) in bottom[0][c..width].iter_mut().zip(&top[rank][c..width]) {
                *x = (*x + MODULUS - mul_mod(f, y)) % MODULUS;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Expresses vectors in terms of a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinates {
    dim: usize,
    count: usize,
    reduced: Subspace,
}

impl Coordinates {
    pub fn new(basis: &[SparseVec]) -> Result<Self> {
        let dim = basis.first().map_or(0, |v| v.dim());
        let count = basis.len();
        let mut b = EchelonBuilder::new(dim + count);
        for (i, v) in basis.iter().enumerate() {
            check_dim(dim, v.dim())?;
            let aug = SparseVec::from_entries(
                dim + count,
                v.iter()
                    .map(|(j, x)| (j, x.clone()))
                    .chain(std::iter::once((dim + i, Scalar::one()))),
            );
            b.insert(&aug)?;
        }
        let reduced = b.finish();
        if reduced.pivots().any(|p| p >= dim) {
            return Err(Error::InvalidArgument(
                "coordinate family is linearly dependent".into(),
            ));
        }
        Ok(Coordinates {
            dim,
            count,
            reduced,
        })
    }

    /// Coefficients `c` with `v = Σ c_i basis_i`, or `None` when `v` is not in the span.
    pub fn express(&self, v: &SparseVec) -> Result<Option<SparseVec>> {
        check_dim(self.dim, v.dim())?;
        let aug = v.remap(self.dim + self.count, |j| j);
        let r = self.reduced.reduce(&aug)?;
        if r.iter().any(|(j, _)| j < self.dim) {
            return Ok(None);
        }
        Ok(Some(
            r.remap(self.count, |j| j - self.dim)
                .scaled(&-Scalar::one()),
        ))
    }
}

/// Inverse of a square dense matrix, `None` when singular.
pub fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                    *x -= &c * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn dense_rank(m: &[Vec<Scalar>]) -> usize {
    let rows: Vec<SparseVec> = m.iter().map(|r| SparseVec::from_dense(r)).collect();
    let dim = m.first().map_or(0, |r| r.len());
    echelonize_dim(dim, &rows).map(|s| s.rank()).unwrap_or(0)
}

/// Generalized binomial coefficient `C(p, i)` for any integer `p`.
pub fn binomial(p: i64, i: u32) -> Scalar {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i as i64 {
        num *= BigInt::from(p - j);
        den *= BigInt::from(j + 1);
    }
    Scalar::new(num, den)
}

pub fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}
