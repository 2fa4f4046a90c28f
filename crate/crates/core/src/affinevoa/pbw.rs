//! PBW monomials in negative affine modes.

use std::collections::HashMap;
use std::fmt;

use crate::liesuper::Parity;
use crate::linalg::Scalar;

/// The mode `x(n)` of basis generator `gen`.
///
/// The derived order (mode number first, then generator) is the PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub n: i32,
    pub gen: u16,
}

impl Mode {
    pub fn new(gen: usize, n: i32) -> Self {
        Mode { n, gen: gen as u16 }
    }
}

/// A PBW monomial `x1(n1)…xr(nr)1`, sorted ascending, every `n < 0`, odd
/// modes at most once.
pub type Monomial = Vec<Mode>;

/// Linear combination of monomials.
pub type Combo = HashMap<Monomial, Scalar>;

pub fn weight(m: &[Mode]) -> i64 {
    m.iter().map(|x| -(x.n as i64)).sum()
}

pub fn parity(m: &[Mode], parities: &[Parity]) -> Parity {
    m.iter()
        .fold(Parity::Even, |p, x| p.sum(parities[x.gen as usize]))
}

pub fn is_canonical(m: &[Mode], parities: &[Parity]) -> bool {
    m.iter().all(|x| x.n < 0)
        && m.windows(2)
            .all(|w| w[0] < w[1] || (w[0] == w[1] && !parities[w[0].gen as usize].is_odd()))
}

pub fn add_term(c: &mut Combo, m: Monomial, x: Scalar) {
    use std::collections::hash_map::Entry;
    match c.entry(m) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if num_traits::Zero::is_zero(e.get()) {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if !num_traits::Zero::is_zero(&x) {
                e.insert(x);
            }
        }
    }
}

pub fn add_scaled_combo(acc: &mut Combo, c: &Scalar, other: &Combo) {
    for (m, x) in other {
        add_term(acc, m.clone(), c * x);
    }
}

/// All monomials of weight `m`, in lexicographic order of their mode sequences.
pub fn enumerate_grade(parities: &[Parity], m: usize) -> Vec<Monomial> {
    let d = parities.len();
    let slots: Vec<Mode> = (1..=m as i32)
        .rev()
        .flat_map(|w| (0..d).map(move |g| Mode::new(g, -w)))
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        slots: &[Mode],
        parities: &[Parity],
        start: usize,
        remaining: i64,
        cur: &mut Vec<Mode>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..slots.len() {
            let s = slots[i];
            if -(s.n as i64) > remaining {
                continue;
            }
            cur.push(s);
            let next = if parities[s.gen as usize].is_odd() {
                i + 1
            } else {
                i
            };
            rec(slots, parities, next, remaining + s.n as i64, cur, out);
            cur.pop();
        }
    }
    rec(&slots, parities, 0, m as i64, &mut cur, &mut out);
    out
}

/// Renders a monomial with generator labels, e.g. `e[eps1](-1)^2 h1(-2) 1`.
pub struct MonomialDisplay<'a> {
    pub monomial: &'a [Mode],
    pub labels: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let m = self.monomial;
        while i < m.len() {
            let mut j = i;
            while j < m.len() && m[j] == m[i] {
                j += 1;
            }
            write!(f, "{}({})", self.labels[m[i].gen as usize], m[i].n)?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            f.write_str(" ")?;
            i = j;
        }
        f.write_str("1")
    }
}
