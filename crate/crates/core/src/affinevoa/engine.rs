//! Exact action of affine modes and vertex-operator coefficients on the
//! (untruncated) vacuum module, in the PBW basis.

use std::collections::HashMap;
use std::hash::{BuildHasher, Hash};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::liesuper::{LieSuperalgebra, Parity};
use crate::linalg::{binomial, frac, sign, Scalar};

use super::pbw::{self, add_scaled_combo, add_term, Combo, Mode, Monomial};

type Terms = Arc<Vec<(Monomial, Scalar)>>;

const SHARDS: usize = 64;

/// A concurrent memo table split into independently locked shards.
struct Memo<K> {
    shards: Vec<Mutex<HashMap<K, Terms>>>,
    hasher: std::collections::hash_map::RandomState,
}

impl<K: Hash + Eq> Memo<K> {
    fn new() -> Self {
        Memo {
            shards: (0..SHARDS).map(|_| Mutex::new(HashMap::new())).collect(),
            hasher: Default::default(),
        }
    }

    fn shard(&self, key: &K) -> &Mutex<HashMap<K, Terms>> {
        &self.shards[(self.hasher.hash_one(key) as usize) % SHARDS]
    }

    fn get(&self, key: &K) -> Option<Terms> {
        self.shard(key).lock().unwrap().get(key).cloned()
    }

    fn insert(&self, key: K, value: Terms) {
        self.shard(&key).lock().unwrap().insert(key, value);
    }

    fn len(&self) -> usize {
        self.shards.iter().map(|s| s.lock().unwrap().len()).sum()
    }
}

/// Mode calculus of `V^k(g)`: `[x(m), y(n)] = [x,y](m+n) + m(x|y)δ_{m+n,0}k`.
pub struct ModeEngine {
    algebra: Arc<LieSuperalgebra>,
    k: Scalar,
    parities: Vec<Parity>,
    /// Sparse brackets `[x_i, x_j]` as `(index, coefficient)` lists.
    brackets: Vec<Vec<Vec<(u16, Scalar)>>>,
    apply_memo: Memo<(u16, i32, Monomial)>,
    field_memo: Memo<(Monomial, i32, Monomial)>,
}

impl ModeEngine {
    pub fn new(algebra: Arc<LieSuperalgebra>, k: Scalar) -> Self {
        let d = algebra.dim();
        assert!(d <= u16::MAX as usize);
        let brackets = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        algebra
                            .basis_bracket(i, j)
                            .iter()
                            .map(|(c, x)| (c as u16, x.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ModeEngine {
            parities: algebra.parities().to_vec(),
            algebra,
            k,
            brackets,
            apply_memo: Memo::new(),
            field_memo: Memo::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<LieSuperalgebra> {
        &self.algebra
    }

    pub fn level(&self) -> &Scalar {
        &self.k
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.apply_memo.len(), self.field_memo.len())
    }

    fn odd(&self, g: u16) -> bool {
        self.parities[g as usize].is_odd()
    }

    fn mono_odd(&self, m: &[Mode]) -> bool {
        m.iter().filter(|x| self.odd(x.gen)).count() % 2 == 1
    }

    /// Reorders `x(n)` past `y(p)`: returns the Koszul sign of the swap. The
    /// bracket and central terms are produced by the caller from the same
    /// table; this is the only place a sign enters the mode calculus.
    fn swap_sign(&self, x: u16, y: u16) -> Scalar {
        sign(self.odd(x) && self.odd(y))
    }

    /// `x(n)` applied to a PBW monomial.
    pub fn apply(&self, x: u16, n: i32, mono: &[Mode]) -> Terms {
        if n > 0 && n as i64 > pbw::weight(mono) {
            return Arc::new(Vec::new());
        }
        if mono.is_empty() {
            return Arc::new(if n < 0 {
                vec![(vec![Mode { n, gen: x }], Scalar::one())]
            } else {
                Vec::new()
            });
        }
        let key = (x, n, mono.to_vec());
        if let Some(t) = self.apply_memo.get(&key) {
            return t;
        }
        let mut out = Combo::new();
        self.apply_into(x, n, mono, &Scalar::one(), &mut out);
        let terms: Terms = Arc::new(out.into_iter().collect());
        self.apply_memo.insert(key, terms.clone());
        terms
    }

    fn apply_into(&self, x: u16, n: i32, mono: &[Mode], c: &Scalar, out: &mut Combo) {
        let me = Mode { n, gen: x };
        let first = mono[0];
        let rest = &mono[1..];
        if n < 0 && me <= first {
            if me < first || !self.odd(x) {
                let mut m = Vec::with_capacity(mono.len() + 1);
                m.push(me);
                m.extend_from_slice(mono);
                add_term(out, m, c.clone());
            } else {
                // x(n)^2 = ½[x,x](2n) for odd x and n < 0.
                let half = c * frac(1, 2);
                for (z, b) in &self.brackets[x as usize][x as usize] {
                    self.add_applied(*z, 2 * n, rest, &(&half * b), out);
                }
            }
            return;
        }
        let y = first.gen;
        let p = first.n;
        // (-1)^{[x][y]} y(p) (x(n) rest)
        let s = self.swap_sign(x, y);
        let inner = self.apply(x, n, rest);
        let cs = c * &s;
        for (m, a) in inner.iter() {
            self.add_applied(y, p, m, &(&cs * a), out);
        }
        // [x,y](n+p) rest
        for (z, b) in &self.brackets[x as usize][y as usize] {
            self.add_applied(*z, n + p, rest, &(c * b), out);
        }
        // n (x|y) k δ_{n+p,0} rest
        if n + p == 0 {
            let f = self.algebra.basis_form(x as usize, y as usize);
            if !f.is_zero() {
                add_term(
                    out,
                    rest.to_vec(),
                    c * f * &self.k * Scalar::from_integer(n.into()),
                );
            }
        }
    }

    fn add_applied(&self, x: u16, n: i32, mono: &[Mode], c: &Scalar, out: &mut Combo) {
        for (m, a) in self.apply(x, n, mono).iter() {
            add_term(out, m.clone(), c * a);
        }
    }

    pub fn apply_combo(&self, x: u16, n: i32, v: &Combo) -> Combo {
        let mut out = Combo::new();
        for (m, c) in v {
            self.add_applied(x, n, m, c, &mut out);
        }
        out
    }

    /// `u_n v` for PBW monomials `u`, `v`, via the iterate formula
    /// `(a_p b)_n = Σ_i (-1)^i C(p,i) (a_{p-i} b_{n+i} - (-1)^{p+[a][b]} b_{p+n-i} a_i)`
    /// with `a = x(-1)1`, `b = w`, `u = x(p)w`.
    pub fn field(&self, u: &[Mode], n: i32, v: &[Mode]) -> Terms {
        let wu = pbw::weight(u);
        let wv = pbw::weight(v);
        if n as i64 >= wu + wv {
            return Arc::new(Vec::new());
        }
        if u.is_empty() {
            return Arc::new(if n == -1 {
                vec![(v.to_vec(), Scalar::one())]
            } else {
                Vec::new()
            });
        }
        let key = (u.to_vec(), n, v.to_vec());
        if let Some(t) = self.field_memo.get(&key) {
            return t;
        }
        let x = u[0].gen;
        let p = u[0].n;
        let w = &u[1..];
        let ww = pbw::weight(w);
        let vcombo: Combo = std::iter::once((v.to_vec(), Scalar::one())).collect();
        let mut out = Combo::new();
        // Σ_i (-1)^i C(p,i) x(p-i) (w_{n+i} v); w_{n+i} v = 0 once n+i ≥ wt w + wt v.
        let mut i: i64 = 0;
        while (n as i64) + i < ww + wv {
            let coef = sign(i % 2 == 1) * binomial(p as i64, i as u32);
            if !coef.is_zero() {
                let inner = self.field(w, n + i as i32, v);
                for (m, a) in inner.iter() {
                    self.add_applied(x, p - i as i32, m, &(&coef * a), &mut out);
                }
            }
            i += 1;
        }
        // -Σ_i (-1)^i C(p,i) (-1)^{p+[x][w]} w_{p+n-i} (x(i) v); x(i)v = 0 once i > wt v.
        let s = -sign(p % 2 != 0) * sign(self.odd(x) && self.mono_odd(w));
        for i in 0..=wv {
            let coef = &s * sign(i % 2 == 1) * binomial(p as i64, i as u32);
            if coef.is_zero() {
                continue;
            }
            let xv = self.apply_combo(x, i as i32, &vcombo);
            for (m, a) in &xv {
                for (r, b) in self.field(w, p + n - i as i32, m).iter() {
                    add_term(&mut out, r.clone(), &coef * a * b);
                }
            }
        }
        let terms: Terms = Arc::new(out.into_iter().collect());
        self.field_memo.insert(key, terms.clone());
        terms
    }

    /// `u_n v` for combinations.
    pub fn field_combo(&self, u: &Combo, n: i32, v: &Combo) -> Combo {
        let mut out = Combo::new();
        for (a, x) in u {
            for (b, y) in v {
                let t: Combo = self.field(a, n, b).iter().cloned().collect();
                add_scaled_combo(&mut out, &(x * y), &t);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::realizations::{make_osp1_2n, make_sl1n};

    fn single(m: Monomial) -> Combo {
        std::iter::once((m, Scalar::one())).collect()
    }

    #[test]
    fn positive_mode_on_generator_gives_form() {
        let g = make_sl1n(2).unwrap();
        let eng = ModeEngine::new(g.algebra.clone(), int(3));
        let d = g.algebra.dim();
        for x in 0..d {
            for y in 0..d {
                let r: Combo = eng
                    .apply(x as u16, 1, &[Mode::new(y, -1)])
                    .iter()
                    .cloned()
                    .collect();
                let f = g.algebra.basis_form(x, y) * int(3);
                let expect = if f.is_zero() {
                    Combo::new()
                } else {
                    single(vec![]).into_keys().map(|m| (m, f.clone()))
                        .collect()
                };
                assert_eq!(r, expect);
            }
        }
    }

    #[test]
    fn zero_mode_annihilates_vacuum() {
        let g = make_sl1n(2).unwrap();
        let eng = ModeEngine::new(g.algebra.clone(), int(1));
        for x in 0..g.algebra.dim() {
            assert!(eng.apply(x as u16, 0, &[]).is_empty());
        }
    }

    #[test]
    fn odd_square() {
        let g = make_osp1_2n(1).unwrap();
        let eng = ModeEngine::new(g.algebra.clone(), int(1));
        let a = g.algebra.index_of("e[eps1]").unwrap();
        let r: Combo = eng
            .apply(a as u16, -1, &[Mode::new(a, -1)])
            .iter()
            .cloned()
            .collect();
        let aa = g
            .algebra
            .bracket(&g.algebra.basis_vector(a), &g.algebra.basis_vector(a))
            .unwrap();
        let mut expect = Combo::new();
        for (z, c) in aa.iter() {
            add_term(&mut expect, vec![Mode::new(z, -2)], c * frac(1, 2));
        }
        assert!(!expect.is_empty());
        assert_eq!(r, expect);
    }

    /// `[x(m), y(n)]` acting on random-ish monomials agrees with the bracket.
    #[test]
    fn commutator_on_monomials() {
        let g = make_osp1_2n(1).unwrap();
        let k = int(2);
        let eng = ModeEngine::new(g.algebra.clone(), k.clone());
        let d = g.algebra.dim();
        let p = g.algebra.parities().to_vec();
        let targets: Vec<Monomial> = (0..=3)
            .flat_map(|m| pbw::enumerate_grade(&p, m))
            .step_by(7)
            .collect();
        for x in 0..d {
            for y in 0..d {
                for m in -2..=2 {
                    for n in -2..=2 {
                        for t in &targets {
                            let v = single(t.clone());
                            let xy =
                                eng.apply_combo(x as u16, m, &eng.apply_combo(y as u16, n, &v));
                            let yx =
                                eng.apply_combo(y as u16, n, &eng.apply_combo(x as u16, m, &v));
                            let mut lhs = xy;
                            add_scaled_combo(&mut lhs, &-eng.swap_sign(x as u16, y as u16), &yx);
                            let mut rhs = Combo::new();
                            for (z, c) in &eng.brackets[x][y] {
                                add_scaled_combo(&mut rhs, c, &eng.apply_combo(*z, m + n, &v));
                            }
                            if m + n == 0 {
                                let f = g.algebra.basis_form(x, y) * &k * int(m as i64);
                                add_scaled_combo(&mut rhs, &f, &v);
                            }
                            assert_eq!(lhs, rhs, "x={x} y={y} m={m} n={n} t={t:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn field_of_generator_matches_mode() {
        let g = make_osp1_2n(1).unwrap();
        let eng = ModeEngine::new(g.algebra.clone(), int(1));
        let p = g.algebra.parities().to_vec();
        for t in (0..=3).flat_map(|m| pbw::enumerate_grade(&p, m)) {
            for x in 0..g.algebra.dim() {
                for n in -2..=3 {
                    let direct: Combo = eng.apply(x as u16, n, &t).iter().cloned().collect();
                    let via: Combo = eng
                        .field(&[Mode::new(x, -1)], n, &t)
                        .iter()
                        .cloned()
                        .collect();
                    assert_eq!(direct, via);
                    // x(-2)1 = D x(-1)1, so (x(-2)1)_n = -n x(n-1).
                    let d: Combo = eng
                        .field(&[Mode::new(x, -2)], n, &t)
                        .iter()
                        .cloned()
                        .collect();
                    let mut expect = Combo::new();
                    let shifted: Combo = eng.apply(x as u16, n - 1, &t).iter().cloned().collect();
                    add_scaled_combo(&mut expect, &int(-(n as i64)), &shifted);
                    assert_eq!(d, expect);
                }
            }
        }
    }
}
