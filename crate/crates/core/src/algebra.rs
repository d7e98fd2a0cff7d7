//! The algebra `Λ(n,l)`, its interval modules, Hom spaces, projectives and
//! injectives, the d-cluster tilting subcategory with its diagonals, and the
//! higher translates τ_d and τ_d⁻.

use crate::{Error, Result};

/// Vertex positions and lengths; signed so that intermediate values of the
/// translate formulas may leave `[1,n]` before being rejected.
pub type Pos = i64;

/// The indecomposable `Λ(n,l)`-module with support `[a,b]`, socle `S(a)` and
/// top `S(b)`. The zero module is represented by absence (`Option`), never by
/// an out-of-range interval.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntervalModule {
    pub a: Pos,
    pub b: Pos,
}

impl IntervalModule {
    pub fn new(a: Pos, b: Pos) -> Self {
        assert!(a <= b, "interval module needs a <= b, got [{a},{b}]");
        IntervalModule { a, b }
    }

    pub fn loewy_length(&self) -> Pos {
        self.b - self.a + 1
    }
}

/// Shorthand used pervasively in tests.
pub fn m(a: Pos, b: Pos) -> IntervalModule {
    IntervalModule::new(a, b)
}

/// dim Hom(X, Y) for indecomposables, always 0 or 1: nonzero exactly when the
/// top of `X` lies in the support of `Y` and the socle of `Y` lies in the
/// support of `X`.
pub fn hom_dim(x: IntervalModule, y: IntervalModule) -> u32 {
    (y.a <= x.b && x.b <= y.b && x.a <= y.a) as u32
}

/// A closed integer interval `[lo, hi]`, empty when `lo > hi`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Iv {
    pub lo: Pos,
    pub hi: Pos,
}

impl Iv {
    pub fn new(lo: Pos, hi: Pos) -> Self {
        Iv { lo, hi }
    }

    pub fn empty() -> Self {
        Iv { lo: 1, hi: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> Pos {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }

    pub fn contains(&self, x: Pos) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersect(&self, other: Iv) -> Iv {
        Iv::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn iter(&self) -> impl Iterator<Item = Pos> {
        self.lo..=self.hi
    }
}

/// Direction of the higher Auslander-Reiten translate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A member of a diagonal `D_i`, identified by the diagonal index and its
/// Loewy length. Uniquely names each non-projective-injective module of `C`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DiagonalPosition {
    pub diag_index: usize,
    pub length: Pos,
}

/// Validated parameters of `Λ(n,l)` together with the derived data of its
/// d-cluster tilting subcategory: the number `p` of diagonals and the
/// positions `s_1 < … < s_p` of the simple modules lying in `C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    n: Pos,
    l: Pos,
    d: Pos,
    p: usize,
    s: Vec<Pos>,
}

/// Solves for the unique `p` making `(n,l,d)` admit a d-cluster tilting
/// subcategory; `None` when no valid `p` exists (a normal outcome, not an
/// error). Preconditions `n >= 1`, `l >= 2`, `d >= 1` are hard errors.
pub fn resolve_params(n: Pos, l: Pos, d: Pos) -> Result<Option<Algebra>> {
    if n < 1 || l < 2 || d < 1 {
        return Err(Error::InvalidParams(format!(
            "need n >= 1, l >= 2, d >= 1; got n={n}, l={l}, d={d}"
        )));
    }
    // 2n = (p-1)((d-1)l + 2) + l, solved exactly over the integers.
    let denom = (d - 1) * l + 2;
    let num = 2 * n - l;
    if num < 0 || num % denom != 0 {
        return Ok(None);
    }
    let p = (num / denom + 1) as usize;
    if p < 1 {
        return Ok(None);
    }
    if !(l == 2 || (l > 2 && d % 2 == 0 && p % 2 == 0)) {
        return Ok(None);
    }
    let mut s = Vec::with_capacity(p);
    for i in 1..=p as Pos {
        // Doubled arithmetic keeps everything integral for odd l.
        let s2 = if i % 2 == 1 {
            (i - 1) * (d - 1) * l + 2 * i
        } else {
            (i - 1) * ((d - 1) * l + 2) + l
        };
        debug_assert!(s2 % 2 == 0);
        s.push(s2 / 2);
    }
    debug_assert_eq!(s[0], 1);
    debug_assert_eq!(s[p - 1], n);
    debug_assert!(s.windows(2).all(|w| w[0] < w[1]));
    Ok(Some(Algebra { n, l, d, p, s }))
}

impl Algebra {
    pub fn n(&self) -> Pos {
        self.n
    }

    pub fn l(&self) -> Pos {
        self.l
    }

    pub fn d(&self) -> Pos {
        self.d
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Position of the i-th simple in `C`, 1-based `i` in `[1,p]`.
    pub fn s(&self, i: usize) -> Pos {
        self.s[i - 1]
    }

    pub fn s_all(&self) -> &[Pos] {
        &self.s
    }

    pub fn is_module(&self, x: IntervalModule) -> bool {
        1 <= x.a && x.a <= x.b && x.b <= self.n && x.loewy_length() <= self.l
    }

    /// All indecomposables of `mod Λ(n,l)`, sorted.
    pub fn all_indecomposables(&self) -> Vec<IntervalModule> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in a..=(a + self.l - 1).min(self.n) {
                out.push(m(a, b));
            }
        }
        out
    }

    /// The indecomposable projective with top `S(k)`.
    pub fn projective(&self, k: Pos) -> Result<IntervalModule> {
        if k < 1 || k > self.n {
            return Err(Error::OutOfRange(format!(
                "projective index {k} not in [1,{}]",
                self.n
            )));
        }
        Ok(m((k - self.l + 1).max(1), k))
    }

    /// The indecomposable injective with socle `S(k)`.
    pub fn injective(&self, k: Pos) -> Result<IntervalModule> {
        if k < 1 || k > self.n {
            return Err(Error::OutOfRange(format!(
                "injective index {k} not in [1,{}]",
                self.n
            )));
        }
        Ok(m(k, (k + self.l - 1).min(self.n)))
    }

    /// `(P(k), I(k), P(k) is projective-injective)`.
    pub fn projective_injective_of(
        &self,
        k: Pos,
    ) -> Result<(IntervalModule, IntervalModule, bool)> {
        let p = self.projective(k)?;
        let i = self.injective(k)?;
        Ok((p, i, p.loewy_length() == self.l))
    }

    pub fn is_projective(&self, x: IntervalModule) -> bool {
        x.a == 1 || x.loewy_length() == self.l
    }

    pub fn is_injective(&self, x: IntervalModule) -> bool {
        x.b == self.n || x.loewy_length() == self.l
    }

    pub fn is_proj_inj(&self, x: IntervalModule) -> bool {
        x.loewy_length() == self.l
    }

    /// The member of the diagonal `D_i` of the given length.
    pub fn diagonal_member(&self, i: usize, length: Pos) -> IntervalModule {
        assert!(1 <= i && i <= self.p && 1 <= length && length <= self.l - 1);
        let si = self.s(i);
        if i % 2 == 1 {
            m(si, si + length - 1)
        } else {
            m(si - length + 1, si)
        }
    }

    /// All `l-1` members of `D_i`, ordered by length.
    pub fn diagonal(&self, i: usize) -> Vec<IntervalModule> {
        (1..self.l).map(|x| self.diagonal_member(i, x)).collect()
    }

    /// Diagonal position of a module of `C` that is not projective-injective;
    /// `None` for projective-injectives and for modules outside `C`.
    pub fn diagonal_of(&self, x: IntervalModule) -> Option<DiagonalPosition> {
        if !self.is_module(x) || x.loewy_length() >= self.l {
            return None;
        }
        for i in 1..=self.p {
            let si = self.s(i);
            let hit = if i % 2 == 1 { x.a == si } else { x.b == si };
            if hit && self.diagonal_member(i, x.loewy_length()) == x {
                return Some(DiagonalPosition {
                    diag_index: i,
                    length: x.loewy_length(),
                });
            }
        }
        None
    }

    pub fn in_cluster(&self, x: IntervalModule) -> bool {
        self.is_module(x) && (self.is_proj_inj(x) || self.diagonal_of(x).is_some())
    }

    /// Every indecomposable of `C`, sorted; the projective non-injectives of
    /// `D_1` are stored once (queryable both as projectives and as diagonal-1
    /// members).
    pub fn cluster_indecomposables(&self) -> Vec<IntervalModule> {
        let mut out: Vec<IntervalModule> = (self.l..=self.n)
            .map(|k| self.projective(k).unwrap())
            .collect();
        for i in 1..=self.p {
            out.extend(self.diagonal(i));
        }
        out.sort();
        out.dedup();
        out
    }

    /// Syzygy: kernel of the projective cover, `None` when `x` is projective.
    pub fn syzygy(&self, x: IntervalModule) -> Option<IntervalModule> {
        if self.is_projective(x) {
            return None;
        }
        Some(m((x.b - self.l + 1).max(1), x.a - 1))
    }

    /// Classical Auslander-Reiten translate, `None` when `x` is projective.
    pub fn tau_classical(&self, x: IntervalModule) -> Option<IntervalModule> {
        if self.is_projective(x) {
            None
        } else {
            Some(m(x.a - 1, x.b - 1))
        }
    }

    /// Higher translate via the closed formula. Errors when `x` is not in `C`;
    /// `None` when `x` is projective (forward) or injective (inverse).
    pub fn tau_d(&self, x: IntervalModule, dir: Direction) -> Result<Option<IntervalModule>> {
        if !self.in_cluster(x) {
            return Err(Error::NotInCluster(x));
        }
        Ok(self.tau_d_unchecked(x, dir))
    }

    /// Same as [`Algebra::tau_d`] without the membership check; for hot loops
    /// that already know `x` lies in `C`.
    pub fn tau_d_unchecked(&self, x: IntervalModule, dir: Direction) -> Option<IntervalModule> {
        let (l, d) = (self.l, self.d);
        match dir {
            Direction::Forward => {
                if self.is_projective(x) {
                    return None;
                }
                Some(m(x.b - d * l / 2, x.a - (d - 2) * l / 2 - 2))
            }
            Direction::Inverse => {
                if self.is_injective(x) {
                    return None;
                }
                Some(m(x.b + (d - 2) * l / 2 + 2, x.a + d * l / 2))
            }
        }
    }

    /// Brute-force route to τ_d: the syzygy iterated `d-1` times followed by
    /// the classical translate. A projective iterate kills the chain
    /// (`None`), mirroring the vanishing kernel.
    pub fn tau_d_oracle(&self, x: IntervalModule) -> Result<Option<IntervalModule>> {
        if !self.in_cluster(x) {
            return Err(Error::NotInCluster(x));
        }
        if self.is_projective(x) {
            return Err(Error::InvalidParams(format!(
                "tau_d_oracle expects a nonprojective module, got M({},{})",
                x.a, x.b
            )));
        }
        let mut cur = x;
        for _ in 0..self.d - 1 {
            match self.syzygy(cur) {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(self.tau_classical(cur))
    }

    /// All `(n,l,d)` with `n <= max_n` and `d_min <= d` admitting a d-cluster
    /// tilting subcategory; used by the exhaustive sweeps.
    pub fn contexts_up_to(max_n: Pos, d_min: Pos) -> Vec<Algebra> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for l in 2..=n.max(2) {
                for d in d_min..=2 * n {
                    if let Some(ctx) = resolve_params(n, l, d).unwrap() {
                        out.push(ctx);
                    }
                }
            }
        }
        out
    }
}
