//! Explicit quiver representations of `Λ(n,l)`-modules over the rationals.
//!
//! This is the brute-force side of the crate: Hom spaces as solution spaces of
//! commuting-square systems, cokernels computed vertexwise, decomposition into
//! interval summands via path-map ranks, and exactness checks for sequences.
//! Hom dimensions over `Λ(n,l)` are field-independent, so exact arithmetic in
//! characteristic zero decides them.

use num_rational::Ratio;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::algebra::{Algebra, IntervalModule, Pos};

pub type Q = Ratio<i64>;

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self.get(i, k);
                if v.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let w = other.get(k, j);
                    if !w.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, cur + v * w);
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let pivot = (row..a.rows).find(|&r| !a.get(r, col).is_zero());
            let Some(p) = pivot else { continue };
            for c in 0..a.cols {
                let tmp = a.get(p, c);
                a.set(p, c, a.get(row, c));
                a.set(row, c, tmp);
            }
            let inv = a.get(row, col).recip();
            for c in 0..a.cols {
                let v = a.get(row, c) * inv;
                a.set(row, c, v);
            }
            for r in 0..a.rows {
                if r != row && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col);
                    for c in 0..a.cols {
                        let v = a.get(r, c) - factor * a.get(row, c);
                        a.set(r, c, v);
                    }
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }
}

/// Reduced row echelon form of the span of the given vectors, with unit
/// leading entries; returns the rows and their pivot positions.
fn rref(vectors: Vec<Vec<Q>>, width: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for mut cand in vectors {
        for row in &rows {
            let lead = row.iter().position(|q| !q.is_zero()).unwrap();
            if !cand[lead].is_zero() {
                let f = cand[lead];
                for j in 0..width {
                    cand[j] = cand[j] - f * row[j];
                }
            }
        }
        if let Some(lead) = cand.iter().position(|q| !q.is_zero()) {
            let lv = cand[lead];
            for v in cand.iter_mut() {
                *v = *v / lv;
            }
            // back-reduce existing rows against the new one
            for row in rows.iter_mut() {
                if !row[lead].is_zero() {
                    let f = row[lead];
                    for j in 0..width {
                        row[j] = row[j] - f * cand[j];
                    }
                }
            }
            rows.push(cand);
        }
    }
    rows.sort_by_key(|r| r.iter().position(|q| !q.is_zero()).unwrap());
    let pivots = rows
        .iter()
        .map(|r| r.iter().position(|q| !q.is_zero()).unwrap())
        .collect();
    (rows, pivots)
}

/// A representation of the linearly oriented `A_n` quiver bound by `R^l`:
/// a space at each vertex `1..=n` and a structure map `V_{v+1} -> V_v` for
/// each arrow.
#[derive(Clone, Debug)]
pub struct Rep {
    pub n: Pos,
    pub dims: Vec<usize>,  // index 0 unused; dims[v] for v in 1..=n
    pub maps: Vec<Matrix>, // maps[v-1]: V_{v+1} -> V_v, for v in 1..n
}

impl Rep {
    pub fn zero(n: Pos) -> Self {
        let dims = vec![0; n as usize + 1];
        let maps = (1..n as usize).map(|_| Matrix::zero(0, 0)).collect();
        Rep { n, dims, maps }
    }

    pub fn dim(&self, v: Pos) -> usize {
        self.dims[v as usize]
    }

    fn map_at(&self, v: Pos) -> &Matrix {
        &self.maps[v as usize - 1]
    }

    pub fn interval(n: Pos, x: IntervalModule) -> Self {
        Rep::direct_sum(n, &[x])
    }

    /// Direct sum of interval modules (with multiplicity), in list order.
    pub fn direct_sum(n: Pos, parts: &[IntervalModule]) -> Self {
        let mut rep = Rep::zero(n);
        let offsets = Rep::offsets(n, parts);
        for x in parts {
            for v in x.a..=x.b {
                rep.dims[v as usize] += 1;
            }
        }
        for v in 1..n {
            let mut mat = Matrix::zero(rep.dims[v as usize], rep.dims[v as usize + 1]);
            for (idx, x) in parts.iter().enumerate() {
                if x.a <= v && v + 1 <= x.b {
                    mat.set(
                        offsets[idx][v as usize],
                        offsets[idx][v as usize + 1],
                        Q::one(),
                    );
                }
            }
            rep.maps[v as usize - 1] = mat;
        }
        rep
    }

    /// Row offset of each part at each vertex inside the direct sum.
    pub fn offsets(n: Pos, parts: &[IntervalModule]) -> Vec<Vec<usize>> {
        let mut running = vec![0usize; n as usize + 1];
        let mut offsets = Vec::with_capacity(parts.len());
        for x in parts {
            let mut off = vec![usize::MAX; n as usize + 1];
            for v in x.a..=x.b {
                off[v as usize] = running[v as usize];
                running[v as usize] += 1;
            }
            offsets.push(off);
        }
        offsets
    }

    /// Composite path map `V_b -> V_a` for `a <= b`.
    pub fn path_map(&self, a: Pos, b: Pos) -> Matrix {
        assert!(1 <= a && a <= b && b <= self.n);
        let mut acc = Matrix::identity(self.dims[a as usize]);
        for v in a..b {
            acc = acc.mul(self.map_at(v));
        }
        acc
    }

    /// Multiset of interval summands, via inclusion-exclusion on the ranks of
    /// the path maps.
    pub fn decompose(&self, l: Pos) -> BTreeMap<IntervalModule, usize> {
        let mut cache: BTreeMap<(Pos, Pos), usize> = BTreeMap::new();
        let mut rank_of = |a: Pos, b: Pos| -> i64 {
            if a < 1 || b > self.n || a > b || b - a >= l {
                return 0;
            }
            *cache
                .entry((a, b))
                .or_insert_with(|| self.path_map(a, b).rank()) as i64
        };
        let mut out = BTreeMap::new();
        for a in 1..=self.n {
            for b in a..=(a + l - 1).min(self.n) {
                let c =
                    rank_of(a, b) - rank_of(a - 1, b) - rank_of(a, b + 1) + rank_of(a - 1, b + 1);
                assert!(c >= 0, "negative multiplicity in decomposition");
                if c > 0 {
                    out.insert(IntervalModule::new(a, b), c as usize);
                }
            }
        }
        out
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// A morphism of representations, one block per vertex.
#[derive(Clone, Debug)]
pub struct RepMap {
    pub src: Rep,
    pub dst: Rep,
    pub blocks: Vec<Matrix>, // blocks[v-1]: src.V_v -> dst.V_v
}

impl RepMap {
    pub fn zero(src: Rep, dst: Rep) -> Self {
        let blocks = (1..=src.n)
            .map(|v| Matrix::zero(dst.dims[v as usize], src.dims[v as usize]))
            .collect();
        RepMap { src, dst, blocks }
    }

    pub fn block(&self, v: Pos) -> &Matrix {
        &self.blocks[v as usize - 1]
    }

    pub fn block_mut(&mut self, v: Pos) -> &mut Matrix {
        &mut self.blocks[v as usize - 1]
    }

    /// Checks the commuting squares `ψ_v ∘ φ^src_v = φ^dst_v ∘ ψ_{v+1}`.
    pub fn is_morphism(&self) -> bool {
        for v in 1..self.src.n {
            let lhs = self.block(v).mul(self.src.map_at(v));
            let rhs = self.dst.map_at(v).mul(self.block(v + 1));
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    pub fn rank_at(&self, v: Pos) -> usize {
        self.block(v).rank()
    }

    /// Vertexwise cokernel with induced structure maps.
    pub fn cokernel(&self) -> Rep {
        let n = self.src.n;
        let mut proj: Vec<Matrix> = Vec::with_capacity(n as usize); // dst.V_v -> coker_v
        let mut sect: Vec<Matrix> = Vec::with_capacity(n as usize); // coker_v -> dst.V_v
        let mut dims = vec![0usize; n as usize + 1];
        for v in 1..=n {
            let img = self.block(v);
            let dim_dst = self.dst.dims[v as usize];
            let cols: Vec<Vec<Q>> = (0..img.cols)
                .map(|c| (0..dim_dst).map(|r| img.get(r, c)).collect())
                .collect();
            let (rows, pivots) = rref(cols, dim_dst);
            let free: Vec<usize> = (0..dim_dst).filter(|i| !pivots.contains(i)).collect();
            // Class of e_c in free coordinates: e_free stays; e_pivot reduces to
            // minus the free part of its RREF row.
            let mut q = Matrix::zero(free.len(), dim_dst);
            for (r, &fc) in free.iter().enumerate() {
                q.set(r, fc, Q::one());
                for (ri, row) in rows.iter().enumerate() {
                    if !row[fc].is_zero() {
                        q.set(r, pivots[ri], -row[fc]);
                    }
                }
            }
            let mut s = Matrix::zero(dim_dst, free.len());
            for (r, &fc) in free.iter().enumerate() {
                s.set(fc, r, Q::one());
            }
            dims[v as usize] = free.len();
            proj.push(q);
            sect.push(s);
        }
        let mut out = Rep::zero(n);
        out.dims = dims;
        for v in 1..n {
            let induced = proj[v as usize - 1].mul(&self.dst.map_at(v).mul(&sect[v as usize]));
            out.maps[v as usize - 1] = induced;
        }
        out
    }
}

/// The canonical generator of `Hom(src, dst)` (identity on the support
/// overlap `[dst.a, src.b]`); requires the Hom space to be nonzero.
pub fn canonical_map(n: Pos, src: IntervalModule, dst: IntervalModule) -> RepMap {
    let coeffs = BTreeMap::from([((0, 0), Q::one())]);
    block_map(n, &[src], &[dst], &coeffs)
}

/// Block map `⊕src -> ⊕dst` from scalar coefficients: `coeffs[(i,j)]` scales
/// the canonical map `src[i] -> dst[j]`.
pub fn block_map(
    n: Pos,
    src: &[IntervalModule],
    dst: &[IntervalModule],
    coeffs: &BTreeMap<(usize, usize), Q>,
) -> RepMap {
    let s = Rep::direct_sum(n, src);
    let d = Rep::direct_sum(n, dst);
    let src_off = Rep::offsets(n, src);
    let dst_off = Rep::offsets(n, dst);
    let mut f = RepMap::zero(s, d);
    for (&(i, j), &c) in coeffs {
        let (x, y) = (src[i], dst[j]);
        assert_eq!(
            crate::algebra::hom_dim(x, y),
            1,
            "no canonical map {x:?} -> {y:?}"
        );
        for v in y.a..=x.b {
            let r = dst_off[j][v as usize];
            let cc = src_off[i][v as usize];
            f.block_mut(v).set(r, cc, c);
        }
    }
    debug_assert!(f.is_morphism());
    f
}

/// dim Hom over the quiver with relations, by solving the commuting-square
/// system; the independent oracle for [`crate::algebra::hom_dim`].
pub fn hom_dim_oracle(ctx: &Algebra, x: IntervalModule, y: IntervalModule) -> usize {
    let xr = Rep::interval(ctx.n(), x);
    let yr = Rep::interval(ctx.n(), y);
    hom_dim_reps(&xr, &yr)
}

/// dim Hom between arbitrary representations.
pub fn hom_dim_reps(x: &Rep, y: &Rep) -> usize {
    // Unknowns: entries of ψ_v (dim y_v × dim x_v). Constraints per arrow:
    // ψ_v φx_v - φy_v ψ_{v+1} = 0.
    let n = x.n;
    let mut var_offset = vec![0usize; n as usize + 2];
    let mut total = 0usize;
    for v in 1..=n {
        var_offset[v as usize] = total;
        total += y.dims[v as usize] * x.dims[v as usize];
    }
    if total == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for v in 1..n {
        let (ry, cx) = (y.dims[v as usize], x.dims[v as usize + 1]);
        for i in 0..ry {
            for j in 0..cx {
                let mut row = vec![Q::zero(); total];
                for k in 0..x.dims[v as usize] {
                    let coef = x.map_at(v).get(k, j);
                    if !coef.is_zero() {
                        let idx = var_offset[v as usize] + i * x.dims[v as usize] + k;
                        row[idx] = row[idx] + coef;
                    }
                }
                for k in 0..y.dims[v as usize + 1] {
                    let coef = y.map_at(v).get(i, k);
                    if !coef.is_zero() {
                        let idx = var_offset[v as usize + 1] + k * x.dims[v as usize + 1] + j;
                        row[idx] = row[idx] - coef;
                    }
                }
                if row.iter().any(|q| !q.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        let mat = Matrix {
            rows: rows.len(),
            cols: total,
            data: rows.concat(),
        };
        mat.rank()
    };
    total - rank
}

/// True when `0 -> A_0 -> A_1 -> ... -> A_k -> 0` is exact: composites vanish,
/// the first map is injective, the last surjective, and ranks add up in every
/// middle term.
pub fn is_exact_sequence(maps: &[RepMap]) -> bool {
    if maps.is_empty() {
        return true;
    }
    for w in maps.windows(2) {
        for v in 1..=w[0].src.n {
            let comp = w[1].block(v).mul(w[0].block(v));
            if comp.data.iter().any(|q| !q.is_zero()) {
                return false;
            }
        }
    }
    let first = &maps[0];
    for v in 1..=first.src.n {
        if first.rank_at(v) != first.src.dims[v as usize] {
            return false;
        }
    }
    let last = maps.last().unwrap();
    for v in 1..=last.src.n {
        if last.rank_at(v) != last.dst.dims[v as usize] {
            return false;
        }
    }
    for i in 0..maps.len() - 1 {
        for v in 1..=maps[i].src.n {
            let mid_dim = maps[i].dst.dims[v as usize];
            if maps[i].rank_at(v) + maps[i + 1].rank_at(v) != mid_dim {
                return false;
            }
        }
    }
    true
}
