//! (d+1)-term complexes of projectives attached to pairs, Hom computations in
//! the bounded homotopy category, truncated projective resolutions and their
//! index sets, reducing sets, and the silting/presilting status of a pair.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Zero};

use crate::algebra::{Algebra, IntervalModule, Pos};
use crate::rep::{Matrix, Q};
use crate::rigid::{is_rigid_pair, profile, CPair};
use crate::{Error, Result};

/// Nonzero Hom between indecomposable projectives: `P(i) -> P(j)` exists
/// exactly when `max(1, j-l+1) <= i <= j`.
pub fn hom_proj(ctx: &Algebra, i: Pos, j: Pos) -> bool {
    (j - ctx.l() + 1).max(1) <= i && i <= j
}

/// A bounded complex of indecomposable projectives with scalar differential
/// matrices. `terms[t]` lists the projective indices in cohomological degree
/// `t`; `diff[t]` maps `terms[t]` to `terms[t+1]`, entry `(row, col, scalar)`
/// scaling the canonical map `P(terms[t][col]) -> P(terms[t+1][row])`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ProjComplex {
    pub terms: BTreeMap<i32, Vec<Pos>>,
    pub diff: BTreeMap<i32, Vec<(usize, usize, Q)>>,
}

impl ProjComplex {
    pub fn stalk(index: Pos, degree: i32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(degree, vec![index]);
        ProjComplex {
            terms,
            diff: BTreeMap::new(),
        }
    }

    pub fn term(&self, t: i32) -> &[Pos] {
        self.terms.get(&t).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn entries(&self, t: i32) -> &[(usize, usize, Q)] {
        self.diff.get(&t).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn summand_count(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Vec::is_empty)
    }

    /// Validates entry ranges, Hom-compatibility of every entry, and `d² = 0`
    /// under the composition rule for canonical maps.
    pub fn validate(&self, ctx: &Algebra) -> Result<()> {
        for (&t, entries) in &self.diff {
            let src = self.term(t);
            let dst = self.term(t + 1);
            for &(r, c, s) in entries {
                if r >= dst.len() || c >= src.len() {
                    return Err(Error::OutOfRange(format!(
                        "differential entry ({r},{c}) out of range at degree {t}"
                    )));
                }
                if !s.is_zero() && !hom_proj(ctx, src[c], dst[r]) {
                    return Err(Error::MalformedPair(format!(
                        "no canonical map P({}) -> P({}) at degree {t}",
                        src[c], dst[r]
                    )));
                }
            }
        }
        for (&t, first) in &self.diff {
            let Some(second) = self.diff.get(&(t + 1)) else {
                continue;
            };
            let src = self.term(t);
            let far = self.term(t + 2);
            let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
            for &(j, i, s1) in first {
                for &(k, j2, s2) in second {
                    if j == j2 && hom_proj(ctx, src[i], far[k]) {
                        *acc.entry((k, i)).or_insert_with(Q::zero) += s1 * s2;
                    }
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Err(Error::MalformedPair(format!("d² ≠ 0 at degree {t}")));
            }
        }
        Ok(())
    }

    pub fn direct_sum(parts: &[ProjComplex]) -> ProjComplex {
        let mut terms: BTreeMap<i32, Vec<Pos>> = BTreeMap::new();
        let mut diff: BTreeMap<i32, Vec<(usize, usize, Q)>> = BTreeMap::new();
        let mut offsets: Vec<BTreeMap<i32, usize>> = Vec::with_capacity(parts.len());
        for part in parts {
            let mut off = BTreeMap::new();
            for (&t, list) in &part.terms {
                let slot = terms.entry(t).or_default();
                off.insert(t, slot.len());
                slot.extend(list.iter().copied());
            }
            offsets.push(off);
        }
        for (pi, part) in parts.iter().enumerate() {
            for (&t, entries) in &part.diff {
                let src_off = offsets[pi][&t];
                let dst_off = offsets[pi][&(t + 1)];
                let slot = diff.entry(t).or_default();
                for &(r, c, s) in entries {
                    slot.push((r + dst_off, c + src_off, s));
                }
            }
        }
        ProjComplex { terms, diff }
    }
}

/// Indices of the projectives in the truncated minimal projective resolution
/// of an indecomposable module, sorted increasingly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PSet {
    pub module: IntervalModule,
    pub indices: Vec<Pos>,
}

/// The index `x_j` of the degree `-j` term of the minimal projective
/// resolution (may leave `[1,n]`, meaning the term vanishes).
fn resolution_index(x: IntervalModule, l: Pos, j: Pos) -> Pos {
    if j % 2 == 0 {
        x.b - j / 2 * l
    } else {
        x.a - (j - 1) / 2 * l - 1
    }
}

pub fn p_set(ctx: &Algebra, x: IntervalModule) -> Result<PSet> {
    if !ctx.is_module(x) {
        return Err(Error::OutOfRange(format!(
            "M({},{}) is not a module here",
            x.a, x.b
        )));
    }
    if ctx.is_projective(x) {
        return Ok(PSet {
            module: x,
            indices: vec![x.b],
        });
    }
    let mut indices: Vec<Pos> = (0..=ctx.d())
        .map(|j| resolution_index(x, ctx.l(), j))
        .filter(|&i| i >= 1)
        .collect();
    indices.sort();
    Ok(PSet { module: x, indices })
}

/// The truncation `σ_{>= -d}` of the minimal projective resolution, with all
/// differentials the canonical maps; a projective module gives its stalk.
pub fn truncated_resolution(ctx: &Algebra, x: IntervalModule) -> Result<(ProjComplex, PSet)> {
    let pset = p_set(ctx, x)?;
    if ctx.is_projective(x) {
        return Ok((ProjComplex::stalk(x.b, 0), pset));
    }
    let mut cx = ProjComplex::default();
    for j in 0..=ctx.d() {
        let idx = resolution_index(x, ctx.l(), j);
        if idx < 1 {
            break;
        }
        cx.terms.insert(-(j as i32), vec![idx]);
        if j > 0 {
            cx.diff.insert(-(j as i32), vec![(0, 0, Q::one())]);
        }
    }
    debug_assert!(cx.validate(ctx).is_ok());
    Ok((cx, pset))
}

/// `P(B)[d] ⊕ σ_{>= -d} P•(M)`: the (d+1)-term complex of a pair.
pub fn build_pair_complex(ctx: &Algebra, pair: &CPair) -> Result<ProjComplex> {
    pair.validate(ctx)?;
    let mut parts = Vec::new();
    for &b in &pair.support {
        parts.push(ProjComplex::stalk(b, -(ctx.d() as i32)));
    }
    for &x in &pair.rigid {
        parts.push(truncated_resolution(ctx, x)?.0);
    }
    Ok(ProjComplex::direct_sum(&parts))
}

/// dim Hom in the bounded homotopy category from `c1` to `c2[shift]`,
/// computed by exact linear algebra over the scalar coordinates.
pub fn homotopy_hom_dim(ctx: &Algebra, c1: &ProjComplex, c2: &ProjComplex, shift: i32) -> usize {
    // variables: degreewise maps with nonzero Hom between the projectives
    let mut vars: Vec<(i32, usize, usize)> = Vec::new();
    let mut var_index: BTreeMap<(i32, usize, usize), usize> = BTreeMap::new();
    for (&t, src) in &c1.terms {
        let dst = c2.term(t + shift);
        for (i, &pi) in src.iter().enumerate() {
            for (j, &pj) in dst.iter().enumerate() {
                if hom_proj(ctx, pi, pj) {
                    var_index.insert((t, i, j), vars.len());
                    vars.push((t, i, j));
                }
            }
        }
    }
    if vars.is_empty() {
        return 0;
    }
    // chain-map constraints: (d∘f - f∘d)^t = 0 in Hom(c1^t, c2^{t+shift+1})
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (&t, src) in &c1.terms {
        let far = c2.term(t + shift + 1);
        for (i, &pi) in src.iter().enumerate() {
            for (k, &pk) in far.iter().enumerate() {
                if !hom_proj(ctx, pi, pk) {
                    continue;
                }
                let mut row = vec![Q::zero(); vars.len()];
                for &(r, c, s) in c2.entries(t + shift) {
                    if r == k {
                        if let Some(&v) = var_index.get(&(t, i, c)) {
                            row[v] += s;
                        }
                    }
                }
                for &(r, c, s) in c1.entries(t) {
                    if c == i {
                        if let Some(&v) = var_index.get(&(t + 1, r, k)) {
                            row[v] -= s;
                        }
                    }
                }
                if row.iter().any(|q| !q.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let chain_dim = vars.len()
        - if rows.is_empty() {
            0
        } else {
            Matrix {
                rows: rows.len(),
                cols: vars.len(),
                data: rows.concat(),
            }
            .rank()
        };
    // null-homotopic maps: image of h -> d∘h + h∘d over degree (shift-1) maps
    let mut hvars: Vec<(i32, usize, usize)> = Vec::new();
    for (&t, src) in &c1.terms {
        let dst = c2.term(t + shift - 1);
        for (i, &pi) in src.iter().enumerate() {
            for (j, &pj) in dst.iter().enumerate() {
                if hom_proj(ctx, pi, pj) {
                    hvars.push((t, i, j));
                }
            }
        }
    }
    let null_dim = if hvars.is_empty() {
        0
    } else {
        let mut cols: Vec<Vec<Q>> = Vec::new();
        for &(t, i, j) in &hvars {
            let mut col = vec![Q::zero(); vars.len()];
            // d2 ∘ h^t : contributes in degree t
            for &(r, c, s) in c2.entries(t + shift - 1) {
                if c == j {
                    if let Some(&v) = var_index.get(&(t, i, r)) {
                        col[v] += s;
                    }
                }
            }
            // h^{t+1} ∘ d1 : contributes in degree t - 1 (h at t receives d from t-1)
            for &(r, c, s) in c1.entries(t - 1) {
                if r == i {
                    if let Some(&v) = var_index.get(&(t - 1, c, j)) {
                        col[v] += s;
                    }
                }
            }
            cols.push(col);
        }
        let mut data = Vec::with_capacity(vars.len() * cols.len());
        for r in 0..vars.len() {
            for col in &cols {
                data.push(col[r]);
            }
        }
        Matrix {
            rows: vars.len(),
            cols: cols.len(),
            data,
        }
        .rank()
    };
    chain_dim - null_dim
}

/// A reducing-set instance: a finite ground set and a family of subsets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducingProblem {
    pub gamma: BTreeSet<Pos>,
    pub psi: Vec<BTreeSet<Pos>>,
}

/// Backtracking search for an elimination ordering in which every step
/// exposes a singleton; returns the witness ordering on success.
pub fn is_reducing(problem: &ReducingProblem) -> Option<Vec<Pos>> {
    let gamma: Vec<Pos> = problem.gamma.iter().copied().collect();
    assert!(
        gamma.len() <= 64,
        "reducing-set search supports at most 64 elements"
    );
    let index: BTreeMap<Pos, usize> = gamma.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let psi_masks: Vec<u64> = problem
        .psi
        .iter()
        .map(|set| {
            set.iter()
                .filter_map(|g| index.get(g))
                .fold(0u64, |acc, &i| acc | 1 << i)
        })
        .collect();
    let full: u64 = if gamma.is_empty() {
        0
    } else {
        (!0u64) >> (64 - gamma.len())
    };
    let mut failed: HashSet<u64> = HashSet::new();
    fn dfs(
        chosen: u64,
        full: u64,
        psi: &[u64],
        gamma: &[Pos],
        failed: &mut HashSet<u64>,
        witness: &mut Vec<Pos>,
    ) -> bool {
        if chosen == full {
            return true;
        }
        if failed.contains(&chosen) {
            return false;
        }
        let mut candidates: u64 = 0;
        for &mask in psi {
            let rest = mask & !chosen;
            if rest != 0 && rest & (rest - 1) == 0 {
                candidates |= rest;
            }
        }
        let mut cand = candidates;
        while cand != 0 {
            let bit = cand & cand.wrapping_neg();
            cand &= !bit;
            witness.push(gamma[bit.trailing_zeros() as usize]);
            if dfs(chosen | bit, full, psi, gamma, failed, witness) {
                return true;
            }
            witness.pop();
        }
        failed.insert(chosen);
        false
    }
    let mut witness = Vec::new();
    dfs(0, full, &psi_masks, &gamma, &mut failed, &mut witness).then_some(witness)
}

/// Memoised homotopy Hom between the indecomposable summand complexes of
/// pair complexes; additivity reduces whole-pair checks to table lookups.
pub struct HomotopyTables<'a> {
    ctx: &'a Algebra,
    cache: RefCell<BTreeMap<(Summand, Summand, i32), usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Summand {
    /// `P(b)` placed in degree `-d`
    SupportStalk(Pos),
    /// the truncated resolution of a rigid summand
    Rigid(IntervalModule),
}

impl<'a> HomotopyTables<'a> {
    pub fn new(ctx: &'a Algebra) -> Self {
        HomotopyTables {
            ctx,
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    fn complex_of(&self, s: Summand) -> ProjComplex {
        match s {
            Summand::SupportStalk(b) => ProjComplex::stalk(b, -(self.ctx.d() as i32)),
            Summand::Rigid(x) => truncated_resolution(self.ctx, x).unwrap().0,
        }
    }

    pub fn hom(&self, s1: Summand, s2: Summand, shift: i32) -> usize {
        if let Some(&v) = self.cache.borrow().get(&(s1, s2, shift)) {
            return v;
        }
        let v = homotopy_hom_dim(self.ctx, &self.complex_of(s1), &self.complex_of(s2), shift);
        self.cache.borrow_mut().insert((s1, s2, shift), v);
        v
    }

    pub fn summands_of(&self, pair: &CPair) -> Vec<Summand> {
        let mut out: Vec<Summand> = pair
            .support
            .iter()
            .map(|&b| Summand::SupportStalk(b))
            .collect();
        out.extend(pair.rigid.iter().map(|&x| Summand::Rigid(x)));
        out
    }

    /// No self-extensions in shifts `1..=d`; shifts beyond `d` vanish for
    /// support reasons.
    pub fn is_presilting(&self, pair: &CPair) -> bool {
        let summands = self.summands_of(pair);
        for shift in 1..=self.ctx.d() as i32 {
            for &s1 in &summands {
                for &s2 in &summands {
                    if self.hom(s1, s2, shift) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SiltingStatus {
    pub presilting: bool,
    pub silting: bool,
    pub generation_witness: Option<Vec<Pos>>,
}

/// Decides presilting (homotopy Homs, cross-checked against rigidity) and
/// silting (presilting plus a reducing set certifying thick generation).
pub fn silting_status(ctx: &Algebra, pair: &CPair) -> Result<SiltingStatus> {
    let tables = HomotopyTables::new(ctx);
    silting_status_with(ctx, &tables, pair)
}

pub fn silting_status_with(
    ctx: &Algebra,
    tables: &HomotopyTables<'_>,
    pair: &CPair,
) -> Result<SiltingStatus> {
    let rigid = is_rigid_pair(ctx, pair)?.rigid;
    let presilting = tables.is_presilting(pair);
    if presilting != rigid {
        return Err(Error::Inconsistency(format!(
            "presilting ({presilting}) disagrees with rigidity ({rigid}) for {pair:?}"
        )));
    }
    if !presilting {
        return Ok(SiltingStatus {
            presilting,
            silting: false,
            generation_witness: None,
        });
    }
    let problem = reducing_problem(ctx, pair)?;
    let witness = is_reducing(&problem);
    Ok(SiltingStatus {
        presilting,
        silting: witness.is_some(),
        generation_witness: witness,
    })
}

/// dim Ext^t(X, Y) for indecomposables, read off the minimal projective
/// resolution: the Hom complex has one-dimensional terms wherever the
/// resolution index lies in the support of `Y`, and every differential
/// between two nonzero terms is nonzero.
pub fn ext_dim(ctx: &Algebra, x: IntervalModule, y: IntervalModule, t: Pos) -> usize {
    assert!(t >= 0);
    if ctx.is_projective(x) {
        return if t == 0 {
            crate::algebra::hom_dim(x, y) as usize
        } else {
            0
        };
    }
    // resolution indices are strictly decreasing, so a term exists exactly
    // when its index is still >= 1
    let term = |j: Pos| -> bool {
        if j < 0 {
            return false;
        }
        let idx = resolution_index(x, ctx.l(), j);
        idx >= 1 && y.a <= idx && idx <= y.b
    };
    if !term(t) {
        return 0;
    }
    usize::from(!term(t + 1) && !term(t - 1))
}

/// `Γ = [1,n] ∖ (R ∪ B)` with `Ψ` the truncated-resolution index sets of the
/// non-projective rigid summands, cut down to `Γ`.
pub fn reducing_problem(ctx: &Algebra, pair: &CPair) -> Result<ReducingProblem> {
    let prof = profile(ctx, pair)?;
    let gamma: BTreeSet<Pos> = (1..=ctx.n())
        .filter(|k| !prof.r.contains(k) && !prof.b.contains(k))
        .collect();
    let mut psi: Vec<BTreeSet<Pos>> = Vec::new();
    for &x in &pair.rigid {
        if ctx.is_projective(x) {
            continue;
        }
        let cut: BTreeSet<Pos> = p_set(ctx, x)?
            .indices
            .into_iter()
            .filter(|i| gamma.contains(i))
            .collect();
        if !psi.contains(&cut) {
            psi.push(cut);
        }
    }
    Ok(ReducingProblem { gamma, psi })
}
