//! Basic τ_d-rigid pairs `(M, P)`: diagonal profiles, marker intervals, the
//! combinatorial rigidity criterion with its brute-force Hom oracle,
//! admissible configurations, well-configured pairs, and enumeration of all
//! rigid pairs and of all summand-maximal ones (by two independent methods).

use std::collections::BTreeSet;
use std::time::Instant;

use crate::algebra::{hom_dim, Algebra, Direction, IntervalModule, Iv, Pos};
use crate::{Error, Result};

/// A basic pair: the indecomposable summands of `M` (all in `C`) plus the
/// index set `B` of the support-projective part `P = P(B)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CPair {
    pub rigid: BTreeSet<IntervalModule>,
    pub support: BTreeSet<Pos>,
}

impl CPair {
    pub fn new(
        rigid: impl IntoIterator<Item = IntervalModule>,
        support: impl IntoIterator<Item = Pos>,
    ) -> Self {
        CPair {
            rigid: rigid.into_iter().collect(),
            support: support.into_iter().collect(),
        }
    }

    pub fn total_summands(&self) -> usize {
        self.rigid.len() + self.support.len()
    }

    /// Well-formedness: rigid summands in `C`, support indices in range, and
    /// `M ⊕ P` basic (no projective appears on both sides).
    pub fn validate(&self, ctx: &Algebra) -> Result<()> {
        for &x in &self.rigid {
            if !ctx.in_cluster(x) {
                return Err(Error::NotInCluster(x));
            }
        }
        for &b in &self.support {
            if b < 1 || b > ctx.n() {
                return Err(Error::MalformedPair(format!(
                    "support index {b} out of range"
                )));
            }
            let pb = ctx.projective(b)?;
            if self.rigid.contains(&pb) {
                return Err(Error::MalformedPair(format!(
                    "P({b}) appears both as a rigid summand and in the support part"
                )));
            }
        }
        Ok(())
    }
}

/// Diagonal profile of a pair: per diagonal `i ∈ [2,p]` the set `X_i` of
/// lengths present, plus the non-diagonal component `(R, B)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Profile {
    p: usize,
    l: Pos,
    x: Vec<BTreeSet<Pos>>, // slot i for i in 2..=p; slots 0,1 stay empty
    pub r: BTreeSet<Pos>,
    pub b: BTreeSet<Pos>,
}

impl Profile {
    /// Assembles a profile from raw data: `x_sets[k]` holds the lengths on
    /// diagonal `k + 2`.
    pub fn new(
        ctx: &Algebra,
        x_sets: &[BTreeSet<Pos>],
        r: BTreeSet<Pos>,
        b: BTreeSet<Pos>,
    ) -> Self {
        assert_eq!(x_sets.len() + 1, ctx.p());
        let mut x = vec![BTreeSet::new(); ctx.p() + 1];
        for (k, s) in x_sets.iter().enumerate() {
            x[k + 2] = s.clone();
        }
        Profile {
            p: ctx.p(),
            l: ctx.l(),
            x,
            r,
            b,
        }
    }

    pub fn x_i(&self, i: usize) -> &BTreeSet<Pos> {
        &self.x[i]
    }

    /// `min X_i`, or `l` when empty; indices outside `[2,p]` count as empty.
    pub fn l_i(&self, i: i64) -> Pos {
        if i < 2 || i > self.p as i64 {
            return self.l;
        }
        self.x[i as usize].first().copied().unwrap_or(self.l)
    }

    /// `max X_i`, or `0` when empty.
    pub fn n_i(&self, i: i64) -> Pos {
        if i < 2 || i > self.p as i64 {
            return 0;
        }
        self.x[i as usize].last().copied().unwrap_or(0)
    }

    pub fn m_i(&self, i: i64) -> usize {
        if i < 2 || i > self.p as i64 {
            return 0;
        }
        self.x[i as usize].len()
    }

    pub fn diagonal_summand_count(&self) -> usize {
        self.x.iter().map(|s| s.len()).sum()
    }

    /// Diagonal component `T`: the diagonals intersected by `M`.
    pub fn diagonal_component(&self) -> Vec<usize> {
        (2..=self.p).filter(|&i| !self.x[i].is_empty()).collect()
    }

    /// Diagonal partition: maximal blocks of consecutive nonzero diagonals,
    /// as inclusive index ranges.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let t = self.diagonal_component();
        let mut runs = Vec::new();
        let mut iter = t.into_iter();
        let Some(first) = iter.next() else {
            return runs;
        };
        let (mut lo, mut hi) = (first, first);
        for i in iter {
            if i == hi + 1 {
                hi = i;
            } else {
                runs.push((lo, hi));
                lo = i;
                hi = i;
            }
        }
        runs.push((lo, hi));
        runs
    }
}

/// Splits the rigid part into projective summands (`R`) and diagonal length
/// sets (`X_i`); `B` is copied from the support part.
pub fn profile(ctx: &Algebra, pair: &CPair) -> Result<Profile> {
    pair.validate(ctx)?;
    let mut x = vec![BTreeSet::new(); ctx.p() + 1];
    let mut r = BTreeSet::new();
    for &mm in &pair.rigid {
        if ctx.is_projective(mm) {
            r.insert(mm.b);
        } else {
            let dp = ctx
                .diagonal_of(mm)
                .expect("nonprojective cluster module lies in a diagonal");
            x[dp.diag_index].insert(dp.length);
        }
    }
    Ok(Profile {
        p: ctx.p(),
        l: ctx.l(),
        x,
        r,
        b: pair.support.clone(),
    })
}

/// Rebuild the pair described by a profile.
pub fn pair_of_profile(ctx: &Algebra, prof: &Profile) -> CPair {
    let mut rigid: BTreeSet<IntervalModule> = BTreeSet::new();
    for i in 2..=ctx.p() {
        for &len in prof.x_i(i) {
            rigid.insert(ctx.diagonal_member(i, len));
        }
    }
    for &k in &prof.r {
        rigid.insert(ctx.projective(k).unwrap());
    }
    CPair {
        rigid,
        support: prof.b.clone(),
    }
}

/// Marker intervals of a pair: per diagonal the projective indices excluded
/// from `R` (notred) and from `B` (notblue), the gaps `Z_i`, the run
/// neighbourhoods `Ξ(T_j)` and the in-between intervals `Θ_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Markers {
    pub notred: Vec<Iv>,  // slot i for i in 2..=p
    pub notblue: Vec<Iv>, // slot i for i in 2..=p
    pub z: Vec<Iv>,       // slot i for i in 2..=p
    pub runs: Vec<(usize, usize)>,
    pub xi_runs: Vec<Iv>, // Ξ(T_j), aligned with runs
    pub thetas: Vec<Iv>,  // Θ_0 ..= Θ_k
}

pub fn notblue_iv(ctx: &Algebra, prof: &Profile, i: usize) -> Iv {
    let si = ctx.s(i);
    let n_i = prof.n_i(i as i64);
    if i % 2 == 1 {
        Iv::new(si, si + n_i - 1)
    } else {
        Iv::new(si - n_i + 1, si)
    }
}

pub fn notred_iv(ctx: &Algebra, prof: &Profile, i: usize) -> Iv {
    let sprev = ctx.s(i - 1);
    let l_i = prof.l_i(i as i64);
    if i % 2 == 1 {
        Iv::new(sprev - (ctx.l() - l_i) + 1, sprev)
    } else {
        Iv::new(sprev, sprev + (ctx.l() - l_i) - 1)
    }
}

/// `Ξ(i, i+k)`: from the start of `notred_i` to the end of `notblue_{i+k}`.
pub fn xi_iv(ctx: &Algebra, prof: &Profile, i: usize, j: usize) -> Iv {
    let lo = if i % 2 == 1 {
        ctx.s(i - 1) - (ctx.l() - prof.l_i(i as i64)) + 1
    } else {
        ctx.s(i - 1)
    };
    let hi = if j % 2 == 1 {
        ctx.s(j) + prof.n_i(j as i64) - 1
    } else {
        ctx.s(j)
    };
    Iv::new(lo, hi)
}

pub fn markers(ctx: &Algebra, pair: &CPair) -> Result<Markers> {
    let prof = profile(ctx, pair)?;
    Ok(markers_of_profile(ctx, &prof))
}

pub fn markers_of_profile(ctx: &Algebra, prof: &Profile) -> Markers {
    let p = ctx.p();
    let mut notred = vec![Iv::empty(); p + 1];
    let mut notblue = vec![Iv::empty(); p + 1];
    let mut z = vec![Iv::empty(); p + 1];
    for i in 2..=p {
        notred[i] = notred_iv(ctx, prof, i);
        notblue[i] = notblue_iv(ctx, prof, i);
        z[i] = if i % 2 == 1 {
            Iv::new(ctx.s(i - 1) + 1, ctx.s(i) - 1)
        } else {
            Iv::new(
                ctx.s(i - 1) + (ctx.l() - prof.l_i(i as i64)),
                ctx.s(i) - prof.n_i(i as i64),
            )
        };
    }
    let runs = prof.runs();
    let xi_runs: Vec<Iv> = runs.iter().map(|&(i, j)| xi_iv(ctx, prof, i, j)).collect();
    let normalize = |iv: Iv| if iv.is_empty() { Iv::empty() } else { iv };
    let mut thetas = Vec::with_capacity(runs.len() + 1);
    if runs.is_empty() {
        thetas.push(Iv::new(1, ctx.n()));
    } else {
        thetas.push(normalize(Iv::new(1, xi_runs[0].lo - 1)));
        for w in 0..runs.len() - 1 {
            thetas.push(normalize(Iv::new(xi_runs[w].hi + 1, xi_runs[w + 1].lo - 1)));
        }
        thetas.push(normalize(Iv::new(xi_runs[runs.len() - 1].hi + 1, ctx.n())));
    }
    Markers {
        notred,
        notblue,
        z,
        runs,
        xi_runs,
        thetas,
    }
}

/// How an interval sits relative to `(R, B)` and the marker intervals. The
/// empty interval is simultaneously support and rigid.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct IntervalKind {
    pub support: bool,
    pub rigid: bool,
    pub support_to_rigid: Option<Pos>,
    pub rigid_to_support: Option<Pos>,
}

pub fn interval_kind(ctx: &Algebra, pair: &CPair, iv: Iv) -> Result<IntervalKind> {
    let prof = profile(ctx, pair)?;
    Ok(interval_kind_of_profile(ctx, &prof, iv))
}

pub fn interval_kind_of_profile(ctx: &Algebra, prof: &Profile, iv: Iv) -> IntervalKind {
    let mut kind = IntervalKind::default();
    if iv.is_empty() {
        kind.support = true;
        kind.rigid = true;
        return kind;
    }
    let in_ub = |y: Pos| (2..=ctx.p()).any(|i| notblue_iv(ctx, prof, i).contains(y));
    let in_ur = |y: Pos| (2..=ctx.p()).any(|i| notred_iv(ctx, prof, i).contains(y));
    let r_in: Vec<Pos> = prof.r.iter().copied().filter(|&y| iv.contains(y)).collect();
    let b_in: Vec<Pos> = prof.b.iter().copied().filter(|&y| iv.contains(y)).collect();
    let unmarked_b: Vec<Pos> = iv.iter().filter(|&y| !in_ub(y)).collect();
    let unmarked_r: Vec<Pos> = iv.iter().filter(|&y| !in_ur(y)).collect();
    if r_in.is_empty() && b_in == unmarked_b {
        kind.support = true;
    }
    if b_in.is_empty() && r_in == unmarked_r {
        kind.rigid = true;
    }
    if !b_in.is_empty() && !r_in.is_empty() {
        let x = *b_in.last().unwrap();
        let prefix: Vec<Pos> = iv.iter().filter(|&y| y <= x).collect();
        let tail: Vec<Pos> = iv.iter().filter(|&y| y >= x + ctx.l()).collect();
        if b_in == prefix && r_in == tail && !tail.is_empty() {
            kind.support_to_rigid = Some(x);
        }
        let x = *r_in.last().unwrap();
        let prefix: Vec<Pos> = iv.iter().filter(|&y| y <= x).collect();
        let tail: Vec<Pos> = iv.iter().filter(|&y| y >= x + 1).collect();
        if r_in == prefix && b_in == tail && !tail.is_empty() {
            kind.rigid_to_support = Some(x);
        }
    }
    kind
}

/// One violated rigidity clause, labelled per the criterion: `(a)` the gap
/// condition between `B` and `R`, `(b1)`/`(b2)` the diagonal length
/// inequalities, `(b3)` the marker exclusions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Violation {
    pub clause: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct RigidReport {
    pub rigid: bool,
    pub violations: Vec<Violation>,
}

/// The combinatorial rigidity criterion. Returns every violated clause with
/// its witnesses.
pub fn is_rigid_pair(ctx: &Algebra, pair: &CPair) -> Result<RigidReport> {
    let prof = profile(ctx, pair)?;
    Ok(rigid_report_of_profile(ctx, &prof))
}

pub fn rigid_report_of_profile(ctx: &Algebra, prof: &Profile) -> RigidReport {
    let l = ctx.l();
    let mut violations: BTreeSet<Violation> = BTreeSet::new();

    // (a) every B-before-R pair needs an l-1 window free of R ∪ B between them.
    let occupied: BTreeSet<Pos> = prof.r.union(&prof.b).copied().collect();
    for &y in &prof.r {
        let Some(&x) = prof.b.range(..y).next_back() else {
            continue;
        };
        let ok = (x + 1..=y - (l - 1)).any(|zz| (zz..zz + l - 1).all(|t| !occupied.contains(&t)));
        if !ok {
            violations.insert(Violation {
                clause: "a",
                detail: format!("no free window of length {} between B∋{x} and R∋{y}", l - 1),
            });
        }
    }

    // (b1)/(b2) diagonal length inequalities (with the d = 2 extras).
    for i in 2..=ctx.p() {
        let ii = i as i64;
        if i % 2 == 1 {
            if prof.n_i(ii - 1) + prof.n_i(ii) > l - 1 {
                violations.insert(Violation {
                    clause: "b1",
                    detail: format!("n_{} + n_{} > l-1", i - 1, i),
                });
            }
            if prof.l_i(ii) + prof.l_i(ii + 1) < l + 1 {
                violations.insert(Violation {
                    clause: "b1",
                    detail: format!("l_{} + l_{} < l+1", i, i + 1),
                });
            }
            if ctx.d() == 2 {
                if prof.n_i(ii) > prof.l_i(ii + 2) + 1 {
                    violations.insert(Violation {
                        clause: "b1",
                        detail: format!("n_{} > l_{} + 1 (d=2)", i, i + 2),
                    });
                }
                if prof.n_i(ii - 2) > prof.l_i(ii) + 1 {
                    violations.insert(Violation {
                        clause: "b1",
                        detail: format!("n_{} > l_{} + 1 (d=2)", i - 2, i),
                    });
                }
            }
        } else {
            if prof.n_i(ii) + prof.n_i(ii + 1) > l - 1 {
                violations.insert(Violation {
                    clause: "b2",
                    detail: format!("n_{} + n_{} > l-1", i, i + 1),
                });
            }
            if prof.l_i(ii - 1) + prof.l_i(ii) < l + 1 {
                violations.insert(Violation {
                    clause: "b2",
                    detail: format!("l_{} + l_{} < l+1", i - 1, i),
                });
            }
        }
    }

    // (b3) marker exclusions.
    for i in 2..=ctx.p() {
        let nr = notred_iv(ctx, prof, i);
        let nb = notblue_iv(ctx, prof, i);
        for &y in &prof.r {
            if nr.contains(y) {
                violations.insert(Violation {
                    clause: "b3",
                    detail: format!("R ∋ {y} meets notred_{i}"),
                });
            }
        }
        for &y in &prof.b {
            if nb.contains(y) {
                violations.insert(Violation {
                    clause: "b3",
                    detail: format!("B ∋ {y} meets notblue_{i}"),
                });
            }
        }
    }

    RigidReport {
        rigid: violations.is_empty(),
        violations: violations.into_iter().collect(),
    }
}

/// Brute-force rigidity: `Hom(X, τ_d Y) = 0` over all ordered pairs of rigid
/// summands (skipping projective `Y`), and `Hom(P(b), X) = 0` for all
/// `b ∈ B` and rigid summands `X`.
pub fn is_rigid_pair_oracle(ctx: &Algebra, pair: &CPair) -> Result<bool> {
    pair.validate(ctx)?;
    for &y in &pair.rigid {
        let Some(t) = ctx.tau_d_unchecked(y, Direction::Forward) else {
            continue;
        };
        for &x in &pair.rigid {
            if hom_dim(x, t) != 0 {
                return Ok(false);
            }
        }
    }
    for &b in &pair.support {
        let pb = ctx.projective(b)?;
        for &x in &pair.rigid {
            if hom_dim(pb, x) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The eight local patterns a run of consecutive nonzero diagonals can match.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Tag {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AdmissibleType {
    pub tag: Tag,
    pub full: bool,
    /// Split point when the run's `Ξ` is support-to-rigid.
    pub anchor: Option<Pos>,
}

/// Classifies a maximal run `[i, i+k]` of nonzero diagonals against the
/// admissible patterns; `None` when no clause matches.
pub fn classify_admissible(
    ctx: &Algebra,
    pair: &CPair,
    run: (usize, usize),
) -> Result<Option<AdmissibleType>> {
    let prof = profile(ctx, pair)?;
    Ok(classify_admissible_of_profile(ctx, &prof, run))
}

pub fn classify_admissible_of_profile(
    ctx: &Algebra,
    prof: &Profile,
    run: (usize, usize),
) -> Option<AdmissibleType> {
    let (i, j) = run;
    assert!(2 <= i && i <= j && j <= ctx.p());
    let k = j - i;
    let l = ctx.l();
    let ii = i as i64;
    let xi = xi_iv(ctx, prof, i, j);
    let kind = interval_kind_of_profile(ctx, prof, xi);
    let full =
        (i..=j).all(|t| prof.m_i(t as i64) as Pos == prof.n_i(t as i64) - prof.l_i(t as i64) + 1);
    let mk = |tag: Tag, anchor: Option<Pos>| Some(AdmissibleType { tag, full, anchor });
    match k {
        0 => {
            let (li, ni) = (prof.l_i(ii), prof.n_i(ii));
            if li == 1 && ni < l - 1 && kind.support {
                return mk(Tag::I, None);
            }
            if li > 1 && ni == l - 1 && kind.rigid {
                return mk(Tag::II, None);
            }
            if li == 1 && ni == l - 1 {
                if kind.support || kind.rigid {
                    return mk(Tag::III, None);
                }
                if let Some(x) = kind.support_to_rigid {
                    if xi.contains(x) && !notblue_iv(ctx, prof, i).contains(x) {
                        return mk(Tag::III, Some(x));
                    }
                }
            }
            None
        }
        1 => {
            let (li, li1) = (prof.l_i(ii), prof.l_i(ii + 1));
            let (ni, ni1) = (prof.n_i(ii), prof.n_i(ii + 1));
            let (mi, mi1) = (prof.m_i(ii) as Pos, prof.m_i(ii + 1) as Pos);
            if i % 2 == 1 && ni == l - 1 && ni1 == l - 1 {
                if mi + mi1 < l - 1 && kind.rigid {
                    return mk(Tag::IV, None);
                }
                if mi + mi1 == l - 1 {
                    if kind.rigid {
                        return mk(Tag::VI, None);
                    }
                    if let Some(x) = kind.support_to_rigid {
                        if ctx.s(i) - (l - mi1) <= x && x <= ctx.s(i) - 1 {
                            return mk(Tag::VI, Some(x));
                        }
                    }
                }
            }
            if i % 2 == 0 && li == 1 && li1 == 1 {
                if mi + mi1 < l - 1 && kind.support {
                    return mk(Tag::V, None);
                }
                if mi + mi1 == l - 1 {
                    if kind.support {
                        return mk(Tag::VII, None);
                    }
                    if let Some(x) = kind.support_to_rigid {
                        if ctx.s(i) - (l - 1) <= x && x <= ctx.s(i) - mi {
                            return mk(Tag::VII, Some(x));
                        }
                    }
                }
            }
            None
        }
        2 => {
            if ctx.d() == 2
                && i % 2 == 0
                && prof.l_i(ii) == 1
                && prof.l_i(ii + 1) == l - prof.l_i(ii + 2) + 1
                && prof.n_i(ii + 1) == l - prof.n_i(ii) - 1
                && prof.n_i(ii + 2) == l - 1
            {
                if let Some(x) = kind.support_to_rigid {
                    if ctx.s(i + 1) - prof.l_i(ii + 2) <= x && x <= ctx.s(i) - prof.n_i(ii) {
                        return mk(Tag::VIII, Some(x));
                    }
                }
            }
            None
        }
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct WellConfiguredReport {
    pub well_configured: bool,
    pub failing_clause: Option<String>,
}

/// The global gluing criterion equivalent to summand-maximality: clause (a)
/// for diagonal-free pairs, clauses (b)(i)–(v) otherwise.
pub fn is_well_configured(ctx: &Algebra, pair: &CPair) -> Result<WellConfiguredReport> {
    let prof = profile(ctx, pair)?;
    Ok(well_configured_of_profile(ctx, &prof))
}

pub fn well_configured_of_profile(ctx: &Algebra, prof: &Profile) -> WellConfiguredReport {
    let fail = |clause: &str| WellConfiguredReport {
        well_configured: false,
        failing_clause: Some(clause.to_string()),
    };
    let ok = WellConfiguredReport {
        well_configured: true,
        failing_clause: None,
    };

    let runs = prof.runs();
    if runs.is_empty() {
        let x = prof.r.len() as Pos;
        let r_is_prefix = prof.r.iter().copied().eq(1..=x);
        let b_is_suffix = prof.b.iter().copied().eq(x + 1..=ctx.n());
        return if r_is_prefix && b_is_suffix {
            ok
        } else {
            fail("a")
        };
    }

    let mk = markers_of_profile(ctx, prof);
    let mut types = Vec::with_capacity(runs.len());
    for &run in &runs {
        match classify_admissible_of_profile(ctx, prof, run) {
            Some(t) if t.full => types.push(t),
            _ => return fail(&format!("b.i run [{},{}]", run.0, run.1)),
        }
    }
    for w in 0..runs.len().saturating_sub(1) {
        if !mk.xi_runs[w].intersect(mk.xi_runs[w + 1]).is_empty() {
            return fail("b.ii");
        }
    }
    let theta_kinds: Vec<IntervalKind> = mk
        .thetas
        .iter()
        .map(|&iv| interval_kind_of_profile(ctx, prof, iv))
        .collect();
    for (j, kind) in theta_kinds.iter().enumerate() {
        if !(kind.support || kind.rigid || kind.rigid_to_support.is_some()) {
            return fail(&format!("b.iii Θ_{j}"));
        }
    }
    let xi_kinds: Vec<IntervalKind> = mk
        .xi_runs
        .iter()
        .map(|&iv| interval_kind_of_profile(ctx, prof, iv))
        .collect();
    for j in 0..runs.len() {
        if xi_kinds[j].rigid && types[j].tag != Tag::III && !theta_kinds[j].rigid {
            return fail(&format!("b.iv run [{},{}]", runs[j].0, runs[j].1));
        }
        if xi_kinds[j].support && types[j].tag != Tag::III && !theta_kinds[j + 1].support {
            return fail(&format!("b.v run [{},{}]", runs[j].0, runs[j].1));
        }
    }
    ok
}

/// Resource caps for enumerations.
#[derive(Clone, Copy, Default, Debug)]
pub struct Limits {
    pub max_items: Option<usize>,
    pub deadline: Option<Instant>,
}

const MAX_ENUM_N: Pos = 63; // positions live in a u64 bitmask during search

fn iv_mask(iv: Iv) -> u64 {
    if iv.is_empty() {
        return 0;
    }
    let mut m = 0u64;
    for k in iv.lo.max(1)..=iv.hi {
        m |= 1 << (k - 1);
    }
    m
}

fn mask_to_set(mask: u64) -> BTreeSet<Pos> {
    (0..64)
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| k as Pos + 1)
        .collect()
}

/// Diagonal profile shape used while enumerating: length sets plus the
/// derived masks.
struct ProfileShape {
    x: Vec<BTreeSet<Pos>>,
    ur_mask: u64,
    ub_mask: u64,
    summands: usize,
}

/// All diagonal length assignments satisfying the rigidity inequalities
/// (the `(R,B)`-independent clauses), in canonical order.
fn rigid_profile_shapes(ctx: &Algebra) -> Vec<ProfileShape> {
    let l = ctx.l();
    let lengths_per_diag = (l - 1) as usize;
    let mut subsets: Vec<BTreeSet<Pos>> = (0u32..1 << lengths_per_diag)
        .map(|bits| (1..=l - 1).filter(|&x| bits >> (x - 1) & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| {
        let av: Vec<Pos> = a.iter().copied().collect();
        let bv: Vec<Pos> = b.iter().copied().collect();
        av.cmp(&bv)
    });
    let diag_count = ctx.p() - 1;
    let mut out = Vec::new();
    let mut choice = vec![0usize; diag_count];
    'outer: loop {
        let mut x = vec![BTreeSet::new(); ctx.p() + 1];
        for (slot, &c) in choice.iter().enumerate() {
            x[slot + 2] = subsets[c].clone();
        }
        let prof = Profile {
            p: ctx.p(),
            l,
            x,
            r: BTreeSet::new(),
            b: BTreeSet::new(),
        };
        if diagonal_conditions_hold(ctx, &prof) {
            let mut ur = 0u64;
            let mut ub = 0u64;
            for i in 2..=ctx.p() {
                ur |= iv_mask(notred_iv(ctx, &prof, i));
                ub |= iv_mask(notblue_iv(ctx, &prof, i));
            }
            out.push(ProfileShape {
                x: prof.x.clone(),
                ur_mask: ur,
                ub_mask: ub,
                summands: prof.diagonal_summand_count(),
            });
        }
        for slot in (0..diag_count).rev() {
            choice[slot] += 1;
            if choice[slot] < subsets.len() {
                continue 'outer;
            }
            choice[slot] = 0;
            if slot == 0 {
                break 'outer;
            }
        }
        if diag_count == 0 {
            break;
        }
    }
    out
}

fn diagonal_conditions_hold(ctx: &Algebra, prof: &Profile) -> bool {
    let l = ctx.l();
    for i in 2..=ctx.p() {
        let ii = i as i64;
        if i % 2 == 1 {
            if prof.n_i(ii - 1) + prof.n_i(ii) > l - 1 || prof.l_i(ii) + prof.l_i(ii + 1) < l + 1 {
                return false;
            }
            if ctx.d() == 2
                && (prof.n_i(ii) > prof.l_i(ii + 2) + 1 || prof.n_i(ii - 2) > prof.l_i(ii) + 1)
            {
                return false;
            }
        } else if prof.n_i(ii) + prof.n_i(ii + 1) > l - 1 || prof.l_i(ii - 1) + prof.l_i(ii) < l + 1
        {
            return false;
        }
    }
    true
}

/// Depth-first search over `(R, B)` assignments respecting the marker masks
/// and the window condition. `target`: exact number of labelled positions to
/// hit, or `None` for all assignments.
fn search_rb(
    ctx: &Algebra,
    shape: &ProfileShape,
    target: Option<usize>,
    out: &mut Vec<(u64, u64)>,
) {
    let n = ctx.n();
    let l = ctx.l();
    // suffix capacity: positions >= pos that can take at least one label
    let mut cap = vec![0usize; n as usize + 2];
    for pos in (1..=n).rev() {
        let both = shape.ur_mask >> (pos - 1) & 1 == 1 && shape.ub_mask >> (pos - 1) & 1 == 1;
        cap[pos as usize] = cap[pos as usize + 1] + usize::from(!both);
    }
    struct Frame {
        pos: Pos,
        pending: bool,
        run: Pos,
        r: u64,
        b: u64,
        count: usize,
    }
    let mut stack = vec![Frame {
        pos: 1,
        pending: false,
        run: 0,
        r: 0,
        b: 0,
        count: 0,
    }];
    while let Some(f) = stack.pop() {
        if let Some(t) = target {
            if f.count > t || f.count + cap[f.pos as usize] < t {
                continue;
            }
        }
        if f.pos > n {
            if target.map_or(true, |t| f.count == t) {
                out.push((f.r, f.b));
            }
            continue;
        }
        let bit = 1u64 << (f.pos - 1);
        // none
        let run = (f.run + 1).min(l - 1);
        stack.push(Frame {
            pos: f.pos + 1,
            pending: f.pending && run < l - 1,
            run,
            r: f.r,
            b: f.b,
            count: f.count,
        });
        // red (a summand of M)
        if shape.ur_mask & bit == 0 && !f.pending {
            stack.push(Frame {
                pos: f.pos + 1,
                pending: false,
                run: 0,
                r: f.r | bit,
                b: f.b,
                count: f.count + 1,
            });
        }
        // blue (a summand of P)
        if shape.ub_mask & bit == 0 {
            stack.push(Frame {
                pos: f.pos + 1,
                pending: true,
                run: 0,
                r: f.r,
                b: f.b | bit,
                count: f.count + 1,
            });
        }
    }
}

fn materialize(ctx: &Algebra, shape: &ProfileShape, r: u64, b: u64) -> CPair {
    let mut rigid: BTreeSet<IntervalModule> = BTreeSet::new();
    for i in 2..=ctx.p() {
        for &len in &shape.x[i] {
            rigid.insert(ctx.diagonal_member(i, len));
        }
    }
    for k in mask_to_set(r) {
        rigid.insert(ctx.projective(k).unwrap());
    }
    CPair {
        rigid,
        support: mask_to_set(b),
    }
}

/// Canonical ordering key: sorted diagonal lengths per diagonal, then `R`,
/// then `B`.
pub fn canonical_key(ctx: &Algebra, pair: &CPair) -> (Vec<Vec<Pos>>, Vec<Pos>, Vec<Pos>) {
    let prof = profile(ctx, pair).expect("canonical_key expects a valid pair");
    let lengths = (2..=ctx.p())
        .map(|i| prof.x_i(i).iter().copied().collect())
        .collect();
    (
        lengths,
        prof.r.iter().copied().collect(),
        prof.b.iter().copied().collect(),
    )
}

/// Emits every basic τ_d-rigid pair exactly once in canonical order. Aborts
/// with [`Error::LimitExceeded`] when a limit is hit, reporting the count so
/// far through the error.
pub fn enumerate_rigid(
    ctx: &Algebra,
    limits: Limits,
    visit: &mut dyn FnMut(&CPair),
) -> Result<usize> {
    if ctx.n() > MAX_ENUM_N {
        return Err(Error::InvalidParams(format!(
            "enumeration supports n <= {MAX_ENUM_N}"
        )));
    }
    let mut emitted = 0usize;
    for shape in rigid_profile_shapes(ctx) {
        let mut assignments = Vec::new();
        search_rb(ctx, &shape, None, &mut assignments);
        let mut keyed: Vec<(Vec<Pos>, Vec<Pos>, CPair)> = assignments
            .into_iter()
            .map(|(r, b)| {
                let pr = materialize(ctx, &shape, r, b);
                let key = canonical_key(ctx, &pr);
                (key.1, key.2, pr)
            })
            .collect();
        keyed.sort();
        for (_, _, pr) in keyed {
            if let Some(max) = limits.max_items {
                if emitted >= max {
                    return Err(Error::LimitExceeded { emitted });
                }
            }
            if let Some(deadline) = limits.deadline {
                if Instant::now() > deadline {
                    return Err(Error::LimitExceeded { emitted });
                }
            }
            visit(&pr);
            emitted += 1;
        }
    }
    Ok(emitted)
}

pub fn enumerate_rigid_collect(ctx: &Algebra) -> Result<Vec<CPair>> {
    let mut out = Vec::new();
    enumerate_rigid(ctx, Limits::default(), &mut |p| out.push(p.clone()))?;
    Ok(out)
}

/// Largest total summand count over all rigid pairs, by branch and bound
/// (no use of the classification).
pub fn max_total_summands(ctx: &Algebra) -> Result<usize> {
    if ctx.n() > MAX_ENUM_N {
        return Err(Error::InvalidParams(format!(
            "enumeration supports n <= {MAX_ENUM_N}"
        )));
    }
    let n = ctx.n();
    let l = ctx.l();
    let mut best = 0usize;
    for shape in rigid_profile_shapes(ctx) {
        let mut cap = vec![0usize; n as usize + 2];
        for pos in (1..=n).rev() {
            let both = shape.ur_mask >> (pos - 1) & 1 == 1 && shape.ub_mask >> (pos - 1) & 1 == 1;
            cap[pos as usize] = cap[pos as usize + 1] + usize::from(!both);
        }
        fn dfs(
            pos: Pos,
            pending: bool,
            run: Pos,
            count: usize,
            n: Pos,
            l: Pos,
            shape: &ProfileShape,
            cap: &[usize],
            best_rb: &mut usize,
        ) {
            if count + cap[pos as usize] <= *best_rb {
                return;
            }
            if pos > n {
                *best_rb = (*best_rb).max(count);
                return;
            }
            let bit = 1u64 << (pos - 1);
            if shape.ur_mask & bit == 0 && !pending {
                dfs(pos + 1, false, 0, count + 1, n, l, shape, cap, best_rb);
            }
            if shape.ub_mask & bit == 0 {
                dfs(pos + 1, true, 0, count + 1, n, l, shape, cap, best_rb);
            }
            let r = (run + 1).min(l - 1);
            dfs(
                pos + 1,
                pending && r < l - 1,
                r,
                count,
                n,
                l,
                shape,
                cap,
                best_rb,
            );
        }
        let mut best_rb = best.saturating_sub(shape.summands + 1);
        dfs(1, false, 0, 0, n, l, &shape, &cap, &mut best_rb);
        best = best.max(shape.summands + best_rb);
    }
    Ok(best)
}

/// Summand-maximal pairs produced constructively from the gluing rules, then
/// cross-checked against the filtered rigid enumeration; disagreement is a
/// fatal internal-consistency error.
pub fn enumerate_summand_maximal(ctx: &Algebra) -> Result<Vec<CPair>> {
    let constructive = well_configured_pairs(ctx)?;
    let filtered = rigid_pairs_with_total(ctx, ctx.n() as usize)?;
    let c_set: BTreeSet<CPair> = constructive.iter().cloned().collect();
    let f_set: BTreeSet<CPair> = filtered.into_iter().collect();
    if c_set != f_set {
        let only_c = c_set.difference(&f_set).count();
        let only_f = f_set.difference(&c_set).count();
        return Err(Error::Inconsistency(format!(
            "summand-maximal methods disagree: {only_c} constructive-only, {only_f} filter-only"
        )));
    }
    let mut out: Vec<CPair> = c_set.into_iter().collect();
    out.sort_by_key(|p| canonical_key(ctx, p));
    Ok(out)
}

/// Rigid pairs with exactly `total` summands, via the pruned search.
pub fn rigid_pairs_with_total(ctx: &Algebra, total: usize) -> Result<Vec<CPair>> {
    if ctx.n() > MAX_ENUM_N {
        return Err(Error::InvalidParams(format!(
            "enumeration supports n <= {MAX_ENUM_N}"
        )));
    }
    let mut out = Vec::new();
    for shape in rigid_profile_shapes(ctx) {
        if shape.summands > total {
            continue;
        }
        let mut found = Vec::new();
        search_rb(ctx, &shape, Some(total - shape.summands), &mut found);
        out.extend(
            found
                .into_iter()
                .map(|(r, b)| materialize(ctx, &shape, r, b)),
        );
    }
    out.sort_by_key(|p| canonical_key(ctx, p));
    Ok(out)
}

/// How a run's `Ξ` interval is realised when constructing well-configured
/// pairs.
#[derive(Clone, Copy, Debug)]
enum XiChoice {
    Support,
    Rigid,
    SupportToRigid(Pos),
}

/// All well-configured pairs, generated directly from the defining clauses.
pub fn well_configured_pairs(ctx: &Algebra) -> Result<Vec<CPair>> {
    let n = ctx.n();
    let l = ctx.l();
    let p = ctx.p();
    let mut out: Vec<CPair> = Vec::new();

    // clause (a): no diagonal summands, R a prefix and B the complement.
    for x in 0..=n {
        let rigid: BTreeSet<IntervalModule> = (1..=x).map(|k| ctx.projective(k).unwrap()).collect();
        out.push(CPair {
            rigid,
            support: (x + 1..=n).collect(),
        });
    }

    // clause (b): choose the diagonal partition, a full admissible
    // configuration per run, Ξ kinds, and Θ kinds.
    let mut run_sets: Vec<Vec<(usize, usize)>> = Vec::new();
    collect_run_structures(2, p, &mut Vec::new(), &mut run_sets);
    for runs in run_sets {
        let per_run: Vec<Vec<(Vec<BTreeSet<Pos>>, Tag)>> = runs
            .iter()
            .map(|&run| full_configs_for_run(ctx, run))
            .collect();
        if per_run.iter().any(Vec::is_empty) {
            continue; // e.g. a three-diagonal run outside d = 2
        }
        let mut idx = vec![0usize; runs.len()];
        'cfg: loop {
            // assemble the profile for this configuration choice
            let mut x = vec![BTreeSet::new(); p + 1];
            let mut tags = Vec::with_capacity(runs.len());
            for (w, &(i, _)) in runs.iter().enumerate() {
                let (ref sets, tag) = per_run[w][idx[w]];
                for (off, s) in sets.iter().enumerate() {
                    x[i + off] = s.clone();
                }
                tags.push(tag);
            }
            let prof = Profile {
                p,
                l,
                x,
                r: BTreeSet::new(),
                b: BTreeSet::new(),
            };
            emit_configurations(ctx, &prof, &runs, &tags, &mut out);

            // advance the mixed-radix index
            let mut w = runs.len();
            loop {
                if w == 0 {
                    break 'cfg;
                }
                w -= 1;
                idx[w] += 1;
                if idx[w] < per_run[w].len() {
                    break;
                }
                idx[w] = 0;
            }
        }
    }

    let set: BTreeSet<CPair> = out.iter().cloned().collect();
    if set.len() != out.len() {
        return Err(Error::Inconsistency(
            "well-configured construction produced duplicate pairs".into(),
        ));
    }
    let mut sorted: Vec<CPair> = set.into_iter().collect();
    sorted.sort_by_key(|pr| canonical_key(ctx, pr));
    Ok(sorted)
}

fn collect_run_structures(
    from: usize,
    p: usize,
    acc: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if !acc.is_empty() {
        out.push(acc.clone());
    }
    if from > p {
        return;
    }
    for i in from..=p {
        for j in i..=(i + 2).min(p) {
            acc.push((i, j));
            collect_run_structures(j + 2, p, acc, out);
            acc.pop();
        }
    }
}

/// Full admissible parameter choices for one run: the length sets of its
/// diagonals and the resulting type tag.
fn full_configs_for_run(ctx: &Algebra, run: (usize, usize)) -> Vec<(Vec<BTreeSet<Pos>>, Tag)> {
    let (i, j) = run;
    let k = j - i;
    let l = ctx.l();
    let d = ctx.d();
    let range_set = |lo: Pos, hi: Pos| -> BTreeSet<Pos> { (lo..=hi).collect() };
    let mut out = Vec::new();
    match k {
        0 => {
            for ni in 1..=l - 2 {
                out.push((vec![range_set(1, ni)], Tag::I));
            }
            for li in 2..=l - 1 {
                out.push((vec![range_set(li, l - 1)], Tag::II));
            }
            out.push((vec![range_set(1, l - 1)], Tag::III));
        }
        1 => {
            if i % 2 == 1 {
                for li in 1..=l - 1 {
                    for li1 in 1..=l - 1 {
                        if li + li1 >= l + 2 {
                            out.push((vec![range_set(li, l - 1), range_set(li1, l - 1)], Tag::IV));
                        } else if li + li1 == l + 1 {
                            out.push((vec![range_set(li, l - 1), range_set(li1, l - 1)], Tag::VI));
                        }
                    }
                }
            } else {
                for ni in 1..=l - 2 {
                    for ni1 in 1..=l - 2 {
                        if ni + ni1 <= l - 2 {
                            out.push((vec![range_set(1, ni), range_set(1, ni1)], Tag::V));
                        } else if ni + ni1 == l - 1 {
                            out.push((vec![range_set(1, ni), range_set(1, ni1)], Tag::VII));
                        }
                    }
                }
            }
        }
        2 => {
            if d == 2 && i % 2 == 0 {
                for li2 in 2..=l - 1 {
                    for ni in 1..=li2 - 2 {
                        out.push((
                            vec![
                                range_set(1, ni),
                                range_set(l - li2 + 1, l - ni - 1),
                                range_set(li2, l - 1),
                            ],
                            Tag::VIII,
                        ));
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// For a chosen profile and run types, enumerate the Ξ and Θ realisations and
/// push the resulting pairs.
fn emit_configurations(
    ctx: &Algebra,
    prof: &Profile,
    runs: &[(usize, usize)],
    tags: &[Tag],
    out: &mut Vec<CPair>,
) {
    let l = ctx.l();
    let mk = markers_of_profile(ctx, prof);
    // condition (b)(ii)
    for w in 0..runs.len().saturating_sub(1) {
        if !mk.xi_runs[w].intersect(mk.xi_runs[w + 1]).is_empty() {
            return;
        }
    }
    // Ξ choices per run
    let mut xi_choices: Vec<Vec<XiChoice>> = Vec::with_capacity(runs.len());
    for (w, &run) in runs.iter().enumerate() {
        let xi = mk.xi_runs[w];
        let (i, j) = run;
        let ur: Vec<Iv> = (i..=j).map(|t| notred_iv(ctx, prof, t)).collect();
        let ub: Vec<Iv> = (i..=j).map(|t| notblue_iv(ctx, prof, t)).collect();
        let s2r_range = |clause: Iv| -> Vec<Pos> {
            let mut xs = Vec::new();
            for x in xi.lo..=xi.hi - l {
                if !clause.contains(x) {
                    continue;
                }
                let b_part = Iv::new(xi.lo, x);
                let r_part = Iv::new(x + l, xi.hi);
                let b_ok = ub.iter().all(|m| m.intersect(b_part).is_empty());
                let r_ok = ur.iter().all(|m| m.intersect(r_part).is_empty());
                if b_ok && r_ok {
                    xs.push(x);
                }
            }
            xs
        };
        let mut choices = Vec::new();
        match tags[w] {
            Tag::I | Tag::V => choices.push(XiChoice::Support),
            Tag::II | Tag::IV => choices.push(XiChoice::Rigid),
            Tag::III => {
                choices.push(XiChoice::Support);
                choices.push(XiChoice::Rigid);
                for x in s2r_range(Iv::new(Pos::MIN + 1, Pos::MAX - 1)) {
                    choices.push(XiChoice::SupportToRigid(x));
                }
            }
            Tag::VI => {
                choices.push(XiChoice::Rigid);
                let mi1 = prof.m_i(i as i64 + 1) as Pos;
                for x in s2r_range(Iv::new(ctx.s(i) - (l - mi1), ctx.s(i) - 1)) {
                    choices.push(XiChoice::SupportToRigid(x));
                }
            }
            Tag::VII => {
                choices.push(XiChoice::Support);
                let mi = prof.m_i(i as i64) as Pos;
                for x in s2r_range(Iv::new(ctx.s(i) - (l - 1), ctx.s(i) - mi)) {
                    choices.push(XiChoice::SupportToRigid(x));
                }
            }
            Tag::VIII => {
                for x in s2r_range(Iv::new(
                    ctx.s(i + 1) - prof.l_i(i as i64 + 2),
                    ctx.s(i) - prof.n_i(i as i64),
                )) {
                    choices.push(XiChoice::SupportToRigid(x));
                }
            }
        }
        xi_choices.push(choices);
    }
    if xi_choices.iter().any(Vec::is_empty) {
        return;
    }

    let mut pick = vec![0usize; runs.len()];
    'xi: loop {
        let chosen: Vec<XiChoice> = pick
            .iter()
            .enumerate()
            .map(|(w, &c)| xi_choices[w][c])
            .collect();
        emit_theta_choices(ctx, prof, runs, tags, &mk, &chosen, out);
        let mut w = runs.len();
        loop {
            if w == 0 {
                break 'xi;
            }
            w -= 1;
            pick[w] += 1;
            if pick[w] < xi_choices[w].len() {
                break;
            }
            pick[w] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum ThetaChoice {
    Empty,
    Rigid,
    Support,
    RigidToSupport(Pos),
}

fn emit_theta_choices(
    ctx: &Algebra,
    prof: &Profile,
    runs: &[(usize, usize)],
    tags: &[Tag],
    mk: &Markers,
    xi_chosen: &[XiChoice],
    out: &mut Vec<CPair>,
) {
    // (R, B) inside the Ξ intervals is fixed by the chosen kinds.
    let mut r_base: BTreeSet<Pos> = BTreeSet::new();
    let mut b_base: BTreeSet<Pos> = BTreeSet::new();
    for (w, &(i, j)) in runs.iter().enumerate() {
        let xi = mk.xi_runs[w];
        match xi_chosen[w] {
            XiChoice::Support => {
                for y in xi.iter() {
                    if (i..=j).all(|t| !notblue_iv(ctx, prof, t).contains(y)) {
                        b_base.insert(y);
                    }
                }
            }
            XiChoice::Rigid => {
                for y in xi.iter() {
                    if (i..=j).all(|t| !notred_iv(ctx, prof, t).contains(y)) {
                        r_base.insert(y);
                    }
                }
            }
            XiChoice::SupportToRigid(x) => {
                b_base.extend(xi.lo..=x);
                r_base.extend(x + ctx.l()..=xi.hi);
            }
        }
    }

    // per-Θ options under clauses (iv) and (v)
    let k = runs.len();
    let mut options: Vec<Vec<ThetaChoice>> = Vec::with_capacity(k + 1);
    for (jj, &theta) in mk.thetas.iter().enumerate() {
        if theta.is_empty() {
            options.push(vec![ThetaChoice::Empty]);
            continue;
        }
        let force_rigid =
            jj < k && matches!(xi_chosen[jj], XiChoice::Rigid) && tags[jj] != Tag::III;
        let force_support =
            jj >= 1 && matches!(xi_chosen[jj - 1], XiChoice::Support) && tags[jj - 1] != Tag::III;
        let opts = match (force_rigid, force_support) {
            (true, true) => return,
            (true, false) => vec![ThetaChoice::Rigid],
            (false, true) => vec![ThetaChoice::Support],
            (false, false) => {
                let mut v = vec![ThetaChoice::Rigid, ThetaChoice::Support];
                for x in theta.lo..theta.hi {
                    v.push(ThetaChoice::RigidToSupport(x));
                }
                v
            }
        };
        options.push(opts);
    }

    let mut pick = vec![0usize; k + 1];
    'theta: loop {
        let mut r = r_base.clone();
        let mut b = b_base.clone();
        for (jj, &c) in pick.iter().enumerate() {
            let theta = mk.thetas[jj];
            match options[jj][c] {
                ThetaChoice::Empty => {}
                ThetaChoice::Rigid => r.extend(theta.iter()),
                ThetaChoice::Support => b.extend(theta.iter()),
                ThetaChoice::RigidToSupport(x) => {
                    r.extend(theta.lo..=x);
                    b.extend(x + 1..=theta.hi);
                }
            }
        }
        let realized = Profile {
            p: prof.p,
            l: prof.l,
            x: prof.x.clone(),
            r,
            b,
        };
        let pair = pair_of_profile(ctx, &realized);
        debug_assert!(
            rigid_report_of_profile(ctx, &realized).rigid
                && well_configured_of_profile(ctx, &realized).well_configured
                && pair.total_summands() == ctx.n() as usize,
            "constructed pair fails its own invariants: {pair:?}"
        );
        out.push(pair);

        let mut jj = k + 1;
        loop {
            if jj == 0 {
                break 'theta;
            }
            jj -= 1;
            pick[jj] += 1;
            if pick[jj] < options[jj].len() {
                break;
            }
            pick[jj] = 0;
        }
    }
}

/// Maximality in the completion sense: no indecomposable of `C` can be added
/// to `M` and no projective to `P` while keeping the pair rigid.
pub fn is_maximal_rigid(ctx: &Algebra, pair: &CPair) -> Result<bool> {
    let report = is_rigid_pair(ctx, pair)?;
    if !report.rigid {
        return Err(Error::MalformedPair(
            "is_maximal_rigid expects a rigid pair".into(),
        ));
    }
    // (i) every N ∈ C satisfying the three Hom-vanishing conditions already
    // lies in add M.
    for nn in ctx.cluster_indecomposables() {
        if pair.rigid.contains(&nn) {
            continue;
        }
        let hom_m_tau_n = match ctx.tau_d_unchecked(nn, Direction::Forward) {
            Some(t) => pair.rigid.iter().any(|&x| hom_dim(x, t) == 1),
            None => false,
        };
        let hom_n_tau_m = pair.rigid.iter().any(|&y| {
            ctx.tau_d_unchecked(y, Direction::Forward)
                .map_or(false, |t| hom_dim(nn, t) == 1)
        });
        let hom_p_n = pair
            .support
            .iter()
            .any(|&b| hom_dim(ctx.projective(b).unwrap(), nn) == 1);
        if !hom_m_tau_n && !hom_n_tau_m && !hom_p_n {
            return Ok(false);
        }
    }
    // (ii) Q ∈ add P ⟺ Hom(Q, M) = 0 over indecomposable projectives Q.
    for q in 1..=ctx.n() {
        let pq = ctx.projective(q)?;
        let hom_q_m = pair.rigid.iter().any(|&x| hom_dim(pq, x) == 1);
        let in_p = pair.support.contains(&q);
        if in_p && hom_q_m {
            return Ok(false);
        }
        if !in_p && !hom_q_m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy completion in canonical order: repeatedly add any admissible
/// summand until the pair is maximal.
pub fn greedy_completion(ctx: &Algebra, pair: &CPair) -> Result<CPair> {
    let report = is_rigid_pair(ctx, pair)?;
    if !report.rigid {
        return Err(Error::MalformedPair(
            "greedy_completion expects a rigid pair".into(),
        ));
    }
    let mut cur = pair.clone();
    loop {
        let mut grown = false;
        for nn in ctx.cluster_indecomposables() {
            if cur.rigid.contains(&nn) {
                continue;
            }
            if ctx.is_projective(nn) && cur.support.contains(&nn.b) {
                continue;
            }
            let mut cand = cur.clone();
            cand.rigid.insert(nn);
            if is_rigid_pair_oracle(ctx, &cand)? {
                cur = cand;
                grown = true;
            }
        }
        for q in 1..=ctx.n() {
            if cur.support.contains(&q) || cur.rigid.contains(&ctx.projective(q)?) {
                continue;
            }
            let mut cand = cur.clone();
            cand.support.insert(q);
            if is_rigid_pair_oracle(ctx, &cand)? {
                cur = cand;
                grown = true;
            }
        }
        if !grown {
            return Ok(cur);
        }
    }
}
