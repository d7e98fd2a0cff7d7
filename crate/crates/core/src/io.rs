//! Serialisation: versioned JSON schemas for contexts, pairs, torsion classes
//! and complexes, plus DOT and TSV exports. All output is deterministic for a
//! fixed input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, IntervalModule, Pos};
use crate::mutation::MutationGraph;
use crate::rigid::CPair;
use crate::silting::ProjComplex;
use crate::torsion::{Shape, TorsionClass, TorsionLattice};
use crate::{Error, Result};

pub const SCHEMA: &str = "tau-d-lab/1";

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ContextJson {
    pub schema: String,
    pub n: Pos,
    pub l: Pos,
    pub d: Pos,
    pub p: usize,
    pub s: Vec<Pos>,
}

pub fn context_json(ctx: &Algebra) -> ContextJson {
    ContextJson {
        schema: SCHEMA.into(),
        n: ctx.n(),
        l: ctx.l(),
        d: ctx.d(),
        p: ctx.p(),
        s: ctx.s_all().to_vec(),
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PairJson {
    pub schema: String,
    pub rigid: Vec<[Pos; 2]>,
    pub support: Vec<Pos>,
}

pub fn pair_json(pair: &CPair) -> PairJson {
    PairJson {
        schema: SCHEMA.into(),
        rigid: pair.rigid.iter().map(|m| [m.a, m.b]).collect(),
        support: pair.support.iter().copied().collect(),
    }
}

pub fn pair_from_json(json: &PairJson) -> Result<CPair> {
    let mut rigid = std::collections::BTreeSet::new();
    for &[a, b] in &json.rigid {
        if a > b {
            return Err(Error::MalformedPair(format!(
                "interval [{a},{b}] has a > b"
            )));
        }
        rigid.insert(IntervalModule::new(a, b));
    }
    Ok(CPair {
        rigid,
        support: json.support.iter().copied().collect(),
    })
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ShapeJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Pos>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TorsionClassJson {
    pub schema: String,
    pub shapes: Vec<ShapeJson>,
    pub q: Vec<Pos>,
}

pub fn shape_json(shape: Shape) -> ShapeJson {
    match shape {
        Shape::Zero => ShapeJson {
            kind: "zero".into(),
            h: None,
        },
        Shape::Down(h) => ShapeJson {
            kind: "down".into(),
            h: Some(h),
        },
        Shape::Up(h) => ShapeJson {
            kind: "up".into(),
            h: Some(h),
        },
        Shape::Full => ShapeJson {
            kind: "full".into(),
            h: None,
        },
    }
}

pub fn torsion_class_json(class: &TorsionClass) -> TorsionClassJson {
    TorsionClassJson {
        schema: SCHEMA.into(),
        shapes: class.shapes.iter().map(|&s| shape_json(s)).collect(),
        q: class.q_set.iter().copied().collect(),
    }
}

pub fn shape_from_json(json: &ShapeJson) -> Result<Shape> {
    match (json.kind.as_str(), json.h) {
        ("zero", None) => Ok(Shape::Zero),
        ("full", None) => Ok(Shape::Full),
        ("down", Some(h)) => Ok(Shape::Down(h)),
        ("up", Some(h)) => Ok(Shape::Up(h)),
        _ => Err(Error::MalformedPath(format!(
            "bad shape {:?}/{:?}",
            json.kind, json.h
        ))),
    }
}

pub fn torsion_class_from_json(json: &TorsionClassJson) -> Result<TorsionClass> {
    Ok(TorsionClass {
        shapes: json
            .shapes
            .iter()
            .map(shape_from_json)
            .collect::<Result<_>>()?,
        q_set: json.q.iter().copied().collect(),
    })
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ComplexJson {
    pub schema: String,
    /// degree (as a string key) -> projective indices
    pub terms: BTreeMap<String, Vec<Pos>>,
    /// source degree -> [row, col, scalar] triples; scalars are canonical
    /// rational strings
    pub diff: BTreeMap<String, Vec<(usize, usize, String)>>,
}

pub fn complex_json(cx: &ProjComplex) -> ComplexJson {
    let fmt_q = |q: Ratio<i64>| {
        if q.denom().is_one() {
            format!("{}", q.numer())
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }
    };
    ComplexJson {
        schema: SCHEMA.into(),
        terms: cx
            .terms
            .iter()
            .map(|(&t, v)| (t.to_string(), v.clone()))
            .collect(),
        diff: cx
            .diff
            .iter()
            .map(|(&t, v)| {
                (
                    t.to_string(),
                    v.iter().map(|&(r, c, s)| (r, c, fmt_q(s))).collect(),
                )
            })
            .collect(),
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct EdgeListJson {
    pub schema: String,
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Compact signature of a pair for graph labels: diagonal summands plus the
/// projective index sets.
pub fn pair_signature(ctx: &Algebra, pair: &CPair) -> String {
    let mut diag = Vec::new();
    let mut proj = Vec::new();
    for &x in &pair.rigid {
        if ctx.is_projective(x) {
            proj.push(x.b.to_string());
        } else {
            diag.push(format!("{}..{}", x.a, x.b));
        }
    }
    let support: Vec<String> = pair.support.iter().map(Pos::to_string).collect();
    format!(
        "M[{} | P{{{}}}] P[{}]",
        diag.join(","),
        proj.join(","),
        support.join(",")
    )
}

pub fn mutation_graph_dot(ctx: &Algebra, graph: &MutationGraph) -> String {
    let mut out = String::from("graph mutation {\n");
    for (idx, pair) in graph.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{idx} [label=\"{}\"];", pair_signature(ctx, pair));
    }
    for &(u, v) in &graph.edges {
        let _ = writeln!(out, "  v{u} -- v{v};");
    }
    out.push_str("}\n");
    out
}

pub fn mutation_graph_edges_json(graph: &MutationGraph) -> EdgeListJson {
    EdgeListJson {
        schema: SCHEMA.into(),
        nodes: graph.vertices.len(),
        edges: graph.edges.iter().copied().collect(),
    }
}

pub fn lattice_dot(ctx: &Algebra, lattice: &TorsionLattice) -> String {
    let mut out = String::from("digraph torsion_lattice {\n  rankdir=BT;\n");
    for (idx, class) in lattice.classes.iter().enumerate() {
        let size = lattice.member_sets[idx].len();
        let shapes: Vec<String> = class
            .shapes
            .iter()
            .map(|&s| {
                let sj = shape_json(s);
                match sj.h {
                    Some(h) => format!("{}{}", sj.kind, h),
                    None => sj.kind,
                }
            })
            .collect();
        let _ = writeln!(out, "  c{idx} [label=\"{} |{}|\"];", shapes.join(","), size);
    }
    for &(lo, hi) in &lattice.cover_edges {
        let _ = writeln!(out, "  c{lo} -> c{hi};");
    }
    let _ = ctx;
    out.push_str("}\n");
    out
}

pub fn lattice_edges_json(lattice: &TorsionLattice) -> EdgeListJson {
    EdgeListJson {
        schema: SCHEMA.into(),
        nodes: lattice.classes.len(),
        edges: lattice.cover_edges.clone(),
    }
}

/// One suite of enumerated counts versus closed formulas, as TSV. The two
/// closed formulas apply to `p = 2` (all valid parameters) and to `p = 4`
/// with `(d > 2 and l > 2)` or `(d = 2 and l = 3)`; anything else reports
/// `n/a`.
pub fn counts_tsv(ctx: &Algebra, maximal: usize, torsion: Option<usize>) -> String {
    let (n, l, _d, p) = (ctx.n(), ctx.l(), ctx.d(), ctx.p());
    let fm = summand_maximal_formula(ctx);
    let ft = torsion_formula(ctx);
    let fmt = |v: Option<i64>| v.map_or("n/a".to_string(), |x| x.to_string());
    let fmt_u = |v: Option<usize>| v.map_or("n/a".to_string(), |x| x.to_string());
    let mut out = String::from("quantity\tenumerated\tformula\n");
    let _ = writeln!(out, "summand_maximal\t{maximal}\t{}", fmt(fm));
    let _ = writeln!(out, "torsion_classes\t{}\t{}", fmt_u(torsion), fmt(ft));
    let _ = writeln!(out, "params\tn={n} l={l} p={p}\t");
    out
}

pub fn summand_maximal_formula(ctx: &Algebra) -> Option<i64> {
    let (n, l, d, p) = (ctx.n(), ctx.l(), ctx.d(), ctx.p());
    if p == 2 {
        return Some(2 * n + l - 1);
    }
    if p == 4 && ((d > 2 && l > 2) || (d == 2 && l == 3)) {
        let v = -19 * l.pow(3) + 18 * l.pow(2) * n + 144 * l.pow(2)
            - 6 * l * n.pow(2)
            - 36 * l * n
            - 126 * l
            + 2 * n.pow(3)
            + 36 * n.pow(2)
            + 72 * n
            - 135;
        debug_assert_eq!(v % 27, 0);
        return Some(v / 27);
    }
    None
}

pub fn torsion_formula(ctx: &Algebra) -> Option<i64> {
    let (n, l, d, p) = (ctx.n(), ctx.l(), ctx.d(), ctx.p());
    if p == 2 {
        return Some(n + l + 1);
    }
    if p == 4 && ((d > 2 && l > 2) || (d == 2 && l == 3)) {
        let v = 17 * l.pow(2) + 10 * l * n + 57 * l + 2 * n.pow(2) + 30 * n + 18;
        debug_assert_eq!(v % 18, 0);
        return Some(v / 18);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{m, resolve_params};

    #[test]
    fn pair_roundtrip() {
        let pair = CPair::new([m(9, 9), m(15, 16)], [1, 2, 3]);
        let json = pair_json(&pair);
        let text = serde_json::to_string(&json).unwrap();
        let back: PairJson = serde_json::from_str(&text).unwrap();
        assert_eq!(pair_from_json(&back).unwrap(), pair);
    }

    #[test]
    fn torsion_class_roundtrip_reverifies() {
        let a = resolve_params(9, 3, 2).unwrap().unwrap();
        let oracle = crate::torsion::TorsionOracle::new(&a).unwrap();
        for class in crate::torsion::enumerate_torsion(&a).unwrap() {
            let text = serde_json::to_string(&torsion_class_json(&class)).unwrap();
            let parsed: TorsionClassJson = serde_json::from_str(&text).unwrap();
            let back = torsion_class_from_json(&parsed).unwrap();
            assert_eq!(back, class);
            assert!(oracle.check(&back.members(&a)).ok);
        }
    }

    #[test]
    fn formulas_evaluate() {
        let a = resolve_params(9, 3, 2).unwrap().unwrap();
        assert_eq!(summand_maximal_formula(&a), Some(160));
        assert_eq!(torsion_formula(&a), Some(58));
        let b = resolve_params(4, 3, 2).unwrap().unwrap();
        assert_eq!(summand_maximal_formula(&b), Some(10));
        assert_eq!(torsion_formula(&b), Some(8));
        let c = resolve_params(18, 3, 4).unwrap().unwrap();
        assert_eq!(summand_maximal_formula(&c), Some(742));
        // guard: p = 4 with l = 2 is outside both formulas
        let d = resolve_params(10, 2, 3).unwrap().unwrap();
        assert_eq!(d.p(), 4);
        assert_eq!(summand_maximal_formula(&d), None);
    }

    #[test]
    fn context_json_shape() {
        let a = resolve_params(9, 3, 2).unwrap().unwrap();
        let text = serde_json::to_string(&context_json(&a)).unwrap();
        assert!(text.contains("\"schema\":\"tau-d-lab/1\""));
        assert!(text.contains("\"s\":[1,4,6,9]"));
    }
}
