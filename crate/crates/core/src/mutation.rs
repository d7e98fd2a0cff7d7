//! The mutation graph of summand-maximal pairs: vertices are the pairs, and
//! two pairs are adjacent when they share a common sub-pair with one summand
//! fewer than the total.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::algebra::{Algebra, IntervalModule, Pos};
use crate::rigid::{
    classify_admissible, enumerate_summand_maximal, profile, AdmissibleType, CPair,
};
use crate::Result;

#[derive(Clone, Debug)]
pub struct MutationGraph {
    /// summand-maximal pairs in canonical order
    pub vertices: Vec<CPair>,
    /// undirected edges as index pairs `(i, j)` with `i < j`
    pub edges: BTreeSet<(usize, usize)>,
}

/// A summand of a pair, keeping track of which side it sits on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Typed {
    Rigid(IntervalModule),
    Support(Pos),
}

fn typed_summands(pair: &CPair) -> Vec<Typed> {
    let mut out: Vec<Typed> = pair.rigid.iter().map(|&x| Typed::Rigid(x)).collect();
    out.extend(pair.support.iter().map(|&b| Typed::Support(b)));
    out.sort();
    out
}

/// Builds the graph over the summand-maximal pairs: an edge joins two pairs
/// exactly when removing one summand from each leaves the same sub-pair.
pub fn build_mutation_graph(ctx: &Algebra) -> Result<MutationGraph> {
    let vertices = enumerate_summand_maximal(ctx)?;
    let mut buckets: BTreeMap<Vec<Typed>, Vec<usize>> = BTreeMap::new();
    for (v, pair) in vertices.iter().enumerate() {
        let all = typed_summands(pair);
        for skip in 0..all.len() {
            let mut rest = all.clone();
            rest.remove(skip);
            buckets.entry(rest).or_default().push(v);
        }
    }
    let mut edges = BTreeSet::new();
    for group in buckets.values() {
        for (a, &u) in group.iter().enumerate() {
            for &w in &group[a + 1..] {
                if u != w {
                    edges.insert((u.min(w), u.max(w)));
                }
            }
        }
    }
    Ok(MutationGraph { vertices, edges })
}

#[derive(Clone, Debug)]
pub struct GraphStats {
    pub connected: bool,
    pub degree_histogram: BTreeMap<usize, usize>,
    /// max-degree vertices with their diagonal partition and run types
    pub max_degree_vertices: Vec<MaxDegreeVertex>,
}

#[derive(Clone, Debug)]
pub struct MaxDegreeVertex {
    pub index: usize,
    pub diagonal_partition: Vec<(usize, usize)>,
    pub run_types: Vec<Option<AdmissibleType>>,
}

pub fn graph_stats(ctx: &Algebra, graph: &MutationGraph) -> Result<GraphStats> {
    let n = graph.vertices.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &graph.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let connected = if n == 0 {
        true
    } else {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    };
    let mut degree_histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for a in &adj {
        *degree_histogram.entry(a.len()).or_insert(0) += 1;
    }
    let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
    let mut max_degree_vertices = Vec::new();
    for (idx, a) in adj.iter().enumerate() {
        if a.len() != max_degree {
            continue;
        }
        let pair = &graph.vertices[idx];
        let prof = profile(ctx, pair)?;
        let runs = prof.runs();
        let run_types = runs
            .iter()
            .map(|&run| classify_admissible(ctx, pair, run))
            .collect::<Result<Vec<_>>>()?;
        max_degree_vertices.push(MaxDegreeVertex {
            index: idx,
            diagonal_partition: runs,
            run_types,
        });
    }
    Ok(GraphStats {
        connected,
        degree_histogram,
        max_degree_vertices,
    })
}

/// True when the graph is a single cycle through all vertices.
pub fn is_single_cycle(graph: &MutationGraph) -> bool {
    let n = graph.vertices.len();
    if n < 3 || graph.edges.len() != n {
        return false;
    }
    let mut degree = vec![0usize; n];
    for &(u, v) in &graph.edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    if degree.iter().any(|&d| d != 2) {
        return false;
    }
    // connected 2-regular graph with n edges is one cycle
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &graph.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    reached == n
}
