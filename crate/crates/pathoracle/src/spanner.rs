//! Greedy multiplicative spanners and composition with the multi-level
//! oracle.
//!
//! The greedy construction scans edges in nondecreasing weight and keeps an
//! edge only when the spanner built so far cannot connect its endpoints
//! within `(2r - 1)` times its weight. Running the multi-level oracle on the
//! spanner multiplies the two stretch factors; spanner walks are host walks
//! because kept edges are a subset of the host's.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{OracleError, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::multilevel::{self, MultiLevelOracle, Variant};
use crate::scalar::Scalar;
use crate::OracleAnswer;

/// A multiplicative `(2r - 1)`-spanner as an edge subset of its host.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpannerGraph<S> {
    pub n: usize,
    pub r: usize,
    /// kept edges as `(u, v, w)`, host weights preserved
    pub edges: Vec<(VertexId, VertexId, S)>,
}

impl<S: Scalar> SpannerGraph<S> {
    /// Multiplicative stretch `s = 2r - 1`.
    pub fn stretch(&self) -> usize {
        2 * self.r - 1
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Materializes the spanner as a standalone graph (fresh tie-break keys).
    pub fn to_graph(&self, key_seed: u64) -> Result<WeightedGraph<S>> {
        WeightedGraph::from_edge_list(self.n, self.edges.iter().copied(), key_seed)
    }

    /// Checks edge-subset containment and weight equality against a host.
    pub fn validate_against(&self, host: &WeightedGraph<S>) -> Result<()> {
        if self.n != host.n() {
            return Err(OracleError::Format(format!(
                "spanner has n = {}, host has n = {}",
                self.n,
                host.n()
            )));
        }
        for &(u, v, w) in &self.edges {
            match host.edge_between(u, v) {
                Some(e) if e.w == w => {}
                Some(e) => {
                    return Err(OracleError::Format(format!(
                        "spanner edge ({u}, {v}) weight {w} differs from host weight {}",
                        e.w
                    )))
                }
                None => {
                    return Err(OracleError::Format(format!(
                        "spanner edge ({u}, {v}) absent from host"
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Distance between two vertices in a growing adjacency structure, cut off
/// at `limit`; `None` means strictly farther than `limit` (or disconnected).
fn bounded_dist<S: Scalar>(
    adj: &[Vec<(VertexId, S)>],
    u: VertexId,
    v: VertexId,
    limit: S,
) -> Option<S> {
    struct Item<S>(S, VertexId);
    impl<S: Scalar> PartialEq for Item<S> {
        fn eq(&self, other: &Self) -> bool {
            self.0 == other.0 && self.1 == other.1
        }
    }
    impl<S: Scalar> Eq for Item<S> {}
    impl<S: Scalar> Ord for Item<S> {
        fn cmp(&self, other: &Self) -> Ordering {
            other
                .0
                .partial_cmp(&self.0)
                .unwrap()
                .then(other.1.cmp(&self.1))
        }
    }
    impl<S: Scalar> PartialOrd for Item<S> {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    let mut dist: std::collections::HashMap<VertexId, S> = std::collections::HashMap::new();
    let mut heap = BinaryHeap::new();
    dist.insert(u, S::zero());
    heap.push(Item(S::zero(), u));
    while let Some(Item(d, x)) = heap.pop() {
        if d > dist[&x] {
            continue;
        }
        if x == v {
            return Some(d);
        }
        for &(y, w) in &adj[x as usize] {
            let nd = d + w;
            if nd > limit {
                continue;
            }
            if dist.get(&y).map_or(true, |&old| nd < old) {
                dist.insert(y, nd);
                heap.push(Item(nd, y));
            }
        }
    }
    None
}

/// Classic greedy `(2r - 1)`-spanner.
pub fn greedy_spanner<S: Scalar>(g: &WeightedGraph<S>, r: usize) -> Result<SpannerGraph<S>> {
    if r < 1 {
        return Err(OracleError::Parameter("spanner requires r >= 1".into()));
    }
    let s = S::from_usize(2 * r - 1).unwrap();
    let mut order: Vec<u32> = (0..g.m() as u32).collect();
    order.sort_by(|&a, &b| {
        g.edge(a)
            .w
            .partial_cmp(&g.edge(b).w)
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut adj: Vec<Vec<(VertexId, S)>> = vec![Vec::new(); g.n()];
    let mut edges = Vec::new();
    for id in order {
        let e = g.edge(id);
        let limit = s * e.w;
        let keep = match bounded_dist(&adj, e.u, e.v, limit) {
            Some(d) => d > limit,
            None => true,
        };
        if keep {
            adj[e.u as usize].push((e.v, e.w));
            adj[e.v as usize].push((e.u, e.w));
            edges.push((e.u, e.v, e.w));
        }
    }
    Ok(SpannerGraph {
        n: g.n(),
        r,
        edges,
    })
}

/// Dropped-edge certificate check: every host edge must be spanned within
/// stretch `2r - 1`. Returns the number of violating edges.
pub fn certificate_violations<S: Scalar>(
    host: &WeightedGraph<S>,
    spanner: &SpannerGraph<S>,
) -> usize {
    let s = S::from_usize(spanner.stretch()).unwrap();
    let mut adj: Vec<Vec<(VertexId, S)>> = vec![Vec::new(); spanner.n];
    for &(u, v, w) in &spanner.edges {
        adj[u as usize].push((v, w));
        adj[v as usize].push((u, w));
    }
    host.edges()
        .iter()
        .filter(|e| {
            let limit = s * e.w;
            bounded_dist(&adj, e.u, e.v, limit).is_none()
        })
        .count()
}

/// Parses an externally built spanner from the graph TSV format and
/// validates it as an edge subset of `host`.
pub fn load_external_spanner<S: Scalar>(
    host: &WeightedGraph<S>,
    r: usize,
    input: &mut impl BufRead,
) -> Result<SpannerGraph<S>> {
    let g = WeightedGraph::<S>::read_tsv(input)?;
    let spanner = SpannerGraph {
        n: g.n(),
        r,
        edges: g.edges().iter().map(|e| (e.u, e.v, e.w)).collect(),
    };
    spanner.validate_against(host)?;
    Ok(spanner)
}

/// The multi-level oracle built on a spanner of the host.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComposedOracle<S> {
    pub spanner: SpannerGraph<S>,
    pub inner: MultiLevelOracle<S>,
}

/// Greedy spanner followed by a standard-variant multi-level build on it.
pub fn build_composed<S: Scalar>(
    g: &WeightedGraph<S>,
    r: usize,
    h: usize,
    seed: u64,
) -> Result<ComposedOracle<S>> {
    let spanner = greedy_spanner(g, r)?;
    build_composed_from(spanner, h, seed)
}

/// Composition over any supplied spanner (greedy or external).
pub fn build_composed_from<S: Scalar>(
    spanner: SpannerGraph<S>,
    h: usize,
    seed: u64,
) -> Result<ComposedOracle<S>> {
    let graph = spanner.to_graph(seed ^ 0xa076_1d64_78bd_642f)?;
    let inner = multilevel::build_multilevel(&graph, h, Variant::Standard, seed)?;
    Ok(ComposedOracle { spanner, inner })
}

impl<S: Scalar> ComposedOracle<S> {
    /// Combined bound `(2r - 1) * (6 * 7^{h-1} - 1)`.
    pub fn stretch_bound(&self) -> f64 {
        self.spanner.stretch() as f64 * self.inner.stretch_bound()
    }

    /// Sharpened per-answer bound from the inner meet level.
    pub fn stretch_bound_at(&self, p: usize) -> f64 {
        self.spanner.stretch() as f64 * MultiLevelOracle::<S>::stretch_bound_at(p)
    }

    pub fn query(&self, u: VertexId, v: VertexId) -> Result<OracleAnswer<S>> {
        self.inner.query(u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphModel, WeightMode};
    use crate::testutil;

    fn c5() -> WeightedGraph<f64> {
        generate_graph(GraphModel::Cycle, 5, WeightMode::Unit, 0).unwrap()
    }

    fn gnm(n: usize, m: usize, seed: u64) -> WeightedGraph<f64> {
        generate_graph(
            GraphModel::Gnm { m },
            n,
            WeightMode::UniformInt { lo: 1, hi: 100 },
            seed,
        )
        .unwrap()
    }

    #[test]
    fn c5_hand_cases() {
        // s = 3: the last edge sees spanner distance 4 > 3, all 5 kept
        let s2 = greedy_spanner(&c5(), 2).unwrap();
        assert_eq!(s2.len(), 5);
        // s = 7: the last edge sees 4 <= 7 and is dropped
        let s4 = greedy_spanner(&c5(), 4).unwrap();
        assert_eq!(s4.len(), 4);
    }

    #[test]
    fn r1_keeps_tree_edges() {
        let tree: WeightedGraph<f64> =
            generate_graph(GraphModel::Path, 16, WeightMode::Unit, 0).unwrap();
        let s = greedy_spanner(&tree, 1).unwrap();
        assert_eq!(s.len(), 15);
    }

    #[test]
    fn certificate_holds_on_random_graphs() {
        for (seed, r) in [(1u64, 2usize), (2, 3), (3, 5)] {
            let g = gnm(128, 512, seed);
            let s = greedy_spanner(&g, r).unwrap();
            assert_eq!(certificate_violations(&g, &s), 0);
            s.validate_against(&g).unwrap();
            // all-pairs stretch bound follows from the per-edge certificate
            let sg = s.to_graph(7).unwrap();
            let dh = testutil::apsp(&g);
            let ds = testutil::apsp(&sg);
            let bound = s.stretch() as f64;
            for u in 0..128 {
                for v in 0..128 {
                    assert!(ds[u][v] <= bound * dh[u][v] + 1e-9);
                }
            }
        }
    }

    #[test]
    fn composed_tree_returns_tree_paths() {
        let tree: WeightedGraph<f64> =
            generate_graph(GraphModel::Path, 32, WeightMode::Unit, 0).unwrap();
        let o = build_composed(&tree, 2, 2, 5).unwrap();
        // ladder concatenation may backtrack on a tree; the answer is still
        // a valid host walk within the composed bound
        let a = o.query(0, 31).unwrap();
        tree.validate_walk(&a.walk.vertices, a.walk.length).unwrap();
        assert!(a.walk.length >= 31.0);
        assert!(a.walk.length <= o.stretch_bound_at(a.meet_level) * 31.0);
        let same = o.query(7, 7).unwrap();
        assert_eq!(same.walk.vertices, vec![7]);
    }

    #[test]
    fn composed_stretch_on_random_graph() {
        let g = gnm(512, 2048, 3);
        let d = testutil::apsp(&g);
        let o = build_composed(&g, 3, 2, 17).unwrap();
        assert_eq!(o.stretch_bound(), 5.0 * 41.0);
        for i in 0..200u32 {
            let (u, v) = ((i * 7 + 2) % 512, (i * 13 + 5) % 512);
            if u == v {
                continue;
            }
            let a = o.query(u, v).unwrap();
            // answers must be valid walks in the HOST graph
            g.validate_walk(&a.walk.vertices, a.walk.length).unwrap();
            let exact = d[u as usize][v as usize];
            assert!(a.walk.length <= o.stretch_bound_at(a.meet_level) * exact);
        }
    }

    #[test]
    fn external_spanner_loader_validates() {
        let g = c5();
        let s = greedy_spanner(&g, 4).unwrap();
        let sg = s.to_graph(1).unwrap();
        let mut buf = Vec::new();
        sg.write_tsv(&mut buf).unwrap();
        let loaded = load_external_spanner(&g, 4, &mut buf.as_slice()).unwrap();
        assert_eq!(loaded.len(), 4);
        // an edge not in the host must be rejected
        let bogus = "5 1\n0 2 1\n";
        assert!(load_external_spanner(&g, 2, &mut bogus.as_bytes()).is_err());
        // wrong weight must be rejected
        let wrong = "5 1\n0 1 2\n";
        assert!(load_external_spanner(&g, 2, &mut wrong.as_bytes()).is_err());
    }

    #[test]
    fn rejects_bad_r() {
        assert!(greedy_spanner(&c5(), 0).is_err());
    }
}
