//! Exact shortest-path machinery with canonical tie-breaking, plus truncated
//! ball exploration.
//!
//! Tie-breaking: each edge carries a random 64-bit key; paths are compared by
//! `(distance, wrapping sum of keys)` lexicographically. This makes the
//! shortest path between any two vertices unique with overwhelming
//! probability, and unique shortest paths have the subpath-sharing property
//! the pair oracles rely on: any contiguous subpath of a canonical path is
//! itself the canonical path between its endpoints.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{OracleError, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::scalar::Scalar;

/// A walk through the graph with its exact accumulated length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathWalk<S> {
    pub vertices: Vec<VertexId>,
    pub length: S,
    pub hop_count: usize,
}

impl<S: Scalar> PathWalk<S> {
    pub fn single(v: VertexId) -> Self {
        Self {
            vertices: vec![v],
            length: S::zero(),
            hop_count: 0,
        }
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self {
            vertices,
            length: self.length,
            hop_count: self.hop_count,
        }
    }

    /// Appends `other` onto this walk; endpoints must match.
    pub fn extend_with(&mut self, other: &PathWalk<S>) {
        assert_eq!(self.end(), other.start(), "concatenation endpoints differ");
        self.vertices.extend_from_slice(&other.vertices[1..]);
        self.length += other.length;
        self.hop_count += other.hop_count;
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct NodeEntry<S> {
    dist: S,
    keysum: u64,
    pred: Option<EdgeId>,
}

/// Heap item ordered as a min-heap on `(dist, root, keysum, vertex)`.
#[derive(Debug, Clone, Copy)]
struct HeapItem<S> {
    dist: S,
    root: VertexId,
    keysum: u64,
    vertex: VertexId,
}

impl<S: Scalar> PartialEq for HeapItem<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<S: Scalar> Eq for HeapItem<S> {}
impl<S: Scalar> Ord for HeapItem<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap()
            .then(other.root.cmp(&self.root))
            .then(other.keysum.cmp(&self.keysum))
            .then(other.vertex.cmp(&self.vertex))
    }
}
impl<S: Scalar> PartialOrd for HeapItem<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn better<S: Scalar>(dist: S, keysum: u64, than: &NodeEntry<S>) -> bool {
    dist < than.dist || (dist == than.dist && keysum < than.keysum)
}

/// A full canonical shortest-path tree from one source.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FullTree<S> {
    dist: Vec<S>,
    keysum: Vec<u64>,
    pred: Vec<Option<EdgeId>>,
}

impl<S: Scalar> FullTree<S> {
    /// Distance from the tree's source; `+inf` when unreachable.
    pub fn dist(&self, v: VertexId) -> S {
        self.dist[v as usize]
    }
}

/// Canonical single-source shortest paths over the whole graph.
/// Unreachable vertices get `dist = +inf`, `pred = None`.
pub fn dijkstra_canonical<S: Scalar>(g: &WeightedGraph<S>, source: VertexId) -> FullTree<S> {
    let n = g.n();
    let mut dist = vec![S::infinity(); n];
    let mut keysum = vec![u64::MAX; n];
    let mut pred: Vec<Option<EdgeId>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source as usize] = S::zero();
    keysum[source as usize] = 0;
    heap.push(HeapItem {
        dist: S::zero(),
        root: source,
        keysum: 0,
        vertex: source,
    });
    while let Some(item) = heap.pop() {
        let x = item.vertex as usize;
        if settled[x] {
            continue;
        }
        settled[x] = true;
        for a in g.adj(item.vertex) {
            let y = a.to as usize;
            if settled[y] {
                continue;
            }
            let nd = item.dist + a.w;
            let nk = item.keysum.wrapping_add(g.edge(a.edge).key);
            let incumbent = NodeEntry {
                dist: dist[y],
                keysum: keysum[y],
                pred: pred[y],
            };
            if better(nd, nk, &incumbent) {
                dist[y] = nd;
                keysum[y] = nk;
                pred[y] = Some(a.edge);
                heap.push(HeapItem {
                    dist: nd,
                    root: source,
                    keysum: nk,
                    vertex: a.to,
                });
            }
        }
    }
    FullTree { dist, keysum, pred }
}

/// A forest of canonical shortest-path trees rooted at a vertex set.
///
/// Roots are compared before keysums so that, among equidistant roots, the
/// smallest root id wins the vertex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiSourceForest<S> {
    pub dist: Vec<S>,
    pub root: Vec<VertexId>,
    pub pred: Vec<Option<EdgeId>>,
}

pub fn multi_source_forest<S: Scalar>(
    g: &WeightedGraph<S>,
    sources: &[VertexId],
) -> MultiSourceForest<S> {
    let n = g.n();
    let mut dist = vec![S::infinity(); n];
    let mut keysum = vec![u64::MAX; n];
    let mut root = vec![VertexId::MAX; n];
    let mut pred: Vec<Option<EdgeId>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        let si = s as usize;
        if S::zero() < dist[si] || (S::zero() == dist[si] && s < root[si]) {
            dist[si] = S::zero();
            keysum[si] = 0;
            root[si] = s;
            heap.push(HeapItem {
                dist: S::zero(),
                root: s,
                keysum: 0,
                vertex: s,
            });
        }
    }
    while let Some(item) = heap.pop() {
        let x = item.vertex as usize;
        if settled[x] {
            continue;
        }
        // stale entries: a better (dist, root, keysum) label may have landed
        if dist[x] != item.dist || root[x] != item.root || keysum[x] != item.keysum {
            continue;
        }
        settled[x] = true;
        for a in g.adj(item.vertex) {
            let y = a.to as usize;
            if settled[y] {
                continue;
            }
            let nd = item.dist + a.w;
            let nk = item.keysum.wrapping_add(g.edge(a.edge).key);
            let improves = nd < dist[y]
                || (nd == dist[y]
                    && (item.root < root[y] || (item.root == root[y] && nk < keysum[y])));
            if improves {
                dist[y] = nd;
                keysum[y] = nk;
                root[y] = item.root;
                pred[y] = Some(a.edge);
                heap.push(HeapItem {
                    dist: nd,
                    root: item.root,
                    keysum: nk,
                    vertex: a.to,
                });
            }
        }
    }
    MultiSourceForest { dist, root, pred }
}

impl<S: Scalar> MultiSourceForest<S> {
    /// Walk from `v` down to its root, returned as `v -> root`.
    pub fn path_to_root(&self, g: &WeightedGraph<S>, v: VertexId) -> PathWalk<S> {
        let mut vertices = vec![v];
        let mut length = S::zero();
        let mut cur = v;
        while let Some(eid) = self.pred[cur as usize] {
            let e = g.edge(eid);
            let nxt = e.other(cur);
            length += e.w;
            vertices.push(nxt);
            cur = nxt;
        }
        let hop_count = vertices.len() - 1;
        PathWalk {
            vertices,
            length,
            hop_count,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
enum Tree<S> {
    Full(FullTree<S>),
    Sparse(HashMap<VertexId, NodeEntry<S>>),
}

/// Per-source canonical shortest-path trees with globally consistent
/// tie-breaking.
///
/// Because the tie-break order is a property of the graph (not of any one
/// tree), paths extracted from different trees agree edge-for-edge on shared
/// vertex pairs, and trees may be truncated to a radius without losing
/// consistency.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CanonicalPathSystem<S> {
    trees: HashMap<VertexId, Tree<S>>,
}

impl<S: Scalar> CanonicalPathSystem<S> {
    pub fn new() -> Self {
        Self {
            trees: HashMap::new(),
        }
    }

    pub fn has_source(&self, s: VertexId) -> bool {
        self.trees.contains_key(&s)
    }

    pub fn sources(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.trees.keys().copied()
    }

    /// Runs a full canonical Dijkstra from `s` and stores the tree.
    pub fn add_full_source(&mut self, g: &WeightedGraph<S>, s: VertexId) {
        if !self.has_source(s) {
            self.trees.insert(s, Tree::Full(dijkstra_canonical(g, s)));
        }
    }

    pub fn add_full_tree(&mut self, s: VertexId, tree: FullTree<S>) {
        self.trees.insert(s, Tree::Full(tree));
    }

    /// Runs a canonical Dijkstra from `s` truncated to the open ball of the
    /// given radius, stores the sparse tree, and returns the explored
    /// vertices `(v, d(s, v))` in discovery order (all with `d < radius`).
    pub fn add_truncated_source(
        &mut self,
        g: &WeightedGraph<S>,
        s: VertexId,
        radius: S,
    ) -> Vec<(VertexId, S)> {
        let mut map: HashMap<VertexId, NodeEntry<S>> = HashMap::new();
        let mut settled: HashMap<VertexId, ()> = HashMap::new();
        let mut explored = Vec::new();
        let mut heap = BinaryHeap::new();
        map.insert(
            s,
            NodeEntry {
                dist: S::zero(),
                keysum: 0,
                pred: None,
            },
        );
        heap.push(HeapItem {
            dist: S::zero(),
            root: s,
            keysum: 0,
            vertex: s,
        });
        while let Some(item) = heap.pop() {
            if settled.contains_key(&item.vertex) {
                continue;
            }
            if item.dist >= radius {
                break;
            }
            settled.insert(item.vertex, ());
            explored.push((item.vertex, item.dist));
            for a in g.adj(item.vertex) {
                if item.dist + a.w >= radius {
                    // adjacency is weight-sorted: nothing further fits
                    break;
                }
                if settled.contains_key(&a.to) {
                    continue;
                }
                let nd = item.dist + a.w;
                let nk = item.keysum.wrapping_add(g.edge(a.edge).key);
                let entry = map.entry(a.to).or_insert(NodeEntry {
                    dist: S::infinity(),
                    keysum: u64::MAX,
                    pred: None,
                });
                if better(nd, nk, entry) {
                    *entry = NodeEntry {
                        dist: nd,
                        keysum: nk,
                        pred: Some(a.edge),
                    };
                    heap.push(HeapItem {
                        dist: nd,
                        root: s,
                        keysum: nk,
                        vertex: a.to,
                    });
                }
            }
        }
        map.retain(|v, _| settled.contains_key(v));
        self.trees.insert(s, Tree::Sparse(map));
        explored
    }

    pub fn dist(&self, s: VertexId, v: VertexId) -> Option<S> {
        match self.trees.get(&s)? {
            Tree::Full(t) => {
                let d = t.dist[v as usize];
                d.is_finite().then_some(d)
            }
            Tree::Sparse(m) => m.get(&v).map(|e| e.dist),
        }
    }

    fn pred(&self, s: VertexId, v: VertexId) -> Option<Option<EdgeId>> {
        match self.trees.get(&s)? {
            Tree::Full(t) => t.dist[v as usize].is_finite().then(|| t.pred[v as usize]),
            Tree::Sparse(m) => m.get(&v).map(|e| e.pred),
        }
    }

    /// Extracts the canonical path `source -> target`.
    pub fn extract_path(
        &self,
        g: &WeightedGraph<S>,
        source: VertexId,
        target: VertexId,
    ) -> Result<PathWalk<S>> {
        if !self.has_source(source) {
            return Err(OracleError::Parameter(format!(
                "no tree stored for source {source}"
            )));
        }
        if source == target {
            return Ok(PathWalk::single(source));
        }
        let mut rev = vec![target];
        let mut length = S::zero();
        let mut cur = target;
        loop {
            let p = self
                .pred(source, cur)
                .ok_or(OracleError::NoPath { u: source, v: target })?;
            match p {
                None => break,
                Some(eid) => {
                    let e = g.edge(eid);
                    let nxt = e.other(cur);
                    rev.push(nxt);
                    length = length + e.w;
                    cur = nxt;
                }
            }
        }
        if cur != source {
            return Err(OracleError::NoPath { u: source, v: target });
        }
        rev.reverse();
        // recompute left-to-right so reported lengths are accumulation-order
        // reproducible
        let mut acc = S::zero();
        for pair in rev.windows(2) {
            let e = g.edge_between(pair[0], pair[1]).unwrap();
            acc += e.w;
        }
        let hop_count = rev.len() - 1;
        Ok(PathWalk {
            vertices: rev,
            length: acc,
            hop_count,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BallOutcome {
    FoundTarget,
    FoundStopper,
}

/// Result of a truncated Dijkstra exploration.
#[derive(Debug, Clone)]
pub struct BallResult<S> {
    pub outcome: BallOutcome,
    pub meeting_vertex: VertexId,
    /// Vertices settled strictly before the meeting vertex, plus the meeting
    /// vertex itself, in nondecreasing distance order.
    pub explored: Vec<(VertexId, S)>,
    pub edges_scanned: usize,
    preds: HashMap<VertexId, (VertexId, S)>,
}

impl<S: Scalar> BallResult<S> {
    /// Exact path from the search source to the meeting vertex.
    pub fn path_to_meeting(&self, source: VertexId) -> PathWalk<S> {
        let mut rev = vec![self.meeting_vertex];
        let mut cur = self.meeting_vertex;
        while cur != source {
            let &(prev, _) = &self.preds[&cur];
            rev.push(prev);
            cur = prev;
        }
        rev.reverse();
        let mut length = S::zero();
        let mut cur = source;
        for &v in rev.iter().skip(1) {
            length += self.preds[&v].1;
            cur = v;
        }
        let _ = cur;
        let hop_count = rev.len() - 1;
        PathWalk {
            vertices: rev,
            length,
            hop_count,
        }
    }
}

/// Dijkstra exploration from `source` that halts at the first settled vertex
/// in the stop set or equal to `target`.
///
/// When `radius_hint` is known (the distance to the nearest stopper), edges
/// whose tentative distance exceeds it are skipped, and remaining
/// weight-sorted incident edges of the scanned vertex are skipped with them;
/// a target settled at distance `>= radius_hint` is not counted as found, so
/// the outcome matches the strict open-ball definition even under distance
/// ties.
pub fn truncated_ball_search<S: Scalar>(
    g: &WeightedGraph<S>,
    source: VertexId,
    stop: impl Fn(VertexId) -> bool,
    target: Option<VertexId>,
    radius_hint: Option<S>,
) -> Result<BallResult<S>> {
    let mut best: HashMap<VertexId, NodeEntry<S>> = HashMap::new();
    let mut preds: HashMap<VertexId, (VertexId, S)> = HashMap::new();
    let mut settled: HashMap<VertexId, ()> = HashMap::new();
    let mut explored = Vec::new();
    let mut edges_scanned = 0usize;
    // best tentative distance to any stop-set member seen so far
    let mut bound = radius_hint;
    let mut heap = BinaryHeap::new();
    best.insert(
        source,
        NodeEntry {
            dist: S::zero(),
            keysum: 0,
            pred: None,
        },
    );
    heap.push(HeapItem {
        dist: S::zero(),
        root: source,
        keysum: 0,
        vertex: source,
    });
    while let Some(item) = heap.pop() {
        let x = item.vertex;
        if settled.contains_key(&x) {
            continue;
        }
        let within = radius_hint.map_or(true, |r| item.dist < r);
        if target == Some(x) && within {
            explored.push((x, item.dist));
            return Ok(BallResult {
                outcome: BallOutcome::FoundTarget,
                meeting_vertex: x,
                explored,
                edges_scanned,
                preds,
            });
        }
        if stop(x) {
            explored.push((x, item.dist));
            return Ok(BallResult {
                outcome: BallOutcome::FoundStopper,
                meeting_vertex: x,
                explored,
                edges_scanned,
                preds,
            });
        }
        if !within {
            // target tied with the stopper distance: not in the open ball
            continue;
        }
        settled.insert(x, ());
        explored.push((x, item.dist));
        for a in g.adj(x) {
            edges_scanned += 1;
            let nd = item.dist + a.w;
            if let Some(b) = bound {
                if nd > b {
                    // weight-sorted adjacency: every remaining edge is at
                    // least as heavy
                    break;
                }
            }
            if settled.contains_key(&a.to) {
                continue;
            }
            let nk = item.keysum.wrapping_add(g.edge(a.edge).key);
            let entry = best.entry(a.to).or_insert(NodeEntry {
                dist: S::infinity(),
                keysum: u64::MAX,
                pred: None,
            });
            if better(nd, nk, entry) {
                *entry = NodeEntry {
                    dist: nd,
                    keysum: nk,
                    pred: Some(a.edge),
                };
                preds.insert(a.to, (x, a.w));
                if stop(a.to) {
                    bound = Some(match bound {
                        Some(b) if b < nd => b,
                        _ => nd,
                    });
                }
                heap.push(HeapItem {
                    dist: nd,
                    root: source,
                    keysum: nk,
                    vertex: a.to,
                });
            }
        }
    }
    Err(OracleError::Disconnected { vertex: source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphModel, WeightMode};
    use crate::testutil;
    use proptest::prelude::*;

    fn p4() -> WeightedGraph<f64> {
        generate_graph(GraphModel::Path, 4, WeightMode::Unit, 0).unwrap()
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
    fn dijkstra_on_path_and_cycle() {
        let tree = dijkstra_canonical(&p4(), 0);
        assert_eq!(tree.dist, vec![0.0, 1.0, 2.0, 3.0]);
        let c5: WeightedGraph<f64> =
            generate_graph(GraphModel::Cycle, 5, WeightMode::Unit, 0).unwrap();
        let tree = dijkstra_canonical(&c5, 0);
        assert_eq!(tree.dist, vec![0.0, 1.0, 2.0, 2.0, 1.0]);
    }

    #[test]
    fn dijkstra_matches_bellman_ford() {
        let g = gnm(128, 512, 7);
        let tree = dijkstra_canonical(&g, 0);
        let bf = testutil::bellman_ford(&g, 0);
        assert_eq!(tree.dist, bf);
    }

    #[test]
    fn extract_path_examples() {
        let g = p4();
        let mut sys = CanonicalPathSystem::new();
        sys.add_full_source(&g, 0);
        let w = sys.extract_path(&g, 0, 3).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
        assert_eq!(w.length, 3.0);
        let id = sys.extract_path(&g, 0, 0).unwrap();
        assert_eq!(id.vertices, vec![0]);
        assert_eq!(id.length, 0.0);
    }

    #[test]
    fn extract_path_matches_reference_distance() {
        let g = gnm(128, 512, 7);
        let mut sys = CanonicalPathSystem::new();
        sys.add_full_source(&g, 5);
        let bf = testutil::bellman_ford(&g, 5);
        let w = sys.extract_path(&g, 5, 90).unwrap();
        assert_eq!(w.length, bf[90]);
        g.validate_walk(&w.vertices, w.length).unwrap();
    }

    #[test]
    fn truncated_search_examples() {
        let g = p4();
        let r = truncated_ball_search(&g, 0, |v| v == 3, Some(2), None).unwrap();
        assert_eq!(r.outcome, BallOutcome::FoundTarget);
        assert_eq!(r.meeting_vertex, 2);
        let seen: Vec<u32> = r.explored.iter().map(|&(v, _)| v).collect();
        assert_eq!(seen, vec![0, 1, 2]);
        let path = r.path_to_meeting(0);
        assert_eq!(path.vertices, vec![0, 1, 2]);
        assert_eq!(path.length, 2.0);

        let r = truncated_ball_search(&g, 0, |v| v == 1, Some(3), None).unwrap();
        assert_eq!(r.outcome, BallOutcome::FoundStopper);
        assert_eq!(r.meeting_vertex, 1);
        assert_eq!(r.explored.len(), 2);
    }

    #[test]
    fn truncated_search_disconnected_errors() {
        let g = WeightedGraph::<f64>::from_edge_list(4, vec![(0, 1, 1.0), (2, 3, 1.0)], 0).unwrap();
        assert!(truncated_ball_search(&g, 0, |v| v == 2, None, None).is_err());
    }

    #[test]
    fn truncated_search_meets_nearest_stopper() {
        let g = gnm(128, 512, 7);
        let stoppers: Vec<VertexId> = (0..16).map(|i| (i * 7 + 3) % 128).collect();
        let bf = testutil::bellman_ford(&g, 0);
        let best = stoppers
            .iter()
            .map(|&s| bf[s as usize])
            .fold(f64::INFINITY, f64::min);
        let r = truncated_ball_search(&g, 0, |v| stoppers.contains(&v), None, None).unwrap();
        assert_eq!(bf[r.meeting_vertex as usize], best);
    }

    #[test]
    fn truncated_search_explored_is_open_ball() {
        // real-valued weights make distances unique w.h.p.; explored set
        // must be exactly the vertices strictly closer than the stopper
        let g = {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(21);
            let base = gnm(96, 400, 21);
            let edges: Vec<_> = base
                .edges()
                .iter()
                .map(|e| (e.u, e.v, e.w + rng.gen::<f64>()))
                .collect();
            WeightedGraph::from_edge_list(96, edges, 21).unwrap()
        };
        let bf = testutil::bellman_ford(&g, 4);
        let stopper = 60u32;
        let r = truncated_ball_search(&g, 4, |v| v == stopper, None, None).unwrap();
        let radius = bf[stopper as usize];
        let expect: std::collections::HashSet<u32> = (0..96u32)
            .filter(|&v| bf[v as usize] < radius)
            .collect();
        let got: std::collections::HashSet<u32> = r
            .explored
            .iter()
            .map(|&(v, _)| v)
            .filter(|&v| v != stopper)
            .collect();
        assert_eq!(got, expect);
        assert!(r.explored.windows(2).all(|p| p[0].1 <= p[1].1));
    }

    #[test]
    fn multi_source_prefers_smaller_root_on_ties() {
        // star: center 4, leaves 0..4 at distance 1; sources 1 and 3 tie at
        // the center, root 1 must win
        let g = WeightedGraph::<f64>::from_edge_list(
            5,
            vec![(0, 4, 1.0), (1, 4, 1.0), (2, 4, 1.0), (3, 4, 1.0)],
            9,
        )
        .unwrap();
        let f = multi_source_forest(&g, &[1, 3]);
        assert_eq!(f.root[4], 1);
        assert_eq!(f.dist[4], 1.0);
        assert_eq!(f.root[1], 1);
        assert_eq!(f.root[3], 3);
        let w = f.path_to_root(&g, 0);
        assert_eq!(w.vertices, vec![0, 4, 1]);
        assert_eq!(w.length, 2.0);
    }

    #[test]
    fn truncated_source_tree_is_open_ball() {
        let g = gnm(96, 400, 33);
        let bf = testutil::bellman_ford(&g, 10);
        let mut sys = CanonicalPathSystem::new();
        let explored = sys.add_truncated_source(&g, 10, 50.0);
        for &(v, d) in &explored {
            assert_eq!(d, bf[v as usize]);
            assert!(d < 50.0);
        }
        let count = (0..96).filter(|&v| bf[v] < 50.0).count();
        assert_eq!(explored.len(), count);
        // paths inside the ball extract correctly
        for &(v, d) in explored.iter().take(20) {
            let w = sys.extract_path(&g, 10, v).unwrap();
            assert_eq!(w.length, d);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn subpath_property(seed in 0u64..1000) {
            // prefix of a canonical path is the canonical path to the cut
            let g: WeightedGraph<f64> = generate_graph(
                GraphModel::Gnm { m: 140 },
                48,
                WeightMode::Unit,
                seed,
            ).unwrap();
            let mut sys = CanonicalPathSystem::new();
            sys.add_full_source(&g, 0);
            let w = sys.extract_path(&g, 0, 47).unwrap();
            for (i, &x) in w.vertices.iter().enumerate() {
                let sub = sys.extract_path(&g, 0, x).unwrap();
                prop_assert_eq!(&sub.vertices[..], &w.vertices[..=i]);
            }
        }

        #[test]
        fn cross_tree_consistency(seed in 0u64..1000) {
            let g: WeightedGraph<f64> = generate_graph(
                GraphModel::Gnm { m: 120 },
                40,
                WeightMode::UniformInt { lo: 1, hi: 9 },
                seed,
            ).unwrap();
            let mut sys = CanonicalPathSystem::new();
            sys.add_full_source(&g, 3);
            sys.add_full_source(&g, 29);
            let a = sys.extract_path(&g, 3, 29).unwrap();
            let b = sys.extract_path(&g, 29, 3).unwrap();
            prop_assert_eq!(a.vertices, b.reversed().vertices);
        }
    }
}
