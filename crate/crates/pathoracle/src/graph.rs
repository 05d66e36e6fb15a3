//! Undirected positive-weighted graphs, generators, and the TSV exchange
//! format.
//!
//! Adjacency lists are kept sorted ascending by weight so that truncated
//! searches can stop relaxing the remaining incident edges of a vertex as
//! soon as one tentative distance exceeds the search radius.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{OracleError, Result};
use crate::scalar::Scalar;

pub type VertexId = u32;
pub type EdgeId = u32;

/// Tiebreak-key seed used when a graph is loaded from a file, so that
/// repeated loads of the same file produce identical canonical paths.
const FILE_KEY_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Edge<S> {
    pub u: VertexId,
    pub v: VertexId,
    pub w: S,
    /// Random 47-bit key; path tiebreak values are sums of these. The width
    /// keeps sums of up to 2^17 hops inside u64, so the tiebreak stays
    /// additive and monotone (a wrapped sum would break the lexicographic
    /// Dijkstra argument and make trees direction-dependent).
    pub key: u64,
}

impl<S: Scalar> Edge<S> {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// One adjacency entry: target vertex, weight, edge id.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Arc<S> {
    pub to: VertexId,
    pub w: S,
    pub edge: EdgeId,
}

/// Undirected graph with positive weights, deduplicated parallel edges and
/// no self-loops.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedGraph<S> {
    n: usize,
    edges: Vec<Edge<S>>,
    adj: Vec<Vec<Arc<S>>>,
    dropped_self_loops: usize,
    merged_parallel: usize,
}

impl<S: Scalar> WeightedGraph<S> {
    /// Builds a graph from an edge list. Parallel edges collapse to the
    /// minimum weight, self-loops are dropped (counted), weights must be
    /// positive.
    pub fn from_edge_list(
        n: usize,
        raw: impl IntoIterator<Item = (VertexId, VertexId, S)>,
        key_seed: u64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(OracleError::Parameter("graph must have n >= 1".into()));
        }
        let mut dropped = 0usize;
        let mut merged = 0usize;
        let mut best: HashMap<(VertexId, VertexId), S> = HashMap::new();
        for (u, v, w) in raw {
            if (u as usize) >= n || (v as usize) >= n {
                return Err(OracleError::Format(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if !(w > S::zero()) || !w.is_finite() {
                return Err(OracleError::Format(format!(
                    "edge ({u}, {v}) has non-positive weight {w}"
                )));
            }
            if u == v {
                dropped += 1;
                continue;
            }
            let k = (u.min(v), u.max(v));
            match best.get_mut(&k) {
                Some(old) => {
                    merged += 1;
                    if w < *old {
                        *old = w;
                    }
                }
                None => {
                    best.insert(k, w);
                }
            }
        }
        let mut pairs: Vec<((VertexId, VertexId), S)> = best.into_iter().collect();
        pairs.sort_by_key(|&((u, v), _)| (u, v));
        let mut rng = ChaCha12Rng::seed_from_u64(key_seed);
        let edges: Vec<Edge<S>> = pairs
            .into_iter()
            .map(|((u, v), w)| Edge {
                u,
                v,
                w,
                key: rng.gen::<u64>() >> 17,
            })
            .collect();
        let mut adj: Vec<Vec<Arc<S>>> = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u as usize].push(Arc {
                to: e.v,
                w: e.w,
                edge: id as EdgeId,
            });
            adj[e.v as usize].push(Arc {
                to: e.u,
                w: e.w,
                edge: id as EdgeId,
            });
        }
        for list in &mut adj {
            list.sort_by(|a, b| a.w.partial_cmp(&b.w).unwrap().then(a.edge.cmp(&b.edge)));
        }
        Ok(Self {
            n,
            edges,
            adj,
            dropped_self_loops: dropped,
            merged_parallel: merged,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge<S> {
        &self.edges[id as usize]
    }

    /// Incident arcs of `v`, sorted ascending by weight.
    pub fn adj(&self, v: VertexId) -> &[Arc<S>] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn dropped_self_loops(&self) -> usize {
        self.dropped_self_loops
    }

    pub fn merged_parallel(&self) -> usize {
        self.merged_parallel
    }

    /// Edge density m/n.
    pub fn density_lambda(&self) -> f64 {
        self.m() as f64 / self.n as f64
    }

    /// The unique edge between `u` and `v`, if any (parallel edges were
    /// merged at load).
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<&Edge<S>> {
        self.adj[u as usize]
            .iter()
            .find(|a| a.to == v)
            .map(|a| self.edge(a.edge))
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1usize;
        while let Some(x) = stack.pop() {
            for a in self.adj(x) {
                if !seen[a.to as usize] {
                    seen[a.to as usize] = true;
                    count += 1;
                    stack.push(a.to);
                }
            }
        }
        count == self.n
    }

    /// Checks that `vertices` is a walk in this graph and that `length` is
    /// the left-to-right sum of the traversed edge weights.
    pub fn validate_walk(&self, vertices: &[VertexId], length: S) -> Result<()> {
        if vertices.is_empty() {
            return Err(OracleError::Format("empty walk".into()));
        }
        let mut acc = S::zero();
        for pair in vertices.windows(2) {
            let e = self.edge_between(pair[0], pair[1]).ok_or_else(|| {
                OracleError::Format(format!("walk edge ({}, {}) not in graph", pair[0], pair[1]))
            })?;
            acc += e.w;
        }
        if acc != length {
            return Err(OracleError::Format(format!(
                "walk length mismatch: stated {length}, recomputed {acc}"
            )));
        }
        Ok(())
    }

    /// Writes the TSV exchange format: `n m` header then one `u v w` line
    /// per edge.
    pub fn write_tsv(&self, out: &mut impl Write) -> Result<()> {
        writeln!(out, "{} {}", self.n, self.m())?;
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u, e.v, e.w)?;
        }
        Ok(())
    }

    /// Parses the TSV exchange format. Blank lines and `#` comments are
    /// ignored.
    pub fn read_tsv(input: &mut impl BufRead) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut raw: Vec<(VertexId, VertexId, S)> = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let bad = |what: &str| {
                OracleError::Format(format!("line {}: {}", lineno + 1, what))
            };
            if header.is_none() {
                let n: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("expected `n m` header"))?;
                let m: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("expected `n m` header"))?;
                header = Some((n, m));
                continue;
            }
            let u: VertexId = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("expected `u v w`"))?;
            let v: VertexId = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("expected `u v w`"))?;
            let w: f64 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("expected `u v w`"))?;
            let w = S::from_f64(w)
                .ok_or_else(|| bad("weight not representable in the scalar type"))?;
            raw.push((u, v, w));
        }
        let (n, m) = header.ok_or_else(|| OracleError::Format("missing `n m` header".into()))?;
        if raw.len() != m {
            return Err(OracleError::Format(format!(
                "header declares {m} edges, file has {}",
                raw.len()
            )));
        }
        Self::from_edge_list(n, raw, FILE_KEY_SEED)
    }
}

/// Generator families for benchmark graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphModel {
    /// Connected G(n, m): a uniform random spanning tree plus random extra
    /// edges.
    Gnm { m: usize },
    /// Near-square grid, row-major vertex ids.
    Grid,
    Path,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    Unit,
    UniformInt { lo: u64, hi: u64 },
}

/// Deterministic seeded graph generation.
pub fn generate_graph<S: Scalar>(
    model: GraphModel,
    n: usize,
    weight_mode: WeightMode,
    seed: u64,
) -> Result<WeightedGraph<S>> {
    if n == 0 {
        return Err(OracleError::Parameter("n must be >= 1".into()));
    }
    if let WeightMode::UniformInt { lo, hi } = weight_mode {
        if lo == 0 || hi < lo {
            return Err(OracleError::Parameter(format!(
                "uniform_int weight range [{lo}, {hi}] is invalid"
            )));
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let topology: Vec<(VertexId, VertexId)> = match model {
        GraphModel::Path => (1..n).map(|i| (i as u32 - 1, i as u32)).collect(),
        GraphModel::Cycle => {
            if n < 3 {
                return Err(OracleError::Parameter("cycle needs n >= 3".into()));
            }
            (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect()
        }
        GraphModel::Grid => {
            let rows = (n as f64).sqrt().floor() as usize;
            let rows = rows.max(1);
            let cols = n.div_ceil(rows);
            let mut es = Vec::new();
            for i in 0..n {
                let c = i % cols;
                if c + 1 < cols && i + 1 < n {
                    es.push((i as u32, (i + 1) as u32));
                }
                if i + cols < n {
                    es.push((i as u32, (i + cols) as u32));
                }
            }
            es
        }
        GraphModel::Gnm { m } => {
            let max_m = n * (n - 1) / 2;
            if m + 1 < n || m > max_m {
                return Err(OracleError::Parameter(format!(
                    "gnm needs n-1 <= m <= n(n-1)/2, got n = {n}, m = {m}"
                )));
            }
            let mut es = random_spanning_tree(n, &mut rng);
            let mut present: HashSet<(VertexId, VertexId)> = es.iter().copied().collect();
            while es.len() < m {
                let u = rng.gen_range(0..n as u32);
                let v = rng.gen_range(0..n as u32);
                if u == v {
                    continue;
                }
                let k = (u.min(v), u.max(v));
                if present.insert(k) {
                    es.push(k);
                }
            }
            es
        }
    };
    let raw: Vec<(VertexId, VertexId, S)> = topology
        .into_iter()
        .map(|(u, v)| {
            let w = match weight_mode {
                WeightMode::Unit => S::one(),
                WeightMode::UniformInt { lo, hi } => {
                    S::from_u64(rng.gen_range(lo..=hi)).unwrap()
                }
            };
            (u, v, w)
        })
        .collect();
    let key_seed = seed ^ 0x517c_c1b7_2722_0a95;
    WeightedGraph::from_edge_list(n, raw, key_seed)
}

/// Uniform random labeled spanning tree on `n` vertices via a random Prufer
/// sequence.
fn random_spanning_tree(n: usize, rng: &mut impl Rng) -> Vec<(VertexId, VertexId)> {
    match n {
        1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let prufer: Vec<u32> = (0..n - 2).map(|_| rng.gen_range(0..n as u32)).collect();
            let mut degree = vec![1u32; n];
            for &p in &prufer {
                degree[p as usize] += 1;
            }
            let mut edges = Vec::with_capacity(n - 1);
            let mut ptr = (0..n).find(|&i| degree[i] == 1).unwrap();
            let mut leaf = ptr as u32;
            for &v in &prufer {
                edges.push((leaf.min(v), leaf.max(v)));
                degree[v as usize] -= 1;
                if degree[v as usize] == 1 && (v as usize) < ptr {
                    leaf = v;
                } else {
                    ptr += 1;
                    while degree[ptr] != 1 {
                        ptr += 1;
                    }
                    leaf = ptr as u32;
                }
            }
            edges.push((leaf.min(n as u32 - 1), leaf.max(n as u32 - 1)));
            // shuffle so extra-edge sampling is independent of decode order
            edges.shuffle(rng);
            edges
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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
    fn path_graph_topology() {
        let g: WeightedGraph<f64> =
            generate_graph(GraphModel::Path, 4, WeightMode::Unit, 0).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3);
        for (u, v) in [(0, 1), (1, 2), (2, 3)] {
            assert_eq!(g.edge_between(u, v).unwrap().w, 1.0);
        }
        assert_eq!(g.density_lambda(), 0.75);
    }

    #[test]
    fn cycle_graph_topology() {
        let g: WeightedGraph<f64> =
            generate_graph(GraphModel::Cycle, 5, WeightMode::Unit, 0).unwrap();
        assert_eq!(g.m(), 5);
        assert_eq!(g.density_lambda(), 1.0);
        for v in 0..5 {
            assert_eq!(g.degree(v), 2);
        }
    }

    #[test]
    fn grid_graph_connected() {
        let g: WeightedGraph<f64> =
            generate_graph(GraphModel::Grid, 12, WeightMode::Unit, 0).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.n(), 12);
    }

    #[test]
    fn gnm_exact_edge_count_and_connected() {
        let g = gnm(128, 512, 7);
        assert_eq!(g.n(), 128);
        assert_eq!(g.m(), 512);
        assert!(g.is_connected());
        assert!(g.edges().iter().all(|e| (1.0..=100.0).contains(&e.w)));
    }

    #[test]
    fn gnm_rejects_infeasible() {
        assert!(generate_graph::<f64>(GraphModel::Gnm { m: 2 }, 5, WeightMode::Unit, 0).is_err());
        assert!(generate_graph::<f64>(GraphModel::Gnm { m: 11 }, 5, WeightMode::Unit, 0).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gnm(64, 200, 3);
        let b = gnm(64, 200, 3);
        let mut buf_a = Vec::new();
        let mut buf_b = Vec::new();
        a.write_tsv(&mut buf_a).unwrap();
        b.write_tsv(&mut buf_b).unwrap();
        assert_eq!(buf_a, buf_b);
    }

    #[test]
    fn dedup_and_self_loops() {
        let g = WeightedGraph::<f64>::from_edge_list(
            3,
            vec![(0, 1, 5.0), (1, 0, 2.0), (1, 1, 1.0), (1, 2, 4.0)],
            0,
        )
        .unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edge_between(0, 1).unwrap().w, 2.0);
        assert_eq!(g.dropped_self_loops(), 1);
        assert_eq!(g.merged_parallel(), 1);
    }

    #[test]
    fn rejects_nonpositive_weights() {
        assert!(WeightedGraph::<f64>::from_edge_list(2, vec![(0, 1, 0.0)], 0).is_err());
        assert!(WeightedGraph::<f64>::from_edge_list(2, vec![(0, 1, -1.0)], 0).is_err());
    }

    #[test]
    fn adjacency_sorted_by_weight() {
        let g = gnm(64, 300, 11);
        for v in 0..64 {
            let adj = g.adj(v);
            assert!(adj.windows(2).all(|p| p[0].w <= p[1].w));
        }
    }

    #[test]
    fn tsv_round_trip() {
        let g = gnm(32, 100, 5);
        let mut buf = Vec::new();
        g.write_tsv(&mut buf).unwrap();
        let g2 = WeightedGraph::<f64>::read_tsv(&mut buf.as_slice()).unwrap();
        assert_eq!(g.n(), g2.n());
        assert_eq!(g.m(), g2.m());
        for e in g.edges() {
            assert_eq!(g2.edge_between(e.u, e.v).unwrap().w, e.w);
        }
        // reload keys are file-seeded, so two loads agree exactly
        let g3 = WeightedGraph::<f64>::read_tsv(&mut buf.as_slice()).unwrap();
        for (a, b) in g2.edges().iter().zip(g3.edges()) {
            assert_eq!(a.key, b.key);
        }
    }

    #[test]
    fn tsv_comments_and_blanks() {
        let text = "# a comment\n\n3 2\n0 1 1.5\n# mid\n1 2 2.5\n";
        let g = WeightedGraph::<f64>::read_tsv(&mut text.as_bytes()).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn tsv_header_mismatch_rejected() {
        let text = "3 5\n0 1 1\n1 2 1\n";
        assert!(WeightedGraph::<f64>::read_tsv(&mut text.as_bytes()).is_err());
    }

    #[test]
    fn validate_walk_checks_edges_and_length() {
        let g: WeightedGraph<f64> =
            generate_graph(GraphModel::Path, 4, WeightMode::Unit, 0).unwrap();
        assert!(g.validate_walk(&[0, 1, 2, 3], 3.0).is_ok());
        assert!(g.validate_walk(&[0, 2], 2.0).is_err());
        assert!(g.validate_walk(&[0, 1], 2.0).is_err());
    }

    proptest! {
        #[test]
        fn gnm_always_connected(seed in 0u64..500, extra in 0usize..60) {
            let n = 24;
            let g: WeightedGraph<f64> = generate_graph(
                GraphModel::Gnm { m: n - 1 + extra },
                n,
                WeightMode::Unit,
                seed,
            ).unwrap();
            prop_assert!(g.is_connected());
            prop_assert_eq!(g.m(), n - 1 + extra);
        }
    }
}
