//! Exact path-reporting oracle for a fixed pair set.
//!
//! For every stored pair the oracle can replay the canonical shortest path
//! using O(1) expected table probes per reported edge. Per vertex it keeps at
//! most one "home path" record; divergences between overlapping stored paths
//! are captured as branching events in a hash table. Any two stored paths
//! produce at most two branching events, so the structure occupies
//! O(n + |B| + P) words for P pairs and |B| events.

use std::collections::HashMap;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{OracleError, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::paths::{CanonicalPathSystem, PathWalk};
use crate::scalar::Scalar;

/// Unordered vertex pairs in canonical orientation (smaller id first).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PairSet {
    pairs: Vec<(VertexId, VertexId)>,
    index: HashMap<(VertexId, VertexId), u32>,
}

impl PairSet {
    pub fn new(raw: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut set = Self::default();
        for (u, v) in raw {
            set.insert(u, v)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(OracleError::Parameter(format!(
                "pair ({u}, {v}) is degenerate"
            )));
        }
        let key = (u.min(v), u.max(v));
        if !self.index.contains_key(&key) {
            self.index.insert(key, self.pairs.len() as u32);
            self.pairs.push(key);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.index.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn id_of(&self, u: VertexId, v: VertexId) -> Option<u32> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    /// Parses a pair list file: lines `u v`, blank lines and `#` comments
    /// ignored.
    pub fn read(input: &mut impl BufRead) -> Result<Self> {
        let mut set = Self::default();
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || OracleError::Format(format!("line {}: expected `u v`", lineno + 1));
            let mut it = line.split_whitespace();
            let u: VertexId = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let v: VertexId = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            set.insert(u, v)?;
        }
        Ok(set)
    }
}

/// One incident path edge at a vertex: the neighbor along the path and the
/// edge weight.
type Incident<S> = (VertexId, S);

/// Home record of a vertex internal to at least one stored path: path id and
/// the two incident edges, in path order.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct HomeEntry<S> {
    pid: u32,
    before: Incident<S>,
    after: Incident<S>,
}

/// Incident edges of one path at a shared vertex; endpoints have one side
/// absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct EventSide<S> {
    before: Option<Incident<S>>,
    after: Option<Incident<S>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PairRecord<S> {
    first: Incident<S>,
    last: Incident<S>,
}

/// The built oracle. Immutable; queries are read-only.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Dppro<S> {
    n: usize,
    pair_set: PairSet,
    /// first/last edge of each stored path, indexed by path id
    records: Vec<PairRecord<S>>,
    home: HashMap<VertexId, HomeEntry<S>>,
    /// keyed by (smaller path id, larger path id, shared vertex); sides are
    /// in key order
    events: HashMap<(u32, u32, VertexId), (EventSide<S>, EventSide<S>)>,
    max_events_per_path_pair: usize,
}

/// Space accounting in table-entry words.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpaceReport {
    /// words in the per-vertex home table
    pub n_words: usize,
    /// words in the branching-event table
    pub branch_words: usize,
    /// words in the per-pair records
    pub pair_words: usize,
    pub event_count: usize,
    pub pair_count: usize,
}

const HOME_ENTRY_WORDS: usize = 5;
const EVENT_WORDS: usize = 11;
const PAIR_WORDS: usize = 6;

/// Builds the oracle from canonical paths. `system` must hold a tree rooted
/// at the smaller endpoint of every pair.
pub fn build_dppro<S: Scalar>(
    g: &WeightedGraph<S>,
    pairs: PairSet,
    system: &CanonicalPathSystem<S>,
) -> Result<Dppro<S>> {
    let mut records = Vec::with_capacity(pairs.len());
    // transient per-vertex incidence lists, dropped after event enumeration
    let mut incidence: HashMap<VertexId, Vec<(u32, EventSide<S>)>> = HashMap::new();
    let mut home: HashMap<VertexId, HomeEntry<S>> = HashMap::new();
    for (pid, &(a, b)) in pairs.pairs().iter().enumerate() {
        let pid = pid as u32;
        // either endpoint's tree may host the pair; canonical paths agree,
        // so the reversed extraction is the same path
        let walk = system
            .extract_path(g, a, b)
            .or_else(|_| system.extract_path(g, b, a).map(|w| w.reversed()))
            .map_err(|_| OracleError::NoPath { u: a, v: b })?;
        let vs = &walk.vertices;
        let weight_between = |x: usize, y: usize| g.edge_between(vs[x], vs[y]).unwrap().w;
        records.push(PairRecord {
            first: (vs[1], weight_between(0, 1)),
            last: (vs[vs.len() - 2], weight_between(vs.len() - 2, vs.len() - 1)),
        });
        for (i, &x) in vs.iter().enumerate() {
            let before = (i > 0).then(|| (vs[i - 1], weight_between(i - 1, i)));
            let after = (i + 1 < vs.len()).then(|| (vs[i + 1], weight_between(i, i + 1)));
            if let (Some(bf), Some(af)) = (before, after) {
                // internal vertex: smallest path id claims the home slot
                home.entry(x).or_insert(HomeEntry {
                    pid,
                    before: bf,
                    after: af,
                });
            }
            incidence
                .entry(x)
                .or_default()
                .push((pid, EventSide { before, after }));
        }
    }
    let mut events: HashMap<(u32, u32, VertexId), (EventSide<S>, EventSide<S>)> = HashMap::new();
    let mut per_pair: HashMap<(u32, u32), usize> = HashMap::new();
    for (&x, list) in &incidence {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let (pa, sa) = &list[i];
                let (pb, sb) = &list[j];
                if !same_edge_set(sa, sb) {
                    let key = (*pa.min(pb), *pa.max(pb), x);
                    let (lo, hi) = if pa < pb { (sa, sb) } else { (sb, sa) };
                    events.insert(key, (lo.clone(), hi.clone()));
                    *per_pair.entry((key.0, key.1)).or_default() += 1;
                }
            }
        }
    }
    let max_events_per_path_pair = per_pair.values().copied().max().unwrap_or(0);
    Ok(Dppro {
        n: g.n(),
        pair_set: pairs,
        records,
        home,
        events,
        max_events_per_path_pair,
    })
}

/// Unordered comparison of the incident edge sets; a shared subpath traversed
/// in opposite directions is not a divergence.
fn same_edge_set<S: Scalar>(a: &EventSide<S>, b: &EventSide<S>) -> bool {
    let set = |s: &EventSide<S>| {
        let mut vs = [None, None];
        vs[0] = s.before.map(|(v, _)| v);
        vs[1] = s.after.map(|(v, _)| v);
        if vs[0] > vs[1] {
            vs.swap(0, 1);
        }
        vs
    };
    set(a) == set(b)
}

impl<S: Scalar> Dppro<S> {
    pub fn pair_set(&self) -> &PairSet {
        &self.pair_set
    }

    pub fn max_events_per_path_pair(&self) -> usize {
        self.max_events_per_path_pair
    }

    /// Unordered path-id pairs that produced at least one branching event.
    pub fn event_path_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.events.keys().map(|&(a, b, _)| (a, b))
    }

    /// Replays the stored path for `(u, v)`; a reversed query returns the
    /// reversed walk. Fails fast for pairs outside the stored set.
    pub fn query(&self, u: VertexId, v: VertexId) -> Result<PathWalk<S>> {
        self.query_counted(u, v).map(|(w, _)| w)
    }

    /// As [`Dppro::query`], also returning the number of table probes spent.
    pub fn query_counted(&self, u: VertexId, v: VertexId) -> Result<(PathWalk<S>, usize)> {
        let pid = self
            .pair_set
            .id_of(u, v)
            .ok_or(OracleError::PairNotStored { u, v })?;
        let (a, b) = self.pair_set.pairs()[pid as usize];
        let mut probes = 1usize; // pair lookup
        let rec = &self.records[pid as usize];
        let (start, goal, first) = if u == a {
            (a, b, rec.first)
        } else {
            (b, a, rec.last)
        };
        let mut vertices = vec![start, first.0];
        let mut length = first.1;
        let mut prev = start;
        let mut cur = first.0;
        while cur != goal {
            let next = self.step(pid, cur, prev, &mut probes)?;
            vertices.push(next.0);
            length += next.1;
            prev = cur;
            cur = next.0;
        }
        let hop_count = vertices.len() - 1;
        Ok((
            PathWalk {
                vertices,
                length,
                hop_count,
            },
            probes,
        ))
    }

    /// One forward step at internal vertex `cur`, arrived from `prev`.
    fn step(
        &self,
        pid: u32,
        cur: VertexId,
        prev: VertexId,
        probes: &mut usize,
    ) -> Result<(VertexId, S)> {
        *probes += 1;
        let home = self.home.get(&cur).ok_or_else(|| {
            OracleError::Format(format!("vertex {cur} lacks a home entry during replay"))
        })?;
        let candidates = if home.pid == pid {
            [Some(home.before), Some(home.after)]
        } else {
            *probes += 1;
            let key = (pid.min(home.pid), pid.max(home.pid), cur);
            match self.events.get(&key) {
                Some((lo, hi)) => {
                    let side = if pid < home.pid { lo } else { hi };
                    [side.before, side.after]
                }
                // no event: our path's incident edges coincide with the
                // home path's, so the home record steers us
                None => [Some(home.before), Some(home.after)],
            }
        };
        candidates
            .into_iter()
            .flatten()
            .find(|&(nxt, _)| nxt != prev)
            .ok_or_else(|| {
                OracleError::Format(format!(
                    "replay stuck at vertex {cur} on path {pid}"
                ))
            })
    }

    pub fn space_report(&self) -> SpaceReport {
        SpaceReport {
            n_words: self.home.len() * HOME_ENTRY_WORDS,
            branch_words: self.events.len() * EVENT_WORDS,
            pair_words: self.records.len() * PAIR_WORDS,
            event_count: self.events.len(),
            pair_count: self.records.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphModel, WeightMode};
    use crate::testutil;

    fn system_for(g: &WeightedGraph<f64>, pairs: &PairSet) -> CanonicalPathSystem<f64> {
        let mut sys = CanonicalPathSystem::new();
        for &(a, _) in pairs.pairs() {
            sys.add_full_source(g, a);
        }
        sys
    }

    fn build(g: &WeightedGraph<f64>, raw: &[(u32, u32)]) -> Dppro<f64> {
        let pairs = PairSet::new(raw.iter().copied()).unwrap();
        let sys = system_for(g, &pairs);
        build_dppro(g, pairs, &sys).unwrap()
    }

    #[test]
    fn star_branching_event() {
        // a=0, b=1, c=2, d=3, e=4; center c; paths 0-2-3 and 1-2-4 cross at 2
        let g = WeightedGraph::from_edge_list(
            5,
            vec![(0, 2, 1.0), (1, 2, 1.0), (2, 3, 1.0), (2, 4, 1.0)],
            0,
        )
        .unwrap();
        let o = build(&g, &[(0, 3), (1, 4)]);
        let r = o.space_report();
        assert_eq!(r.event_count, 1);
        assert_eq!(r.pair_count, 2);
        let (w, _) = o.query_counted(1, 4).unwrap();
        assert_eq!(w.vertices, vec![1, 2, 4]);
        assert_eq!(w.length, 2.0);
    }

    #[test]
    fn p4_single_pair_no_events() {
        let g = generate_graph(GraphModel::Path, 4, WeightMode::Unit, 0).unwrap();
        let o = build(&g, &[(0, 3)]);
        let r = o.space_report();
        assert_eq!(r.event_count, 0);
        assert_eq!(r.pair_count, 1);
        let w = o.query(0, 3).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
        assert_eq!(w.length, 3.0);
    }

    #[test]
    fn p5_overlapping_pairs_match_brute_force() {
        // paths 0-1-2-3 and 1-2-3-4 overlap on 1-2-3; shared vertices with
        // differing incident edge sets: 1 (endpoint vs internal) and 3
        let g = generate_graph(GraphModel::Path, 5, WeightMode::Unit, 0).unwrap();
        let o = build(&g, &[(0, 3), (1, 4)]);
        let r = o.space_report();
        // brute force: shared {1,2,3}; at 1 sets {0,2} vs {2}; at 2 equal
        // {1,3}; at 3 sets {2} vs {2,4}
        assert_eq!(r.event_count, 2);
        assert!(o.max_events_per_path_pair() <= 2);
        let w = o.query(1, 4).unwrap();
        assert_eq!(w.vertices, vec![1, 2, 3, 4]);
    }

    #[test]
    fn exactness_probes_and_reversal_on_random_graphs() {
        for seed in [1u64, 2, 3, 4, 5] {
            let g: WeightedGraph<f64> = generate_graph(
                GraphModel::Gnm { m: 512 },
                128,
                WeightMode::UniformInt { lo: 1, hi: 100 },
                seed,
            )
            .unwrap();
            let raw: Vec<(u32, u32)> = (0..32)
                .map(|i| ((i * 5 + seed as u32) % 128, (i * 11 + 3) % 128))
                .filter(|(a, b)| a != b)
                .collect();
            let o = build(&g, &raw);
            for &(a, b) in o.pair_set().pairs() {
                let bf = testutil::bellman_ford(&g, a);
                let (w, probes) = o.query_counted(a, b).unwrap();
                assert_eq!(w.length, bf[b as usize]);
                g.validate_walk(&w.vertices, w.length).unwrap();
                assert!(probes <= 4 * (w.hop_count + 1));
                let rev = o.query(b, a).unwrap();
                assert_eq!(rev.vertices, w.reversed().vertices);
            }
            assert!(o.max_events_per_path_pair() <= 2);
        }
    }

    #[test]
    fn terminal_clique_event_bound() {
        // all pairs among 8 terminals: event count bounded by 2 * (P choose 2)
        let g: WeightedGraph<f64> = generate_graph(
            GraphModel::Gnm { m: 256 },
            64,
            WeightMode::UniformInt { lo: 1, hi: 50 },
            9,
        )
        .unwrap();
        let terminals = [0u32, 9, 17, 25, 33, 41, 49, 57];
        let mut raw = Vec::new();
        for i in 0..terminals.len() {
            for j in i + 1..terminals.len() {
                raw.push((terminals[i], terminals[j]));
            }
        }
        let o = build(&g, &raw);
        let p = o.pair_set().len();
        assert_eq!(p, 28);
        assert!(o.space_report().event_count <= 2 * p * (p - 1) / 2);
        assert!(o.max_events_per_path_pair() <= 2);
    }

    #[test]
    fn missing_pair_fails_fast() {
        let g = generate_graph(GraphModel::Path, 4, WeightMode::Unit, 0).unwrap();
        let o = build(&g, &[(0, 3)]);
        match o.query(0, 2) {
            Err(OracleError::PairNotStored { u: 0, v: 2 }) => {}
            other => panic!("expected PairNotStored, got {other:?}"),
        }
    }

    #[test]
    fn single_edge_pair_needs_no_home_entries() {
        let g = generate_graph(GraphModel::Path, 4, WeightMode::Unit, 0).unwrap();
        let o = build(&g, &[(1, 2)]);
        let r = o.space_report();
        assert_eq!(r.n_words, 0);
        let w = o.query(2, 1).unwrap();
        assert_eq!(w.vertices, vec![2, 1]);
    }

    #[test]
    fn pair_file_parsing() {
        let text = "# pairs\n0 3\n\n1 4\n0 3\n";
        let set = PairSet::read(&mut text.as_bytes()).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.contains(3, 0));
        assert!(PairSet::read(&mut "2 2\n".as_bytes()).is_err());
    }
}
