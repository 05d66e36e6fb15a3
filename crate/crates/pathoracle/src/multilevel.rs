//! Multi-level ball-hierarchy oracle with escalation queries.
//!
//! Levels `1..=h` carry landmark sets of geometrically decreasing density
//! `ρ_i = n^{α_i}`, `α_i = 1 - (3/4)^{h-i+1}`. Adjacent i-landmarks (under
//! the one-third-ball rule) get their exact paths stored in a per-level pair
//! oracle; the top level stores all landmark pairs. A query climbs the
//! ladder of nearest landmarks until its current pair is stored, then
//! splices the exact middle path between the ladder walks. Stretch after
//! meeting at level `p` is at most `6 * 7^{p-1} - 1`.
//!
//! The `Tilde` variant makes every vertex a first-level landmark and drops
//! the graph after construction, so queries run purely from stored tables.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::dppro::{self, Dppro, PairSet};
use crate::error::{OracleError, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::paths::{
    multi_source_forest, truncated_ball_search, BallOutcome, CanonicalPathSystem, PathWalk,
};
use crate::scalar::Scalar;
use crate::OracleAnswer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Stores the graph; queries may answer exactly from the level-1 ball
    /// test.
    Standard,
    /// `L_1 = V`, level-1 balls are empty, and the graph is not retained.
    Tilde,
}

/// Default constant in the tilde space cap `C * n * h` words; chosen
/// generously above the measured per-vertex table footprint.
pub const DEFAULT_SPACE_CAP_C: f64 = 8.0;

/// Rebuild attempts allowed when a tilde draw exceeds the space cap.
pub const TILDE_MAX_RESTARTS: usize = 10;

/// `(α_i, ρ_i)` for levels `i = 1..=h`, with `ρ_i` clamped to `[3 ln n, n]`
/// and forced nonincreasing after clamping.
pub fn level_exponents(n: usize, h: usize) -> Vec<(f64, f64)> {
    let n_f = n as f64;
    let lo = (3.0 * n_f.ln()).min(n_f);
    let mut out: Vec<(f64, f64)> = (1..=h)
        .map(|i| {
            let alpha = 1.0 - 0.75f64.powi((h - i + 1) as i32);
            (alpha, n_f.powf(alpha).clamp(lo, n_f))
        })
        .collect();
    for i in 1..out.len() {
        if out[i].1 > out[i - 1].1 {
            out[i].1 = out[i - 1].1;
        }
    }
    out
}

/// `h = ceil(log_{4/3}(log2(n) + 1))`, the level count of the tilde variant.
pub fn tilde_levels(n: usize) -> usize {
    let inner = (n as f64).log2() + 1.0;
    (inner.ln() / (4.0f64 / 3.0).ln()).ceil().max(1.0) as usize
}

/// Self-contained nearest-landmark forest for one level: parent hops carry
/// the neighbor and edge weight, so ladder paths replay without the graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelForest<S> {
    pub dist: Vec<S>,
    pub root: Vec<VertexId>,
    parent: Vec<Option<(VertexId, S)>>,
}

impl<S: Scalar> LevelForest<S> {
    fn from_multi_source(g: &WeightedGraph<S>, sources: &[VertexId]) -> Result<Self> {
        let f = multi_source_forest(g, sources);
        if f.dist.iter().any(|d| !d.is_finite()) {
            return Err(OracleError::Disconnected { vertex: 0 });
        }
        let parent = f
            .pred
            .iter()
            .enumerate()
            .map(|(v, p)| p.map(|eid| {
                let e = g.edge(eid);
                (e.other(v as VertexId), e.w)
            }))
            .collect();
        Ok(Self {
            dist: f.dist,
            root: f.root,
            parent,
        })
    }

    /// Identity forest of the tilde first level: every vertex is its own
    /// landmark at distance zero.
    fn identity(n: usize) -> Self {
        Self {
            dist: vec![S::zero(); n],
            root: (0..n as VertexId).collect(),
            parent: vec![None; n],
        }
    }

    pub fn path_to_root(&self, v: VertexId) -> PathWalk<S> {
        let mut vertices = vec![v];
        let mut length = S::zero();
        let mut cur = v;
        while let Some((nxt, w)) = self.parent[cur as usize] {
            vertices.push(nxt);
            length += w;
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

/// Landmark levels with their forests and radii.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LandmarkHierarchy<S> {
    pub h: usize,
    pub n: usize,
    pub variant: Variant,
    /// `(α_i, ρ_i)` per level, index `i - 1`
    pub exponents: Vec<(f64, f64)>,
    /// `L_i` per level, index `i - 1`, sorted ascending
    pub levels: Vec<Vec<VertexId>>,
    is_level: Vec<Vec<bool>>,
    /// forest of level `i` at index `i - 1`; gives `ℓ_i(v)` and `r_i(v)`
    pub forests: Vec<LevelForest<S>>,
}

impl<S: Scalar> LandmarkHierarchy<S> {
    pub fn is_landmark(&self, level: usize, v: VertexId) -> bool {
        self.is_level[level - 1][v as usize]
    }

    /// `ℓ_i(v)`, the nearest i-landmark (smallest id on ties).
    pub fn nearest(&self, level: usize, v: VertexId) -> VertexId {
        self.forests[level - 1].root[v as usize]
    }

    /// `r_i(v) = d(v, L_i)`.
    pub fn radius(&self, level: usize, v: VertexId) -> S {
        self.forests[level - 1].dist[v as usize]
    }
}

/// Samples the level sets and builds their forests.
pub fn build_hierarchy<S: Scalar>(
    g: &WeightedGraph<S>,
    h: usize,
    variant: Variant,
    seed: u64,
) -> Result<LandmarkHierarchy<S>> {
    if h < 1 {
        return Err(OracleError::Parameter("hierarchy requires h >= 1".into()));
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected { vertex: 0 });
    }
    let n = g.n();
    let exponents = level_exponents(n, h);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut levels = Vec::with_capacity(h);
    let mut is_level = Vec::with_capacity(h);
    let mut forests = Vec::with_capacity(h);
    for (i, &(_, rho)) in exponents.iter().enumerate() {
        let tilde_base = variant == Variant::Tilde && i == 0;
        let mut flags = vec![false; n];
        let mut set: Vec<VertexId> = if tilde_base {
            flags = vec![true; n];
            (0..n as VertexId).collect()
        } else {
            let p = (rho / n as f64).min(1.0);
            (0..n as VertexId)
                .filter(|_| rng.gen::<f64>() < p)
                .inspect(|&v| flags[v as usize] = true)
                .collect()
        };
        if set.is_empty() {
            flags[0] = true;
            set.push(0);
        }
        let forest = if tilde_base {
            LevelForest::identity(n)
        } else {
            LevelForest::from_multi_source(g, &set)?
        };
        levels.push(set);
        is_level.push(flags);
        forests.push(forest);
    }
    Ok(LandmarkHierarchy {
        h,
        n,
        variant,
        exponents,
        levels,
        is_level,
        forests,
    })
}

/// Per-level pair structures: the pair oracle `D_i` (complete at the top
/// level) and, below the top, the retained balls `Ball_{i+1}(u)` of every
/// i-landmark, kept for the confinement audit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelPairStructure<S> {
    /// `D_1 .. D_h`, index `i - 1`
    pub dppros: Vec<Dppro<S>>,
    /// `balls[i - 1][u] = Ball_{i+1}(u)` as a distance map, `i < h`
    pub balls: Vec<HashMap<VertexId, HashMap<VertexId, S>>>,
}

impl<S: Scalar> LevelPairStructure<S> {
    pub fn pair_count(&self, level: usize) -> usize {
        self.dppros[level - 1].pair_set().len()
    }

    pub fn branch_count(&self, level: usize) -> usize {
        self.dppros[level - 1].space_report().event_count
    }
}

pub fn build_pair_structures<S: Scalar>(
    g: &WeightedGraph<S>,
    hier: &LandmarkHierarchy<S>,
) -> Result<LevelPairStructure<S>> {
    let h = hier.h;
    let mut dppros = Vec::with_capacity(h);
    let mut balls = Vec::with_capacity(h.saturating_sub(1));
    for i in 1..h {
        // enumerate Ball_{i+1}(u) for every i-landmark u by truncated
        // canonical Dijkstra; the trees double as the path system for D_i
        let mut system = CanonicalPathSystem::new();
        let mut level_balls: HashMap<VertexId, HashMap<VertexId, S>> = HashMap::new();
        let mut pairs = PairSet::default();
        for &u in &hier.levels[i - 1] {
            let radius = hier.radius(i + 1, u);
            let explored = system.add_truncated_source(g, u, radius);
            let third = radius / S::from_u8(3).unwrap();
            for &(x, d) in &explored {
                if x != u && hier.is_landmark(i, x) && d < third {
                    pairs.insert(u, x)?;
                }
            }
            level_balls.insert(u, explored.into_iter().collect());
        }
        dppros.push(dppro::build_dppro(g, pairs, &system)?);
        balls.push(level_balls);
    }
    // top level: all pairs of h-landmarks over full canonical trees
    let mut system = CanonicalPathSystem::new();
    for &u in &hier.levels[h - 1] {
        system.add_full_source(g, u);
    }
    let top = &hier.levels[h - 1];
    let mut pairs = PairSet::default();
    for a in 0..top.len() {
        for b in a + 1..top.len() {
            pairs.insert(top[a], top[b])?;
        }
    }
    dppros.push(dppro::build_dppro(g, pairs, &system)?);
    Ok(LevelPairStructure { dppros, balls })
}

/// Space accounting of the stored tables, in words. Audit ball maps are
/// instrumentation and are counted separately.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MultiLevelSpace {
    pub forest_words: usize,
    pub table_words: usize,
    pub audit_ball_words: usize,
    pub total_words: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiLevelOracle<S> {
    pub variant: Variant,
    pub h: usize,
    pub n: usize,
    /// retained in the standard variant only; the tilde variant answers
    /// queries from tables alone
    graph: Option<WeightedGraph<S>>,
    pub hierarchy: LandmarkHierarchy<S>,
    pub structures: LevelPairStructure<S>,
    pub restarts_used: usize,
}

pub fn build_multilevel<S: Scalar>(
    g: &WeightedGraph<S>,
    h: usize,
    variant: Variant,
    seed: u64,
) -> Result<MultiLevelOracle<S>> {
    let hierarchy = build_hierarchy(g, h, variant, seed)?;
    let structures = build_pair_structures(g, &hierarchy)?;
    Ok(MultiLevelOracle {
        variant,
        h,
        n: g.n(),
        graph: (variant == Variant::Standard).then(|| g.clone()),
        hierarchy,
        structures,
        restarts_used: 0,
    })
}

/// Tilde build at the canonical level count, rebuilt while the measured
/// table space exceeds `DEFAULT_SPACE_CAP_C * n * h` words (at most
/// [`TILDE_MAX_RESTARTS`] extra draws; the smallest draw is kept).
pub fn build_lambda_tilde<S: Scalar>(g: &WeightedGraph<S>, seed: u64) -> Result<MultiLevelOracle<S>> {
    let h = tilde_levels(g.n());
    let cap = DEFAULT_SPACE_CAP_C * g.n() as f64 * h as f64;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut best: Option<MultiLevelOracle<S>> = None;
    for round in 0..=TILDE_MAX_RESTARTS {
        let mut o = build_multilevel(g, h, Variant::Tilde, rng.gen())?;
        o.restarts_used = round;
        let words = o.space().forest_words + o.space().table_words;
        let within = (words as f64) <= cap;
        let better = best
            .as_ref()
            .map_or(true, |b| words < b.space().forest_words + b.space().table_words);
        if better {
            best = Some(o);
        }
        if within {
            break;
        }
    }
    Ok(best.unwrap())
}

impl<S: Scalar> MultiLevelOracle<S> {
    /// Declared stretch bound `6 * 7^{h-1} - 1`.
    pub fn stretch_bound(&self) -> f64 {
        6.0 * 7.0f64.powi(self.h as i32 - 1) - 1.0
    }

    /// Sharpened per-query bound for meet level `p`.
    pub fn stretch_bound_at(p: usize) -> f64 {
        6.0 * 7.0f64.powi(p as i32 - 1) - 1.0
    }

    pub fn holds_graph(&self) -> bool {
        self.graph.is_some()
    }

    pub fn space(&self) -> MultiLevelSpace {
        let forest_words = self.hierarchy.forests.len() * self.n * 4;
        let mut table_words = 0usize;
        for d in &self.structures.dppros {
            let r = d.space_report();
            table_words += r.n_words + r.branch_words + r.pair_words;
        }
        let audit_ball_words: usize = self
            .structures
            .balls
            .iter()
            .flat_map(|m| m.values())
            .map(|b| 2 * b.len())
            .sum();
        MultiLevelSpace {
            forest_words,
            table_words,
            audit_ball_words,
            total_words: forest_words + table_words + audit_ball_words,
        }
    }

    /// Level-1 ball test of the standard variant; `None` in the tilde
    /// variant (balls are empty) or when the test fails.
    fn ball_probe(
        &self,
        center: VertexId,
        target: VertexId,
        explored: &mut usize,
    ) -> Result<Option<PathWalk<S>>> {
        let Some(g) = &self.graph else {
            return Ok(None);
        };
        let res = truncated_ball_search(
            g,
            center,
            |x| self.hierarchy.is_landmark(1, x),
            Some(target),
            Some(self.hierarchy.radius(1, center)),
        )?;
        *explored += res.explored.len();
        Ok(match res.outcome {
            BallOutcome::FoundTarget => Some(res.path_to_meeting(center)),
            BallOutcome::FoundStopper => None,
        })
    }

    /// Escalation query. Always terminates by level `h`, where the pair set
    /// is complete.
    pub fn query(&self, u: VertexId, v: VertexId) -> Result<OracleAnswer<S>> {
        if u == v {
            return Ok(OracleAnswer::trivial(u));
        }
        let mut explored = 0usize;
        let mut probes = 0usize;
        if self.variant == Variant::Standard {
            if let Some(walk) = self.ball_probe(v, u, &mut explored)? {
                return Ok(OracleAnswer {
                    walk: walk.reversed(),
                    meet_level: 1,
                    probes,
                    ball_explored: explored,
                });
            }
            if let Some(walk) = self.ball_probe(u, v, &mut explored)? {
                return Ok(OracleAnswer {
                    walk,
                    meet_level: 1,
                    probes,
                    ball_explored: explored,
                });
            }
        }
        // climb the ladders until the current landmark pair is stored
        let mut uj = u;
        let mut vj = v;
        let mut u_ladder: Vec<VertexId> = Vec::new();
        let mut v_ladder: Vec<VertexId> = Vec::new();
        let mut meet = 0usize;
        let mut middle: Option<PathWalk<S>> = None;
        for j in 1..=self.h {
            let nu = self.hierarchy.nearest(j, uj);
            let nv = self.hierarchy.nearest(j, vj);
            probes += 2;
            u_ladder.push(nu);
            v_ladder.push(nv);
            uj = nu;
            vj = nv;
            if uj == vj {
                meet = j;
                break;
            }
            probes += 1;
            let d = &self.structures.dppros[j - 1];
            if j == self.h || d.pair_set().contains(uj, vj) {
                // walking probes are per reported edge and excluded here
                let (w, _) = d.query_counted(uj, vj)?;
                middle = Some(w);
                meet = j;
                break;
            }
        }
        // assemble: u's ladder up, the exact middle, v's ladder down
        let mut walk = PathWalk::single(u);
        let mut cur = u;
        for j in 1..=meet {
            let seg = self.hierarchy.forests[j - 1].path_to_root(cur);
            walk.extend_with(&seg);
            cur = u_ladder[j - 1];
        }
        if let Some(mid) = middle {
            walk.extend_with(&mid);
        }
        let mut down = PathWalk::single(v);
        let mut vcur = v;
        for j in 1..=meet {
            let seg = self.hierarchy.forests[j - 1].path_to_root(vcur);
            down.extend_with(&seg);
            vcur = v_ladder[j - 1];
        }
        walk.extend_with(&down.reversed());
        Ok(OracleAnswer {
            walk,
            meet_level: meet,
            probes,
            ball_explored: explored,
        })
    }

    /// Confinement audit at level `i < h`: for every branching event between
    /// stored pairs `(a, b)` and `(c, d)` and every orientation `(x, y)`
    /// with `d(x, y) < r_{i+1}(x) / 3`, the other pair's endpoints must lie
    /// in `Ball_{i+1}(x)`. Returns the violation count (expected 0).
    pub fn audit_branch_confinement(&self, level: usize) -> usize {
        if level >= self.h {
            return 0;
        }
        let d = &self.structures.dppros[level - 1];
        let balls = &self.structures.balls[level - 1];
        let third = S::from_u8(3).unwrap();
        let pair_ids: HashSet<(u32, u32)> = d.event_path_pairs().collect();
        let mut violations = 0usize;
        for (pa, pb) in pair_ids {
            let (a, b) = d.pair_set().pairs()[pa as usize];
            let (c, dd) = d.pair_set().pairs()[pb as usize];
            for ((x, y), (o1, o2)) in [
                ((a, b), (c, dd)),
                ((b, a), (c, dd)),
                ((c, dd), (a, b)),
                ((dd, c), (a, b)),
            ] {
                let ball = &balls[&x];
                let Some(&dxy) = ball.get(&y) else { continue };
                if dxy < self.hierarchy.radius(level + 1, x) / third {
                    if !ball.contains_key(&o1) || !ball.contains_key(&o2) {
                        violations += 1;
                    }
                }
            }
        }
        violations
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphModel, WeightMode};
    use crate::testutil;

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
    fn exponent_formula() {
        // large n so the clamp stays inactive
        let n = 1usize << 40;
        let e1 = level_exponents(n, 1);
        assert!((e1[0].0 - 0.25).abs() < 1e-12);
        let e3 = level_exponents(n, 3);
        let want = [37.0 / 64.0, 7.0 / 16.0, 0.25];
        for (got, want) in e3.iter().zip(want) {
            assert!((got.0 - want).abs() < 1e-12);
        }
        // rho strictly decreasing when unclamped
        assert!(e3[0].1 > e3[1].1 && e3[1].1 > e3[2].1);
    }

    #[test]
    fn exponents_nonincreasing_after_clamp() {
        for n in [16usize, 64, 256, 1024] {
            for h in 1..=6 {
                let e = level_exponents(n, h);
                for w in e.windows(2) {
                    assert!(w[1].1 <= w[0].1, "rho increased at n={n}, h={h}");
                }
                let n_f = n as f64;
                for &(_, rho) in &e {
                    assert!(rho <= n_f && rho >= (3.0 * n_f.ln()).min(n_f));
                }
            }
        }
    }

    #[test]
    fn tilde_level_count() {
        assert_eq!(tilde_levels(1 << 16), 10);
        assert_eq!(tilde_levels(2), 3);
    }

    #[test]
    fn tilde_first_level_is_identity() {
        let g = gnm(64, 200, 1);
        let hier = build_hierarchy(&g, 3, Variant::Tilde, 2).unwrap();
        assert_eq!(hier.levels[0].len(), 64);
        for v in 0..64u32 {
            assert_eq!(hier.radius(1, v), 0.0);
            assert_eq!(hier.nearest(1, v), v);
        }
    }

    #[test]
    fn h1_has_only_top_structure() {
        let g = gnm(64, 200, 3);
        let o = build_multilevel(&g, 1, Variant::Standard, 4).unwrap();
        assert_eq!(o.structures.dppros.len(), 1);
        assert!(o.structures.balls.is_empty());
        let top = o.hierarchy.levels[0].len();
        assert_eq!(o.structures.pair_count(1), top * (top - 1) / 2);
    }

    #[test]
    fn level_sizes_concentrate() {
        let g = gnm(512, 2048, 7);
        let rho2 = level_exponents(512, 2)[1].1;
        let mut sizes = Vec::new();
        for seed in 0..30u64 {
            let hier = build_hierarchy(&g, 2, Variant::Standard, seed).unwrap();
            sizes.push(hier.levels[1].len());
        }
        sizes.sort_unstable();
        let median = sizes[sizes.len() / 2] as f64;
        assert!(median >= rho2 / 2.0 && median <= 2.0 * rho2, "median {median} vs rho2 {rho2}");
    }

    #[test]
    fn stretch_and_ladder_growth_h2() {
        let g = gnm(512, 2048, 3);
        let d = testutil::apsp(&g);
        let o = build_multilevel(&g, 2, Variant::Standard, 11).unwrap();
        assert_eq!(o.stretch_bound(), 41.0);
        for i in 0..300u32 {
            let (u, v) = ((i * 3) % 512, (i * 17 + 29) % 512);
            if u == v {
                continue;
            }
            let a = o.query(u, v).unwrap();
            g.validate_walk(&a.walk.vertices, a.walk.length).unwrap();
            let exact = d[u as usize][v as usize];
            let bound = MultiLevelOracle::<f64>::stretch_bound_at(a.meet_level);
            assert!(a.walk.length <= bound * exact, "per-query bound breached");
            assert!(a.meet_level <= 2);
            assert!(a.probes <= 4 * o.h);
            // ladder growth law at climbed levels
            if a.meet_level == 2 && a.ball_explored > 0 {
                let u1 = o.hierarchy.nearest(1, u);
                let v1 = o.hierarchy.nearest(1, v);
                if u1 != v1 {
                    let climb = o.hierarchy.radius(2, u1);
                    assert!(climb <= 3.0 * d[u1 as usize][v1 as usize] + 1e-9);
                }
            }
        }
    }

    #[test]
    fn tilde_drops_graph_and_stays_valid() {
        let g = gnm(256, 1024, 5);
        let d = testutil::apsp(&g);
        let o = build_multilevel(&g, 2, Variant::Tilde, 6).unwrap();
        assert!(!o.holds_graph());
        for i in 0..200u32 {
            let (u, v) = ((i * 5) % 256, (i * 11 + 3) % 256);
            if u == v {
                continue;
            }
            let a = o.query(u, v).unwrap();
            g.validate_walk(&a.walk.vertices, a.walk.length).unwrap();
            let exact = d[u as usize][v as usize];
            let bound = MultiLevelOracle::<f64>::stretch_bound_at(a.meet_level);
            assert!(a.walk.length <= bound * exact);
            assert_eq!(a.ball_explored, 0);
        }
    }

    #[test]
    fn confinement_audit_clean_on_small_graphs() {
        for seed in 0..20u64 {
            let g = gnm(128, 512, 700 + seed);
            let o = build_multilevel(&g, 2, Variant::Standard, seed).unwrap();
            assert_eq!(o.audit_branch_confinement(1), 0, "seed {seed}");
        }
    }

    #[test]
    fn lambda_tilde_build_shape() {
        let g = gnm(256, 512, 9);
        let o = build_lambda_tilde(&g, 13).unwrap();
        assert_eq!(o.h, tilde_levels(256));
        assert!(!o.holds_graph());
        let d = testutil::apsp(&g);
        for i in 0..100u32 {
            let (u, v) = ((i * 3 + 1) % 256, (i * 19 + 7) % 256);
            if u == v {
                continue;
            }
            let a = o.query(u, v).unwrap();
            g.validate_walk(&a.walk.vertices, a.walk.length).unwrap();
            assert!(a.probes <= 4 * o.h, "probes {} > 4h", a.probes);
            let exact = d[u as usize][v as usize];
            assert!(a.walk.length <= o.stretch_bound() * exact);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = gnm(32, 64, 1);
        assert!(build_hierarchy(&g, 0, Variant::Standard, 0).is_err());
        let disconnected =
            WeightedGraph::<f64>::from_edge_list(4, vec![(0, 1, 1.0), (2, 3, 1.0)], 0).unwrap();
        assert!(build_hierarchy(&disconnected, 1, Variant::Standard, 0).is_err());
    }
}
