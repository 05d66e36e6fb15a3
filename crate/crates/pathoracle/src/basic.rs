//! Single-level landmark oracle with stretch `6k - 1`.
//!
//! Landmarks are sampled (uniformly, or degree-weighted for dense graphs), a
//! Thorup-Zwick oracle is built on their metric closure, and the union
//! spanner of that oracle becomes the pair set of an exact pair oracle over
//! the host graph. Queries first test the two landmark balls by truncated
//! search and fall back to the landmark route.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::dppro::{self, Dppro, PairSet, SpaceReport};
use crate::error::{OracleError, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::paths::{
    multi_source_forest, truncated_ball_search, BallOutcome, CanonicalPathSystem,
    MultiSourceForest,
};
use crate::scalar::Scalar;
use crate::tz::{self, TzOracle, UnionSpanner};
use crate::OracleAnswer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SamplingMode {
    Uniform,
    /// Selection probability `min(1, ceil(deg(u)/λ) * ρ/n)` with `λ = m/n`;
    /// the expected landmark count is at most `3ρ`.
    DegreeWeighted,
}

/// Sampled landmark set with the nearest-landmark shortest-path forest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LandmarkSet<S> {
    pub members: Vec<VertexId>,
    pub is_landmark: Vec<bool>,
    forest: MultiSourceForest<S>,
    pub rho: f64,
    pub mode: SamplingMode,
    /// true when the draw came up empty and the min-id vertex was forced in
    pub forced: bool,
}

impl<S: Scalar> LandmarkSet<S> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Nearest landmark `ℓ(v)`; ties go to the smallest landmark id.
    pub fn nearest(&self, v: VertexId) -> VertexId {
        self.forest.root[v as usize]
    }

    /// `D(v) = d(v, ℓ(v))`.
    pub fn radius(&self, v: VertexId) -> S {
        self.forest.dist[v as usize]
    }

    /// Forest path `v -> ℓ(v)`.
    pub fn path_to_landmark(&self, g: &WeightedGraph<S>, v: VertexId) -> crate::paths::PathWalk<S> {
        self.forest.path_to_root(g, v)
    }
}

/// Landmark set over an explicit member list; used for deterministic tests
/// and degenerate configurations.
pub fn fixed_landmarks<S: Scalar>(
    g: &WeightedGraph<S>,
    members: Vec<VertexId>,
) -> Result<LandmarkSet<S>> {
    if members.is_empty() {
        return Err(OracleError::Parameter("landmark set must be nonempty".into()));
    }
    let mut members = members;
    members.sort_unstable();
    members.dedup();
    let mut is_landmark = vec![false; g.n()];
    for &v in &members {
        is_landmark[v as usize] = true;
    }
    let rho = members.len() as f64;
    let forest = multi_source_forest(g, &members);
    if forest.dist.iter().any(|d| !d.is_finite()) {
        return Err(OracleError::Disconnected { vertex: 0 });
    }
    Ok(LandmarkSet {
        members,
        is_landmark,
        forest,
        rho,
        mode: SamplingMode::Uniform,
        forced: false,
    })
}

/// Independent per-vertex landmark draws plus the multi-source forest.
pub fn sample_landmarks<S: Scalar>(
    g: &WeightedGraph<S>,
    rho: f64,
    mode: SamplingMode,
    seed: u64,
) -> Result<LandmarkSet<S>> {
    let n = g.n();
    if !(rho > 0.0) || rho > n as f64 {
        return Err(OracleError::Parameter(format!(
            "rho = {rho} out of range (0, n = {n}]"
        )));
    }
    let lambda = g.density_lambda().max(1.0);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut members = Vec::new();
    let mut is_landmark = vec![false; n];
    for v in 0..n {
        let p = match mode {
            SamplingMode::Uniform => rho / n as f64,
            SamplingMode::DegreeWeighted => {
                let copies = (g.degree(v as VertexId) as f64 / lambda).ceil().max(1.0);
                (copies * rho / n as f64).min(1.0)
            }
        };
        if rng.gen::<f64>() < p {
            is_landmark[v] = true;
            members.push(v as VertexId);
        }
    }
    let forced = members.is_empty();
    if forced {
        is_landmark[0] = true;
        members.push(0);
    }
    let forest = multi_source_forest(g, &members);
    if forest.dist.iter().any(|d| !d.is_finite()) {
        return Err(OracleError::Disconnected { vertex: 0 });
    }
    Ok(LandmarkSet {
        members,
        is_landmark,
        forest,
        rho,
        mode,
        forced,
    })
}

/// `ρ = n^{k/(2k+2)} / k`, clamped to `[3 ln n, n]`.
///
/// The lower clamp keeps tiny instances from drawing empty landmark sets;
/// the constant 3 is a documented knob.
pub fn choose_rho(n: usize, k: usize) -> f64 {
    let n_f = n as f64;
    let raw = n_f.powf(k as f64 / (2 * k + 2) as f64) / k as f64;
    raw.max(3.0 * n_f.ln()).min(n_f)
}

/// Space decomposition of a built oracle.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BasicSpace {
    pub landmark_count: usize,
    pub closure_edges: usize,
    pub spanner_pairs: usize,
    pub dppro: SpaceReport,
    /// `k² |L|^{2 + 2/k}`, to compare against Θ(n) for this draw
    pub balance_term: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasicOracle<S> {
    graph: WeightedGraph<S>,
    pub k: usize,
    pub landmarks: LandmarkSet<S>,
    /// metric closure of the landmark set; vertex i is `landmarks.members[i]`
    closure: WeightedGraph<S>,
    tz: TzOracle<S>,
    pub spanner: UnionSpanner,
    dppro: Dppro<S>,
}

/// Full build pipeline with `ρ = choose_rho(n, k)` and uniform sampling.
pub fn build_basic<S: Scalar>(g: &WeightedGraph<S>, k: usize, seed: u64) -> Result<BasicOracle<S>> {
    let rho = choose_rho(g.n(), k);
    build_basic_with(g, k, rho, SamplingMode::Uniform, seed)
}

pub fn build_basic_with<S: Scalar>(
    g: &WeightedGraph<S>,
    k: usize,
    rho: f64,
    mode: SamplingMode,
    seed: u64,
) -> Result<BasicOracle<S>> {
    if k < 1 {
        return Err(OracleError::Parameter("basic oracle requires k >= 1".into()));
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected { vertex: 0 });
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let landmarks = sample_landmarks(g, rho, mode, rng.gen())?;
    build_on_landmarks(g, k, landmarks, &mut rng)
}

/// Builds the closure, TZ oracle, and pair oracle over a fixed landmark set.
pub fn build_on_landmarks<S: Scalar>(
    g: &WeightedGraph<S>,
    k: usize,
    landmarks: LandmarkSet<S>,
    rng: &mut ChaCha12Rng,
) -> Result<BasicOracle<S>> {
    let l = landmarks.members.len();
    // one canonical Dijkstra per landmark; the trees double as the path
    // system for the pair oracle below
    let mut system = CanonicalPathSystem::new();
    for &u in &landmarks.members {
        system.add_full_source(g, u);
    }
    let mut closure_edges = Vec::with_capacity(l.saturating_sub(1) * l / 2);
    for i in 0..l {
        for j in i + 1..l {
            let d = system
                .dist(landmarks.members[i], landmarks.members[j])
                .ok_or(OracleError::Disconnected { vertex: landmarks.members[i] })?;
            closure_edges.push((i as VertexId, j as VertexId, d));
        }
    }
    let closure = WeightedGraph::from_edge_list(l, closure_edges, rng.gen())?;
    let tz = tz::build_tz(&closure, k, rng.gen(), 8)?;
    let spanner = tz.extract_union_spanner();
    let mut pairs = PairSet::default();
    for &(a, b) in &spanner.pairs {
        pairs.insert(landmarks.members[a as usize], landmarks.members[b as usize])?;
    }
    let dppro = dppro::build_dppro(g, pairs, &system)?;
    Ok(BasicOracle {
        graph: g.clone(),
        k,
        landmarks,
        closure,
        tz,
        spanner,
        dppro,
    })
}

impl<S: Scalar> BasicOracle<S> {
    pub fn graph(&self) -> &WeightedGraph<S> {
        &self.graph
    }

    pub fn dppro(&self) -> &Dppro<S> {
        &self.dppro
    }

    /// Declared stretch bound `6k - 1`.
    pub fn stretch_bound(&self) -> f64 {
        6.0 * self.k as f64 - 1.0
    }

    pub fn space(&self) -> BasicSpace {
        let l = self.landmarks.len();
        BasicSpace {
            landmark_count: l,
            closure_edges: self.closure.m(),
            spanner_pairs: self.spanner.len(),
            dppro: self.dppro.space_report(),
            balance_term: (self.k * self.k) as f64
                * (l as f64).powf(2.0 + 2.0 / self.k as f64),
        }
    }

    /// Ball test: is the target strictly closer to `center` than `ℓ(center)`?
    /// Returns the exact path `center -> target` when it is.
    fn ball_probe(
        &self,
        center: VertexId,
        target: VertexId,
        explored: &mut usize,
    ) -> Result<Option<crate::paths::PathWalk<S>>> {
        let res = truncated_ball_search(
            &self.graph,
            center,
            |x| self.landmarks.is_landmark[x as usize],
            Some(target),
            Some(self.landmarks.radius(center)),
        )?;
        *explored += res.explored.len();
        Ok(match res.outcome {
            BallOutcome::FoundTarget => Some(res.path_to_meeting(center)),
            BallOutcome::FoundStopper => None,
        })
    }

    pub fn query(&self, u: VertexId, v: VertexId) -> Result<OracleAnswer<S>> {
        if u == v {
            return Ok(OracleAnswer::trivial(u));
        }
        let mut explored = 0usize;
        let mut probes = 0usize;
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
        // landmark route: u -> ℓ(u) -> (TZ walk resolved pairwise) -> ℓ(v) -> v
        let lu = self.landmarks.nearest(u);
        let lv = self.landmarks.nearest(v);
        let index_of = |x: VertexId| {
            self.landmarks
                .members
                .binary_search(&x)
                .expect("nearest landmark is a member") as VertexId
        };
        let mut walk = self.landmarks.path_to_landmark(&self.graph, u);
        if lu != lv {
            let lz = self.tz.query(&self.closure, index_of(lu), index_of(lv))?;
            probes += 2 * self.k;
            for hop in lz.vertices.windows(2) {
                let a = self.landmarks.members[hop[0] as usize];
                let b = self.landmarks.members[hop[1] as usize];
                let (mid, p) = self.dppro.query_counted(a, b)?;
                probes += p;
                walk.extend_with(&mid);
            }
        }
        walk.extend_with(&self.landmarks.path_to_landmark(&self.graph, v).reversed());
        Ok(OracleAnswer {
            walk,
            meet_level: 1,
            probes,
            ball_explored: explored,
        })
    }
}
