//! Path-reporting approximate distance oracles.
//!
//! The stack, bottom to top:
//! - [`graph`]: weighted undirected graphs with random per-edge tie-break
//!   keys, TSV IO, and synthetic generators.
//! - [`paths`]: canonical shortest paths (unique w.h.p.) and truncated ball
//!   exploration.
//! - [`dppro`]: an exact path-reporting oracle for a fixed pair set, built on
//!   home paths and branching events.
//! - [`tz`]: a landmark hierarchy oracle with stretch `2k - 1` and its union
//!   spanner.
//! - [`basic`]: the single-level landmark oracle with stretch `6k - 1`.
//! - [`multilevel`]: the multi-level ball hierarchy with escalation queries,
//!   including the linear-size variant.
//! - [`spanner`]: greedy multiplicative spanners and oracle composition.

pub mod basic;
pub mod dppro;
pub mod error;
pub mod graph;
pub mod multilevel;
pub mod paths;
pub mod scalar;
pub mod spanner;
pub mod tz;

pub use error::{OracleError, Result};
pub use scalar::Scalar;

/// Graph over `f64` weights, the default throughout the CLI.
pub type WeightedGraph64 = graph::WeightedGraph<f64>;
/// Graph over `f32` weights.
pub type WeightedGraph32 = graph::WeightedGraph<f32>;

use graph::VertexId;
use paths::PathWalk;
use serde::{Deserialize, Serialize};

/// Answer returned by the approximate oracles: a genuine walk in the host
/// graph plus per-query accounting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleAnswer<S> {
    pub walk: PathWalk<S>,
    /// Level at which the query resolved (escalation oracles; 1 otherwise).
    pub meet_level: usize,
    /// Table probes spent answering, excluding per-edge reporting probes.
    pub probes: usize,
    /// Vertices explored by on-line ball searches during the query.
    pub ball_explored: usize,
}

impl<S: Scalar> OracleAnswer<S> {
    pub fn trivial(v: VertexId) -> Self {
        Self {
            walk: PathWalk::single(v),
            meet_level: 1,
            probes: 0,
            ball_explored: 0,
        }
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    //! Independent reference oracles for tests: Bellman-Ford distances and
    //! exhaustive APSP, deliberately sharing no code with the Dijkstra stack.

    use crate::graph::{VertexId, WeightedGraph};
    use crate::scalar::Scalar;

    pub fn bellman_ford<S: Scalar>(g: &WeightedGraph<S>, source: VertexId) -> Vec<S> {
        let n = g.n();
        let mut dist = vec![S::infinity(); n];
        dist[source as usize] = S::zero();
        for _ in 0..n.saturating_sub(1) {
            let mut changed = false;
            for e in g.edges() {
                let (u, v) = (e.u as usize, e.v as usize);
                if dist[u] + e.w < dist[v] {
                    dist[v] = dist[u] + e.w;
                    changed = true;
                }
                if dist[v] + e.w < dist[u] {
                    dist[u] = dist[v] + e.w;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        dist
    }

    pub fn apsp<S: Scalar>(g: &WeightedGraph<S>) -> Vec<Vec<S>> {
        (0..g.n() as VertexId).map(|s| bellman_ford(g, s)).collect()
    }
}
