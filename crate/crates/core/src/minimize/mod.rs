//! Cover minimization.
//!
//! Grouping cells on a Karnaugh map under exclusive-or semantics is the
//! same problem as finding a minimum-cost set of cubes whose XOR equals `f`.
//! [`minimize_exact`] solves it by iterative deepening for small arities;
//! [`minimize_heuristic`] scales to the full arity range.

mod exact;
mod explain;
mod heuristic;
mod rules;

use std::fmt;
use std::sync::Arc;
use std::time::Duration;

pub use exact::{enumerate_covers, minimize_exact, Enumeration, EXACT_MAX_ARITY};
pub use explain::{explain, replay, RewriteStep, Rule};
pub use heuristic::minimize_heuristic;
pub use rules::{rule1_merge, rule2_merge, rule3_expand, xor_table, CubeBag};

use crate::circuit::{cube_gates, Circuit, CircuitKind, Gate};
use crate::error::Result;
use crate::logic::{Cube, ParityCover, TruthTable};

/// Additive cost of a cover: the sum of its cubes' costs.
///
/// Every cube maps to its own gate group, so circuit-level costs that are
/// charged per gate decompose this way.
pub trait CubeCost: Send + Sync {
    fn cube_cost(&self, cube: &Cube) -> f64;

    fn cover_cost(&self, cover: &ParityCover) -> f64 {
        cover.cubes().iter().fold(0.0, |acc, c| acc + self.cube_cost(c))
    }
}

/// One unit per cube.
#[derive(Debug, Clone, Copy, Default)]
pub struct CubeCount;

impl CubeCost for CubeCount {
    fn cube_cost(&self, _cube: &Cube) -> f64 {
        1.0
    }
}

/// Number of NOT, C-NOT, Toffoli and Hadamard gates in the cube's lowered
/// gate group, parity sandwiches included.
#[derive(Debug, Clone, Copy)]
pub struct GateCount(pub CircuitKind);

impl CubeCost for GateCount {
    fn cube_cost(&self, cube: &Cube) -> f64 {
        let gates = cube_gates(cube, self.0).expect("well-formed cube");
        let c = Circuit::new(cube.arity(), self.0, gates).expect("gates within register");
        c.decomposed()
            .gates()
            .iter()
            .filter(|g| !matches!(g, Gate::R { .. }))
            .count() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exact,
    Heuristic,
}

#[derive(Clone)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Upper bound on the number of cubes the exact search considers.
    pub max_cubes: usize,
    /// Whether cubes with a parity factor may appear in the result.
    pub allow_parity_cubes: bool,
    pub cost: Arc<dyn CubeCost>,
    /// Wall-clock limit for the exact search; `None` runs to completion.
    pub time_budget: Option<Duration>,
}

pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(10);

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            mode: SearchMode::Exact,
            max_cubes: 16,
            allow_parity_cubes: true,
            cost: Arc::new(CubeCount),
            time_budget: Some(DEFAULT_TIME_BUDGET),
        }
    }
}

impl SearchConfig {
    pub fn exact() -> Self {
        Self::default()
    }

    pub fn heuristic() -> Self {
        Self {
            mode: SearchMode::Heuristic,
            ..Self::default()
        }
    }

    pub fn with_parity_cubes(mut self, allow: bool) -> Self {
        self.allow_parity_cubes = allow;
        self
    }

    pub fn with_cost(mut self, cost: Arc<dyn CubeCost>) -> Self {
        self.cost = cost;
        self
    }

    pub fn with_time_budget(mut self, budget: Option<Duration>) -> Self {
        self.time_budget = budget;
        self
    }

    pub fn with_max_cubes(mut self, max_cubes: usize) -> Self {
        self.max_cubes = max_cubes.max(1);
        self
    }
}

impl fmt::Debug for SearchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchConfig")
            .field("mode", &self.mode)
            .field("max_cubes", &self.max_cubes)
            .field("allow_parity_cubes", &self.allow_parity_cubes)
            .field("time_budget", &self.time_budget)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimized {
    pub cover: ParityCover,
    pub cost: f64,
    /// False when the exact search ran out of time or the heuristic was used.
    pub optimal: bool,
}

/// Runs the search selected by `cfg.mode`.
pub fn minimize(f: &TruthTable, cfg: &SearchConfig) -> Result<Minimized> {
    match cfg.mode {
        SearchMode::Exact => minimize_exact(f, cfg),
        SearchMode::Heuristic => {
            let cover = minimize_heuristic(f, cfg);
            Ok(Minimized {
                cost: cfg.cost.cover_cost(&cover),
                cover,
                optimal: false,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_count_includes_sandwich() {
        let fcnot = GateCount(CircuitKind::Fcnot);
        assert_eq!(fcnot.cube_cost(&Cube::parse(3, "x2").unwrap()), 1.0);
        assert_eq!(fcnot.cube_cost(&Cube::parse(3, "x2 ~x3").unwrap()), 3.0);
        assert_eq!(fcnot.cube_cost(&Cube::parse(3, "(x1^x2) x3").unwrap()), 3.0);
        let fcps = GateCount(CircuitKind::Fcps);
        assert_eq!(fcps.cube_cost(&Cube::parse(3, "x1 x3").unwrap()), 3.0);
        assert_eq!(fcps.cube_cost(&Cube::universe(3)), 0.0);
    }
}
