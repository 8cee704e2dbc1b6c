//! Exact solver for small `k`: tree decomposition of width at most `fen + 1`
//! and a dynamic program over it.

mod dp;
mod td;

pub use dp::{solve_twdp, DEFAULT_STATE_BUDGET};
pub use td::{td_forest, td_from_feedback_edges, td_min_degree, td_narrowest, TreeDecomposition};

use crate::coloring::PartialColoring;
use crate::error::{SolveError, SolveResult};
use crate::graph::Graph;
use crate::reference::brute_force_b_coloring;

/// Runs the DP on the narrower of the two decompositions of the whole graph,
/// falling back to brute force when the state budget trips and `n <= brute_cap`.
pub fn solve_smallk(g: &Graph, k: usize, budget: usize, brute_cap: usize) -> SolveResult<Option<PartialColoring>> {
    match solve_twdp(g, k, &td_narrowest(g), budget) {
        Err(SolveError::Budget { .. } | SolveError::TooLarge { .. }) if g.n() <= brute_cap => {
            log::debug!("twdp budget exceeded on n={}, k={k}; using brute force", g.n());
            brute_force_b_coloring(g, k, brute_cap)
        }
        other => other,
    }
}
