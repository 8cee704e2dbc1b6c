//! Fixed, seeded instances shared by the benchmarks.

use bcolor::gen::{random_cocluster, random_fen_graph, random_graph, rng};
use bcolor::Graph;

/// A small dense graph, in reach of brute force.
pub fn small_dense() -> Graph {
    random_graph(11, 0.45, &mut rng(11))
}

/// A sparse graph with `extra` feedback edges on 40 vertices.
pub fn sparse(extra: usize) -> Graph {
    random_fen_graph(40, extra, &mut rng(40 + extra as u64))
}

/// Complete multipartite graph plus a two-vertex modulator.
pub fn cocluster() -> Graph {
    random_cocluster(4, 3, 2, &mut rng(7))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_stable() {
        assert_eq!(small_dense(), small_dense());
        assert_eq!(sparse(3).feedback_edge_number(), 3);
        assert!(cocluster().n() <= 14);
    }
}
