//! Exact b-coloring solvers.
//!
//! A `k`-b-coloring is a proper coloring with exactly `k` colors in which
//! every color class has a vertex adjacent to all other colors. The crate
//! provides a brute-force oracle, a tree-decomposition dynamic program, a
//! solver parameterized by distance to a complete multipartite graph, and a
//! solver parameterized by the feedback edge number.

pub mod cocluster;
pub mod coloring;
pub mod error;
pub mod fen;
pub mod fixtures;
pub mod fuzz;
pub mod gen;
pub mod graph;
pub mod matching;
pub mod reference;
pub mod smallk;

pub use coloring::{verify_b_coloring, PartialColoring, VerifyReport, Violation};
pub use error::{ParseError, SolveError, SolveResult};
pub use fen::{solve_fen, solve_fen_with};
pub use graph::{Dist, EdgeSet, Graph};
pub use matching::max_bipartite_matching;
