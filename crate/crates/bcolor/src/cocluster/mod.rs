//! Exact solver parameterized by the distance to a complete multipartite graph.

mod modulator;
mod signature;
mod solver;

pub use modulator::{cluster_modulator, cocluster_decomposition, CoclusterDecomposition};
pub use signature::{
    available_set_types, enumerate_signatures, for_each_signature, is_signature, set_type_of, vertex_type_of, SetType,
    Signature, SignatureMode,
};
pub use solver::{
    assemble_coloring, candidate_subsets, classify_part, minimal_sigma_coloring, solve_cocluster, solve_with_decomposition,
    CoclusterCaps, MinimalColoring, PartFlags, DEFAULT_P_CAP, DEFAULT_S_CAP,
};
