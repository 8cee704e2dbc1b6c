//! Cluster modulators by induced-P3 branching, and the co-cluster
//! decomposition derived from them on the complement.

use serde::{Deserialize, Serialize};

use crate::error::{SolveError, SolveResult};
use crate::graph::Graph;

/// Some induced path `a - b - c` avoiding deleted vertices.
fn induced_p3(g: &Graph, deleted: &[bool]) -> Option<[usize; 3]> {
    for b in g.vertices().filter(|&b| !deleted[b]) {
        let nb: Vec<usize> = g.neighbors(b).iter().copied().filter(|&x| !deleted[x]).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                if !g.has_edge(a, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn branch(g: &Graph, deleted: &mut Vec<bool>, budget: usize) -> bool {
    let Some(p3) = induced_p3(g, deleted) else { return true };
    if budget == 0 {
        return false;
    }
    for x in p3 {
        deleted[x] = true;
        if branch(g, deleted, budget - 1) {
            return true;
        }
        deleted[x] = false;
    }
    false
}

/// A minimum set `S` with `|S| <= budget` such that `G - S` is a disjoint
/// union of cliques, or `None` if every such set is larger than `budget`.
///
/// Iterative deepening over a 3-way branching on induced P3s, so the first
/// solution found has minimum size.
pub fn cluster_modulator(g: &Graph, budget: usize) -> Option<Vec<usize>> {
    for b in 0..=budget {
        let mut deleted = vec![false; g.n()];
        if branch(g, &mut deleted, b) {
            return Some(g.vertices().filter(|&v| deleted[v]).collect());
        }
    }
    None
}

/// `S` plus the maximal independent sets of the complete multipartite graph
/// `G - S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoclusterDecomposition {
    /// Sorted modulator.
    pub s: Vec<usize>,
    /// Parts of `G - S`, each sorted, ordered by smallest vertex.
    pub parts: Vec<Vec<usize>>,
    /// `min(|S|, k)`.
    pub p: usize,
    /// Position of each vertex in `s`, if any.
    pub s_index: Vec<Option<usize>>,
    /// Part index of each vertex outside `S`.
    pub part_of: Vec<Option<usize>>,
    /// Bitmask over `s` positions of each vertex's neighbors in `S`.
    pub vertex_type: Vec<u32>,
}

impl CoclusterDecomposition {
    /// Builds the decomposition for a given modulator `s` of the complement.
    pub fn from_modulator(g: &Graph, s: Vec<usize>, k: usize) -> Self {
        assert!(s.len() <= 32, "modulator larger than 32 vertices");
        let mut s_index = vec![None; g.n()];
        for (i, &v) in s.iter().enumerate() {
            s_index[v] = Some(i);
        }
        let rest: Vec<usize> = g.vertices().filter(|&v| s_index[v].is_none()).collect();
        let comp = g.induced(&rest).complement().components();
        let parts: Vec<Vec<usize>> = comp.into_iter().map(|c| c.into_iter().map(|i| rest[i]).collect()).collect();
        let mut part_of = vec![None; g.n()];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                part_of[v] = Some(i);
            }
        }
        let vertex_type = g
            .vertices()
            .map(|v| g.neighbors(v).iter().filter_map(|&w| s_index[w]).fold(0u32, |m, i| m | 1 << i))
            .collect();
        let p = s.len().min(k);
        CoclusterDecomposition { s, parts, p, s_index, part_of, vertex_type }
    }

    /// True if `G - S` is complete multipartite with exactly these parts.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let rest: Vec<usize> = g.vertices().filter(|&v| self.s_index[v].is_none()).collect();
        rest.iter().all(|&u| {
            rest.iter().all(|&v| u == v || g.has_edge(u, v) == (self.part_of[u] != self.part_of[v]))
        })
    }
}

/// Minimum co-cluster modulator (a cluster modulator of the complement) and
/// the resulting parts. Fails if the modulator would exceed `max_s`.
pub fn cocluster_decomposition(g: &Graph, k: usize, max_s: usize) -> SolveResult<CoclusterDecomposition> {
    let s = cluster_modulator(&g.complement(), max_s)
        .ok_or(SolveError::TooLarge { what: "co-cluster modulator", actual: max_s + 1, cap: max_s })?;
    Ok(CoclusterDecomposition::from_modulator(g, s, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn is_cluster_after(g: &Graph, s: &[usize]) -> bool {
        let mut del = vec![false; g.n()];
        for &v in s {
            del[v] = true;
        }
        induced_p3(g, &del).is_none()
    }

    #[test]
    fn small_modulators() {
        let cliques = Graph::from_edges(5, &[(0, 1), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(cluster_modulator(&cliques, 3), Some(vec![]));
        assert_eq!(cluster_modulator(&fixtures::path(3), 3).map(|s| s.len()), Some(1));
        assert_eq!(cluster_modulator(&fixtures::cycle(5), 3).map(|s| s.len()), Some(2));
        assert_eq!(cluster_modulator(&fixtures::cycle(5), 1), None);
    }

    #[test]
    fn decompositions() {
        let d = cocluster_decomposition(&fixtures::complete_bipartite(2, 3), 3, 4).unwrap();
        assert!(d.s.is_empty());
        assert_eq!(d.parts, vec![vec![0, 1], vec![2, 3, 4]]);
        let p4 = fixtures::path(4);
        let d = cocluster_decomposition(&p4, 3, 4).unwrap();
        assert_eq!(d.s.len(), 1);
        assert!(d.is_valid(&p4));
    }

    #[test]
    fn minimal_against_exhaustive() {
        let mut r = crate::gen::rng(11);
        for _ in 0..60 {
            let g = crate::gen::random_graph(8, 0.5, &mut r);
            let best = (0u32..1 << 8)
                .filter(|m| {
                    let s: Vec<usize> = (0..8).filter(|i| m >> i & 1 == 1).collect();
                    is_cluster_after(&g, &s)
                })
                .map(u32::count_ones)
                .min()
                .unwrap() as usize;
            let s = cluster_modulator(&g, 8).unwrap();
            assert_eq!(s.len(), best);
            assert!(is_cluster_after(&g, &s));
        }
    }
}
