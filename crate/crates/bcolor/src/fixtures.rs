//! Named graphs used throughout the tests, benches and CLI.

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
    Graph::from_edges(n, &edges)
}

/// Star with `leaves` leaves; the center is vertex 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edges(leaves + 1, &edges)
}

/// Complete bipartite graph with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_edges(a + b, &edges)
}

/// Complete multipartite graph with the given side sizes, sides numbered consecutively.
pub fn complete_multipartite(sides: &[usize]) -> Graph {
    let mut side_of = Vec::new();
    for (i, &s) in sides.iter().enumerate() {
        side_of.extend(std::iter::repeat_n(i, s));
    }
    let n = side_of.len();
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| side_of[u] != side_of[v]).collect();
    Graph::from_edges(n, &edges)
}

/// `u1..u4, v1..v4` (vertices `0..4` and `4..8`) with `u_i v_j` for `i != j`.
///
/// b-colorable with two or four colors, not with three.
pub fn g_im() -> Graph {
    let edges: Vec<_> = (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, 4 + j))).collect();
    Graph::from_edges(8, &edges)
}

/// Shape of a pivoted tree with m-degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotedTreeSpec {
    pub k: usize,
    /// Outer candidates hanging below the first gate; the rest go to the second.
    pub outer_on_first: usize,
    /// Extra leaves per outer candidate beyond the required `k - 2`.
    pub outer_extra: Vec<usize>,
    /// Extra leaves on the pivot.
    pub pivot_leaves: usize,
    /// Extra leaves on a gate with candidate children; any positive value
    /// breaks pivotedness.
    pub unpivot_leaves: usize,
}

impl PivotedTreeSpec {
    pub fn balanced(k: usize) -> Self {
        assert!(k >= 4, "pivoted tree family needs k >= 4");
        PivotedTreeSpec { k, outer_on_first: (k - 1) / 2, outer_extra: vec![0; k - 2], pivot_leaves: 0, unpivot_leaves: 0 }
    }

    /// Builds the tree. Vertex 0 is the pivot, 1 and 2 are the gates, and
    /// `3..k+1` are the outer candidates.
    pub fn build(&self) -> Graph {
        let k = self.k;
        assert!(k >= 4 && self.outer_on_first <= k - 2 && self.outer_extra.len() == k - 2);
        let outer_first = self.outer_on_first;
        let outer_second = k - 2 - outer_first;
        let mut edges = vec![(0, 1), (0, 2)];
        let mut next = k + 1;
        let mut leaf = |edges: &mut Vec<(usize, usize)>, parent: usize, count: usize| {
            for _ in 0..count {
                edges.push((parent, next));
                next += 1;
            }
        };
        for i in 0..k - 2 {
            let c = 3 + i;
            let gate = if i < outer_first { 1 } else { 2 };
            edges.push((gate, c));
        }
        // the defect goes on a gate that has candidate children, otherwise
        // the degree condition never looks at it
        let (extra_first, extra_second) = if outer_first > 0 { (self.unpivot_leaves, 0) } else { (0, self.unpivot_leaves) };
        leaf(&mut edges, 1, k - 2 - outer_first + extra_first);
        leaf(&mut edges, 2, k - 2 - outer_second + extra_second);
        for i in 0..k - 2 {
            leaf(&mut edges, 3 + i, k - 2 + self.outer_extra[i]);
        }
        leaf(&mut edges, 0, self.pivot_leaves);
        let n = edges.len() + 1;
        Graph::from_edges(n, &edges)
    }
}

/// Pivoted tree with m-degree 4 on 11 vertices; the pivot is vertex 0.
pub fn t_piv() -> Graph {
    PivotedTreeSpec::balanced(4).build()
}

/// [`t_piv`] plus one leaf on the first gate; not pivoted.
pub fn t_np() -> Graph {
    PivotedTreeSpec { unpivot_leaves: 1, ..PivotedTreeSpec::balanced(4) }.build()
}

/// Pivoted tree with m-degree 18 on 291 vertices.
pub fn t_piv18() -> Graph {
    PivotedTreeSpec::balanced(18).build()
}

/// [`t_piv18`] plus one leaf on the first gate.
pub fn t_np18() -> Graph {
    PivotedTreeSpec { unpivot_leaves: 1, ..PivotedTreeSpec::balanced(18) }.build()
}
