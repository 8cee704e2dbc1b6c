//! Redundancy, tightness and links under a partial coloring.

use crate::graph::Graph;

/// `|N[v] \ dom(psi)| + |psi(N[v])| - k`.
pub fn redundancy(g: &Graph, psi: &[Option<usize>], k: usize, v: usize) -> i64 {
    let mut uncolored = 0i64;
    let mut colors: Vec<usize> = Vec::with_capacity(g.degree(v) + 1);
    for w in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
        match psi[w] {
            Some(c) => colors.push(c),
            None => uncolored += 1,
        }
    }
    colors.sort_unstable();
    colors.dedup();
    uncolored + colors.len() as i64 - k as i64
}

pub fn redundancies(g: &Graph, psi: &[Option<usize>], k: usize) -> Vec<i64> {
    g.vertices().map(|v| redundancy(g, psi, k, v)).collect()
}

/// Sorted intersection of two neighbor lists.
pub fn common_neighbors(g: &Graph, x: usize, y: usize) -> Vec<usize> {
    let (a, b) = (g.neighbors(x), g.neighbors(y));
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Lowest `w` in `N(x) ∩ N(y)` with `via[w]`, where `via` marks the
/// admissible linking vertices (tight and in the allowed pool).
pub fn linked_via(g: &Graph, via: &[bool], x: usize, y: usize) -> Option<usize> {
    if x == y {
        return None;
    }
    common_neighbors(g, x, y).into_iter().find(|&w| via[w])
}

/// `dist(x, y) <= 2`.
pub fn within_two(g: &Graph, x: usize, y: usize) -> bool {
    x == y || g.has_edge(x, y) || !common_neighbors(g, x, y).is_empty()
}
