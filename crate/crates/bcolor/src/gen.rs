//! Seeded instance generators. Every generator is a pure function of its
//! parameters and the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::PartialColoring;
use crate::fixtures::PivotedTreeSpec;
use crate::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi graph `G(n, p)`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::from_edges(n, &edges)
}

/// Random tree plus `extra` non-tree edges, so the feedback edge number is
/// `extra` (capped by the number of available non-edges).
pub fn random_fen_graph(n: usize, extra: usize, rng: &mut impl Rng) -> Graph {
    let tree = random_tree(n, rng);
    let mut edges: Vec<_> = tree.edges().collect();
    let mut non_edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !tree.has_edge(u, v)).collect();
    non_edges.shuffle(rng);
    edges.extend(non_edges.into_iter().take(extra));
    Graph::from_edges(n, &edges)
}

/// Random member of the pivoted-tree family with m-degree `k`. With
/// `pivoted = false` the tree gets one of two defects: an extra leaf on a gate
/// or an extra outer candidate hanging off a leaf.
pub fn random_pivoted_tree(k: usize, pivoted: bool, rng: &mut impl Rng) -> Graph {
    let mut spec = PivotedTreeSpec::balanced(k);
    let outer = k - 2;
    spec.outer_on_first = rng.gen_range(0..=outer);
    for e in spec.outer_extra.iter_mut() {
        *e = if rng.gen_bool(0.3) { rng.gen_range(1..=3) } else { 0 };
    }
    // the pivot must stay a non-candidate even after the extra hub below
    spec.pivot_leaves = rng.gen_range(0..=k.saturating_sub(5).min(2));
    if pivoted {
        return spec.build();
    }
    if rng.gen_bool(0.5) {
        spec.unpivot_leaves = 1;
        return spec.build();
    }
    // a (k+1)-th candidate: a pivot leaf grown to degree k - 1
    let base = spec.build();
    let mut edges: Vec<_> = base.edges().collect();
    let mut n = base.n();
    edges.push((0, n));
    let hub = n;
    n += 1;
    for _ in 0..k - 2 {
        edges.push((hub, n));
        n += 1;
    }
    Graph::from_edges(n, &edges)
}

/// Complete multipartite graph with random side sizes plus `s` modulator
/// vertices with random neighborhoods (placed last).
pub fn random_cocluster(n_parts: usize, max_side: usize, s: usize, rng: &mut impl Rng) -> Graph {
    let sides: Vec<usize> = (0..n_parts).map(|_| rng.gen_range(1..=max_side)).collect();
    let base = crate::fixtures::complete_multipartite(&sides);
    let n0 = base.n();
    let mut edges: Vec<_> = base.edges().collect();
    for x in 0..s {
        let v = n0 + x;
        for u in 0..v {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n0 + s, &edges)
}

/// Graph built around a known `k`-b-coloring: one star per color whose
/// leaves carry all other colors, plus random edges between differently
/// colored vertices. Vertex ids are shuffled; the witness is returned.
pub fn planted(k: usize, cross_density: f64, rng: &mut impl Rng) -> (Graph, PartialColoring) {
    let mut color = Vec::new();
    let mut edges = Vec::new();
    for c in 1..=k {
        let center = color.len();
        color.push(c);
        for d in (1..=k).filter(|&d| d != c) {
            let leaf = color.len();
            color.push(d);
            edges.push((center, leaf));
        }
    }
    let n = color.len();
    for u in 0..n {
        for v in u + 1..n {
            if color[u] != color[v] && rng.gen_bool(cross_density) && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = edges.iter().map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v]))).collect();
    let mut witness = vec![0; n];
    for v in 0..n {
        witness[perm[v]] = color[v];
    }
    (Graph::from_edges(n, &edges), PartialColoring::from_vec(k.max(1), witness))
}

/// A vertex `0` whose neighbors lead to about `k` near-candidates, with a
/// few short cycles among them and a tail of spare candidates. Degrees are
/// padded with leaves to `k - 2..=k`, so `0` often ends up a pivot for
/// whichever b-vertices get picked.
pub fn pivot_cluster(k: usize, rng: &mut impl Rng) -> Graph {
    assert!(k >= 4);
    let links = rng.gen_range(2..=4);
    let mut edges: Vec<(usize, usize)> = (1..=links).map(|l| (0, l)).collect();
    let mut n = 1 + links;
    let mut hubs = Vec::new();
    let per = k.div_ceil(links).saturating_sub(1).max(1);
    for l in 1..=links {
        for _ in 0..per {
            edges.push((l, n));
            hubs.push(n);
            n += 1;
        }
    }
    for _ in 0..rng.gen_range(0..=3) {
        let x = hubs[rng.gen_range(0..hubs.len())];
        let y = if rng.gen_bool(0.5) { hubs[rng.gen_range(0..hubs.len())] } else { rng.gen_range(0..=links) };
        if x != y && !edges.contains(&(x, y)) && !edges.contains(&(y, x)) {
            edges.push((x, y));
        }
    }
    let mut prev = if rng.gen_bool(0.5) { 0 } else { hubs[0] };
    for _ in 0..rng.gen_range(0..=3) {
        edges.push((prev, n));
        prev = n;
        hubs.push(n);
        n += 1;
    }
    let mut deg = vec![0usize; n];
    for &(x, y) in &edges {
        deg[x] += 1;
        deg[y] += 1;
    }
    let mut padded = edges.clone();
    for v in (1..=links).chain(hubs.iter().copied()) {
        let want = k - 2 + rng.gen_range(0..3);
        for _ in deg[v]..want {
            padded.push((v, n));
            n += 1;
        }
    }
    Graph::from_edges(n, &padded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_b_coloring;
    use crate::reference::pivoted_tree_report;

    #[test]
    fn deterministic() {
        assert_eq!(random_graph(12, 0.4, &mut rng(7)), random_graph(12, 0.4, &mut rng(7)));
        assert_eq!(planted(4, 0.2, &mut rng(3)), planted(4, 0.2, &mut rng(3)));
    }

    #[test]
    fn fen_graph_has_requested_cycle_rank() {
        let g = random_fen_graph(50, 3, &mut rng(1));
        assert_eq!(g.feedback_edge_number(), 3);
    }

    #[test]
    fn planted_witness_verifies() {
        for seed in 0..20 {
            let (g, w) = planted(5, 0.1, &mut rng(seed));
            assert!(verify_b_coloring(&g, &w, 5).is_b_coloring);
        }
    }

    #[test]
    fn pivoted_family() {
        for seed in 0..30 {
            for k in [4, 6, 18] {
                let t = random_pivoted_tree(k, true, &mut rng(seed));
                let r = pivoted_tree_report(&t).unwrap();
                assert!(r.pivoted && r.m_degree == k, "seed {seed} k {k}");
                let t = random_pivoted_tree(k, false, &mut rng(seed));
                let r = pivoted_tree_report(&t).unwrap();
                assert!(!r.pivoted && r.m_degree == k, "seed {seed} k {k}");
            }
        }
    }
}
