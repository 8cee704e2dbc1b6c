//! The small vertex set `S` that every cycle must touch through an edge, and
//! its extension `S+` reaching every component.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{Dist, Graph};

/// Paths with at most this many vertices are absorbed into `S`.
const SHORT_PATH: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FenCore {
    /// Sorted.
    pub s: Vec<usize>,
    /// `S` plus the lowest vertex of each component without an `S` vertex; sorted.
    pub s_plus: Vec<usize>,
    pub p: usize,
    /// The long paths left between `S` vertices once dangling trees are
    /// removed, each listed end to end.
    pub outer_paths: Vec<Vec<usize>>,
    pub dist_to_splus: Vec<Dist>,
    pub in_s: Vec<bool>,
}

impl FenCore {
    /// Key for "closer to `S+` first, then lower index".
    pub fn order_key(&self, v: usize) -> (Dist, usize) {
        (self.dist_to_splus[v], v)
    }
}

pub fn compute_fen_core(g: &Graph) -> FenCore {
    let n = g.n();
    let (core2, _dangling) = g.two_core();
    let mut in_s = vec![false; n];
    if !core2.is_empty() {
        let h = g.induced(&core2);
        for (a, b) in h.feedback_edge_set() {
            in_s[core2[a]] = true;
            in_s[core2[b]] = true;
        }
        for (i, &v) in core2.iter().enumerate() {
            if h.degree(i) > 2 {
                in_s[v] = true;
            }
        }
    }
    // the remaining 2-core vertices form paths; short ones join S
    let rest: Vec<usize> = core2.iter().copied().filter(|&v| !in_s[v]).collect();
    let paths_graph = g.induced(&rest);
    let mut outer_paths = Vec::new();
    for comp in paths_graph.components() {
        if comp.len() <= SHORT_PATH {
            for &i in &comp {
                in_s[rest[i]] = true;
            }
            continue;
        }
        let start = comp.iter().copied().find(|&i| paths_graph.degree(i) <= 1).unwrap_or(comp[0]);
        let mut walk = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = paths_graph.neighbors(cur).iter().find(|&&x| x != prev && !walk.contains(&x)) {
            walk.push(next);
            prev = cur;
            cur = next;
        }
        outer_paths.push(walk.into_iter().map(|i| rest[i]).collect());
    }
    let s: Vec<usize> = g.vertices().filter(|&v| in_s[v]).collect();
    let mut s_plus = s.clone();
    for comp in g.components() {
        if !comp.iter().any(|&v| in_s[v]) {
            s_plus.push(comp[0]);
        }
    }
    s_plus.sort_unstable();
    let dist_to_splus = g.bfs_distances(&s_plus);
    FenCore { p: s.len(), s, s_plus, outer_paths, dist_to_splus, in_s }
}

/// Maximum number of `u`-`S` paths that share only `u`, capped at `cap`.
/// Unit vertex capacities on everything except `u`; each `S` vertex ends at
/// most one path.
pub fn disjoint_paths_to_s(g: &Graph, in_s: &[bool], u: usize, cap: usize) -> usize {
    // node 2v = in-copy, 2v+1 = out-copy, 2n = sink
    let n = g.n();
    let sink = 2 * n;
    let mut to = Vec::new();
    let mut capacity: Vec<i32> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n + 1];
    let mut add = |a: usize, b: usize, c: i32, to: &mut Vec<usize>, capacity: &mut Vec<i32>| {
        adj[a].push(to.len());
        to.push(b);
        capacity.push(c);
        adj[b].push(to.len());
        to.push(a);
        capacity.push(0);
    };
    for v in g.vertices() {
        if in_s[v] {
            add(2 * v, sink, 1, &mut to, &mut capacity);
            continue;
        }
        let c = if v == u { cap as i32 } else { 1 };
        add(2 * v, 2 * v + 1, c, &mut to, &mut capacity);
        for &w in g.neighbors(v) {
            add(2 * v + 1, 2 * w, 1, &mut to, &mut capacity);
        }
    }
    let source = 2 * u + 1;
    let mut flow = 0;
    while flow < cap {
        let mut via = vec![usize::MAX; 2 * n + 1];
        let mut seen = vec![false; 2 * n + 1];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for &e in &adj[a] {
                let b = to[e];
                if capacity[e] > 0 && !seen[b] {
                    seen[b] = true;
                    via[b] = e;
                    queue.push_back(b);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        let mut b = sink;
        while b != source {
            let e = via[b];
            capacity[e] -= 1;
            capacity[e ^ 1] += 1;
            b = to[e ^ 1];
        }
        flow += 1;
    }
    flow
}

/// Shortest path between two distinct `N(S)` vertices whose interior avoids
/// `N[S]`, or 0 when a vertex outside `S` has two neighbors in `S`.
pub fn shortest_outer_path(g: &Graph, in_s: &[bool]) -> Option<usize> {
    let n = g.n();
    let touches: Vec<usize> = g.vertices().map(|v| g.neighbors(v).iter().filter(|&&w| in_s[w]).count()).collect();
    let attached: Vec<usize> = g.vertices().filter(|&v| !in_s[v] && touches[v] > 0).collect();
    if attached.iter().any(|&v| touches[v] >= 2) {
        return Some(0);
    }
    let mut best: Option<usize> = None;
    for &a in &attached {
        let mut dist = vec![usize::MAX; n];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v != a && touches[v] > 0 {
                best = Some(best.map_or(dist[v], |b| b.min(dist[v])));
                continue;
            }
            for &w in g.neighbors(v) {
                if !in_s[w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    best
}

/// Checks the structural contract; returns every violated property.
pub fn validate_fen_core(g: &Graph, core: &FenCore) -> Vec<String> {
    let mut out = Vec::new();
    let in_s = &core.in_s;
    let inside: Vec<(usize, usize)> = g.edges().filter(|&(a, b)| in_s[a] && in_s[b]).collect();
    if !g.without_edges(&inside).is_forest() {
        out.push("a cycle avoids the edges inside S".to_string());
    }
    if let Some(len) = shortest_outer_path(g, in_s) {
        if len < SHORT_PATH {
            out.push(format!("outer path of length {len}"));
        }
    }
    // components of G - S with at most two edges into S cannot host three paths
    let rest: Vec<usize> = g.vertices().filter(|&v| !in_s[v]).collect();
    let forest = g.induced(&rest);
    for comp in forest.components() {
        let into_s: usize = comp.iter().map(|&i| g.neighbors(rest[i]).iter().filter(|&&w| in_s[w]).count()).sum();
        if into_s <= 2 {
            continue;
        }
        for &i in &comp {
            let paths = disjoint_paths_to_s(g, in_s, rest[i], 3);
            if paths > 2 {
                out.push(format!("vertex {} has {paths} disjoint paths to S", rest[i]));
            }
        }
    }
    let pg = g.feedback_edge_number();
    if core.p > 32 * pg {
        out.push(format!("|S| = {} exceeds 32 * {pg}", core.p));
    }
    if core.p != core.s.len() {
        out.push("p differs from |S|".to_string());
    }
    for comp in g.components() {
        let extra = comp.iter().filter(|&&v| core.s_plus.binary_search(&v).is_ok() && !in_s[v]).count();
        let has_s = comp.iter().any(|&v| in_s[v]);
        if (has_s && extra != 0) || (!has_s && extra != 1) {
            out.push(format!("component of vertex {} is not covered minimally by S+", comp[0]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trees_have_empty_core() {
        let t = fixtures::t_piv();
        let c = compute_fen_core(&t);
        assert!(c.s.is_empty());
        assert_eq!(c.s_plus, vec![0]);
        assert!(validate_fen_core(&t, &c).is_empty());
        let forest = Graph::from_edges(5, &[(0, 1), (3, 4)]);
        assert_eq!(compute_fen_core(&forest).s_plus, vec![0, 2, 3]);
    }

    #[test]
    fn long_cycle_keeps_one_outer_path() {
        let g = fixtures::cycle(20);
        let c = compute_fen_core(&g);
        assert_eq!(c.p, 2);
        assert_eq!(c.outer_paths.len(), 1);
        assert_eq!(c.outer_paths[0].len(), 18);
        assert!(validate_fen_core(&g, &c).is_empty());
    }

    #[test]
    fn short_cycle_is_absorbed() {
        let g = fixtures::cycle(8);
        let c = compute_fen_core(&g);
        assert_eq!(c.s, (0..8).collect::<Vec<_>>());
        assert!(c.outer_paths.is_empty());
        assert!(validate_fen_core(&g, &c).is_empty());
    }

    #[test]
    fn validator_catches_bad_sets() {
        let g = fixtures::cycle(20);
        let mut c = compute_fen_core(&g);
        c.in_s = vec![false; 20];
        c.s.clear();
        c.p = 0;
        assert!(!validate_fen_core(&g, &c).is_empty());
        // a vertex with three branches to S
        let spider = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let in_s = vec![false, true, true, true];
        assert_eq!(disjoint_paths_to_s(&spider, &in_s, 0, 5), 3);
        assert_eq!(shortest_outer_path(&spider, &in_s), Some(0));
    }

    #[test]
    fn random_cores_validate() {
        let mut r = crate::gen::rng(3);
        for extra in 0..6 {
            for _ in 0..10 {
                let g = crate::gen::random_fen_graph(60, extra, &mut r);
                let c = compute_fen_core(&g);
                assert_eq!(validate_fen_core(&g, &c), Vec::<String>::new(), "{}", g.to_text());
            }
        }
    }
}
