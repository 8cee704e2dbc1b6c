//! Pivots: vertices that see every color of a set `D` within distance two
//! through tight links.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::profile::ProfileView;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotWitness {
    pub u: usize,
    /// Sorted.
    pub d: Vec<usize>,
    /// `N(u) ∩ N(D) ∩ D`, sorted.
    pub links: Vec<usize>,
    /// Whether `d` is the maximal set for `u`.
    pub maximal: bool,
}

fn marks(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

/// `N(u) ∩ N(D) ∩ D`.
pub fn pivot_links(g: &Graph, u: usize, d: &[usize]) -> Vec<usize> {
    let in_d = marks(g.n(), d);
    let mut out: Vec<usize> =
        d.iter().copied().filter(|&w| g.has_edge(u, w) && g.neighbors(w).iter().any(|&x| in_d[x])).collect();
    out.sort_unstable();
    out
}

/// Literal check that `u` is a `D`-pivot outside `excluded ∪ D` whose links
/// are all admissible (`good`).
pub fn is_pivot(g: &Graph, good: &[bool], excluded: &[bool], u: usize, d: &[usize]) -> bool {
    let in_d = marks(g.n(), d);
    if in_d[u] || excluded[u] {
        return false;
    }
    let reach = d.iter().all(|&v| g.has_edge(u, v) || g.neighbors(v).iter().any(|&w| in_d[w] && g.has_edge(u, w)));
    reach && pivot_links(g, u, d).iter().all(|&w| good[w])
}

/// Largest `D ⊆ pool` such that `u` is a pivot of `D` with admissible links:
/// neighbors of `u` in the pool, plus pool vertices behind an admissible
/// neighbor, then pruned until every link is admissible and every vertex is
/// still reachable.
pub fn maximal_pivoted_set(g: &Graph, good: &[bool], pool: &[bool], u: usize) -> Vec<usize> {
    let n = g.n();
    let mut in_d = vec![false; n];
    let mut members = Vec::new();
    for &w in g.neighbors(u) {
        if pool[w] && !in_d[w] {
            in_d[w] = true;
            members.push(w);
        }
    }
    for &w in g.neighbors(u) {
        if pool[w] && good[w] {
            for &v in g.neighbors(w) {
                if v != u && pool[v] && !in_d[v] && !g.has_edge(u, v) {
                    in_d[v] = true;
                    members.push(v);
                }
            }
        }
    }
    loop {
        let mut changed = false;
        for &w in &members {
            if in_d[w] && g.has_edge(u, w) && !good[w] && g.neighbors(w).iter().any(|&x| in_d[x]) {
                in_d[w] = false;
                changed = true;
            }
        }
        for &v in &members {
            if in_d[v] && !g.has_edge(u, v) && !g.neighbors(v).iter().any(|&w| in_d[w] && good[w] && g.has_edge(u, w)) {
                in_d[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut d: Vec<usize> = members.into_iter().filter(|&v| in_d[v]).collect();
    d.sort_unstable();
    d
}

fn covers_all_colors(colors: &[Option<usize>], d: &[usize], k: usize) -> bool {
    let mut seen = vec![false; k + 1];
    for &v in d {
        if let Some(c) = colors[v] {
            if c <= k {
                seen[c] = true;
            }
        }
    }
    seen[1..].iter().all(|&s| s)
}

/// Lowest `u` outside `pool` whose maximal pivoted set inside `pool` carries
/// all `k` colors.
pub fn find_colored_pivot(g: &Graph, k: usize, colors: &[Option<usize>], pool: &[bool], good: &[bool]) -> Option<PivotWitness> {
    for u in g.vertices() {
        if pool[u] || !g.neighbors(u).iter().any(|&w| pool[w]) {
            continue;
        }
        let d = maximal_pivoted_set(g, good, pool, u);
        if covers_all_colors(colors, &d, k) {
            let links = pivot_links(g, u, &d);
            return Some(PivotWitness { u, d, links, maximal: true });
        }
    }
    None
}

/// Same question by trying every subset of the pool; `None` when the pool
/// has more than `max_pool` vertices.
pub fn find_colored_pivot_exhaustive(
    g: &Graph,
    k: usize,
    colors: &[Option<usize>],
    pool: &[bool],
    good: &[bool],
    max_pool: usize,
) -> Option<Option<PivotWitness>> {
    let members: Vec<usize> = g.vertices().filter(|&v| pool[v]).collect();
    if members.len() > max_pool {
        return None;
    }
    for u in g.vertices().filter(|&u| !pool[u]) {
        for mask in 1u32..1 << members.len() {
            let d: Vec<usize> = (0..members.len()).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]).collect();
            if covers_all_colors(colors, &d, k) && is_pivot(g, good, pool, u, &d) {
                let links = pivot_links(g, u, &d);
                return Some(Some(PivotWitness { u, d, links, maximal: false }));
            }
        }
    }
    Some(None)
}

/// Condition (b): every admissible link pair inside `D` touches `S`.
fn pairs_touch_s(view: &ProfileView, u: usize, d: &[usize]) -> bool {
    let g = view.g;
    let in_d = marks(g.n(), d);
    d.iter().filter(|&&w| g.has_edge(u, w) && view.good[w]).all(|&w| {
        g.neighbors(w).iter().filter(|&&v| v != u && in_d[v]).all(|&v| view.in_s[v] || view.in_s[w])
    })
}

fn chi_covers_b(view: &ProfileView, d: &[usize]) -> bool {
    covers_all_colors(&view.chi, d, view.b)
}

/// Searches for a witness that the profile is pivot-failing.
///
/// Any valid `D` lies inside the maximal set `Q ⊆ S ∪ K` pivoted by `u`, and
/// since `D ⊇ K`, the pairs relevant to condition (b) are the same for `D`
/// and `Q`. So `Q` itself is a witness whenever any `D` is.
pub fn pivot_failing(view: &ProfileView) -> Option<PivotWitness> {
    let g = view.g;
    let pool: Vec<bool> = g.vertices().map(|v| view.in_s[v] || view.in_k[v]).collect();
    let few = view.kplus_len() <= view.k;
    for u in g.vertices() {
        if pool[u] || (!view.k_set.is_empty() && !g.neighbors(u).iter().any(|&w| view.in_k[w] || view.in_s[w])) {
            continue;
        }
        let q = maximal_pivoted_set(g, &view.good, &pool, u);
        let in_q = marks(g.n(), &q);
        if !view.k_set.iter().all(|&v| in_q[v]) || !chi_covers_b(view, &q) {
            continue;
        }
        if few || pairs_touch_s(view, u, &q) {
            let links = pivot_links(g, u, &q);
            return Some(PivotWitness { u, d: q, links, maximal: true });
        }
    }
    None
}

/// Literal search over `D = K ∪ S'` for every `S' ⊆ S`.
pub fn pivot_failing_exhaustive(view: &ProfileView) -> Option<PivotWitness> {
    let g = view.g;
    let s = &view.core.s;
    assert!(s.len() < 20, "exhaustive pivot-failing search needs a small S");
    let few = view.kplus_len() <= view.k;
    for u in g.vertices().filter(|&u| !view.in_s[u] && !view.in_k[u]) {
        for mask in 0u32..1 << s.len() {
            let mut d = view.k_set.clone();
            d.extend((0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]));
            d.sort_unstable();
            if !is_pivot(g, &view.good, &view.in_s, u, &d) || !chi_covers_b(view, &d) {
                continue;
            }
            if few || pairs_touch_s(view, u, &d) {
                let links = pivot_links(g, u, &d);
                return Some(PivotWitness { u, d, links, maximal: false });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fen::core::compute_fen_core;
    use crate::fen::profile::{enumerate_s_profiles, ProfileView};
    use crate::fixtures;

    #[test]
    fn pivoted_tree_is_pivot_failing() {
        let t = fixtures::t_piv();
        let core = compute_fen_core(&t);
        let prof = enumerate_s_profiles(&t, &core, 4).pop().unwrap();
        let view = ProfileView::new(&t, 4, &core, prof);
        let w = pivot_failing(&view).expect("pivoted");
        assert_eq!(w.u, 0);
        assert_eq!(w.d, vec![1, 2, 3, 4]);
        assert_eq!(w.links, vec![1, 2]);
        assert!(pivot_failing_exhaustive(&view).is_some());
    }

    #[test]
    fn unpivoted_tree_is_not_pivot_failing() {
        let t = fixtures::t_np();
        let core = compute_fen_core(&t);
        let prof = enumerate_s_profiles(&t, &core, 4).pop().unwrap();
        let view = ProfileView::new(&t, 4, &core, prof);
        assert_eq!(pivot_failing(&view), None);
        assert_eq!(pivot_failing_exhaustive(&view), None);
    }

    #[test]
    fn planted_pivot_fixture() {
        // u = 0 with tight links 1, 2; colors 1..4 sit on 1, 2 and their
        // far neighbors 3, 4
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 6)]);
        let colors = vec![None, Some(1), Some(2), Some(3), Some(4), None, None];
        let pool = vec![false, true, true, true, true, false, false];
        let good = vec![false, true, true, false, false, false, false];
        let w = find_colored_pivot(&g, 4, &colors, &pool, &good).unwrap();
        assert_eq!(w.u, 0);
        assert_eq!(w.d, vec![1, 2, 3, 4]);
        let ex = find_colored_pivot_exhaustive(&g, 4, &colors, &pool, &good, 12).unwrap().unwrap();
        assert_eq!(ex.u, 0);
        // a bad link cuts its far vertex off
        let good = vec![false, true, false, false, false, false, false];
        assert_eq!(find_colored_pivot(&g, 4, &colors, &pool, &good), None);
        assert_eq!(find_colored_pivot_exhaustive(&g, 4, &colors, &pool, &good, 12), Some(None));
    }

    #[test]
    fn pivot_failing_search_matches_exhaustive() {
        let mut r = crate::gen::rng(77);
        let mut hits = 0;
        for _ in 0..150 {
            let g = crate::gen::random_fen_graph(10, 1 + (hits % 3), &mut r);
            let core = compute_fen_core(&g);
            if core.p > 8 {
                continue;
            }
            for k in 1..=5 {
                for prof in enumerate_s_profiles(&g, &core, k) {
                    let view = ProfileView::new(&g, k, &core, prof);
                    let fast = pivot_failing(&view);
                    let slow = pivot_failing_exhaustive(&view);
                    assert_eq!(fast.is_some(), slow.is_some(), "k={k}\n{}", g.to_text());
                    if let Some(w) = fast {
                        hits += 1;
                        assert!(is_pivot(&g, &view.good, &view.in_s, w.u, &w.d));
                    }
                }
            }
        }
        assert!(hits > 20);
    }
}
