//! Color realizations: concrete b-vertex choices for the colors `b+1..=k`,
//! and the properties the later stages rely on.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::matching::max_bipartite_matching;

use super::links::{common_neighbors, linked_via, redundancies};
use super::pivot::{find_colored_pivot, find_colored_pivot_exhaustive, PivotWitness};
use super::plan::{ColorPlan, PlanContext, PlanTarget};
use super::profile::ProfileView;
use super::FenFailure;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationFlags {
    pub damage_free: bool,
    /// Smallest `l` such that the realization is `l`-safe.
    pub safety_level: usize,
    /// Smallest `l` such that the realization is almost `l`-safe.
    pub almost_safety_level: usize,
    /// The vertex excused by `almost_safety_level`, if one is needed.
    pub almost_safe_witness: Option<usize>,
    pub pivot_free: bool,
    pub block_free: bool,
    pub realizes_valid_plan: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorRealization {
    pub b: usize,
    pub p: usize,
    pub k: usize,
    /// `rho[c - b - 1]` is the vertex chosen for color `c`.
    pub rho: Vec<usize>,
    pub flags: RealizationFlags,
}

impl ColorRealization {
    pub fn get(&self, c: usize) -> usize {
        self.rho[c - self.b - 1]
    }
}

/// Everything derived from a realization: `chi_rho`, `B_rho`, `S_rho` and
/// tightness under `chi_rho`.
#[derive(Clone, Debug)]
pub struct RhoState {
    pub b: usize,
    pub rho: Vec<usize>,
    pub chi_rho: Vec<Option<usize>>,
    pub in_range: Vec<bool>,
    pub in_brho: Vec<bool>,
    pub in_srho: Vec<bool>,
    pub red: Vec<i64>,
    /// `chi_rho`-tight and in `K+`.
    pub good: Vec<bool>,
}

impl RhoState {
    pub fn new(view: &ProfileView, rho: &[usize]) -> Self {
        let g = view.g;
        let n = g.n();
        let b = view.b;
        let mut chi_rho = view.chi.clone();
        let mut in_range = vec![false; n];
        for (i, &v) in rho.iter().enumerate() {
            chi_rho[v] = Some(b + 1 + i);
            in_range[v] = true;
        }
        let in_brho: Vec<bool> = (0..n).map(|v| view.in_b[v] || in_range[v]).collect();
        let in_srho: Vec<bool> = (0..n).map(|v| view.in_s[v] || in_range[v]).collect();
        let red = redundancies(g, &chi_rho, view.k);
        let good = (0..n).map(|v| view.in_kplus[v] && red[v] == 0).collect();
        RhoState { b, rho: rho.to_vec(), chi_rho, in_range, in_brho, in_srho, red, good }
    }

    pub fn get(&self, c: usize) -> usize {
        self.rho[c - self.b - 1]
    }

    pub fn color_of(&self, v: usize) -> Option<usize> {
        if self.in_range[v] {
            self.chi_rho[v]
        } else {
            None
        }
    }

    pub fn brho(&self) -> Vec<usize> {
        (0..self.in_brho.len()).filter(|&v| self.in_brho[v]).collect()
    }

    /// `chi_rho(N[v])` as a mask over `0..=k`.
    pub fn closed_colors(&self, g: &Graph, k: usize, v: usize) -> Vec<bool> {
        let mut m = vec![false; k + 1];
        for w in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            if let Some(c) = self.chi_rho[w] {
                m[c] = true;
            }
        }
        m
    }
}

/// Injective into `K`.
pub fn is_realization(view: &ProfileView, rho: &[usize]) -> bool {
    let mut seen = vec![false; view.g.n()];
    rho.len() == view.k.saturating_sub(view.b)
        && rho.iter().all(|&v| {
            let fresh = view.in_k[v] && !seen[v];
            seen[v] = true;
            fresh
        })
}

/// Range vertices damaged by `rho`, ascending.
pub fn damaged_vertices(view: &ProfileView, rho: &[usize]) -> Vec<usize> {
    let g = view.g;
    let mut in_range = vec![false; g.n()];
    for &v in rho {
        in_range[v] = true;
    }
    let mut out = Vec::new();
    for c in view.b + 1..=view.p.min(view.k) {
        let x = rho[c - view.b - 1];
        if !view.in_kstar[x] {
            continue;
        }
        for v in view.chi_class(c) {
            for w in common_neighbors(g, x, v) {
                if view.good[w] && in_range[w] {
                    out.push(w);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The plan `rho` realizes, if any: each color in `b+1..=p` maps to `*`
/// when its vertex is in `K*`, or to the unique `S` neighbor otherwise.
pub fn plan_of(view: &ProfileView, rho: &[usize]) -> Option<Vec<PlanTarget>> {
    let g = view.g;
    (view.b + 1..=view.p.min(view.k))
        .map(|c| {
            let x = rho[c - view.b - 1];
            let s_nbrs: Vec<usize> = g.neighbors(x).iter().copied().filter(|&w| view.in_s[w]).collect();
            match (view.in_kstar[x], s_nbrs.as_slice()) {
                (true, []) => Some(PlanTarget::Star),
                (false, [u]) => Some(PlanTarget::Vertex(*u)),
                _ => None,
            }
        })
        .collect()
}

/// Literal "realizes" check against a given plan.
pub fn realizes(view: &ProfileView, rho: &[usize], plan: &ColorPlan) -> bool {
    let g = view.g;
    plan.colors().all(|c| {
        let x = rho[c - view.b - 1];
        let star_ok = (plan.target(c) == PlanTarget::Star) == view.in_kstar[x];
        let s_ok = view.core.s.iter().all(|&u| (plan.target(c) == PlanTarget::Vertex(u)) == g.has_edge(u, x));
        star_ok && s_ok
    })
}

/// Per vertex of `K \ B_rho`, the number of colors in `p+1..=k` whose vertex
/// is strictly farther from `S+`.
pub fn safety_counts(view: &ProfileView, st: &RhoState) -> Vec<(usize, usize)> {
    let dist = &view.core.dist_to_splus;
    let far: Vec<_> = (view.p + 1..=view.k).map(|c| dist[st.get(c)]).collect();
    view.k_set
        .iter()
        .filter(|&&v| !st.in_brho[v])
        .map(|&v| (v, far.iter().filter(|&&d| dist[v] < d).count()))
        .collect()
}

/// `v ∈ N(B_rho)` or `|N(v) ∩ N(B_rho)| <= p + 2`.
pub fn may_be_excused(view: &ProfileView, st: &RhoState, v: usize) -> bool {
    let g = view.g;
    let near_b = |x: usize| g.neighbors(x).iter().any(|&y| st.in_brho[y]);
    near_b(v) || g.neighbors(v).iter().filter(|&&x| near_b(x)).count() <= view.p + 2
}

/// `(safety level, almost-safety level, excused vertex)`.
pub fn safety_levels(view: &ProfileView, st: &RhoState) -> (usize, usize, Option<usize>) {
    let counts = safety_counts(view, st);
    let max = counts.iter().map(|x| x.1).max().unwrap_or(0);
    let mut best = (max, None);
    for &(v, cnt) in &counts {
        if cnt == max && max > 0 && may_be_excused(view, st, v) {
            let rest = counts.iter().filter(|x| x.0 != v).map(|x| x.1).max().unwrap_or(0);
            if rest < best.0 {
                best = (rest, Some(v));
            }
        }
    }
    (max, best.0, best.1)
}

/// First `(u, c)` with `u ∈ B_rho` blocked by `c`, scanning `u` then `c`
/// upwards.
pub fn block_check(view: &ProfileView, st: &RhoState) -> Option<(usize, usize)> {
    let g = view.g;
    let k = view.k;
    let via: Vec<bool> = (0..g.n()).map(|v| st.good[v] && st.in_brho[v]).collect();
    let mut class: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for v in g.vertices() {
        if let Some(c) = st.chi_rho[v] {
            class[c].push(v);
        }
    }
    for u in st.brho() {
        let present = st.closed_colors(g, k, u);
        let open: Vec<usize> = g.neighbors(u).iter().copied().filter(|&v| !st.in_srho[v]).collect();
        for c in 1..=k {
            if present[c] {
                continue;
            }
            let blocked = open
                .iter()
                .all(|&v| class[c].iter().any(|&w| g.has_edge(v, w) || linked_via(g, &via, v, w).is_some()));
            if blocked {
                return Some((u, c));
            }
        }
    }
    None
}

/// Lowest `rho`-pivot with its maximal pivoted set.
pub fn find_pivot(view: &ProfileView, st: &RhoState) -> Option<PivotWitness> {
    find_colored_pivot(view.g, view.k, &st.chi_rho, &st.in_srho, &st.good)
}

/// Subset-search version of [`find_pivot`]; `None` when `S_rho` is too big.
pub fn find_pivot_exhaustive(view: &ProfileView, st: &RhoState, max_pool: usize) -> Option<Option<PivotWitness>> {
    find_colored_pivot_exhaustive(view.g, view.k, &st.chi_rho, &st.in_srho, &st.good, max_pool)
}

pub fn compute_flags(view: &ProfileView, rho: &[usize]) -> RealizationFlags {
    let st = RhoState::new(view, rho);
    let (safety_level, almost_safety_level, almost_safe_witness) = safety_levels(view, &st);
    let ctx = PlanContext::new(view);
    RealizationFlags {
        damage_free: damaged_vertices(view, rho).is_empty(),
        safety_level,
        almost_safety_level,
        almost_safe_witness,
        pivot_free: find_pivot(view, &st).is_none(),
        block_free: block_check(view, &st).is_none(),
        realizes_valid_plan: plan_of(view, rho).is_some_and(|pi| ctx.check(&pi).is_valid()),
    }
}

pub fn realization(view: &ProfileView, rho: Vec<usize>) -> ColorRealization {
    let flags = compute_flags(view, &rho);
    ColorRealization { b: view.b, p: view.p, k: view.k, rho, flags }
}

/// Picks the b-vertices of a valid plan: `S`-anchored colors next to their
/// `S` vertex, starred colors through a matching that avoids links to their
/// own color class, and the remaining colors nearest to `S+` first.
pub fn build_realization(view: &ProfileView, plan: &ColorPlan) -> Result<ColorRealization, FenFailure> {
    let g = view.g;
    let (b, p, k) = (view.b, view.p, view.k);
    if k < p {
        return Err(FenFailure::new("realize-range", format!("k = {k} below p = {p}")));
    }
    let mut in_u = view.in_k.clone();
    let mut critical: Option<(usize, usize)> = None;
    if let Some(c) = plan.critical_color {
        let anchor = plan.anchor.ok_or_else(|| FenFailure::new("realize-anchor", "critical plan without anchor"))?;
        let found = view.kstar().find_map(|x| linked_via(g, &view.good, x, anchor).map(|w| (x, w)));
        let (v_c, w_c) = found.ok_or_else(|| FenFailure::new("realize-anchor", format!("anchor {anchor} has no linked K* vertex")))?;
        in_u[w_c] = false;
        critical = Some((c, v_c));
    }
    // starred colors against K*, edge when no link to the color class
    let stars: Vec<usize> = plan.colors().filter(|&c| plan.target(c) == PlanTarget::Star).collect();
    let right: Vec<usize> = view.kstar().filter(|&x| in_u[x] && critical.is_none_or(|(_, v_c)| x != v_c)).collect();
    let mut edges = Vec::new();
    for (i, &c) in stars.iter().enumerate() {
        let class: Vec<usize> = view.chi_class(c).collect();
        for (j, &x) in right.iter().enumerate() {
            if !class.iter().any(|&v| linked_via(g, &view.good, x, v).is_some()) {
                edges.push((i, j));
            }
        }
    }
    let mut matched = vec![None; stars.len()];
    for (i, j) in max_bipartite_matching(stars.len(), right.len(), &edges) {
        matched[i] = Some(right[j]);
    }
    let mut rho = vec![usize::MAX; k - b];
    let mut used = vec![false; g.n()];
    for c in b + 1..=p {
        let pick = match plan.target(c) {
            PlanTarget::Vertex(u) => g.neighbors(u).iter().copied().find(|&v| in_u[v] && !used[v]),
            PlanTarget::Star if critical.map(|x| x.0) == Some(c) => critical.map(|x| x.1),
            PlanTarget::Star => matched[stars.iter().position(|&x| x == c).unwrap()],
        };
        let v = pick.ok_or_else(|| FenFailure::new("realize-pick", format!("no vertex for color {c}")))?;
        if used[v] {
            return Err(FenFailure::new("realize-pick", format!("vertex {v} picked twice")));
        }
        used[v] = true;
        rho[c - b - 1] = v;
    }
    let mut order: Vec<usize> = view.k_set.iter().copied().filter(|&v| in_u[v] && !used[v]).collect();
    order.sort_by_key(|&v| view.core.order_key(v));
    let mut rest = order.into_iter();
    for c in p + 1..=k {
        let v = rest.next().ok_or_else(|| FenFailure::new("realize-fill", format!("ran out of candidates at color {c}")))?;
        rho[c - b - 1] = v;
    }
    Ok(realization(view, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fen::core::compute_fen_core;
    use crate::fen::plan::enumerate_color_plans;
    use crate::fen::profile::{enumerate_s_profiles, failing_check};
    use crate::fixtures;

    #[test]
    fn empty_core_takes_nearest_candidates() {
        let t = fixtures::t_np();
        let core = compute_fen_core(&t);
        let prof = enumerate_s_profiles(&t, &core, 4).pop().unwrap();
        let view = ProfileView::new(&t, 4, &core, prof);
        let plan = enumerate_color_plans(&view).pop().unwrap();
        let re = build_realization(&view, &plan).unwrap();
        assert_eq!(re.rho.len(), 4);
        let mut sorted = re.rho.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 4);
        assert!(re.flags.damage_free);
        assert_eq!(re.flags.safety_level, 0);
        let mut by_dist = view.k_set.clone();
        by_dist.sort_by_key(|&v| core.order_key(v));
        assert_eq!(re.rho, by_dist[..4].to_vec());
    }

    #[test]
    fn blocked_needs_missing_color() {
        let t = fixtures::t_np();
        let core = compute_fen_core(&t);
        let prof = enumerate_s_profiles(&t, &core, 4).pop().unwrap();
        let view = ProfileView::new(&t, 4, &core, prof);
        let plan = enumerate_color_plans(&view).pop().unwrap();
        let re = build_realization(&view, &plan).unwrap();
        let st = RhoState::new(&view, &re.rho);
        if let Some((u, c)) = block_check(&view, &st) {
            assert!(!st.closed_colors(&t, 4, u)[c]);
        }
    }

    /// Literal restatement of "damaged" straight from the definition.
    fn damaged_literal(view: &ProfileView, rho: &[usize], u: usize) -> bool {
        let g = view.g;
        (view.b + 1..=view.p.min(view.k)).any(|c| {
            let x = rho[c - view.b - 1];
            view.in_kstar[x]
                && view.chi_class(c).any(|v| g.has_edge(u, v) && g.has_edge(u, x) && view.good[u] && u != x && u != v)
        })
    }

    #[test]
    fn algorithm_one_outputs_satisfy_their_contract() {
        let mut r = crate::gen::rng(41);
        let mut built = 0;
        for round in 0..120 {
            let g = crate::gen::random_fen_graph(10 + round % 6, 1 + round % 3, &mut r);
            let core = compute_fen_core(&g);
            if core.p > 6 {
                continue;
            }
            for k in core.p.max(1)..=core.p + 3 {
                for prof in enumerate_s_profiles(&g, &core, k) {
                    let view = ProfileView::new(&g, k, &core, prof);
                    if failing_check(&view).is_failing() {
                        continue;
                    }
                    for plan in enumerate_color_plans(&view).into_iter().take(20) {
                        let re = build_realization(&view, &plan).unwrap();
                        built += 1;
                        assert!(is_realization(&view, &re.rho));
                        assert!(realizes(&view, &re.rho, &plan));
                        assert!(re.flags.damage_free);
                        assert!(re.rho.iter().all(|&v| !damaged_literal(&view, &re.rho, v)));
                        assert!(re.flags.realizes_valid_plan);
                        assert_eq!(re.flags.almost_safety_level, 0, "{}", g.to_text());
                        if plan.critical_color.is_none() {
                            assert_eq!(re.flags.safety_level, 0);
                        }
                        let st = RhoState::new(&view, &re.rho);
                        // chi_rho proper and B_rho made of chi_rho-candidates
                        assert!(g.edges().all(|(a, b)| st.chi_rho[a].is_none() || st.chi_rho[a] != st.chi_rho[b]));
                        assert!(st.brho().iter().all(|&v| st.red[v] >= 0));
                    }
                }
            }
        }
        assert!(built > 30, "built {built}");
    }

    #[test]
    fn find_pivot_matches_subset_search() {
        let mut r = crate::gen::rng(43);
        let mut compared = 0;
        let mut pivots = 0;
        for round in 0..400 {
            let g = crate::gen::random_fen_graph(8 + round % 5, round % 3, &mut r);
            let core = compute_fen_core(&g);
            if core.p > 6 {
                continue;
            }
            for k in core.p.max(1)..=core.p + 3 {
                for prof in enumerate_s_profiles(&g, &core, k) {
                    let view = ProfileView::new(&g, k, &core, prof);
                    if view.kplus_len() < k {
                        continue;
                    }
                    for plan in enumerate_color_plans(&view).into_iter().take(3) {
                        let Ok(re) = build_realization(&view, &plan) else { continue };
                        let st = RhoState::new(&view, &re.rho);
                        let Some(slow) = find_pivot_exhaustive(&view, &st, 12) else { continue };
                        let fast = find_pivot(&view, &st);
                        assert_eq!(fast.is_some(), slow.is_some(), "k={k}\n{}", g.to_text());
                        compared += 1;
                        if let Some(w) = fast {
                            pivots += 1;
                            assert!(crate::fen::pivot::is_pivot(&g, &st.good, &st.in_srho, w.u, &w.d));
                        }
                    }
                }
            }
        }
        assert!(compared >= 200, "compared {compared}");
        assert!(pivots > 0);
    }
}
