//! Stage-by-stage contract checks of the core-based branch, run on every
//! usable profile and plan instead of stopping at the first answer.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Graph;

use super::core::compute_fen_core;
use super::eliminate::eliminate_pivot;
use super::finish::finish_coloring;
use super::partial::partial_b_coloring;
use super::pivot::pivot_failing;
use super::plan::PlanContext;
use super::profile::{for_each_s_profile, ProfileView};
use super::realization::{build_realization, find_pivot, find_pivot_exhaustive, realizes, RhoState};

#[derive(Clone, Copy, Debug)]
pub struct AuditCaps {
    pub max_profiles: usize,
    pub max_plans_per_profile: usize,
    /// Largest `S_rho` for the subset-search pivot cross-check.
    pub max_pivot_pool: usize,
}

impl Default for AuditCaps {
    fn default() -> Self {
        AuditCaps { max_profiles: 64, max_plans_per_profile: 8, max_pivot_pool: 12 }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AuditReport {
    pub profiles: usize,
    pub plans: usize,
    pub pivot_cross_checks: usize,
    pub completed: usize,
    /// How often each elimination case ran, keyed by its name.
    pub cases: BTreeMap<String, usize>,
    /// Stage failures at `k` below the proven range; not violations.
    pub out_of_range: usize,
    pub violations: Vec<String>,
}

/// Smallest `k` for which every stage is proven to go through.
pub fn proven_k(p: usize) -> usize {
    3 * p + 18
}

/// Checks every stage contract on `(g, k)`. Requires `k >= |S|`; returns an
/// empty report otherwise.
pub fn audit_pipeline(g: &Graph, k: usize, caps: AuditCaps) -> AuditReport {
    let mut rep = AuditReport::default();
    let core = compute_fen_core(g);
    if k == 0 || k < core.p {
        return rep;
    }
    let in_range = k >= proven_k(core.p);
    for_each_s_profile(g, &core, k, |prof| {
        let view = ProfileView::new(g, k, &core, prof);
        if view.kplus_len() < k || pivot_failing(&view).is_some() {
            return true;
        }
        rep.profiles += 1;
        let mut plans = Vec::new();
        PlanContext::new(&view).for_each_valid_plan(|p| {
            plans.push(p);
            plans.len() < caps.max_plans_per_profile
        });
        for plan in plans {
            rep.plans += 1;
            audit_plan(&view, &plan, in_range, caps, &mut rep);
        }
        rep.profiles < caps.max_profiles
    });
    rep
}

fn audit_plan(view: &ProfileView, plan: &super::plan::ColorPlan, in_range: bool, caps: AuditCaps, rep: &mut AuditReport) {
    let g = view.g;
    let tag = |what: &str| format!("k={} profile={:?} plan={:?}: {what}", view.k, view.profile, plan.pi);
    let re = match build_realization(view, plan) {
        Ok(re) => re,
        Err(f) => {
            rep.violations.push(tag(&format!("realization failed: {} {}", f.id, f.detail)));
            return;
        }
    };
    let st = RhoState::new(view, &re.rho);
    let flags = &re.flags;
    let mut check = |ok: bool, what: &str| {
        if !ok {
            rep.violations.push(tag(what));
        }
    };
    check(flags.damage_free, "realization damaged");
    check(realizes(view, &re.rho, plan), "plan not realized");
    check(flags.almost_safety_level == 0, "not almost 0-safe");
    check(plan.critical_color.is_some() || flags.safety_level == 0, "non-critical plan but not 0-safe");
    check(g.edges().all(|(a, b)| st.chi_rho[a].is_none() || st.chi_rho[a] != st.chi_rho[b]), "chi_rho improper");
    check(st.brho().iter().all(|&v| st.red[v] >= 0), "B_rho vertex is not a candidate");
    if let Some(slow) = find_pivot_exhaustive(view, &st, caps.max_pivot_pool) {
        rep.pivot_cross_checks += 1;
        if find_pivot(view, &st).is_some() != slow.is_some() {
            rep.violations.push(tag("pivot search disagrees with subset search"));
        }
    }
    let result = eliminate_pivot(view, re.rho.clone())
        .inspect(|el| *rep.cases.entry(format!("{:?}", el.case)).or_default() += 1)
        .and_then(|el| partial_b_coloring(view, &el.realization).map(|psi| (el, psi)))
        .and_then(|(el, psi)| finish_coloring(view, &el.realization, psi));
    match result {
        Ok(_) => rep.completed += 1,
        Err(_) if !in_range => rep.out_of_range += 1,
        Err(f) => rep.violations.push(tag(&format!("{}: {}", f.id, f.detail))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pivoted_trees_pass_the_audit() {
        for g in [crate::fixtures::t_piv18(), crate::fixtures::t_np18()] {
            let rep = audit_pipeline(&g, 18, AuditCaps::default());
            assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        }
        let rep = audit_pipeline(&crate::fixtures::t_np18(), 18, AuditCaps::default());
        assert_eq!(rep.completed, 1);
    }

    #[test]
    fn small_graphs_have_no_violations() {
        let mut r = crate::gen::rng(3);
        let mut plans = 0;
        let mut cases = BTreeMap::new();
        for round in 0..80 {
            let g = crate::gen::random_fen_graph(7 + round % 4, round % 3, &mut r);
            for k in 1..=5 {
                let rep = audit_pipeline(&g, k, AuditCaps::default());
                plans += rep.plans;
                for (c, n) in rep.cases {
                    *cases.entry(c).or_insert(0) += n;
                }
                assert!(rep.violations.is_empty(), "{}\n{:?}", g.to_text(), rep.violations);
            }
        }
        assert!(plans > 20);
        assert!(cases.contains_key("PivotFree"));
    }

    /// Dense clusters around one vertex drive every elimination case.
    #[test]
    fn pivot_clusters_reach_every_case() {
        let mut r = crate::gen::rng(11);
        let mut cases = BTreeMap::new();
        let caps = AuditCaps { max_profiles: 16, max_plans_per_profile: 2, max_pivot_pool: 0 };
        let all = ["PivotFree", "NotChiPivot", "OutsideSwap", "OutsideShift", "AllInside"];
        for i in 0..3000 {
            if all.iter().all(|c| cases.contains_key(*c)) {
                break;
            }
            let k = 6 + i % 10;
            let g = crate::gen::pivot_cluster(k, &mut r);
            if compute_fen_core(&g).p > 6 {
                continue;
            }
            let rep = audit_pipeline(&g, k, caps);
            assert!(rep.violations.is_empty(), "k={k}\n{}\n{:?}", g.to_text(), rep.violations);
            for (c, n) in rep.cases {
                *cases.entry(c).or_insert(0) += n;
            }
        }
        for case in all {
            assert!(cases.contains_key(case), "{case} never ran: {cases:?}");
        }
    }
}
