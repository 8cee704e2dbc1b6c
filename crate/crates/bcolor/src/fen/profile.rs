//! Colorings of `S` together with the chosen b-vertices inside `S`, and the
//! candidate sets they induce.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::core::FenCore;
use super::links::{redundancies, redundancy};
use super::pivot::{pivot_failing, PivotWitness};
use super::plan::has_valid_plan;

/// `(chi, B)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SProfile {
    /// `chi[i]` is the color of `core.s[i]`, in `1..=p`.
    pub chi: Vec<usize>,
    /// Sorted; `b_set[i]` has color `i + 1`.
    pub b_set: Vec<usize>,
}

impl SProfile {
    pub fn b(&self) -> usize {
        self.b_set.len()
    }
}

/// A profile with everything derived from it.
#[derive(Clone, Debug)]
pub struct ProfileView<'a> {
    pub g: &'a Graph,
    pub k: usize,
    pub core: &'a FenCore,
    pub profile: SProfile,
    pub p: usize,
    pub b: usize,
    /// `chi` spread over all vertices.
    pub chi: Vec<Option<usize>>,
    /// `red_chi` of every vertex.
    pub red: Vec<i64>,
    pub in_s: Vec<bool>,
    pub in_b: Vec<bool>,
    /// Candidates outside `S`, ascending.
    pub k_set: Vec<usize>,
    pub in_k: Vec<bool>,
    pub in_kplus: Vec<bool>,
    pub in_kstar: Vec<bool>,
    /// `N[S]`.
    pub in_ns: Vec<bool>,
    /// Admissible `chi`-links: `chi`-tight and in `K+`.
    pub good: Vec<bool>,
}

impl<'a> ProfileView<'a> {
    pub fn new(g: &'a Graph, k: usize, core: &'a FenCore, profile: SProfile) -> Self {
        let n = g.n();
        let mut chi = vec![None; n];
        for (i, &v) in core.s.iter().enumerate() {
            chi[v] = Some(profile.chi[i]);
        }
        let red = redundancies(g, &chi, k);
        let in_s = core.in_s.clone();
        let mut in_b = vec![false; n];
        for &v in &profile.b_set {
            in_b[v] = true;
        }
        let in_k: Vec<bool> = (0..n).map(|v| !in_s[v] && red[v] >= 0).collect();
        let k_set: Vec<usize> = (0..n).filter(|&v| in_k[v]).collect();
        let in_kplus: Vec<bool> = (0..n).map(|v| in_k[v] || in_b[v]).collect();
        let mut in_ns = in_s.clone();
        for &v in &core.s {
            for &w in g.neighbors(v) {
                in_ns[w] = true;
            }
        }
        let in_kstar: Vec<bool> = (0..n).map(|v| in_k[v] && !(in_ns[v] && !in_s[v])).collect();
        let good: Vec<bool> = (0..n).map(|v| in_kplus[v] && red[v] == 0).collect();
        ProfileView { g, k, core, b: profile.b(), p: core.p, profile, chi, red, in_s, in_b, k_set, in_k, in_kplus, in_kstar, in_ns, good }
    }

    pub fn kplus_len(&self) -> usize {
        self.k_set.len() + self.b
    }

    pub fn kstar(&self) -> impl Iterator<Item = usize> + '_ {
        self.k_set.iter().copied().filter(|&v| self.in_kstar[v])
    }

    /// `N(S)` outside `S`.
    pub fn in_open_ns(&self, v: usize) -> bool {
        self.in_ns[v] && !self.in_s[v]
    }

    /// `N[v] ∩ N[S] ⊄ {u}`.
    pub fn s_influenced(&self, v: usize, u: usize) -> bool {
        std::iter::once(v).chain(self.g.neighbors(v).iter().copied()).any(|x| x != u && self.in_ns[x])
    }

    /// Vertices of `S` with color `c`.
    pub fn chi_class(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.core.s.iter().copied().filter(move |&v| self.chi[v] == Some(c))
    }
}

fn enumerate_chi(
    g: &Graph,
    core: &FenCore,
    k: usize,
    i: usize,
    chi: &mut Vec<usize>,
    used: usize,
    out: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if i == core.s.len() {
        return out(chi);
    }
    let v = core.s[i];
    for c in 1..=(used + 1).min(core.p).min(k) {
        if (0..i).any(|j| chi[j] == c && g.has_edge(v, core.s[j])) {
            continue;
        }
        chi.push(c);
        let go = enumerate_chi(g, core, k, i + 1, chi, used.max(c), out);
        chi.pop();
        if !go {
            return false;
        }
    }
    true
}

/// Colors of `B` move to `1..=b` in the order of `B`; the remaining classes
/// follow in first-use order over `S`.
fn renumber(chi: &[usize], b_idx: &[usize]) -> Vec<usize> {
    let max = chi.iter().copied().max().unwrap_or(0);
    let mut map = vec![0; max + 1];
    let mut next = 1;
    for &i in b_idx {
        map[chi[i]] = next;
        next += 1;
    }
    for &c in chi {
        if map[c] == 0 {
            map[c] = next;
            next += 1;
        }
    }
    chi.iter().map(|&c| map[c]).collect()
}

/// Calls `f` on every canonical profile; `f` returns `false` to stop.
pub fn for_each_s_profile(g: &Graph, core: &FenCore, k: usize, mut f: impl FnMut(SProfile) -> bool) {
    let mut spread = vec![None; g.n()];
    enumerate_chi(g, core, k, 0, &mut Vec::new(), 0, &mut |chi: &[usize]| {
        for (i, &v) in core.s.iter().enumerate() {
            spread[v] = Some(chi[i]);
        }
        let cands: Vec<usize> = (0..core.s.len()).filter(|&i| redundancy(g, &spread, k, core.s[i]) >= 0).collect();
        // subsets of candidates with pairwise distinct colors
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
        while let Some((pos, chosen)) = stack.pop() {
            if pos == cands.len() {
                let b_set = chosen.iter().map(|&i| core.s[i]).collect();
                if !f(SProfile { chi: renumber(chi, &chosen), b_set }) {
                    return false;
                }
                continue;
            }
            let i = cands[pos];
            if !chosen.iter().any(|&j| chi[j] == chi[i]) {
                let mut with = chosen.clone();
                with.push(i);
                stack.push((pos + 1, with));
            }
            stack.push((pos + 1, chosen));
        }
        true
    });
}

pub fn enumerate_s_profiles(g: &Graph, core: &FenCore, k: usize) -> Vec<SProfile> {
    let mut out = Vec::new();
    for_each_s_profile(g, core, k, |p| {
        out.push(p);
        true
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingReport {
    pub candidate_failing: bool,
    pub pivot_failing: Option<PivotWitness>,
    pub plan_failing: bool,
}

impl FailingReport {
    pub fn is_failing(&self) -> bool {
        self.candidate_failing || self.pivot_failing.is_some() || self.plan_failing
    }
}

pub fn failing_check(view: &ProfileView) -> FailingReport {
    FailingReport {
        candidate_failing: view.kplus_len() < view.k,
        pivot_failing: pivot_failing(view),
        plan_failing: !has_valid_plan(view),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fen::core::compute_fen_core;
    use crate::fixtures;
    use std::collections::HashSet;

    #[test]
    fn empty_core_has_one_profile() {
        let t = fixtures::t_piv();
        let core = compute_fen_core(&t);
        let all = enumerate_s_profiles(&t, &core, 4);
        assert_eq!(all, vec![SProfile { chi: vec![], b_set: vec![] }]);
    }

    #[test]
    fn single_vertex_core() {
        let core = FenCore {
            s: vec![0],
            s_plus: vec![0],
            p: 1,
            outer_paths: vec![],
            dist_to_splus: vec![],
            in_s: vec![true, false, false],
        };
        // vertex 0 has degree 2: candidate for k <= 3
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]);
        assert_eq!(enumerate_s_profiles(&g, &core, 3).len(), 2);
        assert_eq!(enumerate_s_profiles(&g, &core, 4), vec![SProfile { chi: vec![1], b_set: vec![] }]);
    }

    /// All `(chi, B)` pairs reduced to their partition-and-`B` key.
    fn exhaustive_keys(g: &Graph, core: &FenCore, k: usize) -> HashSet<(Vec<usize>, Vec<usize>)> {
        let s = &core.s;
        let p = core.p;
        let mut keys = HashSet::new();
        let total = p.pow(s.len() as u32);
        for code in 0..total {
            let mut x = code;
            let chi: Vec<usize> = (0..s.len())
                .map(|_| {
                    let c = x % p + 1;
                    x /= p;
                    c
                })
                .collect();
            if (0..s.len()).any(|i| (0..i).any(|j| chi[i] == chi[j] && g.has_edge(s[i], s[j]))) {
                continue;
            }
            // more than k classes cannot be renumbered into [k]
            if chi.iter().collect::<HashSet<_>>().len() > k {
                continue;
            }
            let mut spread = vec![None; g.n()];
            for (i, &v) in s.iter().enumerate() {
                spread[v] = Some(chi[i]);
            }
            for mask in 0u32..1 << s.len() {
                let b: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).collect();
                let bcols: HashSet<usize> = b.iter().map(|&i| chi[i]).collect();
                if bcols.len() != b.len() || b.iter().any(|&i| redundancy(g, &spread, k, s[i]) < 0) {
                    continue;
                }
                // class label = lowest member index
                let label: Vec<usize> = (0..s.len()).map(|i| (0..s.len()).find(|&j| chi[j] == chi[i]).unwrap()).collect();
                keys.insert((label, b));
            }
        }
        keys
    }

    #[test]
    fn canonical_profiles_match_exhaustive_generation() {
        let mut r = crate::gen::rng(8);
        for _ in 0..40 {
            let g = crate::gen::random_fen_graph(9, 2, &mut r);
            let core = compute_fen_core(&g);
            if core.p == 0 || core.p > 6 {
                continue;
            }
            for k in 1..=4 {
                let want = exhaustive_keys(&g, &core, k);
                let got: Vec<SProfile> = enumerate_s_profiles(&g, &core, k);
                let got_keys: HashSet<(Vec<usize>, Vec<usize>)> = got
                    .iter()
                    .map(|pr| {
                        let chi = &pr.chi;
                        let label = (0..chi.len()).map(|i| (0..chi.len()).find(|&j| chi[j] == chi[i]).unwrap()).collect();
                        let b = pr.b_set.iter().map(|v| core.s.binary_search(v).unwrap()).collect();
                        (label, b)
                    })
                    .collect();
                assert_eq!(got.len(), got_keys.len());
                assert_eq!(want, got_keys);
                for pr in &got {
                    for (i, &v) in pr.b_set.iter().enumerate() {
                        assert_eq!(pr.chi[core.s.binary_search(&v).unwrap()], i + 1);
                    }
                }
            }
        }
    }
}
