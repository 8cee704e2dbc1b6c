//! Color plans: for every color in `b+1..=p`, whether its b-vertex sits next
//! to a given `S` vertex or away from `N(S)`.

use serde::{Deserialize, Serialize};

use super::links::linked_via;
use super::profile::ProfileView;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlanTarget {
    /// The b-vertex lies in `K* = K \ N(S)`.
    Star,
    /// The b-vertex is a neighbor of this `S` vertex.
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorPlan {
    pub b: usize,
    pub p: usize,
    /// `pi[c - b - 1]` is the target of color `c`.
    pub pi: Vec<PlanTarget>,
    pub critical_color: Option<usize>,
    /// Lowest anchor, filled in when the plan is critical.
    pub anchor: Option<usize>,
}

impl ColorPlan {
    pub fn target(&self, c: usize) -> PlanTarget {
        self.pi[c - self.b - 1]
    }

    pub fn colors(&self) -> std::ops::RangeInclusive<usize> {
        self.b + 1..=self.p
    }
}

/// Which properties a plan violates; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanCheck {
    pub violated: Vec<u8>,
    pub critical_color: Option<usize>,
    pub anchor: Option<usize>,
}

impl PlanCheck {
    pub fn is_valid(&self) -> bool {
        self.violated.is_empty()
    }
}

/// Profile data every plan check needs.
pub struct PlanContext<'v, 'a> {
    pub view: &'v ProfileView<'a>,
    /// `|N(s) ∩ K|` per position in `S`.
    nk: Vec<usize>,
    /// `chi(N(s))` per position in `S`, as a bitmask over colors.
    nbr_colors: Vec<Vec<bool>>,
    /// `critical_if_star[c]`: every `K*` vertex is linked to a vertex of color `c`.
    critical_if_star: Vec<bool>,
    /// Whether some `K*` vertex is linked to the `S` vertex at that position.
    linked_to_kstar: Vec<bool>,
    kstar_len: usize,
}

impl<'v, 'a> PlanContext<'v, 'a> {
    pub fn new(view: &'v ProfileView<'a>) -> Self {
        let g = view.g;
        let s = &view.core.s;
        let kstar: Vec<usize> = view.kstar().collect();
        let nk = s.iter().map(|&u| g.neighbors(u).iter().filter(|&&w| view.in_k[w]).count()).collect();
        let nbr_colors = s
            .iter()
            .map(|&u| {
                let mut m = vec![false; view.p + 1];
                for &w in g.neighbors(u) {
                    if let Some(c) = view.chi[w] {
                        m[c] = true;
                    }
                }
                m
            })
            .collect();
        let mut critical_if_star = vec![false; view.p + 1];
        for (c, slot) in critical_if_star.iter_mut().enumerate().skip(view.b + 1) {
            let class: Vec<usize> = view.chi_class(c).collect();
            *slot = kstar.iter().all(|&x| class.iter().any(|&v| linked_via(g, &view.good, x, v).is_some()));
        }
        let linked_to_kstar =
            s.iter().map(|&u| kstar.iter().any(|&x| linked_via(g, &view.good, x, u).is_some())).collect();
        PlanContext { view, nk, nbr_colors, critical_if_star, linked_to_kstar, kstar_len: kstar.len() }
    }

    fn pos(&self, u: usize) -> usize {
        self.view.core.s.binary_search(&u).expect("plan target outside S")
    }

    /// Literal check of the five validity properties.
    pub fn check(&self, pi: &[PlanTarget]) -> PlanCheck {
        let view = self.view;
        let (b, s) = (view.b, &view.core.s);
        let mut out = PlanCheck::default();
        let mut per_vertex = vec![0usize; s.len()];
        let mut stars = 0;
        for t in pi {
            match *t {
                PlanTarget::Star => stars += 1,
                PlanTarget::Vertex(u) => per_vertex[self.pos(u)] += 1,
            }
        }
        if stars > self.kstar_len {
            out.violated.push(1);
        }
        if (0..s.len()).any(|i| per_vertex[i] > self.nk[i]) {
            out.violated.push(2);
        }
        let proper = s.iter().all(|&u| {
            let c = view.chi[u].unwrap();
            !(c > b && c <= view.p && pi[c - b - 1] == PlanTarget::Vertex(u))
        });
        if !proper {
            out.violated.push(3);
        }
        let redundancy_ok = view.profile.b_set.iter().all(|&u| {
            let i = self.pos(u);
            let clash = pi
                .iter()
                .enumerate()
                .filter(|&(j, t)| *t == PlanTarget::Vertex(u) && self.nbr_colors[i][b + 1 + j])
                .count();
            clash as i64 <= view.red[u]
        });
        if !redundancy_ok {
            out.violated.push(4);
        }
        out.critical_color = pi
            .iter()
            .enumerate()
            .find(|&(j, t)| *t == PlanTarget::Star && self.critical_if_star[b + 1 + j])
            .map(|(j, _)| b + 1 + j);
        if out.critical_color.is_some() {
            out.anchor = s.iter().copied().find(|&u| {
                let i = self.pos(u);
                per_vertex[i] < self.nk[i] && self.linked_to_kstar[i]
            });
            if view.kplus_len() <= view.k || out.anchor.is_none() {
                out.violated.push(5);
            }
        }
        out
    }

    fn plan(&self, pi: Vec<PlanTarget>, check: &PlanCheck) -> ColorPlan {
        ColorPlan {
            b: self.view.b,
            p: self.view.p,
            pi,
            critical_color: check.critical_color,
            anchor: check.anchor,
        }
    }

    /// Plan check for an explicit plan; `None` if invalid.
    pub fn validate(&self, pi: Vec<PlanTarget>) -> Option<ColorPlan> {
        let check = self.check(&pi);
        check.is_valid().then(|| self.plan(pi, &check))
    }

    /// Depth-first over colors `b+1..=p`, pruning on properties 1 to 4 as
    /// soon as they break; property 5 and the final check run at the leaves.
    pub fn for_each_valid_plan(&self, mut f: impl FnMut(ColorPlan) -> bool) {
        let len = self.view.p.saturating_sub(self.view.b);
        let mut pi = Vec::with_capacity(len);
        let mut per_vertex = vec![0usize; self.view.core.s.len()];
        let mut clash = vec![0i64; self.view.core.s.len()];
        self.dfs(&mut pi, len, 0, &mut per_vertex, &mut clash, &mut f);
    }

    fn dfs(
        &self,
        pi: &mut Vec<PlanTarget>,
        len: usize,
        stars: usize,
        per_vertex: &mut [usize],
        clash: &mut [i64],
        f: &mut dyn FnMut(ColorPlan) -> bool,
    ) -> bool {
        let view = self.view;
        if pi.len() == len {
            let check = self.check(pi);
            if check.is_valid() {
                return f(self.plan(pi.clone(), &check));
            }
            return true;
        }
        let c = view.b + 1 + pi.len();
        if stars < self.kstar_len {
            pi.push(PlanTarget::Star);
            let go = self.dfs(pi, len, stars + 1, per_vertex, clash, f);
            pi.pop();
            if !go {
                return false;
            }
        }
        for (i, &u) in view.core.s.iter().enumerate() {
            if per_vertex[i] >= self.nk[i] || view.chi[u] == Some(c) {
                continue;
            }
            let hits = view.in_b[u] && self.nbr_colors[i][c];
            if hits && clash[i] + 1 > view.red[u] {
                continue;
            }
            per_vertex[i] += 1;
            clash[i] += hits as i64;
            pi.push(PlanTarget::Vertex(u));
            let go = self.dfs(pi, len, stars, per_vertex, clash, f);
            pi.pop();
            per_vertex[i] -= 1;
            clash[i] -= hits as i64;
            if !go {
                return false;
            }
        }
        true
    }
}

pub fn enumerate_color_plans(view: &ProfileView) -> Vec<ColorPlan> {
    let mut out = Vec::new();
    PlanContext::new(view).for_each_valid_plan(|p| {
        out.push(p);
        true
    });
    out
}

pub fn has_valid_plan(view: &ProfileView) -> bool {
    let mut found = false;
    PlanContext::new(view).for_each_valid_plan(|_| {
        found = true;
        false
    });
    found
}
