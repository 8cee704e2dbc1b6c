//! Turning a damage-free realization into a feasible one: remove the pivot
//! with a few swaps and shifts, then repair a blocked b-vertex.
//!
//! Every branch re-checks what it relies on and reports a [`FenFailure`]
//! naming the broken assertion instead of panicking.

use std::collections::VecDeque;

use serde::Serialize;

use super::links::within_two;
use super::pivot::{is_pivot, maximal_pivoted_set, pivot_links, PivotWitness};
use super::plan::PlanContext;
use super::profile::ProfileView;
use super::realization::{
    block_check, damaged_vertices, find_pivot, is_realization, plan_of, realization, safety_levels, ColorRealization,
    RhoState,
};
use super::FenFailure;

/// Almost-safety allowed once the pivot is gone, and after the block repair.
pub const PIVOT_FREE_SAFETY: usize = 11;
pub const FEASIBLE_SAFETY: usize = 13;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: &'static str,
    pub rho: Vec<usize>,
}

/// Which top-level case removed the pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EliminationCase {
    PivotFree,
    NotChiPivot,
    OutsideSwap,
    OutsideShift,
    AllInside,
}

#[derive(Clone, Debug, Serialize)]
pub struct Elimination {
    pub realization: ColorRealization,
    pub case: EliminationCase,
    pub trace: Vec<TraceStep>,
}

struct Eliminator<'v, 'a> {
    view: &'v ProfileView<'a>,
    trace: Vec<TraceStep>,
}

fn swap(rho: &mut [usize], b: usize, c: usize, d: usize) {
    rho.swap(c - b - 1, d - b - 1);
}

impl<'v, 'a> Eliminator<'v, 'a> {
    fn fail(&self, id: &'static str, detail: impl Into<String>) -> FenFailure {
        FenFailure { id, detail: detail.into(), trace: self.trace.clone() }
    }

    fn record(&mut self, step: &'static str, rho: &[usize]) {
        log::trace!("{step}: {rho:?}");
        self.trace.push(TraceStep { step, rho: rho.to_vec() });
    }

    fn b(&self) -> usize {
        self.view.b
    }

    fn idx(&self, c: usize) -> usize {
        c - self.view.b - 1
    }

    fn color_of(&self, rho: &[usize], v: usize) -> Option<usize> {
        rho.iter().position(|&x| x == v).map(|i| i + self.view.b + 1)
    }

    /// `S ∪ K` without `u`.
    fn chi_pool(&self, u: usize) -> Vec<bool> {
        let v = self.view;
        (0..v.g.n()).map(|x| x != u && (v.in_s[x] || v.in_k[x])).collect()
    }

    fn maximal_q(&self, u: usize) -> Vec<usize> {
        maximal_pivoted_set(self.view.g, &self.view.good, &self.chi_pool(u), u)
    }

    fn is_chi_pivot(&self, w: &PivotWitness) -> bool {
        is_pivot(self.view.g, &self.view.good, &self.view.in_s, w.u, &w.d)
    }

    /// Damage-free, realizes a valid plan, and (optionally) a safety bound.
    fn check(&self, rho: &[usize], stage: &'static str, safety: Option<usize>) -> Result<RhoState, FenFailure> {
        let view = self.view;
        if !is_realization(view, rho) {
            return Err(self.fail(stage, "not an injective map into K"));
        }
        let damaged = damaged_vertices(view, rho);
        if !damaged.is_empty() {
            return Err(self.fail(stage, format!("damaged vertices {damaged:?}")));
        }
        let ctx = PlanContext::new(view);
        match plan_of(view, rho) {
            Some(pi) if ctx.check(&pi).is_valid() => {}
            Some(pi) => return Err(self.fail(stage, format!("realized plan {pi:?} violates {:?}", ctx.check(&pi).violated))),
            None => return Err(self.fail(stage, "realizes no plan")),
        }
        let st = RhoState::new(view, rho);
        if let Some(limit) = safety {
            let (_, almost, _) = safety_levels(view, &st);
            if almost > limit {
                return Err(self.fail(stage, format!("almost {almost}-safe, expected {limit}")));
            }
        }
        Ok(st)
    }

    fn run(&mut self, rho: Vec<usize>) -> Result<(Vec<usize>, EliminationCase), FenFailure> {
        self.record("start", &rho);
        let st = self.check(&rho, "start-invalid", None)?;
        let Some(w) = find_pivot(self.view, &st) else {
            return Ok((rho, EliminationCase::PivotFree));
        };
        log::debug!("pivot {} with |D| = {}", w.u, w.d.len());
        if !self.is_chi_pivot(&w) {
            return Ok((self.not_pivot(rho, &w)?, EliminationCase::NotChiPivot));
        }
        let u = w.u;
        let q = self.maximal_q(u);
        let in_q = marks(self.view.g.n(), &q);
        let k_in_q = self.view.k_set.iter().all(|&v| in_q[v]);
        if !k_in_q {
            if rho.iter().any(|&v| !in_q[v]) {
                return Ok((self.outside_swap(rho, &w, &in_q)?, EliminationCase::OutsideSwap));
            }
            return Ok((self.outside_shift(rho, &w, &in_q)?, EliminationCase::OutsideShift));
        }
        // every candidate is pivoted by u, so a link pair outside S exists
        let g = self.view.g;
        let pair = q
            .iter()
            .copied()
            .filter(|&x| !self.view.in_s[x] && g.has_edge(u, x) && self.view.good[x])
            .find_map(|x| g.neighbors(x).iter().copied().find(|&y| y != u && in_q[y] && !self.view.in_s[y]).map(|y| (x, y)));
        let (vm, vp) = pair.ok_or_else(|| self.fail("kq-pair", format!("no link pair outside S for pivot {u}")))?;
        let spare = self.view.k_set.iter().copied().find(|&x| x != u && !rho.contains(&x));
        let spare = spare.ok_or_else(|| self.fail("kq-spare", "no unused candidate"))?;
        Ok((self.all_inside(rho, &w, &in_q, vm, vp, spare)?, EliminationCase::AllInside))
    }

    /// A link that is tight only because of `rho`: swap the offending color
    /// with a color missing around the link.
    fn not_pivot(&mut self, mut rho: Vec<usize>, w: &PivotWitness) -> Result<Vec<usize>, FenFailure> {
        let view = self.view;
        let g = view.g;
        let (b, p, k) = (view.b, view.p, view.k);
        let st = RhoState::new(view, &rho);
        let links = pivot_links(g, w.u, &w.d);
        let v = links
            .iter()
            .copied()
            .find(|&x| !view.good[x])
            .ok_or_else(|| self.fail("not-pivot-link", "every link is chi-tight"))?;
        let chi_near: Vec<usize> =
            std::iter::once(v).chain(g.neighbors(v).iter().copied()).filter_map(|x| view.chi[x]).collect();
        let c = (b + 1..=p)
            .find(|&c| {
                let x = rho[self.idx(c)];
                (x == v || g.has_edge(v, x)) && chi_near.contains(&c)
            })
            .ok_or_else(|| self.fail("not-pivot-color", format!("link {v} has no doubled color")))?;
        let present = st.closed_colors(g, k, v);
        let d = (1..=k).find(|&d| !present[d]).ok_or_else(|| self.fail("not-pivot-missing", format!("link {v} sees every color")))?;
        let x = w.d.iter().copied().find(|&x| st.chi_rho[x] == Some(d));
        match x {
            Some(x) if d > b && rho[self.idx(d)] == x => {}
            _ => return Err(self.fail("not-pivot-target", format!("color {d} is not realized inside D"))),
        }
        swap(&mut rho, b, c, d);
        self.record("not-pivot-swap", &rho);
        Ok(rho)
    }

    /// Makes some color in `p+1..=k` sit on a vertex that is not
    /// `S`-influenced; returns that color.
    fn first_swap(&mut self, mut rho: Vec<usize>, w: &PivotWitness) -> Result<(Vec<usize>, usize), FenFailure> {
        let view = self.view;
        let g = view.g;
        let (b, p, k, u) = (view.b, view.p, view.k, w.u);
        if let Some(c) = (p + 1..=k).find(|&c| !view.s_influenced(rho[self.idx(c)], u)) {
            return Ok((rho, c));
        }
        let in_d = marks(g.n(), &w.d);
        let seed = rho[self.idx(p + 1)];
        let comp = component_in(g, &in_d, seed);
        let v_c = comp
            .iter()
            .copied()
            .find(|&x| g.has_edge(u, x))
            .ok_or_else(|| self.fail("first-swap-vc", "influenced component has no neighbor of the pivot"))?;
        let st = RhoState::new(view, &rho);
        let present = st.closed_colors(g, k, v_c);
        let c = (1..=k).find(|&c| !present[c]).ok_or_else(|| self.fail("first-swap-missing", format!("{v_c} sees every color")))?;
        if c <= b || c > p || !in_d[rho[self.idx(c)]] {
            return Err(self.fail("first-swap-color", format!("missing color {c} is not a plan color inside D")));
        }
        let d = (p + 1..=k)
            .find(|&d| rho[self.idx(d)] != v_c)
            .ok_or_else(|| self.fail("first-swap-partner", "every far color sits on v_C"))?;
        swap(&mut rho, b, c, d);
        self.record("first-swap", &rho);
        Ok((rho, d))
    }

    /// Some chosen vertex lies outside `Q`: swap its color with a color on a
    /// vertex that is not `S`-influenced.
    fn outside_swap(&mut self, rho: Vec<usize>, w: &PivotWitness, in_q: &[bool]) -> Result<Vec<usize>, FenFailure> {
        let v = rho
            .iter()
            .copied()
            .filter(|&x| !in_q[x])
            .min()
            .ok_or_else(|| self.fail("knq-swap-outside", "range inside Q"))?;
        let (mut rho, d) = self.first_swap(rho, w)?;
        let c = self.color_of(&rho, v).expect("v stays in range");
        swap(&mut rho, self.b(), c, d);
        self.record("outside-swap", &rho);
        Ok(rho)
    }

    /// A color in `p+1..=k` whose vertex can be moved without creating a
    /// new pivot.
    fn good_color(&self, rho: &[usize], w: &PivotWitness) -> Result<usize, FenFailure> {
        let view = self.view;
        let g = view.g;
        let (b, p, k, u) = (view.b, view.p, view.k, w.u);
        let n = g.n();
        let d_set = &w.d;
        let in_d = marks(n, d_set);
        let is_link = |x: usize| in_d[x] && g.has_edge(u, x) && g.neighbors(x).iter().any(|&y| in_d[y]);
        let mut w6 = vec![false; n];
        // W0: one representative per plan color
        for c in b + 1..=p {
            let x = rho[self.idx(c)];
            let rep = if in_d[x] {
                d_set.iter().copied().find(|&y| g.has_edge(u, y) && (y == x || g.has_edge(y, x)))
            } else {
                let near: Vec<usize> = d_set.iter().copied().filter(|&y| within_two(g, x, y)).collect();
                near.iter().copied().find(|&y| g.has_edge(x, y)).or(near.first().copied())
            };
            w6[rep.unwrap_or(x)] = true;
        }
        // W1: D vertices with an outside neighbor in N[S]
        for &x in d_set {
            if g.neighbors(x).iter().any(|&y| !in_d[y] && y != u && view.in_ns[y]) {
                w6[x] = true;
            }
        }
        // W2: links next to an S vertex of D
        for &x in d_set {
            if is_link(x) && g.neighbors(x).iter().any(|&y| in_d[y] && view.in_s[y]) {
                w6[x] = true;
            }
        }
        // W3: vertices that some removal of at most two makes D pairwise close
        for x in removal_union(g, d_set) {
            w6[x] = true;
        }
        // W5: links next to W4
        let w4 = w6.clone();
        for &x in d_set {
            if is_link(x) && g.neighbors(x).iter().any(|&y| w4[y]) {
                w6[x] = true;
            }
        }
        let ok: Vec<usize> = (p + 1..=k).filter(|&c| !w6[rho[self.idx(c)]]).collect();
        ok.iter()
            .copied()
            .find(|&c| !g.has_edge(u, rho[self.idx(c)]))
            .or(ok.first().copied())
            .ok_or_else(|| self.fail("good-color", "every far color is excluded"))
    }

    /// Some candidate lies outside `Q` but every chosen vertex is inside.
    fn outside_shift(&mut self, mut rho: Vec<usize>, w: &PivotWitness, in_q: &[bool]) -> Result<Vec<usize>, FenFailure> {
        let view = self.view;
        let g = view.g;
        let u = w.u;
        let in_d = marks(g.n(), &w.d);
        let k_near = view.k_set.iter().all(|&x| in_q[x] || x == u);
        if k_near {
            if let Some(v) = rho.iter().copied().filter(|&x| !in_d[x]).min() {
                let x = g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .find(|&x| in_q[x] && g.has_edge(x, v))
                    .ok_or_else(|| self.fail("knq-shift-link", format!("no Q link between {u} and {v}")))?;
                return self.all_inside(rho, w, in_q, x, v, x);
            }
        }
        let outside: Vec<usize> = view.k_set.iter().copied().filter(|&x| !in_q[x]).collect();
        let v = outside
            .iter()
            .copied()
            .find(|&x| x != u)
            .or(outside.first().copied())
            .ok_or_else(|| self.fail("knq-shift-target", "K inside Q"))?;
        let c = self.good_color(&rho, w)?;
        let i = self.idx(c);
        rho[i] = v;
        self.record("outside-shift", &rho);
        Ok(rho)
    }

    /// Every candidate is near the pivot: move a far color onto `vp` and
    /// free `vm`, then clear whatever pivot remains.
    fn all_inside(
        &mut self,
        rho: Vec<usize>,
        w: &PivotWitness,
        _in_q: &[bool],
        vm: usize,
        vp: usize,
        spare: usize,
    ) -> Result<Vec<usize>, FenFailure> {
        let b = self.b();
        let (rho1, c) = self.first_swap(rho, w)?;
        let x = rho1[self.idx(c)];
        let rho3 = match self.color_of(&rho1, vp) {
            None => {
                let mut rho2 = rho1;
                if let Some(d) = self.color_of(&rho2, vm) {
                    swap(&mut rho2, b, c, d);
                    self.record("kq-free-minus", &rho2);
                }
                let i = self.idx(c);
                rho2[i] = vp;
                self.record("kq-shift-plus", &rho2);
                rho2
            }
            Some(d_plus) => {
                let mut rho2 = rho1;
                swap(&mut rho2, b, c, d_plus);
                debug_assert_eq!(rho2[self.idx(d_plus)], x);
                self.record("kq-swap-plus", &rho2);
                match self.color_of(&rho2, vm) {
                    Some(c1) => self.move_off(rho2, w.u, c1, c, spare)?,
                    None => rho2,
                }
            }
        };
        let st = self.check(&rho3, "kq-intermediate", None)?;
        let Some(w2) = find_pivot(self.view, &st) else {
            return Ok(rho3);
        };
        if !self.is_chi_pivot(&w2) {
            return self.not_pivot(rho3, &w2);
        }
        let q2 = self.maximal_q(w2.u);
        let in_q2 = marks(self.view.g.n(), &q2);
        if rho3.iter().all(|&v| in_q2[v]) {
            return Err(self.fail("kq-second-pivot", format!("second pivot {} pivots the whole range", w2.u)));
        }
        self.outside_swap(rho3, &w2, &in_q2)
    }

    /// Frees the vertex of color `c1` while keeping color `c2` in place and
    /// the pivot `u` unused.
    fn move_off(&mut self, mut rho: Vec<usize>, u: usize, c1: usize, c2: usize, spare: usize) -> Result<Vec<usize>, FenFailure> {
        let view = self.view;
        let g = view.g;
        let (b, k) = (view.b, view.k);
        let v1 = rho[self.idx(c1)];
        if !view.s_influenced(spare, u) {
            let i = self.idx(c1);
            rho[i] = spare;
            self.record("move-off-direct", &rho);
            return Ok(rho);
        }
        let x = g
            .neighbors(spare)
            .iter()
            .copied()
            .find(|&x| x != u && view.in_ns[x])
            .ok_or_else(|| self.fail("move-off-anchor", format!("{spare} has no N[S] neighbor besides {u}")))?;
        let st = RhoState::new(view, &rho);
        let present = st.closed_colors(g, k, x);
        let c = (b + 1..=k)
            .find(|&c| c != c2 && !present[c])
            .ok_or_else(|| self.fail("move-off-color", format!("{x} sees every color but c2")))?;
        let z = rho[self.idx(c)];
        rho[self.idx(c)] = v1;
        rho[self.idx(c1)] = z;
        self.record("move-off-swap", &rho);
        rho[self.idx(c)] = spare;
        self.record("move-off-shift", &rho);
        Ok(rho)
    }

    /// Swaps the blocking color onto a neighbor of the blocked vertex.
    fn handle_block(&mut self, mut rho: Vec<usize>) -> Result<Vec<usize>, FenFailure> {
        let view = self.view;
        let g = view.g;
        let (b, p, k) = (view.b, view.p, view.k);
        let st = RhoState::new(view, &rho);
        let Some((u, c)) = block_check(view, &st) else {
            return Ok(rho);
        };
        let open = g.neighbors(u).iter().filter(|&&v| !st.in_srho[v]).count();
        if open != 2 || c <= b {
            return Err(self.fail("block-shape", format!("{u} blocked by {c} with {open} open neighbors")));
        }
        let d = (p + 1..=k)
            .find(|&d| g.has_edge(u, rho[self.idx(d)]))
            .ok_or_else(|| self.fail("block-partner", format!("no far color next to {u}")))?;
        swap(&mut rho, b, c, d);
        self.record("block-swap", &rho);
        Ok(rho)
    }
}

fn marks(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

fn component_in(g: &crate::graph::Graph, inside: &[bool], seed: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    seen[seed] = true;
    let mut queue = VecDeque::from([seed]);
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        out.push(v);
        for &w in g.neighbors(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    out
}

/// Union of all inclusion-minimal sets `R ⊆ D`, `|R| <= 2`, such that
/// `D \ R` has pairwise distance at most two. Empty when no such `R` exists.
fn removal_union(g: &crate::graph::Graph, d: &[usize]) -> Vec<usize> {
    let mut far = Vec::new();
    for (i, &x) in d.iter().enumerate() {
        for &y in &d[i + 1..] {
            if !within_two(g, x, y) {
                far.push((x, y));
            }
        }
    }
    if far.is_empty() {
        return Vec::new();
    }
    let covers = |r: &[usize]| far.iter().all(|&(x, y)| r.contains(&x) || r.contains(&y));
    let mut touched: Vec<usize> = far.iter().flat_map(|&(x, y)| [x, y]).collect();
    touched.sort_unstable();
    touched.dedup();
    let mut minimal: Vec<Vec<usize>> = touched.iter().filter(|&&x| covers(&[x])).map(|&x| vec![x]).collect();
    for (i, &x) in touched.iter().enumerate() {
        for &y in &touched[i + 1..] {
            if covers(&[x, y]) && !covers(&[x]) && !covers(&[y]) {
                minimal.push(vec![x, y]);
            }
        }
    }
    let mut out: Vec<usize> = minimal.into_iter().flatten().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Removes the pivot and any block from a realization built for a plan.
pub fn eliminate_pivot(view: &ProfileView, rho: Vec<usize>) -> Result<Elimination, FenFailure> {
    let mut el = Eliminator { view, trace: Vec::new() };
    let (rho, case) = el.run(rho)?;
    let st = el.check(&rho, "pivot-free-invalid", Some(PIVOT_FREE_SAFETY))?;
    if let Some(w) = find_pivot(view, &st) {
        return Err(el.fail("pivot-remains", format!("pivot {} after {case:?}", w.u)));
    }
    let rho = el.handle_block(rho)?;
    let st = el.check(&rho, "feasible-invalid", Some(FEASIBLE_SAFETY))?;
    if let Some(w) = find_pivot(view, &st) {
        return Err(el.fail("pivot-after-block", format!("pivot {}", w.u)));
    }
    if let Some((u, c)) = block_check(view, &st) {
        return Err(el.fail("block-remains", format!("{u} blocked by {c}")));
    }
    if let Some(v) = st.brho().into_iter().find(|&v| st.red[v] < 0) {
        return Err(el.fail("not-candidate", format!("{v} is not a chi_rho-candidate")));
    }
    let realization = realization(view, rho);
    Ok(Elimination { realization, case, trace: el.trace })
}
