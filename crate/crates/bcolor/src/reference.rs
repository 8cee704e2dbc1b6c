//! Ground-truth solvers: exhaustive backtracking, the color-descent heuristic,
//! and the pivoted-tree formula for trees.

use serde::{Deserialize, Serialize};

use crate::coloring::{is_proper_partial, verify_b_coloring, PartialColoring};
use crate::error::{SolveError, SolveResult};
use crate::graph::Graph;

/// Default vertex cap for [`brute_force_b_coloring`].
pub const DEFAULT_BRUTE_CAP: usize = 16;

/// Smallest-last (degeneracy) order, reversed so dense parts come first.
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

struct Brute<'a> {
    g: &'a Graph,
    k: usize,
    order: Vec<usize>,
    color: Vec<usize>,          // 0 = uncolored
    nbr_count: Vec<Vec<usize>>, // nbr_count[v][c]: neighbors of v with color c
    distinct: Vec<usize>,       // distinct colors among neighbors of v
    uncolored_nbrs: Vec<usize>,
}

impl Brute<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in self.g.neighbors(v) {
            if self.nbr_count[w][c] == 0 {
                self.distinct[w] += 1;
            }
            self.nbr_count[w][c] += 1;
            self.uncolored_nbrs[w] -= 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = 0;
        for &w in self.g.neighbors(v) {
            self.nbr_count[w][c] -= 1;
            if self.nbr_count[w][c] == 0 {
                self.distinct[w] -= 1;
            }
            self.uncolored_nbrs[w] += 1;
        }
    }

    /// Some vertex can still become a b-vertex of color `c` in a completion.
    fn color_alive(&self, c: usize) -> bool {
        self.g.vertices().any(|v| {
            let here = self.color[v];
            let possible = here == c || (here == 0 && self.nbr_count[v][c] == 0);
            // colors still missing from N[v] once v has color c
            possible && self.k - (self.distinct[v] + 1) <= self.uncolored_nbrs[v]
        })
    }

    fn search(&mut self, i: usize, max_used: usize) -> bool {
        if self.k - max_used > self.order.len() - i {
            return false;
        }
        if !(1..=self.k).all(|c| self.color_alive(c)) {
            return false;
        }
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        for c in 1..=(max_used + 1).min(self.k) {
            if self.nbr_count[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            if self.search(i + 1, max_used.max(c)) {
                return true;
            }
            self.unassign(v);
        }
        false
    }
}

/// Exhaustive search for a `k`-b-coloring. Returns a verified witness.
///
/// Colors are introduced in order (a vertex may only open color `max + 1`),
/// and a branch is cut as soon as some color has no vertex left that could
/// still see every color in a completion.
pub fn brute_force_b_coloring(g: &Graph, k: usize, cap: usize) -> SolveResult<Option<PartialColoring>> {
    if g.n() > cap {
        return Err(SolveError::TooLarge { what: "n", actual: g.n(), cap });
    }
    if k == 0 {
        return Ok((g.n() == 0).then(|| PartialColoring::new(0, 0)));
    }
    if k > g.m_degree() {
        return Ok(None);
    }
    let n = g.n();
    let mut b = Brute {
        g,
        k,
        order: degeneracy_order(g),
        color: vec![0; n],
        nbr_count: vec![vec![0; k + 1]; n],
        distinct: vec![0; n],
        uncolored_nbrs: g.vertices().map(|v| g.degree(v)).collect(),
    };
    if !b.search(0, 0) {
        return Ok(None);
    }
    let c = PartialColoring::from_vec(k, b.color);
    if !verify_b_coloring(g, &c, k).is_b_coloring {
        return Err(SolveError::invariant("brute.verify", "search returned a non-b-coloring"));
    }
    Ok(Some(c))
}

/// Largest `k` admitting a `k`-b-coloring, scanning down from the m-degree.
pub fn b_chromatic_brute(g: &Graph, cap: usize) -> SolveResult<usize> {
    for k in (1..=g.m_degree()).rev() {
        if brute_force_b_coloring(g, k, cap)?.is_some() {
            return Ok(k);
        }
    }
    Ok(0)
}

/// Repeatedly removes a color class whose every vertex can move to another
/// used color missing from its neighborhood. Colors are scanned in ascending
/// order and each vertex moves to the smallest such color. The result is
/// renumbered to `1..=count`.
pub fn heuristic_descent(g: &Graph, start: &PartialColoring) -> SolveResult<PartialColoring> {
    if start.n() != g.n() || !start.is_total() || !is_proper_partial(g, start) {
        return Err(SolveError::ImproperStart);
    }
    let mut col: Vec<usize> = (0..g.n()).map(|v| start.get(v).unwrap()).collect();
    let k = start.k;
    'outer: loop {
        let mut used = vec![false; k + 1];
        for &c in &col {
            used[c] = true;
        }
        for c in (1..=k).filter(|&c| used[c]) {
            let class: Vec<usize> = g.vertices().filter(|&v| col[v] == c).collect();
            let mut moves = Vec::with_capacity(class.len());
            for &v in &class {
                let mut present = vec![false; k + 1];
                for &w in g.neighbors(v) {
                    present[col[w]] = true;
                }
                match (1..=k).find(|&d| d != c && used[d] && !present[d]) {
                    Some(d) => moves.push((v, d)),
                    None => break,
                }
            }
            if moves.len() == class.len() {
                // the class is independent, so simultaneous moves stay proper
                for (v, d) in moves {
                    col[v] = d;
                }
                continue 'outer;
            }
        }
        break;
    }
    let mut rename = vec![0; k + 1];
    let mut next = 0;
    for (c, slot) in rename.iter_mut().enumerate().skip(1) {
        if col.contains(&c) {
            next += 1;
            *slot = next;
        }
    }
    let out = PartialColoring::from_vec(next.max(1), col.iter().map(|&c| rename[c]).collect());
    Ok(out)
}

/// Outcome of the pivoted-tree recognition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotReport {
    pub pivoted: bool,
    pub pivot: Option<usize>,
    /// Vertices of degree at least `m_degree - 1`.
    pub candidates: Vec<usize>,
    pub m_degree: usize,
}

/// Decides whether a tree is pivoted: exactly `k` candidates (k = m-degree)
/// and a non-candidate `u` such that every candidate is adjacent to `u` or to
/// a candidate adjacent to `u`, and every candidate adjacent both to `u` and
/// to another candidate has degree exactly `k - 1`.
pub fn pivoted_tree_report(t: &Graph) -> SolveResult<PivotReport> {
    if !t.is_tree() {
        return Err(SolveError::NotATree);
    }
    let k = t.m_degree();
    let candidates: Vec<usize> = t.vertices().filter(|&v| t.degree(v) + 1 >= k).collect();
    let mut report = PivotReport { pivoted: false, pivot: None, candidates, m_degree: k };
    if report.candidates.len() != k {
        return Ok(report);
    }
    let mut is_cand = vec![false; t.n()];
    for &c in &report.candidates {
        is_cand[c] = true;
    }
    for u in t.vertices().filter(|&u| !is_cand[u]) {
        let near = |c: usize| t.has_edge(u, c);
        let cond2 = report
            .candidates
            .iter()
            .all(|&c| near(c) || t.neighbors(c).iter().any(|&d| is_cand[d] && near(d)));
        let cond3 = report
            .candidates
            .iter()
            .filter(|&&c| near(c) && t.neighbors(c).iter().any(|&d| is_cand[d]))
            .all(|&c| t.degree(c) + 1 == k);
        if cond2 && cond3 {
            report.pivoted = true;
            report.pivot = Some(u);
            break;
        }
    }
    Ok(report)
}

/// b-chromatic number of a tree: the m-degree, minus one when pivoted.
pub fn b_chromatic_tree(t: &Graph) -> SolveResult<usize> {
    let r = pivoted_tree_report(t)?;
    Ok(r.m_degree - usize::from(r.pivoted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn g_im_two_and_four_colors() {
        let g = fixtures::g_im();
        assert!(brute_force_b_coloring(&g, 2, 16).unwrap().is_some());
        assert!(brute_force_b_coloring(&g, 3, 16).unwrap().is_none());
        assert!(brute_force_b_coloring(&g, 4, 16).unwrap().is_some());
        assert_eq!(b_chromatic_brute(&g, 16).unwrap(), 4);
    }

    #[test]
    fn k4_and_cap() {
        let k4 = fixtures::complete(4);
        assert!(brute_force_b_coloring(&k4, 4, 16).unwrap().is_some());
        assert_eq!(b_chromatic_brute(&k4, 16).unwrap(), 4);
        assert!(matches!(brute_force_b_coloring(&fixtures::path(20), 2, 16), Err(SolveError::TooLarge { .. })));
    }

    #[test]
    fn heuristic_examples() {
        let k4 = fixtures::complete(4);
        let out = heuristic_descent(&k4, &PartialColoring::from_vec(4, vec![1, 2, 3, 4])).unwrap();
        assert_eq!(out.used_colors(), 4);
        let p3 = fixtures::path(3);
        let out = heuristic_descent(&p3, &PartialColoring::from_vec(3, vec![1, 2, 3])).unwrap();
        assert_eq!(out.used_colors(), 2);
        assert!(verify_b_coloring(&p3, &out, 2).is_b_coloring);
        let bad = PartialColoring::from_vec(2, vec![1, 1, 2]);
        assert_eq!(heuristic_descent(&p3, &bad), Err(SolveError::ImproperStart));
    }

    #[test]
    fn pivoted_examples() {
        assert!(!pivoted_tree_report(&fixtures::path(5)).unwrap().pivoted);
        assert!(!pivoted_tree_report(&fixtures::path(2)).unwrap().pivoted);
        let t = fixtures::t_piv();
        let r = pivoted_tree_report(&t).unwrap();
        assert!(r.pivoted);
        assert_eq!(r.pivot, Some(0));
        assert_eq!(b_chromatic_tree(&t).unwrap(), 3);
        assert_eq!(b_chromatic_brute(&t, 16).unwrap(), 3);
        assert_eq!(b_chromatic_tree(&fixtures::path(5)).unwrap(), 3);
        assert_eq!(b_chromatic_tree(&fixtures::star(5)).unwrap(), 2);
        assert_eq!(b_chromatic_tree(&fixtures::t_np()).unwrap(), 4);
        assert_eq!(b_chromatic_brute(&fixtures::t_np(), 16).unwrap(), 4);
        assert_eq!(pivoted_tree_report(&fixtures::cycle(4)), Err(SolveError::NotATree));
    }
}
