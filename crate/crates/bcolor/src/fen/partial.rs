//! Coloring the neighborhoods of the chosen b-vertices so each of them sees
//! every color.

use crate::coloring::PartialColoring;
use crate::matching::max_bipartite_matching;

use super::links::redundancy;
use super::profile::ProfileView;
use super::realization::{ColorRealization, RhoState};
use super::FenFailure;

/// `L_v`: colored vertices that restrict the color of `v`.
fn restrictors(view: &ProfileView, st: &RhoState, v: usize) -> usize {
    let g = view.g;
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    let mut mark = |x: usize, seen: &mut Vec<bool>| {
        if st.in_srho[x] && !seen[x] {
            seen[x] = true;
            count += 1;
        }
    };
    for &x in g.neighbors(v) {
        mark(x, &mut seen);
        if st.in_brho[x] {
            for &u in g.neighbors(x) {
                if u != v {
                    mark(u, &mut seen);
                }
            }
        }
    }
    count
}

/// Vertex resolved ahead of the others, if any.
pub fn exceptional_vertex(view: &ProfileView, st: &RhoState) -> Option<usize> {
    let g = view.g;
    let (k, p) = (view.k as i64, view.p as i64);
    let brho = st.brho();
    let dense = brho.iter().copied().find(|&u| {
        let inside = g.neighbors(u).iter().filter(|&&w| st.in_brho[w]).count() as i64;
        inside >= k - p - 8
    });
    if dense.is_some() {
        return dense;
    }
    let v = g.vertices().find(|&v| !st.in_srho[v] && restrictors(view, st, v) as i64 >= k - 3)?;
    g.neighbors(v).iter().copied().find(|&u| st.in_brho[u])
}

struct Resolver<'v, 'a> {
    view: &'v ProfileView<'a>,
    in_brho: Vec<bool>,
    psi: Vec<Option<usize>>,
}

impl Resolver<'_, '_> {
    /// Colors the uncolored neighbors of `u` so that `u` sees all colors.
    fn resolve(&mut self, u: usize) -> Result<(), FenFailure> {
        let g = self.view.g;
        let k = self.view.k;
        let open: Vec<usize> = g.neighbors(u).iter().copied().filter(|&v| self.psi[v].is_none()).collect();
        let blocked: Vec<Vec<bool>> = open.iter().map(|&v| self.forbidden(v)).collect();
        let mut present = vec![false; k + 1];
        for w in std::iter::once(u).chain(g.neighbors(u).iter().copied()) {
            if let Some(c) = self.psi[w] {
                present[c] = true;
            }
        }
        let missing: Vec<usize> = (1..=k).filter(|&c| !present[c]).collect();
        let mut edges = Vec::new();
        for (i, &c) in missing.iter().enumerate() {
            for (j, forb) in blocked.iter().enumerate() {
                if !forb[c] {
                    edges.push((i, j));
                }
            }
        }
        let matching = max_bipartite_matching(missing.len(), open.len(), &edges);
        if matching.len() < missing.len() {
            return Err(FenFailure::new(
                "partial-unsaturated",
                format!("b-vertex {u}: {} of {} missing colors matched", matching.len(), missing.len()),
            ));
        }
        let mut chosen = vec![None; open.len()];
        for (i, j) in matching {
            chosen[j] = Some(missing[i]);
        }
        for (j, &v) in open.iter().enumerate() {
            let c = match chosen[j] {
                Some(c) => c,
                None => (1..=k)
                    .find(|&c| !blocked[j][c])
                    .ok_or_else(|| FenFailure::new("partial-no-color", format!("neighbor {v} of {u} has no free color")))?,
            };
            self.psi[v] = Some(c);
        }
        Ok(())
    }

    /// `psi(W_v)` as a mask: colors on `N(v)` and on vertices linked to `v`
    /// through a tight b-vertex.
    fn forbidden(&self, v: usize) -> Vec<bool> {
        let g = self.view.g;
        let k = self.view.k;
        let mut m = vec![false; k + 1];
        for &y in g.neighbors(v) {
            if let Some(c) = self.psi[y] {
                m[c] = true;
            }
            if self.in_brho[y] && redundancy(g, &self.psi, k, y) == 0 {
                for &w in g.neighbors(y) {
                    if w != v {
                        if let Some(c) = self.psi[w] {
                            m[c] = true;
                        }
                    }
                }
            }
        }
        m
    }
}

/// Extends `chi_rho` to `S_rho ∪ N(B_rho)` and checks the result is a
/// partial b-coloring with every vertex of `B_rho` a b-vertex.
pub fn partial_b_coloring(view: &ProfileView, re: &ColorRealization) -> Result<PartialColoring, FenFailure> {
    let g = view.g;
    let k = view.k;
    let st = RhoState::new(view, &re.rho);
    let mut order = st.brho();
    let first = exceptional_vertex(view, &st);
    order.sort_by_key(|&u| (Some(u) != first, view.core.order_key(u)));
    log::debug!("resolving {} b-vertices, exceptional {first:?}", order.len());
    let mut r = Resolver { view, in_brho: st.in_brho.clone(), psi: st.chi_rho.clone() };
    for u in order {
        r.resolve(u)?;
    }
    let psi = PartialColoring::from_options(k, r.psi);
    if !crate::coloring::is_proper_partial(g, &psi) {
        return Err(FenFailure::new("partial-improper", "partial coloring has a monochromatic edge"));
    }
    for v in g.vertices() {
        let want = st.in_srho[v] || g.neighbors(v).iter().any(|&u| st.in_brho[u]);
        if want != psi.get(v).is_some() {
            return Err(FenFailure::new("partial-domain", format!("vertex {v} colored = {}", !want)));
        }
    }
    for u in st.brho() {
        let seen = psi.closed_nbhd_colors(g, u);
        if seen.len() < k {
            return Err(FenFailure::new("partial-not-b-vertex", format!("{u} sees {} colors", seen.len())));
        }
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fen::core::compute_fen_core;
    use crate::fen::plan::enumerate_color_plans;
    use crate::fen::profile::enumerate_s_profiles;
    use crate::fen::realization::build_realization;

    #[test]
    fn unpivoted_tree_gets_b_vertices() {
        let t = crate::fixtures::t_np();
        let core = compute_fen_core(&t);
        let prof = enumerate_s_profiles(&t, &core, 4).pop().unwrap();
        let view = ProfileView::new(&t, 4, &core, prof);
        let plan = enumerate_color_plans(&view).pop().unwrap();
        let re = build_realization(&view, &plan).unwrap();
        if !re.flags.pivot_free || !re.flags.block_free {
            return;
        }
        let psi = partial_b_coloring(&view, &re).unwrap();
        for &v in &re.rho {
            assert_eq!(psi.closed_nbhd_colors(&t, v).len(), 4);
        }
    }

    #[test]
    fn restrictor_count_on_a_star() {
        // 0 is chosen with leaves 1..=3; 4 hangs off leaf 1
        let g = crate::Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 4)]);
        let core = compute_fen_core(&g);
        let prof = enumerate_s_profiles(&g, &core, 3).pop().unwrap();
        let view = ProfileView::new(&g, 3, &core, prof);
        let st = RhoState::new(&view, &[0, 2, 3]);
        // 1 sees 0 directly and 2, 3 through the b-vertex 0
        assert_eq!(restrictors(&view, &st, 1), 3);
        assert_eq!(restrictors(&view, &st, 4), 0);
    }
}
