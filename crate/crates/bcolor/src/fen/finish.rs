//! Greedy completion of a partial b-coloring, nearest to `S+` first.

use crate::coloring::{verify_b_coloring, PartialColoring};

use super::profile::ProfileView;
use super::realization::ColorRealization;
use super::FenFailure;

fn lowest_free(view: &ProfileView, psi: &PartialColoring, v: usize) -> Option<usize> {
    let mut used = vec![false; view.k + 1];
    for &w in view.g.neighbors(v) {
        if let Some(c) = psi.get(w) {
            used[c] = true;
        }
    }
    (1..=view.k).find(|&c| !used[c])
}

/// Colors every remaining vertex and verifies the result.
pub fn finish_coloring(view: &ProfileView, re: &ColorRealization, mut psi: PartialColoring) -> Result<PartialColoring, FenFailure> {
    let g = view.g;
    if let Some(v) = re.flags.almost_safe_witness.filter(|&v| psi.get(v).is_none()) {
        let c = lowest_free(view, &psi, v).ok_or_else(|| FenFailure::new("finish-special", format!("special vertex {v} sees every color")))?;
        psi.set(v, c);
    }
    let mut order: Vec<usize> = g.vertices().filter(|&v| psi.get(v).is_none()).collect();
    order.sort_by_key(|&v| view.core.order_key(v));
    for v in order {
        let c = lowest_free(view, &psi, v).ok_or_else(|| FenFailure::new("finish-greedy", format!("vertex {v} sees every color")))?;
        psi.set(v, c);
    }
    let report = verify_b_coloring(g, &psi, view.k);
    if !report.is_b_coloring {
        return Err(FenFailure::new("finish-verify", format!("{:?}", report.violations)));
    }
    Ok(psi)
}
