//! From signatures to b-colorings on graphs close to complete multipartite.

use serde::{Deserialize, Serialize};

use crate::coloring::{verify_b_coloring, PartialColoring};
use crate::error::{SolveError, SolveResult};
use crate::graph::Graph;

use super::modulator::{cocluster_decomposition, CoclusterDecomposition};
use super::signature::{for_each_signature, set_type_of, Signature, SignatureMode};

/// Default cap on the modulator size handed to the signature enumeration,
/// whose running time is exponential in `|S|` rather than in `min(|S|, k)`.
pub const DEFAULT_P_CAP: usize = 4;
/// Default cap on the modulator search depth.
pub const DEFAULT_S_CAP: usize = 8;

/// A minimal coloring for a signature, with the parts chosen for its slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalColoring {
    pub coloring: PartialColoring,
    /// `slots[i - 1]` is the part index used for slot `i`.
    pub slots: Vec<usize>,
}

/// Colors `S` by `chi`, then for every slot takes the lowest-indexed unused
/// part of the required set-type and colors one vertex per `(c, A)` with
/// `A in xi(c)` (the lowest uncolored vertex of type `A`).
pub fn minimal_sigma_coloring(sig: &Signature, dec: &CoclusterDecomposition, n: usize, k: usize) -> SolveResult<MinimalColoring> {
    let mut col = PartialColoring::new(n, k.max(1));
    for (i, &v) in dec.s.iter().enumerate() {
        col.set(v, sig.chi[i]);
    }
    let mut taken = vec![false; dec.parts.len()];
    let mut slots = Vec::with_capacity(sig.q);
    for t in &sig.tau {
        let Some(pi) = (0..dec.parts.len()).find(|&pi| !taken[pi] && set_type_of(&dec.parts[pi], dec) == *t) else {
            return Err(SolveError::Precondition("not enough parts of a required set-type".into()));
        };
        taken[pi] = true;
        slots.push(pi);
    }
    for c in 1..=dec.p {
        let slot = sig.lambda[c - 1];
        if slot == 0 {
            continue;
        }
        for &a in &sig.xi[c - 1] {
            let part = &dec.parts[slots[slot - 1]];
            let Some(&v) = part.iter().find(|&&v| dec.vertex_type[v] == a && col.get(v).is_none()) else {
                return Err(SolveError::Precondition("not enough vertices of a required vertex-type".into()));
            };
            col.set(v, c);
        }
    }
    Ok(MinimalColoring { coloring: col, slots })
}

fn sees_all_of_p(g: &Graph, chi: &PartialColoring, v: usize, p: usize, closed: bool) -> bool {
    let mut seen = vec![false; p + 1];
    let own = if closed { chi.get(v) } else { None };
    for c in own.into_iter().chain(g.neighbors(v).iter().filter_map(|&w| chi.get(w))) {
        if c <= p {
            seen[c] = true;
        }
    }
    seen[1..].iter().all(|&s| s)
}

/// Every `B` of colored vertices with one vertex per color in `1..=p` such
/// that each member sees all of `1..=p` in its closed neighborhood.
pub fn candidate_subsets(g: &Graph, chi: &PartialColoring, p: usize) -> Vec<Vec<usize>> {
    let per_color: Vec<Vec<usize>> = (1..=p)
        .map(|c| chi.colored().filter(|&(v, x)| x == c && sees_all_of_p(g, chi, v, p, true)).map(|(v, _)| v).collect())
        .collect();
    let mut out = vec![Vec::new()];
    for options in per_color {
        let mut next = Vec::new();
        for partial in &out {
            for &v in &options {
                let mut b = partial.clone();
                b.push(v);
                next.push(b);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartFlags {
    /// Can host the b-vertex of a color outside `1..=p`.
    pub is_candidate: bool,
    /// Every uncolored vertex has a colored twin in the part.
    pub is_flexible: bool,
}

pub fn classify_part(g: &Graph, part: &[usize], chi: &PartialColoring, b: &[usize], dec: &CoclusterDecomposition) -> PartFlags {
    let uncolored: Vec<usize> = part.iter().copied().filter(|&v| chi.get(v).is_none()).collect();
    let every_b_touches = b.iter().all(|&u| uncolored.iter().any(|&v| g.has_edge(u, v)));
    let some_full = uncolored.iter().any(|&v| sees_all_of_p(g, chi, v, dec.p, false));
    // vertices of one part are twins exactly when their S-neighborhoods agree
    let is_flexible = uncolored
        .iter()
        .all(|&v| part.iter().any(|&w| chi.get(w).is_some() && dec.vertex_type[w] == dec.vertex_type[v]));
    PartFlags { is_candidate: every_b_touches && some_full, is_flexible }
}

/// Extends `chi`: uncolored vertices of `chosen[j]` get color `p + 1 + j`,
/// every other uncolored vertex copies a colored twin from its part.
pub fn assemble_coloring(
    g: &Graph,
    chi: &PartialColoring,
    b: &[usize],
    chosen: &[usize],
    dec: &CoclusterDecomposition,
    k: usize,
) -> SolveResult<PartialColoring> {
    let p = dec.p;
    if chosen.len() + p != k {
        return Err(SolveError::Precondition(format!("need {} candidate parts, got {}", k - p, chosen.len())));
    }
    let mut out = PartialColoring::from_options(k, chi.as_slice().to_vec());
    for (pi, part) in dec.parts.iter().enumerate() {
        let flags = classify_part(g, part, chi, b, dec);
        if let Some(j) = chosen.iter().position(|&x| x == pi) {
            if !flags.is_candidate {
                return Err(SolveError::Precondition(format!("part {pi} is not a candidate")));
            }
            for &v in part.iter().filter(|&&v| chi.get(v).is_none()) {
                out.set(v, p + 1 + j);
            }
        } else {
            if !flags.is_flexible {
                return Err(SolveError::Precondition(format!("part {pi} is not flexible")));
            }
            for &v in part.iter().filter(|&&v| chi.get(v).is_none()) {
                let twin = part.iter().copied().find(|&w| chi.get(w).is_some() && dec.vertex_type[w] == dec.vertex_type[v]).unwrap();
                out.set(v, chi.get(twin).unwrap());
            }
        }
    }
    Ok(out)
}

/// Caps for [`solve_cocluster`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoclusterCaps {
    pub max_s: usize,
    pub max_p: usize,
}

impl Default for CoclusterCaps {
    fn default() -> Self {
        CoclusterCaps { max_s: DEFAULT_S_CAP, max_p: DEFAULT_P_CAP }
    }
}

/// Decides `k`-b-colorability through signatures of a minimum co-cluster
/// modulator; every returned witness is verified.
pub fn solve_cocluster(g: &Graph, k: usize, caps: CoclusterCaps) -> SolveResult<Option<PartialColoring>> {
    if k == 0 {
        return Ok((g.n() == 0).then(|| PartialColoring::new(0, 0)));
    }
    if k > g.m_degree() {
        return Ok(None);
    }
    let dec = cocluster_decomposition(g, k, caps.max_s)?;
    solve_with_decomposition(g, k, &dec, caps.max_p)
}

pub fn solve_with_decomposition(g: &Graph, k: usize, dec: &CoclusterDecomposition, max_p: usize) -> SolveResult<Option<PartialColoring>> {
    if dec.s.len() > max_p {
        return Err(SolveError::TooLarge { what: "co-cluster modulator for enumeration", actual: dec.s.len(), cap: max_p });
    }
    let p = dec.p;
    let mut result: SolveResult<Option<PartialColoring>> = Ok(None);
    for_each_signature(g, dec, SignatureMode::Canonical, |sig| {
        let chi = match minimal_sigma_coloring(sig, dec, g.n(), k) {
            Ok(m) => m.coloring,
            Err(e) => {
                result = Err(SolveError::invariant("cocluster.minimal", e.to_string()));
                return false;
            }
        };
        if !crate::coloring::is_proper_partial(g, &chi) {
            return true;
        }
        for b in candidate_subsets(g, &chi, p) {
            let flags: Vec<PartFlags> = dec.parts.iter().map(|part| classify_part(g, part, &chi, &b, dec)).collect();
            if flags.iter().any(|f| !f.is_candidate && !f.is_flexible) {
                continue;
            }
            let c0: Vec<usize> = (0..flags.len()).filter(|&i| flags[i].is_candidate && !flags[i].is_flexible).collect();
            let c1: Vec<usize> = (0..flags.len()).filter(|&i| flags[i].is_candidate && flags[i].is_flexible).collect();
            if c0.len() > k - p || c0.len() + c1.len() < k - p {
                continue;
            }
            let mut chosen = c0;
            chosen.extend(c1.iter().take(k - p - chosen.len()));
            chosen.sort_unstable();
            let out = match assemble_coloring(g, &chi, &b, &chosen, dec, k) {
                Ok(c) => c,
                Err(e) => {
                    result = Err(SolveError::invariant("cocluster.assemble", e.to_string()));
                    return false;
                }
            };
            if !verify_b_coloring(g, &out, k).is_b_coloring {
                result = Err(SolveError::invariant("cocluster.verify", "assembled coloring is not a b-coloring"));
                return false;
            }
            result = Ok(Some(out));
            return false;
        }
        true
    });
    result
}
