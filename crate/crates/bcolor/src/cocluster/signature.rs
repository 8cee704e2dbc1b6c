//! Set-types, vertex-types and signatures.

use serde::{Deserialize, Serialize};

use super::modulator::CoclusterDecomposition;

/// Count of part vertices per `S`-neighborhood, capped at `p + 1`. Stored
/// sparsely as `(mask, count)` pairs with nonzero counts, sorted by mask.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SetType(pub Vec<(u32, usize)>);

impl SetType {
    pub fn get(&self, mask: u32) -> usize {
        self.0.binary_search_by_key(&mask, |e| e.0).map_or(0, |i| self.0[i].1)
    }
}

/// Neighborhood of `v` in `S`, as a bitmask over positions in `dec.s`.
pub fn vertex_type_of(v: usize, dec: &CoclusterDecomposition) -> u32 {
    dec.vertex_type[v]
}

pub fn set_type_of(part: &[usize], dec: &CoclusterDecomposition) -> SetType {
    let mut counts: Vec<(u32, usize)> = Vec::new();
    let mut masks: Vec<u32> = part.iter().map(|&v| dec.vertex_type[v]).collect();
    masks.sort_unstable();
    for m in masks {
        match counts.last_mut() {
            Some(last) if last.0 == m => last.1 += 1,
            _ => counts.push((m, 1)),
        }
    }
    for e in &mut counts {
        e.1 = e.1.min(dec.p + 1);
    }
    SetType(counts)
}

/// `(chi, q, tau, lambda, xi)`: a coloring of `S` into `1..=p`, `q` part
/// slots with their set-types, the slot of each color in `1..=p` (`0` for
/// none), and the vertex-types each color occupies in its slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    /// `chi[i]` is the color of `dec.s[i]`.
    pub chi: Vec<usize>,
    pub q: usize,
    /// `tau[i - 1]` is the set-type of slot `i`.
    pub tau: Vec<SetType>,
    /// `lambda[c - 1]` in `0..=q`.
    pub lambda: Vec<usize>,
    /// `xi[c - 1]`: sorted vertex-type masks.
    pub xi: Vec<Vec<u32>>,
}

/// Which tuples to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureMode {
    /// Every tuple satisfying the three signature properties.
    All,
    /// One representative per color and slot relabeling, restricted to tuples
    /// that some coloring can have: `chi` in first-use form, nonzero slots of
    /// `lambda` in first-use form, `xi(c)` empty iff `lambda(c) = 0`, and
    /// every type in `xi(c)` present in the slot's set-type.
    Canonical,
}

/// Distinct set-types of the parts with their multiplicities, sorted.
pub fn available_set_types(dec: &CoclusterDecomposition) -> Vec<(SetType, usize)> {
    let mut types: Vec<SetType> = dec.parts.iter().map(|u| set_type_of(u, dec)).collect();
    types.sort();
    let mut out: Vec<(SetType, usize)> = Vec::new();
    for t in types {
        match out.last_mut() {
            Some(last) if last.0 == t => last.1 += 1,
            _ => out.push((t, 1)),
        }
    }
    out
}

fn proper_on_s(g: &crate::graph::Graph, dec: &CoclusterDecomposition, chi: &[usize]) -> bool {
    (0..dec.s.len()).all(|i| (0..i).all(|j| chi[i] != chi[j] || !g.has_edge(dec.s[i], dec.s[j])))
}

/// Checks the three signature properties and the shape of every field.
pub fn is_signature(g: &crate::graph::Graph, dec: &CoclusterDecomposition, sig: &Signature) -> bool {
    let p = dec.p;
    let s = dec.s.len();
    if sig.chi.len() != s || sig.chi.iter().any(|&c| !(1..=p).contains(&c)) || !proper_on_s(g, dec, &sig.chi) {
        return false;
    }
    if sig.q > p || sig.tau.len() != sig.q || sig.lambda.len() != p || sig.xi.len() != p {
        return false;
    }
    if sig.lambda.iter().any(|&l| l > sig.q) || sig.xi.iter().flatten().any(|&a| s < 32 && a >> s != 0) {
        return false;
    }
    // (1) every slot is used by some color
    if !(1..=sig.q).all(|i| sig.lambda.contains(&i)) {
        return false;
    }
    // (2) enough parts of each set-type
    let avail = available_set_types(dec);
    for t in &sig.tau {
        let want = sig.tau.iter().filter(|x| *x == t).count();
        let have = avail.iter().find(|(x, _)| x == t).map_or(0, |e| e.1);
        if want > have {
            return false;
        }
    }
    // (3) enough vertices of each vertex-type per slot
    for i in 1..=sig.q {
        let mut masks: Vec<u32> = (0..p).filter(|&c| sig.lambda[c] == i).flat_map(|c| sig.xi[c].iter().copied()).collect();
        masks.sort_unstable();
        for chunk in masks.chunk_by(|a, b| a == b) {
            if chunk.len() > sig.tau[i - 1].get(chunk[0]) {
                return false;
            }
        }
    }
    true
}

struct Enumerator<'a, F: FnMut(&Signature) -> bool> {
    g: &'a crate::graph::Graph,
    dec: &'a CoclusterDecomposition,
    mode: SignatureMode,
    avail: Vec<(SetType, usize)>,
    all_masks: Vec<u32>,
    sink: F,
    stopped: bool,
}

impl<F: FnMut(&Signature) -> bool> Enumerator<'_, F> {
    fn emit(&mut self, sig: &Signature) {
        if !self.stopped && !(self.sink)(sig) {
            self.stopped = true;
        }
    }

    fn chi(&mut self, i: usize, chi: &mut Vec<usize>, max_used: usize) {
        if self.stopped {
            return;
        }
        let p = self.dec.p;
        if i == self.dec.s.len() {
            for q in 0..=p {
                let mut sig = Signature { chi: chi.clone(), q, tau: Vec::new(), lambda: Vec::new(), xi: Vec::new() };
                self.lambda(&mut sig, 0);
            }
            return;
        }
        let hi = match self.mode {
            SignatureMode::All => p,
            SignatureMode::Canonical => (max_used + 1).min(p),
        };
        for c in 1..=hi {
            let v = self.dec.s[i];
            if (0..i).any(|j| chi[j] == c && self.g.has_edge(v, self.dec.s[j])) {
                continue;
            }
            chi.push(c);
            self.chi(i + 1, chi, max_used.max(c));
            chi.pop();
        }
    }

    fn lambda(&mut self, sig: &mut Signature, c: usize) {
        if self.stopped {
            return;
        }
        let p = self.dec.p;
        if c == p {
            if (1..=sig.q).all(|i| sig.lambda.contains(&i)) {
                self.tau(sig, 0);
            }
            return;
        }
        let used = sig.lambda.iter().copied().max().unwrap_or(0);
        let hi = match self.mode {
            SignatureMode::All => sig.q,
            SignatureMode::Canonical => (used + 1).min(sig.q),
        };
        // the remaining colors must still be able to cover the unused slots
        if sig.q.saturating_sub(used) > p - c && self.mode == SignatureMode::Canonical {
            return;
        }
        for l in 0..=hi {
            sig.lambda.push(l);
            self.lambda(sig, c + 1);
            sig.lambda.pop();
        }
    }

    fn tau(&mut self, sig: &mut Signature, i: usize) {
        if self.stopped {
            return;
        }
        if i == sig.q {
            self.xi(sig, 0);
            return;
        }
        for t in 0..self.avail.len() {
            let used = sig.tau.iter().filter(|x| **x == self.avail[t].0).count();
            if used >= self.avail[t].1 {
                continue;
            }
            sig.tau.push(self.avail[t].0.clone());
            self.tau(sig, i + 1);
            sig.tau.pop();
        }
    }

    /// Whether adding `xi` for the next color keeps property (3).
    fn fits(&self, sig: &Signature, slot: usize, family: &[u32]) -> bool {
        if slot == 0 {
            return true;
        }
        family.iter().all(|&a| {
            let already = (0..sig.xi.len()).filter(|&c| sig.lambda[c] == slot && sig.xi[c].contains(&a)).count();
            already < sig.tau[slot - 1].get(a)
        })
    }

    fn xi(&mut self, sig: &mut Signature, c: usize) {
        if self.stopped {
            return;
        }
        if c == self.dec.p {
            let done = sig.clone();
            self.emit(&done);
            return;
        }
        let slot = sig.lambda[c];
        let pool: Vec<u32> = match (self.mode, slot) {
            (SignatureMode::Canonical, 0) => {
                sig.xi.push(Vec::new());
                self.xi(sig, c + 1);
                sig.xi.pop();
                return;
            }
            (SignatureMode::Canonical, _) => sig.tau[slot - 1].0.iter().map(|e| e.0).collect(),
            (SignatureMode::All, _) => self.all_masks.clone(),
        };
        assert!(pool.len() < 32, "too many vertex-types to enumerate families");
        let start = u32::from(self.mode == SignatureMode::Canonical);
        for fam in start..(1u32 << pool.len()) {
            let family: Vec<u32> = (0..pool.len()).filter(|b| fam >> b & 1 == 1).map(|b| pool[b]).collect();
            if !self.fits(sig, slot, &family) {
                continue;
            }
            sig.xi.push(family);
            self.xi(sig, c + 1);
            sig.xi.pop();
            if self.stopped {
                return;
            }
        }
    }
}

/// Calls `sink` on each signature; `sink` returns `false` to stop early.
pub fn for_each_signature(
    g: &crate::graph::Graph,
    dec: &CoclusterDecomposition,
    mode: SignatureMode,
    sink: impl FnMut(&Signature) -> bool,
) {
    let s = dec.s.len();
    assert!(s < 32);
    let mut e = Enumerator {
        g,
        dec,
        mode,
        avail: available_set_types(dec),
        all_masks: (0..1u32 << s).collect(),
        sink,
        stopped: false,
    };
    e.chi(0, &mut Vec::new(), 0);
}

pub fn enumerate_signatures(g: &crate::graph::Graph, dec: &CoclusterDecomposition, mode: SignatureMode) -> Vec<Signature> {
    let mut out = Vec::new();
    for_each_signature(g, dec, mode, |s| {
        out.push(s.clone());
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn set_type_of_one_sided_part() {
        // S = {u, v}; a part whose three vertices all see only u
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4)]);
        let dec = CoclusterDecomposition::from_modulator(&g, vec![0, 1], 2);
        assert_eq!(dec.parts, vec![vec![2, 3, 4]]);
        let t = set_type_of(&dec.parts[0], &dec);
        assert_eq!(t, SetType(vec![(0b01, 3)]));
        assert_eq!((t.get(0), t.get(0b01), t.get(0b10), t.get(0b11)), (0, 3, 0, 0));
    }

    #[test]
    fn cap_at_p_plus_one() {
        let g = crate::fixtures::complete_bipartite(1, 6);
        let dec = CoclusterDecomposition::from_modulator(&g, vec![], 3);
        let t = set_type_of(&dec.parts[1], &dec);
        assert_eq!(t, SetType(vec![(0, 1)]));
    }

    #[test]
    fn p_zero_has_one_signature() {
        let g = crate::fixtures::complete_bipartite(2, 2);
        let dec = CoclusterDecomposition::from_modulator(&g, vec![], 2);
        assert_eq!(enumerate_signatures(&g, &dec, SignatureMode::All).len(), 1);
        assert_eq!(enumerate_signatures(&g, &dec, SignatureMode::Canonical).len(), 1);
    }
}
