//! Dynamic program over a nice tree decomposition deciding k-b-colorability.
//!
//! A state records, for the current bag, a color label per bag vertex, the
//! set of colors each bag vertex has seen in its processed closed
//! neighborhood, and the set of colors already owning a b-vertex among
//! forgotten vertices. Labels are canonical: bag colors are numbered by first
//! use, and the remaining colors are sorted by how they appear in the seen and
//! done sets, so color permutations collapse into a single state.

use std::collections::HashMap;

use crate::coloring::{verify_b_coloring, PartialColoring};
use crate::error::{SolveError, SolveResult};
use crate::graph::Graph;

use super::td::TreeDecomposition;

/// Default cap on the number of DP states and join pairings.
pub const DEFAULT_STATE_BUDGET: usize = 4_000_000;

const MAX_K: usize = 64;
const MAX_BAG: usize = 100;

#[derive(Clone, Debug)]
enum NiceKind {
    Leaf,
    Introduce { v: usize, pos: usize, child: usize },
    Forget { pos: usize, child: usize },
    Join { left: usize, right: usize },
}

#[derive(Clone, Debug)]
struct NiceNode {
    kind: NiceKind,
    bag: Vec<usize>,
}

/// Converts a tree decomposition into a nice one; children precede parents
/// and the last node is the root with an empty bag.
fn make_nice(td: &TreeDecomposition) -> Vec<NiceNode> {
    let t = td.bags.len();
    // iterative post-order from node 0
    let mut parent = vec![usize::MAX; t];
    let mut order = Vec::with_capacity(t);
    let mut stack = vec![0usize];
    let mut seen = vec![false; t];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &td.adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    order.reverse();

    let mut nodes: Vec<NiceNode> = Vec::new();
    let mut top = vec![usize::MAX; t];
    let push = |nodes: &mut Vec<NiceNode>, kind: NiceKind, bag: Vec<usize>| {
        nodes.push(NiceNode { kind, bag });
        nodes.len() - 1
    };
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); t];
    for &x in &order {
        if parent[x] != usize::MAX {
            children[parent[x]].push(x);
        }
    }
    for &x in &order {
        let target = &td.bags[x];
        let mut branches = Vec::new();
        let sources: Vec<(usize, Vec<usize>)> = if children[x].is_empty() {
            vec![(push(&mut nodes, NiceKind::Leaf, Vec::new()), Vec::new())]
        } else {
            children[x].iter().map(|&c| (top[c], td.bags[c].clone())).collect()
        };
        for (mut cur, mut bag) in sources {
            for v in bag.clone() {
                if target.binary_search(&v).is_err() {
                    let pos = bag.binary_search(&v).unwrap();
                    bag.remove(pos);
                    cur = push(&mut nodes, NiceKind::Forget { pos, child: cur }, bag.clone());
                }
            }
            for &v in target {
                if let Err(pos) = bag.binary_search(&v) {
                    bag.insert(pos, v);
                    cur = push(&mut nodes, NiceKind::Introduce { v, pos, child: cur }, bag.clone());
                }
            }
            branches.push(cur);
        }
        let mut acc = branches[0];
        for &b in &branches[1..] {
            acc = push(&mut nodes, NiceKind::Join { left: acc, right: b }, target.clone());
        }
        top[x] = acc;
    }
    let mut cur = top[0];
    let mut bag = td.bags[0].clone();
    while !bag.is_empty() {
        let last = bag.len() - 1;
        bag.pop();
        cur = push(&mut nodes, NiceKind::Forget { pos: last, child: cur }, bag.clone());
    }
    debug_assert_eq!(cur, nodes.len() - 1);
    nodes
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    labels: Box<[u8]>,
    seen: Box<[u64]>,
    done: u64,
}

#[derive(Clone, Debug)]
enum Back {
    Leaf,
    /// `relabel[child_label] = this_label`
    Step { child: usize, relabel: Box<[u8]> },
    /// Right labels map into left labels via `pair`, then through `relabel`.
    Join { left: usize, right: usize, pair: Box<[u8]>, relabel: Box<[u8]> },
}

struct Table {
    states: Vec<(State, Back)>,
    index: HashMap<State, usize>,
}

impl Table {
    fn new() -> Self {
        Table { states: Vec::new(), index: HashMap::new() }
    }

    fn insert(&mut self, s: State, back: Back) {
        if !self.index.contains_key(&s) {
            self.index.insert(s.clone(), self.states.len());
            self.states.push((s, back));
        }
    }
}

/// Signature of an unused label: its done bit and its membership in every
/// seen set.
fn signature(seen: &[u64], done: u64, label: usize) -> u128 {
    let mut sig = (done >> label & 1) as u128;
    for (i, &s) in seen.iter().enumerate() {
        sig |= ((s >> label & 1) as u128) << (i + 1);
    }
    sig
}

fn permute_mask(mask: u64, relabel: &[u8]) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1u64 << relabel[b];
    }
    out
}

/// Canonical relabeling; returns the state and `old label -> new label`.
///
/// The seen set of a bag vertex whose color already has a b-vertex can no
/// longer matter, so it is cleared first.
fn canonicalize(labels: &[u8], seen: &[u64], done: u64, k: usize) -> (State, Box<[u8]>) {
    let seen: Vec<u64> = labels.iter().zip(seen).map(|(&l, &s)| if done >> l & 1 == 1 { 0 } else { s }).collect();
    let seen = &seen[..];
    let mut relabel = vec![u8::MAX; k];
    let mut next = 0u8;
    for &l in labels {
        if relabel[l as usize] == u8::MAX {
            relabel[l as usize] = next;
            next += 1;
        }
    }
    let mut unused: Vec<(u128, usize)> =
        (0..k).filter(|&l| relabel[l] == u8::MAX).map(|l| (signature(seen, done, l), l)).collect();
    unused.sort_unstable();
    for (_, l) in unused {
        relabel[l] = next;
        next += 1;
    }
    let state = State {
        labels: labels.iter().map(|&l| relabel[l as usize]).collect(),
        seen: seen.iter().map(|&s| permute_mask(s, &relabel)).collect(),
        done: permute_mask(done, &relabel),
    };
    (state, relabel.into_boxed_slice())
}

/// Classes of equal-signature unused labels (labels `used..k`), in order.
fn unused_classes(s: &State, used: usize, k: usize) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for l in used..k {
        let sig = signature(&s.seen, s.done, l);
        if last == Some(sig) {
            classes.last_mut().unwrap().push(l);
        } else {
            classes.push(vec![l]);
            last = Some(sig);
        }
    }
    classes
}

/// All nonnegative integer matrices with the given row and column sums.
fn contingency(rows: &[usize], cols: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        i: usize,
        j: usize,
        rows: &[usize],
        cols: &mut Vec<usize>,
        row_left: usize,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == rows.len() {
            if cols.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if j == cols.len() {
            if row_left == 0 {
                let next = rows.get(i + 1).copied().unwrap_or(0);
                rec(i + 1, 0, rows, cols, next, cur, out);
            }
            return;
        }
        let hi = row_left.min(cols[j]);
        for x in 0..=hi {
            cur[i][j] = x;
            cols[j] -= x;
            rec(i, j + 1, rows, cols, row_left - x, cur, out);
            cols[j] += x;
        }
        cur[i][j] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![vec![0; cols.len()]; rows.len()];
    let mut cols = cols.to_vec();
    let first = rows.first().copied().unwrap_or(0);
    rec(0, 0, rows, &mut cols, first, &mut cur, &mut out);
    out
}

/// Solves `k`-b-coloring exactly by dynamic programming over `td`.
///
/// Returns a verified witness, or `None` if no `k`-b-coloring exists. Fails
/// with [`SolveError::Budget`] once more than `budget` states or join
/// pairings have been generated.
pub fn solve_twdp(g: &Graph, k: usize, td: &TreeDecomposition, budget: usize) -> SolveResult<Option<PartialColoring>> {
    if k == 0 {
        return Ok((g.n() == 0).then(|| PartialColoring::new(0, 0)));
    }
    if k > g.m_degree() {
        return Ok(None);
    }
    if k > MAX_K {
        return Err(SolveError::TooLarge { what: "k", actual: k, cap: MAX_K });
    }
    if td.width() + 1 > MAX_BAG {
        return Err(SolveError::TooLarge { what: "bag size", actual: td.width() + 1, cap: MAX_BAG });
    }
    debug_assert!(td.validate(g).is_ok(), "invalid decomposition");
    let nodes = make_nice(td);
    let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let tracked: Vec<bool> = g.vertices().map(|v| g.degree(v) + 1 >= k).collect();
    let mut tables: Vec<Table> = Vec::with_capacity(nodes.len());
    let mut work = 0usize;

    for node in &nodes {
        let mut table = Table::new();
        match node.kind {
            NiceKind::Leaf => {
                table.insert(State { labels: Box::new([]), seen: Box::new([]), done: 0 }, Back::Leaf);
            }
            NiceKind::Introduce { v, pos, child } => {
                let child_bag = &nodes[child].bag;
                let nbr_pos: Vec<usize> = (0..child_bag.len()).filter(|&i| g.has_edge(v, child_bag[i])).collect();
                for (ci, (s, _)) in tables[child].states.iter().enumerate() {
                    let used = s.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
                    let mut prev_sig = None;
                    for l in 0..k {
                        if l >= used {
                            // equal-signature unused labels give isomorphic states
                            let sig = signature(&s.seen, s.done, l);
                            if prev_sig == Some(sig) {
                                continue;
                            }
                            prev_sig = Some(sig);
                        }
                        if nbr_pos.iter().any(|&i| s.labels[i] as usize == l) {
                            continue;
                        }
                        let mut labels = s.labels.to_vec();
                        let mut seen = s.seen.to_vec();
                        let mut own = 0u64;
                        for &i in &nbr_pos {
                            if tracked[child_bag[i]] {
                                seen[i] |= 1 << l;
                            }
                            own |= 1 << s.labels[i];
                        }
                        labels.insert(pos, l as u8);
                        seen.insert(pos, if tracked[v] { own | 1 << l } else { 0 });
                        let (state, relabel) = canonicalize(&labels, &seen, s.done, k);
                        table.insert(state, Back::Step { child: ci, relabel });
                        work += 1;
                    }
                }
            }
            NiceKind::Forget { pos, child } => {
                let v = nodes[child].bag[pos];
                for (ci, (s, _)) in tables[child].states.iter().enumerate() {
                    let mut done = s.done;
                    let own = 1u64 << s.labels[pos];
                    if tracked[v] && (s.seen[pos] | own) == full {
                        done |= own;
                    }
                    let mut labels = s.labels.to_vec();
                    let mut seen = s.seen.to_vec();
                    labels.remove(pos);
                    seen.remove(pos);
                    let (state, relabel) = canonicalize(&labels, &seen, done, k);
                    table.insert(state, Back::Step { child: ci, relabel });
                    work += 1;
                }
            }
            NiceKind::Join { left, right } => {
                let mut by_labels: HashMap<&[u8], Vec<usize>> = HashMap::new();
                for (ri, (s, _)) in tables[right].states.iter().enumerate() {
                    by_labels.entry(&s.labels).or_default().push(ri);
                }
                for (li, (a, _)) in tables[left].states.iter().enumerate() {
                    let Some(partners) = by_labels.get(&a.labels[..]) else { continue };
                    let used = a.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
                    let a_classes = unused_classes(a, used, k);
                    let rows: Vec<usize> = a_classes.iter().map(Vec::len).collect();
                    for &ri in partners {
                        let b = &tables[right].states[ri].0;
                        let b_classes = unused_classes(b, used, k);
                        let cols: Vec<usize> = b_classes.iter().map(Vec::len).collect();
                        for matrix in contingency(&rows, &cols) {
                            work += 1;
                            if work > budget {
                                return Err(SolveError::Budget { budget });
                            }
                            let mut pair: Vec<u8> = (0..k as u8).collect();
                            let mut a_next = vec![0usize; rows.len()];
                            let mut b_next = vec![0usize; cols.len()];
                            for (i, row) in matrix.iter().enumerate() {
                                for (j, &x) in row.iter().enumerate() {
                                    for _ in 0..x {
                                        pair[b_classes[j][b_next[j]]] = a_classes[i][a_next[i]] as u8;
                                        a_next[i] += 1;
                                        b_next[j] += 1;
                                    }
                                }
                            }
                            let seen: Vec<u64> = a.seen.iter().zip(b.seen.iter()).map(|(&x, &y)| x | permute_mask(y, &pair)).collect();
                            let done = a.done | permute_mask(b.done, &pair);
                            let (state, relabel) = canonicalize(&a.labels, &seen, done, k);
                            table.insert(state, Back::Join { left: li, right: ri, pair: pair.into_boxed_slice(), relabel });
                        }
                    }
                }
            }
        }
        if work > budget {
            return Err(SolveError::Budget { budget });
        }
        tables.push(table);
    }

    let root = nodes.len() - 1;
    let Some(accept) = tables[root].states.iter().position(|(s, _)| s.done == full) else {
        return Ok(None);
    };

    // top-down reconstruction; `phi[label]` is the real color (0-based)
    let mut colors: Vec<Option<usize>> = vec![None; g.n()];
    let mut stack: Vec<(usize, usize, Vec<u8>)> = vec![(root, accept, (0..k as u8).collect())];
    while let Some((x, si, phi)) = stack.pop() {
        let (state, back) = &tables[x].states[si];
        if let NiceKind::Introduce { v, pos, .. } = nodes[x].kind {
            let c = phi[state.labels[pos] as usize] as usize + 1;
            if colors[v].is_some_and(|old| old != c) {
                return Err(SolveError::invariant("twdp.reconstruct", format!("vertex {v} recolored")));
            }
            colors[v] = Some(c);
        }
        match (back, &nodes[x].kind) {
            (Back::Leaf, _) => {}
            (Back::Step { child, relabel }, NiceKind::Introduce { child: cn, .. } | NiceKind::Forget { child: cn, .. }) => {
                let child_phi = relabel.iter().map(|&r| phi[r as usize]).collect();
                stack.push((*cn, *child, child_phi));
            }
            (Back::Join { left, right, pair, relabel }, NiceKind::Join { left: ln, right: rn }) => {
                let left_phi: Vec<u8> = relabel.iter().map(|&r| phi[r as usize]).collect();
                let right_phi = pair.iter().map(|&p| left_phi[p as usize]).collect();
                stack.push((*ln, *left, left_phi));
                stack.push((*rn, *right, right_phi));
            }
            _ => return Err(SolveError::invariant("twdp.back", "back pointer does not match node kind")),
        }
    }
    if colors.iter().any(Option::is_none) {
        return Err(SolveError::invariant("twdp.reconstruct", "vertex left uncolored"));
    }
    let witness = PartialColoring::from_options(k, colors);
    if !verify_b_coloring(g, &witness, k).is_b_coloring {
        return Err(SolveError::invariant("twdp.verify", "reconstructed coloring is not a b-coloring"));
    }
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::smallk::td::{td_forest, td_from_feedback_edges};

    fn solve(g: &Graph, k: usize) -> Option<PartialColoring> {
        solve_twdp(g, k, &td_forest(g), DEFAULT_STATE_BUDGET).unwrap()
    }

    #[test]
    fn g_im_two_and_four_colors() {
        let g = fixtures::g_im();
        assert!(solve(&g, 2).is_some());
        assert!(solve(&g, 3).is_none());
        assert!(solve(&g, 4).is_some());
    }

    #[test]
    fn small_examples() {
        assert!(solve(&fixtures::cycle(5), 3).is_some());
        assert!(solve(&fixtures::path(5), 4).is_none());
        assert!(solve(&fixtures::t_piv(), 4).is_none());
        assert!(solve(&fixtures::t_np(), 4).is_some());
        assert!(solve(&fixtures::complete(5), 5).is_some());
        assert!(solve(&Graph::empty(3), 1).is_some());
        assert!(solve(&Graph::empty(0), 0).is_some());
    }

    #[test]
    fn contingency_counts() {
        assert_eq!(contingency(&[2], &[1, 1]).len(), 1);
        assert_eq!(contingency(&[1, 1], &[1, 1]).len(), 2);
        assert_eq!(contingency(&[2, 1], &[2, 1]).len(), 2);
        assert_eq!(contingency(&[], &[]).len(), 1);
    }

    #[test]
    fn disconnected_components_share_colors() {
        // two disjoint P3s: a 2-b-coloring needs b-vertices, present in both
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]);
        assert!(solve(&g, 2).is_some());
        assert!(solve(&g, 3).is_none());
        let tree = fixtures::t_np();
        assert!(solve_twdp(&tree, 4, &td_from_feedback_edges(&tree).unwrap(), DEFAULT_STATE_BUDGET).unwrap().is_some());
    }
}
