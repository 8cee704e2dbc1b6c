//! Tree decompositions built from a spanning tree plus feedback-edge endpoints.

use serde::{Deserialize, Serialize};

use crate::error::{SolveError, SolveResult};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    /// Sorted vertex list per node.
    pub bags: Vec<Vec<usize>>,
    /// Undirected adjacency between nodes.
    pub adj: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    /// Largest bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Checks vertex coverage, edge coverage, the connectivity of every
    /// vertex's bag set, and that the node graph is a tree.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let t = self.bags.len();
        if t == 0 {
            return Err("no nodes".into());
        }
        let tree_edges: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if tree_edges + 1 != t {
            return Err(format!("{t} nodes but {tree_edges} tree edges"));
        }
        let tree = Graph::try_from_edges(
            t,
            &self.adj.iter().enumerate().flat_map(|(a, l)| l.iter().filter(move |&&b| b > a).map(move |&b| (a, b))).collect::<Vec<_>>(),
        )
        .map_err(|e| e.to_string())?;
        if !tree.is_connected() {
            return Err("node graph is not connected".into());
        }
        let mut holders = vec![Vec::new(); g.n()];
        for (i, bag) in self.bags.iter().enumerate() {
            if bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("bag {i} not sorted or has duplicates"));
            }
            for &v in bag {
                if v >= g.n() {
                    return Err(format!("bag {i} holds unknown vertex {v}"));
                }
                holders[v].push(i);
            }
        }
        for (v, nodes) in holders.iter().enumerate() {
            if nodes.is_empty() {
                return Err(format!("vertex {v} in no bag"));
            }
            let sub = tree.induced(nodes);
            if !sub.is_connected() {
                return Err(format!("bags of vertex {v} are not connected"));
            }
        }
        for (u, v) in g.edges() {
            if !holders[u].iter().any(|i| self.bags[*i].binary_search(&v).is_ok()) {
                return Err(format!("edge {u}-{v} in no bag"));
            }
        }
        Ok(())
    }
}

/// Picks one endpoint per edge, greedily preferring endpoints that cover the
/// most remaining edges (lowest index on ties).
fn cover_endpoints(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut covered = vec![false; edges.len()];
    let mut chosen = Vec::new();
    loop {
        let mut count = vec![0usize; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if !covered[i] {
                count[u] += 1;
                count[v] += 1;
            }
        }
        let Some(best) = (0..n).filter(|&v| count[v] > 0).max_by_key(|&v| (count[v], std::cmp::Reverse(v))) else {
            break;
        };
        chosen.push(best);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == best || v == best {
                covered[i] = true;
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Decomposition of a connected graph of width at most `fen + 1`: node `v`
/// has bag `{v, parent(v)}` plus one fixed endpoint of every feedback edge.
pub fn td_from_feedback_edges(g: &Graph) -> SolveResult<TreeDecomposition> {
    if g.n() == 0 {
        return Ok(TreeDecomposition { bags: vec![Vec::new()], adj: vec![Vec::new()] });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let (parent, _) = g.spanning_forest();
    let fes: Vec<_> = g.edges().filter(|&(u, v)| parent[v] != Some(u) && parent[u] != Some(v)).collect();
    let extra = cover_endpoints(g.n(), &fes);
    let mut bags = Vec::with_capacity(g.n());
    let mut adj = vec![Vec::new(); g.n()];
    for v in g.vertices() {
        let mut bag = extra.clone();
        bag.push(v);
        if let Some(p) = parent[v] {
            bag.push(p);
            adj[v].push(p);
            adj[p].push(v);
        }
        bag.sort_unstable();
        bag.dedup();
        bags.push(bag);
    }
    Ok(TreeDecomposition { bags, adj })
}

/// Decomposition of an arbitrary graph: one [`td_from_feedback_edges`] per
/// component, with the component roots chained together.
pub fn td_forest(g: &Graph) -> TreeDecomposition {
    let comps = g.components();
    if comps.len() <= 1 {
        return td_from_feedback_edges(g).expect("connected input");
    }
    let mut bags = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut prev_root: Option<usize> = None;
    for comp in &comps {
        let sub = g.induced(comp);
        let td = td_from_feedback_edges(&sub).expect("component is connected");
        let base = bags.len();
        for bag in td.bags {
            bags.push(bag.into_iter().map(|v| comp[v]).collect());
        }
        for list in td.adj {
            adj.push(list.into_iter().map(|x| x + base).collect());
        }
        if let Some(r) = prev_root {
            adj[r].push(base);
            adj[base].push(r);
        }
        prev_root = Some(base);
    }
    TreeDecomposition { bags, adj }
}

/// Decomposition from a greedy minimum-degree elimination order (lowest index
/// on ties). Usually much narrower than [`td_forest`] on graphs with many
/// feedback edges; the DP accepts either.
pub fn td_min_degree(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { bags: vec![Vec::new()], adj: vec![Vec::new()] };
    }
    let mut nbrs: Vec<std::collections::BTreeSet<usize>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut eliminated = vec![false; n];
    let mut step = vec![0usize; n];
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut owner = Vec::with_capacity(n);
    for t in 0..n {
        let v = (0..n).filter(|&v| !eliminated[v]).min_by_key(|&v| (nbrs[v].len(), v)).expect("a vertex remains");
        let rest: Vec<usize> = nbrs[v].iter().copied().collect();
        for (i, &a) in rest.iter().enumerate() {
            nbrs[a].remove(&v);
            for &b in &rest[i + 1..] {
                nbrs[a].insert(b);
                nbrs[b].insert(a);
            }
        }
        eliminated[v] = true;
        step[v] = t;
        let mut bag = rest;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        owner.push(v);
    }
    // bag t hangs below the bag of its earliest-eliminated later neighbor;
    // bags without one are roots, chained together
    let mut adj = vec![Vec::new(); n];
    let mut prev_root: Option<usize> = None;
    for t in 0..n {
        let v = owner[t];
        match bags[t].iter().filter(|&&u| u != v).map(|&u| step[u]).min() {
            Some(p) => {
                adj[t].push(p);
                adj[p].push(t);
            }
            None => {
                if let Some(r) = prev_root {
                    adj[t].push(r);
                    adj[r].push(t);
                }
                prev_root = Some(t);
            }
        }
    }
    TreeDecomposition { bags, adj }
}

/// The narrower of [`td_forest`] and [`td_min_degree`] (the former on ties).
pub fn td_narrowest(g: &Graph) -> TreeDecomposition {
    let a = td_forest(g);
    let b = td_min_degree(g);
    if b.width() < a.width() {
        b
    } else {
        a
    }
}
