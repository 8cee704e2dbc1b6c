//! Simple undirected graphs, the DIMACS-like edge format, and the traversal
//! primitives every solver relies on.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted ascending and symmetric; no loops, no multi-edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Unordered edge list with `u < v` in every pair.
pub type EdgeSet = Vec<(usize, usize)>;

/// Shortest-path distance; unreachable vertices are `Infinite`.
///
/// The derived order puts every finite distance before `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dist {
    Finite(usize),
    Infinite,
}

impl Dist {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }
}

impl Graph {
    /// Empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from 0-indexed edges.
    ///
    /// Panics on loops, duplicates or out-of-range endpoints; use [`Graph::try_from_edges`]
    /// for untrusted input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::try_from_edges(n, edges).expect("invalid edge list")
    }

    pub fn try_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, ParseError> {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(ParseError::VertexOutOfRange { line: i + 1, vertex: x as i64 + 1, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line: i + 1, vertex: u + 1 });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                let line = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(x, y))| (x.min(y), x.max(y)) == (a, b))
                    .nth(1)
                    .map_or(0, |(i, _)| i + 1);
                return Err(ParseError::DuplicateEdge { line, u: a + 1, v: b + 1 });
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// Subgraph induced by `keep`; vertex `i` of the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        Graph::from_edges(keep.len(), &edges)
    }

    /// Same vertex set with the given edges removed.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut drop: Vec<(usize, usize)> = removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        drop.sort_unstable();
        let edges: Vec<_> = self.edges().filter(|e| drop.binary_search(e).is_err()).collect();
        Graph::from_edges(self.n(), &edges)
    }

    /// Parses the `p edge n m` / `e u v` format (1-indexed, `c` comments).
    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let mut tok = raw.split_whitespace();
            let Some(tag) = tok.next() else { continue };
            match tag {
                "c" => {}
                "p" => {
                    if header.is_some() {
                        return Err(ParseError::MalformedHeader { line, msg: "second header".into() });
                    }
                    let fields: Vec<&str> = tok.collect();
                    let parsed = match fields.as_slice() {
                        [kind, n, m] if *kind == "edge" || *kind == "col" => {
                            n.parse::<usize>().ok().zip(m.parse::<usize>().ok())
                        }
                        _ => None,
                    };
                    let Some((n, m)) = parsed else {
                        return Err(ParseError::MalformedHeader { line, msg: format!("expected `p edge <n> <m>`, got `{raw}`") });
                    };
                    header = Some((n, m));
                }
                "e" => {
                    let Some((n, _)) = header else {
                        return Err(ParseError::MalformedHeader { line, msg: "edge before header".into() });
                    };
                    let ends: Vec<i64> = tok.map(|t| t.parse::<i64>()).collect::<Result<_, _>>().map_err(|e| {
                        ParseError::MalformedLine { line, msg: e.to_string() }
                    })?;
                    let [a, b] = ends[..] else {
                        return Err(ParseError::MalformedLine { line, msg: "expected `e <u> <v>`".into() });
                    };
                    for x in [a, b] {
                        if x < 1 || x as usize > n {
                            return Err(ParseError::VertexOutOfRange { line, vertex: x, n });
                        }
                    }
                    if a == b {
                        return Err(ParseError::SelfLoop { line, vertex: a as usize });
                    }
                    let (u, v) = ((a.min(b) - 1) as usize, (a.max(b) - 1) as usize);
                    if !seen.insert((u, v)) {
                        return Err(ParseError::DuplicateEdge { line, u: u + 1, v: v + 1 });
                    }
                    edges.push((u, v));
                }
                other => {
                    return Err(ParseError::MalformedLine { line, msg: format!("unknown line type `{other}`") });
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(ParseError::MalformedHeader { line: 0, msg: "missing `p edge` header".into() });
        };
        if edges.len() != m {
            return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
        }
        Graph::try_from_edges(n, &edges)
    }

    /// Serializes in the format accepted by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// BFS distances from a vertex set.
    pub fn bfs_distances(&self, sources: &[usize]) -> Vec<Dist> {
        let mut dist = vec![Dist::Infinite; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == Dist::Infinite {
                dist[s] = Dist::Finite(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let Dist::Finite(d) = dist[v] else { unreachable!() };
            for &w in &self.adj[v] {
                if dist[w] == Dist::Infinite {
                    dist[w] = Dist::Finite(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut parts = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let mut part = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < part.len() {
                let v = part[i];
                i += 1;
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        part.push(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.m + 1 == self.n() && self.is_connected()
    }

    /// BFS spanning forest: parent of every vertex (`None` for roots) and the
    /// visiting order. Roots are the smallest vertex of each component.
    pub fn spanning_forest(&self) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent = vec![None; self.n()];
        let mut visited = vec![false; self.n()];
        let mut order = Vec::with_capacity(self.n());
        for s in 0..self.n() {
            if visited[s] {
                continue;
            }
            visited[s] = true;
            let start = order.len();
            order.push(s);
            let mut i = start;
            while i < order.len() {
                let v = order[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !visited[w] {
                        visited[w] = true;
                        parent[w] = Some(v);
                        order.push(w);
                    }
                }
            }
        }
        (parent, order)
    }

    /// Edges outside a BFS spanning forest; `G - F` is a forest and
    /// `|F| = m - n + #components`.
    pub fn feedback_edge_set(&self) -> EdgeSet {
        let (parent, _) = self.spanning_forest();
        self.edges().filter(|&(u, v)| parent[v] != Some(u) && parent[u] != Some(v)).collect()
    }

    /// Cycle rank `m - n + c`, which equals the feedback edge number.
    pub fn feedback_edge_number(&self) -> usize {
        self.m + self.components().len() - self.n()
    }

    /// Splits `V` into the 2-core and the vertices removed by repeatedly
    /// peeling vertices of degree at most one. Both lists are sorted.
    pub fn two_core(&self) -> (Vec<usize>, Vec<usize>) {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; self.n()];
        let mut stack: Vec<usize> = (0..self.n()).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if removed[v] {
                continue;
            }
            removed[v] = true;
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        let core = (0..self.n()).filter(|&v| !removed[v]).collect();
        let dangling = (0..self.n()).filter(|&v| removed[v]).collect();
        (core, dangling)
    }

    /// Largest `k` such that at least `k` vertices have degree at least `k - 1`.
    pub fn m_degree(&self) -> usize {
        let mut degs: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        let mut best = 0;
        for (i, &d) in degs.iter().enumerate() {
            // the i+1 largest degrees are all >= d
            if d >= i {
                best = i + 1;
            }
        }
        best
    }
}
