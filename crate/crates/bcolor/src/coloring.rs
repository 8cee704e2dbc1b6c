//! Partial colorings, the coloring file format, and the b-coloring verifier.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::graph::Graph;

/// Map from a subset of the vertices to colors in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialColoring {
    pub k: usize,
    colors: Vec<Option<usize>>,
}

impl PartialColoring {
    pub fn new(n: usize, k: usize) -> Self {
        PartialColoring { k, colors: vec![None; n] }
    }

    /// Total coloring from a color vector. Panics if a color is outside `1..=k`.
    pub fn from_vec(k: usize, colors: Vec<usize>) -> Self {
        let colors: Vec<Option<usize>> = colors.into_iter().map(Some).collect();
        Self::from_options(k, colors)
    }

    pub fn from_options(k: usize, colors: Vec<Option<usize>>) -> Self {
        assert!(colors.iter().flatten().all(|&c| (1..=k).contains(&c)), "color outside 1..={k}");
        PartialColoring { k, colors }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, c: usize) {
        assert!((1..=self.k).contains(&c), "color {c} outside 1..={}", self.k);
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: usize) {
        self.colors[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn colored(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.colors.iter().enumerate().filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.colors
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut used = vec![false; self.k + 1];
        for c in self.colors.iter().flatten() {
            used[*c] = true;
        }
        used.iter().filter(|&&b| b).count()
    }

    /// Sorted, deduplicated colors on the closed neighborhood of `v`.
    pub fn closed_nbhd_colors(&self, g: &Graph, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = std::iter::once(v).chain(g.neighbors(v).iter().copied()).filter_map(|w| self.colors[w]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Coloring file: `s bcol <k>` then `<v> <color>` per colored vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("s bcol {}\n", self.k);
        for (v, c) in self.colored() {
            let _ = writeln!(out, "{} {}", v + 1, c);
        }
        out
    }

    pub fn parse(text: &str, n: usize) -> Result<Self, ParseError> {
        let mut k = None;
        let mut colors = vec![None; n];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let tok: Vec<&str> = raw.split_whitespace().collect();
            match tok.as_slice() {
                [] => {}
                ["c", ..] => {}
                ["s", "bcol", kk] => {
                    let parsed = kk.parse::<usize>().map_err(|e| ParseError::MalformedHeader { line, msg: e.to_string() })?;
                    k = Some(parsed);
                }
                [v, c] => {
                    let Some(k) = k else {
                        return Err(ParseError::MalformedHeader { line, msg: "missing `s bcol <k>` header".into() });
                    };
                    let bad = |e: std::num::ParseIntError| ParseError::MalformedLine { line, msg: e.to_string() };
                    let v: i64 = v.parse().map_err(bad)?;
                    let c: i64 = c.parse().map_err(bad)?;
                    if v < 1 || v as usize > n {
                        return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
                    }
                    if c < 1 || c as usize > k {
                        return Err(ParseError::ColorOutOfRange { line, color: c, k });
                    }
                    colors[v as usize - 1] = Some(c as usize);
                }
                _ => return Err(ParseError::MalformedLine { line, msg: format!("unexpected `{raw}`") }),
            }
        }
        let k = k.ok_or(ParseError::MalformedHeader { line: 0, msg: "missing `s bcol <k>` header".into() })?;
        Ok(PartialColoring { k, colors })
    }
}

/// One reason a coloring fails to be a b-coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Uncolored { vertex: usize },
    ColorOutOfRange { vertex: usize, color: usize },
    Monochromatic { u: usize, v: usize },
    NoBVertex { color: usize },
    SizeMismatch { graph: usize, coloring: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub total: bool,
    pub proper: bool,
    /// `b_vertices[c - 1]` lists the b-vertices of color `c`.
    pub b_vertices: Vec<Vec<usize>>,
    pub is_b_coloring: bool,
    pub violations: Vec<Violation>,
}

/// Checks totality, properness, and that every color in `1..=k` owns a vertex
/// whose closed neighborhood sees all `k` colors. Never fails; all problems
/// are listed in the report.
pub fn verify_b_coloring(g: &Graph, c: &PartialColoring, k: usize) -> VerifyReport {
    let mut violations = Vec::new();
    if g.n() != c.n() {
        violations.push(Violation::SizeMismatch { graph: g.n(), coloring: c.n() });
        return VerifyReport { total: false, proper: false, b_vertices: vec![Vec::new(); k], is_b_coloring: false, violations };
    }
    let color = |v: usize| c.get(v).filter(|&x| (1..=k).contains(&x));
    for v in g.vertices() {
        match c.get(v) {
            None => violations.push(Violation::Uncolored { vertex: v }),
            Some(x) if !(1..=k).contains(&x) => violations.push(Violation::ColorOutOfRange { vertex: v, color: x }),
            _ => {}
        }
    }
    let total = violations.is_empty();
    let mut proper = true;
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (c.get(u), c.get(v)) {
            if a == b {
                proper = false;
                violations.push(Violation::Monochromatic { u, v });
            }
        }
    }
    let mut b_vertices = vec![Vec::new(); k];
    for v in g.vertices() {
        let Some(cv) = color(v) else { continue };
        let mut seen = vec![false; k + 1];
        seen[cv] = true;
        for &w in g.neighbors(v) {
            if let Some(cw) = color(w) {
                seen[cw] = true;
            }
        }
        if seen[1..].iter().all(|&s| s) {
            b_vertices[cv - 1].push(v);
        }
    }
    for (i, list) in b_vertices.iter().enumerate() {
        if list.is_empty() {
            violations.push(Violation::NoBVertex { color: i + 1 });
        }
    }
    let is_b_coloring = violations.is_empty();
    VerifyReport { total, proper, b_vertices, is_b_coloring, violations }
}

/// True if every assigned edge is bichromatic.
pub fn is_proper_partial(g: &Graph, c: &PartialColoring) -> bool {
    g.edges().all(|(u, v)| match (c.get(u), c.get(v)) {
        (Some(a), Some(b)) => a != b,
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_all_b_vertices() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let c = PartialColoring::from_vec(4, vec![1, 2, 3, 4]);
        let r = verify_b_coloring(&g, &c, 4);
        assert!(r.is_b_coloring);
        assert_eq!(r.b_vertices, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn p3_improper() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let r = verify_b_coloring(&g, &PartialColoring::from_vec(2, vec![1, 1, 2]), 2);
        assert!(!r.proper && !r.is_b_coloring);
    }

    #[test]
    fn partial_is_flagged_not_total() {
        let g = Graph::from_edges(2, &[(0, 1)]);
        let c = PartialColoring::from_options(2, vec![Some(1), None]);
        let r = verify_b_coloring(&g, &c, 2);
        assert!(!r.total && r.proper && !r.is_b_coloring);
    }

    #[test]
    fn coloring_text_round_trip() {
        let c = PartialColoring::from_options(3, vec![Some(1), None, Some(3)]);
        assert_eq!(PartialColoring::parse(&c.to_text(), 3).unwrap(), c);
        assert!(matches!(PartialColoring::parse("s bcol 2\n1 3\n", 2), Err(ParseError::ColorOutOfRange { .. })));
    }
}
