//! Maximum bipartite matching (Hopcroft-Karp).

use std::collections::VecDeque;

/// Maximum-cardinality matching between left vertices `0..n_left` and right
/// vertices `0..n_right`. Returns `(left, right)` pairs sorted by left index.
///
/// Adjacency is scanned in ascending right index, so the result is
/// deterministic for a given edge list.
pub fn max_bipartite_matching(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut adj = vec![Vec::new(); n_left];
    for &(l, r) in edges {
        assert!(l < n_left && r < n_right, "edge ({l}, {r}) out of range");
        adj[l].push(r);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut mate_l: Vec<Option<usize>> = vec![None; n_left];
    let mut mate_r: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![usize::MAX; n_left];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if mate_l[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match mate_r[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for l in 0..n_left {
            if mate_l[l].is_none() {
                augment(l, &adj, &mut mate_l, &mut mate_r, &mut dist, &mut it);
            }
        }
    }
    mate_l.iter().enumerate().filter_map(|(l, r)| r.map(|r| (l, r))).collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [Option<usize>],
    mate_r: &mut [Option<usize>],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[l] < adj[l].len() {
        let r = adj[l][it[l]];
        it[l] += 1;
        let ok = match mate_r[r] {
            None => true,
            Some(l2) => dist[l2] == dist[l] + 1 && augment(l2, adj, mate_l, mate_r, dist, it),
        };
        if ok {
            mate_l[l] = Some(r);
            mate_r[r] = Some(l);
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // exhaustive optimum by trying every subset of edges
    fn brute_max(edges: &[(usize, usize)]) -> usize {
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let chosen: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            let mut ls: Vec<_> = chosen.iter().map(|e| e.0).collect();
            let mut rs: Vec<_> = chosen.iter().map(|e| e.1).collect();
            ls.sort();
            ls.dedup();
            rs.sort();
            rs.dedup();
            if ls.len() == chosen.len() && rs.len() == chosen.len() {
                best = best.max(chosen.len());
            }
        }
        best
    }

    fn is_matching(m: &[(usize, usize)], edges: &[(usize, usize)]) -> bool {
        let mut ls: Vec<_> = m.iter().map(|e| e.0).collect();
        let mut rs: Vec<_> = m.iter().map(|e| e.1).collect();
        ls.sort();
        ls.dedup();
        rs.sort();
        rs.dedup();
        ls.len() == m.len() && rs.len() == m.len() && m.iter().all(|e| edges.contains(e))
    }

    #[test]
    fn small_cases() {
        let k23: Vec<_> = (0..2).flat_map(|l| (0..3).map(move |r| (l, r))).collect();
        assert_eq!(max_bipartite_matching(2, 3, &k23).len(), 2);
        assert!(max_bipartite_matching(3, 3, &[]).is_empty());
        // a, b, c vs x, y with edges ax, bx, cy
        let m = max_bipartite_matching(3, 2, &[(0, 0), (1, 0), (2, 1)]);
        assert_eq!(m.len(), 2);
    }

    proptest! {
        #[test]
        fn matches_brute_force(edges in proptest::collection::btree_set((0usize..6, 0usize..6), 0..14)) {
            let edges: Vec<_> = edges.into_iter().collect();
            let m = max_bipartite_matching(6, 6, &edges);
            prop_assert!(is_matching(&m, &edges));
            prop_assert_eq!(m.len(), brute_max(&edges));
        }
    }
}
