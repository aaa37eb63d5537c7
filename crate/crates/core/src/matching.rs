//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    /// `left_mate[l]` is the right node matched to `l`.
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

/// Maximum matching of the bipartite graph with `left` and `right` nodes and
/// the given `(left, right)` edges, in `O(sqrt(V) * E)`.
pub fn max_bipartite_matching(left: usize, right: usize, edges: &[(usize, usize)]) -> Matching {
    let mut adj = vec![Vec::new(); left];
    for &(l, r) in edges {
        assert!(l < left && r < right, "edge ({l}, {r}) out of range");
        adj[l].push(r);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }

    let mut mate_l = vec![FREE; left];
    let mut mate_r = vec![FREE; right];
    let mut dist = vec![0usize; left];
    let mut size = 0;

    loop {
        // BFS layering from free left nodes
        let mut queue = VecDeque::new();
        for l in 0..left {
            if mate_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = mate_r[r];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; left];
        for l in 0..left {
            if mate_l[l] == FREE && augment(l, &adj, &mut mate_l, &mut mate_r, &mut dist, &mut cursor) {
                size += 1;
            }
        }
    }

    let wrap = |v: Vec<usize>| v.into_iter().map(|x| (x != FREE).then_some(x)).collect();
    Matching { size, left_mate: wrap(mate_l), right_mate: wrap(mate_r) }
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    while cursor[l] < adj[l].len() {
        let r = adj[l][cursor[l]];
        cursor[l] += 1;
        let next = mate_r[r];
        if next == FREE || (dist[next] == dist[l] + 1 && augment(next, adj, mate_l, mate_r, dist, cursor)) {
            mate_l[l] = r;
            mate_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}
