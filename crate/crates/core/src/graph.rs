//! Undirected simple graphs over contiguous vertex ids.

use crate::error::GraphError;

/// Vertex identifier, `0..n`.
pub type Vertex = usize;

/// An undirected simple graph stored as sorted adjacency lists packed into
/// one array (`targets[offsets[v]..offsets[v + 1]]` are the neighbors of `v`).
///
/// The constructor rejects self-loops, duplicate edges and out-of-range
/// endpoints, so every `Graph` value is simple and symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new(0)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { offsets: vec![0; n + 1], targets: Vec::new() }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Self::from_unsorted_adjacency(adjacency)
    }

    /// Builds a graph from per-vertex neighbor lists in any order.
    ///
    /// The lists must already be symmetric; duplicates are rejected.
    pub(crate) fn from_unsorted_adjacency(mut adjacency: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (v.min(w[0]), v.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
            if list.binary_search(&v).is_ok() {
                return Err(GraphError::SelfLoop(v));
            }
            offsets.push(offsets[v] + list.len());
        }
        let mut targets = Vec::with_capacity(offsets[adjacency.len()]);
        for list in adjacency {
            targets.extend_from_slice(&list);
        }
        let graph = Graph { offsets, targets };
        debug_assert!(graph.is_symmetric());
        Ok(graph)
    }

    fn is_symmetric(&self) -> bool {
        self.vertices().all(|v| self.neighbors(v).iter().all(|&u| self.has_edge(u, v)))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted open neighborhood of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices()
            .flat_map(move |u| self.neighbors(u).iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the given order.
    ///
    /// Returns the subgraph together with the map from new ids to old ids.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let adjacency: Vec<Vec<Vertex>> = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<Vertex> =
                    self.neighbors(v).iter().filter_map(|&u| (new_id[u] != usize::MAX).then_some(new_id[u])).collect();
                list.sort_unstable();
                list
            })
            .collect();
        let graph = Graph::from_unsorted_adjacency(adjacency).expect("induced subgraph of a simple graph");
        (graph, keep.to_vec())
    }

    /// Whether the subgraph induced by `set` is connected. The empty set counts as connected.
    pub fn is_connected_subset(&self, set: &[Vertex]) -> bool {
        let Some(&start) = set.first() else { return true };
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in self.neighbors(v) {
                if inside[u] && !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == distinct(set)
    }
}

fn distinct(set: &[Vertex]) -> usize {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// Small named graphs used throughout the tests and docs.
pub mod named {
    use super::{Graph, Vertex};

    pub fn complete(n: usize) -> Graph {
        let adjacency = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Graph::from_unsorted_adjacency(adjacency).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// `K_{a,b}` with the `a` side on ids `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Graph::from_edges(a + b, edges).expect("complete bipartite graph is simple")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }
}
