//! Neighborhood diversity: the minimum partition of `V` into vertex types and
//! the quotient type graph.
//!
//! Two vertices `u`, `v` have the same type when `N(u) \ {v} = N(v) \ {u}`,
//! which holds exactly when their open neighborhoods agree (non-adjacent
//! twins) or their closed neighborhoods agree (adjacent twins). The relation is
//! an equivalence, so grouping vertices by it yields the coarsest partition
//! directly.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::PartitionError;
use crate::graph::{Graph, Vertex};

/// Type id, `0..k`.
pub type TypeId = usize;

/// The coarsest partition of the vertex set into types.
///
/// Type ids follow the smallest member of each class, and each class lists
/// its members in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypePartition {
    type_of: Vec<TypeId>,
    classes: Vec<Vec<Vertex>>,
    clique: Vec<bool>,
}

impl TypePartition {
    /// Assembles a partition from raw parts without checking it against any graph.
    /// Use [`verify_partition`] to test such a partition.
    pub fn from_parts(type_of: Vec<TypeId>, classes: Vec<Vec<Vertex>>, clique: Vec<bool>) -> Self {
        TypePartition { type_of, classes, clique }
    }

    /// Neighborhood diversity `k`.
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn type_of(&self, v: Vertex) -> TypeId {
        self.type_of[v]
    }

    pub fn types(&self) -> &[TypeId] {
        &self.type_of
    }

    pub fn class(&self, t: TypeId) -> &[Vertex] {
        &self.classes[t]
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    /// True only for classes of size at least two whose members are pairwise adjacent.
    pub fn is_clique(&self, t: TypeId) -> bool {
        self.clique[t]
    }

    pub fn size(&self, t: TypeId) -> usize {
        self.classes[t].len()
    }
}

/// Quotient graph `H`: one node per type, with an edge between two types
/// exactly when every cross pair of members is adjacent in `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeGraph {
    neighbors: Vec<Vec<TypeId>>,
    size: Vec<usize>,
    clique: Vec<bool>,
}

impl TypeGraph {
    pub fn k(&self) -> usize {
        self.size.len()
    }

    pub fn neighbors(&self, t: TypeId) -> &[TypeId] {
        &self.neighbors[t]
    }

    pub fn adjacent(&self, a: TypeId, b: TypeId) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    pub fn size(&self, t: TypeId) -> usize {
        self.size[t]
    }

    pub fn is_clique(&self, t: TypeId) -> bool {
        self.clique[t]
    }

    /// Type-graph edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (TypeId, TypeId)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().copied().filter(move |&b| a < b).map(move |b| (a, b)))
    }

    /// Adjacency as bitmasks; requires `k <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.k() <= 64, "type graph too large for bitmask form");
        self.neighbors.iter().map(|list| list.iter().fold(0u64, |m, &b| m | (1 << b))).collect()
    }
}

/// `N(u) \ {v} == N(v) \ {u}`, by a merge over the two sorted lists.
pub fn same_type(graph: &Graph, u: Vertex, v: Vertex) -> bool {
    if u == v {
        return true;
    }
    let mut a = graph.neighbors(u).iter().copied().filter(|&x| x != v);
    let mut b = graph.neighbors(v).iter().copied().filter(|&x| x != u);
    loop {
        match (a.next(), b.next()) {
            (None, None) => return true,
            (Some(x), Some(y)) if x == y => continue,
            _ => return false,
        }
    }
}

fn vertex_weight(v: Vertex) -> u64 {
    // splitmix64 finalizer
    let mut z = (v as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Order-independent fingerprints of the open and closed neighborhood of every vertex.
fn fingerprints(graph: &Graph) -> Vec<(u64, u64)> {
    graph
        .vertices()
        .map(|v| {
            let open = graph.neighbors(v).iter().fold(0u64, |h, &u| h.wrapping_add(vertex_weight(u)));
            (open, open.wrapping_add(vertex_weight(v)))
        })
        .collect()
}

/// Computes the minimum type partition in expected `O(n + m)` time.
///
/// Vertices are bucketed by neighborhood fingerprints; a vertex joins an
/// existing class only after an exact neighborhood comparison with the
/// class representative, so fingerprint collisions cannot merge classes.
pub fn compute_type_partition(graph: &Graph) -> TypePartition {
    let n = graph.n();
    let prints = fingerprints(graph);
    let mut by_open: HashMap<u64, Vec<TypeId>> = HashMap::new();
    let mut by_closed: HashMap<u64, Vec<TypeId>> = HashMap::new();
    let mut type_of = vec![0; n];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();

    for v in graph.vertices() {
        let (open, closed) = prints[v];
        let found = [by_open.get(&open), by_closed.get(&closed)]
            .into_iter()
            .flatten()
            .flatten()
            .copied()
            .find(|&t| same_type(graph, classes[t][0], v));
        match found {
            Some(t) => {
                type_of[v] = t;
                classes[t].push(v);
            }
            None => {
                let t = classes.len();
                classes.push(vec![v]);
                type_of[v] = t;
                by_open.entry(open).or_default().push(t);
                by_closed.entry(closed).or_default().push(t);
            }
        }
    }

    let clique = classes.iter().map(|c| c.len() >= 2 && graph.has_edge(c[0], c[1])).collect();
    TypePartition { type_of, classes, clique }
}

/// Builds `H` from a partition, checking that every class is a clique or an
/// independent set and that every pair of classes is fully joined or fully
/// separated. Runs in `O(n + m)`.
pub fn build_type_graph(graph: &Graph, partition: &TypePartition) -> Result<TypeGraph, PartitionError> {
    check_shape(graph, partition)?;
    let k = partition.k();
    let mut neighbors: Vec<Vec<TypeId>> = Vec::with_capacity(k);
    for t in 0..k {
        let rep = partition.classes[t][0];
        let mut list: Vec<TypeId> =
            graph.neighbors(rep).iter().map(|&u| partition.type_of[u]).filter(|&u| u != t).collect();
        list.sort_unstable();
        list.dedup();
        neighbors.push(list);
    }

    let mut count = vec![0usize; k];
    for v in graph.vertices() {
        let t = partition.type_of[v];
        for &u in graph.neighbors(v) {
            count[partition.type_of[u]] += 1;
        }
        let own = count[t];
        let expected_own = if partition.clique[t] { partition.size(t) - 1 } else { 0 };
        if own != expected_own {
            return Err(PartitionError::MixedType(t));
        }
        count[t] = 0;
        let mut distinct = 0;
        for &u in graph.neighbors(v) {
            let ut = partition.type_of[u];
            if count[ut] == 0 {
                continue;
            }
            if count[ut] != partition.size(ut) || neighbors[t].binary_search(&ut).is_err() {
                return Err(PartitionError::InconsistentTypes(t.min(ut), t.max(ut)));
            }
            count[ut] = 0;
            distinct += 1;
        }
        if distinct != neighbors[t].len() {
            let missing = neighbors[t].iter().copied().next().unwrap_or(t);
            return Err(PartitionError::InconsistentTypes(t.min(missing), t.max(missing)));
        }
    }

    Ok(TypeGraph {
        neighbors,
        size: partition.classes.iter().map(Vec::len).collect(),
        clique: partition.clique.clone(),
    })
}

fn check_shape(graph: &Graph, partition: &TypePartition) -> Result<(), PartitionError> {
    let n = graph.n();
    let k = partition.classes.len();
    if partition.type_of.len() != n || partition.clique.len() != k {
        return Err(PartitionError::ShapeMismatch);
    }
    let mut seen = vec![false; n];
    for (t, class) in partition.classes.iter().enumerate() {
        if class.is_empty() {
            return Err(PartitionError::ShapeMismatch);
        }
        for &v in class {
            if v >= n || seen[v] || partition.type_of[v] != t {
                return Err(PartitionError::ShapeMismatch);
            }
            seen[v] = true;
        }
        if partition.clique[t] && class.len() < 2 {
            return Err(PartitionError::MixedType(t));
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(PartitionError::ShapeMismatch)
    }
}

/// Whether `partition` is a partition of `V` into same-type classes that no
/// two classes could be merged, with correct clique flags.
pub fn verify_partition(graph: &Graph, partition: &TypePartition) -> bool {
    if check_shape(graph, partition).is_err() {
        return false;
    }
    for (t, class) in partition.classes.iter().enumerate() {
        let rep = class[0];
        if !class.iter().all(|&v| same_type(graph, rep, v)) {
            return false;
        }
        let flag = class.len() >= 2 && graph.has_edge(class[0], class[1]);
        if flag != partition.clique[t] {
            return false;
        }
    }
    // Coarseness: representatives of distinct classes must differ in type.
    // Same-type representatives share an open or a closed fingerprint.
    let prints = fingerprints(graph);
    let mut by_open: HashMap<u64, Vec<Vertex>> = HashMap::new();
    let mut by_closed: HashMap<u64, Vec<Vertex>> = HashMap::new();
    for class in &partition.classes {
        let rep = class[0];
        by_open.entry(prints[rep].0).or_default().push(rep);
        by_closed.entry(prints[rep].1).or_default().push(rep);
    }
    by_open
        .values()
        .chain(by_closed.values())
        .all(|bucket| bucket.iter().enumerate().all(|(i, &a)| bucket[i + 1..].iter().all(|&b| !same_type(graph, a, b))))
}

/// Searches for a vertex cover of size at most `budget` by bounded branching.
///
/// Each node picks a vertex of maximum remaining degree and branches on
/// taking it or taking all of its remaining neighbors; isolated vertices are
/// ignored. The cover is returned sorted.
pub fn compute_vertex_cover(graph: &Graph, budget: usize) -> Option<Vec<Vertex>> {
    let mut taken = vec![false; graph.n()];
    let mut cover = Vec::new();
    if branch_cover(graph, &mut taken, &mut cover, budget) {
        cover.sort_unstable();
        Some(cover)
    } else {
        None
    }
}

fn branch_cover(graph: &Graph, taken: &mut [bool], cover: &mut Vec<Vertex>, budget: usize) -> bool {
    let remaining_degree = |v: Vertex, taken: &[bool]| graph.neighbors(v).iter().filter(|&&u| !taken[u]).count();
    let pick = graph
        .vertices()
        .filter(|&v| !taken[v])
        .map(|v| (remaining_degree(v, taken), v))
        .filter(|&(d, _)| d > 0)
        .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)));
    let Some((degree, v)) = pick else { return true };
    if budget == 0 {
        return false;
    }

    taken[v] = true;
    cover.push(v);
    if branch_cover(graph, taken, cover, budget - 1) {
        return true;
    }
    cover.pop();
    taken[v] = false;

    if degree <= budget {
        let forced: Vec<Vertex> = graph.neighbors(v).iter().copied().filter(|&u| !taken[u]).collect();
        for &u in &forced {
            taken[u] = true;
        }
        cover.extend_from_slice(&forced);
        if branch_cover(graph, taken, cover, budget - degree) {
            return true;
        }
        cover.truncate(cover.len() - forced.len());
        for &u in &forced {
            taken[u] = false;
        }
    }
    false
}

/// Smallest vertex cover, found by raising the branching budget from zero.
pub fn minimum_vertex_cover(graph: &Graph) -> Vec<Vertex> {
    (0..=graph.n()).find_map(|b| compute_vertex_cover(graph, b)).expect("all vertices always form a cover")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn cliques_have_one_type() {
        for n in [2, 5, 12] {
            let p = compute_type_partition(&named::complete(n));
            assert_eq!(p.k(), 1);
            assert!(p.is_clique(0));
        }
    }

    #[test]
    fn p3_has_two_types() {
        let p = compute_type_partition(&named::path(3));
        assert_eq!(p.k(), 2);
        assert_eq!(p.class(0), &[0, 2]);
        assert_eq!(p.class(1), &[1]);
        assert!(!p.is_clique(0) && !p.is_clique(1));
    }

    #[test]
    fn p4_has_four_singleton_types() {
        let p = compute_type_partition(&named::path(4));
        assert_eq!(p.k(), 4);
        assert!(p.classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn type_graph_of_k23() {
        let g = named::complete_bipartite(2, 3);
        let p = compute_type_partition(&g);
        let h = build_type_graph(&g, &p).unwrap();
        assert_eq!(h.k(), 2);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!((h.size(0), h.size(1)), (2, 3));
        assert!(!h.is_clique(0) && !h.is_clique(1));
    }

    #[test]
    fn type_graph_of_k5() {
        let g = named::complete(5);
        let h = build_type_graph(&g, &compute_type_partition(&g)).unwrap();
        assert_eq!(h.k(), 1);
        assert_eq!(h.size(0), 5);
        assert!(h.is_clique(0));
        assert_eq!(h.edges().count(), 0);
    }

    #[test]
    fn two_triangles_are_two_types() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let p = compute_type_partition(&g);
        let h = build_type_graph(&g, &p).unwrap();
        assert_eq!(h.k(), 2);
        assert!(h.is_clique(0) && h.is_clique(1));
        assert_eq!(h.edges().count(), 0);
    }

    #[test]
    fn corrupted_partition_is_detected() {
        let g = named::path(4);
        // ends of P_4 grouped together
        let bad = TypePartition::from_parts(vec![0, 1, 2, 0], vec![vec![0, 3], vec![1], vec![2]], vec![false; 3]);
        assert!(build_type_graph(&g, &bad).is_err());
        assert!(!verify_partition(&g, &bad));
    }

    #[test]
    fn verify_rejects_non_coarsest() {
        let g = named::complete(3);
        let singletons = TypePartition::from_parts(vec![0, 1, 2], vec![vec![0], vec![1], vec![2]], vec![false; 3]);
        assert!(!verify_partition(&g, &singletons));
        assert!(verify_partition(&g, &compute_type_partition(&g)));
    }

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(compute_vertex_cover(&Graph::new(4), 0), Some(vec![]));
        assert_eq!(compute_vertex_cover(&named::path(3), 1), Some(vec![1]));
        let k4 = named::complete(4);
        assert_eq!(compute_vertex_cover(&k4, 2), None);
        assert_eq!(compute_vertex_cover(&k4, 3).map(|c| c.len()), Some(3));
        assert_eq!(minimum_vertex_cover(&named::star(6)), vec![0]);
    }
}
