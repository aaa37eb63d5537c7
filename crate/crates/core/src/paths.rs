//! p-Vertex-Disjoint Paths parameterized by neighborhood diversity.
//!
//! Any solvable instance has a solution in which every path visits at most
//! one internal vertex per type ([`simplify_path`] performs the rewrite). A
//! path is then described up to equivalence by its endpoint types and the set
//! of types its internal vertices occupy (its route). An integer program
//! counts paths per category: the counts must cover every terminal pair and
//! no type may host more internal vertices than it has non-terminal vertices.
//! A feasible count vector is turned back into concrete paths greedily.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::SolveError;
use crate::graph::{Graph, Vertex};
use crate::ilp::{solve_feasibility, IlpProblem, Relation, VarId};
use crate::instance::{PathsInstance, PathsWitness};
use crate::nd::{build_type_graph, compute_type_partition, TypeGraph, TypeId, TypePartition};
use crate::report::SolveReport;

/// Largest neighborhood diversity accepted; the category count grows as `k^2 * 2^k`.
pub const MAX_TYPES: usize = 12;

/// A family of interchangeable paths: endpoint types (normalized so that
/// `start_type <= end_type`) and the set of types used by internal vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCategory {
    pub start_type: TypeId,
    pub end_type: TypeId,
    pub route: u64,
    /// Route types in traversal order from `start_type` to `end_type`.
    pub order: Vec<TypeId>,
    pub var: VarId,
}

/// Per-type "can step to" masks: a type links to its type-graph neighbors
/// and, when it is a clique of size two or more, to itself.
fn link_masks(h: &TypeGraph) -> Vec<u64> {
    let mut masks = h.adjacency_masks();
    for (t, m) in masks.iter_mut().enumerate() {
        if h.is_clique(t) {
            *m |= 1 << t;
        }
    }
    masks
}

/// Subset DP over route orderings from a fixed start type.
///
/// `reach[mask]` holds every type that can end an ordering of `mask` whose
/// first type is linked from the start.
struct RouteTable {
    start: TypeId,
    reach: Vec<u64>,
}

impl RouteTable {
    fn new(links: &[u64], start: TypeId) -> Self {
        let k = links.len();
        let mut reach = vec![0u64; 1 << k];
        for mask in 1usize..(1 << k) {
            let mut ends = 0u64;
            for t in (0..k).filter(|&t| mask >> t & 1 == 1) {
                let rest = mask ^ (1 << t);
                let ok = if rest == 0 { links[start] >> t & 1 == 1 } else { reach[rest] & links[t] != 0 };
                if ok {
                    ends |= 1 << t;
                }
            }
            reach[mask] = ends;
        }
        RouteTable { start, reach }
    }

    /// An ordering of `route` from the start type to `end`, lowest type ids preferred when walking back.
    fn order(&self, links: &[u64], route: u64, end: TypeId) -> Option<Vec<TypeId>> {
        if route == 0 {
            return (links[self.start] >> end & 1 == 1).then(Vec::new);
        }
        let candidates = self.reach[route as usize] & links[end];
        if candidates == 0 {
            return None;
        }
        let mut last = candidates.trailing_zeros() as usize;
        let mut current = route;
        let mut order = vec![last];
        while current.count_ones() > 1 {
            let rest = current ^ (1 << last);
            let prev = (self.reach[rest as usize] & links[last]).trailing_zeros() as usize;
            order.push(prev);
            current = rest;
            last = prev;
        }
        order.reverse();
        Some(order)
    }
}

/// Whether the types of `route` can be ordered into a walk `s_type, T1, ..., Tr, t_type`
/// where consecutive types are adjacent in `H` or are the same clique type.
pub fn route_is_valid(h: &TypeGraph, route: u64, s_type: TypeId, t_type: TypeId) -> bool {
    route_order(h, route, s_type, t_type).is_some()
}

/// The ordering found by [`route_is_valid`], if any.
pub fn route_order(h: &TypeGraph, route: u64, s_type: TypeId, t_type: TypeId) -> Option<Vec<TypeId>> {
    assert!(h.k() <= MAX_TYPES, "route search limited to {MAX_TYPES} types");
    let links = link_masks(h);
    RouteTable::new(&links, s_type).order(&links, route, t_type)
}

/// Shortcuts a path until it has at most one internal vertex per type.
///
/// For a repeated type with first internal occurrence `x` and last `y`, the
/// successor `z` of `y` is adjacent to `x` as well, so everything strictly
/// between `x` and `z` can be dropped.
pub fn simplify_path(graph: &Graph, partition: &TypePartition, path: &[Vertex]) -> Vec<Vertex> {
    let mut path = path.to_vec();
    loop {
        if path.len() <= 3 {
            return path;
        }
        let inner = 1..path.len() - 1;
        let mut last_seen: BTreeMap<TypeId, usize> = BTreeMap::new();
        for i in inner.clone() {
            last_seen.insert(partition.type_of(path[i]), i);
        }
        let repeat = inner.map(|i| (i, last_seen[&partition.type_of(path[i])])).find(|&(first, last)| last > first);
        let Some((x, y)) = repeat else { return path };
        debug_assert!(graph.has_edge(path[x], path[y + 1]));
        path.drain(x + 1..=y);
    }
}

/// The category integer program for `instance`.
///
/// One variable per valid category whose endpoint types occur among the
/// terminal pairs, bounded by that pair demand. Equality rows fix the number
/// of paths per endpoint-type pair; `<=` rows cap each type's internal use at
/// its number of non-terminal vertices.
pub fn build_paths_ilp(
    instance: &PathsInstance,
    partition: &TypePartition,
    h: &TypeGraph,
) -> Result<(IlpProblem, Vec<PathCategory>), SolveError> {
    let k = partition.k();
    if k > MAX_TYPES {
        return Err(SolveError::TooManyTypes { k, limit: MAX_TYPES });
    }
    let mut demand: BTreeMap<(TypeId, TypeId), i64> = BTreeMap::new();
    let mut terminals = vec![0i64; k];
    for &(s, t) in instance.pairs() {
        let (a, b) = (partition.type_of(s), partition.type_of(t));
        *demand.entry((a.min(b), a.max(b))).or_default() += 1;
        terminals[a] += 1;
        terminals[b] += 1;
    }

    let links = link_masks(h);
    let mut tables: BTreeMap<TypeId, RouteTable> = BTreeMap::new();
    let mut problem = IlpProblem::new();
    let mut categories = Vec::new();
    for (&(a, b), &count) in &demand {
        let table = tables.entry(a).or_insert_with(|| RouteTable::new(&links, a));
        for route in 0u64..(1u64 << k) {
            if let Some(order) = table.order(&links, route, b) {
                let var = problem.add_var(0, count);
                categories.push(PathCategory { start_type: a, end_type: b, route, order, var });
            }
        }
    }

    for (&(a, b), &count) in &demand {
        let terms: Vec<(VarId, i64)> =
            categories.iter().filter(|c| (c.start_type, c.end_type) == (a, b)).map(|c| (c.var, 1)).collect();
        problem.add_constraint(&terms, Relation::Eq, count);
    }
    for (t, &fixed) in terminals.iter().enumerate() {
        let terms: Vec<(VarId, i64)> =
            categories.iter().filter(|c| c.route >> t & 1 == 1).map(|c| (c.var, 1)).collect();
        if !terms.is_empty() {
            problem.add_constraint(&terms, Relation::Le, partition.size(t) as i64 - fixed);
        }
    }
    Ok((problem, categories))
}

/// Turns feasible category counts into concrete paths.
///
/// Pairs are handled in input order; each takes the lowest-route category
/// with its endpoint types that still has count left, and draws the smallest
/// unused non-terminal vertex of each route type.
pub fn reconstruct_paths(
    instance: &PathsInstance,
    partition: &TypePartition,
    categories: &[PathCategory],
    counts: &[i64],
) -> PathsWitness {
    let terminal = instance.terminal_mask();
    let mut pools: Vec<std::vec::IntoIter<Vertex>> = partition
        .classes()
        .iter()
        .map(|class| class.iter().copied().filter(|&v| !terminal[v]).collect::<Vec<_>>().into_iter())
        .collect();
    let mut remaining: Vec<i64> = categories.iter().map(|c| counts[c.var]).collect();

    let paths = instance
        .pairs()
        .iter()
        .map(|&(s, t)| {
            let (ts, tt) = (partition.type_of(s), partition.type_of(t));
            let key = (ts.min(tt), ts.max(tt));
            let i = (0..categories.len())
                .find(|&i| (categories[i].start_type, categories[i].end_type) == key && remaining[i] > 0)
                .expect("category counts cover every pair");
            remaining[i] -= 1;
            let mut order = categories[i].order.clone();
            if ts != key.0 {
                order.reverse();
            }
            let mut path = Vec::with_capacity(order.len() + 2);
            path.push(s);
            for ty in order {
                path.push(pools[ty].next().expect("capacity constraints leave a free vertex"));
            }
            path.push(t);
            path
        })
        .collect();
    PathsWitness { paths }
}

/// Decides p-Vertex-Disjoint Paths and reconstructs simple disjoint paths on yes.
pub fn solve_paths(instance: &PathsInstance) -> Result<SolveReport<PathsWitness>, SolveError> {
    let started = Instant::now();
    let graph = instance.graph();
    let partition = compute_type_partition(graph);
    let k = partition.k();
    if instance.pairs().is_empty() {
        return Ok(SolveReport::new(Some(PathsWitness { paths: vec![] }), k, Some(0), started));
    }
    let h = build_type_graph(graph, &partition).expect("computed partition is consistent");
    let (problem, categories) = build_paths_ilp(instance, &partition, &h)?;
    let witness = solve_feasibility(&problem)?
        .map(|solution| reconstruct_paths(instance, &partition, &categories, &solution.values));
    #[cfg(debug_assertions)]
    if let Some(w) = &witness {
        crate::validate::validate_simple_paths_witness(instance, &partition, w).expect("paths witness is valid");
    }
    Ok(SolveReport::new(witness, k, Some(problem.num_vars()), started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::ilp::solve_feasibility;

    fn decompose(g: &Graph) -> (TypePartition, TypeGraph) {
        let p = compute_type_partition(g);
        let h = build_type_graph(g, &p).unwrap();
        (p, h)
    }

    #[test]
    fn route_validity_on_p3() {
        let (p, h) = decompose(&named::path(3));
        let (ends, mid) = (p.type_of(0), p.type_of(1));
        assert!(route_is_valid(&h, 1 << mid, ends, ends));
        assert!(!route_is_valid(&h, 0, ends, ends));
    }

    #[test]
    fn route_validity_on_clique() {
        let (_, h) = decompose(&named::complete(5));
        assert!(route_is_valid(&h, 0, 0, 0));
        assert!(route_is_valid(&h, 1, 0, 0));
    }

    #[test]
    fn simplify_in_clique() {
        let g = named::complete(4);
        let (p, _) = decompose(&g);
        assert_eq!(simplify_path(&g, &p, &[0, 1, 2, 3]), vec![0, 1, 3]);
        assert_eq!(simplify_path(&g, &p, &[0, 1, 3]), vec![0, 1, 3]);
    }

    #[test]
    fn empty_pairs_give_empty_ilp() {
        let g = named::path(3);
        let (p, h) = decompose(&g);
        let inst = PathsInstance::new(g, vec![]).unwrap();
        let (ilp, cats) = build_paths_ilp(&inst, &p, &h).unwrap();
        assert_eq!(ilp.num_vars(), 0);
        assert!(cats.is_empty());
        assert!(solve_feasibility(&ilp).unwrap().is_some());
        assert_eq!(solve_paths(&inst).unwrap().witness.unwrap().paths, Vec::<Vec<Vertex>>::new());
    }

    #[test]
    fn star_is_infeasible() {
        let g = named::star(4);
        let (p, h) = decompose(&g);
        let inst = PathsInstance::new(g, vec![(1, 2), (3, 4)]).unwrap();
        let (ilp, cats) = build_paths_ilp(&inst, &p, &h).unwrap();
        assert_eq!(cats.len(), 1);
        assert_eq!(cats[0].route, 1 << p.type_of(0));
        assert_eq!(solve_feasibility(&ilp).unwrap(), None);
        assert!(!solve_paths(&inst).unwrap().answer);
    }

    #[test]
    fn p3_single_pair() {
        let g = named::path(3);
        let (p, h) = decompose(&g);
        let inst = PathsInstance::new(g, vec![(0, 2)]).unwrap();
        let (ilp, cats) = build_paths_ilp(&inst, &p, &h).unwrap();
        assert_eq!(cats.len(), 1);
        let sol = solve_feasibility(&ilp).unwrap().unwrap();
        assert_eq!(sol.values, vec![1]);
        let w = reconstruct_paths(&inst, &p, &cats, &sol.values);
        assert_eq!(w.paths, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn k4_direct_edges() {
        let inst = PathsInstance::new(named::complete(4), vec![(0, 1), (2, 3)]).unwrap();
        let report = solve_paths(&inst).unwrap();
        assert!(report.answer);
        assert_eq!(report.witness.unwrap().paths, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(report.stats.nd, 1);
    }

    #[test]
    fn reversed_orientation() {
        // path 0-1-2-3-4: pair (4, 0) must traverse 3, 2, 1
        let g = named::path(5);
        let inst = PathsInstance::new(g, vec![(4, 0)]).unwrap();
        let w = solve_paths(&inst).unwrap().witness.unwrap();
        assert_eq!(w.paths, vec![vec![4, 3, 2, 1, 0]]);
    }
}
