//! Graph Motif in `O(2^k * sqrt(V) * E)` for neighborhood diversity `k`.
//!
//! Every candidate set of types `B'` that is connected in the type graph is
//! tested in turn. `B'` admits a solution iff the motif fits inside the colors
//! available in `B'` and some one-vertex-per-type selection (a skeleton) uses
//! only motif colors; the latter is a bipartite matching between motif color
//! occurrences and the types of `B'`. Any skeleton extends to a full solution
//! because every vertex of a type in `B'` is adjacent to the skeleton.

use std::time::Instant;

use crate::error::SolveError;
use crate::graph::Vertex;
use crate::instance::{Color, MotifInstance, MotifWitness};
use crate::matching::max_bipartite_matching;
use crate::nd::{build_type_graph, compute_type_partition, TypeGraph, TypeId, TypePartition};
use crate::report::SolveReport;

/// Largest neighborhood diversity the subset enumeration accepts.
pub const MAX_TYPES: usize = 24;

/// A set of types `B'`, as a bitmask over type ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CandidateTypeSet {
    pub mask: u64,
    pub connected: bool,
}

impl CandidateTypeSet {
    pub fn types(&self) -> impl Iterator<Item = TypeId> {
        let mask = self.mask;
        (0..64).filter(move |&t| mask >> t & 1 == 1)
    }
}

/// One chosen vertex per type of a candidate set, ascending by type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub chosen: Vec<(TypeId, Vertex)>,
}

/// Decomposition of a motif instance plus per-type color tables.
pub struct MotifSolver<'a> {
    instance: &'a MotifInstance,
    partition: TypePartition,
    type_graph: TypeGraph,
    /// Distinct motif colors; index into this is the "motif color index".
    colors: Vec<Color>,
    need: Vec<usize>,
    /// `count[t][c]`: vertices of type `t` with motif color index `c`.
    count: Vec<Vec<usize>>,
    /// `first[t][c]`: smallest such vertex.
    first: Vec<Vec<Option<Vertex>>>,
}

impl<'a> MotifSolver<'a> {
    pub fn new(instance: &'a MotifInstance) -> Self {
        let graph = instance.graph();
        let partition = compute_type_partition(graph);
        let type_graph = build_type_graph(graph, &partition).expect("computed partition is consistent");
        let colors: Vec<Color> = instance.motif().keys().copied().collect();
        let need: Vec<usize> = instance.motif().values().copied().collect();
        let k = partition.k();
        let mut count = vec![vec![0; colors.len()]; k];
        let mut first = vec![vec![None; colors.len()]; k];
        for v in graph.vertices() {
            if let Ok(c) = colors.binary_search(&instance.color(v)) {
                let t = partition.type_of(v);
                count[t][c] += 1;
                first[t][c].get_or_insert(v);
            }
        }
        MotifSolver { instance, partition, type_graph, colors, need, count, first }
    }

    pub fn partition(&self) -> &TypePartition {
        &self.partition
    }

    pub fn type_graph(&self) -> &TypeGraph {
        &self.type_graph
    }

    /// Connectivity of `mask` in the type graph, by union-find over the type edges inside it.
    pub fn candidate(&self, mask: u64) -> CandidateTypeSet {
        let k = self.partition.k();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = mask.count_ones() as usize;
        for (a, b) in self.type_graph.edges() {
            if mask >> a & 1 == 1 && mask >> b & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    components -= 1;
                }
            }
        }
        CandidateTypeSet { mask, connected: components == 1 }
    }

    /// Multiset inclusion `M ⊆ col(B')`.
    fn motif_fits(&self, candidate: &CandidateTypeSet) -> bool {
        (0..self.colors.len()).all(|c| candidate.types().map(|t| self.count[t][c]).sum::<usize>() >= self.need[c])
    }

    /// Finds a skeleton of `candidate` by matching motif color occurrences to its types.
    /// A skeleton exists iff the maximum matching saturates every type.
    pub fn skeleton_exists(&self, candidate: &CandidateTypeSet) -> Option<Skeleton> {
        let types: Vec<TypeId> = candidate.types().collect();
        let occurrences: Vec<usize> =
            self.need.iter().enumerate().flat_map(|(c, &times)| std::iter::repeat_n(c, times)).collect();
        let edges: Vec<(usize, usize)> = occurrences
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| {
                types.iter().enumerate().filter(move |(_, &t)| self.count[t][c] > 0).map(move |(j, _)| (i, j))
            })
            .collect();
        let matching = max_bipartite_matching(occurrences.len(), types.len(), &edges);
        if matching.size < types.len() {
            return None;
        }
        let chosen: Vec<(TypeId, Vertex)> = types
            .iter()
            .zip(&matching.right_mate)
            .map(|(&t, occ)| {
                let c = occurrences[occ.expect("all types matched")];
                (t, self.first[t][c].expect("matched type has the color"))
            })
            .collect();
        debug_assert!(
            candidate.connected
                && self.instance.graph().is_connected_subset(&chosen.iter().map(|&(_, v)| v).collect::<Vec<_>>())
        );
        Some(Skeleton { chosen })
    }

    /// Adds vertices of the candidate types whose colors are still missing,
    /// scanning types and vertices in id order, until the colors equal `M`.
    pub fn extend_skeleton(&self, candidate: &CandidateTypeSet, skeleton: &Skeleton) -> MotifWitness {
        let mut have = vec![0usize; self.colors.len()];
        let mut vertices: Vec<Vertex> = Vec::with_capacity(self.instance.motif_size());
        for &(_, v) in &skeleton.chosen {
            let c = self.colors.binary_search(&self.instance.color(v)).expect("skeleton uses motif colors");
            have[c] += 1;
            vertices.push(v);
        }
        debug_assert!(have.iter().zip(&self.need).all(|(h, n)| h <= n));
        let total = self.instance.motif_size();
        'scan: for t in candidate.types() {
            for &v in self.partition.class(t) {
                if vertices.len() == total {
                    break 'scan;
                }
                if skeleton.chosen.iter().any(|&(_, s)| s == v) {
                    continue;
                }
                if let Ok(c) = self.colors.binary_search(&self.instance.color(v)) {
                    if have[c] < self.need[c] {
                        have[c] += 1;
                        vertices.push(v);
                    }
                }
            }
        }
        assert_eq!(vertices.len(), total, "candidate types ran out of motif colors");
        MotifWitness { vertices }
    }

    /// Runs the search over all nonempty type subsets in increasing mask order.
    pub fn solve(&self) -> Result<Option<MotifWitness>, SolveError> {
        let k = self.partition.k();
        if self.instance.motif_size() == 1 {
            let target = self.colors[0];
            let hit = self.instance.graph().vertices().find(|&v| self.instance.color(v) == target);
            return Ok(hit.map(|v| MotifWitness { vertices: vec![v] }));
        }
        if k > MAX_TYPES {
            return Err(SolveError::TooManyTypes { k, limit: MAX_TYPES });
        }
        for mask in 1u64..(1u64 << k) {
            let candidate = self.candidate(mask);
            if !candidate.connected {
                continue;
            }
            if mask.count_ones() == 1 && !self.partition.is_clique(mask.trailing_zeros() as usize) {
                continue;
            }
            if !self.motif_fits(&candidate) {
                continue;
            }
            if let Some(skeleton) = self.skeleton_exists(&candidate) {
                return Ok(Some(self.extend_skeleton(&candidate, &skeleton)));
            }
        }
        Ok(None)
    }
}

/// Decides Graph Motif, returning a witness vertex set on yes.
pub fn solve_motif(instance: &MotifInstance) -> Result<SolveReport<MotifWitness>, SolveError> {
    let started = Instant::now();
    let solver = MotifSolver::new(instance);
    let witness = solver.solve()?;
    #[cfg(debug_assertions)]
    if let Some(w) = &witness {
        crate::validate::validate_motif_witness(instance, w).expect("motif witness is valid");
    }
    Ok(SolveReport::new(witness, solver.partition().k(), None, started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Graph};
    use crate::instance::ColorMultiset;

    fn motif(pairs: &[(Color, usize)]) -> ColorMultiset {
        pairs.iter().copied().collect()
    }

    #[test]
    fn triangle_pair() {
        let inst = MotifInstance::new(named::complete(3), vec![1, 2, 3], motif(&[(1, 1), (2, 1)])).unwrap();
        let report = solve_motif(&inst).unwrap();
        assert!(report.answer);
        let mut w = report.witness.unwrap().vertices;
        w.sort_unstable();
        assert_eq!(w, vec![0, 1]);
        assert_eq!(report.stats.nd, 1);
    }

    #[test]
    fn path_red_red_is_no() {
        let inst = MotifInstance::new(named::path(3), vec![1, 2, 1], motif(&[(1, 2)])).unwrap();
        assert!(!solve_motif(&inst).unwrap().answer);
    }

    #[test]
    fn path_whole() {
        let inst = MotifInstance::new(named::path(3), vec![1, 2, 1], motif(&[(1, 2), (2, 1)])).unwrap();
        let mut w = solve_motif(&inst).unwrap().witness.unwrap().vertices;
        w.sort_unstable();
        assert_eq!(w, vec![0, 1, 2]);
    }

    #[test]
    fn single_independent_type_is_filtered() {
        let inst = MotifInstance::new(Graph::new(3), vec![1, 1, 1], motif(&[(1, 2)])).unwrap();
        assert!(!solve_motif(&inst).unwrap().answer);
        let single = MotifInstance::new(Graph::new(3), vec![1, 2, 1], motif(&[(2, 1)])).unwrap();
        assert_eq!(solve_motif(&single).unwrap().witness.unwrap().vertices, vec![1]);
    }

    #[test]
    fn forced_skeleton_and_missing_color() {
        // K_{2,2}: types T0 = {0,1}, T1 = {2,3}
        let g = named::complete_bipartite(2, 2);
        let inst = MotifInstance::new(g.clone(), vec![1, 1, 2, 2], motif(&[(1, 1), (2, 1)])).unwrap();
        let solver = MotifSolver::new(&inst);
        let cand = solver.candidate(0b11);
        assert!(cand.connected);
        assert_eq!(solver.skeleton_exists(&cand).unwrap().chosen, vec![(0, 0), (1, 2)]);

        let red_red = MotifInstance::new(g, vec![1, 1, 2, 2], motif(&[(1, 2)])).unwrap();
        let solver = MotifSolver::new(&red_red);
        assert_eq!(solver.skeleton_exists(&solver.candidate(0b11)), None);
    }

    #[test]
    fn extension_adds_missing_colors() {
        // K_{2,2} with colors r,r | g,g and M = {r,r,g}
        let g = named::complete_bipartite(2, 2);
        let inst = MotifInstance::new(g, vec![1, 1, 2, 2], motif(&[(1, 2), (2, 1)])).unwrap();
        let solver = MotifSolver::new(&inst);
        let cand = solver.candidate(0b11);
        let skel = solver.skeleton_exists(&cand).unwrap();
        let w = solver.extend_skeleton(&cand, &skel);
        assert_eq!(w.vertices, vec![0, 2, 1]);

        // skeleton already complete
        let exact =
            MotifInstance::new(named::complete_bipartite(2, 2), vec![1, 1, 2, 2], motif(&[(1, 1), (2, 1)])).unwrap();
        let solver = MotifSolver::new(&exact);
        let cand = solver.candidate(0b11);
        let skel = solver.skeleton_exists(&cand).unwrap();
        assert_eq!(solver.extend_skeleton(&cand, &skel).vertices, vec![0, 2]);
    }

    #[test]
    fn disconnected_candidate() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let inst = MotifInstance::new(g, vec![1, 2, 1, 2], motif(&[(1, 1), (2, 1)])).unwrap();
        let solver = MotifSolver::new(&inst);
        // two K_2 components: types {0,1} and {2,3}
        assert_eq!(solver.partition().k(), 2);
        assert!(!solver.candidate(0b11).connected);
        assert!(solve_motif(&inst).unwrap().answer);
    }
}
