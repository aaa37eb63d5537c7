//! Witness validators shared by the solvers, the oracles and the tests.

use crate::error::WitnessError;
use crate::graph::Vertex;
use crate::instance::{
    ColorMultiset, ColoringWitness, MotifInstance, MotifWitness, PathsInstance, PathsWitness, PrecolorInstance,
};
use crate::nd::TypePartition;

/// Connected induced subgraph whose color multiset equals the motif exactly.
pub fn validate_motif_witness(instance: &MotifInstance, witness: &MotifWitness) -> Result<(), WitnessError> {
    let graph = instance.graph();
    let mut seen = vec![false; graph.n()];
    let mut colors = ColorMultiset::new();
    for &v in &witness.vertices {
        if v >= graph.n() {
            return Err(WitnessError::VertexOutOfRange(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(WitnessError::RepeatedVertex(v));
        }
        *colors.entry(instance.color(v)).or_default() += 1;
    }
    if &colors != instance.motif() {
        return Err(WitnessError::WrongColors);
    }
    if !graph.is_connected_subset(&witness.vertices) {
        return Err(WitnessError::Disconnected);
    }
    Ok(())
}

/// One path per pair with the right endpoints, consecutive vertices adjacent,
/// and no vertex shared between or within paths.
pub fn validate_paths_witness(instance: &PathsInstance, witness: &PathsWitness) -> Result<(), WitnessError> {
    let graph = instance.graph();
    let pairs = instance.pairs();
    if witness.paths.len() != pairs.len() {
        return Err(WitnessError::PathCount { expected: pairs.len(), got: witness.paths.len() });
    }
    let mut used = vec![false; graph.n()];
    for (i, (path, &(s, t))) in witness.paths.iter().zip(pairs).enumerate() {
        if path.len() < 2 || path[0] != s || path[path.len() - 1] != t {
            return Err(WitnessError::WrongEndpoints(i));
        }
        for &v in path {
            if v >= graph.n() {
                return Err(WitnessError::VertexOutOfRange(v));
            }
            if std::mem::replace(&mut used[v], true) {
                return Err(WitnessError::RepeatedVertex(v));
            }
        }
        if let Some(w) = path.windows(2).find(|w| !graph.has_edge(w[0], w[1])) {
            return Err(WitnessError::NotAnEdge { path: i, u: w[0], v: w[1] });
        }
    }
    Ok(())
}

/// At most one internal vertex of every type.
pub fn is_simple_path(partition: &TypePartition, path: &[Vertex]) -> bool {
    if path.len() <= 3 {
        return true;
    }
    let mut types: Vec<usize> = path[1..path.len() - 1].iter().map(|&v| partition.type_of(v)).collect();
    let len = types.len();
    types.sort_unstable();
    types.dedup();
    types.len() == len
}

/// [`validate_paths_witness`] plus simplicity of every path.
pub fn validate_simple_paths_witness(
    instance: &PathsInstance,
    partition: &TypePartition,
    witness: &PathsWitness,
) -> Result<(), WitnessError> {
    validate_paths_witness(instance, witness)?;
    match witness.paths.iter().position(|p| !is_simple_path(partition, p)) {
        Some(i) => Err(WitnessError::NotSimple(i)),
        None => Ok(()),
    }
}

/// Total coloring with colors in `1..=r` that keeps the precoloring and is proper.
pub fn validate_coloring_witness(instance: &PrecolorInstance, witness: &ColoringWitness) -> Result<(), WitnessError> {
    let graph = instance.graph();
    let colors = &witness.color_of;
    if colors.len() != graph.n() {
        return Err(WitnessError::ColoringLength { got: colors.len(), n: graph.n() });
    }
    for (v, &c) in colors.iter().enumerate() {
        if c == 0 || c > instance.num_colors() {
            return Err(WitnessError::ColorOutOfRange { vertex: v, color: c, budget: instance.num_colors() });
        }
        if instance.precolor(v).is_some_and(|p| p != c) {
            return Err(WitnessError::PrecolorChanged(v));
        }
    }
    match graph.edges().find(|&(u, v)| colors[u] == colors[v]) {
        Some((u, v)) => Err(WitnessError::Monochromatic(u, v)),
        None => Ok(()),
    }
}
