//! Exhaustive deciders for the three problems.
//!
//! These work on the raw graph only and never touch the type decomposition or
//! the ILP engine. Each has a hard size guard.

use std::collections::HashSet;

use crate::error::OracleError;
use crate::graph::{Graph, Vertex};
use crate::instance::{
    Color, ColorMultiset, ColoringWitness, MotifInstance, MotifWitness, PathsInstance, PathsWitness, PrecolorInstance,
};

pub const MOTIF_MAX_N: usize = 15;
pub const PATHS_MAX_N: usize = 15;
pub const PATHS_MAX_PAIRS: usize = 4;
pub const PRECOLOR_MAX_N: usize = 12;

fn guard(what: &'static str, actual: usize, limit: usize) -> Result<(), OracleError> {
    if actual > limit {
        Err(OracleError::SizeGuard { what, actual, limit })
    } else {
        Ok(())
    }
}

/// Tries every vertex subset of size `|M|`; lowest bitmask first.
pub fn oracle_motif(instance: &MotifInstance) -> Result<Option<MotifWitness>, OracleError> {
    let graph = instance.graph();
    let n = graph.n();
    guard("vertex count", n, MOTIF_MAX_N)?;
    let size = instance.motif_size();
    if size > n {
        return Ok(None);
    }
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let set: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut colors = ColorMultiset::new();
        for &v in &set {
            *colors.entry(instance.color(v)).or_default() += 1;
        }
        if &colors == instance.motif() && graph.is_connected_subset(&set) {
            return Ok(Some(MotifWitness { vertices: set }));
        }
    }
    Ok(None)
}

struct PathSearch<'a> {
    graph: &'a Graph,
    pairs: &'a [(Vertex, Vertex)],
    paths: Vec<Vec<Vertex>>,
    failed: HashSet<(usize, Vertex, u32)>,
}

impl PathSearch<'_> {
    /// Extends path `i`, currently ending at `cur`, with `used` the occupied vertices.
    fn extend(&mut self, i: usize, cur: Vertex, used: u32) -> bool {
        if i == self.pairs.len() {
            return true;
        }
        if self.failed.contains(&(i, cur, used)) {
            return false;
        }
        let target = self.pairs[i].1;
        let graph = self.graph;
        for &u in graph.neighbors(cur) {
            if u == target {
                self.paths[i].push(u);
                let next = self.pairs.get(i + 1).map_or(0, |p| p.0);
                if self.extend(i + 1, next, used) {
                    return true;
                }
                self.paths[i].pop();
            } else if used >> u & 1 == 0 {
                self.paths[i].push(u);
                if self.extend(i, u, used | 1 << u) {
                    return true;
                }
                self.paths[i].pop();
            }
        }
        self.failed.insert((i, cur, used));
        false
    }
}

/// Routes the pairs in order, each by depth-first search over unused
/// non-terminal vertices. Dead states are memoized.
pub fn oracle_paths(instance: &PathsInstance) -> Result<Option<PathsWitness>, OracleError> {
    let graph = instance.graph();
    guard("vertex count", graph.n(), PATHS_MAX_N)?;
    guard("pair count", instance.pairs().len(), PATHS_MAX_PAIRS)?;
    let pairs = instance.pairs();
    let used = pairs.iter().fold(0u32, |m, &(s, t)| m | 1 << s | 1 << t);
    let mut search =
        PathSearch { graph, pairs, paths: pairs.iter().map(|&(s, _)| vec![s]).collect(), failed: HashSet::new() };
    let start = pairs.first().map_or(0, |p| p.0);
    Ok(search.extend(0, start, used).then_some(PathsWitness { paths: search.paths }))
}

struct ColorSearch<'a> {
    graph: &'a Graph,
    uncolored: Vec<Vertex>,
    colors: Vec<Color>,
    /// Palette in ascending order with, for fresh colors, their rank among fresh colors.
    palette: Vec<(Color, Option<usize>)>,
    fresh_uses: Vec<usize>,
}

impl ColorSearch<'_> {
    fn assign(&mut self, idx: usize) -> bool {
        let Some(&v) = self.uncolored.get(idx) else { return true };
        // fresh colors are interchangeable: only open the next unused one
        let open = self.fresh_uses.iter().take_while(|&&u| u > 0).count();
        for i in 0..self.palette.len() {
            let (c, fresh) = self.palette[i];
            if fresh.is_some_and(|rank| rank > open) {
                continue;
            }
            if self.graph.neighbors(v).iter().any(|&u| self.colors[u] == c) {
                continue;
            }
            self.colors[v] = c;
            if let Some(rank) = fresh {
                self.fresh_uses[rank] += 1;
            }
            if self.assign(idx + 1) {
                return true;
            }
            if let Some(rank) = fresh {
                self.fresh_uses[rank] -= 1;
            }
            self.colors[v] = 0;
        }
        false
    }
}

/// Backtracking over uncolored vertices in id order, colors ascending.
///
/// The palette is the precolored colors plus as many unused colors as there
/// are uncolored vertices (capped by `r`).
pub fn oracle_precolor(instance: &PrecolorInstance) -> Result<Option<ColoringWitness>, OracleError> {
    let graph = instance.graph();
    guard("vertex count", graph.n(), PRECOLOR_MAX_N)?;
    let mut precolored: Vec<Color> = instance.precoloring().iter().flatten().copied().collect();
    precolored.sort_unstable();
    precolored.dedup();
    let uncolored: Vec<Vertex> = instance.uncolored().collect();
    let fresh: Vec<Color> =
        (1..=instance.num_colors()).filter(|c| precolored.binary_search(c).is_err()).take(uncolored.len()).collect();
    let mut palette: Vec<(Color, Option<usize>)> = precolored.iter().map(|&c| (c, None)).collect();
    palette.extend(fresh.iter().enumerate().map(|(rank, &c)| (c, Some(rank))));
    palette.sort_unstable();

    let mut search = ColorSearch {
        graph,
        colors: instance.precoloring().iter().map(|c| c.unwrap_or(0)).collect(),
        uncolored,
        palette,
        fresh_uses: vec![0; fresh.len()],
    };
    Ok(search.assign(0).then_some(ColoringWitness { color_of: search.colors }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::validate::{validate_coloring_witness, validate_motif_witness, validate_paths_witness};

    #[test]
    fn motif_examples() {
        let k3 = MotifInstance::new(named::complete(3), vec![1, 2, 3], [(1, 1), (2, 1)].into()).unwrap();
        let w = oracle_motif(&k3).unwrap().unwrap();
        validate_motif_witness(&k3, &w).unwrap();
        let p3 = MotifInstance::new(named::path(3), vec![1, 2, 1], [(1, 2)].into()).unwrap();
        assert_eq!(oracle_motif(&p3).unwrap(), None);
    }

    #[test]
    fn paths_examples() {
        let k4 = PathsInstance::new(named::complete(4), vec![(0, 1), (2, 3)]).unwrap();
        let w = oracle_paths(&k4).unwrap().unwrap();
        validate_paths_witness(&k4, &w).unwrap();
        let star = PathsInstance::new(named::star(4), vec![(1, 2), (3, 4)]).unwrap();
        assert_eq!(oracle_paths(&star).unwrap(), None);
        let none = PathsInstance::new(named::path(3), vec![]).unwrap();
        assert_eq!(oracle_paths(&none).unwrap(), Some(PathsWitness { paths: vec![] }));
    }

    #[test]
    fn precolor_examples() {
        let k3 = PrecolorInstance::new(named::complete(3), vec![Some(2), None, None], 3).unwrap();
        let w = oracle_precolor(&k3).unwrap().unwrap();
        validate_coloring_witness(&k3, &w).unwrap();
        let k3_two = PrecolorInstance::new(named::complete(3), vec![None; 3], 2).unwrap();
        assert_eq!(oracle_precolor(&k3_two).unwrap(), None);
        let c4 = PrecolorInstance::new(named::cycle(4), vec![Some(1), None, Some(2), None], 2).unwrap();
        assert_eq!(oracle_precolor(&c4).unwrap(), None);
    }

    #[test]
    fn size_guards() {
        let big = MotifInstance::new(Graph::new(16), vec![1; 16], [(1, 1)].into()).unwrap();
        assert!(matches!(oracle_motif(&big), Err(OracleError::SizeGuard { .. })));
        let many = PathsInstance::new(Graph::new(10), (0..5).map(|i| (2 * i, 2 * i + 1)).collect()).unwrap();
        assert!(matches!(oracle_paths(&many), Err(OracleError::SizeGuard { what: "pair count", .. })));
        let col = PrecolorInstance::new(Graph::new(13), vec![None; 13], 2).unwrap();
        assert!(oracle_precolor(&col).is_err());
    }
}
