//! Problem instances layered on a [`Graph`].
//!
//! Each constructor checks the instance invariants, so a value of any of
//! these types is always well formed and can be shared freely between solver
//! runs.

use std::collections::BTreeMap;

use crate::error::ValidationError;
use crate::graph::{Graph, Vertex};

/// Color id. Colors are positive; `0` never appears in a valid instance.
pub type Color = u32;

/// A multiset of colors, stored as color -> multiplicity (all multiplicities positive).
pub type ColorMultiset = BTreeMap<Color, usize>;

/// Graph Motif input: a (not necessarily proper) vertex coloring and a target multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifInstance {
    graph: Graph,
    vertex_color: Vec<Color>,
    motif: ColorMultiset,
}

impl MotifInstance {
    pub fn new(graph: Graph, vertex_color: Vec<Color>, motif: ColorMultiset) -> Result<Self, ValidationError> {
        if vertex_color.len() != graph.n() {
            return Err(ValidationError::ColoringLength { got: vertex_color.len(), n: graph.n() });
        }
        if vertex_color.contains(&0) || motif.contains_key(&0) {
            return Err(ValidationError::ZeroColor);
        }
        if motif.is_empty() {
            return Err(ValidationError::EmptyMotif);
        }
        if let Some((&c, _)) = motif.iter().find(|(_, &count)| count == 0) {
            return Err(ValidationError::ZeroMotifCount(c));
        }
        Ok(MotifInstance { graph, vertex_color, motif })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.vertex_color[v]
    }

    pub fn vertex_colors(&self) -> &[Color] {
        &self.vertex_color
    }

    pub fn motif(&self) -> &ColorMultiset {
        &self.motif
    }

    /// `|M|`, counting multiplicity.
    pub fn motif_size(&self) -> usize {
        self.motif.values().sum()
    }
}

/// p-Vertex-Disjoint Paths input. All terminals are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathsInstance {
    graph: Graph,
    pairs: Vec<(Vertex, Vertex)>,
}

impl PathsInstance {
    pub fn new(graph: Graph, pairs: Vec<(Vertex, Vertex)>) -> Result<Self, ValidationError> {
        let n = graph.n();
        let mut used = vec![false; n];
        for &(s, t) in &pairs {
            for v in [s, t] {
                if v >= n {
                    return Err(crate::error::GraphError::VertexOutOfRange { vertex: v, n }.into());
                }
            }
            if s == t {
                return Err(ValidationError::IdenticalEndpoints(s));
            }
            for v in [s, t] {
                if std::mem::replace(&mut used[v], true) {
                    return Err(ValidationError::OverlappingTerminal(v));
                }
            }
        }
        Ok(PathsInstance { graph, pairs })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    /// Per-vertex flag: is this vertex an endpoint of some pair.
    pub fn terminal_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.graph.n()];
        for &(s, t) in &self.pairs {
            mask[s] = true;
            mask[t] = true;
        }
        mask
    }
}

/// Precoloring Extension input: a proper partial coloring and a color budget `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecolorInstance {
    graph: Graph,
    precolor: Vec<Option<Color>>,
    num_colors: Color,
}

impl PrecolorInstance {
    pub fn new(graph: Graph, precolor: Vec<Option<Color>>, num_colors: Color) -> Result<Self, ValidationError> {
        if precolor.len() != graph.n() {
            return Err(ValidationError::ColoringLength { got: precolor.len(), n: graph.n() });
        }
        if num_colors == 0 {
            return Err(ValidationError::ZeroColorBudget);
        }
        for (v, c) in precolor.iter().enumerate() {
            if let Some(c) = *c {
                if c == 0 || c > num_colors {
                    return Err(ValidationError::ColorOutOfRange { vertex: v, color: c, budget: num_colors });
                }
            }
        }
        for (u, v) in graph.edges() {
            if let (Some(a), Some(b)) = (precolor[u], precolor[v]) {
                if a == b {
                    return Err(ValidationError::ImproperPrecoloring(u, v, a));
                }
            }
        }
        Ok(PrecolorInstance { graph, precolor, num_colors })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn precolor(&self, v: Vertex) -> Option<Color> {
        self.precolor[v]
    }

    pub fn precoloring(&self) -> &[Option<Color>] {
        &self.precolor
    }

    pub fn num_colors(&self) -> Color {
        self.num_colors
    }

    pub fn uncolored(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.precolor.iter().enumerate().filter(|(_, c)| c.is_none()).map(|(v, _)| v)
    }
}

/// Anything the instance file format can carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(Graph),
    Motif(MotifInstance),
    Paths(PathsInstance),
    Precolor(PrecolorInstance),
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Graph(g) => g,
            Instance::Motif(m) => m.graph(),
            Instance::Paths(p) => p.graph(),
            Instance::Precolor(p) => p.graph(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Graph(_) => "graph",
            Instance::Motif(_) => "motif",
            Instance::Paths(_) => "paths",
            Instance::Precolor(_) => "precolor",
        }
    }
}

/// A vertex set whose induced subgraph is connected and carries exactly the motif colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifWitness {
    pub vertices: Vec<Vertex>,
}

/// One vertex sequence per terminal pair, in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathsWitness {
    pub paths: Vec<Vec<Vertex>>,
}

/// A total coloring, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringWitness {
    pub color_of: Vec<Color>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn motif_must_be_nonempty() {
        let g = named::complete(2);
        assert_eq!(MotifInstance::new(g, vec![1, 2], ColorMultiset::new()), Err(ValidationError::EmptyMotif));
    }

    #[test]
    fn terminals_must_be_distinct() {
        let g = named::path(4);
        assert_eq!(PathsInstance::new(g.clone(), vec![(0, 1), (1, 2)]), Err(ValidationError::OverlappingTerminal(1)));
        assert_eq!(PathsInstance::new(g, vec![(2, 2)]), Err(ValidationError::IdenticalEndpoints(2)));
    }

    #[test]
    fn precoloring_must_be_proper_and_in_range() {
        let g = named::path(3);
        assert_eq!(
            PrecolorInstance::new(g.clone(), vec![Some(1), Some(1), None], 2),
            Err(ValidationError::ImproperPrecoloring(0, 1, 1))
        );
        assert!(matches!(
            PrecolorInstance::new(g.clone(), vec![Some(3), None, None], 2),
            Err(ValidationError::ColorOutOfRange { .. })
        ));
        assert!(PrecolorInstance::new(g, vec![Some(1), None, Some(1)], 2).is_ok());
    }
}
