//! Precoloring Extension parameterized by neighborhood diversity.
//!
//! Independent types are first reduced: a type that already contains a
//! precolored vertex passes that color to its uncolored members, and a type
//! without precolors is collapsed to a single representative. Afterwards
//! every independent type is either fully precolored (frozen) or a single
//! uncolored vertex.
//!
//! Colors are then grouped into categories by the set of types in which they
//! are precolored. A subcategory refines a category by the full set of types
//! the color ends up occupying; it must be independent in the type graph.
//! Since a color occupies at most one vertex of a clique type, counting
//! colors per subcategory is enough to decide the instance.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::SolveError;
use crate::graph::Vertex;
use crate::ilp::{solve_feasibility, IlpProblem, Relation, VarId};
use crate::instance::{Color, ColoringWitness, PrecolorInstance};
use crate::nd::{build_type_graph, compute_type_partition, TypeGraph, TypeId, TypePartition};
use crate::report::SolveReport;

/// Largest neighborhood diversity accepted; subcategories grow as `2^(2k)`.
pub const MAX_TYPES: usize = 12;

/// A precoloring instance after the independent-type reduction.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    /// The reduced instance itself, on the kept vertices.
    pub base: PrecolorInstance,
    /// Reduced vertex -> original vertex.
    pub original: Vec<Vertex>,
    /// Reduced vertex -> original vertices it stands for (itself included).
    pub collapsed: Vec<Vec<Vertex>>,
    /// The input partition restricted to the kept vertices; type ids are unchanged.
    pub partition: TypePartition,
    pub type_graph: TypeGraph,
    /// Types with at least one uncolored vertex, plus all clique types.
    pub active_types: Vec<TypeId>,
    /// Fully precolored independent types.
    pub frozen_types: Vec<TypeId>,
    original_n: usize,
}

impl ReducedInstance {
    /// Maps a coloring of the reduced instance back onto the original vertices.
    pub fn expand(&self, reduced_colors: &[Color]) -> ColoringWitness {
        let mut color_of = vec![0; self.original_n];
        for (v, group) in self.collapsed.iter().enumerate() {
            for &u in group {
                color_of[u] = reduced_colors[v];
            }
        }
        ColoringWitness { color_of }
    }
}

/// Colors precolored in exactly the types of `type_set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorCategory {
    pub type_set: u64,
    pub colors: Vec<Color>,
}

impl ColorCategory {
    pub fn color_count(&self) -> usize {
        self.colors.len()
    }
}

/// Colors of category `category` that end up occupying exactly `type_set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSubcategory {
    pub category: usize,
    pub type_set: u64,
    pub var: VarId,
}

/// Applies the independent-type reduction.
pub fn reduce_independent_types(instance: &PrecolorInstance, partition: &TypePartition) -> ReducedInstance {
    let graph = instance.graph();
    let n = graph.n();
    let mut precolor: Vec<Option<Color>> = instance.precoloring().to_vec();
    let mut removed = vec![false; n];
    let mut groups: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();

    for (t, class) in partition.classes().iter().enumerate() {
        if partition.is_clique(t) {
            continue;
        }
        let uncolored: Vec<Vertex> = class.iter().copied().filter(|&v| precolor[v].is_none()).collect();
        if uncolored.is_empty() {
            continue;
        }
        match class.iter().find_map(|&v| precolor[v]) {
            Some(c) => uncolored.iter().for_each(|&v| precolor[v] = Some(c)),
            None => {
                for &v in &uncolored[1..] {
                    removed[v] = true;
                }
                groups.insert(uncolored[0], uncolored);
            }
        }
    }

    let keep: Vec<Vertex> = (0..n).filter(|&v| !removed[v]).collect();
    let (reduced_graph, original) = graph.induced_subgraph(&keep);
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    let reduced_precolor = keep.iter().map(|&v| precolor[v]).collect();
    let collapsed = keep.iter().map(|&v| groups.remove(&v).unwrap_or_else(|| vec![v])).collect();

    let type_of = keep.iter().map(|&v| partition.type_of(v)).collect();
    let classes: Vec<Vec<Vertex>> = partition
        .classes()
        .iter()
        .map(|class| class.iter().filter(|&&v| !removed[v]).map(|&v| new_id[v]).collect())
        .collect();
    let clique = (0..partition.k()).map(|t| partition.is_clique(t)).collect();
    let restricted = TypePartition::from_parts(type_of, classes, clique);
    let type_graph =
        build_type_graph(&reduced_graph, &restricted).expect("restricting a type partition keeps it consistent");

    let base = PrecolorInstance::new(reduced_graph, reduced_precolor, instance.num_colors())
        .expect("extending precolors inside independent types keeps them proper");
    let (active_types, frozen_types) = (0..restricted.k())
        .partition(|&t| restricted.is_clique(t) || restricted.class(t).iter().any(|&v| base.precolor(v).is_none()));

    ReducedInstance {
        base,
        original,
        collapsed,
        partition: restricted,
        type_graph,
        active_types,
        frozen_types,
        original_n: n,
    }
}

/// Groups the colors `1..=r` by the set of types they are precolored in.
/// The empty-set category is always present, possibly with no colors.
///
/// Colors precolored nowhere are interchangeable, so the empty-set category
/// keeps only the lowest of them, one per uncolored vertex.
pub fn compute_color_categories(reduced: &ReducedInstance) -> Result<Vec<ColorCategory>, SolveError> {
    let mut types_of_color: BTreeMap<Color, u64> = BTreeMap::new();
    let mut seen_in_clique: BTreeMap<(TypeId, Color), Vertex> = BTreeMap::new();
    for (v, c) in reduced.base.precoloring().iter().enumerate() {
        if let Some(c) = *c {
            let t = reduced.partition.type_of(v);
            *types_of_color.entry(c).or_default() |= 1 << t;
            if reduced.partition.is_clique(t) {
                if let Some(prev) = seen_in_clique.insert((t, c), v) {
                    return Err(SolveError::InvalidInstance(format!(
                        "color {c} precolored twice in clique type {t} (vertices {prev} and {v})"
                    )));
                }
            }
        }
    }
    let uncolored = reduced.base.uncolored().count();
    let unused = (1..=reduced.base.num_colors()).filter(|c| !types_of_color.contains_key(c)).take(uncolored);
    let mut by_set: BTreeMap<u64, Vec<Color>> = BTreeMap::new();
    by_set.insert(0, unused.collect());
    for (&c, &set) in &types_of_color {
        by_set.entry(set).or_default().push(c);
    }
    Ok(by_set.into_iter().map(|(type_set, colors)| ColorCategory { type_set, colors }).collect())
}

/// All independent supersets of `base` obtained by adding active types, ascending by mask.
fn subcategory_sets(base: u64, active: &[TypeId], adjacency: &[u64]) -> Vec<u64> {
    fn grow(set: u64, from: usize, active: &[TypeId], adjacency: &[u64], out: &mut Vec<u64>) {
        out.push(set);
        for (i, &t) in active.iter().enumerate().skip(from) {
            if set >> t & 1 == 0 && adjacency[t] & set == 0 {
                grow(set | 1 << t, i + 1, active, adjacency, out);
            }
        }
    }
    let mut out = Vec::new();
    grow(base, 0, active, adjacency, &mut out);
    out.sort_unstable();
    debug_assert!(out.iter().all(|&s| (0..adjacency.len()).all(|t| s >> t & 1 == 0 || adjacency[t] & s == 0)));
    out
}

/// The subcategory integer program.
///
/// Rows: for every category, its subcategory counts sum to its color count;
/// for every active type, the subcategories containing it sum to its size.
pub fn build_precolor_ilp(
    reduced: &ReducedInstance,
    categories: &[ColorCategory],
) -> Result<(IlpProblem, Vec<ColorSubcategory>), SolveError> {
    let k = reduced.partition.k();
    if k > MAX_TYPES {
        return Err(SolveError::TooManyTypes { k, limit: MAX_TYPES });
    }
    let adjacency = reduced.type_graph.adjacency_masks();
    let mut problem = IlpProblem::new();
    let mut subcategories = Vec::new();
    for (ci, cat) in categories.iter().enumerate() {
        debug_assert!((0..k).all(|t| cat.type_set >> t & 1 == 0 || adjacency[t] & cat.type_set == 0));
        for set in subcategory_sets(cat.type_set, &reduced.active_types, &adjacency) {
            let var = problem.add_var(0, cat.color_count() as i64);
            subcategories.push(ColorSubcategory { category: ci, type_set: set, var });
        }
    }
    for (ci, cat) in categories.iter().enumerate() {
        let terms: Vec<(VarId, i64)> = subcategories.iter().filter(|s| s.category == ci).map(|s| (s.var, 1)).collect();
        problem.add_constraint(&terms, Relation::Eq, cat.color_count() as i64);
    }
    for &t in &reduced.active_types {
        let terms: Vec<(VarId, i64)> =
            subcategories.iter().filter(|s| s.type_set >> t & 1 == 1).map(|s| (s.var, 1)).collect();
        problem.add_constraint(&terms, Relation::Eq, reduced.partition.size(t) as i64);
    }
    Ok((problem, subcategories))
}

/// Builds a proper coloring from feasible subcategory counts.
///
/// Colors of each category go, in ascending order, to its subcategories in
/// ascending mask order. Within each active type the uncolored vertices take
/// the colors whose subcategory adds that type, one each.
pub fn reconstruct_coloring(
    reduced: &ReducedInstance,
    categories: &[ColorCategory],
    subcategories: &[ColorSubcategory],
    counts: &[i64],
) -> ColoringWitness {
    let k = reduced.partition.k();
    let mut fresh: Vec<Vec<Color>> = vec![Vec::new(); k];
    for (ci, cat) in categories.iter().enumerate() {
        let mut colors = cat.colors.iter().copied();
        for sub in subcategories.iter().filter(|s| s.category == ci) {
            for _ in 0..counts[sub.var] {
                let c = colors.next().expect("subcategory counts match the category size");
                for t in (0..k).filter(|&t| sub.type_set >> t & 1 == 1 && cat.type_set >> t & 1 == 0) {
                    fresh[t].push(c);
                }
            }
        }
        assert!(colors.next().is_none(), "every color assigned to a subcategory");
    }

    let base = &reduced.base;
    let mut colors: Vec<Color> = base.precoloring().iter().map(|c| c.unwrap_or(0)).collect();
    for &t in &reduced.active_types {
        let uncolored: Vec<Vertex> =
            reduced.partition.class(t).iter().copied().filter(|&v| base.precolor(v).is_none()).collect();
        assert_eq!(uncolored.len(), fresh[t].len(), "type {t} receives one new color per uncolored vertex");
        for (&v, &c) in uncolored.iter().zip(&fresh[t]) {
            colors[v] = c;
        }
    }
    debug_assert!(colors.iter().all(|&c| c != 0));
    reduced.expand(&colors)
}

/// Decides Precoloring Extension and returns a full proper coloring on yes.
pub fn solve_precolor(instance: &PrecolorInstance) -> Result<SolveReport<ColoringWitness>, SolveError> {
    let started = Instant::now();
    let partition = compute_type_partition(instance.graph());
    let k = partition.k();
    if k > MAX_TYPES {
        return Err(SolveError::TooManyTypes { k, limit: MAX_TYPES });
    }
    let reduced = reduce_independent_types(instance, &partition);
    let categories = compute_color_categories(&reduced)?;
    let (problem, subcategories) = build_precolor_ilp(&reduced, &categories)?;
    let witness = solve_feasibility(&problem)?
        .map(|solution| reconstruct_coloring(&reduced, &categories, &subcategories, &solution.values));
    #[cfg(debug_assertions)]
    if let Some(w) = &witness {
        crate::validate::validate_coloring_witness(instance, w).expect("coloring witness is valid");
    }
    Ok(SolveReport::new(witness, k, Some(problem.num_vars()), started))
}
