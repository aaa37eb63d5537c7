//! Seeded generators for graphs with a prescribed type structure and for
//! random problem instances on top of them.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenerateError;
use crate::graph::{Graph, Vertex};
use crate::instance::{Color, ColorMultiset, Instance, MotifInstance, PathsInstance, PrecolorInstance};

/// Largest motif palette the random generator accepts.
pub const MAX_PALETTE: Color = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Motif,
    Paths,
    Precolor,
}

impl std::str::FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "motif" => Ok(ProblemKind::Motif),
            "paths" => Ok(ProblemKind::Paths),
            "precolor" => Ok(ProblemKind::Precolor),
            other => Err(format!("unknown problem `{other}`")),
        }
    }
}

/// A type graph to expand: per-type sizes and clique flags plus type-level edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTemplate {
    pub sizes: Vec<usize>,
    pub clique: Vec<bool>,
    pub edges: Vec<(usize, usize)>,
}

impl TypeTemplate {
    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn check(&self) -> Result<(), GenerateError> {
        let k = self.k();
        let bad = |msg: String| Err(GenerateError::InvalidTemplate(msg));
        if self.clique.len() != k {
            return bad(format!("{} clique flags for {k} types", self.clique.len()));
        }
        if let Some(t) = self.sizes.iter().position(|&s| s == 0) {
            return bad(format!("type {t} is empty"));
        }
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &self.edges {
            if a >= k || b >= k {
                return bad(format!("type edge {a}-{b} out of range"));
            }
            if a == b {
                return bad(format!("type self-loop at {a}"));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return bad(format!("duplicate type edge {a}-{b}"));
            }
        }
        Ok(())
    }
}

/// Expands a template into a graph: each type becomes a clique or independent
/// set of the given size, and each type edge becomes a complete bipartite join.
///
/// Vertex ids are shuffled with `seed`, so types are not contiguous id ranges.
pub fn generate_from_template(template: &TypeTemplate, seed: u64) -> Result<Graph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    expand(template, &mut rng)
}

fn expand(template: &TypeTemplate, rng: &mut ChaCha8Rng) -> Result<Graph, GenerateError> {
    template.check()?;
    let n = template.n();
    let mut ids: Vec<Vertex> = (0..n).collect();
    ids.shuffle(rng);

    let mut members = Vec::with_capacity(template.k());
    let mut offset = 0;
    for &size in &template.sizes {
        members.push(&ids[offset..offset + size]);
        offset += size;
    }
    let mut type_neighbors = vec![Vec::new(); template.k()];
    for &(a, b) in &template.edges {
        type_neighbors[a].push(b);
        type_neighbors[b].push(a);
    }

    let mut adjacency = vec![Vec::new(); n];
    for (t, &own) in members.iter().enumerate() {
        let outside: Vec<Vertex> = type_neighbors[t].iter().flat_map(|&u| members[u].iter().copied()).collect();
        for &v in own {
            let mut list = outside.clone();
            if template.clique[t] {
                list.extend(own.iter().copied().filter(|&u| u != v));
            }
            adjacency[v] = list;
        }
    }
    Ok(Graph::from_unsorted_adjacency(adjacency).expect("template expansion yields a simple graph"))
}

/// Shape of a random template: `k` types, `n` vertices in total, and the
/// probability of each type-level edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TemplateParams {
    pub k: usize,
    pub n: usize,
    pub edge_probability: f64,
}

impl TemplateParams {
    pub fn new(k: usize, n: usize) -> Self {
        TemplateParams { k, n, edge_probability: 0.5 }
    }
}

/// Random template with sizes forming a random composition of `n` into `k` positive parts.
pub fn random_template<R: Rng>(params: TemplateParams, rng: &mut R) -> Result<TypeTemplate, GenerateError> {
    let TemplateParams { k, n, edge_probability } = params;
    if k == 0 || n < k {
        return Err(GenerateError::InvalidTemplate(format!("cannot split {n} vertices into {k} nonempty types")));
    }
    let mut cuts: Vec<usize> = index::sample(rng, n - 1, k - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(n);
    let sizes: Vec<usize> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
    let clique = sizes.iter().map(|_| rng.gen_bool(0.5)).collect();
    let p = edge_probability.clamp(0.0, 1.0);
    let edges = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
    Ok(TypeTemplate { sizes, clique, edges })
}

/// Annotation knobs for [`random_instance`]; each problem reads only its own fields.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnotationParams {
    /// Motif palette size, `1..=16`.
    pub palette: Color,
    pub motif_size: usize,
    pub pairs: usize,
    /// Color budget `r` for precoloring.
    pub num_colors: Color,
    /// Probability that a vertex is offered a precolor.
    pub precolor_fraction: f64,
}

impl Default for AnnotationParams {
    fn default() -> Self {
        AnnotationParams { palette: 3, motif_size: 3, pairs: 2, num_colors: 3, precolor_fraction: 0.3 }
    }
}

/// A random valid instance over a random template graph. Deterministic in `seed`.
pub fn random_instance(
    problem: ProblemKind,
    template: TemplateParams,
    annotation: AnnotationParams,
    seed: u64,
) -> Result<Instance, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tpl = random_template(template, &mut rng)?;
    let graph = expand(&tpl, &mut rng)?;
    annotate(problem, graph, annotation, &mut rng)
}

/// Adds random annotations for `problem` to an existing graph.
pub fn annotate<R: Rng>(
    problem: ProblemKind,
    graph: Graph,
    params: AnnotationParams,
    rng: &mut R,
) -> Result<Instance, GenerateError> {
    let n = graph.n();
    let infeasible = |msg: String| Err(GenerateError::InfeasibleAnnotation(msg));
    match problem {
        ProblemKind::Motif => {
            if params.palette == 0 || params.palette > MAX_PALETTE {
                return infeasible(format!("palette of {} colors outside 1..={MAX_PALETTE}", params.palette));
            }
            if params.motif_size == 0 || params.motif_size > n {
                return infeasible(format!("motif of size {} on {n} vertices", params.motif_size));
            }
            let colors: Vec<Color> = (0..n).map(|_| rng.gen_range(1..=params.palette)).collect();
            let mut motif = ColorMultiset::new();
            if rng.gen_bool(0.5) {
                for v in random_connected_set(&graph, params.motif_size, rng) {
                    *motif.entry(colors[v]).or_default() += 1;
                }
            } else {
                for _ in 0..params.motif_size {
                    *motif.entry(rng.gen_range(1..=params.palette)).or_default() += 1;
                }
            }
            Ok(Instance::Motif(MotifInstance::new(graph, colors, motif).expect("generated motif is valid")))
        }
        ProblemKind::Paths => {
            if 2 * params.pairs > n {
                return infeasible(format!(
                    "{} pairs need {} distinct terminals, graph has {n}",
                    params.pairs,
                    2 * params.pairs
                ));
            }
            let picks = index::sample(rng, n, 2 * params.pairs).into_vec();
            let pairs = picks.chunks(2).map(|c| (c[0], c[1])).collect();
            Ok(Instance::Paths(PathsInstance::new(graph, pairs).expect("generated terminals are distinct")))
        }
        ProblemKind::Precolor => {
            if params.num_colors == 0 {
                return infeasible("color budget must be positive".into());
            }
            let mut precolor: Vec<Option<Color>> = vec![None; n];
            for v in 0..n {
                if rng.gen_bool(params.precolor_fraction.clamp(0.0, 1.0)) {
                    let c = rng.gen_range(1..=params.num_colors);
                    if graph.neighbors(v).iter().all(|&u| precolor[u] != Some(c)) {
                        precolor[v] = Some(c);
                    }
                }
            }
            Ok(Instance::Precolor(
                PrecolorInstance::new(graph, precolor, params.num_colors).expect("generated precoloring is proper"),
            ))
        }
    }
}

/// Grows a connected vertex set of up to `size` vertices from a random seed vertex.
fn random_connected_set<R: Rng>(graph: &Graph, size: usize, rng: &mut R) -> Vec<Vertex> {
    let start = rng.gen_range(0..graph.n());
    let mut inside = vec![false; graph.n()];
    inside[start] = true;
    let mut set = vec![start];
    let mut frontier: Vec<Vertex> = graph.neighbors(start).to_vec();
    while set.len() < size {
        frontier.retain(|&u| !inside[u]);
        if frontier.is_empty() {
            break;
        }
        let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        inside[v] = true;
        set.push(v);
        frontier.extend(graph.neighbors(v).iter().copied().filter(|&u| !inside[u]));
    }
    set
}
