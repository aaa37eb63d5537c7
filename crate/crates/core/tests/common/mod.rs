//! Helpers shared by the integration tests: seeded instance sweeps and
//! brute-force references that do not use the library's decomposition.

#![allow(dead_code)]

use ndsolve_core::generate::{random_instance, AnnotationParams, ProblemKind, TemplateParams};
use ndsolve_core::{Graph, Instance, MotifInstance, PathsInstance, PrecolorInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Template with `k <= max_k` types and `k <= n <= max_n` vertices.
pub fn small_template(rng: &mut ChaCha8Rng, max_k: usize, max_n: usize) -> TemplateParams {
    let k = rng.gen_range(1..=max_k);
    let n = rng.gen_range(k.max(2)..=max_n);
    TemplateParams { k, n, edge_probability: rng.gen_range(0.2..0.9) }
}

pub fn motif_instance(seed: u64, max_k: usize, max_n: usize, max_motif: usize) -> MotifInstance {
    let mut r = rng(seed ^ 0x6d6f);
    let tpl = small_template(&mut r, max_k, max_n);
    let ann = AnnotationParams {
        palette: r.gen_range(1..=4),
        motif_size: r.gen_range(1..=max_motif.min(tpl.n)),
        ..AnnotationParams::default()
    };
    match random_instance(ProblemKind::Motif, tpl, ann, seed).unwrap() {
        Instance::Motif(m) => m,
        _ => unreachable!(),
    }
}

pub fn paths_instance(seed: u64, max_k: usize, max_n: usize, max_pairs: usize) -> PathsInstance {
    let mut r = rng(seed ^ 0x7061);
    let tpl = small_template(&mut r, max_k, max_n);
    let ann = AnnotationParams { pairs: r.gen_range(1..=max_pairs.min(tpl.n / 2)), ..AnnotationParams::default() };
    match random_instance(ProblemKind::Paths, tpl, ann, seed).unwrap() {
        Instance::Paths(p) => p,
        _ => unreachable!(),
    }
}

pub fn precolor_instance(seed: u64, max_k: usize, max_n: usize, max_r: u32) -> PrecolorInstance {
    let mut r = rng(seed ^ 0x7072);
    let tpl = small_template(&mut r, max_k, max_n);
    let ann = AnnotationParams {
        num_colors: r.gen_range(1..=max_r),
        precolor_fraction: r.gen_range(0.0..0.7),
        ..AnnotationParams::default()
    };
    match random_instance(ProblemKind::Precolor, tpl, ann, seed).unwrap() {
        Instance::Precolor(p) => p,
        _ => unreachable!(),
    }
}

/// Erdős–Rényi graph.
pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Adjacency-matrix check of `N(u) \ {v} == N(v) \ {u}`.
pub fn same_type_matrix(adj: &[Vec<bool>], u: usize, v: usize) -> bool {
    (0..adj.len()).filter(|&w| w != u && w != v).all(|w| adj[u][w] == adj[v][w])
}

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// Minimum number of blocks over all set partitions of `V` whose blocks are
/// pairwise same-type, by exhaustive assignment with pruning on the best count.
pub fn brute_force_nd(g: &Graph) -> usize {
    fn go(v: usize, adj: &[Vec<bool>], blocks: &mut Vec<Vec<usize>>, best: &mut usize) {
        if blocks.len() >= *best {
            return;
        }
        if v == adj.len() {
            *best = blocks.len();
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].iter().all(|&u| same_type_matrix(adj, u, v)) {
                blocks[b].push(v);
                go(v + 1, adj, blocks, best);
                blocks[b].pop();
            }
        }
        blocks.push(vec![v]);
        go(v + 1, adj, blocks, best);
        blocks.pop();
    }
    let adj = matrix(g);
    let mut best = g.n() + 1;
    go(0, &adj, &mut Vec::new(), &mut best);
    best.min(g.n())
}

/// Graph on `n` vertices whose edges are the set bits of `code` over the `n(n-1)/2` pairs.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
}
