//! Timing table over seeded, generated instances.

use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use ndsolve_core::generate::{random_instance, AnnotationParams, TemplateParams};
use ndsolve_core::{Instance, SolveStats};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::Problem;

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// JSON file with a list of cells; overrides the cell flags.
    #[arg(long)]
    suite: Option<PathBuf>,
    #[arg(long)]
    problem: Option<Problem>,
    /// Comma-separated type counts, one cell each.
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Number of seeds per cell, starting at `--seed`.
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    pairs: usize,
    #[arg(long, default_value_t = 0.5)]
    edge_prob: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Cell {
    pub problem: Problem,
    pub k: usize,
    pub n: usize,
    pub seeds: u64,
    #[serde(default)]
    pub first_seed: u64,
    #[serde(default = "default_pairs")]
    pub pairs: usize,
    #[serde(default = "default_edge_prob")]
    pub edge_prob: f64,
}

fn default_pairs() -> usize {
    20
}

fn default_edge_prob() -> f64 {
    0.5
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub problem: Problem,
    pub k: usize,
    pub n: usize,
    pub seeds: u64,
    pub median_ms: f64,
    pub max_ms: f64,
    pub max_nd: usize,
    pub max_q: Option<usize>,
    pub yes: usize,
}

/// Unusable suite: unreadable file, bad JSON, or a cell the generator rejects.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl BenchArgs {
    fn cells(&self) -> Result<Vec<Cell>, ConfigError> {
        if let Some(path) = &self.suite {
            let text =
                std::fs::read_to_string(path).map_err(|e| ConfigError(format!("reading {}: {e}", path.display())))?;
            return serde_json::from_str(&text).map_err(|e| ConfigError(format!("suite {}: {e}", path.display())));
        }
        let Some(problem) = self.problem else { return Ok(Vec::new()) };
        Ok(self
            .k
            .iter()
            .map(|&k| Cell {
                problem,
                k,
                n: self.n,
                seeds: self.seeds,
                first_seed: self.seed,
                pairs: self.pairs,
                edge_prob: self.edge_prob,
            })
            .collect())
    }
}

fn threads() -> usize {
    std::env::var("ND_SOLVE_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Generates and solves one seed of a cell.
fn solve_one(cell: &Cell, seed: u64) -> anyhow::Result<(bool, SolveStats)> {
    let template = TemplateParams { k: cell.k, n: cell.n, edge_probability: cell.edge_prob };
    let annotation = AnnotationParams { pairs: cell.pairs, ..AnnotationParams::default() };
    let instance = random_instance(cell.problem.kind(), template, annotation, seed)
        .map_err(|e| ConfigError(format!("cell {cell:?} seed {seed}: {e}")))?;
    Ok(match &instance {
        Instance::Motif(m) => {
            let r = ndsolve_core::motif::solve_motif(m)?;
            (r.answer, r.stats)
        }
        Instance::Paths(p) => {
            let r = ndsolve_core::paths::solve_paths(p)?;
            (r.answer, r.stats)
        }
        Instance::Precolor(c) => {
            let r = ndsolve_core::precolor::solve_precolor(c)?;
            (r.answer, r.stats)
        }
        Instance::Graph(_) => unreachable!("generator always annotates"),
    })
}

fn summarize(cell: &Cell, runs: &[(bool, SolveStats)]) -> Row {
    let mut times: Vec<f64> = runs.iter().map(|r| r.1.elapsed_ms).collect();
    times.sort_by(f64::total_cmp);
    let median_ms = if times.is_empty() {
        0.0
    } else if times.len() % 2 == 1 {
        times[times.len() / 2]
    } else {
        (times[times.len() / 2 - 1] + times[times.len() / 2]) / 2.0
    };
    Row {
        problem: cell.problem,
        k: cell.k,
        n: cell.n,
        seeds: cell.seeds,
        median_ms,
        max_ms: times.last().copied().unwrap_or(0.0),
        max_nd: runs.iter().map(|r| r.1.nd).max().unwrap_or(0),
        max_q: runs.iter().filter_map(|r| r.1.ilp_vars).max(),
        yes: runs.iter().filter(|r| r.0).count(),
    }
}

/// Runs every (cell, seed) job, in parallel up to `ND_SOLVE_THREADS`.
pub fn run_cells(cells: &[Cell]) -> anyhow::Result<Vec<Row>> {
    let jobs: Vec<(usize, u64)> = cells
        .iter()
        .enumerate()
        .flat_map(|(i, c)| (c.first_seed..c.first_seed + c.seeds).map(move |s| (i, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads()).build().context("building thread pool")?;
    let results: Vec<(usize, (bool, SolveStats))> = pool.install(|| {
        jobs.par_iter().map(|&(i, seed)| solve_one(&cells[i], seed).map(|r| (i, r))).collect::<anyhow::Result<_>>()
    })?;
    Ok(cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let runs: Vec<(bool, SolveStats)> = results.iter().filter(|r| r.0 == i).map(|r| r.1.clone()).collect();
            summarize(cell, &runs)
        })
        .collect())
}

pub fn run(args: &BenchArgs) -> anyhow::Result<()> {
    let rows = run_cells(&args.cells()?)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
        return Ok(());
    }
    println!("problem\tk\tn\tseeds\tmedian_ms\tmax_ms\tnd\tq\tyes");
    for r in &rows {
        let q = r.max_q.map_or("-".to_string(), |q| q.to_string());
        println!(
            "{}\t{}\t{}\t{}\t{:.3}\t{:.3}\t{}\t{q}\t{}",
            r.problem.name(),
            r.k,
            r.n,
            r.seeds,
            r.median_ms,
            r.max_ms,
            r.max_nd,
            r.yes
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_gives_empty_table() {
        assert!(run_cells(&[]).unwrap().is_empty());
    }

    #[test]
    fn cells_from_flags() {
        let args = BenchArgs {
            suite: None,
            problem: Some(Problem::Motif),
            k: vec![2, 4],
            n: 50,
            seeds: 3,
            seed: 7,
            pairs: 2,
            edge_prob: 0.5,
            json: false,
        };
        let cells = args.cells().unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[1].k, 4);
        assert_eq!(cells[0].first_seed, 7);
    }

    #[test]
    fn paths_cell_reports_q() {
        let cell = Cell { problem: Problem::Paths, k: 4, n: 200, seeds: 2, first_seed: 0, pairs: 5, edge_prob: 0.5 };
        let rows = run_cells(&[cell]).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].max_q.is_some());
        assert!(rows[0].max_nd <= 4);
    }

    #[test]
    fn suite_json_parses() {
        let cells: Vec<Cell> = serde_json::from_str(r#"[{"problem":"precolor","k":3,"n":40,"seeds":2}]"#).unwrap();
        assert_eq!(cells[0].pairs, 20);
        assert_eq!(cells[0].problem, Problem::Precolor);
    }
}
