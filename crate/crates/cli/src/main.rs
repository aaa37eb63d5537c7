//! `ndsolve`: neighborhood-diversity solvers from the command line.

mod bench;

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ndsolve_core::generate::{random_instance, AnnotationParams, ProblemKind, TemplateParams};
use ndsolve_core::nd::build_type_graph;
use ndsolve_core::paths::build_paths_ilp;
use ndsolve_core::precolor::{build_precolor_ilp, compute_color_categories, reduce_independent_types};
use ndsolve_core::report::elapsed_ms;
use ndsolve_core::{
    compute_type_partition, oracle, parse_instance, serialize_instance, ColoringWitness, Instance, MotifWitness,
    OracleError, PathsWitness, SolveReport,
};
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "ndsolve", version, about = "Exact graph solvers parameterized by neighborhood diversity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct IoArgs {
    /// Instance file; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
    /// Include the witness in the report.
    #[arg(long)]
    witness: bool,
    /// Also run the brute-force oracle and report agreement.
    #[arg(long)]
    check: bool,
    /// Print the integer program to standard error.
    #[arg(long)]
    dump_ilp: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the type partition and type graph.
    Nd(IoArgs),
    /// Solve Graph Motif.
    Motif(IoArgs),
    /// Solve vertex-disjoint paths.
    Paths(IoArgs),
    /// Solve precoloring extension.
    Precolor(IoArgs),
    /// Run a brute-force oracle.
    Oracle {
        problem: Problem,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Print a random instance.
    Gen(GenArgs),
    /// Time the solvers over generated instances.
    Bench(bench::BenchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Motif,
    Paths,
    Precolor,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Motif => "motif",
            Problem::Paths => "paths",
            Problem::Precolor => "precolor",
        }
    }

    pub fn kind(self) -> ProblemKind {
        match self {
            Problem::Motif => ProblemKind::Motif,
            Problem::Paths => ProblemKind::Paths,
            Problem::Precolor => ProblemKind::Precolor,
        }
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    problem: Problem,
    /// Number of types in the template.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Probability of each type-level edge.
    #[arg(long, default_value_t = 0.5)]
    edge_prob: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    palette: u32,
    #[arg(long, default_value_t = 3)]
    motif_size: usize,
    #[arg(long, default_value_t = 2)]
    pairs: usize,
    #[arg(long, default_value_t = 3)]
    colors: u32,
    #[arg(long, default_value_t = 0.3)]
    precolor_fraction: f64,
}

/// Failure with a dedicated exit status.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Guard(OracleError),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl Failure {
    fn status(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Guard(_) => 3,
            Failure::Other(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(e) | Failure::Other(e) => write!(f, "{e:#}"),
            Failure::Guard(e) => write!(f, "oracle refused: {e}"),
        }
    }
}

fn read_instance(io: &IoArgs) -> Result<Instance, Failure> {
    let text = match &io.input {
        Some(path) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::Input)?
        }
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input").map_err(Failure::Input)?;
            s
        }
    };
    parse_instance(&text).map_err(|e| Failure::Input(anyhow!(e)))
}

fn wrong_kind(expected: Problem, got: &Instance) -> Failure {
    Failure::Input(anyhow!("expected a {} instance, found {}", expected.name(), got.kind()))
}

fn yes_no(answer: bool) -> &'static str {
    if answer {
        "yes"
    } else {
        "no"
    }
}

fn round_ms(ms: f64) -> f64 {
    (ms * 1000.0).round() / 1000.0
}

fn motif_witness_json(w: &MotifWitness) -> Value {
    json!(w.vertices.iter().map(|v| v + 1).collect::<Vec<_>>())
}

fn paths_witness_json(w: &PathsWitness) -> Value {
    json!(w.paths.iter().map(|p| p.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn coloring_witness_json(w: &ColoringWitness) -> Value {
    let map: Map<String, Value> =
        w.color_of.iter().enumerate().map(|(v, &c)| ((v + 1).to_string(), json!(c))).collect();
    Value::Object(map)
}

fn witness_text(problem: Problem, witness: &Value) -> Vec<String> {
    let ids = |v: &Value| v.as_array().into_iter().flatten().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    match problem {
        Problem::Motif => vec![format!("witness: {}", ids(witness))],
        Problem::Paths => witness
            .as_array()
            .into_iter()
            .flatten()
            .enumerate()
            .map(|(i, p)| format!("path {}: {}", i + 1, ids(p)))
            .collect(),
        Problem::Precolor => {
            let pairs: Vec<String> =
                witness.as_object().into_iter().flatten().map(|(v, c)| format!("{v}:{c}")).collect();
            vec![format!("coloring: {}", pairs.join(" "))]
        }
    }
}

/// Report fields common to solver and oracle runs.
struct Outcome {
    problem: Problem,
    answer: bool,
    witness: Option<Value>,
    nd: usize,
    ilp_vars: Option<usize>,
    elapsed_ms: f64,
    check: Option<bool>,
}

impl Outcome {
    fn from_report<W>(problem: Problem, report: SolveReport<W>, to_json: impl Fn(&W) -> Value) -> Self {
        Outcome {
            problem,
            answer: report.answer,
            witness: report.witness.as_ref().map(to_json),
            nd: report.stats.nd,
            ilp_vars: report.stats.ilp_vars,
            elapsed_ms: report.stats.elapsed_ms,
            check: None,
        }
    }

    fn to_json(&self, with_witness: bool) -> Value {
        let mut stats = Map::new();
        stats.insert("nd".into(), json!(self.nd));
        if let Some(q) = self.ilp_vars {
            stats.insert("ilp_vars".into(), json!(q));
        }
        stats.insert("elapsed_ms".into(), json!(round_ms(self.elapsed_ms)));
        let mut out = Map::new();
        out.insert("problem".into(), json!(self.problem.name()));
        out.insert("answer".into(), json!(yes_no(self.answer)));
        if let (true, Some(w)) = (with_witness, &self.witness) {
            out.insert("witness".into(), w.clone());
        }
        out.insert("stats".into(), Value::Object(stats));
        if let Some(oracle_answer) = self.check {
            out.insert(
                "check".into(),
                json!({ "oracle_answer": yes_no(oracle_answer), "agree": oracle_answer == self.answer }),
            );
        }
        Value::Object(out)
    }

    fn print(&self, io: &IoArgs) {
        if io.json {
            println!("{}", self.to_json(io.witness));
            return;
        }
        println!("problem: {}", self.problem.name());
        println!("answer: {}", yes_no(self.answer));
        println!("nd: {}", self.nd);
        if let Some(q) = self.ilp_vars {
            println!("ilp_vars: {q}");
        }
        println!("elapsed_ms: {:.3}", self.elapsed_ms);
        if let (true, Some(w)) = (io.witness, &self.witness) {
            for line in witness_text(self.problem, w) {
                println!("{line}");
            }
        }
        if let Some(oracle_answer) = self.check {
            let verdict = if oracle_answer == self.answer { "agree" } else { "DISAGREE" };
            println!("check: oracle {}, {verdict}", yes_no(oracle_answer));
        }
    }
}

/// Oracle answer and witness for `instance`, or the size guard that stopped it.
fn run_oracle(problem: Problem, instance: &Instance) -> Result<Option<Value>, Failure> {
    let res = match (problem, instance) {
        (Problem::Motif, Instance::Motif(m)) => oracle::oracle_motif(m).map(|w| w.as_ref().map(motif_witness_json)),
        (Problem::Paths, Instance::Paths(p)) => oracle::oracle_paths(p).map(|w| w.as_ref().map(paths_witness_json)),
        (Problem::Precolor, Instance::Precolor(c)) => {
            oracle::oracle_precolor(c).map(|w| w.as_ref().map(coloring_witness_json))
        }
        (p, other) => return Err(wrong_kind(p, other)),
    };
    res.map_err(Failure::Guard)
}

fn dump_ilp(instance: &Instance) -> anyhow::Result<()> {
    let graph = instance.graph();
    let partition = compute_type_partition(graph);
    let h = build_type_graph(graph, &partition)?;
    match instance {
        Instance::Paths(p) => {
            let (ilp, categories) = build_paths_ilp(p, &partition, &h)?;
            eprintln!("# {} path categories", categories.len());
            eprint!("{ilp}");
        }
        Instance::Precolor(c) => {
            let reduced = reduce_independent_types(c, &partition);
            let categories = compute_color_categories(&reduced)?;
            let (ilp, subcategories) = build_precolor_ilp(&reduced, &categories)?;
            eprintln!("# {} color categories, {} subcategories", categories.len(), subcategories.len());
            eprint!("{ilp}");
        }
        _ => eprintln!("# no integer program for this problem"),
    }
    Ok(())
}

fn solve(problem: Problem, io: &IoArgs) -> Result<(), Failure> {
    let instance = read_instance(io)?;
    let mut outcome = match (problem, &instance) {
        (Problem::Motif, Instance::Motif(m)) => Outcome::from_report(
            problem,
            ndsolve_core::motif::solve_motif(m).map_err(anyhow::Error::from)?,
            motif_witness_json,
        ),
        (Problem::Paths, Instance::Paths(p)) => Outcome::from_report(
            problem,
            ndsolve_core::paths::solve_paths(p).map_err(anyhow::Error::from)?,
            paths_witness_json,
        ),
        (Problem::Precolor, Instance::Precolor(c)) => Outcome::from_report(
            problem,
            ndsolve_core::precolor::solve_precolor(c).map_err(anyhow::Error::from)?,
            coloring_witness_json,
        ),
        (p, other) => return Err(wrong_kind(p, other)),
    };
    if io.dump_ilp {
        dump_ilp(&instance)?;
    }
    if io.check {
        match run_oracle(problem, &instance) {
            Ok(w) => outcome.check = Some(w.is_some()),
            Err(e) => {
                outcome.print(io);
                return Err(e);
            }
        }
    }
    outcome.print(io);
    match outcome.check {
        Some(oracle_answer) if oracle_answer != outcome.answer => Err(Failure::Other(anyhow!(
            "solver answered {} but the oracle answered {}",
            yes_no(outcome.answer),
            yes_no(oracle_answer)
        ))),
        _ => Ok(()),
    }
}

fn oracle_only(problem: Problem, io: &IoArgs) -> Result<(), Failure> {
    let instance = read_instance(io)?;
    let started = Instant::now();
    let witness = run_oracle(problem, &instance)?;
    let elapsed = elapsed_ms(started);
    let outcome = Outcome {
        problem,
        answer: witness.is_some(),
        witness,
        nd: compute_type_partition(instance.graph()).k(),
        ilp_vars: None,
        elapsed_ms: elapsed,
        check: None,
    };
    outcome.print(io);
    Ok(())
}

fn nd(io: &IoArgs) -> Result<(), Failure> {
    let instance = read_instance(io)?;
    let graph = instance.graph();
    let partition = compute_type_partition(graph);
    let h = build_type_graph(graph, &partition).map_err(anyhow::Error::from)?;
    let edges: Vec<(usize, usize)> = h.edges().map(|(a, b)| (a + 1, b + 1)).collect();
    if io.json {
        let types: Vec<Value> = (0..partition.k())
            .map(|t| {
                json!({
                    "id": t + 1,
                    "size": partition.size(t),
                    "clique": partition.is_clique(t),
                    "members": partition.class(t).iter().map(|v| v + 1).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!("{}", json!({ "k": partition.k(), "types": types, "edges": edges }));
        return Ok(());
    }
    println!("k={}", partition.k());
    for t in 0..partition.k() {
        let kind = if partition.is_clique(t) { "clique" } else { "independent" };
        let members: Vec<String> = partition.class(t).iter().map(|v| (v + 1).to_string()).collect();
        println!("type {} size={} {kind} members: {}", t + 1, partition.size(t), members.join(" "));
    }
    let listed: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    println!("edges: {}", listed.join(" "));
    Ok(())
}

fn gen(args: &GenArgs) -> Result<(), Failure> {
    let template = TemplateParams { k: args.k, n: args.n, edge_probability: args.edge_prob };
    let annotation = AnnotationParams {
        palette: args.palette,
        motif_size: args.motif_size,
        pairs: args.pairs,
        num_colors: args.colors,
        precolor_fraction: args.precolor_fraction,
    };
    let instance = random_instance(args.problem.kind(), template, annotation, args.seed)
        .map_err(|e| Failure::Input(anyhow!(e)))?;
    print!("{}", serialize_instance(&instance));
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Nd(io) => nd(io),
        Command::Motif(io) => solve(Problem::Motif, io),
        Command::Paths(io) => solve(Problem::Paths, io),
        Command::Precolor(io) => solve(Problem::Precolor, io),
        Command::Oracle { problem, io } => oracle_only(*problem, io),
        Command::Gen(args) => gen(args),
        Command::Bench(args) => bench::run(args).map_err(|e| match e.downcast::<bench::ConfigError>() {
            Ok(cfg) => Failure::Input(anyhow!(cfg)),
            Err(e) => Failure::Other(e),
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
