//! Neighborhood-diversity decomposition and exact solvers built on it.
//!
//! A graph of neighborhood diversity `k` splits into `k` classes of twins,
//! each a clique or an independent set, with every pair of classes either
//! fully joined or fully separated. The solvers here exploit that structure:
//!
//! - [`motif::solve_motif`] decides Graph Motif by enumerating connected sets
//!   of types and running a bipartite matching per set.
//! - [`paths::solve_paths`] decides p-Vertex-Disjoint Paths through an integer
//!   program over path categories.
//! - [`precolor::solve_precolor`] decides Precoloring Extension through an
//!   integer program over color subcategories.
//!
//! [`oracle`] holds exhaustive deciders for cross-checking at small sizes.

pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod ilp;
pub mod instance;
pub mod matching;
pub mod motif;
pub mod nd;
pub mod oracle;
pub mod paths;
pub mod precolor;
pub mod report;
pub mod validate;

pub use error::{
    GenerateError, GraphError, IlpError, OracleError, ParseError, SolveError, ValidationError, WitnessError,
};
pub use format::{parse_instance, serialize_instance};
pub use graph::{Graph, Vertex};
pub use instance::{
    Color, ColorMultiset, ColoringWitness, Instance, MotifInstance, MotifWitness, PathsInstance, PathsWitness,
    PrecolorInstance,
};
pub use nd::{build_type_graph, compute_type_partition, verify_partition, TypeGraph, TypePartition};
pub use report::{SolveReport, SolveStats};
