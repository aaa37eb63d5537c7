use std::time::Instant;

use serde::Serialize;

/// Outcome of one solver run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport<W> {
    pub answer: bool,
    pub witness: Option<W>,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveStats {
    /// Neighborhood diversity of the input graph.
    pub nd: usize,
    /// Number of ILP variables, for the ILP-backed solvers.
    pub ilp_vars: Option<usize>,
    /// Wall time in milliseconds, microsecond resolution.
    pub elapsed_ms: f64,
}

impl<W> SolveReport<W> {
    pub(crate) fn new(witness: Option<W>, nd: usize, ilp_vars: Option<usize>, started: Instant) -> Self {
        SolveReport {
            answer: witness.is_some(),
            witness,
            stats: SolveStats { nd, ilp_vars, elapsed_ms: elapsed_ms(started) },
        }
    }
}

pub fn elapsed_ms(started: Instant) -> f64 {
    started.elapsed().as_micros() as f64 / 1000.0
}
