//! Feasibility of small integer programs over bounded nonnegative variables.
//!
//! The engine is a depth-first branch-and-bound with interval propagation.
//! All arithmetic is exact `i64`; inputs are limited to 32-bit magnitudes and
//! any accumulation that would overflow is reported as [`IlpError::Overflow`].

use std::fmt;

use crate::error::IlpError;

pub type VarId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
}

/// `coeffs · x (relation) rhs`. `coeffs` has one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<i64>,
    pub relation: Relation,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IlpProblem {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub constraints: Vec<LinearConstraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpSolution {
    pub values: Vec<i64>,
}

/// Result of running propagation to a fixpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// Tightened `(lower, upper)` per variable.
    Bounds(Vec<(i64, i64)>),
    Contradiction,
}

const LIMIT: i64 = i32::MAX as i64;

impl IlpProblem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_vars(&self) -> usize {
        self.lower.len()
    }

    /// Adds a variable with bounds `lower..=upper`. Existing constraints get a zero coefficient.
    pub fn add_var(&mut self, lower: i64, upper: i64) -> VarId {
        self.lower.push(lower);
        self.upper.push(upper);
        for c in &mut self.constraints {
            c.coeffs.push(0);
        }
        self.lower.len() - 1
    }

    /// Adds a constraint from sparse `(variable, coefficient)` terms. Repeated variables accumulate.
    pub fn add_constraint(&mut self, terms: &[(VarId, i64)], relation: Relation, rhs: i64) {
        let mut coeffs = vec![0; self.num_vars()];
        for &(v, a) in terms {
            coeffs[v] += a;
        }
        self.constraints.push(LinearConstraint { coeffs, relation, rhs });
    }

    pub fn validate(&self) -> Result<(), IlpError> {
        let n = self.num_vars();
        if self.upper.len() != n {
            return Err(IlpError::Malformed("bound vectors differ in length".into()));
        }
        for (v, (&lo, &hi)) in self.lower.iter().zip(&self.upper).enumerate() {
            if lo < 0 || lo > hi || hi > LIMIT {
                return Err(IlpError::Malformed(format!("variable {v} has bounds [{lo}, {hi}]")));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(IlpError::Malformed(format!("constraint {i} has {} coefficients", c.coeffs.len())));
            }
            if c.rhs.abs() > LIMIT || c.coeffs.iter().any(|a| a.abs() > LIMIT) {
                return Err(IlpError::Malformed(format!("constraint {i} exceeds 32-bit magnitude")));
            }
        }
        Ok(())
    }

    /// Whether `values` lies within bounds and satisfies every constraint.
    pub fn is_satisfied_by(&self, values: &[i64]) -> bool {
        if values.len() != self.num_vars() {
            return false;
        }
        let in_bounds = values.iter().enumerate().all(|(v, &x)| self.lower[v] <= x && x <= self.upper[v]);
        in_bounds
            && self.constraints.iter().all(|c| {
                let lhs: i128 = c.coeffs.iter().zip(values).map(|(&a, &x)| a as i128 * x as i128).sum();
                match c.relation {
                    Relation::Eq => lhs == c.rhs as i128,
                    Relation::Le => lhs <= c.rhs as i128,
                }
            })
    }
}

impl fmt::Display for IlpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {} constraints {}", self.num_vars(), self.constraints.len())?;
        for (v, (lo, hi)) in self.lower.iter().zip(&self.upper).enumerate() {
            writeln!(f, "bound x{v} {lo} {hi}")?;
        }
        for c in &self.constraints {
            let mut first = true;
            for (v, &a) in c.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
                match (first, a < 0) {
                    (true, false) => write!(f, "{a} x{v}")?,
                    (true, true) => write!(f, "-{} x{v}", -a)?,
                    (false, false) => write!(f, " + {a} x{v}")?,
                    (false, true) => write!(f, " - {} x{v}", -a)?,
                }
                first = false;
            }
            if first {
                write!(f, "0")?;
            }
            let rel = match c.relation {
                Relation::Eq => "=",
                Relation::Le => "<=",
            };
            writeln!(f, " {rel} {}", c.rhs)?;
        }
        Ok(())
    }
}

/// Sparse view of one `<=` row: `sign * (terms · x) <= sign * rhs`.
struct Row {
    terms: Vec<(VarId, i64)>,
    rhs: i64,
    index: usize,
}

fn rows(problem: &IlpProblem) -> Vec<Row> {
    let mut out = Vec::new();
    for (index, c) in problem.constraints.iter().enumerate() {
        let terms: Vec<(VarId, i64)> =
            c.coeffs.iter().enumerate().filter(|(_, &a)| a != 0).map(|(v, &a)| (v, a)).collect();
        if c.relation == Relation::Eq {
            out.push(Row { terms: terms.iter().map(|&(v, a)| (v, -a)).collect(), rhs: -c.rhs, index });
        }
        out.push(Row { terms, rhs: c.rhs, index });
    }
    out
}

fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

/// Tightens `domains` against `rows` until nothing changes. Returns `false` on contradiction.
fn propagate(rows: &[Row], domains: &mut [(i64, i64)]) -> Result<bool, IlpError> {
    loop {
        let mut changed = false;
        for row in rows {
            let overflow = || IlpError::Overflow(row.index);
            let mut min_activity: i64 = 0;
            for &(v, a) in &row.terms {
                let (lo, hi) = domains[v];
                let term = if a > 0 { a.checked_mul(lo) } else { a.checked_mul(hi) }.ok_or_else(overflow)?;
                min_activity = min_activity.checked_add(term).ok_or_else(overflow)?;
            }
            if min_activity > row.rhs {
                return Ok(false);
            }
            let slack = row.rhs.checked_sub(min_activity).ok_or_else(overflow)?;
            for &(v, a) in &row.terms {
                let (lo, hi) = &mut domains[v];
                if a > 0 {
                    let cap = lo.saturating_add(floor_div(slack, a));
                    if cap < *hi {
                        *hi = cap;
                        changed = true;
                    }
                } else {
                    let floor = hi.saturating_sub(floor_div(slack, -a));
                    if floor > *lo {
                        *lo = floor;
                        changed = true;
                    }
                }
                if *lo > *hi {
                    return Ok(false);
                }
            }
        }
        if !changed {
            return Ok(true);
        }
    }
}

/// Interval propagation to a fixpoint. Never removes an integer solution.
pub fn propagate_bounds(problem: &IlpProblem) -> Result<Propagation, IlpError> {
    problem.validate()?;
    let mut domains: Vec<(i64, i64)> = problem.lower.iter().copied().zip(problem.upper.iter().copied()).collect();
    if propagate(&rows(problem), &mut domains)? {
        Ok(Propagation::Bounds(domains))
    } else {
        Ok(Propagation::Contradiction)
    }
}

/// Finds a satisfying assignment, or `None` when the system is infeasible.
///
/// Branches on the unfixed variable with the smallest domain (lowest index on
/// ties), trying values in ascending order, so the result is deterministic.
pub fn solve_feasibility(problem: &IlpProblem) -> Result<Option<IlpSolution>, IlpError> {
    problem.validate()?;
    let rows = rows(problem);
    let domains: Vec<(i64, i64)> = problem.lower.iter().copied().zip(problem.upper.iter().copied()).collect();
    let found = search(&rows, domains)?;
    if let Some(values) = &found {
        assert!(problem.is_satisfied_by(values), "branch and bound produced an infeasible assignment");
    }
    Ok(found.map(|values| IlpSolution { values }))
}

fn search(rows: &[Row], mut domains: Vec<(i64, i64)>) -> Result<Option<Vec<i64>>, IlpError> {
    if !propagate(rows, &mut domains)? {
        return Ok(None);
    }
    let branch = domains
        .iter()
        .enumerate()
        .filter(|(_, (lo, hi))| lo < hi)
        .min_by_key(|&(v, (lo, hi))| (hi - lo, v))
        .map(|(v, _)| v);
    let Some(v) = branch else {
        return Ok(Some(domains.iter().map(|&(lo, _)| lo).collect()));
    };
    let (lo, hi) = domains[v];
    for value in lo..=hi {
        let mut child = domains.clone();
        child[v] = (value, value);
        if let Some(found) = search(rows, child)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}
