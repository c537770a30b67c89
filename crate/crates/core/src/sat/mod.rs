//! CNF formulas, DIMACS I/O and SAT decision procedures.

mod cnf;
mod dimacs;
mod external;
mod solver;

use thiserror::Error;

pub use cnf::{CnfFormula, VarPool};
pub use dimacs::{read_dimacs, write_dimacs};
pub use external::{parse_solver_output, solve_external, ExternalSolver};
pub use solver::{Branching, Solver, SolverConfig, SolverStats, SAT_TIMEOUT_ENV};

#[derive(Debug, Error)]
pub enum SatError {
    #[error("dimacs line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("resource limit exceeded before a decision was reached")]
    BudgetExceeded,
    #[error("model falsifies clause {clause}")]
    ModelVerification { clause: usize },
    #[error("failed to run external solver: {0}")]
    Process(#[from] std::io::Error),
    #[error("external solver timed out")]
    Timeout,
    #[error("unparsable solver output: {0}")]
    Output(String),
}

/// A total assignment; `values()[v - 1]` is the value of variable `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model(Vec<bool>);

impl Model {
    pub fn new(values: Vec<bool>) -> Self {
        Model(values)
    }

    pub fn value(&self, var: i32) -> bool {
        self.0[var.unsigned_abs() as usize - 1]
    }

    /// Whether the DIMACS literal is true.
    pub fn lit(&self, lit: i32) -> bool {
        self.value(lit) == (lit > 0)
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    Sat(Model),
    Unsat,
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat(_))
    }
}

/// One-shot decision of `f` under `assumptions` with the built-in solver.
pub fn solve(f: &CnfFormula, assumptions: &[i32]) -> Result<SatOutcome, SatError> {
    solve_with(f, assumptions, SolverConfig::from_env())
}

pub fn solve_with(
    f: &CnfFormula,
    assumptions: &[i32],
    config: SolverConfig,
) -> Result<SatOutcome, SatError> {
    Solver::from_formula(f, config).solve(assumptions)
}
