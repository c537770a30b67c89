//! Feature relevancy: is feature `t` contained in some AXp of the instance?

pub mod ddnnf;
pub mod mono;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureSet;
use crate::sat::{CnfFormula, ExternalSolver, SatError, SatOutcome, Solver, SolverConfig};
use crate::xp::{extract_axp_containing, is_axp, ClassifierOracle};

/// A weak AXp containing `t` whose every contained AXp also contains `t`,
/// and one such AXp.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrpWitness {
    pub weak_set: FeatureSet,
    pub axp: FeatureSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relevancy {
    Relevant(FrpWitness),
    Irrelevant,
    /// A solver or model resource limit was hit.
    Unknown,
}

impl Relevancy {
    pub fn is_relevant(&self) -> bool {
        matches!(self, Relevancy::Relevant(_))
    }

    pub fn witness(&self) -> Option<&FrpWitness> {
        match self {
            Relevancy::Relevant(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrpStats {
    pub sat_calls: u64,
    pub predict_calls: u64,
    pub cnf_vars: u64,
    pub cnf_clauses: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrpOutcome {
    pub relevancy: Relevancy,
    pub stats: FrpStats,
}

/// Where SAT queries go.
#[derive(Debug, Clone)]
pub enum SatBackend {
    Builtin(SolverConfig),
    External(ExternalSolver),
}

impl Default for SatBackend {
    fn default() -> Self {
        SatBackend::Builtin(SolverConfig::from_env())
    }
}

impl SatBackend {
    /// `"builtin"` or a shell command for an external DIMACS solver.
    pub fn from_name(name: &str) -> Self {
        if name == "builtin" {
            SatBackend::default()
        } else {
            SatBackend::External(ExternalSolver::new(name))
        }
    }

    /// One-shot solve; `None` when a resource limit was hit.
    pub(crate) fn solve_once(&self, f: &CnfFormula, assumptions: &[i32]) -> Result<Option<SatOutcome>> {
        let r = match self {
            SatBackend::Builtin(cfg) => Solver::from_formula(f, cfg.clone()).solve(assumptions),
            SatBackend::External(ext) => ext.solve(f, assumptions),
        };
        unknown_on_limit(r)
    }
}

pub(crate) fn unknown_on_limit(r: Result<SatOutcome, SatError>) -> Result<Option<SatOutcome>> {
    match r {
        Ok(o) => Ok(Some(o)),
        Err(SatError::BudgetExceeded | SatError::Timeout) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Checks `WAXp(P) ∧ ¬WAXp(P \ {t})`, then extracts an AXp from `P` by
/// ascending deletion and checks that it contains `t`.
pub fn check_and_extract<O: ClassifierOracle + ?Sized>(
    o: &O,
    weak_set: FeatureSet,
    t: usize,
) -> Result<FrpWitness> {
    if !weak_set.contains(t) {
        return Err(Error::WitnessViolation(format!("{weak_set} does not contain {t}")));
    }
    if !o.is_weak_axp(&weak_set)? {
        return Err(Error::WitnessViolation(format!("{weak_set} is not a weak AXp")));
    }
    if o.is_weak_axp(&weak_set.without(t))? {
        return Err(Error::WitnessViolation(format!(
            "{weak_set} is still a weak AXp without {t}"
        )));
    }
    let axp = extract_axp_containing(o, &weak_set, t)?;
    Ok(FrpWitness { weak_set, axp })
}

/// Full soundness check of a witness, for tests and `--verify`-style use.
pub fn verify_witness<O: ClassifierOracle + ?Sized>(o: &O, w: &FrpWitness, t: usize) -> Result<bool> {
    Ok(w.weak_set.contains(t)
        && o.is_weak_axp(&w.weak_set)?
        && !o.is_weak_axp(&w.weak_set.without(t))?
        && w.axp.is_subset(&w.weak_set)
        && w.axp.contains(t)
        && is_axp(o, &w.axp)?)
}
