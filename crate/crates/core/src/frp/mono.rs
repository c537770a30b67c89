//! Relevancy for monotonic classifiers by abstraction refinement.
//!
//! A hypothesis CNF over selectors `s_1..s_m` describes the candidate sets
//! `P ∋ t` not yet ruled out. Each candidate is probed with two predictions
//! at the corners of its box. Candidates that are not weak AXp's rule out
//! every subset avoiding `F \ P` (positive clause); candidates that stay
//! weak AXp's without `t` rule out every superset of `P \ {t}` (negative
//! clause). A weak AXp that stops being one without `t` is a witness.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureSet;
use crate::instance::Instance;
use crate::monotone::{ModelError, MonotoneModel};
use crate::sat::{Branching, CnfFormula, SatOutcome, Solver, SolverConfig};
use crate::xp::{check_feature, extract_axp_containing, ClassifierOracle};

use super::{unknown_on_limit, FrpOutcome, FrpStats, FrpWitness, Relevancy, SatBackend};

/// Predictions at the lower and upper corners of the box left free by `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsProbe {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub lower_class: usize,
    pub upper_class: usize,
}

impl BoundsProbe {
    pub fn is_weak_axp(&self) -> bool {
        self.lower_class == self.upper_class
    }
}

/// A monotone model with an instance to explain. Counts predictions.
#[derive(Debug)]
pub struct MonotoneProblem<M> {
    model: M,
    values: Vec<f64>,
    class: usize,
    predictions: AtomicU64,
}

impl<M: MonotoneModel> MonotoneProblem<M> {
    /// Checks arity, that values lie in their domains and that the declared
    /// class is the predicted one.
    pub fn new(model: M, instance: &Instance) -> Result<Self> {
        let m = model.num_features();
        if instance.num_features() != m {
            return Err(Error::Arity {
                expected: m,
                got: instance.num_features(),
            });
        }
        for i in 1..=m {
            if !model.domain(i).contains(instance.value(i)) {
                return Err(Error::Invalid(format!(
                    "value {} of feature {i} lies outside its domain",
                    instance.value(i)
                )));
            }
        }
        let predicted = model.predict(&instance.values)?;
        if predicted != instance.class {
            return Err(Error::ClassMismatch {
                declared: instance.class,
                predicted,
            });
        }
        Ok(MonotoneProblem {
            model,
            values: instance.values.clone(),
            class: predicted,
            predictions: AtomicU64::new(1),
        })
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn class(&self) -> usize {
        self.class
    }

    /// Predictions made so far, including the one validating the instance.
    pub fn predict_calls(&self) -> u64 {
        self.predictions.load(Ordering::Relaxed)
    }

    fn predict(&self, point: &[f64]) -> Result<usize, ModelError> {
        self.predictions.fetch_add(1, Ordering::Relaxed);
        self.model.predict(point)
    }

    /// Two predictions: `v_L` and `v_U` agree with `v` on `P` and sit at
    /// the domain bounds elsewhere.
    pub fn bounds(&self, set: &FeatureSet) -> Result<BoundsProbe> {
        let m = self.values.len();
        let mut lower = self.values.clone();
        let mut upper = self.values.clone();
        for i in 1..=m {
            if !set.contains(i) {
                let d = self.model.domain(i);
                lower[i - 1] = d.lower;
                upper[i - 1] = d.upper;
            }
        }
        let lower_class = self.predict(&lower)?;
        let upper_class = self.predict(&upper)?;
        Ok(BoundsProbe {
            lower,
            upper,
            lower_class,
            upper_class,
        })
    }

    pub fn waxp_mono(&self, set: &FeatureSet) -> Result<bool> {
        Ok(self.bounds(set)?.is_weak_axp())
    }
}

impl<M: MonotoneModel> ClassifierOracle for MonotoneProblem<M> {
    fn num_features(&self) -> usize {
        self.values.len()
    }

    fn is_weak_axp(&self, set: &FeatureSet) -> Result<bool> {
        self.waxp_mono(set)
    }
}

/// `⋁_{i ∈ F \ P} s_i`. With `shrink`, literals are dropped while the
/// complement of the remaining ones is still not a weak AXp.
pub fn positive_clause<M: MonotoneModel>(
    problem: &MonotoneProblem<M>,
    picked: &FeatureSet,
    shrink: bool,
) -> Result<Vec<i32>> {
    let mut rest = picked.complement();
    if shrink {
        for i in picked.complement().iter() {
            let candidate = rest.without(i);
            if !problem.waxp_mono(&candidate.complement())? {
                rest = candidate;
            }
        }
    }
    Ok(rest.iter().map(|i| i as i32).collect())
}

/// `⋁_{i ∈ P \ {t}} ¬s_i`. With `shrink`, literals are dropped while the
/// remaining set is still a weak AXp.
pub fn negative_clause<M: MonotoneModel>(
    problem: &MonotoneProblem<M>,
    picked: &FeatureSet,
    t: usize,
    shrink: bool,
) -> Result<Vec<i32>> {
    let mut kept = picked.without(t);
    if shrink {
        for i in picked.without(t).iter() {
            let candidate = kept.without(i);
            if problem.waxp_mono(&candidate)? {
                kept = candidate;
            }
        }
    }
    Ok(kept.iter().map(|i| -(i as i32)).collect())
}

/// Two predictions.
pub fn is_necessary_mono<M: MonotoneModel>(problem: &MonotoneProblem<M>, t: usize) -> Result<bool> {
    crate::xp::is_necessary(problem, t)
}

#[derive(Debug, Clone)]
pub struct MonoConfig {
    pub backend: SatBackend,
    pub shrink: bool,
    /// Stop with `Unknown` after this many SAT calls.
    pub max_iterations: Option<u64>,
}

impl Default for MonoConfig {
    /// Built-in solver with clause-order branching, no shrinking.
    fn default() -> Self {
        let cfg = SolverConfig::from_env().with_branching(Branching::ClauseOrder);
        MonoConfig {
            backend: SatBackend::Builtin(cfg),
            shrink: false,
            max_iterations: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepAction {
    PositiveClause,
    NegativeClause,
    Witness,
}

/// One round of the refinement loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub picked: FeatureSet,
    pub lower_class: usize,
    pub upper_class: usize,
    pub action: StepAction,
    /// The clause added, empty for the witness step.
    pub clause: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonoOutcome {
    pub outcome: FrpOutcome,
    pub trace: Vec<TraceStep>,
}

enum Hypothesis {
    Incremental(Box<Solver>),
    Restart(CnfFormula),
}

impl Hypothesis {
    fn add(&mut self, clause: &[i32]) {
        match self {
            Hypothesis::Incremental(s) => {
                s.add_clause(clause);
            }
            Hypothesis::Restart(f) => f.add_clause(clause.to_vec()),
        }
    }

    fn num_clauses(&self) -> usize {
        match self {
            Hypothesis::Incremental(s) => s.formula().num_clauses(),
            Hypothesis::Restart(f) => f.num_clauses(),
        }
    }
}

pub fn decide_relevancy_mono<M: MonotoneModel>(
    problem: &MonotoneProblem<M>,
    t: usize,
    config: &MonoConfig,
) -> Result<MonoOutcome> {
    let m = problem.num_features();
    check_feature(t, m)?;
    let start_predictions = problem.predict_calls();
    let mut hyp = match &config.backend {
        SatBackend::Builtin(cfg) => {
            let mut s = Solver::with_config(cfg.clone());
            s.ensure_vars(m);
            Hypothesis::Incremental(Box::new(s))
        }
        SatBackend::External(_) => Hypothesis::Restart(CnfFormula::new(m)),
    };
    let assumption = [t as i32];
    let mut trace = Vec::new();
    let mut sat_calls = 0u64;

    let relevancy = loop {
        if config.max_iterations.is_some_and(|cap| sat_calls >= cap) {
            break Relevancy::Unknown;
        }
        sat_calls += 1;
        let outcome = match (&mut hyp, &config.backend) {
            (Hypothesis::Incremental(s), _) => unknown_on_limit(s.solve(&assumption))?,
            (Hypothesis::Restart(f), backend) => backend.solve_once(f, &assumption)?,
        };
        let model = match outcome {
            None => break Relevancy::Unknown,
            Some(SatOutcome::Unsat) => break Relevancy::Irrelevant,
            Some(SatOutcome::Sat(model)) => model,
        };
        let picked = FeatureSet::from_features(m, (1..=m).filter(|&i| model.value(i as i32)));
        debug_assert!(picked.contains(t));

        let probe = match with_model_limit(problem.bounds(&picked))? {
            Some(p) => p,
            None => break Relevancy::Unknown,
        };
        let (action, clause) = if !probe.is_weak_axp() {
            (StepAction::PositiveClause, positive_clause(problem, &picked, config.shrink))
        } else {
            match with_model_limit(problem.waxp_mono(&picked.without(t)))? {
                None => break Relevancy::Unknown,
                Some(false) => (StepAction::Witness, Ok(Vec::new())),
                Some(true) => (
                    StepAction::NegativeClause,
                    negative_clause(problem, &picked, t, config.shrink),
                ),
            }
        };
        let clause = match with_model_limit(clause)? {
            Some(c) => c,
            None => break Relevancy::Unknown,
        };
        trace.push(TraceStep {
            picked: picked.clone(),
            lower_class: probe.lower_class,
            upper_class: probe.upper_class,
            action,
            clause: clause.clone(),
        });
        if action == StepAction::Witness {
            match with_model_limit(extract_axp_containing(problem, &picked, t))? {
                Some(axp) => {
                    break Relevancy::Relevant(FrpWitness {
                        weak_set: picked,
                        axp,
                    })
                }
                None => break Relevancy::Unknown,
            }
        }
        // Every clause must cut off the model that produced it.
        if clause.iter().any(|&l| model.lit(l)) {
            return Err(Error::Invalid(format!(
                "clause {clause:?} does not exclude {picked}"
            )));
        }
        if clause.is_empty() {
            break Relevancy::Irrelevant;
        }
        hyp.add(&clause);
    };

    let stats = FrpStats {
        sat_calls,
        predict_calls: problem.predict_calls() - start_predictions,
        cnf_vars: m as u64,
        cnf_clauses: hyp.num_clauses() as u64,
    };
    Ok(MonoOutcome {
        outcome: FrpOutcome { relevancy, stats },
        trace,
    })
}

/// Prediction timeouts count as resource limits.
fn with_model_limit<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Model(ModelError::Timeout(_))) => Ok(None),
        Err(e) => Err(e),
    }
}
