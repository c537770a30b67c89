use std::time::Instant;

use anyhow::{bail, Result};
use xplain_core::frp::ddnnf::decide_relevancy;
use xplain_core::frp::mono::{decide_relevancy_mono, is_necessary_mono, MonoConfig};
use xplain_core::frp::{FrpOutcome, SatBackend};
use xplain_core::testgen::enumerate_axps;
use xplain_core::xp::{extract_axp, is_necessary, ClassifierOracle, CountingOracle};
use xplain_core::{Answer, Error, FeatureSet, QueryKind, QueryRecord, QueryStats};

use crate::load::Problem;

#[derive(Debug, Clone, Default)]
pub struct QueryOptions {
    /// `builtin` or an external solver command.
    pub solver: Option<String>,
    pub shrink: bool,
    /// Seed for `axp`; the full feature set when absent.
    pub seed_set: Option<Vec<usize>>,
}

impl QueryOptions {
    fn backend(&self) -> Option<SatBackend> {
        match self.solver.as_deref() {
            None | Some("builtin") => None,
            Some(cmd) => Some(SatBackend::from_name(cmd)),
        }
    }
}

fn check_feature(m: usize, t: Option<usize>) -> Result<usize> {
    match t {
        Some(t) if (1..=m).contains(&t) => Ok(t),
        Some(t) => bail!("feature {t} out of range 1..={m}"),
        None => bail!("--feature is required"),
    }
}

/// Runs `f` against the problem's weak-AXp oracle and counts classifier
/// evaluations: predictions for monotone models, consistency checks for circuits.
fn with_oracle<T>(problem: &Problem, f: impl FnOnce(&dyn ClassifierOracle) -> Result<T, Error>) -> Result<(T, u64)> {
    match problem {
        Problem::Circuit(p) => {
            let counting = CountingOracle::new(p);
            let out = f(&counting)?;
            Ok((out, counting.calls()))
        }
        Problem::Monotone(p) => {
            let before = p.predict_calls();
            let out = f(p)?;
            Ok((out, p.predict_calls() - before))
        }
    }
}

pub fn run(
    kind: QueryKind,
    classifier: &str,
    values: &[f64],
    problem: &Problem,
    feature: Option<usize>,
    opts: &QueryOptions,
) -> Result<QueryRecord> {
    let m = values.len();
    let mut rec = QueryRecord::new(kind, classifier, values.to_vec(), problem.class());
    let start = Instant::now();
    match kind {
        QueryKind::Necessity => {
            let t = check_feature(m, feature)?;
            rec.feature = Some(t);
            let (yes, calls) = match problem {
                Problem::Monotone(p) => {
                    let before = p.predict_calls();
                    (is_necessary_mono(p, t)?, p.predict_calls() - before)
                }
                Problem::Circuit(_) => with_oracle(problem, |o| is_necessary(o, t))?,
            };
            rec.answer = Answer::from_bool(yes);
            rec.stats.predict_calls = calls;
        }
        QueryKind::Relevancy => {
            let t = check_feature(m, feature)?;
            rec.feature = Some(t);
            let outcome: FrpOutcome = match problem {
                Problem::Circuit(p) => decide_relevancy(p, t, &opts.backend().unwrap_or_default())?,
                Problem::Monotone(p) => {
                    let mut config = MonoConfig {
                        shrink: opts.shrink,
                        ..MonoConfig::default()
                    };
                    if let Some(b) = opts.backend() {
                        config.backend = b;
                    }
                    decide_relevancy_mono(p, t, &config)?.outcome
                }
            };
            rec = rec.with_relevancy(&outcome.relevancy);
            rec.stats = QueryStats::from_frp(&outcome.stats, 0.0);
        }
        QueryKind::Axp => {
            let seed = match &opts.seed_set {
                Some(ids) => {
                    for &i in ids {
                        check_feature(m, Some(i))?;
                    }
                    FeatureSet::from_features(m, ids.iter().copied())
                }
                None => FeatureSet::full(m),
            };
            let (found, calls) = with_oracle(problem, |o| match extract_axp(o, &seed) {
                Ok(e) => Ok(Some(e.features)),
                Err(Error::NotWeakAxp { .. }) => Ok(None),
                Err(e) => Err(e),
            })?;
            rec.answer = Answer::from_bool(found.is_some());
            rec.weak_set = Some(seed);
            rec.witness = found;
            rec.stats.predict_calls = calls;
        }
        QueryKind::Enumerate => {
            let (all, calls) = with_oracle(problem, |o| enumerate_axps(o))?;
            rec.answer = Answer::from_bool(!all.axps.is_empty());
            rec.axps = Some(all.axps);
            rec.stats.predict_calls = calls;
        }
    }
    rec.stats.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rec)
}
