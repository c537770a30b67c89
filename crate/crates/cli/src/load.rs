use std::path::Path;

use anyhow::{bail, Context, Result};
use xplain_core::circuit::parse_circuit;
use xplain_core::monotone::{parse_model_spec, ModelSpec, MonotoneModel};
use xplain_core::{Circuit, CircuitProblem, Instance, MonotoneProblem};

pub enum Classifier {
    Circuit { circuit: Circuit, negation: Option<Circuit> },
    Monotone(ModelSpec),
}

/// A classifier paired with the instance being explained.
pub enum Problem<'a> {
    Circuit(CircuitProblem),
    Monotone(MonotoneProblem<&'a ModelSpec>),
}

impl Classifier {
    /// Dispatches on the first keyword of the file: `nnf`, `fbdd` or `monotone`.
    pub fn load(path: &Path, negation: Option<&Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with("c ") && *l != "c")
            .and_then(|l| l.split_whitespace().next())
            .unwrap_or("");
        match first {
            "nnf" | "fbdd" => {
                let circuit = parse_circuit(&text).with_context(|| format!("parsing {}", path.display()))?;
                let negation = match negation {
                    Some(p) => {
                        let t = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                        Some(parse_circuit(&t).with_context(|| format!("parsing {}", p.display()))?)
                    }
                    None => None,
                };
                Ok(Classifier::Circuit { circuit, negation })
            }
            "monotone" => {
                if negation.is_some() {
                    bail!("--negation only applies to circuits");
                }
                let spec = parse_model_spec(&text).with_context(|| format!("parsing {}", path.display()))?;
                Ok(Classifier::Monotone(spec))
            }
            other => bail!("{}: unknown model format `{other}`", path.display()),
        }
    }

    pub fn num_features(&self) -> usize {
        match self {
            Classifier::Circuit { circuit, .. } => circuit.num_features(),
            Classifier::Monotone(m) => m.num_features(),
        }
    }

    /// The predicted class of `values`.
    pub fn predict(&self, values: &[f64]) -> Result<usize> {
        Ok(match self {
            Classifier::Circuit { circuit, .. } => circuit.evaluate(&to_bools(values)?)?,
            Classifier::Monotone(m) => m.predict(values)?,
        })
    }

    /// Builds the problem, computing the class when none is given and
    /// checking it otherwise.
    pub fn problem(&self, values: &[f64], class: Option<usize>) -> Result<Problem<'_>> {
        if values.len() != self.num_features() {
            bail!(
                "instance has {} values but the classifier has {} features",
                values.len(),
                self.num_features()
            );
        }
        let class = match class {
            Some(c) => c,
            None => self.predict(values)?,
        };
        let instance = Instance::new(values.to_vec(), class);
        Ok(match self {
            Classifier::Circuit { circuit, negation } => {
                Problem::Circuit(CircuitProblem::new(circuit.clone(), negation.clone(), &instance)?)
            }
            Classifier::Monotone(m) => Problem::Monotone(MonotoneProblem::new(m, &instance)?),
        })
    }
}

impl Problem<'_> {
    pub fn class(&self) -> usize {
        match self {
            Problem::Circuit(p) => p.class(),
            Problem::Monotone(p) => p.class(),
        }
    }
}

fn to_bools(values: &[f64]) -> Result<Vec<bool>> {
    values
        .iter()
        .map(|&v| {
            if v == 0.0 || v == 1.0 {
                Ok(v == 1.0)
            } else {
                bail!("circuit instances must be 0/1, found {v}")
            }
        })
        .collect()
}

/// Parses `v1,v2,...`.
pub fn parse_values(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("invalid instance value `{t}`")))
        .collect()
}

/// Parses a comma-separated feature list; the empty string is the empty set.
pub fn parse_features(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("invalid feature `{t}`")))
        .collect()
}
