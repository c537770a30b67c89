use crate::circuit::{Circuit, CircuitError};
use crate::error::{Error, Result};
use crate::features::FeatureSet;
use crate::instance::{Instance, PartialAssignment};

use super::ClassifierOracle;

/// A boolean circuit classifier together with an instance to explain.
///
/// `X` is a weak AXp iff the circuit for the opposite class is inconsistent
/// once the features of `X` are fixed. For class 0 that circuit is the
/// classifier itself; for class 1 it is its negation.
#[derive(Debug, Clone)]
pub struct CircuitProblem {
    circuit: Circuit,
    negation: Option<Circuit>,
    point: Vec<bool>,
    class: usize,
}

impl CircuitProblem {
    /// `negation` is only needed for class-1 instances of non-FBDD circuits;
    /// FBDDs are negated on the fly.
    pub fn new(circuit: Circuit, negation: Option<Circuit>, instance: &Instance) -> Result<Self> {
        let m = circuit.num_features();
        if instance.num_features() != m {
            return Err(Error::Arity {
                expected: m,
                got: instance.num_features(),
            });
        }
        let point = instance.as_bools().ok_or(Error::NotBoolean)?;
        let predicted = circuit.evaluate(&point)?;
        if predicted != instance.class {
            return Err(Error::ClassMismatch {
                declared: instance.class,
                predicted,
            });
        }
        if !circuit.is_decomposable() {
            return Err(CircuitError::NotDecomposable {
                node: circuit.decomposability_violations()[0],
            }
            .into());
        }
        let negation = match (predicted, negation) {
            (0, _) => None,
            (_, Some(neg)) => {
                if neg.num_features() != m {
                    return Err(CircuitError::Arity {
                        expected: m,
                        got: neg.num_features(),
                    }
                    .into());
                }
                if neg.evaluate(&point)? != 0 {
                    return Err(Error::Invalid(
                        "negated circuit agrees with the classifier on the instance".into(),
                    ));
                }
                if !neg.is_decomposable() {
                    return Err(CircuitError::NotDecomposable {
                        node: neg.decomposability_violations()[0],
                    }
                    .into());
                }
                Some(neg)
            }
            (_, None) => Some(circuit.negate()?),
        };
        Ok(CircuitProblem {
            circuit,
            negation,
            point,
            class: predicted,
        })
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// The circuit whose models are the points of the other class: the
    /// classifier for class 0, its negation for class 1.
    pub fn target(&self) -> &Circuit {
        self.negation.as_ref().unwrap_or(&self.circuit)
    }

    pub fn point(&self) -> &[bool] {
        &self.point
    }

    pub fn class(&self) -> usize {
        self.class
    }
}

impl ClassifierOracle for CircuitProblem {
    fn num_features(&self) -> usize {
        self.circuit.num_features()
    }

    fn is_weak_axp(&self, set: &FeatureSet) -> Result<bool> {
        let pa = PartialAssignment::from_point(&self.point, set);
        Ok(!self.target().is_consistent_under(&pa)?)
    }
}
