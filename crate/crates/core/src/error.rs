use thiserror::Error;

use crate::circuit::CircuitError;
use crate::features::FeatureSet;
use crate::monotone::ModelError;
use crate::sat::SatError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error("feature {feature} outside 1..={num_features}")]
    FeatureOutOfRange { feature: usize, num_features: usize },
    #[error("instance has {got} values but the classifier has {expected} features")]
    Arity { expected: usize, got: usize },
    #[error("instance values must be 0 or 1 for circuit classifiers")]
    NotBoolean,
    #[error("instance declares class {declared} but the classifier predicts {predicted}")]
    ClassMismatch { declared: usize, predicted: usize },
    #[error("{set} is not a weak AXp")]
    NotWeakAxp { set: FeatureSet },
    #[error("witness check failed: {0}")]
    WitnessViolation(String),
    #[error("{num_features} features exceed the enumeration limit of {limit}")]
    TooManyFeatures { num_features: usize, limit: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
