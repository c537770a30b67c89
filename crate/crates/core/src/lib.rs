//! Feature necessity and relevancy for formal abductive explanations of
//! d-DNNF/FBDD circuits and monotonic classifiers.

pub mod circuit;
pub mod error;
pub mod features;
pub mod frp;
pub mod instance;
pub mod monotone;
pub mod record;
pub mod sat;
pub mod testgen;
pub mod xp;

pub use circuit::{Circuit, CircuitError, CircuitKind};
pub use error::{Error, Result};
pub use features::FeatureSet;
pub use frp::{FrpStats, FrpWitness, Relevancy, SatBackend};
pub use instance::{Instance, PartialAssignment};
pub use monotone::{ModelError, MonotoneModel};
pub use record::{Answer, QueryKind, QueryRecord, QueryStats};
pub use xp::{ClassifierOracle, CircuitProblem, Explanation};
pub use frp::mono::MonotoneProblem;
