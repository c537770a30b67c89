use serde::{Deserialize, Serialize};

use crate::features::FeatureSet;

/// A point in feature space together with the class predicted for it.
///
/// Values are stored as `f64` for every classifier family; circuit
/// classifiers only accept `0.0` and `1.0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub values: Vec<f64>,
    pub class: usize,
}

impl Instance {
    pub fn new(values: Vec<f64>, class: usize) -> Self {
        Instance { values, class }
    }

    pub fn boolean(values: &[bool], class: usize) -> Self {
        Instance {
            values: values.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect(),
            class,
        }
    }

    pub fn num_features(&self) -> usize {
        self.values.len()
    }

    /// Value of feature `i` (1-based).
    pub fn value(&self, feature: usize) -> f64 {
        self.values[feature - 1]
    }

    /// Boolean view of the point, or `None` if some value is not 0/1.
    pub fn as_bools(&self) -> Option<Vec<bool>> {
        self.values
            .iter()
            .map(|&v| {
                if v == 0.0 {
                    Some(false)
                } else if v == 1.0 {
                    Some(true)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Features of a set fixed to their instance values; everything else is free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAssignment {
    fixed: Vec<Option<bool>>,
}

impl PartialAssignment {
    pub fn free(num_features: usize) -> Self {
        PartialAssignment {
            fixed: vec![None; num_features],
        }
    }

    /// Fixes every feature in `set` to its value in `point`.
    pub fn from_point(point: &[bool], set: &FeatureSet) -> Self {
        let mut pa = Self::free(point.len());
        for i in set.iter() {
            pa.fixed[i - 1] = Some(point[i - 1]);
        }
        pa
    }

    pub fn num_features(&self) -> usize {
        self.fixed.len()
    }

    pub fn fix(&mut self, feature: usize, value: bool) {
        self.fixed[feature - 1] = Some(value);
    }

    pub fn get(&self, feature: usize) -> Option<bool> {
        self.fixed.get(feature - 1).copied().flatten()
    }

    pub fn fixed_features(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.fixed
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| (i + 1, b)))
    }

    pub fn is_empty(&self) -> bool {
        self.fixed.iter().all(Option::is_none)
    }
}
