//! Machine-readable query results, one JSON object per line.

use serde::{Deserialize, Serialize};

use crate::features::FeatureSet;
use crate::frp::{FrpStats, Relevancy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryKind {
    Necessity,
    Relevancy,
    Axp,
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct QueryStats {
    pub sat_calls: u64,
    pub predict_calls: u64,
    pub cnf_vars: u64,
    pub cnf_clauses: u64,
    pub wall_ms: f64,
}

impl QueryStats {
    pub fn from_frp(s: &FrpStats, wall_ms: f64) -> Self {
        QueryStats {
            sat_calls: s.sat_calls,
            predict_calls: s.predict_calls,
            cnf_vars: s.cnf_vars,
            cnf_clauses: s.cnf_clauses,
            wall_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub query: QueryKind,
    pub classifier: String,
    pub instance: Vec<f64>,
    pub class: usize,
    pub feature: Option<usize>,
    pub answer: Answer,
    /// The AXp backing a positive relevancy answer, or the AXp computed.
    pub witness: Option<FeatureSet>,
    pub weak_set: Option<FeatureSet>,
    /// Every AXp, for enumeration queries.
    pub axps: Option<Vec<FeatureSet>>,
    pub stats: QueryStats,
}

impl QueryRecord {
    pub fn new(query: QueryKind, classifier: impl Into<String>, instance: Vec<f64>, class: usize) -> Self {
        QueryRecord {
            query,
            classifier: classifier.into(),
            instance,
            class,
            feature: None,
            answer: Answer::Unknown,
            witness: None,
            weak_set: None,
            axps: None,
            stats: QueryStats::default(),
        }
    }

    /// Fills answer, witness and weak set from a relevancy outcome.
    pub fn with_relevancy(mut self, r: &Relevancy) -> Self {
        match r {
            Relevancy::Relevant(w) => {
                self.answer = Answer::Yes;
                self.witness = Some(w.axp.clone());
                self.weak_set = Some(w.weak_set.clone());
            }
            Relevancy::Irrelevant => self.answer = Answer::No,
            Relevancy::Unknown => self.answer = Answer::Unknown,
        }
        self
    }

    /// A relevancy record carries a witness iff the answer is yes.
    pub fn is_consistent(&self) -> bool {
        self.query != QueryKind::Relevancy || self.witness.is_some() == (self.answer == Answer::Yes)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frp::FrpWitness;

    #[test]
    fn json_round_trip_with_fixed_names() {
        let w = FrpWitness {
            weak_set: FeatureSet::from_features(4, [1, 2, 3]),
            axp: FeatureSet::from_features(4, [1, 3]),
        };
        let mut r = QueryRecord::new(QueryKind::Relevancy, "fig1.nnf", vec![0.0, 1.0, 0.0, 0.0], 0)
            .with_relevancy(&Relevancy::Relevant(w));
        r.feature = Some(3);
        r.stats.sat_calls = 1;
        let text = r.to_json();
        for key in ["\"query\":\"relevancy\"", "\"answer\":\"yes\"", "\"witness\":[1,3]", "\"sat_calls\":1", "\"wall_ms\""] {
            assert!(text.contains(key), "{text}");
        }
        let back: QueryRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.witness.unwrap().to_vec(), vec![1, 3]);
        assert!(r.is_consistent());
    }

    #[test]
    fn no_answer_has_no_witness() {
        let r = QueryRecord::new(QueryKind::Relevancy, "k", vec![1.0], 1).with_relevancy(&Relevancy::Irrelevant);
        assert_eq!(r.answer, Answer::No);
        assert!(r.witness.is_none() && r.is_consistent());
    }
}
