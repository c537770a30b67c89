//! Relevancy for d-DNNF circuits with a single SAT call.
//!
//! The encoding holds two copies of the circuit over a shared block of
//! selector variables `s_1..s_m`. Replica 0 says the picked set is a weak
//! AXp (the class-0 target circuit is inconsistent once picked features are
//! fixed); replica `t` says the picked set without `t` is not.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Node};
use crate::error::{Error, Result};
use crate::features::FeatureSet;
use crate::sat::{write_dimacs, CnfFormula, Model, SatOutcome};
use crate::xp::{check_feature, CircuitProblem};

use super::{check_and_extract, FrpOutcome, FrpStats, Relevancy, SatBackend};

#[derive(Debug, Clone)]
pub struct FrpEncoding {
    pub formula: CnfFormula,
    num_features: usize,
    num_nodes: usize,
    target: usize,
}

impl FrpEncoding {
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn num_features(&self) -> usize {
        self.num_features
    }

    /// DIMACS variable of selector `s_i`.
    pub fn selector(&self, feature: usize) -> i32 {
        feature as i32
    }

    /// DIMACS variable of node `j` in replica 0.
    pub fn node0(&self, j: usize) -> i32 {
        (self.num_features + 1 + j) as i32
    }

    /// DIMACS variable of node `j` in replica `t`.
    pub fn node_t(&self, j: usize) -> i32 {
        (self.num_features + self.num_nodes + 1 + j) as i32
    }

    /// `{i : s_i = 1}`.
    pub fn decode(&self, model: &Model) -> FeatureSet {
        FeatureSet::from_features(
            self.num_features,
            (1..=self.num_features).filter(|&i| model.value(self.selector(i))),
        )
    }

    /// DIMACS text with a `c s <i> -> <var>` comment per selector.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "c relevancy of feature {}", self.target);
        for i in 1..=self.num_features {
            let _ = writeln!(out, "c s {i} -> {}", self.selector(i));
        }
        out.push_str(&write_dimacs(&self.formula));
        out
    }
}

/// Encodes "some weak AXp containing `t` stays a weak AXp only with `t`" for
/// a class-0 `target` circuit at `point`.
pub fn encode(target: &Circuit, point: &[bool], t: usize) -> Result<FrpEncoding> {
    let m = target.num_features();
    if point.len() != m {
        return Err(Error::Arity {
            expected: m,
            got: point.len(),
        });
    }
    check_feature(t, m)?;
    if target.evaluate(point)? != 0 {
        return Err(Error::ClassMismatch {
            declared: 0,
            predicted: 1,
        });
    }
    let n = target.num_nodes();
    let mut enc = FrpEncoding {
        formula: CnfFormula::new(m + 2 * n),
        num_features: m,
        num_nodes: n,
        target: t,
    };
    for replica_t in [false, true] {
        for (j, node) in target.nodes().iter().enumerate() {
            let var = |j: usize| if replica_t { enc.node_t(j) } else { enc.node0(j) };
            let nj = var(j);
            let mut clauses: Vec<Vec<i32>> = Vec::new();
            match node {
                Node::Literal(l) => {
                    let i = l.feature;
                    if l.is_satisfied_by(point[i - 1]) || (replica_t && i == t) {
                        clauses.push(vec![nj]);
                    } else {
                        let s = enc.selector(i);
                        clauses.push(vec![-nj, -s]);
                        clauses.push(vec![nj, s]);
                    }
                }
                Node::True => clauses.push(vec![nj]),
                Node::False => clauses.push(vec![-nj]),
                Node::And(ch) => {
                    for &c in ch {
                        clauses.push(vec![-nj, var(c)]);
                    }
                    let mut long = vec![nj];
                    long.extend(ch.iter().map(|&c| -var(c)));
                    clauses.push(long);
                }
                Node::Or(ch) => {
                    for &c in ch {
                        clauses.push(vec![nj, -var(c)]);
                    }
                    let mut long = vec![-nj];
                    long.extend(ch.iter().map(|&c| var(c)));
                    clauses.push(long);
                }
            }
            for c in clauses {
                enc.formula.add_clause(c);
            }
        }
    }
    let root = target.root();
    let st = enc.selector(t);
    let (r0, rt) = (enc.node0(root), enc.node_t(root));
    enc.formula.add_clause(vec![-r0]);
    enc.formula.add_clause(vec![-st, rt]);
    enc.formula.add_clause(vec![st, -rt]);
    enc.formula.add_clause(vec![st]);
    Ok(enc)
}

pub fn encode_problem(problem: &CircuitProblem, t: usize) -> Result<FrpEncoding> {
    encode(problem.target(), problem.point(), t)
}

/// One SAT call on the encoding; a model yields a witness whose AXp is
/// extracted by deletion and checked.
pub fn decide_relevancy(problem: &CircuitProblem, t: usize, backend: &SatBackend) -> Result<FrpOutcome> {
    let enc = encode_problem(problem, t)?;
    let stats = FrpStats {
        sat_calls: 1,
        predict_calls: 0,
        cnf_vars: enc.formula.num_vars as u64,
        cnf_clauses: enc.formula.num_clauses() as u64,
    };
    let relevancy = match backend.solve_once(&enc.formula, &[])? {
        None => Relevancy::Unknown,
        Some(SatOutcome::Unsat) => Relevancy::Irrelevant,
        Some(SatOutcome::Sat(model)) => {
            let weak_set = enc.decode(&model);
            Relevancy::Relevant(check_and_extract(problem, weak_set, t)?)
        }
    };
    Ok(FrpOutcome { relevancy, stats })
}
