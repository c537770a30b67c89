//! NNF-family circuits used as binary classifiers.
//!
//! A [`Circuit`] is an immutable DAG stored in topological order: every child
//! index is strictly smaller than the index of its parent, and the root is
//! usually the last node. Circuits read from the `fbdd` decision format are
//! compiled into literal/AND/OR form by Shannon expansion and keep the
//! [`CircuitKind::Fbdd`] tag, which is what makes [`Circuit::negate`] cheap.

mod fbdd;
mod parse;
mod validate;

use std::fmt;

use thiserror::Error;

use crate::features::FeatureSet;
use crate::instance::PartialAssignment;

pub use fbdd::FbddBuilder;
pub use parse::{parse_circuit, parse_fbdd, parse_nnf, write_fbdd, write_nnf};
pub use validate::{DeterminismCheck, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("node {node}: {message}")]
    Malformed { node: usize, message: String },
    #[error("circuit is not decomposable (AND node {node} has children sharing a variable)")]
    NotDecomposable { node: usize },
    #[error("negation unavailable: general d-DNNF circuits need an explicit negated circuit")]
    NegationUnavailable,
    #[error("expected a point over {expected} features, got {got}")]
    Arity { expected: usize, got: usize },
}

/// Declared family of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitKind {
    Ddnnf,
    Fbdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub feature: usize,
    pub positive: bool,
}

impl Literal {
    pub fn new(feature: usize, positive: bool) -> Self {
        Literal { feature, positive }
    }

    pub fn from_signed(lit: i64) -> Self {
        Literal {
            feature: lit.unsigned_abs() as usize,
            positive: lit > 0,
        }
    }

    pub fn is_satisfied_by(&self, value: bool) -> bool {
        value == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.feature)
        } else {
            write!(f, "-x{}", self.feature)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Literal(Literal),
    And(Vec<usize>),
    Or(Vec<usize>),
    True,
    False,
}

impl Node {
    pub fn children(&self) -> &[usize] {
        match self {
            Node::And(c) | Node::Or(c) => c,
            _ => &[],
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children().is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    nodes: Vec<Node>,
    root: usize,
    num_features: usize,
    kind: CircuitKind,
    decomposability_violation: Option<usize>,
}

impl Circuit {
    /// Checks structural well-formedness: children precede parents, literal
    /// features lie in `1..=num_features`, and AND/OR nodes are non-empty.
    pub fn new(
        nodes: Vec<Node>,
        root: usize,
        num_features: usize,
        kind: CircuitKind,
    ) -> Result<Self, CircuitError> {
        if root >= nodes.len() {
            return Err(CircuitError::Malformed {
                node: root,
                message: format!("root index out of range ({} nodes)", nodes.len()),
            });
        }
        for (j, node) in nodes.iter().enumerate() {
            match node {
                Node::Literal(l) if l.feature == 0 || l.feature > num_features => {
                    return Err(CircuitError::Malformed {
                        node: j,
                        message: format!("feature {} outside 1..={num_features}", l.feature),
                    })
                }
                Node::And(c) | Node::Or(c) => {
                    if c.is_empty() {
                        return Err(CircuitError::Malformed {
                            node: j,
                            message: "gate without children".into(),
                        });
                    }
                    if let Some(&bad) = c.iter().find(|&&ch| ch >= j) {
                        return Err(CircuitError::Malformed {
                            node: j,
                            message: format!("child {bad} does not precede its parent"),
                        });
                    }
                }
                _ => {}
            }
        }
        let mut circuit = Circuit {
            nodes,
            root,
            num_features,
            kind,
            decomposability_violation: None,
        };
        circuit.decomposability_violation = circuit.first_decomposability_violation();
        Ok(circuit)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, j: usize) -> &Node {
        &self.nodes[j]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.nodes.iter().map(|n| n.children().len()).sum()
    }

    pub fn num_features(&self) -> usize {
        self.num_features
    }

    pub fn kind(&self) -> CircuitKind {
        self.kind
    }

    pub fn is_decomposable(&self) -> bool {
        self.decomposability_violation.is_none()
    }

    /// Variables reachable below each node.
    pub fn supports(&self) -> Vec<FeatureSet> {
        let mut supports: Vec<FeatureSet> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let mut s = FeatureSet::empty(self.num_features);
            match node {
                Node::Literal(l) => {
                    s.insert(l.feature);
                }
                Node::And(c) | Node::Or(c) => {
                    for &ch in c {
                        s.union_with(&supports[ch]);
                    }
                }
                Node::True | Node::False => {}
            }
            supports.push(s);
        }
        supports
    }

    fn first_decomposability_violation(&self) -> Option<usize> {
        self.decomposability_violations().into_iter().next()
    }

    /// AND nodes whose children share a variable.
    pub(crate) fn decomposability_violations(&self) -> Vec<usize> {
        let supports = self.supports();
        let mut bad = Vec::new();
        for (j, node) in self.nodes.iter().enumerate() {
            if let Node::And(children) = node {
                let mut seen = FeatureSet::empty(self.num_features);
                for &ch in children {
                    if !seen.is_disjoint(&supports[ch]) {
                        bad.push(j);
                        break;
                    }
                    seen.union_with(&supports[ch]);
                }
            }
        }
        bad
    }

    fn check_arity(&self, len: usize) -> Result<(), CircuitError> {
        if len != self.num_features {
            return Err(CircuitError::Arity {
                expected: self.num_features,
                got: len,
            });
        }
        Ok(())
    }

    /// Truth value of every node at a full assignment.
    pub fn node_values(&self, point: &[bool]) -> Vec<bool> {
        let mut vals = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Literal(l) => l.is_satisfied_by(point[l.feature - 1]),
                Node::And(c) => c.iter().all(|&ch| vals[ch]),
                Node::Or(c) => c.iter().any(|&ch| vals[ch]),
                Node::True => true,
                Node::False => false,
            };
            vals.push(v);
        }
        vals
    }

    /// Class (0 or 1) predicted for a full boolean point.
    pub fn evaluate(&self, point: &[bool]) -> Result<usize, CircuitError> {
        self.check_arity(point.len())?;
        Ok(self.node_values(point)[self.root] as usize)
    }

    /// Replaces literals on fixed features by constants. Structure is kept
    /// as is; the result is tagged d-DNNF because constants break the
    /// decision shape that FBDD negation relies on.
    pub fn condition(&self, pa: &PartialAssignment) -> Circuit {
        if pa.is_empty() {
            return self.clone();
        }
        let nodes = self
            .nodes
            .iter()
            .map(|node| match node {
                Node::Literal(l) => match pa.get(l.feature) {
                    Some(v) if l.is_satisfied_by(v) => Node::True,
                    Some(_) => Node::False,
                    None => node.clone(),
                },
                _ => node.clone(),
            })
            .collect();
        Circuit {
            nodes,
            root: self.root,
            num_features: self.num_features,
            kind: CircuitKind::Ddnnf,
            decomposability_violation: self.decomposability_violation,
        }
    }

    /// Whether some assignment to the free variables makes the root true.
    /// One bottom-up pass, sound only for decomposable circuits.
    pub fn is_consistent(&self) -> Result<bool, CircuitError> {
        self.is_consistent_under(&PartialAssignment::free(self.num_features))
    }

    /// `condition(pa).is_consistent()` without materializing the conditioned circuit.
    pub fn is_consistent_under(&self, pa: &PartialAssignment) -> Result<bool, CircuitError> {
        if let Some(node) = self.decomposability_violation {
            return Err(CircuitError::NotDecomposable { node });
        }
        self.check_arity(pa.num_features())?;
        let mut vals = Vec::with_capacity(self.root + 1);
        for node in &self.nodes[..=self.root] {
            let v = match node {
                Node::Literal(l) => pa.get(l.feature).is_none_or(|b| l.is_satisfied_by(b)),
                Node::And(c) => c.iter().all(|&ch| vals[ch]),
                Node::Or(c) => c.iter().any(|&ch| vals[ch]),
                Node::True => true,
                Node::False => false,
            };
            vals.push(v);
        }
        Ok(vals[self.root])
    }

    /// Circuit computing `1 - κ`. Only FBDD-tagged circuits can be negated
    /// here (by swapping terminals); other circuits need a companion file.
    pub fn negate(&self) -> Result<Circuit, CircuitError> {
        if self.kind != CircuitKind::Fbdd {
            return Err(CircuitError::NegationUnavailable);
        }
        let nodes = self
            .nodes
            .iter()
            .map(|node| match node {
                Node::True => Node::False,
                Node::False => Node::True,
                other => other.clone(),
            })
            .collect();
        Ok(Circuit {
            nodes,
            root: self.root,
            num_features: self.num_features,
            kind: CircuitKind::Fbdd,
            decomposability_violation: self.decomposability_violation,
        })
    }

    /// Recognizes the compiled decision shape `(¬x ∧ lo) ∨ (x ∧ hi)` at node
    /// `j`, returning `(x, lo, hi)`.
    pub fn as_decision(&self, j: usize) -> Option<(usize, usize, usize)> {
        let Node::Or(ch) = &self.nodes[j] else { return None };
        let &[lo_and, hi_and] = &ch[..] else { return None };
        let (Node::And(lo), Node::And(hi)) = (&self.nodes[lo_and], &self.nodes[hi_and]) else {
            return None;
        };
        let (&[neg, lo], &[pos, hi]) = (&lo[..], &hi[..]) else { return None };
        match (&self.nodes[neg], &self.nodes[pos]) {
            (Node::Literal(a), Node::Literal(b))
                if !a.positive && b.positive && a.feature == b.feature =>
            {
                Some((a.feature, lo, hi))
            }
            _ => None,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    /// Nodes not reachable from the root.
    pub fn unreachable_nodes(&self) -> Vec<usize> {
        let mut reach = vec![false; self.nodes.len()];
        reach[self.root] = true;
        for j in (0..=self.root).rev() {
            if reach[j] {
                for &ch in self.nodes[j].children() {
                    reach[ch] = true;
                }
            }
        }
        (0..self.nodes.len()).filter(|&j| !reach[j]).collect()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::instance::PartialAssignment;

    pub(crate) fn running_example() -> Circuit {
        // (x1 ∧ (x2 ∨ (¬x2 ∧ x4))) ∨ (¬x1 ∧ x3 ∧ x4)
        let text = "nnf 13 12 4\nL 1\nL 2\nL -2\nL 4\nA 2 2 3\nO 2 2 1 4\nA 2 0 5\nL -1\nL 3\nL 4\nA 2 8 9\nA 2 7 10\nO 1 2 6 11\n";
        parse_nnf(text).unwrap()
    }

    fn formula(x: &[bool]) -> bool {
        (x[0] && (x[1] || x[3])) || (!x[0] && x[2] && x[3])
    }

    fn points(m: usize) -> impl Iterator<Item = Vec<bool>> {
        (0u32..1 << m).map(move |mask| (0..m).map(|i| mask >> i & 1 == 1).collect())
    }

    #[test]
    fn running_example_matches_formula() {
        let c = running_example();
        assert_eq!(c.evaluate(&[false, true, false, false]).unwrap(), 0);
        assert_eq!(c.evaluate(&[true, true, false, false]).unwrap(), 1);
        for p in points(4) {
            assert_eq!(c.evaluate(&p).unwrap() == 1, formula(&p), "{p:?}");
        }
    }

    #[test]
    fn constant_true_circuit() {
        let c = parse_nnf("nnf 1 0 2\nA 0\n").unwrap();
        for p in points(2) {
            assert_eq!(c.evaluate(&p).unwrap(), 1);
        }
    }

    #[test]
    fn conditioning_a_literal() {
        let c = parse_nnf("nnf 1 0 1\nL 1\n").unwrap();
        let mut pa = PartialAssignment::free(1);
        pa.fix(1, true);
        assert_eq!(c.condition(&pa).node(0), &Node::True);
        pa.fix(1, false);
        assert_eq!(c.condition(&pa).node(0), &Node::False);
    }

    #[test]
    fn conditioning_on_nothing_is_identity() {
        let c = running_example();
        let d = c.condition(&PartialAssignment::free(4));
        assert_eq!(c.nodes(), d.nodes());
    }

    #[test]
    fn consistency_of_running_example() {
        let c = running_example();
        let mut pa = PartialAssignment::free(4);
        pa.fix(1, false);
        assert!(c.condition(&pa).is_consistent().unwrap());
        pa.fix(3, false);
        let cond = c.condition(&pa);
        assert!(!cond.is_consistent().unwrap());
        assert!(!c.is_consistent_under(&pa).unwrap());
        assert!(!parse_nnf("nnf 1 0 1\nO 0 0\n").unwrap().is_consistent().unwrap());
    }

    #[test]
    fn consistency_rejects_non_decomposable() {
        let c = parse_nnf("nnf 3 2 1\nL 1\nL -1\nA 2 0 1\n").unwrap();
        assert!(!c.is_decomposable());
        assert_eq!(
            c.is_consistent(),
            Err(CircuitError::NotDecomposable { node: 2 })
        );
    }

    #[test]
    fn negation_needs_fbdd() {
        let c = running_example();
        assert_eq!(c.negate().unwrap_err(), CircuitError::NegationUnavailable);
        let f = parse_fbdd("fbdd 3 1\nT 0\nT 1\nN 1 0 1\n").unwrap();
        let g = f.negate().unwrap();
        assert_eq!(g.evaluate(&[true]).unwrap(), 0);
        assert_eq!(g.evaluate(&[false]).unwrap(), 1);
    }

    #[test]
    fn arity_is_checked() {
        let c = running_example();
        assert!(matches!(
            c.evaluate(&[true]),
            Err(CircuitError::Arity { expected: 4, got: 1 })
        ));
    }
}
