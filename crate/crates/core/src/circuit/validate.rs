use std::collections::{BTreeSet, HashMap};

use super::{Circuit, CircuitKind, Node};

/// Determinism is only verified when exhaustive enumeration is affordable.
pub const DETERMINISM_ENUMERATION_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeterminismCheck {
    /// Every OR node had at most one true child on all `2^m` points.
    Verified,
    /// OR nodes with two children true at the same point.
    Violations(Vec<usize>),
    /// Too many features to enumerate; determinism is trusted.
    Assumed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub decomposability_violations: Vec<usize>,
    /// FBDD-tagged circuits only: decision nodes testing a variable that is
    /// tested again below them, or OR nodes without the decision shape.
    pub read_once_violations: Vec<usize>,
    pub determinism: DeterminismCheck,
    pub unreachable: Vec<usize>,
    /// Pairs `(later, earlier)` of structurally identical nodes.
    pub duplicates: Vec<(usize, usize)>,
}

impl ValidationReport {
    /// No decomposability, read-once or determinism violations. Unreachable
    /// and duplicate nodes are tolerated.
    pub fn is_clean(&self) -> bool {
        self.decomposability_violations.is_empty()
            && self.read_once_violations.is_empty()
            && !matches!(self.determinism, DeterminismCheck::Violations(_))
    }
}

pub(super) fn validate(c: &Circuit) -> ValidationReport {
    let decomposability_violations = c.decomposability_violations();
    let read_once_violations = if c.kind() == CircuitKind::Fbdd {
        read_once_violations(c)
    } else {
        Vec::new()
    };
    let determinism = if c.num_features() <= DETERMINISM_ENUMERATION_LIMIT {
        check_determinism(c)
    } else {
        DeterminismCheck::Assumed
    };
    let mut seen: HashMap<&Node, usize> = HashMap::new();
    let mut duplicates = Vec::new();
    for (j, node) in c.nodes().iter().enumerate() {
        if let Some(&first) = seen.get(node) {
            duplicates.push((j, first));
        } else {
            seen.insert(node, j);
        }
    }
    ValidationReport {
        decomposability_violations,
        read_once_violations,
        determinism,
        unreachable: c.unreachable_nodes(),
        duplicates,
    }
}

fn read_once_violations(c: &Circuit) -> Vec<usize> {
    let supports = c.supports();
    let mut bad = Vec::new();
    for (j, node) in c.nodes().iter().enumerate() {
        if !matches!(node, Node::Or(_)) {
            continue;
        }
        match c.as_decision(j) {
            Some((var, lo, hi)) => {
                if supports[lo].contains(var) || supports[hi].contains(var) {
                    bad.push(j);
                }
            }
            None => bad.push(j),
        }
    }
    bad
}

fn check_determinism(c: &Circuit) -> DeterminismCheck {
    let m = c.num_features();
    let mut bad = BTreeSet::new();
    let mut point = vec![false; m];
    for mask in 0u64..(1u64 << m) {
        for (i, p) in point.iter_mut().enumerate() {
            *p = mask >> i & 1 == 1;
        }
        let vals = c.node_values(&point);
        for (j, node) in c.nodes().iter().enumerate() {
            if let Node::Or(ch) = node {
                if ch.iter().filter(|&&x| vals[x]).count() > 1 {
                    bad.insert(j);
                }
            }
        }
    }
    if bad.is_empty() {
        DeterminismCheck::Verified
    } else {
        DeterminismCheck::Violations(bad.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_nnf;
    use super::*;

    #[test]
    fn shared_support_under_and() {
        let r = parse_nnf("nnf 2 2 1\nL 1\nA 2 0 0\n").unwrap().validate();
        assert_eq!(r.decomposability_violations, vec![1]);
        assert!(!r.is_clean());
    }

    #[test]
    fn running_example_is_clean() {
        let r = super::super::tests::running_example().validate();
        assert!(r.is_clean(), "{r:?}");
        assert_eq!(r.determinism, DeterminismCheck::Verified);
        assert!(r.unreachable.is_empty());
    }

    #[test]
    fn overlapping_or_is_not_deterministic() {
        let r = parse_nnf("nnf 2 2 1\nL 1\nO 0 2 0 0\n").unwrap().validate();
        assert_eq!(r.determinism, DeterminismCheck::Violations(vec![1]));
        assert!(r.decomposability_violations.is_empty());
    }

    #[test]
    fn unreachable_and_duplicate_nodes_are_reported() {
        let r = parse_nnf("nnf 4 2 2\nL 1\nL 2\nL 2\nA 2 0 1\n").unwrap().validate();
        assert_eq!(r.unreachable, vec![2]);
        assert_eq!(r.duplicates, vec![(2, 1)]);
        assert!(r.is_clean());
    }

    #[test]
    fn large_circuits_assume_determinism() {
        let r = parse_nnf("nnf 1 0 17\nL 17\n").unwrap().validate();
        assert_eq!(r.determinism, DeterminismCheck::Assumed);
    }
}
