use super::{Circuit, CircuitError, CircuitKind, Literal, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DecisionNode {
    Terminal(bool),
    Decision { var: usize, lo: usize, hi: usize },
}

/// Incremental builder for free binary decision diagrams.
///
/// Nodes must be created children-first. [`FbddBuilder::build`] compiles the
/// diagram into NNF: each decision on `x` over `(lo, hi)` becomes
/// `(¬x ∧ lo) ∨ (x ∧ hi)`.
#[derive(Debug, Clone, Default)]
pub struct FbddBuilder {
    nodes: Vec<DecisionNode>,
    false_node: Option<usize>,
    true_node: Option<usize>,
}

impl FbddBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shared terminal node for `value`.
    pub fn terminal(&mut self, value: bool) -> usize {
        let slot = if value { &mut self.true_node } else { &mut self.false_node };
        if let Some(id) = *slot {
            return id;
        }
        let id = self.nodes.len();
        *slot = Some(id);
        self.nodes.push(DecisionNode::Terminal(value));
        id
    }

    /// Non-shared terminal, as read from a file that lists several.
    pub(crate) fn raw_terminal(&mut self, value: bool) -> usize {
        self.nodes.push(DecisionNode::Terminal(value));
        self.nodes.len() - 1
    }

    pub fn decision(&mut self, var: usize, lo: usize, hi: usize) -> usize {
        assert!(lo < self.nodes.len() && hi < self.nodes.len());
        self.nodes.push(DecisionNode::Decision { var, lo, hi });
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Compiles the sub-diagram rooted at `root` into an FBDD-tagged circuit
    /// over `num_features` variables. Read-once violations are not rejected
    /// here; they surface in [`Circuit::validate`].
    pub fn build(&self, root: usize, num_features: usize) -> Result<Circuit, CircuitError> {
        let mut map = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (j, dn) in self.nodes.iter().enumerate().take(root + 1) {
            match *dn {
                DecisionNode::Terminal(v) => {
                    map[j] = nodes.len();
                    nodes.push(if v { Node::True } else { Node::False });
                }
                DecisionNode::Decision { var, lo, hi } => {
                    if var == 0 || var > num_features {
                        return Err(CircuitError::Malformed {
                            node: j,
                            message: format!("variable {var} outside 1..={num_features}"),
                        });
                    }
                    let neg = nodes.len();
                    nodes.push(Node::Literal(Literal::new(var, false)));
                    let lo_and = nodes.len();
                    nodes.push(Node::And(vec![neg, map[lo]]));
                    let pos = nodes.len();
                    nodes.push(Node::Literal(Literal::new(var, true)));
                    let hi_and = nodes.len();
                    nodes.push(Node::And(vec![pos, map[hi]]));
                    map[j] = nodes.len();
                    nodes.push(Node::Or(vec![lo_and, hi_and]));
                }
            }
        }
        let root = map[root];
        Circuit::new(nodes, root, num_features, CircuitKind::Fbdd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compiles_a_single_decision() {
        let mut b = FbddBuilder::new();
        let f = b.terminal(false);
        let t = b.terminal(true);
        let root = b.decision(1, f, t);
        let c = b.build(root, 1).unwrap();
        assert_eq!(c.kind(), CircuitKind::Fbdd);
        assert_eq!(c.evaluate(&[true]).unwrap(), 1);
        assert_eq!(c.evaluate(&[false]).unwrap(), 0);
        assert!(c.is_decomposable());
    }

    #[test]
    fn repeated_test_is_reported() {
        let mut b = FbddBuilder::new();
        let f = b.terminal(false);
        let t = b.terminal(true);
        let inner = b.decision(1, f, t);
        let root = b.decision(1, f, inner);
        let c = b.build(root, 1).unwrap();
        assert!(!c.is_decomposable());
        assert!(!c.validate().read_once_violations.is_empty());
    }
}
