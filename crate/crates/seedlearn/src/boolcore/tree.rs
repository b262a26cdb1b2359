use std::fmt;

use super::assignment::Assignment;

/// A binary decision tree; variables along any root-to-leaf path are
/// distinct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecisionTree {
    Leaf(bool),
    Node { var: u32, low: Box<DecisionTree>, high: Box<DecisionTree> },
}

impl DecisionTree {
    pub fn leaf(label: bool) -> Self {
        DecisionTree::Leaf(label)
    }

    pub fn node(var: u32, low: DecisionTree, high: DecisionTree) -> Self {
        DecisionTree::Node { var, low: Box::new(low), high: Box::new(high) }
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        match self {
            DecisionTree::Leaf(label) => *label,
            DecisionTree::Node { var, low, high } => {
                if a.get(*var) {
                    high.eval(a)
                } else {
                    low.eval(a)
                }
            }
        }
    }

    /// Number of leaves labeled 1.
    pub fn s1(&self) -> usize {
        match self {
            DecisionTree::Leaf(label) => usize::from(*label),
            DecisionTree::Node { low, high, .. } => low.s1() + high.s1(),
        }
    }

    /// A node is a key node if both child subtrees contain a 1-leaf.
    /// On a reduced tree (every constant-0 subtree collapsed to a
    /// 0-leaf) this is exactly "neither child is a 0-leaf", and it is
    /// the form that keeps the key-depth ≤ log2(s1) argument valid on
    /// unreduced trees as well.
    pub fn is_key_node(&self) -> bool {
        match self {
            DecisionTree::Leaf(_) => false,
            DecisionTree::Node { low, high, .. } => low.s1() > 0 && high.s1() > 0,
        }
    }

    pub fn max_var(&self) -> u32 {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { var, low, high } => (*var).max(low.max_var()).max(high.max_var()),
        }
    }
}

impl fmt::Display for DecisionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecisionTree::Leaf(label) => write!(f, "{}", u8::from(*label)),
            DecisionTree::Node { var, low, high } => write!(f, "({var} {low} {high})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_s1() {
        // x1 AND x2 as a tree: single 1-leaf.
        let t = DecisionTree::node(
            1,
            DecisionTree::leaf(false),
            DecisionTree::node(2, DecisionTree::leaf(false), DecisionTree::leaf(true)),
        );
        assert_eq!(t.s1(), 1);
        assert!(t.eval(&Assignment::parse("11").unwrap()));
        assert!(!t.eval(&Assignment::parse("10").unwrap()));
    }

    #[test]
    fn key_node_definition() {
        // Root of an XOR tree has two internal children: key node.
        let xor = DecisionTree::node(
            1,
            DecisionTree::node(2, DecisionTree::leaf(false), DecisionTree::leaf(true)),
            DecisionTree::node(2, DecisionTree::leaf(true), DecisionTree::leaf(false)),
        );
        assert!(xor.is_key_node());
        // An AND tree's root has a 0-leaf child: not a key node.
        let and = DecisionTree::node(
            1,
            DecisionTree::leaf(false),
            DecisionTree::node(2, DecisionTree::leaf(false), DecisionTree::leaf(true)),
        );
        assert!(!and.is_key_node());
    }
}
