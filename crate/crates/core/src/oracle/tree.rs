use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A formal iterated bracket of generators `x1 … xd`.
///
/// The weight of a tree is one more than the number of brackets it contains,
/// so a generator has weight 1 and a single bracket of generators weight 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Leaf(usize),
    Node(Vec<BracketTree>),
}

impl BracketTree {
    pub fn leaf(generator: usize) -> Self {
        BracketTree::Leaf(generator)
    }

    pub fn node(children: Vec<BracketTree>) -> Self {
        BracketTree::Node(children)
    }

    pub fn brackets(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 0,
            BracketTree::Node(children) => 1 + children.iter().map(BracketTree::brackets).sum::<usize>(),
        }
    }

    pub fn weight(&self) -> usize {
        self.brackets() + 1
    }

    /// Skew-symmetric normal form: children sorted in decreasing order at
    /// every node. Returns the sign of the reordering (`true` = negative),
    /// or `None` if the tree vanishes because two siblings coincide.
    pub fn normalize(&self) -> Option<(bool, BracketTree)> {
        match self {
            BracketTree::Leaf(_) => Some((false, self.clone())),
            BracketTree::Node(children) => {
                let mut negative = false;
                let mut normal = Vec::with_capacity(children.len());
                for child in children {
                    let (neg, c) = child.normalize()?;
                    negative ^= neg;
                    normal.push(c);
                }
                // insertion sort, counting transpositions
                for i in 1..normal.len() {
                    let mut j = i;
                    while j > 0 && normal[j - 1] < normal[j] {
                        normal.swap(j - 1, j);
                        negative = !negative;
                        j -= 1;
                    }
                }
                if normal.windows(2).any(|w| w[0] == w[1]) {
                    return None;
                }
                Some((negative, BracketTree::Node(normal)))
            }
        }
    }

    pub fn is_normal(&self) -> bool {
        match self.normalize() {
            Some((false, t)) => &t == self,
            _ => false,
        }
    }
}

impl Ord for BracketTree {
    /// By weight, then leaves by generator index, then nodes
    /// lexicographically on their child lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| match (self, other) {
            (BracketTree::Leaf(a), BracketTree::Leaf(b)) => a.cmp(b),
            (BracketTree::Leaf(_), BracketTree::Node(_)) => Ordering::Less,
            (BracketTree::Node(_), BracketTree::Leaf(_)) => Ordering::Greater,
            (BracketTree::Node(a), BracketTree::Node(b)) => a.cmp(b),
        })
    }
}

impl PartialOrd for BracketTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(i) => write!(f, "x{i}"),
            BracketTree::Node(children) => {
                write!(f, "[")?;
                for (k, c) in children.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl Serialize for BracketTree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> BracketTree {
        BracketTree::leaf(i)
    }

    fn br(children: Vec<BracketTree>) -> BracketTree {
        BracketTree::node(children)
    }

    #[test]
    fn weights() {
        assert_eq!(x(1).weight(), 1);
        assert_eq!(br(vec![x(1), x(2), x(3)]).weight(), 2);
        assert_eq!(br(vec![br(vec![x(2), x(1)]), x(1)]).weight(), 3);
    }

    #[test]
    fn normal_form_and_sign() {
        let t = br(vec![x(1), x(2)]);
        let (neg, n) = t.normalize().unwrap();
        assert!(neg);
        assert_eq!(n.to_string(), "[x2,x1]");
        assert!(br(vec![x(1), x(1)]).normalize().is_none());
        let nested = br(vec![x(1), br(vec![x(1), x(2)])]);
        let (neg, n) = nested.normalize().unwrap();
        // one swap inside, one swap at the root
        assert!(!neg);
        assert_eq!(n.to_string(), "[[x2,x1],x1]");
    }

    #[test]
    fn odd_swap_negates() {
        let a = br(vec![x(3), x(2), x(1)]);
        let b = br(vec![x(2), x(3), x(1)]);
        let (na, ta) = a.normalize().unwrap();
        let (nb, tb) = b.normalize().unwrap();
        assert_eq!(ta, tb);
        assert_ne!(na, nb);
    }

    fn arb_tree() -> impl Strategy<Value = BracketTree> {
        let leaf = (1usize..4).prop_map(BracketTree::Leaf);
        leaf.prop_recursive(3, 16, 3, |inner| prop::collection::vec(inner, 2..=3).prop_map(BracketTree::Node))
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(t in arb_tree()) {
            if let Some((_, n)) = t.normalize() {
                prop_assert!(n.is_normal());
                prop_assert_eq!(n.normalize(), Some((false, n.clone())));
                prop_assert_eq!(n.weight(), t.weight());
            }
        }
    }
}
