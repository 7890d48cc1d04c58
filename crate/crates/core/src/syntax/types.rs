use std::fmt;

use serde::{Serialize, Serializer};

/// Simple types: the individual type `0`, the truth-value type `1` and
/// relation types `(t1,...,tn)` with at least one component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Zero,
    One,
    Product(Vec<Type>),
}

impl Type {
    /// Builds a product type; returns `None` for an empty component list.
    pub fn product(components: Vec<Type>) -> Option<Type> {
        if components.is_empty() {
            None
        } else {
            Some(Type::Product(components))
        }
    }

    pub fn pred(components: &[Type]) -> Type {
        assert!(!components.is_empty(), "product type needs a component");
        Type::Product(components.to_vec())
    }

    pub fn components(&self) -> Option<&[Type]> {
        match self {
            Type::Product(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_formula_type(&self) -> bool {
        matches!(self, Type::One)
    }

    /// Structural size used by the term enumeration: base types weigh 1,
    /// a product weighs one more than the sum of its components.
    pub fn weight(&self) -> usize {
        match self {
            Type::Zero | Type::One => 1,
            Type::Product(c) => 1 + c.iter().map(Type::weight).sum::<usize>(),
        }
    }

    /// All types of exactly the given weight, in a fixed order.
    pub fn all_of_weight(weight: usize) -> Vec<Type> {
        match weight {
            0 => vec![],
            1 => vec![Type::Zero, Type::One],
            w => {
                let mut out = Vec::new();
                for comps in component_lists(w - 1) {
                    out.push(Type::Product(comps));
                }
                out
            }
        }
    }
}

/// Nonempty lists of types whose weights sum to `total`.
fn component_lists(total: usize) -> Vec<Vec<Type>> {
    let mut out = Vec::new();
    for first in 1..=total {
        for head in Type::all_of_weight(first) {
            if first == total {
                out.push(vec![head.clone()]);
            } else {
                for tail in component_lists(total - first) {
                    let mut v = vec![head.clone()];
                    v.extend(tail);
                    out.push(v);
                }
            }
        }
    }
    out
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Zero => write!(f, "0"),
            Type::One => write!(f, "1"),
            Type::Product(c) => {
                write!(f, "(")?;
                for (i, t) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Type {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_listing() {
        assert_eq!(Type::One.weight(), 1);
        assert_eq!(Type::pred(&[Type::One]).weight(), 2);
        assert_eq!(Type::all_of_weight(2), vec![Type::pred(&[Type::Zero]), Type::pred(&[Type::One])]);
        // (0,0) (0,1) (1,0) (1,1) ((0)) ((1))
        assert_eq!(Type::all_of_weight(3).len(), 6);
        for w in 1..6 {
            for t in Type::all_of_weight(w) {
                assert_eq!(t.weight(), w);
            }
        }
    }

    #[test]
    fn empty_product_rejected() {
        assert!(Type::product(vec![]).is_none());
    }
}
