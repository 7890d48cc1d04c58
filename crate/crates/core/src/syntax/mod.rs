//! Types, terms, substitution, defined connectives, enumeration and parsing.

pub mod connectives;
pub mod enumerate;
pub mod nominal;
pub mod parse;
pub mod term;
pub mod types;

use std::collections::BTreeSet;

pub use connectives::{and, bot, exists, neg, or};
pub use enumerate::{enumerate_terms, TermEnumerator};
pub use nominal::NominalForm;
pub use parse::{parse_formula, parse_formula_with, parse_term, parse_term_with, parse_type, ParseOptions};
pub use term::{BoundVar, Formula, FreeVar, Signature, Term};
pub use types::Type;

/// `a_i:ty` with the least `i` not in `avoid`.
pub fn fresh_free_var(ty: &Type, avoid: &BTreeSet<FreeVar>) -> FreeVar {
    (0..)
        .map(|i| FreeVar::new(i, ty.clone()))
        .find(|v| !avoid.contains(v))
        .expect("finite avoid set")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_variables() {
        let one = Type::One;
        assert_eq!(fresh_free_var(&one, &BTreeSet::new()), FreeVar::new(0, one.clone()));
        assert_eq!(fresh_free_var(&one, &BTreeSet::from([FreeVar::new(0, one.clone())])), FreeVar::new(1, one.clone()));
        let p = Type::pred(&[Type::One]);
        let avoid = BTreeSet::from([FreeVar::new(0, p.clone()), FreeVar::new(1, p.clone()), FreeVar::new(0, one)]);
        assert_eq!(fresh_free_var(&p, &avoid), FreeVar::new(2, p));
    }
}
