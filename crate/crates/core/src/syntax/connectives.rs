//! Connectives defined from implication and the universal quantifier.

use super::term::{BoundVar, Formula, Term};
use super::types::Type;

/// `all x0:1 . x0:1`
pub fn bot() -> Formula {
    let x = BoundVar::new(0, Type::One);
    Term::All(x.clone(), Box::new(Term::Bound(x)))
}

/// `A -> _|_`
pub fn neg(a: Formula) -> Formula {
    Term::imp(a, bot())
}

/// `~A -> B`
pub fn or(a: Formula, b: Formula) -> Formula {
    Term::imp(neg(a), b)
}

/// `~(A -> ~B)`
pub fn and(a: Formula, b: Formula) -> Formula {
    neg(Term::imp(a, neg(b)))
}

/// `~ all x . ~A`
pub fn exists(x: BoundVar, body: Formula) -> Formula {
    neg(Term::all(x, neg(body)))
}

/// Right-associated conjunction of a nonempty list.
pub fn and_all(items: &[Formula]) -> Option<Formula> {
    let (last, init) = items.split_last()?;
    Some(init.iter().rev().fold(last.clone(), |acc, a| and(a.clone(), acc)))
}

/// Right-associated disjunction of a nonempty list.
pub fn or_all(items: &[Formula]) -> Option<Formula> {
    let (last, init) = items.split_last()?;
    Some(init.iter().rev().fold(last.clone(), |acc, a| or(a.clone(), acc)))
}

/// `Some(A)` when `f` is `A -> _|_`.
pub fn negated(f: &Formula) -> Option<&Formula> {
    match f {
        Term::Imp(a, b) if b.is_bottom() => Some(a),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definitions() {
        let p = Term::atom(0);
        let q = Term::atom(1);
        assert_eq!(bot().to_string(), "(all x0:1 . x0:1)");
        assert_eq!(neg(p.clone()), Term::imp(p.clone(), bot()));
        assert_eq!(or(p.clone(), q.clone()), Term::imp(Term::imp(p.clone(), bot()), q.clone()));
        assert_eq!(
            and(p.clone(), q.clone()),
            Term::imp(Term::imp(p.clone(), Term::imp(q.clone(), bot())), bot())
        );
        assert!(bot().is_bottom());
        assert!(Term::all(BoundVar::new(7, Type::One), Term::Bound(BoundVar::new(7, Type::One))).is_bottom());
        let ex = exists(BoundVar::new(0, Type::Zero), Term::app(Term::free(0, Type::pred(&[Type::Zero])), vec![Term::Bound(BoundVar::new(0, Type::Zero))]));
        assert!(ex.is_formula());
    }

    #[test]
    fn chains() {
        assert_eq!(and_all(&[]), None);
        assert_eq!(or_all(&[Term::atom(0)]), Some(Term::atom(0)));
    }
}
