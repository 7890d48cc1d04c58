//! Subterms, subterm-chain ranks and type heights.
//!
//! A quantified formula or an abstraction has one subterm per choice of free
//! variables. Since the rank does not depend on which variable is chosen,
//! [`subterm_representatives`] returns a single instance at the least free
//! variables not occurring in the term.

use std::collections::BTreeSet;

use crate::syntax::{fresh_free_var, FreeVar, Term, Type};

/// Terms of type 0 and free variables.
pub fn prime_term(t: &Term) -> bool {
    matches!(t, Term::Free(_)) || matches!(t.type_of(), Ok(Type::Zero))
}

pub fn subterm_representatives(t: &Term) -> Vec<Term> {
    if prime_term(t) {
        return vec![];
    }
    match t {
        Term::App(h, args) => match &**h {
            Term::Lam(..) => h.instantiate(args).into_iter().collect(),
            _ => args.clone(),
        },
        Term::Imp(a, b) => vec![(**a).clone(), (**b).clone()],
        Term::All(x, _) => {
            let v = fresh_free_var(&x.ty, &t.free_vars());
            t.instantiate(&[Term::Free(v)]).into_iter().collect()
        }
        Term::Lam(xs, _) => {
            let mut avoid: BTreeSet<FreeVar> = t.free_vars();
            let args: Vec<Term> = xs
                .iter()
                .map(|x| {
                    let v = fresh_free_var(&x.ty, &avoid);
                    avoid.insert(v.clone());
                    Term::Free(v)
                })
                .collect();
            t.instantiate(&args).into_iter().collect()
        }
        _ => vec![],
    }
}

/// Maximal subterm-chain length.
pub fn rank(t: &Term) -> usize {
    subterm_representatives(t)
        .iter()
        .map(|s| rank(s) + 1)
        .max()
        .unwrap_or(0)
}

/// Number of round-bracket characters in the printed type.
pub fn height(ty: &Type) -> usize {
    match ty {
        Type::Zero | Type::One => 0,
        Type::Product(c) => 2 + c.iter().map(height).sum::<usize>(),
    }
}
