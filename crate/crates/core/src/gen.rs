//! Seeded random generators for formulas, redexes and sequents.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::sequent::Sequent;
use crate::syntax::connectives::bot;
use crate::syntax::{BoundVar, Formula, FreeVar, Term, Type};

/// Implicational formula over `atoms` atoms and `_|_` with at most `size`
/// implications.
pub fn prop_formula<R: Rng>(rng: &mut R, atoms: u32, size: usize) -> Formula {
    if size == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.1) {
            bot()
        } else {
            Term::atom(rng.gen_range(0..atoms))
        };
    }
    let left = rng.gen_range(0..size);
    Term::imp(prop_formula(rng, atoms, left), prop_formula(rng, atoms, size - 1 - left))
}

/// Propositional sequent with up to two antecedent formulas and one or two
/// succedent formulas.
pub fn prop_sequent<R: Rng>(rng: &mut R, atoms: u32, size: usize) -> Sequent {
    let ante = (0..rng.gen_range(0..=2)).map(|_| prop_formula(rng, atoms, size / 2)).collect();
    let succ = (0..rng.gen_range(1..=2)).map(|_| prop_formula(rng, atoms, size)).collect();
    Sequent::new(ante, succ)
}

fn binder_type<R: Rng>(rng: &mut R) -> Type {
    match rng.gen_range(0..4) {
        0 => Type::Zero,
        1 => Type::One,
        2 => Type::pred(&[Type::Zero]),
        _ => Type::pred(&[Type::One]),
    }
}

/// Builds random well-typed terms over a scope of bound variables.
struct Gen<'a, R> {
    rng: &'a mut R,
    scope: Vec<BoundVar>,
}

impl<R: Rng> Gen<'_, R> {
    fn in_scope(&self, ty: &Type) -> Vec<Term> {
        self.scope.iter().filter(|x| x.ty == *ty).map(|x| Term::Bound(x.clone())).collect()
    }

    fn free(&mut self, ty: &Type) -> Term {
        Term::Free(FreeVar::new(self.rng.gen_range(0..3), ty.clone()))
    }

    fn term(&mut self, ty: &Type, depth: usize) -> Term {
        let bound = self.in_scope(ty);
        if !bound.is_empty() && self.rng.gen_bool(0.5) {
            return bound.choose(self.rng).unwrap().clone();
        }
        match ty {
            Type::Zero => {
                if self.rng.gen_bool(0.5) {
                    Term::Object("c".into())
                } else {
                    self.free(ty)
                }
            }
            Type::One => self.formula(depth),
            Type::Product(comps) => {
                if depth == 0 || self.rng.gen_bool(0.5) {
                    return self.free(ty);
                }
                let xs: Vec<BoundVar> = comps
                    .iter()
                    .enumerate()
                    .map(|(i, t)| BoundVar::new((self.scope.len() + i) as u32, t.clone()))
                    .collect();
                self.scope.extend(xs.iter().cloned());
                let body = self.formula(depth - 1);
                self.scope.truncate(self.scope.len() - xs.len());
                Term::Lam(xs, Box::new(body))
            }
        }
    }

    fn atomic(&mut self) -> Formula {
        match self.rng.gen_range(0..4) {
            0 => self.atomic_leaf(),
            1 => {
                let ty = Type::pred(&[Type::Zero]);
                let head = self.in_scope(&ty).choose(self.rng).cloned().unwrap_or_else(|| self.free(&ty));
                let arg = self.term(&Type::Zero, 0);
                Term::app(head, vec![arg])
            }
            2 => {
                let ty = Type::pred(&[Type::One]);
                let head = self.in_scope(&ty).choose(self.rng).cloned().unwrap_or_else(|| self.free(&ty));
                let arg = self.atomic_leaf();
                Term::app(head, vec![arg])
            }
            _ => self.free(&Type::One),
        }
    }

    fn atomic_leaf(&mut self) -> Formula {
        let bound = self.in_scope(&Type::One);
        bound.choose(self.rng).cloned().unwrap_or_else(|| self.free(&Type::One))
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 {
            return self.atomic();
        }
        match self.rng.gen_range(0..6) {
            0 => self.atomic(),
            1 | 2 => Term::imp(self.formula(depth - 1), self.formula(depth - 1)),
            3 | 4 => {
                let x = BoundVar::new(self.scope.len() as u32, binder_type(self.rng));
                self.scope.push(x.clone());
                let body = self.formula(depth - 1);
                self.scope.pop();
                Term::All(x, Box::new(body))
            }
            _ => self.redex_at(depth),
        }
    }

    fn redex_at(&mut self, depth: usize) -> Formula {
        let ty = binder_type(self.rng);
        let x = BoundVar::new(self.scope.len() as u32, ty.clone());
        self.scope.push(x.clone());
        let body = self.formula(depth.saturating_sub(1));
        self.scope.pop();
        let arg = self.term(&ty, depth.saturating_sub(2));
        Term::app(Term::Lam(vec![x], Box::new(body)), vec![arg])
    }
}

/// Closed well-typed formula with at most `max_size` constructors.
pub fn formula<R: Rng>(rng: &mut R, max_size: usize) -> Formula {
    loop {
        let depth = rng.gen_range(1..=4);
        let f = Gen { rng, scope: vec![] }.formula(depth).canonical();
        if f.size() <= max_size {
            debug_assert!(f.type_of().is_ok() && f.is_closed());
            return f;
        }
    }
}

/// Top-level redex `(lam x . A)(t)` with at most `max_size` constructors.
pub fn redex<R: Rng>(rng: &mut R, max_size: usize) -> Formula {
    loop {
        let depth = rng.gen_range(1..=3);
        let f = Gen { rng, scope: vec![] }.redex_at(depth).canonical();
        if f.size() <= max_size {
            return f;
        }
    }
}

/// Formula whose rank is at most `max_rank`.
pub fn formula_of_rank<R: Rng>(rng: &mut R, max_rank: usize) -> Formula {
    loop {
        let f = formula(rng, 20);
        if crate::rank::rank(&f) <= max_rank {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_terms_are_well_typed() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let f = formula(&mut rng, 30);
            assert_eq!(f.type_of().unwrap(), Type::One);
            assert!(f.is_closed());
            assert!(f.size() <= 30);
            let r = redex(&mut rng, 30);
            assert!(r.is_redex());
            assert!(r.contract().is_some());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a: Vec<Formula> = (0..5).map(|_| prop_formula(&mut ChaCha8Rng::seed_from_u64(3), 3, 6)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
    }
}
