//! Deterministic enumeration `s_0, s_1, ...` of the closed terms of a type.
//!
//! Terms are listed by ascending [`Term::weight`]. Within one weight the order
//! is by constructor: free variable, bound variable, object symbol, function
//! application, application, implication, universal quantifier, abstraction.
//! Inside a constructor, smaller weights of the leftmost component come first,
//! and components follow their own enumeration order. Every weight class is
//! finite, so every closed term receives a finite index.

use std::collections::HashMap;

use super::term::{BoundVar, FreeVar, Signature, Term};
use super::types::Type;

type Key = (Type, usize, Vec<Type>);

/// Memoizing enumerator over a fixed signature.
#[derive(Debug, Clone)]
pub struct TermEnumerator {
    sig: Signature,
    memo: HashMap<Key, Vec<Term>>,
    prefixes: HashMap<Type, (Vec<Term>, usize)>,
}

impl TermEnumerator {
    pub fn new(sig: Signature) -> Self {
        TermEnumerator {
            sig,
            memo: HashMap::new(),
            prefixes: HashMap::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// The first `k` closed terms of type `ty`.
    pub fn first(&mut self, ty: &Type, k: usize) -> Vec<Term> {
        self.fill(ty, k);
        self.prefixes[ty].0[..k].to_vec()
    }

    /// `s_j` of type `ty`.
    pub fn nth(&mut self, ty: &Type, j: usize) -> Term {
        self.fill(ty, j + 1);
        self.prefixes[ty].0[j].clone()
    }

    fn fill(&mut self, ty: &Type, k: usize) {
        let (mut terms, mut next) = self.prefixes.remove(ty).unwrap_or_default();
        if next == 0 {
            next = 1;
        }
        while terms.len() < k {
            let class = self.of_weight(ty, next, &[]);
            terms.extend(class);
            next += 1;
        }
        self.prefixes.insert(ty.clone(), (terms, next));
    }

    /// All canonical terms of type `ty` and exact weight `w` whose dangling
    /// bound variables are the binders listed in `scope` (outermost first).
    pub fn of_weight(&mut self, ty: &Type, w: usize, scope: &[Type]) -> Vec<Term> {
        let key = (ty.clone(), w, scope.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let out = self.generate(ty, w, scope);
        self.memo.insert(key, out.clone());
        out
    }

    fn generate(&mut self, ty: &Type, w: usize, scope: &[Type]) -> Vec<Term> {
        let mut out = Vec::new();
        if w == 0 {
            return out;
        }
        // free variable a_i with i + weight(ty) = w
        if w >= ty.weight() {
            out.push(Term::Free(FreeVar::new((w - ty.weight()) as u32, ty.clone())));
        }
        if w == 1 {
            for (level, st) in scope.iter().enumerate() {
                if st == ty {
                    out.push(Term::Bound(BoundVar::new(level as u32, ty.clone())));
                }
            }
            if *ty == Type::Zero {
                for c in &self.sig.objects {
                    out.push(Term::Object(c.clone()));
                }
            }
        }
        match ty {
            Type::Zero => {
                let funs: Vec<(String, usize)> = self.sig.functions.iter().map(|(f, n)| (f.clone(), *n)).collect();
                for (f, n) in funs {
                    let tys = vec![Type::Zero; n];
                    for args in self.tuples(&tys, w - 1, scope) {
                        out.push(Term::Fun(f.clone(), args));
                    }
                }
            }
            Type::One => {
                self.applications(w, scope, &mut out);
                for wa in 1..w.saturating_sub(1) {
                    let wb = w - 1 - wa;
                    let lhs = self.of_weight(&Type::One, wa, scope);
                    if lhs.is_empty() {
                        continue;
                    }
                    let rhs = self.of_weight(&Type::One, wb, scope);
                    for a in &lhs {
                        for b in &rhs {
                            out.push(Term::imp(a.clone(), b.clone()));
                        }
                    }
                }
                for sw in 1..w {
                    for sigma in Type::all_of_weight(sw) {
                        let mut inner = scope.to_vec();
                        inner.push(sigma.clone());
                        let x = BoundVar::new(scope.len() as u32, sigma);
                        for body in self.of_weight(&Type::One, w - sw, &inner) {
                            out.push(Term::All(x.clone(), Box::new(body)));
                        }
                    }
                }
            }
            Type::Product(comps) => {
                let bw: usize = comps.iter().map(Type::weight).sum();
                if w > bw {
                    let mut inner = scope.to_vec();
                    inner.extend(comps.iter().cloned());
                    let xs: Vec<BoundVar> = comps
                        .iter()
                        .enumerate()
                        .map(|(i, t)| BoundVar::new((scope.len() + i) as u32, t.clone()))
                        .collect();
                    for body in self.of_weight(&Type::One, w - bw, &inner) {
                        out.push(Term::Lam(xs.clone(), Box::new(body)));
                    }
                }
            }
        }
        out
    }

    fn applications(&mut self, w: usize, scope: &[Type], out: &mut Vec<Term>) {
        for hw in 1..w {
            let mut heads_types: Vec<Type> = (1..=hw).flat_map(Type::all_of_weight).filter(|t| t.components().is_some()).collect();
            for st in scope {
                if st.components().is_some() && !heads_types.contains(st) {
                    heads_types.push(st.clone());
                }
            }
            for pt in heads_types {
                let comps = pt.components().unwrap().to_vec();
                let rest = w - 1 - hw;
                if rest < comps.len() {
                    continue;
                }
                let heads = self.of_weight(&pt, hw, scope);
                if heads.is_empty() {
                    continue;
                }
                let tuples = self.tuples(&comps, rest, scope);
                for h in &heads {
                    for args in &tuples {
                        out.push(Term::App(Box::new(h.clone()), args.clone()));
                    }
                }
            }
        }
    }

    /// Argument lists of the given types with total weight `w`.
    fn tuples(&mut self, tys: &[Type], w: usize, scope: &[Type]) -> Vec<Vec<Term>> {
        let Some((first, rest)) = tys.split_first() else {
            return if w == 0 { vec![vec![]] } else { vec![] };
        };
        let mut out = Vec::new();
        if w < tys.len() {
            return out;
        }
        for fw in 1..=(w - rest.len()) {
            let heads = self.of_weight(first, fw, scope);
            if heads.is_empty() {
                continue;
            }
            let tails = self.tuples(rest, w - fw, scope);
            for h in &heads {
                for t in &tails {
                    let mut v = Vec::with_capacity(tys.len());
                    v.push(h.clone());
                    v.extend(t.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }
}

/// The first `k` closed terms of type `ty` over `sig`.
pub fn enumerate_terms(ty: &Type, sig: &Signature, k: usize) -> Vec<Term> {
    TermEnumerator::new(sig.clone()).first(ty, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn first_terms() {
        let sig = Signature::default();
        assert_eq!(enumerate_terms(&Type::One, &sig, 2), vec![Term::atom(0), Term::atom(1)]);
        assert_eq!(
            enumerate_terms(&Type::Zero, &sig, 2),
            vec![Term::free(0, Type::Zero), Term::Object("c".into())]
        );
        assert!(enumerate_terms(&Type::pred(&[Type::One]), &sig, 0).is_empty());
    }

    #[test]
    fn prefix_and_no_duplicates() {
        let sig = Signature::default();
        for ty in [Type::One, Type::Zero, Type::pred(&[Type::One]), Type::pred(&[Type::Zero, Type::One])] {
            let long = enumerate_terms(&ty, &sig, 60);
            for k in 0..60 {
                assert_eq!(enumerate_terms(&ty, &sig, k), long[..k].to_vec());
            }
            let canon: BTreeSet<Term> = long.iter().map(Term::canonical).collect();
            assert_eq!(canon.len(), long.len());
            for t in &long {
                assert_eq!(t.type_of().unwrap(), ty);
                assert!(t.is_closed());
                assert_eq!(*t, t.canonical());
            }
            let weights: Vec<usize> = long.iter().map(Term::weight).collect();
            assert!(weights.windows(2).all(|p| p[0] <= p[1]));
        }
    }

    #[test]
    fn lambda_identity_appears_early() {
        let sig = Signature::default();
        let id = Term::lam(vec![BoundVar::new(0, Type::One)], Term::Bound(BoundVar::new(0, Type::One)));
        let list = enumerate_terms(&Type::pred(&[Type::One]), &sig, 5);
        assert!(list.contains(&id), "{list:?}");
    }
}
