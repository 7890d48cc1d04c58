use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::types::Type;
use crate::error::{Error, Result};

/// Free variable `a_index` of a fixed type. The pair identifies the variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeVar {
    pub index: u32,
    pub ty: Type,
}

/// Bound variable `x_index` of a fixed type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundVar {
    pub index: u32,
    pub ty: Type,
}

impl FreeVar {
    pub fn new(index: u32, ty: Type) -> Self {
        FreeVar { index, ty }
    }
}

impl BoundVar {
    pub fn new(index: u32, ty: Type) -> Self {
        BoundVar { index, ty }
    }
}

/// Object symbols and function letters available to terms of type 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub objects: BTreeSet<String>,
    pub functions: BTreeMap<String, usize>,
}

impl Default for Signature {
    /// One object symbol `c`, no function letters.
    fn default() -> Self {
        Signature {
            objects: BTreeSet::from(["c".to_string()]),
            functions: BTreeMap::new(),
        }
    }
}

impl Signature {
    pub fn new(objects: impl IntoIterator<Item = String>, functions: BTreeMap<String, usize>) -> Result<Self> {
        let objects: BTreeSet<String> = objects.into_iter().collect();
        if objects.is_empty() {
            return Err(Error::Signature("at least one object symbol is required".into()));
        }
        if let Some((name, _)) = functions.iter().find(|(_, &n)| n == 0) {
            return Err(Error::Signature(format!("function letter ${name} must take at least one argument")));
        }
        Ok(Signature { objects, functions })
    }

    /// Parses `{"objects": ["c", ...], "functions": {"f": 1, ...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Raw {
            objects: Vec<String>,
            #[serde(default)]
            functions: BTreeMap<String, usize>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Signature(e.to_string()))?;
        Signature::new(raw.objects, raw.functions)
    }

    /// Checks that every object symbol and function letter of `t` is declared
    /// with the right arity.
    pub fn admits(&self, t: &Term) -> Result<()> {
        let mut err = None;
        t.visit(&mut |s| {
            if err.is_some() {
                return;
            }
            match s {
                Term::Object(c) if !self.objects.contains(c) => {
                    err = Some(Error::Signature(format!("unknown object symbol '{c}")));
                }
                Term::Fun(f, args) => match self.functions.get(f) {
                    None => err = Some(Error::Signature(format!("unknown function letter ${f}"))),
                    Some(&n) if n != args.len() => {
                        err = Some(Error::Signature(format!("${f} takes {n} arguments, got {}", args.len())))
                    }
                    _ => {}
                },
                _ => {}
            }
        });
        err.map_or(Ok(()), Err)
    }
}

/// Terms of simple type theory with n-ary application and n-ary abstraction.
///
/// Bound variables are stored with explicit names; [`Term::canonical`] renames
/// every binder to its nesting depth, so alpha-equivalent terms become
/// structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Free(FreeVar),
    Bound(BoundVar),
    Object(String),
    Fun(String, Vec<Term>),
    App(Box<Term>, Vec<Term>),
    Imp(Box<Term>, Box<Term>),
    All(BoundVar, Box<Term>),
    Lam(Vec<BoundVar>, Box<Term>),
}

/// Formulas are terms of type 1.
pub type Formula = Term;

impl Term {
    pub fn free(index: u32, ty: Type) -> Term {
        Term::Free(FreeVar::new(index, ty))
    }

    /// Type-1 free variable `a_index:1`.
    pub fn atom(index: u32) -> Term {
        Term::free(index, Type::One)
    }

    pub fn imp(a: Term, b: Term) -> Term {
        Term::Imp(Box::new(a), Box::new(b))
    }

    pub fn all(x: BoundVar, body: Term) -> Term {
        Term::All(x, Box::new(body)).canonical()
    }

    pub fn lam(xs: Vec<BoundVar>, body: Term) -> Term {
        Term::Lam(xs, Box::new(body)).canonical()
    }

    pub fn app(head: Term, args: Vec<Term>) -> Term {
        Term::App(Box::new(head), args)
    }

    /// Computes the type, rejecting ill-typed constructions.
    pub fn type_of(&self) -> Result<Type> {
        match self {
            Term::Free(v) => Ok(v.ty.clone()),
            Term::Bound(v) => Ok(v.ty.clone()),
            Term::Object(_) => Ok(Type::Zero),
            Term::Fun(f, args) => {
                if args.is_empty() {
                    return Err(Error::IllTyped(format!("${f} applied to no arguments")));
                }
                for a in args {
                    if a.type_of()? != Type::Zero {
                        return Err(Error::IllTyped(format!("argument {a} of ${f} is not of type 0")));
                    }
                }
                Ok(Type::Zero)
            }
            Term::App(head, args) => {
                let ht = head.type_of()?;
                let comps = ht
                    .components()
                    .ok_or_else(|| Error::IllTyped(format!("{head} of type {ht} cannot be applied")))?;
                if comps.len() != args.len() {
                    return Err(Error::IllTyped(format!(
                        "{head} expects {} arguments, got {}",
                        comps.len(),
                        args.len()
                    )));
                }
                for (a, want) in args.iter().zip(comps) {
                    let got = a.type_of()?;
                    if &got != want {
                        return Err(Error::IllTyped(format!("argument {a} has type {got}, expected {want}")));
                    }
                }
                Ok(Type::One)
            }
            Term::Imp(a, b) => {
                for side in [a, b] {
                    let t = side.type_of()?;
                    if t != Type::One {
                        return Err(Error::IllTyped(format!("{side} of type {t} used as a formula")));
                    }
                }
                Ok(Type::One)
            }
            Term::All(_, body) => {
                let t = body.type_of()?;
                if t != Type::One {
                    return Err(Error::IllTyped(format!("quantified body {body} has type {t}")));
                }
                Ok(Type::One)
            }
            Term::Lam(xs, body) => {
                if xs.is_empty() {
                    return Err(Error::IllTyped("abstraction without binders".into()));
                }
                for (i, x) in xs.iter().enumerate() {
                    if xs[..i].contains(x) {
                        return Err(Error::IllTyped(format!("binder {x} repeated")));
                    }
                }
                let t = body.type_of()?;
                if t != Type::One {
                    return Err(Error::IllTyped(format!("abstraction body {body} has type {t}")));
                }
                Ok(Type::Product(xs.iter().map(|x| x.ty.clone()).collect()))
            }
        }
    }

    pub fn is_formula(&self) -> bool {
        matches!(self.type_of(), Ok(Type::One))
    }

    /// Atomic formulas: type-1 free variables and applications headed by a
    /// free variable.
    pub fn is_atomic(&self) -> bool {
        match self {
            Term::Free(v) => v.ty == Type::One,
            Term::App(h, _) => matches!(**h, Term::Free(_)),
            _ => false,
        }
    }

    /// `(lam x. A)(t)`.
    pub fn is_redex(&self) -> bool {
        matches!(self, Term::App(h, _) if matches!(**h, Term::Lam(..)))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Term::All(x, body) if x.ty == Type::One && matches!(&**body, Term::Bound(y) if y == x))
    }

    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self {
            Term::Fun(_, args) => args.iter().for_each(|a| a.visit(f)),
            Term::App(h, args) => {
                h.visit(f);
                args.iter().for_each(|a| a.visit(f));
            }
            Term::Imp(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Term::All(_, b) | Term::Lam(_, b) => b.visit(f),
            _ => {}
        }
    }

    pub fn free_vars(&self) -> BTreeSet<FreeVar> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let Term::Free(v) = t {
                out.insert(v.clone());
            }
        });
        out
    }

    pub fn occurs_free(&self, v: &FreeVar) -> bool {
        let mut found = false;
        self.visit(&mut |t| {
            if let Term::Free(w) = t {
                found |= w == v;
            }
        });
        found
    }

    /// Bound variables referenced but not bound inside this term.
    pub fn dangling(&self) -> BTreeSet<BoundVar> {
        fn go(t: &Term, scope: &mut Vec<BoundVar>, out: &mut BTreeSet<BoundVar>) {
            match t {
                Term::Bound(v) => {
                    if !scope.contains(v) {
                        out.insert(v.clone());
                    }
                }
                Term::Free(_) | Term::Object(_) => {}
                Term::Fun(_, args) => args.iter().for_each(|a| go(a, scope, out)),
                Term::App(h, args) => {
                    go(h, scope, out);
                    args.iter().for_each(|a| go(a, scope, out));
                }
                Term::Imp(a, b) => {
                    go(a, scope, out);
                    go(b, scope, out);
                }
                Term::All(x, b) => {
                    scope.push(x.clone());
                    go(b, scope, out);
                    scope.pop();
                }
                Term::Lam(xs, b) => {
                    let n = xs.len();
                    scope.extend(xs.iter().cloned());
                    go(b, scope, out);
                    scope.truncate(scope.len() - n);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.dangling().is_empty()
    }

    fn max_bound_index(&self) -> u32 {
        let mut m = 0;
        self.visit(&mut |t| match t {
            Term::Bound(v) | Term::All(v, _) => m = m.max(v.index),
            Term::Lam(xs, _) => m = xs.iter().fold(m, |m, x| m.max(x.index)),
            _ => {}
        });
        m
    }

    /// Renames every binder to `x_d`, where `d` counts the binders enclosing
    /// it (abstractions count one per variable). Dangling references are kept.
    pub fn canonical(&self) -> Term {
        fn go(t: &Term, stack: &mut Vec<(BoundVar, BoundVar)>) -> Term {
            match t {
                Term::Bound(v) => match stack.iter().rev().find(|(old, _)| old == v) {
                    Some((_, new)) => Term::Bound(new.clone()),
                    None => t.clone(),
                },
                Term::Free(_) | Term::Object(_) => t.clone(),
                Term::Fun(f, args) => Term::Fun(f.clone(), args.iter().map(|a| go(a, stack)).collect()),
                Term::App(h, args) => Term::App(Box::new(go(h, stack)), args.iter().map(|a| go(a, stack)).collect()),
                Term::Imp(a, b) => Term::Imp(Box::new(go(a, stack)), Box::new(go(b, stack))),
                Term::All(x, b) => {
                    let new = BoundVar::new(stack.len() as u32, x.ty.clone());
                    stack.push((x.clone(), new.clone()));
                    let body = go(b, stack);
                    stack.pop();
                    Term::All(new, Box::new(body))
                }
                Term::Lam(xs, b) => {
                    let base = stack.len();
                    let news: Vec<BoundVar> = xs
                        .iter()
                        .enumerate()
                        .map(|(i, x)| BoundVar::new((base + i) as u32, x.ty.clone()))
                        .collect();
                    for (x, n) in xs.iter().zip(&news) {
                        stack.push((x.clone(), n.clone()));
                    }
                    let body = go(b, stack);
                    stack.truncate(base);
                    Term::Lam(news, Box::new(body))
                }
            }
        }
        go(self, &mut Vec::new())
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        self.canonical() == other.canonical()
    }

    /// Simultaneous capture-avoiding substitution for bound variables.
    pub fn subst_bound(&self, map: &[(BoundVar, Term)]) -> Term {
        if map.is_empty() {
            return self.clone();
        }
        let mut fresh = map
            .iter()
            .map(|(v, t)| v.index.max(t.max_bound_index()))
            .fold(self.max_bound_index(), u32::max)
            + 1;
        subst_rec(self, map, &mut fresh)
    }

    /// Replaces free variable `v` by `t` everywhere.
    pub fn subst_free(&self, v: &FreeVar, t: &Term) -> Term {
        match self {
            Term::Free(w) if w == v => t.clone(),
            Term::Free(_) | Term::Bound(_) | Term::Object(_) => self.clone(),
            Term::Fun(f, args) => Term::Fun(f.clone(), args.iter().map(|a| a.subst_free(v, t)).collect()),
            Term::App(h, args) => Term::App(
                Box::new(h.subst_free(v, t)),
                args.iter().map(|a| a.subst_free(v, t)).collect(),
            ),
            Term::Imp(a, b) => Term::imp(a.subst_free(v, t), b.subst_free(v, t)),
            Term::All(x, b) => Term::All(x.clone(), Box::new(b.subst_free(v, t))),
            Term::Lam(xs, b) => Term::Lam(xs.clone(), Box::new(b.subst_free(v, t))),
        }
        .canonical()
    }

    /// `F[t]` for `self = all x. F[x]`, or `A[t1..tn]` for `self = lam x1..xn. A`.
    pub fn instantiate(&self, args: &[Term]) -> Result<Term> {
        let binders: Vec<BoundVar> = match self {
            Term::All(x, _) => vec![x.clone()],
            Term::Lam(xs, _) => xs.clone(),
            _ => return Err(Error::ShapeMismatch(format!("{self} is not a binder"))),
        };
        if binders.len() != args.len() {
            return Err(Error::ArityMismatch {
                expected: binders.len(),
                got: args.len(),
            });
        }
        for (x, a) in binders.iter().zip(args) {
            let ty = a.type_of()?;
            if ty != x.ty {
                return Err(Error::TypeMismatch {
                    expected: x.ty.clone(),
                    got: ty,
                });
            }
        }
        let body = match self {
            Term::All(_, b) | Term::Lam(_, b) => b,
            _ => unreachable!(),
        };
        let map: Vec<(BoundVar, Term)> = binders.into_iter().zip(args.iter().cloned()).collect();
        Ok(body.subst_bound(&map).canonical())
    }

    /// Contracts a top-level redex `(lam x. A)(t)` to `A[t]`.
    pub fn contract(&self) -> Option<Term> {
        match self {
            Term::App(h, args) if matches!(**h, Term::Lam(..)) => h.instantiate(args).ok(),
            _ => None,
        }
    }

    /// Finds `t` with `self.instantiate([t]) == candidate` for a quantified
    /// formula. `Ok(None)` means the variable does not occur and any term fits.
    pub fn match_instance(&self, candidate: &Term) -> Option<Option<Term>> {
        let Term::All(x, _) = self else {
            return None;
        };
        let marker = FreeVar::new(u32::MAX, x.ty.clone());
        let pattern = self.instantiate(&[Term::Free(marker.clone())]).ok()?;
        let candidate = candidate.canonical();
        let mut found: Option<Term> = None;
        if !match_rec(&pattern, &candidate, &marker, &mut found) {
            return None;
        }
        match &found {
            Some(t) => {
                let inst = self.instantiate(std::slice::from_ref(t)).ok()?;
                (inst == candidate).then_some(found)
            }
            None => (pattern == candidate).then_some(None),
        }
    }

    /// Number of constructors, with free variables weighted by index and type
    /// and binders by the weight of their type. Used by the enumeration.
    pub fn weight(&self) -> usize {
        match self {
            Term::Free(v) => v.index as usize + v.ty.weight(),
            Term::Bound(_) | Term::Object(_) => 1,
            Term::Fun(_, args) => 1 + args.iter().map(Term::weight).sum::<usize>(),
            Term::App(h, args) => 1 + h.weight() + args.iter().map(Term::weight).sum::<usize>(),
            Term::Imp(a, b) => 1 + a.weight() + b.weight(),
            Term::All(x, b) => x.ty.weight() + b.weight(),
            Term::Lam(xs, b) => xs.iter().map(|x| x.ty.weight()).sum::<usize>() + b.weight(),
        }
    }

    /// Plain constructor count.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

fn subst_rec(t: &Term, map: &[(BoundVar, Term)], fresh: &mut u32) -> Term {
    match t {
        Term::Bound(v) => match map.iter().find(|(w, _)| w == v) {
            Some((_, r)) => r.clone(),
            None => t.clone(),
        },
        Term::Free(_) | Term::Object(_) => t.clone(),
        Term::Fun(f, args) => Term::Fun(f.clone(), args.iter().map(|a| subst_rec(a, map, fresh)).collect()),
        Term::App(h, args) => Term::App(
            Box::new(subst_rec(h, map, fresh)),
            args.iter().map(|a| subst_rec(a, map, fresh)).collect(),
        ),
        Term::Imp(a, b) => Term::imp(subst_rec(a, map, fresh), subst_rec(b, map, fresh)),
        Term::All(x, b) => {
            let (xs, body) = under_binders(std::slice::from_ref(x), b, map, fresh);
            Term::All(xs.into_iter().next().unwrap(), Box::new(body))
        }
        Term::Lam(xs, b) => {
            let (xs, body) = under_binders(xs, b, map, fresh);
            Term::Lam(xs, Box::new(body))
        }
    }
}

fn under_binders(
    xs: &[BoundVar],
    body: &Term,
    map: &[(BoundVar, Term)],
    fresh: &mut u32,
) -> (Vec<BoundVar>, Term) {
    let inner: Vec<(BoundVar, Term)> = map.iter().filter(|(v, _)| !xs.contains(v)).cloned().collect();
    if inner.is_empty() {
        return (xs.to_vec(), body.clone());
    }
    let captured: BTreeSet<BoundVar> = inner.iter().flat_map(|(_, r)| r.dangling()).collect();
    let mut new_xs = Vec::with_capacity(xs.len());
    let mut renames = Vec::new();
    for x in xs {
        if captured.contains(x) {
            let y = BoundVar::new(*fresh, x.ty.clone());
            *fresh += 1;
            renames.push((x.clone(), Term::Bound(y.clone())));
            new_xs.push(y);
        } else {
            new_xs.push(x.clone());
        }
    }
    let body = if renames.is_empty() {
        body.clone()
    } else {
        subst_rec(body, &renames, fresh)
    };
    (new_xs, subst_rec(&body, &inner, fresh))
}

fn match_rec(pat: &Term, cand: &Term, x: &FreeVar, found: &mut Option<Term>) -> bool {
    match (pat, cand) {
        (Term::Free(v), _) if v == x => {
            let t = cand.canonical();
            match found {
                Some(prev) => *prev == t,
                None => {
                    *found = Some(t);
                    true
                }
            }
        }
        (Term::Fun(f, a), Term::Fun(g, b)) => f == g && a.len() == b.len() && a.iter().zip(b).all(|(p, c)| match_rec(p, c, x, found)),
        (Term::App(h1, a), Term::App(h2, b)) => {
            a.len() == b.len() && match_rec(h1, h2, x, found) && a.iter().zip(b).all(|(p, c)| match_rec(p, c, x, found))
        }
        (Term::Imp(a1, b1), Term::Imp(a2, b2)) => match_rec(a1, a2, x, found) && match_rec(b1, b2, x, found),
        (Term::All(y1, b1), Term::All(y2, b2)) => y1 == y2 && match_rec(b1, b2, x, found),
        (Term::Lam(y1, b1), Term::Lam(y2, b2)) => y1 == y2 && match_rec(b1, b2, x, found),
        _ => pat == cand,
    }
}

impl fmt::Display for FreeVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}:{}", self.index, self.ty)
    }
}

impl fmt::Display for BoundVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}:{}", self.index, self.ty)
    }
}

/// Fully parenthesized form accepted back by the parser.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Free(v) => write!(f, "{v}"),
            Term::Bound(v) => write!(f, "{v}"),
            Term::Object(c) => write!(f, "'{c}"),
            Term::Fun(name, args) => {
                write!(f, "${name}(")?;
                write_list(f, args)?;
                write!(f, ")")
            }
            Term::App(h, args) => {
                write!(f, "{h}(")?;
                write_list(f, args)?;
                write!(f, ")")
            }
            Term::Imp(a, b) => write!(f, "({a} -> {b})"),
            Term::All(x, b) => write!(f, "(all {x} . {b})"),
            Term::Lam(xs, b) => {
                write!(f, "(lam")?;
                for x in xs {
                    write!(f, " {x}")?;
                }
                write!(f, " . {b})")
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Term]) -> fmt::Result {
    for (i, t) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn types_of_terms() {
        assert_eq!(t("a0:1").type_of().unwrap(), Type::One);
        assert_eq!(t("a0:(1)(a1:1)").type_of().unwrap(), Type::One);
        assert_eq!(t("(lam x0:1 . x0:1)").type_of().unwrap(), Type::pred(&[Type::One]));
        let bad = Term::app(Term::free(0, Type::pred(&[Type::Zero])), vec![Term::atom(1)]);
        assert!(matches!(bad.type_of(), Err(Error::IllTyped(_))));
    }

    #[test]
    fn alpha_equivalence() {
        let a = Term::All(BoundVar::new(0, Type::One), Box::new(Term::Bound(BoundVar::new(0, Type::One))));
        let b = Term::All(BoundVar::new(5, Type::One), Box::new(Term::Bound(BoundVar::new(5, Type::One))));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&Term::atom(0)));
        let l0 = Term::Lam(vec![BoundVar::new(0, Type::One)], Box::new(Term::Bound(BoundVar::new(0, Type::One))));
        let l1 = Term::Lam(vec![BoundVar::new(1, Type::One)], Box::new(Term::Bound(BoundVar::new(1, Type::One))));
        assert!(l0.alpha_eq(&l1));
    }

    #[test]
    fn instantiation() {
        assert_eq!(t("(all x0:1 . x0:1)").instantiate(&[Term::atom(0)]).unwrap(), Term::atom(0));
        let p = Term::atom(3);
        assert_eq!(
            t("(lam x0:1 . (x0:1 -> x0:1))").instantiate(std::slice::from_ref(&p)).unwrap(),
            Term::imp(p.clone(), p)
        );
        let id = t("(lam x0:1 . x0:1)");
        assert_eq!(
            t("(all x0:(1) . x0:(1)(a0:1))").instantiate(std::slice::from_ref(&id)).unwrap(),
            Term::app(id, vec![Term::atom(0)])
        );
        assert!(matches!(
            t("(all x0:1 . x0:1)").instantiate(&[Term::free(0, Type::Zero)]),
            Err(Error::TypeMismatch { .. })
        ));
        assert!(matches!(
            t("(lam x0:1 . x0:1)").instantiate(&[]),
            Err(Error::ArityMismatch { expected: 1, got: 0 })
        ));
    }

    #[test]
    fn instantiation_avoids_capture() {
        // all x0:(1) . all x1:1 . x0:(1)(x1:1), instantiated with a term that
        // itself binds x1.
        let f = t("(all x0:(1) . (all x1:1 . x0:(1)(x1:1)))");
        let arg = t("(lam x1:1 . (all x0:1 . (x1:1 -> x0:1)))");
        let r = f.instantiate(std::slice::from_ref(&arg)).unwrap();
        assert_eq!(r.to_string(), "(all x0:1 . (lam x1:1 . (all x2:1 . (x1:1 -> x2:1)))(x0:1))");
    }

    #[test]
    fn matching_instances() {
        let f = t("(all x0:0 . (a0:(0)(x0:0) -> (all x1:0 . a1:(0,0)(x0:0, x1:0))))");
        let inst = f.instantiate(&[Term::Object("c".into())]).unwrap();
        assert_eq!(f.match_instance(&inst), Some(Some(Term::Object("c".into()))));
        assert_eq!(f.match_instance(&Term::atom(0)), None);
        let vacuous = t("(all x0:0 . a0:1)");
        assert_eq!(vacuous.match_instance(&Term::atom(0)), Some(None));
    }
}
