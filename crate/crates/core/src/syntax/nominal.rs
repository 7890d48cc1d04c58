use super::term::{BoundVar, FreeVar, Term};
use super::types::Type;
use crate::error::{Error, Result};

/// A term with designated holes `*1..*n`, each occurring exactly once.
///
/// Holes are free variables reserved for the purpose; plugging replaces them
/// verbatim, so a hole under a binder may receive that binder's variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NominalForm {
    template: Term,
    holes: Vec<FreeVar>,
}

/// Index space reserved for hole markers.
const HOLE_BASE: u32 = u32::MAX - 1024;

impl NominalForm {
    /// Marker for hole `*i` (1-based) of the given type.
    pub fn hole(i: u32, ty: Type) -> Term {
        Term::Free(FreeVar::new(HOLE_BASE + i, ty))
    }

    pub fn new(template: Term, hole_types: Vec<Type>) -> Result<Self> {
        let holes: Vec<FreeVar> = hole_types
            .into_iter()
            .enumerate()
            .map(|(i, ty)| FreeVar::new(HOLE_BASE + 1 + i as u32, ty))
            .collect();
        for h in &holes {
            let mut count = 0;
            template.visit(&mut |t| {
                if let Term::Free(v) = t {
                    if v.index == h.index {
                        count += 1;
                    }
                }
            });
            if count != 1 {
                return Err(Error::HoleMismatch(format!(
                    "hole *{} occurs {count} times",
                    h.index - HOLE_BASE
                )));
            }
        }
        let mut stray = None;
        template.visit(&mut |t| {
            if let Term::Free(v) = t {
                if v.index > HOLE_BASE && !holes.contains(v) {
                    stray = Some(v.index - HOLE_BASE);
                }
            }
        });
        if let Some(i) = stray {
            return Err(Error::HoleMismatch(format!("hole *{i} is undeclared or has the wrong type")));
        }
        Ok(NominalForm { template, holes })
    }

    pub fn hole_types(&self) -> Vec<Type> {
        self.holes.iter().map(|h| h.ty.clone()).collect()
    }

    /// Replaces `*1..*n` by `args`.
    pub fn plug(&self, args: &[Term]) -> Result<Term> {
        if args.len() != self.holes.len() {
            return Err(Error::HoleMismatch(format!(
                "{} holes, {} arguments",
                self.holes.len(),
                args.len()
            )));
        }
        for (h, a) in self.holes.iter().zip(args) {
            let ty = a.type_of()?;
            if ty != h.ty {
                return Err(Error::HoleMismatch(format!("argument {a} has type {ty}, hole needs {}", h.ty)));
            }
        }
        let out = plug_rec(&self.template, &self.holes, args, &mut Vec::new())?;
        out.type_of()?;
        Ok(out.canonical())
    }
}

fn plug_rec(t: &Term, holes: &[FreeVar], args: &[Term], scope: &mut Vec<BoundVar>) -> Result<Term> {
    Ok(match t {
        Term::Free(v) => match holes.iter().position(|h| h == v) {
            Some(i) => {
                let arg = &args[i];
                if let Some(d) = arg.dangling().into_iter().find(|d| !scope.contains(d)) {
                    return Err(Error::CaptureViolation(format!(
                        "{d} in {arg} is not bound around hole *{}",
                        i + 1
                    )));
                }
                arg.clone()
            }
            None => t.clone(),
        },
        Term::Bound(_) | Term::Object(_) => t.clone(),
        Term::Fun(f, xs) => Term::Fun(
            f.clone(),
            xs.iter().map(|a| plug_rec(a, holes, args, scope)).collect::<Result<_>>()?,
        ),
        Term::App(h, xs) => Term::App(
            Box::new(plug_rec(h, holes, args, scope)?),
            xs.iter().map(|a| plug_rec(a, holes, args, scope)).collect::<Result<_>>()?,
        ),
        Term::Imp(a, b) => Term::imp(plug_rec(a, holes, args, scope)?, plug_rec(b, holes, args, scope)?),
        Term::All(x, b) => {
            scope.push(x.clone());
            let body = plug_rec(b, holes, args, scope);
            scope.pop();
            Term::All(x.clone(), Box::new(body?))
        }
        Term::Lam(xs, b) => {
            let n = xs.len();
            scope.extend(xs.iter().cloned());
            let body = plug_rec(b, holes, args, scope);
            scope.truncate(scope.len() - n);
            Term::Lam(xs.clone(), Box::new(body?))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::connectives::bot;

    #[test]
    fn single_hole() {
        let nf = NominalForm::new(Term::imp(NominalForm::hole(1, Type::One), Term::atom(0)), vec![Type::One]).unwrap();
        assert_eq!(nf.plug(&[Term::atom(1)]).unwrap(), Term::imp(Term::atom(1), Term::atom(0)));
    }

    #[test]
    fn identity_plug() {
        let nf = NominalForm::new(NominalForm::hole(1, Type::One), vec![Type::One]).unwrap();
        assert_eq!(nf.plug(&[bot()]).unwrap(), bot());
    }

    #[test]
    fn repeated_hole_rejected() {
        let h = NominalForm::hole(1, Type::One);
        let err = NominalForm::new(Term::imp(h.clone(), h), vec![Type::One]).unwrap_err();
        assert!(matches!(err, Error::HoleMismatch(_)));
    }

    #[test]
    fn binder_variable_plugged_into_hole() {
        // all x0:1 . *1  with *1 := x0:1  gives  all x0:1 . x0:1
        let x = BoundVar::new(0, Type::One);
        let nf = NominalForm::new(
            Term::All(x.clone(), Box::new(NominalForm::hole(1, Type::One))),
            vec![Type::One],
        )
        .unwrap();
        assert_eq!(nf.plug(&[Term::Bound(x)]).unwrap(), bot());
    }

    #[test]
    fn unbound_argument_is_capture_violation() {
        let nf = NominalForm::new(NominalForm::hole(1, Type::One), vec![Type::One]).unwrap();
        let err = nf.plug(&[Term::Bound(BoundVar::new(3, Type::One))]).unwrap_err();
        assert!(matches!(err, Error::CaptureViolation(_)));
    }
}
