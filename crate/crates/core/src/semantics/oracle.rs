//! Truth tables for the propositional fragment: type-1 free variables, `_|_`
//! and implication.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::sequent::Sequent;
use crate::syntax::{Formula, FreeVar, Term, Type};

fn atoms(f: &Formula, out: &mut BTreeSet<FreeVar>) -> Result<()> {
    match f {
        Term::Free(v) if v.ty == Type::One => {
            out.insert(v.clone());
            Ok(())
        }
        t if t.is_bottom() => Ok(()),
        Term::Imp(a, b) => {
            atoms(a, out)?;
            atoms(b, out)
        }
        _ => Err(Error::OutOfFragment(f.to_string())),
    }
}

/// Truth value of a propositional formula; unassigned atoms count as false.
pub fn prop_value(f: &Formula, v: &BTreeMap<FreeVar, bool>) -> bool {
    match f {
        Term::Free(x) => v.get(x).copied().unwrap_or(false),
        Term::Imp(a, b) => !prop_value(a, v) || prop_value(b, v),
        _ => false,
    }
}

/// An assignment of the atoms falsifying the sequent, if there is one.
pub fn propositional_countermodel(s: &Sequent) -> Result<Option<BTreeMap<FreeVar, bool>>> {
    let mut set = BTreeSet::new();
    for f in s.ante.iter().chain(&s.succ) {
        atoms(f, &mut set)?;
    }
    let vars: Vec<FreeVar> = set.into_iter().collect();
    if vars.len() > 20 {
        return Err(Error::OutOfFragment(format!("{} atoms is too many for a truth table", vars.len())));
    }
    for bits in 0u64..(1 << vars.len()) {
        let v: BTreeMap<FreeVar, bool> = vars.iter().enumerate().map(|(i, x)| (x.clone(), bits >> i & 1 == 1)).collect();
        if s.ante.iter().all(|f| prop_value(f, &v)) && !s.succ.iter().any(|f| prop_value(f, &v)) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Classical validity of a propositional sequent.
pub fn propositional_oracle(s: &Sequent) -> Result<bool> {
    Ok(propositional_countermodel(s)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(s: &str) -> Sequent {
        Sequent::parse(s).unwrap()
    }

    #[test]
    fn tautologies() {
        assert!(propositional_oracle(&sq("|- (((a0:1 -> a1:1) -> a0:1) -> a0:1)")).unwrap());
        assert!(propositional_oracle(&sq("_|_ |-")).unwrap());
        assert!(!propositional_oracle(&sq("|- a0:1")).unwrap());
        assert!(!propositional_oracle(&sq("|-")).unwrap());
        let cm = propositional_countermodel(&sq("(a0:1 -> a1:1) |- a1:1")).unwrap().unwrap();
        assert!(cm.values().all(|b| !b));
    }

    #[test]
    fn fragment() {
        assert!(matches!(propositional_oracle(&sq("|- (all x0:0 . a0:1)")), Err(Error::OutOfFragment(_))));
    }
}
