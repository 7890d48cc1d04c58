//! Partial valuations read off axiom-free chains.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::engine::RChain;
use crate::error::{Error, Result};
use crate::sequent::Side;
use crate::syntax::{Formula, Term};

/// A finite, consistent assignment of truth values to formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialValuation {
    pub assignment: BTreeMap<Formula, bool>,
}

impl PartialValuation {
    pub fn get(&self, f: &Formula) -> Option<bool> {
        self.assignment.get(f).copied()
    }

    /// The values of type-1 free variables.
    pub fn atomic_assignment(&self) -> BTreeMap<Formula, bool> {
        self.assignment
            .iter()
            .filter(|(f, _)| matches!(f, Term::Free(_)))
            .map(|(f, v)| (f.clone(), *v))
            .collect()
    }

    /// Free variables occurring in formulas of the domain.
    fn free_vars(&self) -> BTreeSet<crate::syntax::FreeVar> {
        self.assignment.keys().flat_map(Term::free_vars).collect()
    }
}

impl Serialize for PartialValuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.assignment.len()))?;
        for (f, v) in &self.assignment {
            m.serialize_entry(&f.to_string(), if *v { "t" } else { "f" })?;
        }
        m.end()
    }
}

/// Antecedent formulas of the chain become true, succedent formulas false.
pub fn extract_partial_valuation(chain: &RChain) -> Result<PartialValuation> {
    let mut assignment = BTreeMap::new();
    for f in chain.occurrences(Side::Ante) {
        assignment.insert(f, true);
    }
    for f in chain.occurrences(Side::Succ) {
        if assignment.get(&f) == Some(&true) {
            return Err(Error::Clash(f));
        }
        assignment.insert(f, false);
    }
    Ok(PartialValuation { assignment })
}

/// Result of one valuation condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    pub checks: Vec<ConditionCheck>,
}

impl ValuationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks V1 to V5 on the domain of `v`.
///
/// V1 fails only when defined values contradict it; undefined components are
/// allowed. V3 quantifies over the terms of `universe`: no instance may be
/// false and at least one instance must be true. V4 looks for a false
/// instance at a free variable occurring in the domain.
pub fn check_partial_valuation(v: &PartialValuation, universe: &[Term]) -> ValuationReport {
    let mut w: [Vec<String>; 5] = Default::default();
    let vars = v.free_vars();
    for (f, &val) in &v.assignment {
        match f {
            Term::Imp(a, b) if val => {
                let (va, vb) = (v.get(a), v.get(b));
                let ok = va == Some(false) || vb == Some(true) || (va.is_none() && vb.is_none());
                if !ok {
                    w[0].push(f.to_string());
                }
            }
            Term::Imp(a, b) => {
                if v.get(a) != Some(true) {
                    w[1].push(a.to_string());
                }
                if v.get(b) != Some(false) {
                    w[1].push(b.to_string());
                }
            }
            Term::All(x, _) if val => {
                let mut some_true = false;
                for t in universe.iter().filter(|t| t.type_of().ok().as_ref() == Some(&x.ty)) {
                    if let Ok(inst) = f.instantiate(std::slice::from_ref(t)) {
                        match v.get(&inst) {
                            Some(false) => w[2].push(inst.to_string()),
                            Some(true) => some_true = true,
                            None => {}
                        }
                    }
                }
                let any_instance = v.assignment.iter().any(|(g, &gv)| gv && f.match_instance(g).is_some());
                if !some_true && !any_instance {
                    w[2].push(f.to_string());
                }
            }
            Term::All(x, _) => {
                let found = vars.iter().filter(|a| a.ty == x.ty).any(|a| {
                    f.instantiate(&[Term::Free(a.clone())])
                        .map(|inst| v.get(&inst) == Some(false))
                        .unwrap_or(false)
                });
                if !found {
                    w[3].push(f.to_string());
                }
            }
            t if t.is_redex()
                && t.contract().and_then(|c| v.get(&c)) != Some(val) => {
                    w[4].push(f.to_string());
                }
            _ => {}
        }
    }
    let names = ["V1", "V2", "V3", "V4", "V5"];
    ValuationReport {
        checks: names
            .iter()
            .zip(w)
            .map(|(name, witnesses)| ConditionCheck {
                name,
                passed: witnesses.is_empty(),
                witnesses,
            })
            .collect(),
    }
}

/// Every term occurring as a subterm of a formula in the domain.
pub fn term_universe(v: &PartialValuation) -> Vec<Term> {
    let mut out = BTreeSet::new();
    for f in v.assignment.keys() {
        f.visit(&mut |t| {
            if t.is_closed() {
                out.insert(t.clone());
            }
        });
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::StepLabel;
    use crate::sequent::Sequent;

    fn sq(s: &str) -> Sequent {
        Sequent::parse(&s.replace('P', "a0:1").replace('Q', "a1:1")).unwrap()
    }

    fn f(s: &str) -> Formula {
        crate::syntax::parse_formula(&s.replace('P', "a0:1").replace('Q', "a1:1")).unwrap()
    }

    fn chain(items: &[&str]) -> RChain {
        RChain {
            steps: items.iter().map(|s| (sq(s), StepLabel::R31s)).collect(),
        }
    }

    #[test]
    fn extraction() {
        let v = extract_partial_valuation(&chain(&["|- (P -> Q)", "P |- Q"])).unwrap();
        let expected = BTreeMap::from([(f("P"), true), (f("Q"), false), (f("(P -> Q)"), false)]);
        assert_eq!(v.assignment, expected);
        let v = extract_partial_valuation(&chain(&["P |- Q"])).unwrap();
        assert_eq!(v.assignment.len(), 2);
        assert_eq!(
            extract_partial_valuation(&chain(&["|- P", "P |- P"])),
            Err(Error::Clash(f("P")))
        );
    }

    #[test]
    fn conditions() {
        let pv = |pairs: &[(&str, bool)]| PartialValuation {
            assignment: pairs.iter().map(|(s, b)| (f(s), *b)).collect(),
        };
        let ok = pv(&[("(P -> Q)", false), ("P", true), ("Q", false)]);
        assert!(check_partial_valuation(&ok, &[]).passed());
        let undefined = pv(&[("(P -> Q)", true)]);
        assert!(check_partial_valuation(&undefined, &[]).check("V1").unwrap().passed);
        let bad = pv(&[("(P -> Q)", false), ("P", false)]);
        let r = check_partial_valuation(&bad, &[]);
        let v2 = r.check("V2").unwrap();
        assert!(!v2.passed);
        assert!(v2.witnesses.contains(&"a0:1".to_string()));
    }

    #[test]
    fn quantifier_conditions() {
        let pv = |pairs: &[(&str, bool)]| PartialValuation {
            assignment: pairs.iter().map(|(s, b)| (f(s), *b)).collect(),
        };
        let good = pv(&[("(all x0:1 . (x0:1 -> Q))", false), ("(a5:1 -> Q)", false)]);
        assert!(check_partial_valuation(&good, &[]).check("V4").unwrap().passed);
        let bad = pv(&[("(all x0:1 . (x0:1 -> Q))", false)]);
        assert!(!check_partial_valuation(&bad, &[]).check("V4").unwrap().passed);
        let redex = pv(&[("(lam x0:1 . x0:1)(P)", true), ("P", false)]);
        assert!(!check_partial_valuation(&redex, &[]).check("V5").unwrap().passed);
    }
}
