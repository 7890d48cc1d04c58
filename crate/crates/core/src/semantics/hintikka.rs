//! Hintikka conditions on the formula sets of a chain.

use serde::Serialize;

use crate::engine::RChain;
use crate::sequent::Side;
use crate::syntax::{Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HintikkaCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HintikkaReport {
    /// Antecedent formulas of the chain, in order of first occurrence.
    pub gamma: Vec<Formula>,
    /// Succedent formulas of the chain, in order of first occurrence.
    pub delta: Vec<Formula>,
    pub checks: Vec<HintikkaCheck>,
}

impl HintikkaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&HintikkaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, witnesses: Vec<String>) -> HintikkaCheck {
    let status = if witnesses.is_empty() {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    HintikkaCheck { name, status, witnesses }
}

/// Checks H1 to H6 and the clauses on the chain sets.
///
/// `H2n` is the condition for an antecedent `A -> _|_`: `A` must be in the
/// succedent set. For H3 the eigenvariable `a` of the instance `F[a]` must not
/// occur in any sequent before the one where `F[a]` first appears.
pub fn hintikka_check(chain: &RChain) -> HintikkaReport {
    let gamma = chain.occurrences(Side::Ante);
    let delta = chain.occurrences(Side::Succ);
    let in_g = |f: &Term| gamma.contains(f);
    let in_d = |f: &Term| delta.contains(f);

    let mut h = [(); 7].map(|_| Vec::new());
    for f in &delta {
        match f {
            Term::Imp(a, b) if !(in_g(a) && in_d(b)) => h[0].push(f.to_string()),
            Term::All(..) if !eigen_instance(chain, f) => h[3].push(f.to_string()),
            t if t.is_redex() && !t.contract().is_some_and(|c| in_d(&c)) => h[5].push(f.to_string()),
            _ => {}
        }
    }
    for f in &gamma {
        match f {
            Term::Imp(a, b) if b.is_bottom() => {
                if !in_d(a) {
                    h[2].push(f.to_string());
                }
            }
            Term::Imp(a, b) => {
                if !(in_g(&Term::imp((**a).clone(), crate::syntax::bot())) || in_g(b)) {
                    h[1].push(f.to_string());
                }
            }
            Term::All(..) => {
                if !gamma.iter().any(|g| f.match_instance(g).is_some()) {
                    h[4].push(f.to_string());
                }
            }
            t if t.is_redex() && !t.contract().is_some_and(|c| in_g(&c)) => h[6].push(f.to_string()),
            _ => {}
        }
    }
    let names = ["H1", "H2", "H2n", "H3", "H4", "H5", "H6"];
    let mut checks: Vec<HintikkaCheck> = names.iter().zip(h).map(|(n, w)| check(n, w)).collect();
    let saturated = checks.iter().all(|c| c.status == CheckStatus::Pass);

    let starts_single = chain.first().is_some_and(|s| s.ante.is_empty() && s.succ.len() == 1);
    checks.push(HintikkaCheck {
        name: "clause1",
        status: if starts_single {
            CheckStatus::Pass
        } else {
            CheckStatus::NotApplicable
        },
        witnesses: vec![],
    });
    checks.push(HintikkaCheck {
        name: "clause2",
        status: if saturated { CheckStatus::Pass } else { CheckStatus::Fail },
        witnesses: vec![],
    });
    let shared: Vec<String> = gamma.iter().filter(|f| in_d(f)).map(|f| f.to_string()).collect();
    checks.push(check("clause3", shared));
    let uncovered: Vec<String> = chain
        .sequents()
        .flat_map(|s| s.ante.iter().chain(&s.succ))
        .filter(|f| f.is_atomic() && !in_g(f) && !in_d(f))
        .map(|f| f.to_string())
        .collect();
    checks.push(check("clause4", uncovered));
    HintikkaReport { gamma, delta, checks }
}

/// Is there an instance `F[a]` in the succedent set whose variable `a` is new
/// at the point where the instance first appears?
fn eigen_instance(chain: &RChain, f: &Formula) -> bool {
    chain.steps.iter().enumerate().any(|(k, (s, _))| {
        s.succ.iter().any(|g| match f.match_instance(g) {
            Some(None) => true,
            Some(Some(Term::Free(a))) => {
                let earlier = chain.steps[..k].iter().all(|(p, _)| !p.occurs_free(&a));
                let first_here = chain.steps[..k].iter().all(|(p, _)| !p.succ.contains(g));
                k > 0 && earlier && first_here
            }
            _ => false,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::StepLabel;
    use crate::sequent::Sequent;

    fn chain(items: &[&str]) -> RChain {
        RChain {
            steps: items
                .iter()
                .map(|s| {
                    let s = s.replace('P', "a0:1").replace('Q', "a1:1");
                    (Sequent::parse(&s).unwrap(), StepLabel::R31s)
                })
                .collect(),
        }
    }

    #[test]
    fn open_implication_chain_passes() {
        let r = hintikka_check(&chain(&["|- (P -> Q)", "P |- Q"]));
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.check("clause1").unwrap().status, CheckStatus::Pass);
    }

    #[test]
    fn unreduced_implication_fails() {
        let r = hintikka_check(&chain(&["|- (P -> Q)"]));
        assert_eq!(r.check("H1").unwrap().status, CheckStatus::Fail);
        assert!(!r.passed());
    }

    #[test]
    fn eigenvariable_must_be_new() {
        let ok = hintikka_check(&chain(&["|- (all x0:1 . x0:1)", "|- a0:1"]));
        assert_eq!(ok.check("H3").unwrap().status, CheckStatus::Pass);
        let bad = hintikka_check(&chain(&["P |- (all x0:1 . x0:1)", "P |- P"]));
        assert_eq!(bad.check("H3").unwrap().status, CheckStatus::Fail);
        assert_eq!(bad.check("clause3").unwrap().status, CheckStatus::Fail);
    }

    #[test]
    fn negation_in_antecedent() {
        let r = hintikka_check(&chain(&["(P -> _|_) |-", "|- P"]));
        assert!(r.passed(), "{r:?}");
        let r = hintikka_check(&chain(&["(P -> _|_) |- Q"]));
        assert_eq!(r.check("H2n").unwrap().status, CheckStatus::Fail);
    }
}
