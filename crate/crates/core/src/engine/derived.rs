//! Derived rules, order-bounded proof search and the cut harness.

use std::collections::{BTreeSet, HashMap};

use super::tableau::{build_tableau, Budget, TableauRun, Verdict};
use crate::calculus::{check_proof_figure, is_axiom, order_of, reduce, ProofFigure, RuleApplication, RuleId, SystemId};
use crate::error::{Error, Result};
use crate::sequent::{Sequent, Side};
use crate::syntax::connectives::neg;
use crate::syntax::{fresh_free_var, Formula, Signature, Term, TermEnumerator, Type};

/// The Gentzen system matching `sys`.
fn gentzen(sys: SystemId) -> SystemId {
    if sys.is_tableau() {
        sys.dual()
    } else {
        sys
    }
}

/// Applies one rule and returns the single premise.
fn step(s: &Sequent, rule: RuleId, index: usize, witness: Option<Term>, retain: bool) -> Result<(RuleApplication, Vec<Sequent>)> {
    let mut app = RuleApplication::new(rule, index);
    app.witness = witness;
    let premises = reduce(s, &app, retain, None)?;
    Ok((app, premises))
}

fn position(v: &[Formula], f: &Formula) -> Result<usize> {
    v.iter()
        .position(|g| g == f)
        .ok_or_else(|| Error::RuleShapeMismatch(format!("{f} is not in the sequent")))
}

/// A derivation of a sequent with `a` on both sides, by induction on `a`.
pub fn identity_figure(s: &Sequent, a: &Formula, retain: bool) -> Result<ProofFigure> {
    if is_axiom(s) {
        return Ok(ProofFigure::leaf(s.clone()));
    }
    let i = position(&s.succ, a)?;
    let node = |s: &Sequent, app: RuleApplication, kids: Vec<ProofFigure>| ProofFigure::node(s.clone(), app.rule, app.witness, kids);
    match a {
        Term::Imp(b, c) => {
            let (r_app, p) = step(s, RuleId::ImpR, i, None, retain)?;
            let s1 = &p[0];
            let j = position(&s1.ante, a)?;
            let inner = if c.is_bottom() {
                let (n_app, p) = step(s1, RuleId::NegL, j, None, retain)?;
                node(s1, n_app, vec![identity_figure(&p[0], b, retain)?])
            } else {
                let (l_app, p) = step(s1, RuleId::ImpL, j, None, retain)?;
                let left = &p[0];
                let (n_app, q) = step(left, RuleId::NegL, j, None, retain)?;
                let lf = node(left, n_app, vec![identity_figure(&q[0], b, retain)?]);
                node(s1, l_app, vec![lf, identity_figure(&p[1], c, retain)?])
            };
            Ok(node(s, r_app, vec![inner]))
        }
        Term::All(x, _) => {
            let v = Term::Free(fresh_free_var(&x.ty, &s.free_vars()));
            let (r_app, p) = step(s, RuleId::AllR(x.ty.clone()), i, Some(v.clone()), retain)?;
            let s1 = &p[0];
            let j = position(&s1.ante, a)?;
            let (l_app, q) = step(s1, RuleId::AllL(x.ty.clone()), j, Some(v.clone()), retain)?;
            let inst = a.instantiate(&[v])?;
            Ok(node(s, r_app, vec![node(s1, l_app, vec![identity_figure(&q[0], &inst, retain)?])]))
        }
        t if t.is_redex() => {
            let c = t.contract().expect("redex");
            let (r_app, p) = step(s, RuleId::LamR, i, None, retain)?;
            let s1 = &p[0];
            let j = position(&s1.ante, a)?;
            let (l_app, q) = step(s1, RuleId::LamL, j, None, retain)?;
            Ok(node(s, r_app, vec![node(s1, l_app, vec![identity_figure(&q[0], &c, retain)?])]))
        }
        _ => Err(Error::RuleShapeMismatch(format!("{a} is atomic but {s} is not an axiom"))),
    }
}

/// A derivation of order 3 of a sequent with `_|_` in the antecedent:
/// instantiate with `~a`, move `a` to the succedent, instantiate with `a`.
pub fn bottom_figure(s: &Sequent, retain: bool) -> Result<ProofFigure> {
    let i = s
        .ante
        .iter()
        .position(Term::is_bottom)
        .ok_or_else(|| Error::RuleShapeMismatch(format!("no _|_ in the antecedent of {s}")))?;
    let bottom = s.ante[i].clone();
    let a = Term::Free(fresh_free_var(&Type::One, &s.free_vars()));
    let (app1, p1) = step(s, RuleId::AllL(Type::One), i, Some(neg(a.clone())), retain)?;
    let s1 = &p1[0];
    let (app2, p2) = step(s1, RuleId::NegL, position(&s1.ante, &neg(a.clone()))?, None, retain)?;
    let s2 = &p2[0];
    let (app3, p3) = step(s2, RuleId::AllL(Type::One), position(&s2.ante, &bottom)?, Some(a), retain)?;
    let leaf = ProofFigure::leaf(p3[0].clone());
    let n3 = ProofFigure::node(s2.clone(), app3.rule, app3.witness, vec![leaf]);
    let n2 = ProofFigure::node(s1.clone(), app2.rule, app2.witness, vec![n3]);
    Ok(ProofFigure::node(s.clone(), app1.rule, app1.witness, vec![n2]))
}

/// Outcome of [`prove_derived`].
#[derive(Clone, Debug)]
pub struct DerivedProof {
    pub verdict: Verdict,
    pub figure: Option<ProofFigure>,
}

/// Proves a derived-rule instance: by the identity and `_|_` schemata when
/// the goal has that shape, and by tableau search otherwise. Every returned
/// figure has been checked.
pub fn prove_derived(goal: &Sequent, sys: SystemId, budget: Budget) -> DerivedProof {
    let g = gentzen(sys);
    let retain = sys.retains();
    let mut candidates = Vec::new();
    if let Some(a) = goal.ante.iter().find(|a| goal.succ.contains(a)) {
        candidates.push(identity_figure(goal, a, retain));
    }
    if goal.ante.iter().any(Term::is_bottom) {
        candidates.push(bottom_figure(goal, retain));
    }
    for pf in candidates.into_iter().flatten() {
        if check_proof_figure(&pf, g).valid {
            if let Ok(order) = order_of(&pf) {
                return DerivedProof {
                    verdict: Verdict::Proved { order },
                    figure: Some(pf),
                };
            }
        }
    }
    let run = build_tableau(goal, sys, budget);
    let figure = match run.verdict {
        Verdict::Proved { .. } => run.tableau.to_figure().ok().filter(|pf| check_proof_figure(pf, g).valid),
        _ => None,
    };
    DerivedProof {
        verdict: run.verdict,
        figure,
    }
}

/// Exhaustive Gentzen search for a derivation of order at most `max_order`,
/// by iterative deepening, so the first figure found has least order among
/// those the search can see. `AllL` instances are drawn from the free
/// variables of the sequent, the first terms of the enumeration and, at type
/// `1`, their negations.
pub fn find_proof(s: &Sequent, sys: SystemId, max_order: usize) -> Option<ProofFigure> {
    let sys = gentzen(sys);
    let mut search = OrderSearch {
        retain: sys.retains(),
        terms: TermEnumerator::new(Signature::default()),
        failed: HashMap::new(),
    };
    (0..=max_order).find_map(|k| search.prove(s, k))
}

struct OrderSearch {
    retain: bool,
    terms: TermEnumerator,
    failed: HashMap<Sequent, usize>,
}

fn as_set(s: &Sequent) -> (BTreeSet<&Formula>, BTreeSet<&Formula>) {
    (s.ante.iter().collect(), s.succ.iter().collect())
}

impl OrderSearch {
    fn witnesses(&mut self, s: &Sequent, ty: &Type) -> Vec<Term> {
        let mut out: Vec<Term> = s.free_vars().into_iter().filter(|v| v.ty == *ty).map(Term::Free).collect();
        for t in self.terms.first(ty, 3) {
            if !out.contains(&t) {
                out.push(t);
            }
        }
        if *ty == Type::One {
            let negs: Vec<Term> = out.iter().map(|t| neg(t.clone())).collect();
            out.extend(negs);
        }
        out
    }

    fn applications(&mut self, s: &Sequent) -> Vec<RuleApplication> {
        let mut out = Vec::new();
        for (side, i, f) in s.formulas() {
            let Some(rule) = RuleId::for_formula(f, side) else { continue };
            match (&rule, f) {
                (RuleId::AllL(_), Term::All(x, _)) => {
                    for t in self.witnesses(s, &x.ty.clone()) {
                        out.push(RuleApplication::new(rule.clone(), i).with_witness(t));
                    }
                }
                _ => out.push(RuleApplication::new(rule, i)),
            }
        }
        out
    }

    fn prove(&mut self, s: &Sequent, k: usize) -> Option<ProofFigure> {
        if is_axiom(s) {
            return Some(ProofFigure::leaf(s.clone()));
        }
        if k == 0 || self.failed.get(s).is_some_and(|&f| f >= k) {
            return None;
        }
        let here = as_set(s);
        for app in self.applications(s) {
            let Ok(premises) = reduce(s, &app, self.retain, None) else { continue };
            if premises.iter().any(|p| as_set(p) == here) {
                continue;
            }
            let mut kids = Vec::new();
            for p in &premises {
                match self.prove(p, k - 1) {
                    Some(pf) => kids.push(pf),
                    None => break,
                }
            }
            if kids.len() == premises.len() {
                return Some(ProofFigure::node(s.clone(), app.rule, app.witness, kids));
            }
        }
        self.failed.insert(s.clone(), k);
        None
    }
}

/// Result of a weak-inference check on one rule instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionCheck {
    pub lower: Sequent,
    pub lower_order: usize,
    pub uppers: Vec<(Sequent, Option<usize>)>,
}

impl InversionCheck {
    /// Every upper sequent has a derivation of order at most that of the lower.
    pub fn holds(&self) -> bool {
        self.uppers.iter().all(|(_, o)| o.is_some_and(|o| o <= self.lower_order))
    }
}

/// Finds a least-order derivation of `lower` and then derivations of each
/// upper sequent of the rule application `app` within that order.
pub fn check_inversion(lower: &Sequent, app: &RuleApplication, sys: SystemId, max_order: usize) -> Result<InversionCheck> {
    let sys = gentzen(sys);
    let pf = find_proof(lower, sys, max_order).ok_or_else(|| Error::PremiseNotProved(lower.to_string()))?;
    let m = order_of(&pf)?;
    let uppers = reduce(lower, app, sys.retains(), None)?
        .into_iter()
        .map(|u| {
            let o = find_proof(&u, sys, m).and_then(|pf| order_of(&pf).ok());
            (u, o)
        })
        .collect();
    Ok(InversionCheck {
        lower: lower.clone(),
        lower_order: m,
        uppers,
    })
}

/// Result of [`cut_harness`].
#[derive(Clone, Debug)]
pub struct CutRun {
    pub conclusion: Sequent,
    pub budget: Budget,
    pub run: TableauRun,
}

/// From proved `Γ |- Δ1, A, Δ2` and `A |- B`, searches for a proof of
/// `Γ |- Δ1, B, Δ2` with four times the nodes the two premises used.
pub fn cut_harness(left: &Sequent, right: &Sequent, sys: SystemId, budget: Budget) -> Result<CutRun> {
    let (a, b) = match (&right.ante[..], &right.succ[..]) {
        ([a], [b]) => (a, b),
        _ => return Err(Error::RuleShapeMismatch(format!("right premise {right} is not of the form A |- B"))),
    };
    let i = left
        .succ
        .iter()
        .position(|f| f == a)
        .ok_or_else(|| Error::RuleShapeMismatch(format!("{a} is not in the succedent of {left}")))?;
    let mut nodes = 0;
    for p in [left, right] {
        let r = build_tableau(p, sys, budget);
        if !r.verdict.is_proved() {
            return Err(Error::PremiseNotProved(p.to_string()));
        }
        nodes += r.tableau.len();
    }
    let mut conclusion = left.clone();
    *conclusion.side_mut(Side::Succ).get_mut(i).expect("position") = b.clone();
    let budget = Budget {
        max_nodes: 4 * nodes,
        ..budget
    };
    let run = build_tableau(&conclusion, sys, budget);
    Ok(CutRun { conclusion, budget, run })
}
