//! Reduction chains: one reduction step per sequent, with the two-way choice
//! at an antecedent implication.

use std::fmt;

use serde::Serialize;

use crate::calculus::{critical_positions, distinguished, is_axiom, reduce, RuleApplication, RuleId};
use crate::error::{Error, Result};
use crate::sequent::{Sequent, Side};
use crate::syntax::connectives::bot;
use crate::syntax::{Formula, Term, TermEnumerator};

/// How a sequent of a chain is continued, or why the chain stops there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepLabel {
    /// Antecedent `A -> B`, first alternative `A -> _|_`.
    R31a,
    /// Antecedent `A -> B`, second alternative `B`.
    R31b,
    /// Succedent `A -> B`.
    R31s,
    /// Antecedent `A -> _|_`.
    R31n,
    /// Succedent universal formula.
    R32,
    /// Antecedent redex.
    R331,
    /// Succedent redex.
    R332,
    /// Critical step.
    R34,
    TerminalAxiom,
    TerminalPrimitive,
    /// The chain was cut off by a budget.
    Truncated,
}

impl StepLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            StepLabel::R31a => "R3.1a",
            StepLabel::R31b => "R3.1b",
            StepLabel::R31s => "R3.1s",
            StepLabel::R31n => "R3.1n",
            StepLabel::R32 => "R3.2",
            StepLabel::R331 => "R3.3.1",
            StepLabel::R332 => "R3.3.2",
            StepLabel::R34 => "R3.4",
            StepLabel::TerminalAxiom => "terminal-axiom",
            StepLabel::TerminalPrimitive => "terminal-primitive",
            StepLabel::Truncated => "truncated",
        }
    }

    pub fn is_terminal(self) -> bool {
        matches!(self, StepLabel::TerminalAxiom | StepLabel::TerminalPrimitive | StepLabel::Truncated)
    }

    /// Label of a reduction by `rule`; for `ImpL`, `second` picks the branch.
    pub fn for_rule(rule: &RuleId, second: bool) -> StepLabel {
        match rule {
            RuleId::ImpR => StepLabel::R31s,
            RuleId::ImpL if second => StepLabel::R31b,
            RuleId::ImpL => StepLabel::R31a,
            RuleId::NegL => StepLabel::R31n,
            RuleId::AllR(_) => StepLabel::R32,
            RuleId::AllL(_) => StepLabel::R34,
            RuleId::LamL => StepLabel::R331,
            RuleId::LamR => StepLabel::R332,
        }
    }
}

impl fmt::Display for StepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for StepLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A finite chain prefix: each sequent with the label of the step leaving it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RChain {
    pub steps: Vec<(Sequent, StepLabel)>,
}

impl RChain {
    pub fn sequents(&self) -> impl Iterator<Item = &Sequent> {
        self.steps.iter().map(|(s, _)| s)
    }

    pub fn first(&self) -> Option<&Sequent> {
        self.steps.first().map(|(s, _)| s)
    }

    pub fn last(&self) -> Option<&Sequent> {
        self.steps.last().map(|(s, _)| s)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Antecedent and succedent formulas in order of first occurrence.
    pub fn occurrences(&self, side: Side) -> Vec<Formula> {
        let mut out: Vec<Formula> = Vec::new();
        for s in self.sequents() {
            for f in s.side(side) {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for RChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, l)) in self.steps.iter().enumerate() {
            writeln!(f, "{i:>3}  {s}    [{l}]")?;
        }
        Ok(())
    }
}

/// Successors of `s` at chain position `m`, with the label of each.
///
/// Implications, universal succedent formulas and redexes are replaced by
/// their components. A critical sequent keeps its antecedent universal
/// formulas and replaces the rightmost succedent formula `A` (or `_|_` for an
/// empty succedent) by `F1[s_0] -> ... -> Fk[s_0] -> ... -> Fk[s_m] -> A`.
pub fn rchain_step(s: &Sequent, m: usize, terms: &mut TermEnumerator) -> Result<Vec<(Sequent, StepLabel)>> {
    if let Some((side, i)) = distinguished(s) {
        let f = &s.side(side)[i];
        let rule = RuleId::for_formula(f, side).ok_or(Error::NotReducibleNorCritical)?;
        let app = RuleApplication::new(rule.clone(), i);
        let succs = reduce(s, &app, false, None)?;
        return Ok(succs
            .into_iter()
            .enumerate()
            .map(|(k, x)| (x, StepLabel::for_rule(&rule, k == 1)))
            .collect());
    }
    let crit = critical_positions(s);
    if crit.is_empty() {
        return Err(Error::NotReducibleNorCritical);
    }
    let mut instances = Vec::new();
    for j in 0..=m {
        for &p in &crit {
            let f = &s.ante[p];
            let Term::All(x, _) = f else { unreachable!() };
            instances.push(f.instantiate(&[terms.nth(&x.ty, j)])?);
        }
    }
    let mut next = s.clone();
    let a = next.succ.pop().unwrap_or_else(bot);
    let n = instances.into_iter().rev().fold(a, |acc, inst| Term::imp(inst, acc));
    next.succ.push(n);
    Ok(vec![(next, StepLabel::R34)])
}

/// All chain prefixes of `root` with at most `steps` steps, leftmost first.
pub fn chain_prefixes(root: &Sequent, steps: usize, terms: &mut TermEnumerator) -> Result<Vec<RChain>> {
    let mut done = Vec::new();
    let mut work: Vec<(RChain, Sequent)> = vec![(RChain::default(), root.clone())];
    while let Some((chain, s)) = work.pop() {
        let m = chain.len();
        if is_axiom(&s) {
            let mut c = chain;
            c.steps.push((s, StepLabel::TerminalAxiom));
            done.push(c);
            continue;
        }
        if m >= steps {
            let mut c = chain;
            c.steps.push((s, StepLabel::Truncated));
            done.push(c);
            continue;
        }
        let succs = match rchain_step(&s, m, terms) {
            Ok(v) => v,
            Err(Error::NotReducibleNorCritical) => {
                let mut c = chain;
                c.steps.push((s, StepLabel::TerminalPrimitive));
                done.push(c);
                continue;
            }
            Err(e) => return Err(e),
        };
        for (next, label) in succs.into_iter().rev() {
            let mut c = chain.clone();
            c.steps.push((s.clone(), label));
            work.push((c, next));
        }
    }
    Ok(done)
}

/// Re-checks every step of a chain against the reduction clauses.
pub fn verify_chain(chain: &RChain, terms: &mut TermEnumerator) -> std::result::Result<(), String> {
    for (m, w) in chain.steps.windows(2).enumerate() {
        let (s, label) = &w[0];
        let (next, _) = &w[1];
        if label.is_terminal() {
            return Err(format!("step {m} is terminal but the chain continues"));
        }
        let succs = rchain_step(s, m, terms).map_err(|e| format!("step {m}: {e}"))?;
        if !succs.iter().any(|(x, l)| x == next && l == label) {
            return Err(format!("step {m}: {next} is not a {label} successor of {s}"));
        }
    }
    if let Some((s, label)) = chain.steps.last() {
        let ok = match label {
            StepLabel::TerminalAxiom => is_axiom(s),
            StepLabel::TerminalPrimitive => !is_axiom(s) && matches!(rchain_step(s, 0, terms), Err(Error::NotReducibleNorCritical)),
            StepLabel::Truncated => true,
            _ => false,
        };
        if !ok {
            return Err(format!("last sequent {s} does not fit label {label}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Signature;

    fn sq(s: &str) -> Sequent {
        Sequent::parse(&s.replace('P', "a0:1").replace('Q', "a1:1").replace('R', "a2:1")).unwrap()
    }

    fn terms() -> TermEnumerator {
        TermEnumerator::new(Signature::default())
    }

    #[test]
    fn implication_branches() {
        let out = rchain_step(&sq("(P -> Q) |- R"), 0, &mut terms()).unwrap();
        assert_eq!(
            out,
            vec![(sq("(P -> _|_) |- R"), StepLabel::R31a), (sq("Q |- R"), StepLabel::R31b)]
        );
    }

    #[test]
    fn universal_succedent() {
        let out = rchain_step(&sq("|- (all x0:1 . x0:1)"), 0, &mut terms()).unwrap();
        assert_eq!(out, vec![(sq("|- a0:1"), StepLabel::R32)]);
        let out = rchain_step(&sq("P |- (all x0:1 . x0:1)"), 0, &mut terms()).unwrap();
        assert_eq!(out, vec![(sq("P |- a1:1"), StepLabel::R32)]);
    }

    #[test]
    fn critical_step() {
        let out = rchain_step(&sq("(all x0:1 . x0:1) |- P"), 0, &mut terms()).unwrap();
        assert_eq!(out, vec![(sq("(all x0:1 . x0:1) |- (a0:1 -> P)"), StepLabel::R34)]);
        // two critical formulas, m = 1: blocks j = 0, 1, each listing i = 1, 2
        let s = sq("(all x0:1 . x0:1), (all x0:1 . (x0:1 -> Q)) |-");
        let out = rchain_step(&s, 1, &mut terms()).unwrap();
        let expected = "(all x0:1 . x0:1), (all x0:1 . (x0:1 -> a1:1)) |- \
            (a0:1 -> ((a0:1 -> a1:1) -> (a1:1 -> ((a1:1 -> a1:1) -> (all x0:1 . x0:1)))))";
        assert_eq!(out[0].0, Sequent::parse(expected).unwrap());
    }

    #[test]
    fn primitive_has_no_successor() {
        assert_eq!(rchain_step(&sq("P |- Q"), 0, &mut terms()), Err(Error::NotReducibleNorCritical));
    }

    #[test]
    fn prefixes_verify() {
        let mut t = terms();
        let chains = chain_prefixes(&sq("(P -> Q) |- R"), 5, &mut t).unwrap();
        assert_eq!(chains.len(), 2);
        for c in &chains {
            verify_chain(c, &mut t).unwrap();
        }
        assert_eq!(chains[0].steps[0].1, StepLabel::R31a);
        assert_eq!(chains[1].steps[0].1, StepLabel::R31b);
    }
}
