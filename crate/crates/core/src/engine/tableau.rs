//! Reduction tableaux under budgets.
//!
//! In KCTT every node is expanded by [`rchain_step`]. In KCTT_h principal
//! formulas are kept and recorded as discharged on the branch; the
//! distinguished formula is the rightmost undischarged reducible one. When
//! none is left, a critical round queues the instances `F_i[s_j]` for every
//! antecedent universal formula `F_i` (left to right) and `j = 0..=m`, `m`
//! being the depth of the node, together with the instances at the free
//! variables of the node, and applies them one `AllL` step at a time.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use super::chain::{rchain_step, RChain, StepLabel};
use crate::calculus::{distinguished, is_axiom, is_reducible_formula, reduce, ProofFigure, RuleApplication, RuleId, SystemId};
use crate::error::{Error, Result};
use crate::semantics::{check_partial_valuation, extract_partial_valuation, hintikka_check, term_universe, HintikkaReport, PartialValuation};
use crate::sequent::{Sequent, Side};
use crate::syntax::{Formula, Signature, Term, TermEnumerator};

/// Resource limits of one search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_depth: usize,
    pub max_nodes: usize,
    pub max_critical_rounds: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_depth: 200,
            max_nodes: 10_000,
            max_critical_rounds: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeStatus {
    Unexpanded,
    Expanded,
    Closed,
    Open,
    Exhausted,
}

/// Branch state of the retention mode.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Retained {
    discharged: [BTreeSet<Formula>; 2],
    pending: VecDeque<(Formula, Term)>,
    rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauNode {
    pub sequent: Sequent,
    pub parent: Option<usize>,
    pub depth: usize,
    /// Label of the step leaving this node.
    pub label: Option<StepLabel>,
    /// The rule of that step; `None` for an R3.4 step of KCTT.
    pub rule: Option<RuleApplication>,
    pub children: Vec<usize>,
    pub status: NodeStatus,
    /// Why a leaf was given up.
    pub note: Option<String>,
    state: Retained,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    pub system: SystemId,
    pub nodes: Vec<TableauNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Proved {
        order: usize,
    },
    Refuted {
        branch: RChain,
        hintikka: HintikkaReport,
        valuation: PartialValuation,
    },
    Unknown {
        reason: String,
    },
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Proved { .. } => "proved",
            Verdict::Refuted { .. } => "refuted",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

/// A finished search.
#[derive(Clone, Debug)]
pub struct TableauRun {
    pub tableau: Tableau,
    pub verdict: Verdict,
}

impl TableauNode {
    fn new(sequent: Sequent, parent: Option<usize>, depth: usize, state: Retained) -> Self {
        TableauNode {
            sequent,
            parent,
            depth,
            label: None,
            rule: None,
            children: vec![],
            status: NodeStatus::Unexpanded,
            note: None,
            state,
        }
    }
}

impl Tableau {
    pub fn root(&self) -> &TableauNode {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].children.is_empty())
    }

    pub fn is_closed(&self) -> bool {
        self.leaves().all(|i| self.nodes[i].status == NodeStatus::Closed)
    }

    /// Largest leaf depth.
    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Node indices from the root to `leaf`.
    pub fn path(&self, leaf: usize) -> Vec<usize> {
        let mut out = vec![leaf];
        let mut cur = leaf;
        while let Some(p) = self.nodes[cur].parent {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    /// The branch ending at `leaf` as a chain.
    pub fn chain(&self, leaf: usize) -> RChain {
        let steps = self
            .path(leaf)
            .into_iter()
            .map(|i| {
                let n = &self.nodes[i];
                let label = n.label.unwrap_or(match n.status {
                    NodeStatus::Closed => StepLabel::TerminalAxiom,
                    NodeStatus::Open => StepLabel::TerminalPrimitive,
                    _ => StepLabel::Truncated,
                });
                (n.sequent.clone(), label)
            })
            .collect();
        RChain { steps }
    }

    /// The Gentzen derivation read off a closed tableau: KCT_h for KCTT_h,
    /// KCT for a KCTT tableau without critical steps.
    pub fn to_figure(&self) -> Result<ProofFigure> {
        self.figure_at(0)
    }

    fn figure_at(&self, i: usize) -> Result<ProofFigure> {
        let n = &self.nodes[i];
        if n.children.is_empty() {
            return if n.status == NodeStatus::Closed {
                Ok(ProofFigure::leaf(n.sequent.clone()))
            } else {
                Err(Error::OpenLeaf(n.sequent.to_string()))
            };
        }
        let app = n
            .rule
            .as_ref()
            .ok_or_else(|| Error::Figure(format!("the critical step at {} has no Gentzen counterpart", n.sequent)))?;
        let children = n.children.iter().map(|&c| self.figure_at(c)).collect::<Result<Vec<_>>>()?;
        Ok(ProofFigure::node(n.sequent.clone(), app.rule.clone(), app.witness.clone(), children))
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                json!({
                    "id": i,
                    "sequent": n.sequent.to_string(),
                    "depth": n.depth,
                    "label": n.label.map(StepLabel::as_str),
                    "rule": n.rule.as_ref().map(|a| a.rule.name()),
                    "witness": n.rule.as_ref().and_then(|a| a.witness.as_ref()).map(ToString::to_string),
                    "children": n.children,
                    "status": n.status,
                    "note": n.note,
                })
            })
            .collect();
        json!({"system": self.system.to_string(), "nodes": nodes})
    }

    fn write_node(&self, f: &mut fmt::Formatter<'_>, i: usize, indent: usize) -> fmt::Result {
        let n = &self.nodes[i];
        let tag = match (n.label, n.status) {
            (Some(l), _) => l.to_string(),
            (None, s) => format!("{s:?}").to_lowercase(),
        };
        writeln!(f, "{:indent$}{}    [{tag}]", "", n.sequent)?;
        for &c in &n.children {
            self.write_node(f, c, indent + 2)?;
        }
        Ok(())
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nodes.is_empty() {
            return Ok(());
        }
        self.write_node(f, 0, 0)
    }
}

/// The leftmost open branch whose leaf passed the saturation checks.
pub fn extract_open_branch(t: &Tableau) -> Result<RChain> {
    t.leaves()
        .find(|&i| t.nodes[i].status == NodeStatus::Open)
        .map(|i| t.chain(i))
        .ok_or(Error::NoOpenBranch)
}

pub fn build_tableau(root: &Sequent, sys: SystemId, budget: Budget) -> TableauRun {
    build_tableau_with(root, sys, budget, &Signature::default())
}

/// Depth-first search, leftmost branch first, stopping at the first open
/// branch. A Gentzen system is searched through its tableau dual.
pub fn build_tableau_with(root: &Sequent, sys: SystemId, budget: Budget, sig: &Signature) -> TableauRun {
    let sys = if sys.is_tableau() { sys } else { sys.dual() };
    let mut b = Builder {
        t: Tableau {
            system: sys,
            nodes: vec![TableauNode::new(root.clone(), None, 0, Retained::default())],
        },
        terms: TermEnumerator::new(sig.clone()),
        budget,
    };
    let mut stack = vec![0];
    let mut refuted = None;
    let mut out_of_nodes = false;
    while let Some(n) = stack.pop() {
        if b.t.nodes.len() >= budget.max_nodes {
            out_of_nodes = true;
            break;
        }
        match b.expand(n) {
            Ok(()) => {}
            Err(e) => {
                let node = &mut b.t.nodes[n];
                node.status = NodeStatus::Exhausted;
                node.note = Some(e.to_string());
            }
        }
        let node = &b.t.nodes[n];
        if node.status == NodeStatus::Open {
            refuted = Some(n);
            break;
        }
        stack.extend(node.children.iter().rev());
    }
    let t = b.t;
    let verdict = if let Some(leaf) = refuted {
        let branch = t.chain(leaf);
        let hintikka = hintikka_check(&branch);
        let valuation = extract_partial_valuation(&branch).unwrap_or_default();
        Verdict::Refuted {
            branch,
            hintikka,
            valuation,
        }
    } else if t.is_closed() {
        Verdict::Proved { order: t.height() }
    } else if out_of_nodes {
        Verdict::Unknown {
            reason: format!("node budget of {} exhausted", budget.max_nodes),
        }
    } else {
        let note = t
            .nodes
            .iter()
            .find(|n| n.status == NodeStatus::Exhausted)
            .and_then(|n| n.note.clone())
            .unwrap_or_else(|| "search incomplete".into());
        Verdict::Unknown { reason: note }
    };
    TableauRun { tableau: t, verdict }
}

struct Builder {
    t: Tableau,
    terms: TermEnumerator,
    budget: Budget,
}

impl Builder {
    fn expand(&mut self, n: usize) -> Result<()> {
        let s = self.t.nodes[n].sequent.clone();
        if is_axiom(&s) {
            self.t.nodes[n].status = NodeStatus::Closed;
            return Ok(());
        }
        if self.t.nodes[n].depth >= self.budget.max_depth {
            return self.give_up(n, format!("depth budget of {} reached", self.budget.max_depth));
        }
        if self.t.system.retains() {
            self.expand_retained(n, &s)
        } else {
            self.expand_chain(n, &s)
        }
    }

    fn give_up(&mut self, n: usize, why: String) -> Result<()> {
        let node = &mut self.t.nodes[n];
        node.status = NodeStatus::Exhausted;
        node.note = Some(why);
        Ok(())
    }

    fn add_children(&mut self, n: usize, label: StepLabel, rule: Option<RuleApplication>, kids: Vec<(Sequent, Retained)>) {
        let depth = self.t.nodes[n].depth + 1;
        let mut ids = Vec::new();
        for (s, st) in kids {
            ids.push(self.t.nodes.len());
            self.t.nodes.push(TableauNode::new(s, Some(n), depth, st));
        }
        let node = &mut self.t.nodes[n];
        node.children = ids;
        node.label = Some(label);
        node.rule = rule;
        node.status = NodeStatus::Expanded;
    }

    /// Marks a leaf with nothing left to do as open if its branch is
    /// saturated, and as exhausted otherwise.
    fn settle_leaf(&mut self, n: usize) -> Result<()> {
        self.t.nodes[n].status = NodeStatus::Open;
        let chain = self.t.chain(n);
        let report = hintikka_check(&chain);
        let valuation = extract_partial_valuation(&chain);
        let valuation_ok = valuation.as_ref().is_ok_and(|v| check_partial_valuation(v, &term_universe(v)).passed());
        if report.passed() && valuation_ok {
            return Ok(());
        }
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.status == crate::semantics::CheckStatus::Fail)
            .map(|c| c.name)
            .collect();
        self.give_up(n, format!("open leaf is not saturated (failed: {failed:?}, valuation ok: {valuation_ok})"))
    }

    fn expand_chain(&mut self, n: usize, s: &Sequent) -> Result<()> {
        let m = self.t.nodes[n].depth;
        let succs = match rchain_step(s, m, &mut self.terms) {
            Ok(v) => v,
            Err(Error::NotReducibleNorCritical) => return self.settle_leaf(n),
            Err(e) => return Err(e),
        };
        let rule = distinguished(s).and_then(|(side, i)| {
            RuleId::for_formula(&s.side(side)[i], side).map(|r| RuleApplication::new(r, i))
        });
        let label = succs[0].1;
        let kids = succs.into_iter().map(|(x, _)| (x, Retained::default())).collect();
        self.add_children(n, label, rule, kids);
        Ok(())
    }

    fn expand_retained(&mut self, n: usize, s: &Sequent) -> Result<()> {
        let mut st = self.t.nodes[n].state.clone();
        let slot = |side: Side| if side == Side::Ante { 0 } else { 1 };
        let formulas: Vec<(Side, usize, &Formula)> = s.formulas().collect();
        let target = formulas
            .into_iter()
            .rev()
            .find(|(side, _, f)| is_reducible_formula(f, *side) && !st.discharged[slot(*side)].contains(*f))
            .map(|(side, i, f)| (side, i, f.clone()));
        if let Some((side, i, f)) = target {
            let rule = RuleId::for_formula(&f, side).ok_or(Error::NotReducibleNorCritical)?;
            let app = RuleApplication::new(rule.clone(), i);
            let succs = reduce(s, &app, true, None)?;
            st.discharged[slot(side)].insert(f);
            let app = match (&rule, &succs[..]) {
                // record the eigenvariable so the figure is explicit
                (RuleId::AllR(_), [next]) => match s.side(side)[i].match_instance(&next.succ[i]) {
                    Some(Some(v)) => app.with_witness(v),
                    _ => app,
                },
                _ => app,
            };
            let label = StepLabel::for_rule(&rule, false);
            let kids = succs.into_iter().map(|x| (x, st.clone())).collect();
            self.add_children(n, label, Some(app), kids);
            return Ok(());
        }
        loop {
            while let Some((f, t)) = st.pending.pop_front() {
                let inst = f.instantiate(std::slice::from_ref(&t))?;
                if s.ante.contains(&inst) {
                    continue;
                }
                let Some(i) = s.ante.iter().position(|g| *g == f) else { continue };
                let Term::All(x, _) = &f else { unreachable!() };
                let app = RuleApplication::new(RuleId::AllL(x.ty.clone()), i).with_witness(t);
                let succs = reduce(s, &app, true, None)?;
                let kids = succs.into_iter().map(|x| (x, st.clone())).collect();
                self.add_children(n, StepLabel::R34, Some(app), kids);
                return Ok(());
            }
            let crit: Vec<Formula> = s.ante.iter().filter(|f| matches!(f, Term::All(..))).cloned().collect();
            if crit.is_empty() {
                return self.settle_leaf(n);
            }
            if st.rounds >= self.budget.max_critical_rounds {
                return self.give_up(n, format!("critical round budget of {} reached", self.budget.max_critical_rounds));
            }
            st.rounds += 1;
            let m = self.t.nodes[n].depth;
            let vars = s.free_vars();
            let mut seen = BTreeSet::new();
            for j in 0..=m {
                for f in &crit {
                    let Term::All(x, _) = f else { unreachable!() };
                    let mut terms = vec![self.terms.nth(&x.ty, j)];
                    if j == 0 {
                        terms.extend(vars.iter().filter(|v| v.ty == x.ty).map(|v| Term::Free(v.clone())));
                    }
                    for t in terms {
                        let inst = f.instantiate(std::slice::from_ref(&t))?;
                        if !s.ante.contains(&inst) && seen.insert(inst) {
                            st.pending.push_back((f.clone(), t));
                        }
                    }
                }
            }
            if st.pending.is_empty() {
                return self.give_up(n, "a critical round added no new instance".into());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_proof_figure, order_of};

    fn sq(s: &str) -> Sequent {
        Sequent::parse(&s.replace('P', "a0:1").replace('Q', "a1:1").replace('R', "a2:1")).unwrap()
    }

    fn run(s: &str, sys: SystemId) -> TableauRun {
        build_tableau(&sq(s), sys, Budget::default())
    }

    #[test]
    fn identity_implication() {
        for sys in [SystemId::Kctt, SystemId::KcttH] {
            let r = run("|- (P -> P)", sys);
            assert_eq!(r.verdict, Verdict::Proved { order: 1 }, "{sys}");
        }
    }

    #[test]
    fn peirce() {
        for sys in [SystemId::Kctt, SystemId::KcttH] {
            let r = run("|- (((P -> Q) -> P) -> P)", sys);
            assert!(r.verdict.is_proved(), "{sys}: {:?}", r.verdict);
        }
    }

    #[test]
    fn refutation_in_chain_mode() {
        let r = run("|- (P -> Q)", SystemId::Kctt);
        let Verdict::Refuted { branch, hintikka, valuation } = &r.verdict else {
            panic!("{:?}", r.verdict)
        };
        assert_eq!(branch.sequents().cloned().collect::<Vec<_>>(), vec![sq("|- (P -> Q)"), sq("P |- Q")]);
        assert!(hintikka.passed());
        assert_eq!(valuation.get(&Term::atom(0)), Some(true));
        assert_eq!(valuation.get(&Term::atom(1)), Some(false));
        assert_eq!(extract_open_branch(&r.tableau).unwrap(), *branch);
    }

    #[test]
    fn refutation_with_retention() {
        let r = run("|- (P -> Q)", SystemId::KcttH);
        let Verdict::Refuted { branch, .. } = &r.verdict else {
            panic!("{:?}", r.verdict)
        };
        assert_eq!(branch.last().unwrap(), &sq("P |- Q, (P -> Q)"));
        let r = run("|- P", SystemId::KcttH);
        assert_eq!(extract_open_branch(&r.tableau).unwrap().len(), 1);
    }

    #[test]
    fn closed_tableau_has_no_open_branch() {
        let r = run("P |- P", SystemId::KcttH);
        assert_eq!(extract_open_branch(&r.tableau), Err(Error::NoOpenBranch));
    }

    #[test]
    fn figures_check() {
        for s in ["|- (((P -> Q) -> P) -> P)", "(P -> Q), (Q -> R) |- (P -> R)", "|- ((P -> _|_) -> (P -> Q))"] {
            let r = run(s, SystemId::KcttH);
            let Verdict::Proved { order } = r.verdict else { panic!("{s}: {:?}", r.verdict) };
            let pf = r.tableau.to_figure().unwrap();
            let report = check_proof_figure(&pf, SystemId::KctH);
            assert!(report.valid, "{s}: {report:?}");
            assert_eq!(order_of(&pf).unwrap(), order);
        }
    }

    #[test]
    fn universal_antecedent() {
        let r = run("(all x0:1 . (x0:1 -> Q)), P |- Q", SystemId::KcttH);
        assert!(r.verdict.is_proved(), "{:?}", r.verdict);
        let pf = r.tableau.to_figure().unwrap();
        assert!(check_proof_figure(&pf, SystemId::KctH).valid);
        let r = run("(all x0:1 . (x0:1 -> Q)), P |- Q", SystemId::Kctt);
        assert!(r.verdict.is_proved(), "{:?}", r.verdict);
    }

    #[test]
    fn budgets_give_unknown() {
        let r = build_tableau(
            &sq("|- (((P -> Q) -> P) -> P)"),
            SystemId::KcttH,
            Budget {
                max_depth: 1,
                ..Budget::default()
            },
        );
        assert!(matches!(r.verdict, Verdict::Unknown { .. }));
        let r = run("(all x0:1 . (x0:1 -> Q)) |- R", SystemId::KcttH);
        assert!(matches!(r.verdict, Verdict::Unknown { .. }), "{:?}", r.verdict);
    }

    #[test]
    fn higher_order_instance() {
        let r = build_tableau(
            &Sequent::parse("(all x0:(1) . x0:(1)(a0:1)) |- a0:1").unwrap(),
            SystemId::KcttH,
            Budget::default(),
        );
        assert!(r.verdict.is_proved(), "{:?}", r.verdict);
    }
}
