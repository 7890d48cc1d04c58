//! Axioms and rule schemata of the four calculi, formula classification and
//! rule application in both the tableau and the Gentzen direction.

mod figure;

pub use figure::{check_proof_figure, order_of, FigureReport, ProofFigure};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequent::{Sequent, Side};
use crate::syntax::connectives::bot;
use crate::syntax::{fresh_free_var, Formula, Term, Type};

/// The four calculi. `Kct`/`KctH` read rules from premises to conclusion,
/// `Kctt`/`KcttH` from a sequent to its successors. The `H` variants retain
/// the principal formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SystemId {
    Kct,
    KctH,
    Kctt,
    KcttH,
}

impl SystemId {
    pub fn retains(self) -> bool {
        matches!(self, SystemId::KctH | SystemId::KcttH)
    }

    pub fn is_tableau(self) -> bool {
        matches!(self, SystemId::Kctt | SystemId::KcttH)
    }

    /// The same rule set read in the other direction.
    pub fn dual(self) -> SystemId {
        match self {
            SystemId::Kct => SystemId::Kctt,
            SystemId::Kctt => SystemId::Kct,
            SystemId::KctH => SystemId::KcttH,
            SystemId::KcttH => SystemId::KctH,
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemId::Kct => "kct",
            SystemId::KctH => "kct_h",
            SystemId::Kctt => "kctt",
            SystemId::KcttH => "kctt_h",
        })
    }
}

impl FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kct" => Ok(SystemId::Kct),
            "kct_h" | "kcth" => Ok(SystemId::KctH),
            "kctt" => Ok(SystemId::Kctt),
            "kctt_h" | "kctth" => Ok(SystemId::KcttH),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown system '{other}'"),
            }),
        }
    }
}

/// Rule names. `NegL` handles an antecedent `A -> _|_` by moving `A` to the
/// succedent; the other rules are the six schemata of every calculus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RuleId {
    ImpR,
    ImpL,
    NegL,
    AllR(Type),
    AllL(Type),
    LamR,
    LamL,
}

impl RuleId {
    /// Side of the principal formula.
    pub fn side(&self) -> Side {
        match self {
            RuleId::ImpR | RuleId::AllR(_) | RuleId::LamR => Side::Succ,
            _ => Side::Ante,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RuleId::ImpR => "ImpR",
            RuleId::ImpL => "ImpL",
            RuleId::NegL => "NegL",
            RuleId::AllR(_) => "AllR",
            RuleId::AllL(_) => "AllL",
            RuleId::LamR => "LamR",
            RuleId::LamL => "LamL",
        }
    }

    /// The rule whose principal formula `f` would be on `side`, if any.
    pub fn for_formula(f: &Formula, side: Side) -> Option<RuleId> {
        Some(match (side, f) {
            (Side::Succ, Term::Imp(..)) => RuleId::ImpR,
            (Side::Ante, Term::Imp(_, b)) if b.is_bottom() => RuleId::NegL,
            (Side::Ante, Term::Imp(..)) => RuleId::ImpL,
            (Side::Succ, Term::All(x, _)) => RuleId::AllR(x.ty.clone()),
            (Side::Ante, Term::All(x, _)) => RuleId::AllL(x.ty.clone()),
            (Side::Succ, t) if t.is_redex() => RuleId::LamR,
            (Side::Ante, t) if t.is_redex() => RuleId::LamL,
            _ => return None,
        })
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::AllR(t) | RuleId::AllL(t) => write!(f, "{}^{t}", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

/// A rule together with its principal position and, for quantifier rules,
/// the instance term (eigenvariable for `AllR`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub side: Side,
    pub index: usize,
    pub witness: Option<Term>,
}

impl RuleApplication {
    pub fn new(rule: RuleId, index: usize) -> Self {
        RuleApplication {
            side: rule.side(),
            rule,
            index,
            witness: None,
        }
    }

    pub fn with_witness(mut self, t: Term) -> Self {
        self.witness = Some(t);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormulaClass {
    ReducibleS,
    ReducibleA,
    Critical,
    AtomicMinimal,
    InertImpLGuard,
}

pub fn classify(f: &Formula, side: Side) -> FormulaClass {
    match (side, f) {
        (Side::Ante, Term::All(..)) => FormulaClass::Critical,
        (Side::Succ, Term::All(..)) => FormulaClass::ReducibleS,
        (Side::Ante, Term::Imp(_, b)) if b.is_bottom() => FormulaClass::InertImpLGuard,
        (Side::Ante, Term::Imp(..)) => FormulaClass::ReducibleA,
        (Side::Succ, Term::Imp(..)) => FormulaClass::ReducibleS,
        (Side::Ante, t) if t.is_redex() => FormulaClass::ReducibleA,
        (Side::Succ, t) if t.is_redex() => FormulaClass::ReducibleS,
        _ => FormulaClass::AtomicMinimal,
    }
}

/// Formulas the engine reduces before any critical step. An antecedent
/// `A -> _|_` counts, since `NegL` applies to it.
pub fn is_reducible_formula(f: &Formula, side: Side) -> bool {
    matches!(
        classify(f, side),
        FormulaClass::ReducibleS | FormulaClass::ReducibleA | FormulaClass::InertImpLGuard
    )
}

/// Rightmost reducible formula, scanning the antecedent and then the succedent.
pub fn distinguished(s: &Sequent) -> Option<(Side, usize)> {
    s.formulas()
        .filter(|(side, _, f)| is_reducible_formula(f, *side))
        .map(|(side, i, _)| (side, i))
        .last()
}

pub fn is_reducible(s: &Sequent) -> bool {
    distinguished(s).is_some()
}

/// Positions of the antecedent universal formulas.
pub fn critical_positions(s: &Sequent) -> Vec<usize> {
    s.ante
        .iter()
        .enumerate()
        .filter(|(_, f)| matches!(f, Term::All(..)))
        .map(|(i, _)| i)
        .collect()
}

pub fn is_critical(s: &Sequent) -> bool {
    !is_reducible(s) && !critical_positions(s).is_empty()
}

pub fn is_primitive(s: &Sequent) -> bool {
    !is_reducible(s) && critical_positions(s).is_empty()
}

/// Some atomic formula occurs on both sides. The context is unrestricted.
pub fn is_axiom(s: &Sequent) -> bool {
    s.ante.iter().any(|a| a.is_atomic() && s.succ.contains(a))
}

/// The axiom schema read literally: additionally every formula is atomic.
pub fn is_literal_axiom(s: &Sequent) -> bool {
    is_axiom(s) && s.ante.iter().chain(&s.succ).all(Term::is_atomic)
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::RuleShapeMismatch(msg.into())
}

/// Checks that the principal formula has the rule's shape and returns it.
fn principal<'a>(s: &'a Sequent, app: &RuleApplication) -> Result<&'a Formula> {
    if app.side != app.rule.side() {
        return Err(mismatch(format!("{} acts on the {}", app.rule, app.rule.side())));
    }
    let f = s
        .get(app.side, app.index)
        .ok_or_else(|| mismatch(format!("no formula at {} {}", app.side, app.index)))?;
    let expected = RuleId::for_formula(f, app.side);
    let fits = match (&app.rule, &expected) {
        (RuleId::ImpL, Some(RuleId::NegL)) => return Err(Error::GuardViolated),
        (a, Some(b)) => a == b,
        (_, None) => false,
    };
    if !fits {
        return Err(mismatch(format!("{} does not apply to {f}", app.rule)));
    }
    Ok(f)
}

fn insert_at(v: &mut Vec<Formula>, pos: Option<usize>, f: Formula) {
    match pos {
        Some(p) => v.insert(p, f),
        None => v.push(f),
    }
}

/// Successors of `s` in the tableau direction.
///
/// `retain` keeps the principal formula (the `h` systems). `extra_pos` is
/// where a formula moved to the other side (`A` of `ImpR` and `NegL`) is
/// inserted; `None` appends it.
pub fn reduce(s: &Sequent, app: &RuleApplication, retain: bool, extra_pos: Option<usize>) -> Result<Vec<Sequent>> {
    let f = principal(s, app)?.clone();
    let i = app.index;
    let mut out = s.clone();
    match (&app.rule, &f) {
        (RuleId::ImpR, Term::Imp(a, b)) => {
            if retain {
                out.succ.insert(i, (**b).clone());
            } else {
                out.succ[i] = (**b).clone();
            }
            insert_at(&mut out.ante, extra_pos, (**a).clone());
            Ok(vec![out])
        }
        (RuleId::ImpL, Term::Imp(a, b)) => {
            let mut left = s.clone();
            let mut right = s.clone();
            let na = Term::imp((**a).clone(), bot());
            if retain {
                left.ante.insert(i, na);
                right.ante.insert(i, (**b).clone());
            } else {
                left.ante[i] = na;
                right.ante[i] = (**b).clone();
            }
            Ok(vec![left, right])
        }
        (RuleId::NegL, Term::Imp(a, _)) => {
            if !retain {
                out.ante.remove(i);
            }
            insert_at(&mut out.succ, extra_pos, (**a).clone());
            Ok(vec![out])
        }
        (RuleId::AllR(_), Term::All(x, _)) => {
            let v = match &app.witness {
                None => fresh_free_var(&x.ty, &s.free_vars()),
                Some(Term::Free(v)) if v.ty == x.ty => v.clone(),
                Some(t) => return Err(mismatch(format!("eigenvariable {t} is not a free variable of type {}", x.ty))),
            };
            if s.occurs_free(&v) {
                return Err(Error::EigenvariableClash(v.to_string()));
            }
            let inst = f.instantiate(&[Term::Free(v)])?;
            if retain {
                out.succ.insert(i, inst);
            } else {
                out.succ[i] = inst;
            }
            Ok(vec![out])
        }
        (RuleId::AllL(_), Term::All(..)) => {
            let t = app
                .witness
                .as_ref()
                .ok_or_else(|| mismatch("AllL needs an instance term"))?;
            out.ante.insert(i, f.instantiate(std::slice::from_ref(t))?);
            Ok(vec![out])
        }
        (RuleId::LamR | RuleId::LamL, _) => {
            let c = f.contract().ok_or_else(|| mismatch(format!("{f} is not a redex")))?;
            let side = out.side_mut(app.side);
            if retain {
                side.insert(i, c);
            } else {
                side[i] = c;
            }
            Ok(vec![out])
        }
        _ => Err(mismatch(format!("{} does not apply to {f}", app.rule))),
    }
}

/// Lower sequents of a tableau rule in KCTT or KCTT_h.
pub fn apply_tableau_rule(s: &Sequent, app: &RuleApplication, sys: SystemId) -> Result<Vec<Sequent>> {
    if !sys.is_tableau() {
        return Err(mismatch(format!("{sys} is not a tableau system")));
    }
    reduce(s, app, sys.retains(), None)
}

/// Does `premises / conclusion` instantiate the rule of a Gentzen system?
pub fn check_gentzen_step(premises: &[Sequent], conclusion: &Sequent, app: &RuleApplication, sys: SystemId) -> bool {
    explain_gentzen_step(premises, conclusion, app, sys).is_ok()
}

/// Like [`check_gentzen_step`] but says what went wrong.
pub fn explain_gentzen_step(
    premises: &[Sequent],
    conclusion: &Sequent,
    app: &RuleApplication,
    sys: SystemId,
) -> std::result::Result<(), String> {
    if sys.is_tableau() {
        return Err(format!("{sys} is not a Gentzen system"));
    }
    let retain = sys.retains();
    let f = principal(conclusion, app).map_err(|e| e.to_string())?;
    let mut app = app.clone();
    match (&app.rule, f) {
        (RuleId::AllR(_), Term::All(..)) if app.witness.is_none() => {
            let inst = premises
                .first()
                .and_then(|p| p.succ.get(app.index))
                .ok_or("premise lacks the instance formula")?;
            app.witness = Some(match f.match_instance(inst) {
                Some(Some(t)) => t,
                Some(None) => Term::Free(fresh_free_var(&inst_type(f), &conclusion.free_vars())),
                None => return Err(format!("{inst} is not an instance of {f}")),
            });
        }
        (RuleId::AllL(_), Term::All(x, _)) if app.witness.is_none() => {
            let inst = premises
                .first()
                .and_then(|p| p.ante.get(app.index))
                .ok_or("premise lacks the instance formula")?;
            app.witness = Some(match f.match_instance(inst) {
                Some(Some(t)) => t,
                Some(None) => Term::free(0, x.ty.clone()),
                None => return Err(format!("{inst} is not an instance of {f}")),
            });
        }
        _ => {}
    }
    let moved_side = match app.rule {
        RuleId::ImpR => Some(Side::Ante),
        RuleId::NegL => Some(Side::Succ),
        _ => None,
    };
    let positions: Vec<Option<usize>> = match moved_side {
        Some(side) => {
            (0..=conclusion.side(side).len()).map(Some).collect()
        }
        None => vec![None],
    };
    let mut last_err = String::from("premises do not match the rule");
    for pos in positions {
        match reduce(conclusion, &app, retain, pos) {
            Ok(expected) if expected == premises => return Ok(()),
            Ok(_) => {}
            Err(e) => last_err = e.to_string(),
        }
    }
    Err(format!("{}: {last_err}", app.rule))
}

fn inst_type(f: &Formula) -> Type {
    match f {
        Term::All(x, _) => x.ty.clone(),
        _ => Type::One,
    }
}
