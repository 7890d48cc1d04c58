use serde_json::{json, Value};

use super::{explain_gentzen_step, is_axiom, RuleApplication, RuleId, SystemId};
use crate::error::{Error, Result};
use crate::sequent::Sequent;
use crate::syntax::{parse_term, Term};

/// A Gentzen derivation. Leaves carry no rule and must be axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofFigure {
    pub sequent: Sequent,
    pub rule: Option<RuleId>,
    pub witness: Option<Term>,
    pub children: Vec<ProofFigure>,
}

impl ProofFigure {
    pub fn leaf(sequent: Sequent) -> Self {
        ProofFigure {
            sequent,
            rule: None,
            witness: None,
            children: vec![],
        }
    }

    pub fn node(sequent: Sequent, rule: RuleId, witness: Option<Term>, children: Vec<ProofFigure>) -> Self {
        ProofFigure {
            sequent,
            rule: Some(rule),
            witness,
            children,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofFigure::size).sum::<usize>()
    }

    /// `{"sequent": .., "rule": .., "witness": .., "children": [..]}`
    pub fn to_json(&self) -> Value {
        json!({
            "sequent": self.sequent.to_string(),
            "rule": self.rule.as_ref().map(RuleId::name),
            "witness": self.witness.as_ref().map(ToString::to_string),
            "children": self.children.iter().map(ProofFigure::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Figure(e.to_string()))?;
        ProofFigure::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Figure("node is not an object".into()))?;
        let sequent = obj
            .get("sequent")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Figure("node lacks a sequent string".into()))?;
        let sequent = Sequent::parse(sequent)?;
        let rule = match obj.get("rule") {
            None | Some(Value::Null) => None,
            Some(Value::String(name)) => Some(rule_from_name(name)?),
            Some(other) => return Err(Error::Figure(format!("rule must be a string or null, got {other}"))),
        };
        let witness = match obj.get("witness") {
            None | Some(Value::Null) => None,
            Some(Value::String(t)) => Some(parse_term(t)?),
            Some(other) => return Err(Error::Figure(format!("witness must be a string or null, got {other}"))),
        };
        let children = match obj.get("children") {
            None | Some(Value::Null) => vec![],
            Some(Value::Array(items)) => items.iter().map(ProofFigure::from_json).collect::<Result<_>>()?,
            Some(other) => return Err(Error::Figure(format!("children must be an array, got {other}"))),
        };
        Ok(ProofFigure {
            sequent,
            rule,
            witness,
            children,
        })
    }
}

/// Quantifier rules get their type from the principal formula when checked.
fn rule_from_name(name: &str) -> Result<RuleId> {
    use crate::syntax::Type;
    Ok(match name.to_ascii_lowercase().as_str() {
        "impr" => RuleId::ImpR,
        "impl" => RuleId::ImpL,
        "negl" => RuleId::NegL,
        "allr" => RuleId::AllR(Type::One),
        "alll" => RuleId::AllL(Type::One),
        "lamr" => RuleId::LamR,
        "laml" => RuleId::LamL,
        _ => return Err(Error::Figure(format!("unknown rule '{name}'"))),
    })
}

/// Outcome of [`check_proof_figure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureReport {
    pub valid: bool,
    /// Child indices from the root to the first bad node.
    pub failing_path: Option<Vec<usize>>,
    pub message: Option<String>,
}

/// Every leaf is an axiom and every inner node is a correct rule instance.
pub fn check_proof_figure(pf: &ProofFigure, sys: SystemId) -> FigureReport {
    let mut path = Vec::new();
    match check_node(pf, sys, &mut path) {
        Ok(()) => FigureReport {
            valid: true,
            failing_path: None,
            message: None,
        },
        Err(msg) => FigureReport {
            valid: false,
            failing_path: Some(path),
            message: Some(msg),
        },
    }
}

fn check_node(pf: &ProofFigure, sys: SystemId, path: &mut Vec<usize>) -> std::result::Result<(), String> {
    if sys.is_tableau() {
        return Err(format!("{sys} is not a Gentzen system"));
    }
    let Some(rule) = &pf.rule else {
        if !pf.children.is_empty() {
            return Err("node without a rule has children".into());
        }
        return if is_axiom(&pf.sequent) {
            Ok(())
        } else {
            Err(format!("leaf {} is not an axiom", pf.sequent))
        };
    };
    let premises: Vec<Sequent> = pf.children.iter().map(|c| c.sequent.clone()).collect();
    let side = rule.side();
    let mut last = format!("no {} principal formula in {}", rule.name(), pf.sequent);
    let mut ok = false;
    for (i, f) in pf.sequent.side(side).iter().enumerate() {
        let Some(r) = RuleId::for_formula(f, side) else { continue };
        if r.name() != rule.name() {
            continue;
        }
        let app = RuleApplication {
            rule: r,
            side,
            index: i,
            witness: pf.witness.clone(),
        };
        match explain_gentzen_step(&premises, &pf.sequent, &app, sys) {
            Ok(()) => {
                ok = true;
                break;
            }
            Err(e) => last = e,
        }
    }
    if !ok {
        return Err(last);
    }
    for (k, c) in pf.children.iter().enumerate() {
        path.push(k);
        check_node(c, sys, path)?;
        path.pop();
    }
    Ok(())
}

/// Height of the derivation: 0 at axioms, one more than the maximal child.
pub fn order_of(pf: &ProofFigure) -> Result<usize> {
    if pf.children.is_empty() {
        return if pf.rule.is_none() && is_axiom(&pf.sequent) {
            Ok(0)
        } else {
            Err(Error::OpenLeaf(pf.sequent.to_string()))
        };
    }
    let mut m = 0;
    for c in &pf.children {
        m = m.max(order_of(c)?);
    }
    Ok(m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(s: &str) -> Sequent {
        Sequent::parse(&s.replace('P', "a0:1").replace('Q', "a1:1")).unwrap()
    }

    fn imp_figure() -> ProofFigure {
        ProofFigure::node(sq("|- (P -> P)"), RuleId::ImpR, None, vec![ProofFigure::leaf(sq("P |- P"))])
    }

    #[test]
    fn checks() {
        assert!(check_proof_figure(&ProofFigure::leaf(sq("P |- P")), SystemId::Kct).valid);
        assert!(check_proof_figure(&imp_figure(), SystemId::Kct).valid);
        let r = check_proof_figure(&imp_figure(), SystemId::KctH);
        assert!(!r.valid);
        assert_eq!(r.failing_path, Some(vec![]));
        let bad = ProofFigure::leaf(sq("(P -> Q) |- (P -> Q)"));
        assert!(!check_proof_figure(&bad, SystemId::Kct).valid);
    }

    #[test]
    fn failing_path_points_at_child() {
        let pf = ProofFigure::node(sq("|- (P -> Q)"), RuleId::ImpR, None, vec![ProofFigure::leaf(sq("P |- Q"))]);
        let r = check_proof_figure(&pf, SystemId::Kct);
        assert_eq!(r.failing_path, Some(vec![0]));
    }

    #[test]
    fn orders() {
        assert_eq!(order_of(&ProofFigure::leaf(sq("P |- P"))).unwrap(), 0);
        assert_eq!(order_of(&imp_figure()).unwrap(), 1);
        let impl_fig = ProofFigure::node(
            sq("(P -> Q), P |- Q"),
            RuleId::ImpL,
            None,
            vec![ProofFigure::leaf(sq("(P -> _|_), P |- Q, P")), ProofFigure::leaf(sq("Q, P |- Q"))],
        );
        assert_eq!(order_of(&impl_fig).unwrap(), 1);
        assert!(matches!(order_of(&ProofFigure::leaf(sq("P |- Q"))), Err(Error::OpenLeaf(_))));
    }

    #[test]
    fn json_round_trip() {
        let pf = imp_figure();
        let text = pf.to_json().to_string();
        assert_eq!(ProofFigure::from_json_str(&text).unwrap(), pf);
        assert!(ProofFigure::from_json_str("{").is_err());
        assert!(ProofFigure::from_json_str(r#"{"sequent": "|-", "rule": "Cut", "children": []}"#).is_err());
    }
}
