//! Sequents and boolean sequents.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::syntax::connectives::{and_all, bot, neg, or_all};
use crate::syntax::parse::{parse_sequent_sides, ParseOptions};
use crate::syntax::{Formula, FreeVar, Term};

/// Antecedent or succedent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Ante,
    Succ,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Ante => "ante",
            Side::Succ => "succ",
        })
    }
}

/// `A1, ..., An |- B1, ..., Bm`. Order and multiplicity matter.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub ante: Vec<Formula>,
    pub succ: Vec<Formula>,
}

impl Sequent {
    /// Builds a sequent, renaming bound variables canonically.
    pub fn new(ante: Vec<Formula>, succ: Vec<Formula>) -> Self {
        Sequent {
            ante: ante.iter().map(Term::canonical).collect(),
            succ: succ.iter().map(Term::canonical).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Sequent::parse_with(text, &ParseOptions::default())
    }

    pub fn parse_with(text: &str, opts: &ParseOptions) -> Result<Self> {
        let (ante, succ) = parse_sequent_sides(text, opts)?;
        Ok(Sequent::new(ante, succ))
    }

    pub fn side(&self, side: Side) -> &[Formula] {
        match side {
            Side::Ante => &self.ante,
            Side::Succ => &self.succ,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut Vec<Formula> {
        match side {
            Side::Ante => &mut self.ante,
            Side::Succ => &mut self.succ,
        }
    }

    pub fn get(&self, side: Side, index: usize) -> Option<&Formula> {
        self.side(side).get(index)
    }

    pub fn formulas(&self) -> impl Iterator<Item = (Side, usize, &Formula)> {
        let a = self.ante.iter().enumerate().map(|(i, f)| (Side::Ante, i, f));
        let s = self.succ.iter().enumerate().map(|(i, f)| (Side::Succ, i, f));
        a.chain(s)
    }

    pub fn free_vars(&self) -> BTreeSet<FreeVar> {
        self.ante.iter().chain(&self.succ).flat_map(Term::free_vars).collect()
    }

    pub fn occurs_free(&self, v: &FreeVar) -> bool {
        self.ante.iter().chain(&self.succ).any(|f| f.occurs_free(v))
    }

    pub fn len(&self) -> usize {
        self.ante.len() + self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ante.is_empty() && self.succ.is_empty()
    }

    /// The formula this sequent stands for: `(A1 & ... & An) -> (B1 v ... v Bm)`,
    /// `~(A1 & ... & An)`, `B1 v ... v Bm` or `_|_`, with right-associated chains.
    pub fn corresponding_formula(&self) -> Formula {
        match (and_all(&self.ante), or_all(&self.succ)) {
            (Some(a), Some(b)) => Term::imp(a, b),
            (Some(a), None) => neg(a),
            (None, Some(b)) => b,
            (None, None) => bot(),
        }
    }

    /// Position-wise image under a valuation.
    pub fn map_valuation(&self, v: &BTreeMap<Formula, bool>) -> Result<BoolSequent> {
        let look = |f: &Formula| v.get(f).copied().ok_or_else(|| Error::UndefinedAt(f.clone()));
        Ok(BoolSequent {
            ante: self.ante.iter().map(look).collect::<Result<_>>()?,
            succ: self.succ.iter().map(look).collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[Formula]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match (self.ante.is_empty(), self.succ.is_empty()) {
            (true, true) => write!(f, "|-"),
            (true, false) => write!(f, "|- {}", join(&self.succ)),
            (false, true) => write!(f, "{} |-", join(&self.ante)),
            (false, false) => write!(f, "{} |- {}", join(&self.ante), join(&self.succ)),
        }
    }
}

impl Serialize for Sequent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A sequent of truth values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoolSequent {
    pub ante: Vec<bool>,
    pub succ: Vec<bool>,
}

impl BoolSequent {
    pub fn new(ante: Vec<bool>, succ: Vec<bool>) -> Self {
        BoolSequent { ante, succ }
    }

    /// Truth value of the corresponding formula.
    pub fn tv(&self) -> bool {
        !self.ante.iter().all(|&b| b) || self.succ.iter().any(|&b| b)
    }
}

pub fn tv(bs: &BoolSequent) -> bool {
    bs.tv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::connectives::{and, or};

    #[test]
    fn parse_and_print() {
        for s in ["|-", "|- a0:1", "a0:1 |-", "a0:1, (a1:1 -> a0:1) |- a1:1, a0:1"] {
            assert_eq!(Sequent::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn corresponding_formulas() {
        let a = |i| Term::atom(i);
        let s = Sequent::new(vec![a(0), a(1)], vec![a(2)]);
        assert_eq!(s.corresponding_formula(), Term::imp(and(a(0), a(1)), a(2)));
        assert_eq!(Sequent::default().corresponding_formula(), bot());
        assert_eq!(Sequent::new(vec![a(0)], vec![]).corresponding_formula(), neg(a(0)));
        assert_eq!(Sequent::new(vec![], vec![a(0), a(1)]).corresponding_formula(), or(a(0), a(1)));
    }

    #[test]
    fn truth_values() {
        let (t, f) = (true, false);
        assert!(BoolSequent::new(vec![t, f, t], vec![f, t, f]).tv());
        assert!(BoolSequent::new(vec![t, f, t, f], vec![]).tv());
        assert!(!BoolSequent::new(vec![], vec![f, f, f]).tv());
        assert!(!BoolSequent::default().tv());
        for x in [t, f] {
            assert!(BoolSequent::new(vec![x], vec![x]).tv());
        }
    }

    #[test]
    fn valuations() {
        let p = Term::atom(0);
        let q = Term::atom(1);
        let v = BTreeMap::from([(p.clone(), true)]);
        let s = Sequent::new(vec![p.clone()], vec![p.clone()]);
        assert_eq!(s.map_valuation(&v).unwrap(), BoolSequent::new(vec![true], vec![true]));
        assert_eq!(Sequent::default().map_valuation(&v).unwrap(), BoolSequent::default());
        let s = Sequent::new(vec![p], vec![q.clone()]);
        assert_eq!(s.map_valuation(&v), Err(Error::UndefinedAt(q)));
    }
}
