//! The acceptance suite: property checks at desk scale, one result per
//! criterion. Shared by the `acceptance` test target and `kct selftest`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::calculus::{check_proof_figure, RuleApplication, RuleId, SystemId};
use crate::engine::{build_tableau, check_inversion, cut_harness, prove_derived, Budget, Verdict};
use crate::gen;
use crate::rank::rank;
use crate::semantics::{
    check_partial_valuation, eval_formula, prop_value, propositional_oracle, random_model, sequent_true_in_model,
    term_universe, types_of_sequent, FiniteModel,
};
use crate::sequent::Sequent;
use crate::syntax::connectives::bot;
use crate::syntax::{fresh_free_var, parse_formula_with, FreeVar, ParseOptions, Signature, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {:<24} {}", self.name, self.detail)
    }
}

/// Implicational and `_|_` validities over the atoms `P`, `Q`, `R`.
pub const TAUTOLOGIES: [&str; 20] = [
    "P -> P",
    "P -> Q -> P",
    "(P -> Q -> R) -> (P -> Q) -> P -> R",
    "((P -> Q) -> P) -> P",
    "_|_ -> P",
    "~~P -> P",
    "P -> ~~P",
    "(P -> P -> Q) -> P -> Q",
    "(P -> Q) -> (Q -> R) -> P -> R",
    "(P -> Q) -> ~Q -> ~P",
    "(~Q -> ~P) -> P -> Q",
    "~P -> P -> Q",
    "(P -> Q) -> (~P -> Q) -> Q",
    "((P -> Q) -> Q) -> (Q -> P) -> P",
    "(P -> Q -> R) -> Q -> P -> R",
    "~(P -> ~Q) -> P",
    "~~(P -> Q) -> ~~P -> ~~Q",
    "(~P -> P) -> P",
    "((P -> Q) -> R) -> (P -> R) -> R",
    "~~(~~P -> P)",
];

/// Higher-order goals with quantification over predicates.
pub const HIGHER_ORDER: [&str; 5] = [
    "|- (all x0:(1) . (x0:(1)(a0:1) -> x0:(1)(a0:1)))",
    "(all x0:(1) . x0:(1)(a0:1)) |- a0:1",
    "|- (all x0:(0) . (x0:(0)('c) -> x0:(0)('c)))",
    "(all x0:(1) . x0:(1)(a0:1)) |- (all x0:(1) . x0:(1)(a0:1))",
    "|- ((all x0:(1) . x0:(1)(a0:1)) -> (a1:1 -> a0:1))",
];

pub fn parse_tautology(text: &str) -> Sequent {
    let opts = ParseOptions::with_atoms(&["P", "Q", "R"]);
    let f = parse_formula_with(text, &opts).expect("corpus formula parses");
    Sequent::new(vec![], vec![f])
}

/// Runs every criterion with the given seed.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    let mut s = Suite::new(seed);
    let criteria: [fn(&mut Suite) -> CriterionResult; 10] = [
        Suite::rank_laws,
        Suite::tautology_corpus,
        Suite::refutation_soundness,
        Suite::axiom_theorem,
        Suite::weak_inference,
        Suite::cut_harness,
        Suite::beta_rules,
        Suite::higher_order,
        // these two read the proofs collected by the others
        Suite::rule_duality,
        Suite::finite_model_soundness,
    ];
    criteria
        .iter()
        .map(|c| {
            let start = Instant::now();
            let mut r = c(&mut s);
            r.detail = format!("{} [{:.2?}]", r.detail, start.elapsed());
            r
        })
        .collect()
}

/// Criterion state: the random source and every sequent proved so far.
pub struct Suite {
    rng: ChaCha8Rng,
    proved: Vec<Sequent>,
    tableau_proofs: usize,
    figures_ok: usize,
    figure_failures: Vec<String>,
}

fn result(name: &'static str, failures: &[String], detail: String) -> CriterionResult {
    let detail = match failures.first() {
        None => detail,
        Some(first) => format!("{detail}; {} failure(s), first: {first}", failures.len()),
    };
    CriterionResult {
        name,
        passed: failures.is_empty(),
        detail,
    }
}

impl Suite {
    pub fn new(seed: u64) -> Self {
        Suite {
            rng: ChaCha8Rng::seed_from_u64(seed),
            proved: Vec::new(),
            tableau_proofs: 0,
            figures_ok: 0,
            figure_failures: Vec::new(),
        }
    }

    /// Proves in KCTT_h and records the figure check of the proof.
    fn prove(&mut self, s: &Sequent, budget: Budget) -> (Verdict, Duration) {
        let start = Instant::now();
        let run = build_tableau(s, SystemId::KcttH, budget);
        let took = start.elapsed();
        if run.verdict.is_proved() {
            self.proved.push(s.clone());
            self.tableau_proofs += 1;
            match run.tableau.to_figure() {
                Ok(pf) if check_proof_figure(&pf, SystemId::KctH).valid => self.figures_ok += 1,
                Ok(pf) => self.figure_failures.push(format!("{s}: {:?}", check_proof_figure(&pf, SystemId::KctH).message)),
                Err(e) => self.figure_failures.push(format!("{s}: {e}")),
            }
        }
        (run.verdict, took)
    }

    pub fn rank_laws(&mut self) -> CriterionResult {
        let mut failures = Vec::new();
        let mut checks = 0;
        let mut slowest = Duration::ZERO;
        for _ in 0..1000 {
            let f = gen::formula(&mut self.rng, 30);
            let start = Instant::now();
            let r = rank(&f);
            slowest = slowest.max(start.elapsed());
            let mut subs = Vec::new();
            f.visit(&mut |t| {
                if t.is_closed() && t.is_formula() {
                    subs.push(t.clone());
                }
            });
            for t in subs {
                let rt = if t == f { r } else { rank(&t) };
                let smaller: Vec<Term> = match &t {
                    Term::Imp(a, b) => vec![(**a).clone(), (**b).clone()],
                    Term::All(x, _) => {
                        let v = fresh_free_var(&x.ty, &t.free_vars());
                        vec![t.instantiate(&[Term::Free(v)]).expect("instance")]
                    }
                    _ => t.contract().into_iter().collect(),
                };
                for u in smaller {
                    checks += 1;
                    if rank(&u) >= rt {
                        failures.push(format!("rank({u}) >= rank({t})"));
                    }
                }
            }
        }
        if slowest >= Duration::from_millis(50) {
            failures.push(format!("slowest rank computation took {slowest:?}"));
        }
        result("rank-laws", &failures, format!("{checks} inequalities on 1000 formulas, slowest rank {slowest:?}"))
    }

    pub fn tautology_corpus(&mut self) -> CriterionResult {
        let mut failures = Vec::new();
        let mut slowest = Duration::ZERO;
        for text in TAUTOLOGIES {
            let s = parse_tautology(text);
            if propositional_oracle(&s) != Ok(true) {
                failures.push(format!("{text} is not a tautology"));
            }
            let (v, took) = self.prove(&s, Budget::default());
            slowest = slowest.max(took);
            if !v.is_proved() {
                failures.push(format!("{text}: {}", v.name()));
            }
            if took >= Duration::from_secs(1) {
                failures.push(format!("{text} took {took:?}"));
            }
        }
        result("tautology-corpus", &failures, format!("20 formulas, slowest {slowest:?}"))
    }

    pub fn refutation_soundness(&mut self) -> CriterionResult {
        let mut failures = Vec::new();
        let mut n = 0;
        while n < 100 {
            let s = gen::prop_sequent(&mut self.rng, 3, 5);
            if propositional_oracle(&s) != Ok(false) {
                continue;
            }
            n += 1;
            let run = build_tableau(&s, SystemId::KcttH, Budget::default());
            let Verdict::Refuted { hintikka, valuation, .. } = &run.verdict else {
                failures.push(format!("{s}: {}", run.verdict.name()));
                continue;
            };
            if !hintikka.passed() {
                failures.push(format!("{s}: Hintikka check failed"));
            }
            if !check_partial_valuation(valuation, &term_universe(valuation)).passed() {
                failures.push(format!("{s}: valuation fails V1-V5"));
            }
            let atoms = valuation
                .atomic_assignment()
                .into_iter()
                .filter_map(|(f, b)| match f {
                    Term::Free(v) => Some((v, b)),
                    _ => None,
                })
                .collect();
            let root_true = !s.ante.iter().all(|f| prop_value(f, &atoms)) || s.succ.iter().any(|f| prop_value(f, &atoms));
            if root_true {
                failures.push(format!("{s}: atomic assignment does not falsify the root"));
            }
        }
        result("refutation-soundness", &failures, "100 non-valid sequents".into())
    }

    pub fn axiom_theorem(&mut self) -> CriterionResult {
        let mut failures = Vec::new();
        for _ in 0..200 {
            let a = gen::formula_of_rank(&mut self.rng, 4);
            let s = Sequent::new(vec![a.clone()], vec![a]);
            self.derived(&s, &mut failures);
        }
        for _ in 0..100 {
            let pick = |rng: &mut ChaCha8Rng| -> Vec<Term> { (0..rng.gen_range(0..=2)).map(|_| gen::formula(rng, 12)).collect() };
            let mut ante = pick(&mut self.rng);
            let at = self.rng.gen_range(0..=ante.len());
            ante.insert(at, bot());
            let succ = pick(&mut self.rng);
            self.derived(&Sequent::new(ante, succ), &mut failures);
        }
        result("axiom-theorem", &failures, "200 identities and 100 falsum contexts".into())
    }

    fn derived(&mut self, s: &Sequent, failures: &mut Vec<String>) {
        let d = prove_derived(s, SystemId::KcttH, Budget::default());
        match (&d.verdict, &d.figure) {
            (Verdict::Proved { .. }, Some(pf)) if check_proof_figure(pf, SystemId::KctH).valid => self.proved.push(s.clone()),
            (v, _) => failures.push(format!("{s}: {}", v.name())),
        }
    }

    pub fn rule_duality(&mut self) -> CriterionResult {
        let total = self.tableau_proofs;
        let mut failures = self.figure_failures.clone();
        if total == 0 {
            failures.push("no tableau proofs were recorded".into());
        }
        result("rule-duality", &failures, format!("{}/{total} tableau proofs convert to checked figures", self.figures_ok))
    }

    /// Lower sequents of rule instances with their rule applications.
    fn inversion_instances(&mut self) -> Vec<(Sequent, RuleApplication)> {
        let mut out = Vec::new();
        let fixed = [
            "|- (all x0:1 . (x0:1 -> x0:1))",
            "(all x0:1 . x0:1) |- a0:1",
            "|- (lam x0:1 . (x0:1 -> x0:1))(a0:1)",
            "(lam x0:1 . x0:1)(a0:1) |- a0:1",
        ];
        for text in fixed {
            let s = Sequent::parse(text).expect("fixed instance");
            let app = match (&s.ante[..], &s.succ[..]) {
                (_, [Term::All(x, _)]) => RuleApplication::new(RuleId::AllR(x.ty.clone()), 0),
                ([Term::All(x, _)], _) => RuleApplication::new(RuleId::AllL(x.ty.clone()), 0).with_witness(Term::atom(0)),
                (_, [t]) if t.is_redex() => RuleApplication::new(RuleId::LamR, 0),
                _ => RuleApplication::new(RuleId::LamL, 0),
            };
            out.push((s, app));
        }
        let mut attempts = 0;
        while out.len() < 50 && attempts < 10_000 {
            attempts += 1;
            let s = gen::prop_sequent(&mut self.rng, 2, 3);
            if propositional_oracle(&s) != Ok(true) {
                continue;
            }
            let apps: Vec<RuleApplication> = s
                .formulas()
                .filter_map(|(side, i, f)| RuleId::for_formula(f, side).map(|r| RuleApplication::new(r, i)))
                // falsum is the universal `all x0:1 . x0:1`; instantiate it with an atom
                .map(|app| match app.rule {
                    RuleId::AllL(_) => app.with_witness(Term::atom(0)),
                    _ => app,
                })
                .collect();
            if let Some(app) = apps.choose(&mut self.rng) {
                out.push((s, app.clone()));
            }
        }
        out
    }

    pub fn weak_inference(&mut self) -> CriterionResult {
        let mut failures = Vec::new();
        let instances = self.inversion_instances();
        let mut orders = Vec::new();
        for (s, app) in &instances {
            match check_inversion(s, app, SystemId::KctH, 6) {
                Ok(c) if c.holds() => orders.push(c.lower_order),
                Ok(c) => failures.push(format!("{s} by {}: uppers {:?} exceed order {}", app.rule, c.uppers, c.lower_order)),
                Err(e) => failures.push(format!("{s}: {e}")),
            }
        }
        if instances.len() < 50 {
            failures.push(format!("only {} instances sampled", instances.len()));
        }
        let max = orders.iter().max().copied().unwrap_or(0);
        result("weak-inference", &failures, format!("{} instances, lower orders up to {max}", instances.len()))
    }

    pub fn cut_harness(&mut self) -> CriterionResult {
        let mut failures = Vec::new();
        for _ in 0..50 {
            let text = TAUTOLOGIES.choose(&mut self.rng).expect("corpus");
            let a = parse_tautology(text).succ[0].clone();
            let q = Term::atom(self.rng.gen_range(0..3));
            let left = if self.rng.gen_bool(0.5) {
                Sequent::new(vec![], vec![a.clone()])
            } else {
                Sequent::new(vec![q.clone()], vec![a.clone(), q.clone()])
            };
            let b = match self.rng.gen_range(0..3) {
                0 => a.clone(),
                1 => Term::imp(q, a.clone()),
                _ => crate::syntax::neg(crate::syntax::neg(a.clone())),
            };
            let right = Sequent::new(vec![a], vec![b]);
            match cut_harness(&left, &right, SystemId::KcttH, Budget::default()) {
                Ok(c) if c.run.verdict.is_proved() => {
                    if propositional_oracle(&c.conclusion) != Ok(true) {
                        failures.push(format!("{} is not valid", c.conclusion));
                    }
                    self.proved.push(c.conclusion);
                }
                Ok(c) => failures.push(format!("{}: {} within {} nodes", c.conclusion, c.run.verdict.name(), c.budget.max_nodes)),
                Err(e) => failures.push(e.to_string()),
            }
        }
        result("cut-harness", &failures, "50 cut instances".into())
    }

    pub fn beta_rules(&mut self) -> CriterionResult {
        let mut failures = Vec::new();
        let mut proofs = 0;
        for _ in 0..500 {
            let r = gen::redex(&mut self.rng, 20);
            let c = r.contract().expect("redex contracts");
            let s = Sequent::new(vec![], vec![r.clone(), c.clone()]);
            match random_model(&types_of_sequent(&s), &Signature::default(), &mut self.rng) {
                Ok(m) => {
                    if let Err(e) = same_value(&r, &c, &m) {
                        failures.push(e);
                    }
                }
                Err(e) => failures.push(format!("{r}: {e}")),
            }
            for goal in [Term::imp(r.clone(), c.clone()), Term::imp(c, r)] {
                let s = Sequent::new(vec![], vec![goal]);
                let (v, _) = self.prove(&s, Budget::default());
                if v.is_proved() {
                    proofs += 1;
                } else {
                    failures.push(format!("{s}: {}", v.name()));
                }
            }
        }
        result("beta-rules", &failures, format!("500 redexes evaluated, {proofs} implications proved"))
    }

    pub fn higher_order(&mut self) -> CriterionResult {
        let mut failures = Vec::new();
        let mut slowest = Duration::ZERO;
        for text in HIGHER_ORDER {
            let s = Sequent::parse(text).expect("fixed goal");
            let (v, took) = self.prove(&s, Budget::default());
            slowest = slowest.max(took);
            if !v.is_proved() {
                failures.push(format!("{text}: {}", v.name()));
            }
            if took >= Duration::from_secs(5) {
                failures.push(format!("{text} took {took:?}"));
            }
        }
        result("higher-order", &failures, format!("5 goals, slowest {slowest:?}"))
    }

    pub fn finite_model_soundness(&mut self) -> CriterionResult {
        let mut failures = Vec::new();
        let mut seen = BTreeSet::new();
        let proved: Vec<Sequent> = self.proved.iter().filter(|s| seen.insert((*s).clone())).cloned().collect();
        for s in &proved {
            let types = types_of_sequent(s);
            for _ in 0..20 {
                let outcome = random_model(&types, &Signature::default(), &mut self.rng).and_then(|m| sequent_true_in_model(s, &m));
                match outcome {
                    Ok(true) => {}
                    Ok(false) => {
                        failures.push(format!("{s} is false in a model"));
                        break;
                    }
                    Err(e) => {
                        failures.push(format!("{s}: {e}"));
                        break;
                    }
                }
            }
        }
        result("finite-model-soundness", &failures, format!("{} proved sequents in 20 models each", proved.len()))
    }
}

/// Compares the two formulas under every assignment of their free variables.
fn same_value(a: &Term, b: &Term, m: &FiniteModel) -> Result<(), String> {
    let vars: BTreeSet<FreeVar> = a.free_vars().union(&b.free_vars()).cloned().collect();
    let asgs = m.assignments(&vars).map_err(|e| e.to_string())?;
    for asg in asgs {
        let va = eval_formula(a, m, &asg).map_err(|e| format!("{a}: {e}"))?;
        let vb = eval_formula(b, m, &asg).map_err(|e| format!("{b}: {e}"))?;
        if va != vb {
            return Err(format!("{a} and {b} differ under {asg:?}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parses_and_is_valid() {
        for text in TAUTOLOGIES {
            assert_eq!(propositional_oracle(&parse_tautology(text)), Ok(true), "{text}");
        }
        for text in HIGHER_ORDER {
            assert!(Sequent::parse(text).is_ok(), "{text}");
        }
        
    }
}
