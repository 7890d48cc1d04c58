use std::collections::BTreeMap;

use kct::calculus::{apply_tableau_rule, check_gentzen_step, RuleApplication, RuleId, SystemId};
use kct::engine::{build_tableau, chain_prefixes, verify_chain, Budget};
use kct::gen;
use kct::rank::rank;
use kct::sequent::Sequent;
use kct::syntax::{
    enumerate_terms, fresh_free_var, parse_formula, BoundVar, FreeVar, Signature, Term, TermEnumerator, Type,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Typing rules written out again, independent of `Term::type_of`.
fn oracle_type(t: &Term, scope: &mut Vec<BoundVar>) -> Option<Type> {
    match t {
        Term::Free(v) => Some(v.ty.clone()),
        Term::Bound(x) => scope.contains(x).then(|| x.ty.clone()),
        Term::Object(_) => Some(Type::Zero),
        Term::Fun(_, args) => {
            for a in args {
                if oracle_type(a, scope)? != Type::Zero {
                    return None;
                }
            }
            Some(Type::Zero)
        }
        Term::App(h, args) => {
            let mut tys = Vec::new();
            for a in args {
                tys.push(oracle_type(a, scope)?);
            }
            (oracle_type(h, scope)? == Type::Product(tys)).then_some(Type::One)
        }
        Term::Imp(a, b) => (oracle_type(a, scope)? == Type::One && oracle_type(b, scope)? == Type::One).then_some(Type::One),
        Term::All(x, body) => {
            scope.push(x.clone());
            let ok = oracle_type(body, scope) == Some(Type::One);
            scope.pop();
            ok.then_some(Type::One)
        }
        Term::Lam(xs, body) => {
            scope.extend(xs.iter().cloned());
            let ok = oracle_type(body, scope) == Some(Type::One);
            scope.truncate(scope.len() - xs.len());
            ok.then(|| Type::Product(xs.iter().map(|x| x.ty.clone()).collect()))
        }
    }
}

/// Boolean value of an implicational formula; `_|_` is false.
fn truth(f: &Term, v: &BTreeMap<u32, bool>) -> bool {
    match f {
        Term::Imp(a, b) => !truth(a, v) || truth(b, v),
        Term::Free(x) => v[&x.index],
        t if t.is_bottom() => false,
        other => panic!("not propositional: {other}"),
    }
}

fn final_consequent(f: &Term) -> &Term {
    match f {
        Term::Imp(_, b) => final_consequent(b),
        other => other,
    }
}

fn formula_list(seed: u64, n: usize) -> Vec<Term> {
    let mut r = rng(seed);
    (0..n).map(|_| gen::formula(&mut r, 30)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>()) {
        for f in formula_list(seed, 8) {
            let back = parse_formula(&f.to_string()).unwrap();
            prop_assert!(back.alpha_eq(&f), "{f} became {back}");
        }
    }

    #[test]
    fn type_of_agrees_with_typing_rules(seed in any::<u64>()) {
        let mut r = rng(seed);
        for _ in 0..16 {
            let f = gen::formula(&mut r, 30);
            prop_assert_eq!(f.type_of().ok(), oracle_type(&f, &mut vec![]));
            let x = gen::redex(&mut r, 30);
            if let Term::App(h, _) = &x {
                prop_assert_eq!(h.type_of().ok(), oracle_type(h, &mut vec![]));
            }
        }
    }

    #[test]
    fn instantiation_does_not_capture(seed in any::<u64>()) {
        for f in formula_list(seed, 8) {
            let mut quantified = Vec::new();
            f.visit(&mut |t| if matches!(t, Term::All(..)) && t.is_closed() { quantified.push(t.clone()) });
            for q in quantified {
                let Term::All(x, _) = &q else { unreachable!() };
                // an argument that reuses the binder's own name
                let arg = match &x.ty {
                    Type::One => Term::all(BoundVar::new(0, Type::One), Term::imp(Term::Bound(BoundVar::new(0, Type::One)), Term::atom(1))),
                    ty => Term::Free(fresh_free_var(ty, &q.free_vars())),
                };
                let a = q.instantiate(std::slice::from_ref(&arg)).unwrap();
                let b = q.canonical().instantiate(std::slice::from_ref(&arg)).unwrap();
                prop_assert!(a.alpha_eq(&b));
                prop_assert!(a.dangling().is_empty());
                prop_assert_eq!(a.type_of().ok(), Some(Type::One));
            }
        }
    }

    #[test]
    fn rank_decreases_on_reduction(seed in any::<u64>()) {
        for f in formula_list(seed, 8) {
            let r = rank(&f);
            match &f {
                Term::Imp(a, b) => {
                    prop_assert!(rank(a) < r && rank(b) < r);
                }
                Term::All(x, _) => {
                    let a1 = fresh_free_var(&x.ty, &f.free_vars());
                    let mut avoid = f.free_vars();
                    avoid.insert(a1.clone());
                    let a2 = fresh_free_var(&x.ty, &avoid);
                    let i1 = f.instantiate(&[Term::Free(a1)]).unwrap();
                    let i2 = f.instantiate(&[Term::Free(a2)]).unwrap();
                    prop_assert!(rank(&i1) < r);
                    prop_assert_eq!(rank(&i1), rank(&i2));
                }
                _ => {
                    if let Some(c) = f.contract() {
                        prop_assert!(rank(&c) < r);
                    }
                }
            }
        }
    }

    #[test]
    fn tv_matches_corresponding_formula(seed in any::<u64>(), bits in any::<u8>()) {
        use rand::Rng;
        let mut r = rng(seed);
        let side = |r: &mut ChaCha8Rng| -> Vec<Term> {
            let n = r.gen_range(0..=4);
            (0..n).map(|_| gen::prop_formula(r, 3, 3)).collect()
        };
        let s = Sequent::new(side(&mut r), side(&mut r));
        let atoms: BTreeMap<u32, bool> = (0..3).map(|i| (i, bits >> i & 1 == 1)).collect();
        let v: BTreeMap<Term, bool> = s.ante.iter().chain(&s.succ).map(|f| (f.clone(), truth(f, &atoms))).collect();
        let bs = s.map_valuation(&v).unwrap();
        prop_assert_eq!(bs.tv(), truth(&s.corresponding_formula(), &atoms));
    }

    #[test]
    fn atoms_persist_along_chains(seed in any::<u64>()) {
        use rand::Rng;
        let mut r = rng(seed);
        let size = r.gen_range(2..6);
        let s = gen::prop_sequent(&mut r, 3, size);
        let mut terms = TermEnumerator::new(Signature::default());
        for chain in chain_prefixes(&s, 8, &mut terms).unwrap() {
            prop_assert!(verify_chain(&chain, &mut terms).is_ok());
            let seqs: Vec<&Sequent> = chain.sequents().collect();
            for (i, earlier) in seqs.iter().enumerate() {
                for a in earlier.ante.iter().filter(|f| f.is_atomic()) {
                    for later in &seqs[i + 1..] {
                        prop_assert!(later.ante.contains(a), "{a} lost between {earlier} and {later}");
                    }
                }
                // a critical step may fold the rightmost succedent formula into
                // the consequent of the new implication
                for a in earlier.succ.iter().filter(|f| f.is_atomic()) {
                    for later in &seqs[i + 1..] {
                        prop_assert!(later.succ.iter().any(|f| final_consequent(f) == a), "{a} lost between {earlier} and {later}");
                    }
                }
            }
        }
    }

    #[test]
    fn tableau_steps_are_gentzen_steps(seed in any::<u64>()) {
        let s = gen::prop_sequent(&mut rng(seed), 3, 4);
        for (side, i, f) in s.formulas() {
            let Some(rule) = RuleId::for_formula(f, side) else { continue };
            let app = match rule {
                RuleId::AllL(_) => RuleApplication::new(rule, i).with_witness(Term::atom(0)),
                _ => RuleApplication::new(rule, i),
            };
            for (tab, gentzen) in [(SystemId::KcttH, SystemId::KctH), (SystemId::Kctt, SystemId::Kct)] {
                if let Ok(premises) = apply_tableau_rule(&s, &app, tab) {
                    prop_assert!(check_gentzen_step(&premises, &s, &app, gentzen), "{s} by {}", app.rule);
                    if tab.retains() || matches!(app.rule, RuleId::AllL(_)) {
                        prop_assert!(premises.iter().all(|p| p.side(side).contains(f)));
                    }
                }
            }
        }
    }

    #[test]
    fn tableau_output_is_deterministic(seed in any::<u64>()) {
        let s = gen::prop_sequent(&mut rng(seed), 3, 5);
        let a = build_tableau(&s, SystemId::KcttH, Budget::default());
        let b = build_tableau(&s, SystemId::KcttH, Budget::default());
        prop_assert_eq!(a.tableau.to_json().to_string(), b.tableau.to_json().to_string());
        prop_assert_eq!(serde_json::to_string(&a.verdict).unwrap(), serde_json::to_string(&b.verdict).unwrap());
    }
}

#[test]
fn enumeration_is_prefix_closed_and_duplicate_free() {
    let sig = Signature::new(["c".to_string()], [("f".to_string(), 1)].into_iter().collect()).unwrap();
    for ty in [Type::Zero, Type::One, Type::pred(&[Type::Zero]), Type::pred(&[Type::One]), Type::pred(&[Type::Zero, Type::One])] {
        let long = enumerate_terms(&ty, &sig, 25);
        for k in 0..25 {
            assert_eq!(enumerate_terms(&ty, &sig, k), long[..k].to_vec(), "type {ty}, k={k}");
        }
        for (i, a) in long.iter().enumerate() {
            assert_eq!(a.type_of().unwrap(), ty);
            assert!(long[i + 1..].iter().all(|b| !a.alpha_eq(b)), "duplicate {a}");
        }
        // sizes never decrease by more than the tag order allows
        let weights: Vec<usize> = long.iter().map(Term::weight).collect();
        assert!(weights.windows(2).all(|w| w[0] <= w[1]), "type {ty}: {weights:?}");
    }
}

#[test]
fn axiom_shape_is_never_false() {
    for b in [true, false] {
        let bs = kct::sequent::BoolSequent::new(vec![b], vec![b]);
        assert!(bs.tv());
    }
}

#[test]
fn free_variable_display_round_trips() {
    let v = FreeVar::new(3, Type::pred(&[Type::Zero, Type::One]));
    assert!(parse_formula(&format!("{v}('c, a0:1)")).unwrap().free_vars().contains(&v));
}
