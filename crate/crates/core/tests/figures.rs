use kct::calculus::{check_proof_figure, order_of, ProofFigure, SystemId};
use kct::engine::{build_tableau, Budget};
use kct::sequent::Sequent;

fn fixture(name: &str) -> ProofFigure {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    ProofFigure::from_json_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn retaining_figure_checks_in_its_system_only() {
    let pf = fixture("k_combinator_kct_h.json");
    assert!(check_proof_figure(&pf, SystemId::KctH).valid);
    assert!(!check_proof_figure(&pf, SystemId::Kct).valid);
    assert_eq!(order_of(&pf).unwrap(), 2);
}

#[test]
fn plain_figure_checks_in_kct() {
    let pf = fixture("identity_kct.json");
    assert!(check_proof_figure(&pf, SystemId::Kct).valid);
    assert_eq!(order_of(&pf).unwrap(), 1);
}

#[test]
fn instance_figure_carries_its_witness() {
    let pf = fixture("instance_kct_h.json");
    assert!(check_proof_figure(&pf, SystemId::KctH).valid);
    let mut wrong = pf.clone();
    wrong.witness = Some(kct::syntax::Term::atom(1));
    let report = check_proof_figure(&wrong, SystemId::KctH);
    assert!(!report.valid);
    assert_eq!(report.failing_path, Some(vec![]));
}

#[test]
fn open_leaf_is_rejected_with_its_path() {
    let report = check_proof_figure(&fixture("open_leaf_kct_h.json"), SystemId::KctH);
    assert!(!report.valid);
    assert_eq!(report.failing_path, Some(vec![0]));
}

#[test]
fn tableau_figures_survive_a_json_round_trip() {
    let goal = Sequent::parse("|- (((a0:1 -> a1:1) -> a0:1) -> a0:1)").unwrap();
    let run = build_tableau(&goal, SystemId::KcttH, Budget::default());
    let pf = run.tableau.to_figure().unwrap();
    let back = ProofFigure::from_json(&pf.to_json()).unwrap();
    assert_eq!(back, pf);
    assert!(check_proof_figure(&back, SystemId::KctH).valid);
}
