//! Valuations, Hintikka checks and finite models.

pub mod hintikka;
pub mod model;
pub mod oracle;
pub mod valuation;

pub use hintikka::{hintikka_check, CheckStatus, HintikkaCheck, HintikkaReport};
pub use model::{eval_formula, falsifying_assignment, random_model, sequent_true_in_model, types_of_sequent, Assignment, FiniteModel};
pub use oracle::{prop_value, propositional_countermodel, propositional_oracle};
pub use valuation::{check_partial_valuation, extract_partial_valuation, term_universe, ConditionCheck, PartialValuation, ValuationReport};
