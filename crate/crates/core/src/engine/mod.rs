//! Proof search: reduction chains and reduction tableaux.

pub mod chain;
pub mod derived;
pub mod tableau;

pub use chain::{chain_prefixes, rchain_step, verify_chain, RChain, StepLabel};
pub use derived::{bottom_figure, check_inversion, cut_harness, find_proof, identity_figure, prove_derived, CutRun, DerivedProof, InversionCheck};
pub use tableau::{build_tableau, build_tableau_with, extract_open_branch, Budget, NodeStatus, Tableau, TableauNode, TableauRun, Verdict};
