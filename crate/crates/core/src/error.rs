use thiserror::Error;

use crate::syntax::{Formula, Type};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ill-typed term: {0}")]
    IllTyped(String),
    #[error("signature: {0}")]
    Signature(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("type mismatch: expected {expected}, got {got}")]
    TypeMismatch { expected: Type, got: Type },
    #[error("hole mismatch: {0}")]
    HoleMismatch(String),
    #[error("capture violation: {0}")]
    CaptureViolation(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("no value for {0}")]
    UndefinedAt(Formula),
    #[error("rule does not match: {0}")]
    RuleShapeMismatch(String),
    #[error("eigenvariable {0} occurs in the sequent")]
    EigenvariableClash(String),
    #[error("(->L) needs a consequent other than _|_")]
    GuardViolated,
    #[error("sequent is neither reducible nor critical")]
    NotReducibleNorCritical,
    #[error("tableau has no open branch")]
    NoOpenBranch,
    #[error("premise not proved: {0}")]
    PremiseNotProved(String),
    #[error("leaf is not an axiom: {0}")]
    OpenLeaf(String),
    #[error("{0} occurs on both sides")]
    Clash(Formula),
    #[error("no interpretation for {0}")]
    MissingInterpretation(String),
    #[error("outside the propositional fragment: {0}")]
    OutOfFragment(String),
    #[error("model: {0}")]
    Model(String),
    #[error("proof figure: {0}")]
    Figure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
