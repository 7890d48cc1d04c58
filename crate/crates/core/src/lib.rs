//! Proof search, proof checking and countermodels for classical simple type
//! theory in Ketonen-style sequent and tableau calculi.

pub mod acceptance;
pub mod calculus;
pub mod engine;
pub mod error;
pub mod gen;
pub mod rank;
pub mod semantics;
pub mod sequent;
pub mod syntax;

pub use error::{Error, Result};
