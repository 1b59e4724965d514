//! Exact-arithmetic structure theory for nilpotent Lie algebras that split
//! into stepwise square integrable layers.
//!
//! The crate builds finite root systems over the simple-root coordinate
//! basis, runs the cascade construction of strongly orthogonal roots, cuts
//! the positive roots into layers, realizes the associated nilpotent Lie
//! algebras over the rationals, and computes the Pfaffian polynomials,
//! formal degrees and lattice multiplicities attached to the layered
//! structure. Everything outside [`numcheck`] is exact rational arithmetic.

pub mod cascade;
pub mod liealg;
pub mod matrix;
pub mod numcheck;
pub mod plancherel;
pub mod ratio;
pub mod report;
pub mod roots;

pub use ratio::Rat;
pub use report::{CheckResult, VerificationReport};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidSystem(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("invalid restriction: {0}")]
    InvalidRestriction(String),
    #[error("unsupported restriction pattern: {0}")]
    UnsupportedPattern(String),
    #[error("layer characterizations disagree at r={r}: {detail}")]
    LayerMismatch { r: usize, detail: String },
    #[error("not in layer {r}: {root}")]
    NotInLayer { r: usize, root: String },
    #[error("invalid algebra input: {0}")]
    InvalidAlgebra(String),
    #[error("matrix must be square and antisymmetric: {0}")]
    NotAntisymmetric(String),
    #[error("Pfaffian needs even dimension, got {0}")]
    OddDimension(usize),
    #[error("symbolic expansion over budget: {0}; use numeric witnesses instead")]
    SymbolicBudget(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
