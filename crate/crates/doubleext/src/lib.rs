//! Double extensions `g = Kc ⊕ a ⊕ KD` of nis-superalgebras over GF(2) in
//! the four parity cases of the form and the derivation, the recognition
//! hypotheses for a central element, and the comparison of an extension with
//! the canonical Poisson or Buttin algebra.

mod extend;
mod identify;
mod recognize;
mod table;

pub use extend::{build, build_family, find_a, find_q, prepare, ExtendedAlgebra, ExtensionCase, ExtensionData};
pub use identify::{canonical_target, identify_canonical, nontrivial_cocycle, IsomorphismWitness};
pub use recognize::{recognition, RecognitionReport};
pub use table::{extension_table, TableRow, TABLE_HEADER};

use deriv::DerivError;
use liesuper::LieError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DexError {
    #[error("case {case} requires {what}")]
    MissingData { case: ExtensionCase, what: &'static str },
    #[error("case {case} does not use {what}")]
    UnexpectedData { case: ExtensionCase, what: &'static str },
    #[error("case {case} does not match form parity {form:?} and derivation parity {map:?}")]
    ParityViolation { case: ExtensionCase, form: liesuper::Parity, map: liesuper::Parity },
    #[error("the map is not a derivation")]
    NotDerivation,
    #[error("the derivation does not preserve the form")]
    NotPreserving,
    #[error("B(D e_{0}, e_{0}) = 1 on an even basis vector, so the bracket is not alternating")]
    NotAlternating(usize),
    #[error("B(a, D b) on odd vectors is not the polar form of a quadratic form")]
    NotPolar,
    #[error("q is supported off the odd basis vectors")]
    QuadraticSupport,
    #[error("A does not satisfy D^2 = ad_A and D(A) = 0")]
    BadA,
    #[error("B(D, D) must vanish unless the form and the derivation are both even")]
    OddSelfPairing,
    #[error("the form is not homogeneous with respect to the grading")]
    FormGrade,
    #[error("the form is degenerate")]
    Degenerate,
    #[error("the center of an extension of le must be odd")]
    LeParity,
    #[error("no extension: {0}")]
    Unbuildable(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Deriv(#[from] DerivError),
    #[error(transparent)]
    Lie(#[from] LieError),
}
