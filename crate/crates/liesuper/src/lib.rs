//! Finite-dimensional Lie superalgebras over GF(2) given by structure
//! constants: a bracket table and, on odd basis vectors, a squaring table.

mod algebra;
mod axioms;
mod build;
mod form;
mod ops;
mod restricted;

pub use algebra::{BasisElement, StructureConstants};
pub use axioms::{verify_axioms, verify_grading, AxiomReport, Violation};
pub use build::{build_algebra, function_table, FamilyAlgebra};
pub use form::{BilinearFormTable, NisReport, NisViolation};
pub use ops::{center, derived, derived_series, odd_square_span, quotient, special_center, subalgebra, Subspace};
pub use restricted::{restrictedness_check, RestrictednessReport};
pub use superfunc::Parity;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(transparent)]
    Func(#[from] superfunc::FuncError),
    #[error("subspace is not an ideal: [{0}, e_{1}] escapes it")]
    NotIdeal(usize, usize),
    #[error("subspace is not closed under squaring (basis vector {0})")]
    NotSquareClosed(usize),
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("vector length {got} does not match algebra dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("squaring requires an odd vector")]
    NotOdd,
    #[error("constants are not central in {0}")]
    ConstantsNotCentral(String),
}
