//! Derivations of structure-constant Lie superalgebras over GF(2): the full
//! solution space of the derivation equations, computed either as one
//! system over all matrix entries or one system per grading shift, split
//! into inner and outer parts, together with the closed-form outer
//! derivations of the Hamiltonian families.

mod bench;
mod blocks;
mod closed;
mod map;
mod solve;

pub use bench::{bench_family, BenchRecord, SolverPath};
pub use blocks::{BlockKey, GradedBlocks};
pub use closed::{closed_form_generators, ClosedForm};
pub use map::{cohomology_equal, derivation_defect, is_derivation, preserves_nis, DerViolation, LinearMap};
pub use solve::{derivation_space_blocked, derivation_space_naive, DerivationBlock, DerivationSpace};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivError {
    #[error("map is not homogeneous: entries with shifts {0:?} and {1:?}")]
    NotHomogeneous(BlockKey, BlockKey),
    #[error("shift mismatch: {0:?} vs {1:?}")]
    ShiftMismatch(BlockKey, BlockKey),
    #[error("grading labels are inconsistent at ({0}, {1}) -> {2}")]
    InconsistentGrading(usize, usize, usize),
    #[error("no closed-form list is defined for {0}")]
    FormulaUndefined(String),
    #[error("matrix is {got}x{got}, algebra has dimension {expected}")]
    Dimension { expected: usize, got: usize },
}
