//! Dense linear algebra over GF(2) with 64-bit word packing.
//!
//! Elimination is deterministic: pivots are taken on the first nonzero
//! column, and among the candidate rows the lowest index wins. Since the
//! reduced row echelon form of a row space is unique, every basis handed out
//! by this crate (nullspaces, spans) is reproducible bit for bit.

mod matrix;
mod space;
mod vector;

pub use matrix::BitMatrix;
pub use space::{Combiner, Echelon, RowSpace};
pub use vector::BitVector;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub(crate) fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * WORD + words[i].trailing_zeros() as usize)
}

/// Rank of `m`.
pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

/// Basis of `{v : m v = 0}`, one vector per free column in increasing order.
pub fn nullspace_basis(m: &BitMatrix) -> Vec<BitVector> {
    m.nullspace_basis()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &BitMatrix, b: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
    m.solve(b)
}
