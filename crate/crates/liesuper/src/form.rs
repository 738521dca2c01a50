use std::fmt;

use gf2core::{BitMatrix, BitVector};

use crate::{Parity, StructureConstants};

/// A bilinear form given by its Gram matrix, with the parity of the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearFormTable {
    pub gram: BitMatrix,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NisViolation {
    NotSymmetric { i: usize, j: usize },
    OddDiagonal { i: usize },
    Parity { i: usize, j: usize },
    Degenerate { rank: usize },
    Invariance { i: usize, j: usize, k: usize },
    /// `B(s(f), e_k) != B(f, [f, e_k])` at `f = e_i` (`j == i`) or in the
    /// polarization at `f = e_i + e_j`.
    SquareCompat { i: usize, j: usize, k: usize },
}

impl fmt::Display for NisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NisViolation::NotSymmetric { i, j } => write!(f, "B(e{i},e{j}) != B(e{j},e{i})"),
            NisViolation::OddDiagonal { i } => write!(f, "B(e{i},e{i}) != 0 for odd e{i}"),
            NisViolation::Parity { i, j } => write!(f, "B(e{i},e{j}) != 0 against the form parity"),
            NisViolation::Degenerate { rank } => write!(f, "degenerate form of rank {rank}"),
            NisViolation::Invariance { i, j, k } => write!(f, "B([e{i},e{j}],e{k}) != B(e{i},[e{j},e{k}])"),
            NisViolation::SquareCompat { i, j, k } if i == j => write!(f, "B(s(e{i}),e{k}) != B(e{i},[e{i},e{k}])"),
            NisViolation::SquareCompat { i, j, k } => write!(f, "B(s(f),e{k}) != B(f,[f,e{k}]) for f = e{i}+e{j}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NisReport {
    pub violations: Vec<NisViolation>,
    pub total: usize,
    /// Count of [`NisViolation::SquareCompat`] entries among `total`.
    pub square_compat: usize,
}

impl NisReport {
    fn push(&mut self, v: NisViolation) {
        if matches!(v, NisViolation::SquareCompat { .. }) {
            self.square_compat += 1;
        }
        self.total += 1;
        if self.violations.len() < 64 {
            self.violations.push(v);
        }
    }

    /// Every condition, including `B(s(f), g) = B(f, [f, g])`.
    pub fn passed(&self) -> bool {
        self.total == 0
    }

    /// Symmetry, odd diagonal, parity, non-degeneracy and invariance only.
    pub fn passed_invariance(&self) -> bool {
        self.total == self.square_compat
    }
}

impl BilinearFormTable {
    pub fn new(gram: BitMatrix, parity: Parity) -> Self {
        BilinearFormTable { gram, parity }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.gram.get(i, j)
    }

    pub fn eval(&self, x: &BitVector, y: &BitVector) -> bool {
        let gy = self.gram.mul_vec(y).expect("form and vector dimensions agree");
        x.dot(&gy).expect("form and vector dimensions agree")
    }

    /// `B(x, e_j)` for all `j`, as a vector.
    pub fn covector(&self, x: &BitVector) -> BitVector {
        self.gram.transpose().mul_vec(x).expect("form and vector dimensions agree")
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// Checks that this is a NIS on `g`: symmetric with `B(f, f) = 0` on odd
    /// basis vectors, homogeneous of its parity, non-degenerate, invariant
    /// on all basis triples, and compatible with squaring.
    pub fn nis_report(&self, g: &StructureConstants) -> NisReport {
        let n = g.dim();
        let mut rep = NisReport::default();
        for i in 0..n {
            for j in i..n {
                let b = self.get(i, j);
                if b != self.get(j, i) {
                    rep.push(NisViolation::NotSymmetric { i, j });
                }
                if b && g.parity(i) + g.parity(j) != self.parity {
                    rep.push(NisViolation::Parity { i, j });
                }
            }
            if g.parity(i).is_odd() && self.get(i, i) {
                rep.push(NisViolation::OddDiagonal { i });
            }
        }
        let rank = self.gram.rank();
        if rank != n {
            rep.push(NisViolation::Degenerate { rank });
        }
        let rows: Vec<BitVector> = (0..n).map(|i| self.gram.row(i)).collect();
        let pair = |v: &BitVector, k: usize| v.dot(&rows[k]).expect("same length");
        for i in 0..n {
            for j in 0..n {
                let cij = g.bracket_basis(i, j);
                for k in 0..n {
                    if pair(cij, k) != pair(g.bracket_basis(j, k), i) {
                        rep.push(NisViolation::Invariance { i, j, k });
                    }
                }
            }
        }
        // Q(f) = B(s(f), g) + B(f, [f, g]) is quadratic in f, so it vanishes
        // for every odd f iff it vanishes on odd basis vectors and its polar
        // form vanishes on pairs of them.
        let odd = g.odd_indices();
        for (a, &i) in odd.iter().enumerate() {
            let Some(s) = g.square_basis(i) else { continue };
            for k in 0..n {
                if pair(s, k) != pair(g.bracket_basis(i, k), i) {
                    rep.push(NisViolation::SquareCompat { i, j: i, k });
                }
            }
            for &j in &odd[a + 1..] {
                let cij = g.bracket_basis(i, j);
                for k in 0..n {
                    let rhs = pair(g.bracket_basis(j, k), i) != pair(g.bracket_basis(i, k), j);
                    if pair(cij, k) != rhs {
                        rep.push(NisViolation::SquareCompat { i, j, k });
                    }
                }
            }
        }
        rep
    }
}
