use std::fmt;

use gf2core::{BitMatrix, BitVector, RowSpace};
use liesuper::{BilinearFormTable, Parity, StructureConstants};

use crate::{BlockKey, DerivError};

/// A homogeneous linear map on the algebra. Entry `(k, l)` of `matrix` is
/// the coefficient of `e_k` in `D(e_l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: BitMatrix,
    pub degree: i32,
    pub weight_shift: Vec<i32>,
    pub parity: Parity,
}

impl LinearMap {
    /// Reads off the shift from the entries; the zero map gets the zero shift.
    pub fn from_matrix(g: &StructureConstants, matrix: BitMatrix) -> Result<Self, DerivError> {
        let n = g.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(DerivError::Dimension { expected: n, got: matrix.rows() });
        }
        let mut key: Option<BlockKey> = None;
        for k in 0..n {
            for l in matrix.row(k).iter_ones() {
                let here = BlockKey::of_entry(g, k, l);
                match &key {
                    None => key = Some(here),
                    Some(prev) if *prev != here => return Err(DerivError::NotHomogeneous(prev.clone(), here)),
                    Some(_) => {}
                }
            }
        }
        let key = key.unwrap_or_else(|| BlockKey::zero(g));
        Ok(LinearMap { matrix, degree: key.shift[0], weight_shift: key.shift[1..].to_vec(), parity: key.parity })
    }

    pub fn zero(g: &StructureConstants) -> Self {
        LinearMap::from_matrix(g, BitMatrix::zeros(g.dim(), g.dim())).expect("zero map is homogeneous")
    }

    /// From the row-major flattening used by [`StructureConstants::ad_vectors`].
    pub fn from_flat(g: &StructureConstants, v: &BitVector) -> Result<Self, DerivError> {
        let n = g.dim();
        LinearMap::from_matrix(g, BitMatrix::from_fn(n, n, |k, l| v.get(k * n + l)))
    }

    pub fn ad(g: &StructureConstants, x: &BitVector) -> Result<Self, DerivError> {
        LinearMap::from_matrix(g, g.ad(x).map_err(|_| DerivError::Dimension { expected: g.dim(), got: x.len() })?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn flat(&self) -> BitVector {
        let n = self.dim();
        BitVector::from_indices(n * n, (0..n).flat_map(|k| self.matrix.row(k).iter_ones().map(move |l| k * n + l).collect::<Vec<_>>()))
    }

    pub fn key(&self) -> BlockKey {
        let mut shift = vec![self.degree];
        shift.extend(&self.weight_shift);
        BlockKey { shift, parity: self.parity }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &BitVector) -> BitVector {
        self.matrix.mul_vec(v).expect("vector lives in the algebra")
    }

    /// `D(e_l)`.
    pub fn column(&self, l: usize) -> BitVector {
        self.matrix.column(l)
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap, DerivError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.key() != other.key() {
            return Err(DerivError::ShiftMismatch(self.key(), other.key()));
        }
        let matrix = self.matrix.add(&other.matrix).expect("same size");
        Ok(LinearMap { matrix, ..self.clone() })
    }

    /// Rank of the map restricted to the even and odd parts of its image.
    pub fn image_parities(&self, g: &StructureConstants) -> (usize, usize) {
        let n = self.dim();
        let cols: Vec<BitVector> = (0..n).map(|l| self.column(l)).collect();
        let even = RowSpace::span(n, cols.iter().filter(|c| !c.is_zero() && g.is_even_vector(c)));
        let odd = RowSpace::span(n, cols.iter().filter(|c| !c.is_zero() && g.is_odd_vector(c)));
        (even.dim(), odd.dim())
    }
}

/// The first failing derivation identity, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerViolation {
    /// `D[e_i, e_j] != [D e_i, e_j] + [e_i, D e_j]`.
    Bracket { i: usize, j: usize },
    /// `D(s(e_i)) != [D e_i, e_i]`.
    Square { i: usize },
}

impl fmt::Display for DerViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerViolation::Bracket { i, j } => write!(f, "D[e{i},e{j}] != [De{i},e{j}] + [e{i},De{j}]"),
            DerViolation::Square { i } => write!(f, "D(s(e{i})) != [De{i},e{i}]"),
        }
    }
}

pub fn derivation_defect(g: &StructureConstants, d: &BitMatrix) -> Option<DerViolation> {
    let n = g.dim();
    let cols: Vec<BitVector> = (0..n).map(|l| d.column(l)).collect();
    let image = |v: &BitVector| d.mul_vec(v).expect("same size");
    for i in 0..n {
        for j in i + 1..n {
            let mut rhs = g.bracket_with_basis(j, &cols[i]);
            rhs.xor_assign(&g.bracket_with_basis(i, &cols[j]));
            if image(g.bracket_basis(i, j)) != rhs {
                return Some(DerViolation::Bracket { i, j });
            }
        }
        if let Some(s) = g.square_basis(i) {
            if image(s) != g.bracket_with_basis(i, &cols[i]) {
                return Some(DerViolation::Square { i });
            }
        }
    }
    None
}

pub fn is_derivation(g: &StructureConstants, d: &LinearMap) -> bool {
    derivation_defect(g, &d.matrix).is_none()
}

/// `B(D e_i, e_j) + B(e_i, D e_j) = 0` for all `i, j`, and `B(D e_i, e_i) = 0`
/// for odd `e_i`. By polarization the second condition on basis vectors
/// gives it for every odd element.
pub fn preserves_nis(d: &LinearMap, b: &BilinearFormTable, g: &StructureConstants) -> bool {
    let n = d.dim();
    let cov: Vec<BitVector> = (0..n).map(|i| b.covector(&d.column(i))).collect();
    for i in 0..n {
        if g.parity(i).is_odd() && cov[i].get(i) {
            return false;
        }
        for j in i + 1..n {
            if cov[i].get(j) != cov[j].get(i) {
                return false;
            }
        }
    }
    true
}

/// `[D1] = [D2]` in H¹: their sum is inner.
pub fn cohomology_equal(d1: &LinearMap, d2: &LinearMap, g: &StructureConstants) -> Result<bool, DerivError> {
    let sum = d1.add(d2)?;
    let inner = RowSpace::span(g.dim() * g.dim(), g.ad_vectors());
    Ok(inner.contains(&sum.flat()))
}
