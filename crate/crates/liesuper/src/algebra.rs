use gf2core::{BitMatrix, BitVector};

use crate::{LieError, Parity};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
    /// Lie degree (monomial degree − 2 for function algebras).
    pub degree: i32,
    pub weight: Vec<i32>,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, parity: Parity, degree: i32, weight: Vec<i32>) -> Self {
        BasisElement { name: name.into(), parity, degree, weight }
    }

    /// `(degree, weight)` as a single grading key.
    pub fn grade(&self) -> Vec<i32> {
        let mut g = Vec::with_capacity(1 + self.weight.len());
        g.push(self.degree);
        g.extend_from_slice(&self.weight);
        g
    }
}

/// Bracket and squaring tables on a fixed basis.
///
/// The bracket table is stored in full (`n × n`) and is kept symmetric by
/// [`set_bracket`](Self::set_bracket). Squares are stored for odd basis
/// vectors only. The axioms are not enforced on construction; use
/// [`verify_axioms`](crate::verify_axioms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    basis: Vec<BasisElement>,
    brackets: Vec<BitVector>,
    squares: Vec<Option<BitVector>>,
}

impl StructureConstants {
    /// All brackets and squares zero.
    pub fn abelian(basis: Vec<BasisElement>) -> Self {
        let n = basis.len();
        let squares = basis.iter().map(|b| b.parity.is_odd().then(|| BitVector::zeros(n))).collect();
        StructureConstants { basis, brackets: vec![BitVector::zeros(n); n * n], squares }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// `(dim g_even, dim g_odd)`.
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.basis.iter().filter(|b| b.parity.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.parity(i).is_odd()).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i).is_odd()).collect()
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, v: BitVector) {
        assert_eq!(v.len(), self.dim());
        let n = self.dim();
        self.brackets[j * n + i] = v.clone();
        self.brackets[i * n + j] = v;
    }

    pub fn set_square(&mut self, i: usize, v: BitVector) {
        assert_eq!(v.len(), self.dim());
        assert!(self.parity(i).is_odd(), "squares are defined on odd basis vectors");
        self.squares[i] = Some(v);
    }

    /// Flips the coefficient of `e_k` in `[e_i, e_j]` (and `[e_j, e_i]`).
    pub fn flip_bracket(&mut self, i: usize, j: usize, k: usize) {
        let n = self.dim();
        self.brackets[i * n + j].flip(k);
        if i != j {
            self.brackets[j * n + i].flip(k);
        }
    }

    /// Flips only the `(i, j)` entry, breaking symmetry. For negative tests.
    pub fn flip_bracket_one_sided(&mut self, i: usize, j: usize, k: usize) {
        let n = self.dim();
        self.brackets[i * n + j].flip(k);
    }

    #[inline]
    pub fn bracket_basis(&self, i: usize, j: usize) -> &BitVector {
        &self.brackets[i * self.dim() + j]
    }

    pub fn square_basis(&self, i: usize) -> Option<&BitVector> {
        self.squares[i].as_ref()
    }

    fn check_len(&self, x: &BitVector) -> Result<(), LieError> {
        if x.len() != self.dim() {
            return Err(LieError::Dimension { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    pub fn zero_vector(&self) -> BitVector {
        BitVector::zeros(self.dim())
    }

    pub fn unit(&self, i: usize) -> BitVector {
        BitVector::unit(self.dim(), i)
    }

    pub fn bracket(&self, x: &BitVector, y: &BitVector) -> Result<BitVector, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut r = self.zero_vector();
        let ys: Vec<usize> = y.iter_ones().collect();
        for i in x.iter_ones() {
            for &j in &ys {
                r.xor_assign(self.bracket_basis(i, j));
            }
        }
        Ok(r)
    }

    /// `[e_i, y]`.
    pub fn bracket_with_basis(&self, i: usize, y: &BitVector) -> BitVector {
        let mut r = self.zero_vector();
        for j in y.iter_ones() {
            r.xor_assign(self.bracket_basis(i, j));
        }
        r
    }

    pub fn is_odd_vector(&self, x: &BitVector) -> bool {
        x.iter_ones().all(|i| self.parity(i).is_odd())
    }

    pub fn is_even_vector(&self, x: &BitVector) -> bool {
        x.iter_ones().all(|i| !self.parity(i).is_odd())
    }

    /// `s(Σ e_i) = Σ s(e_i) + Σ_{i<j} [e_i, e_j]`.
    pub fn square(&self, x: &BitVector) -> Result<BitVector, LieError> {
        self.check_len(x)?;
        if !self.is_odd_vector(x) {
            return Err(LieError::NotOdd);
        }
        let idx: Vec<usize> = x.iter_ones().collect();
        let mut r = self.zero_vector();
        for (a, &i) in idx.iter().enumerate() {
            if let Some(s) = self.square_basis(i) {
                r.xor_assign(s);
            }
            for &j in &idx[a + 1..] {
                r.xor_assign(self.bracket_basis(i, j));
            }
        }
        Ok(r)
    }

    /// Matrix of `[x, ·]`: entry `(k, j)` is the coefficient of `e_k` in `[x, e_j]`.
    pub fn ad(&self, x: &BitVector) -> Result<BitMatrix, LieError> {
        self.check_len(x)?;
        let n = self.dim();
        let cols: Vec<BitVector> = (0..n).map(|j| {
            let mut c = self.zero_vector();
            for i in x.iter_ones() {
                c.xor_assign(self.bracket_basis(i, j));
            }
            c
        }).collect();
        Ok(BitMatrix::from_columns(n, &cols))
    }

    pub fn ad_basis(&self, i: usize) -> BitMatrix {
        let n = self.dim();
        let cols: Vec<BitVector> = (0..n).map(|j| self.bracket_basis(i, j).clone()).collect();
        BitMatrix::from_columns(n, &cols)
    }

    /// `ad` of every basis vector, flattened row-major into a vector of length `n²`.
    pub fn ad_vectors(&self) -> Vec<BitVector> {
        let n = self.dim();
        (0..n)
            .map(|i| BitVector::from_indices(n * n, (0..n).flat_map(|j| self.bracket_basis(i, j).iter_ones().map(move |k| k * n + j))))
            .collect()
    }

    /// The same algebra with its basis reordered: new element `t` is old `perm[t]`.
    pub fn permuted(&self, perm: &[usize]) -> StructureConstants {
        let n = self.dim();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (t, &p) in perm.iter().enumerate() {
            inv[p] = t;
        }
        let map = |v: &BitVector| BitVector::from_indices(n, v.iter_ones().map(|k| inv[k]));
        let basis = perm.iter().map(|&p| self.basis[p].clone()).collect();
        let mut g = StructureConstants::abelian(basis);
        for a in 0..n {
            for b in a..n {
                g.set_bracket(a, b, map(self.bracket_basis(perm[a], perm[b])));
            }
            if let Some(s) = self.square_basis(perm[a]) {
                g.set_square(a, map(s));
            }
        }
        g
    }
}
