use std::borrow::Borrow;

use crate::matrix::null_from_rref;
use crate::{lowest_bit, xor_into, BitMatrix, BitVector, WORD};

/// Incremental row reduction. Each stored row has a distinct lowest set bit
/// (its pivot) and no set bits at the pivots of rows stored before it.
///
/// This is the workhorse for large equation systems: rows are streamed in
/// one at a time and only independent ones are kept.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<u32>>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new(), pivot_row: vec![None; len] }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce_words(&self, w: &mut [u64]) {
        let mut pos = 0;
        while let Some(p) = next_one(w, pos) {
            if let Some(r) = self.pivot_row[p] {
                xor_into(w, &self.rows[r as usize]);
            }
            pos = p + 1;
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.len, "row length mismatch");
        self.insert_words(v.words().to_vec())
    }

    pub fn insert_words(&mut self, mut w: Vec<u64>) -> bool {
        self.reduce_words(&mut w);
        match lowest_bit(&w) {
            None => false,
            Some(p) => {
                self.pivot_row[p] = Some(self.rows.len() as u32);
                self.rows.push(w);
                true
            }
        }
    }

    pub fn into_row_space(self) -> RowSpace {
        let len = self.len;
        let mut order: Vec<(usize, Vec<u64>)> =
            self.rows.into_iter().map(|w| (lowest_bit(&w).expect("stored rows are nonzero"), w)).collect();
        order.sort_by_key(|(p, _)| *p);
        let mut final_row: Vec<Option<usize>> = vec![None; len];
        for k in (0..order.len()).rev() {
            let p = order[k].0;
            let mut w = std::mem::take(&mut order[k].1);
            let mut pos = p + 1;
            while let Some(q) = next_one(&w, pos) {
                if let Some(r) = final_row[q] {
                    xor_into(&mut w, &order[r].1);
                }
                pos = q + 1;
            }
            order[k].1 = w;
            final_row[p] = Some(k);
        }
        let pivots = order.iter().map(|(p, _)| *p).collect();
        let rows = order.into_iter().map(|(_, w)| BitVector::from_words(len, w)).collect();
        RowSpace { len, rows, pivots }
    }

    /// Kernel of the matrix whose rows were inserted.
    pub fn nullspace_basis(self) -> Vec<BitVector> {
        self.into_row_space().nullspace_basis()
    }
}

fn next_one(w: &[u64], from: usize) -> Option<usize> {
    let mut wi = from / WORD;
    if wi >= w.len() {
        return None;
    }
    let mut cur = w[wi] & (!0u64 << (from % WORD));
    loop {
        if cur != 0 {
            return Some(wi * WORD + cur.trailing_zeros() as usize);
        }
        wi += 1;
        if wi == w.len() {
            return None;
        }
        cur = w[wi];
    }
}

/// A subspace of GF(2)^len held in reduced row echelon form, so two
/// `RowSpace`s are equal exactly when they span the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowSpace {
    len: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn zero(len: usize) -> Self {
        RowSpace { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(len: usize) -> Self {
        Self::span(len, (0..len).map(|i| BitVector::unit(len, i)))
    }

    pub fn span<I>(len: usize, vectors: I) -> Self
    where
        I: IntoIterator,
        I::Item: Borrow<BitVector>,
    {
        let mut e = Echelon::new(len);
        for v in vectors {
            e.insert(v.borrow());
        }
        e.into_row_space()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots; the unit vectors on them span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.len];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.len).filter(|&c| !is_pivot[c]).collect()
    }

    /// The canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients of `v` in [`basis`](Self::basis), if `v` lies in the span.
    pub fn coords(&self, v: &BitVector) -> Option<BitVector> {
        if !self.contains(v) {
            return None;
        }
        Some(BitVector::from_indices(self.dim(), self.pivots.iter().enumerate().filter(|(_, &p)| v.get(p)).map(|(k, _)| k)))
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        RowSpace::span(self.len, self.rows.iter().chain(&other.rows))
    }

    pub fn intersection(&self, other: &RowSpace) -> RowSpace {
        let a = self.dim();
        let stacked: Vec<BitVector> = self.rows.iter().chain(&other.rows).cloned().collect();
        if stacked.is_empty() {
            return RowSpace::zero(self.len);
        }
        let m = BitMatrix::from_rows(self.len, &stacked).transpose();
        let combos = m.nullspace_basis();
        RowSpace::span(
            self.len,
            combos.iter().map(|c| {
                let mut v = BitVector::zeros(self.len);
                for k in c.iter_ones().filter(|&k| k < a) {
                    v.xor_assign(&self.rows[k]);
                }
                v
            }),
        )
    }

    /// Kernel of the matrix whose rows are this basis.
    pub fn nullspace_basis(&self) -> Vec<BitVector> {
        null_from_rref(self.len, &self.pivots, |k| self.rows[k].clone())
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.len, &self.rows)
    }
}

/// Expresses vectors as combinations of a fixed generating list.
///
/// Each generator is stored with a tag recording which generators were
/// combined to produce it, so a successful reduction yields coefficients.
#[derive(Clone, Debug)]
pub struct Combiner {
    len: usize,
    count: usize,
    space: RowSpace,
}

impl Combiner {
    pub fn new(len: usize, generators: &[BitVector]) -> Self {
        let count = generators.len();
        let space = RowSpace::span(
            len + count,
            generators.iter().enumerate().map(|(k, g)| {
                assert_eq!(g.len(), len, "generator length mismatch");
                let mut v = BitVector::zeros(len + count);
                for i in g.iter_ones() {
                    v.set(i, true);
                }
                v.set(len + k, true);
                v
            }),
        );
        Combiner { len, count, space }
    }

    /// Coefficients `c` with `Σ cₖ·generatorₖ = v`, if any.
    pub fn express(&self, v: &BitVector) -> Option<BitVector> {
        assert_eq!(v.len(), self.len, "target length mismatch");
        let mut t = BitVector::zeros(self.len + self.count);
        for i in v.iter_ones() {
            t.set(i, true);
        }
        let r = self.space.reduce(&t);
        if r.iter_ones().any(|i| i < self.len) {
            return None;
        }
        Some(BitVector::from_indices(self.count, r.iter_ones().map(|i| i - self.len)))
    }

    /// Dimension of the span of the generators.
    pub fn rank(&self) -> usize {
        self.space.basis().iter().filter(|r| r.first_one().is_some_and(|p| p < self.len)).count()
    }
}
