use std::fmt;

use crate::{words_for, xor_into, BitVector, Gf2Error, WORD};

/// Row-major packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Stacks `rows` (each of length `cols`) into a matrix.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.set_row(i, r);
        }
        m
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Self {
        Self::from_rows(rows, columns).transpose()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of {}x{}", self.rows, self.cols);
        let w = &mut self.data[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_indices(self.rows, (0..self.rows).filter(|&i| self.get(i, j)))
    }

    pub fn set_row(&mut self, i: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        let s = self.stride;
        self.data[i * s..(i + 1) * s].copy_from_slice(v.words());
    }

    fn xor_rows(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        xor_into(b, a);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for w in 0..s {
            self.data.swap(a * s + w, b * s + w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Gf2Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let mut r = self.clone();
        xor_into(&mut r.data, &other.data);
        Ok(r)
    }

    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector, Gf2Error> {
        if x.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        let xw = x.words();
        Ok(BitVector::from_indices(
            self.rows,
            (0..self.rows).filter(|&i| {
                self.row_words(i).iter().zip(xw).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
            }),
        ))
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut r = BitMatrix::zeros(self.rows, other.cols);
        let s = r.stride;
        for i in 0..self.rows {
            for k in self.row(i).iter_ones() {
                xor_into(&mut r.data[i * s..(i + 1) * s], other.row_words(k));
            }
        }
        Ok(r)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else { continue };
            m.swap_rows(p, r);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_rows(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullspace_basis(&self) -> Vec<BitVector> {
        let (r, pivots) = self.rref();
        null_from_rref(self.cols, &pivots, |k| r.row(k))
    }

    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        if b.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let n = self.cols;
        let mut aug = BitMatrix::zeros(self.rows, n + 1);
        for i in 0..self.rows {
            let row = self.row(i);
            let mut v = BitVector::from_indices(n + 1, row.iter_ones());
            if b.get(i) {
                v.set(n, true);
            }
            aug.set_row(i, &v);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(n);
        for (k, &p) in pivots.iter().enumerate() {
            if r.get(k, n) {
                x.set(p, true);
            }
        }
        debug_assert_eq!(self.mul_vec(&x).as_ref(), Ok(b));
        Ok(Some(x))
    }
}

/// Nullspace vectors from an RREF given by its pivot list and row accessor.
pub(crate) fn null_from_rref(cols: usize, pivots: &[usize], row: impl Fn(usize) -> BitVector) -> Vec<BitVector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let rows: Vec<BitVector> = (0..pivots.len()).map(row).collect();
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVector::unit(cols, f);
            for (k, &p) in pivots.iter().enumerate() {
                if rows[k].get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i).to_bit_string())?;
        }
        Ok(())
    }
}
