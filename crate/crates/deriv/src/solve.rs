use std::collections::{BTreeMap, HashMap};

use gf2core::{BitMatrix, BitVector, Echelon, RowSpace};
use liesuper::StructureConstants;
use rayon::prelude::*;

use crate::{BlockKey, DerivError, GradedBlocks, LinearMap};

/// The derivations of one shift: all of them, the inner ones, and a
/// canonical complement of the inner ones. Spaces live in the row-major
/// flattening of `n × n` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationBlock {
    pub key: BlockKey,
    pub all: RowSpace,
    pub inner: RowSpace,
    /// Reduced residues of `all` modulo `inner`, in echelon form.
    pub outer: RowSpace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub n: usize,
    /// Nonzero blocks in sorted key order.
    pub blocks: BTreeMap<BlockKey, DerivationBlock>,
    /// Dimension of `span{ad e_i}` not made of derivations; zero exactly
    /// when every inner map satisfies the derivation identities.
    pub inner_defect: usize,
}

impl DerivationSpace {
    pub fn dim_all(&self) -> usize {
        self.blocks.values().map(|b| b.all.dim()).sum()
    }

    pub fn dim_inner(&self) -> usize {
        self.blocks.values().map(|b| b.inner.dim()).sum()
    }

    pub fn dim_outer(&self) -> usize {
        self.blocks.values().map(|b| b.outer.dim()).sum()
    }

    /// `(key, count)` for every shift carrying outer classes.
    pub fn outer_summary(&self) -> Vec<(BlockKey, usize)> {
        self.blocks.values().filter(|b| b.outer.dim() > 0).map(|b| (b.key.clone(), b.outer.dim())).collect()
    }

    pub fn outer_maps(&self, g: &StructureConstants) -> Vec<LinearMap> {
        self.blocks
            .values()
            .flat_map(|b| b.outer.basis().iter().map(|v| LinearMap::from_flat(g, v).expect("block vectors are homogeneous")))
            .collect()
    }

    pub fn all_maps(&self, g: &StructureConstants) -> Vec<LinearMap> {
        self.blocks
            .values()
            .flat_map(|b| b.all.basis().iter().map(|v| LinearMap::from_flat(g, v).expect("block vectors are homogeneous")))
            .collect()
    }

    /// The whole derivation space as one subspace.
    pub fn all_space(&self) -> RowSpace {
        RowSpace::span(self.n * self.n, self.blocks.values().flat_map(|b| b.all.basis().iter()))
    }

    pub fn contains(&self, d: &LinearMap) -> bool {
        if d.is_zero() {
            return true;
        }
        self.blocks.get(&d.key()).is_some_and(|b| b.all.contains(&d.flat()))
    }

    pub fn is_inner(&self, d: &LinearMap) -> bool {
        if d.is_zero() {
            return true;
        }
        self.blocks.get(&d.key()).is_some_and(|b| b.inner.contains(&d.flat()))
    }
}

/// Sparse views of the structure constants used to write equations.
struct Tables {
    n: usize,
    /// Support of `[e_i, e_j]` at `i * n + j`.
    bracket: Vec<Vec<u32>>,
    /// `l` with `e_m` in `[e_l, e_j]`, at `j * n + m`.
    inverse: Vec<Vec<u32>>,
    square: Vec<Option<Vec<u32>>>,
}

impl Tables {
    fn new(g: &StructureConstants) -> Self {
        let n = g.dim();
        let mut bracket = vec![Vec::new(); n * n];
        let mut inverse = vec![Vec::new(); n * n];
        for l in 0..n {
            for j in 0..n {
                for m in g.bracket_basis(l, j).iter_ones() {
                    bracket[l * n + j].push(m as u32);
                    inverse[j * n + m].push(l as u32);
                }
            }
        }
        let square = (0..n).map(|i| g.square_basis(i).map(|s| s.iter_ones().map(|m| m as u32).collect())).collect();
        Tables { n, bracket, inverse, square }
    }
}

/// Calls `emit` with every equation row of the derivation system, as the
/// list of flat unknowns `k * n + l` it involves (repeats cancel): one row
/// per pair `i < j` and output coordinate `m` for the bracket identity, and
/// one per odd `i` and `m` for the squaring identity. Empty rows are skipped.
fn for_each_row(t: &Tables, mut emit: impl FnMut(&[usize])) {
    let n = t.n;
    let mut row: Vec<usize> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let bij = &t.bracket[i * n + j];
            for m in 0..n {
                row.clear();
                row.extend(bij.iter().map(|&l| m * n + l as usize));
                row.extend(t.inverse[j * n + m].iter().map(|&l| l as usize * n + i));
                row.extend(t.inverse[i * n + m].iter().map(|&l| l as usize * n + j));
                if !row.is_empty() {
                    emit(&row);
                }
            }
        }
        if let Some(s) = &t.square[i] {
            for m in 0..n {
                row.clear();
                row.extend(s.iter().map(|&l| m * n + l as usize));
                row.extend(t.inverse[i * n + m].iter().map(|&l| l as usize * n + i));
                if !row.is_empty() {
                    emit(&row);
                }
            }
        }
    }
}

/// Dense elimination of the assembled system; returns a nullspace basis.
fn solve_dense(width: usize, rows: &[BitVector]) -> Vec<BitVector> {
    BitMatrix::from_rows(width, rows).nullspace_basis()
}

fn check_grading(g: &StructureConstants) -> Result<(), DerivError> {
    match liesuper::verify_grading(g).first() {
        Some(&(i, j, k)) => Err(DerivError::InconsistentGrading(i, j, k)),
        None => Ok(()),
    }
}

fn inner_by_key(g: &StructureConstants) -> BTreeMap<BlockKey, Vec<BitVector>> {
    let mut out: BTreeMap<BlockKey, Vec<BitVector>> = BTreeMap::new();
    for (i, v) in g.ad_vectors().into_iter().enumerate() {
        out.entry(BlockKey { shift: g.element(i).grade(), parity: g.parity(i) }).or_default().push(v);
    }
    out
}

fn assemble(g: &StructureConstants, all: BTreeMap<BlockKey, RowSpace>) -> DerivationSpace {
    let n = g.dim();
    let len = n * n;
    let mut inner = inner_by_key(g);
    let ad_dim = RowSpace::span(len, g.ad_vectors()).dim();
    let mut blocks = BTreeMap::new();
    for (key, space) in all {
        if space.dim() == 0 {
            continue;
        }
        let ads = RowSpace::span(len, inner.remove(&key).unwrap_or_default());
        let inner = ads.intersection(&space);
        let outer = RowSpace::span(len, space.basis().iter().map(|v| inner.reduce(v)));
        blocks.insert(key.clone(), DerivationBlock { key, all: space, inner, outer });
    }
    let mut ds = DerivationSpace { n, blocks, inner_defect: 0 };
    ds.inner_defect = ad_dim - ds.dim_inner();
    ds
}

/// One system in all `n²` matrix entries, then split by shift.
pub fn derivation_space_naive(g: &StructureConstants) -> Result<DerivationSpace, DerivError> {
    check_grading(g)?;
    let n = g.dim();
    let t = Tables::new(g);
    let mut rows = Vec::new();
    for_each_row(&t, |r| {
        let v = BitVector::from_indices(n * n, r.iter().copied());
        if !v.is_zero() {
            rows.push(v);
        }
    });
    let mut split: BTreeMap<BlockKey, Echelon> = BTreeMap::new();
    for v in solve_dense(n * n, &rows) {
        let mut parts: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
        for u in v.iter_ones() {
            parts.entry(BlockKey::of_entry(g, u / n, u % n)).or_default().push(u);
        }
        for (key, idx) in parts {
            split.entry(key).or_insert_with(|| Echelon::new(n * n)).insert(&BitVector::from_indices(n * n, idx));
        }
    }
    Ok(assemble(g, split.into_iter().map(|(k, e)| (k, e.into_row_space())).collect()))
}

/// One independent system per shift, optionally solved in parallel; the
/// results are merged in sorted key order either way.
pub fn derivation_space_blocked(g: &StructureConstants, parallel: bool) -> Result<DerivationSpace, DerivError> {
    check_grading(g)?;
    let n = g.dim();
    let t = Tables::new(g);
    let keys = GradedBlocks::new(g).shifts();
    let index: HashMap<&BlockKey, usize> = keys.iter().enumerate().map(|(b, k)| (k, b)).collect();
    let mut block_of = vec![0u32; n * n];
    let mut local = vec![0u32; n * n];
    let mut unknowns: Vec<Vec<usize>> = vec![Vec::new(); keys.len()];
    for u in 0..n * n {
        let b = index[&BlockKey::of_entry(g, u / n, u % n)];
        block_of[u] = b as u32;
        local[u] = unknowns[b].len() as u32;
        unknowns[b].push(u);
    }
    let mut rows: Vec<Vec<BitVector>> = vec![Vec::new(); keys.len()];
    for_each_row(&t, |r| {
        let b = block_of[r[0]] as usize;
        let v = BitVector::from_indices(unknowns[b].len(), r.iter().map(|&u| local[u] as usize));
        if !v.is_zero() {
            rows[b].push(v);
        }
    });
    let solve = |b: usize| {
        let basis = solve_dense(unknowns[b].len(), &rows[b]);
        RowSpace::span(n * n, basis.iter().map(|v| v.scatter(n * n, &unknowns[b])))
    };
    let solved: Vec<RowSpace> = if parallel {
        (0..keys.len()).into_par_iter().map(solve).collect()
    } else {
        (0..keys.len()).map(solve).collect()
    };
    Ok(assemble(g, keys.into_iter().zip(solved).collect()))
}
