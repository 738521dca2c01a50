use std::collections::{BTreeMap, BTreeSet};

use liesuper::{Parity, StructureConstants};

/// A grading shift `(degree, weight...)` together with a parity shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub shift: Vec<i32>,
    pub parity: Parity,
}

impl BlockKey {
    pub fn degree(&self) -> i32 {
        self.shift[0]
    }

    pub fn weight(&self) -> &[i32] {
        &self.shift[1..]
    }

    /// The shift of the matrix entry sending `e_l` to `e_k`.
    pub fn of_entry(g: &StructureConstants, k: usize, l: usize) -> BlockKey {
        let gk = g.element(k).grade();
        let gl = g.element(l).grade();
        BlockKey { shift: gk.iter().zip(&gl).map(|(a, b)| a - b).collect(), parity: g.parity(k) + g.parity(l) }
    }

    pub fn zero(g: &StructureConstants) -> BlockKey {
        let len = g.basis().first().map_or(1, |b| b.grade().len());
        BlockKey { shift: vec![0; len], parity: Parity::Even }
    }
}

/// The basis partitioned by `(grade, parity)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBlocks {
    pub blocks: BTreeMap<(Vec<i32>, Parity), Vec<usize>>,
}

impl GradedBlocks {
    pub fn new(g: &StructureConstants) -> Self {
        let mut blocks: BTreeMap<(Vec<i32>, Parity), Vec<usize>> = BTreeMap::new();
        for i in 0..g.dim() {
            blocks.entry((g.element(i).grade(), g.parity(i))).or_default().push(i);
        }
        GradedBlocks { blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn max_block(&self) -> usize {
        self.blocks.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn get(&self, grade: &[i32], parity: Parity) -> &[usize] {
        self.blocks.get(&(grade.to_vec(), parity)).map_or(&[], Vec::as_slice)
    }

    /// Every shift realized by some matrix entry, in sorted order.
    pub fn shifts(&self) -> Vec<BlockKey> {
        let mut keys = BTreeSet::new();
        for (gk, pk) in self.blocks.keys() {
            for (gl, pl) in self.blocks.keys() {
                keys.insert(BlockKey { shift: gk.iter().zip(gl).map(|(a, b)| a - b).collect(), parity: *pk + *pl });
            }
        }
        keys.into_iter().collect()
    }

    /// For the block pairing under `key`: the matrix entries `(k, l)` with
    /// `grade(k) = grade(l) + shift`, in row-major order.
    pub fn entries(&self, key: &BlockKey, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for ((gl, pl), ls) in &self.blocks {
            let target: Vec<i32> = gl.iter().zip(&key.shift).map(|(a, b)| a + b).collect();
            for &k in self.get(&target, *pl + key.parity) {
                for &l in ls {
                    out.push((k, l));
                }
            }
        }
        out.sort_by_key(|&(k, l)| k * n + l);
        out
    }
}
