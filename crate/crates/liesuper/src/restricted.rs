use gf2core::{BitVector, Combiner};

use crate::StructureConstants;

/// For each even basis vector `x`: some `y` with `(ad_x)² = ad_y`, or `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictednessReport {
    pub witnesses: Vec<(usize, Option<BitVector>)>,
}

impl RestrictednessReport {
    pub fn passed(&self) -> bool {
        self.witnesses.iter().all(|(_, w)| w.is_some())
    }

    pub fn failures(&self) -> Vec<usize> {
        self.witnesses.iter().filter(|(_, w)| w.is_none()).map(|(i, _)| *i).collect()
    }
}

pub fn restrictedness_check(g: &StructureConstants) -> RestrictednessReport {
    let n = g.dim();
    let ads = g.ad_vectors();
    let solver = Combiner::new(n * n, &ads);
    let witnesses = g
        .even_indices()
        .into_iter()
        .map(|i| {
            let a = g.ad_basis(i);
            let sq = a.mul(&a).expect("square matrix");
            let flat = BitVector::from_indices(n * n, (0..n).flat_map(|k| sq.row(k).iter_ones().map(move |j| k * n + j).collect::<Vec<_>>()));
            (i, solver.express(&flat))
        })
        .collect();
    RestrictednessReport { witnesses }
}
