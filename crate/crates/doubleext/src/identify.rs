use deriv::LinearMap;
use gf2core::{BitMatrix, BitVector};
use liesuper::{function_table, BilinearFormTable, StructureConstants};
use superfunc::FunctionAlgebra;

use crate::{DexError, ExtendedAlgebra};

/// A verified bracket- and squaring-preserving bijection from an extension
/// onto a target algebra. Column `j` of `matrix` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismWitness {
    pub matrix: BitMatrix,
    /// Image of `D`: the top monomial plus the solved correction.
    pub d_image: BitVector,
}

/// The whole function algebra (po or b) on all monomials with its Berezin
/// form `B(f, g)` = coefficient of the top monomial in `fg`.
pub fn canonical_target(func: &FunctionAlgebra) -> (StructureConstants, BilinearFormTable) {
    let g = function_table(func);
    let n = g.dim();
    let top = func.top().0 as usize;
    let gram = BitMatrix::from_fn(n, n, |i, j| i ^ j == top && i & j == 0);
    (g, BilinearFormTable::new(gram, func.form_parity()))
}

/// Tries `c ↦ 1`, the identity on `a` (matched by basis names), and
/// `D ↦ X̄ + y` with `y` solved from `[φ(D), φ(x)] = φ(D x)`. The map is
/// returned only after every bracket and square has been checked; `None`
/// means this candidate family failed, not that no isomorphism exists.
pub fn identify_canonical(ext: &ExtendedAlgebra, target: &StructureConstants) -> Result<Option<IsomorphismWitness>, DexError> {
    let g = &ext.alg;
    let len = g.dim();
    if target.dim() != len {
        return Err(DexError::Dimension { expected: len, got: target.dim() });
    }
    let n = len - 2;
    let mut image = Vec::with_capacity(n);
    for i in 1..=n {
        match target.index_of(&g.element(i).name) {
            Some(t) => image.push(t),
            None => return Ok(None),
        }
    }
    let mut used = vec![false; len];
    for &t in &image {
        used[t] = true;
    }
    let rest: Vec<usize> = (0..len).filter(|&t| !used[t]).collect();
    if rest.len() != 2 {
        return Ok(None);
    }
    let central = |t: usize| (0..len).all(|j| target.bracket_basis(t, j).is_zero());
    let (one, top) = match (central(rest[0]), central(rest[1])) {
        (true, false) => (rest[0], rest[1]),
        (false, true) => (rest[1], rest[0]),
        _ => return Ok(None),
    };

    let d = ext.d_index();
    let phi_a = |v: &BitVector| BitVector::from_indices(len, v.iter_ones().map(|k| if k == 0 { one } else { image[k - 1] }));
    let mut rhs = Vec::with_capacity(n * len);
    for (j, &t) in image.iter().enumerate() {
        let want = phi_a(g.bracket_basis(d, j + 1));
        let have = target.bracket_basis(top, t);
        rhs.extend((0..len).map(|k| want.get(k) != have.get(k)));
    }
    let columns: Vec<BitVector> = (0..len)
        .map(|y| BitVector::from_bools(&image.iter().flat_map(|&t| (0..len).map(move |k| (y, t, k))).map(|(y, t, k)| target.bracket_basis(y, t).get(k)).collect::<Vec<_>>()))
        .collect();
    let system = BitMatrix::from_columns(n * len, &columns);
    let Some(y) = system.solve(&BitVector::from_bools(&rhs)).ok().flatten() else {
        return Ok(None);
    };
    let mut d_image = y;
    d_image.flip(top);

    let mut cols: Vec<BitVector> = (0..len - 1).map(|j| phi_a(&BitVector::unit(len, j))).collect();
    cols.push(d_image.clone());
    let p = BitMatrix::from_columns(len, &cols);
    if verify_map(g, target, &p) {
        Ok(Some(IsomorphismWitness { matrix: p, d_image }))
    } else {
        Ok(None)
    }
}

/// Bijective, parity-preserving, and compatible with every basis bracket and
/// every odd basis square.
fn verify_map(g: &StructureConstants, target: &StructureConstants, p: &BitMatrix) -> bool {
    let len = g.dim();
    if p.rank() != len {
        return false;
    }
    let cols: Vec<BitVector> = (0..len).map(|j| p.column(j)).collect();
    let apply = |v: &BitVector| p.mul_vec(v).expect("square matrix");
    for (j, c) in cols.iter().enumerate() {
        let homogeneous = if g.parity(j).is_odd() { target.is_odd_vector(c) } else { target.is_even_vector(c) };
        if !homogeneous {
            return false;
        }
    }
    for i in 0..len {
        for j in i..len {
            if apply(g.bracket_basis(i, j)) != target.bracket(&cols[i], &cols[j]).expect("same length") {
                return false;
            }
        }
        if let Some(s) = g.square_basis(i) {
            if apply(s) != target.square(&cols[i]).expect("odd image") {
                return false;
            }
        }
    }
    true
}

/// Whether `ω(x, y) = B(D x, y)` is not a coboundary `B(z, [x, y])`.
pub fn nontrivial_cocycle(a: &StructureConstants, b: &BilinearFormTable, d: &LinearMap) -> bool {
    let n = a.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        let di = d.column(i);
        for j in i..n {
            rows.push(b.covector(a.bracket_basis(i, j)));
            rhs.push(b.eval(&di, &a.unit(j)));
        }
    }
    BitMatrix::from_rows(n, &rows).solve(&BitVector::from_bools(&rhs)).ok().flatten().is_none()
}
