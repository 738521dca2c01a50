use gf2core::{BitVector, Echelon, RowSpace};

use crate::{BasisElement, BilinearFormTable, LieError, StructureConstants};

/// Subspaces are held in reduced echelon form over the algebra's basis.
pub type Subspace = RowSpace;

/// Splits every vector into its even and odd parts.
fn parity_parts<'a>(g: &'a StructureConstants, vs: &'a [BitVector]) -> impl Iterator<Item = BitVector> + 'a {
    vs.iter().flat_map(move |v| {
        let even = BitVector::from_indices(g.dim(), v.iter_ones().filter(|&i| !g.parity(i).is_odd()));
        let odd = BitVector::from_indices(g.dim(), v.iter_ones().filter(|&i| g.parity(i).is_odd()));
        [even, odd]
    })
}

fn odd_part_basis(g: &StructureConstants, v: &Subspace) -> Vec<BitVector> {
    let odd = RowSpace::span(g.dim(), parity_parts(g, v.basis()).filter(|x| g.is_odd_vector(x)));
    odd.basis().to_vec()
}

/// `[V, V] + span{s(v) : v ∈ V_odd}` for `V = g^{(i-1)}`, starting at `g^{(0)} = g`.
pub fn derived(g: &StructureConstants, i: usize) -> Subspace {
    let mut v = RowSpace::full(g.dim());
    for _ in 0..i {
        v = derived_of(g, &v);
    }
    v
}

fn derived_of(g: &StructureConstants, v: &Subspace) -> Subspace {
    let b = v.basis();
    let mut e = Echelon::new(g.dim());
    for (a, x) in b.iter().enumerate() {
        for y in &b[a..] {
            e.insert(&g.bracket(x, y).expect("same ambient"));
        }
    }
    for x in odd_part_basis(g, v) {
        e.insert(&g.square(&x).expect("odd by construction"));
    }
    e.into_row_space()
}

/// Dimensions of `g^{(0)} ⊇ g^{(1)} ⊇ …` until the chain stabilizes.
pub fn derived_series(g: &StructureConstants) -> Vec<usize> {
    let mut v = RowSpace::full(g.dim());
    let mut dims = vec![v.dim()];
    loop {
        let next = derived_of(g, &v);
        if next.dim() == v.dim() {
            return dims;
        }
        dims.push(next.dim());
        v = next;
    }
}

/// `{x : [x, e_j] = 0 for all j}`.
pub fn center(g: &StructureConstants) -> Subspace {
    let n = g.dim();
    let mut e = Echelon::new(n);
    for j in 0..n {
        for k in 0..n {
            let row = BitVector::from_indices(n, (0..n).filter(|&i| g.bracket_basis(i, j).get(k)));
            e.insert(&row);
        }
    }
    RowSpace::span(n, e.nullspace_basis())
}

/// Span of `s(f)` over odd `f`: the basis squares plus the odd–odd brackets.
pub fn odd_square_span(g: &StructureConstants) -> Subspace {
    let odd = g.odd_indices();
    let mut e = Echelon::new(g.dim());
    for (a, &i) in odd.iter().enumerate() {
        if let Some(s) = g.square_basis(i) {
            e.insert(s);
        }
        for &j in &odd[a + 1..] {
            e.insert(g.bracket_basis(i, j));
        }
    }
    e.into_row_space()
}

/// `z(g) ∩ s_g(g_odd)^⊥`.
pub fn special_center(g: &StructureConstants, b: &BilinearFormTable) -> Subspace {
    let s = odd_square_span(g);
    let perp = RowSpace::span(g.dim(), RowSpace::span(g.dim(), s.basis().iter().map(|x| b.covector(x))).nullspace_basis());
    center(g).intersection(&perp)
}

/// `g / I` on the complement spanned by the non-pivot basis vectors of `I`.
pub fn quotient(g: &StructureConstants, ideal: &Subspace) -> Result<StructureConstants, LieError> {
    let n = g.dim();
    for (a, v) in ideal.basis().iter().enumerate() {
        for j in 0..n {
            if !ideal.contains(&g.bracket_with_basis_vec(v, j)) {
                return Err(LieError::NotIdeal(a, j));
            }
        }
    }
    for (a, v) in odd_part_basis(g, ideal).iter().enumerate() {
        if !ideal.contains(&g.square(v)?) {
            return Err(LieError::NotSquareClosed(a));
        }
    }
    let keep = ideal.free_columns();
    let project = |v: &BitVector| ideal.reduce(v).select(&keep);
    let basis: Vec<BasisElement> = keep.iter().map(|&i| g.element(i).clone()).collect();
    let mut q = StructureConstants::abelian(basis);
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate().skip(a) {
            q.set_bracket(a, b, project(g.bracket_basis(i, j)));
        }
        if let Some(s) = g.square_basis(i) {
            q.set_square(a, project(s));
        }
    }
    Ok(q)
}

/// The subalgebra `V` on its echelon basis. Elements that are basis vectors
/// of `g` keep their names; other elements are named by their support.
pub fn subalgebra(g: &StructureConstants, v: &Subspace) -> Result<StructureConstants, LieError> {
    let b = v.basis();
    let coords = |x: &BitVector| v.coords(x).ok_or(LieError::NotSubalgebra);
    let basis: Vec<BasisElement> = b
        .iter()
        .map(|x| {
            let first = g.element(x.first_one().expect("basis vectors are nonzero"));
            let name = x.iter_ones().map(|i| g.element(i).name.clone()).collect::<Vec<_>>().join("+");
            BasisElement { name, ..first.clone() }
        })
        .collect();
    let mut s = StructureConstants::abelian(basis);
    for a in 0..b.len() {
        for c in a..b.len() {
            s.set_bracket(a, c, coords(&g.bracket(&b[a], &b[c])?)?);
        }
        if s.parity(a).is_odd() {
            s.set_square(a, coords(&g.square(&b[a]).map_err(|_| LieError::NotSubalgebra)?)?);
        }
    }
    Ok(s)
}

impl StructureConstants {
    /// `[v, e_j]`.
    pub fn bracket_with_basis_vec(&self, v: &BitVector, j: usize) -> BitVector {
        let mut r = self.zero_vector();
        for i in v.iter_ones() {
            r.xor_assign(self.bracket_basis(i, j));
        }
        r
    }
}
