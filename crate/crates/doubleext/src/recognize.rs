use gf2core::{BitMatrix, BitVector, RowSpace};
use liesuper::{center, odd_square_span, special_center, BilinearFormTable, Parity, StructureConstants, Subspace};

use crate::DexError;

/// The hypotheses of the four recognition propositions for a nis-superalgebra
/// `(g, B)`, with the subspaces that witness them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionReport {
    pub form_parity: Parity,
    pub center_even: Subspace,
    pub center_odd: Subspace,
    /// `z(g) ∩ s_g(g_odd)^⊥`.
    pub special_center: Subspace,
    /// `z(g)_odd ∩ C(g, B)`; the squaring is additive on the center, so this
    /// part of the cone is a subspace.
    pub cone_center: Subspace,
    /// `s_g(z(g)_odd) ∩ s_g(g_odd)^⊥`.
    pub square_center: Subspace,
    /// Even form, nonzero even special center: a `D_ev`-extension.
    pub rec1: bool,
    /// Even form, nonzero odd center in the cone.
    pub rec2: bool,
    /// Odd form, nonzero even center: a `D_od`-extension.
    pub rec3: bool,
    /// Odd form, nonzero squares of the odd center orthogonal to all squares.
    pub rec4: bool,
}

impl RecognitionReport {
    pub fn any(&self) -> bool {
        self.rec1 || self.rec2 || self.rec3 || self.rec4
    }
}

fn parity_subspace(g: &StructureConstants, parity: Parity) -> Subspace {
    RowSpace::span(g.dim(), (0..g.dim()).filter(|&i| g.parity(i) == parity).map(|i| g.unit(i)))
}

pub fn recognition(g: &StructureConstants, b: &BilinearFormTable) -> Result<RecognitionReport, DexError> {
    let n = g.dim();
    if b.dim() != n {
        return Err(DexError::Dimension { expected: n, got: b.dim() });
    }
    if !b.is_nondegenerate() {
        return Err(DexError::Degenerate);
    }
    let z = center(g);
    let center_even = z.intersection(&parity_subspace(g, Parity::Even));
    let center_odd = z.intersection(&parity_subspace(g, Parity::Odd));
    let special = special_center(g, b);
    let squares = odd_square_span(g);

    let z_squares: Vec<BitVector> = center_odd.basis().iter().map(|x| g.square(x).expect("odd")).collect();
    let pairings: Vec<BitVector> = z_squares
        .iter()
        .map(|s| BitVector::from_bools(&squares.basis().iter().map(|t| b.eval(s, t)).collect::<Vec<_>>()))
        .collect();
    let kernel = BitMatrix::from_columns(squares.dim(), &pairings).nullspace_basis();
    let combine = |coeffs: &BitVector, vs: &[BitVector]| {
        let mut out = BitVector::zeros(n);
        for k in coeffs.iter_ones() {
            out.xor_assign(&vs[k]);
        }
        out
    };
    let cone_center = RowSpace::span(n, kernel.iter().map(|k| combine(k, center_odd.basis())));
    let square_center = RowSpace::span(n, kernel.iter().map(|k| combine(k, &z_squares)));

    let even_form = !b.parity.is_odd();
    let special_even = special.intersection(&parity_subspace(g, Parity::Even));
    Ok(RecognitionReport {
        form_parity: b.parity,
        rec1: even_form && special_even.dim() > 0,
        rec2: even_form && cone_center.dim() > 0,
        rec3: !even_form && center_even.dim() > 0,
        rec4: !even_form && square_center.dim() > 0,
        center_even,
        center_odd,
        special_center: special,
        cone_center,
        square_center,
    })
}
