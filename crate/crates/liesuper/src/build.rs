use gf2core::{BitMatrix, BitVector, RowSpace};
use superfunc::{Family, FunctionAlgebra, Monomial, Poly};

use crate::{derived, quotient, subalgebra, BasisElement, BilinearFormTable, LieError, StructureConstants};

/// A family member h_B^{(1)}(a|b) or le^{(1)}(n|n) with its monomial basis
/// and the restricted Berezin form.
#[derive(Clone, Debug)]
pub struct FamilyAlgebra {
    pub family: Family,
    pub func: FunctionAlgebra,
    /// `monomials[i]` is the function underlying basis vector `i`.
    pub monomials: Vec<Monomial>,
    pub alg: StructureConstants,
    pub form: BilinearFormTable,
}

impl FamilyAlgebra {
    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.monomials.binary_search(&m).ok()
    }

    /// Coordinates of a function in this basis; terms outside it are dropped.
    pub fn vector_of(&self, f: &Poly) -> BitVector {
        BitVector::from_indices(self.alg.dim(), f.terms().filter_map(|m| self.index_of(m)))
    }
}

fn basis_element(func: &FunctionAlgebra, m: Monomial) -> BasisElement {
    BasisElement::new(func.monomial_name(m), func.lie_parity(m), func.degree(m), func.weight(m))
}

/// The whole function algebra (po or b) as a bracket table on all `2^N`
/// monomials in bitmask order, constants included. For I-type forms this is
/// a Leibniz algebra rather than a Lie superalgebra.
pub fn function_table(func: &FunctionAlgebra) -> StructureConstants {
    let size = 1usize << func.nvars();
    let basis = (0..size as u32).map(|m| basis_element(func, Monomial(m))).collect();
    let mut g = StructureConstants::abelian(basis);
    let vec_of = |p: &Poly| BitVector::from_indices(size, p.terms().map(|m| m.0 as usize));
    for a in 0..size {
        for b in a..size {
            let br = func.bracket_monomials(Monomial(a as u32), Monomial(b as u32));
            if !br.is_zero() {
                g.set_bracket(a, b, vec_of(&br));
            }
        }
        let m = Monomial(a as u32);
        if func.lie_parity(m).is_odd() {
            let s = func.squaring(&Poly::monomial(m)).expect("odd monomial");
            g.set_square(a, vec_of(&s));
        }
    }
    g
}

/// Builds the simple subquotient: the derived algebra of `po / K·1`
/// (resp. `b / K·1`), with the Berezin form restricted to it.
pub fn build_algebra(family: Family) -> Result<FamilyAlgebra, LieError> {
    let func = FunctionAlgebra::new(family)?;
    let po = function_table(&func);
    let size = po.dim();
    let constants = RowSpace::span(size, [BitVector::unit(size, 0)]);
    if (0..size).any(|j| !po.bracket_basis(0, j).is_zero()) {
        return Err(LieError::ConstantsNotCentral(family.label()));
    }
    let h = quotient(&po, &constants)?;
    let d = derived(&h, 1);
    let alg = subalgebra(&h, &d)?;
    let monomials = alg
        .basis()
        .iter()
        .map(|b| func.parse_monomial(&b.name).ok_or(LieError::NotSubalgebra))
        .collect::<Result<Vec<_>, _>>()?;
    let top = func.top().0;
    let n = alg.dim();
    let gram = BitMatrix::from_fn(n, n, |i, j| monomials[i].0 ^ monomials[j].0 == top && monomials[i].0 & monomials[j].0 == 0);
    let form = BilinearFormTable::new(gram, func.form_parity());
    Ok(FamilyAlgebra { family, func, monomials, alg, form })
}
