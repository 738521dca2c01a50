use gf2core::BitMatrix;
use liesuper::FamilyAlgebra;
use superfunc::{Family, FormType, Monomial};

use crate::{DerivError, LinearMap};

/// A named closed-form outer derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub label: String,
    pub map: LinearMap,
    /// Set when the family is not covered by the published lists and the
    /// generators are taken from the nearest covered shape.
    pub extrapolated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Empty,
    Pi,
    I,
    Odd,
}

fn part(dim: usize, form: FormType) -> Part {
    match (dim, form) {
        (0, _) => Part::Empty,
        (d, _) if d % 2 == 1 => Part::Odd,
        (_, FormType::Pi) => Part::Pi,
        (_, FormType::I) => Part::I,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    /// `D_b` for every paired indeterminate `b`.
    Pairs,
    /// `D_θ` for the first diagonal indeterminate of the given parity part.
    Theta(bool),
    Euler,
    /// Identity on monomials with an even number of `+`-weight indeterminates.
    PlusParity,
    Top,
    Bottom,
}

fn recipe(family: &Family) -> (Vec<Gen>, bool) {
    let n = family.nvars();
    let (mut gens, extrapolated) = match *family {
        Family::Le { .. } => (vec![Gen::Pairs, Gen::PlusParity, Gen::Top], false),
        Family::H { even, odd, even_form, odd_form } => match (part(even, even_form), part(odd, odd_form)) {
            (Part::Pi | Part::Empty, Part::Pi | Part::Empty) => (vec![Gen::Pairs, Gen::PlusParity, Gen::Top], false),
            (Part::I, Part::Empty) => (vec![Gen::Pairs, Gen::Theta(false), Gen::Euler, Gen::Top], false),
            (Part::Empty, Part::I) => (vec![Gen::Pairs, Gen::Theta(true), Gen::Euler, Gen::Top], false),
            (Part::I, Part::I) => (vec![Gen::Top], false),
            (Part::Odd, Part::Empty | Part::Pi) | (Part::Empty | Part::Pi, Part::Odd) => {
                (vec![Gen::Pairs, Gen::Euler, Gen::Top], false)
            }
            (Part::Odd, Part::Odd) if n == 4 => (vec![Gen::Top], false),
            (Part::Odd, Part::Odd) => (vec![Gen::Theta(true), Gen::Euler, Gen::Top], false),
            (Part::Pi, Part::I) | (Part::I, Part::Pi) if n == 4 => (vec![Gen::Top], false),
            (Part::Pi, Part::I) => (vec![Gen::Pairs, Gen::Theta(true), Gen::Euler, Gen::Top], false),
            (Part::I, Part::Pi) => (vec![Gen::Pairs, Gen::Theta(false), Gen::Euler, Gen::Top], false),
            (Part::Odd, Part::I) => (vec![Gen::Pairs, Gen::Theta(true), Gen::Euler, Gen::Top], true),
            (Part::I, Part::Odd) => (vec![Gen::Pairs, Gen::Theta(false), Gen::Euler, Gen::Top], true),
        },
    };
    if n == 4 {
        gens.push(Gen::Bottom);
    }
    (gens, extrapolated)
}

fn from_monomial_map(fa: &FamilyAlgebra, f: impl Fn(Monomial) -> Option<Monomial>) -> Result<LinearMap, DerivError> {
    let n = fa.alg.dim();
    let mut m = BitMatrix::zeros(n, n);
    for (l, &mono) in fa.monomials.iter().enumerate() {
        if let Some(k) = f(mono).and_then(|img| fa.index_of(img)) {
            m.set(k, l, true);
        }
    }
    LinearMap::from_matrix(&fa.alg, m)
}

/// The published outer derivations of `fa`, materialized as matrices:
///
/// - `D_b^(0)`: `S(b)·y ↦ b·y` for `y` free of `b` and `S(b)`;
/// - `D_0^(0)`: for forms without diagonal indeterminates, the identity on
///   monomials with an even number of ξ (resp. p, π) factors; otherwise the
///   Euler operator, identity on odd-degree monomials;
/// - `D_theta^(0)`: identity on the multiples of the diagonal θ₁;
/// - `D^(N-2)`: `S(x) ↦ X̄/x` for every indeterminate `x`;
/// - `D^(-2)` (four indeterminates only): `X̄/x ↦ S(x)`.
pub fn closed_form_generators(fa: &FamilyAlgebra) -> Result<Vec<ClosedForm>, DerivError> {
    let func = &fa.func;
    let nv = func.nvars();
    if nv < 4 {
        return Err(DerivError::FormulaUndefined(fa.family.label()));
    }
    let top = func.top().0;
    let (gens, extrapolated) = recipe(&fa.family);
    let mut out = Vec::new();
    let mut push = |label: String, map: LinearMap| out.push(ClosedForm { label, map, extrapolated });
    for g in gens {
        match g {
            Gen::Pairs => {
                for b in 0..nv {
                    let s = func.switch(b);
                    if s == b {
                        continue;
                    }
                    let map = from_monomial_map(fa, |m| (m.contains(s) && !m.contains(b)).then(|| Monomial(m.0 ^ (1 << s) ^ (1 << b))))?;
                    push(format!("D_{}^(0)", func.vars()[b].name), map);
                }
            }
            Gen::Theta(odd_part) => {
                let theta = func
                    .diagonals()
                    .iter()
                    .copied()
                    .find(|&t| func.vars()[t].parity.is_odd() == odd_part)
                    .ok_or_else(|| DerivError::FormulaUndefined(fa.family.label()))?;
                push(format!("D_{}^(0)", func.vars()[theta].name), from_monomial_map(fa, |m| m.contains(theta).then_some(m))?);
            }
            Gen::Euler => push("D_0^(0)".to_string(), from_monomial_map(fa, |m| (m.degree() % 2 == 1).then_some(m))?),
            Gen::PlusParity => {
                let plus: u32 = func.pairs().iter().map(|&(p, _)| 1u32 << p).sum();
                push("D_0^(0)".to_string(), from_monomial_map(fa, |m| ((m.0 & plus).count_ones() % 2 == 0).then_some(m))?);
            }
            Gen::Top => {
                let map = from_monomial_map(fa, |m| {
                    (m.degree() == 1).then(|| Monomial(top ^ (1 << func.switch(m.0.trailing_zeros() as usize))))
                })?;
                push(format!("D^({})", nv as i32 - 2), map);
            }
            Gen::Bottom => {
                let map = from_monomial_map(fa, |m| {
                    (m.degree() as usize == nv - 1).then(|| Monomial(1 << func.switch((top ^ m.0).trailing_zeros() as usize)))
                })?;
                push("D^(-2)".to_string(), map);
            }
        }
    }
    Ok(out)
}
