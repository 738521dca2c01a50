//! The supercommutative algebra of functions Λ(a|b) over GF(2) with every
//! shearing entry equal to 1, so that x² = 0 for every indeterminate.
//!
//! A monomial is a bitmask over an ordered variable list; multiplication is
//! union of disjoint masks and there are no signs. On top of this sit the
//! Poisson brackets for the Π and I normal shapes of the form, the Buttin
//! bracket, the squarings that polarize to them, and the Berezin pairing.

mod family;
mod poly;

pub use family::{Family, FormType, Role, VarSpec};
pub use poly::{Monomial, Poly};

use std::fmt;
use std::ops::Add;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuncError {
    #[error("illegal family: {0}")]
    IllegalFamily(String),
    #[error("polynomial uses variables outside the {0}-variable list")]
    VariableMismatch(usize),
    #[error("unknown variable index {0}")]
    UnknownVariable(usize),
    #[error("squaring needs an odd homogeneous element")]
    NotOddHomogeneous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: bool) -> Self {
        if b {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.is_odd() != rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

/// A value of the Berezin form together with the parity of the form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormValue {
    pub value: bool,
    pub parity: Parity,
}

/// Λ(a|b) equipped with the bracket of a family.
#[derive(Clone, Debug)]
pub struct FunctionAlgebra {
    family: Family,
    vars: Vec<VarSpec>,
    /// `(plus, minus)` index pairs: (pᵢ,qᵢ), (ξᵢ,ηᵢ) or (πᵢ,qᵢ).
    pairs: Vec<(usize, usize)>,
    /// Indeterminates paired with themselves (z, θ).
    diagonals: Vec<usize>,
}

impl FunctionAlgebra {
    pub fn new(family: Family) -> Result<Self, FuncError> {
        let (vars, pairs, diagonals) = family.layout()?;
        Ok(FunctionAlgebra { family, vars, pairs, diagonals })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn diagonals(&self) -> &[usize] {
        &self.diagonals
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn is_buttin(&self) -> bool {
        matches!(self.family, Family::Le { .. })
    }

    /// X̄, the product of all indeterminates.
    pub fn top(&self) -> Monomial {
        Monomial((1u32 << self.nvars()) - 1)
    }

    pub fn one(&self) -> Monomial {
        Monomial(0)
    }

    /// The partner of `x` in the form: its pair mate, or itself if diagonal.
    pub fn switch(&self, x: usize) -> usize {
        for &(p, m) in &self.pairs {
            if x == p {
                return m;
            }
            if x == m {
                return p;
            }
        }
        x
    }

    pub fn var(&self, x: usize) -> Result<Poly, FuncError> {
        if x >= self.nvars() {
            return Err(FuncError::UnknownVariable(x));
        }
        Ok(Poly::monomial(Monomial(1 << x)))
    }

    pub fn monomial_name(&self, m: Monomial) -> String {
        if m.0 == 0 {
            return "1".into();
        }
        m.vars().map(|i| self.vars[i].name.as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn parse_monomial(&self, s: &str) -> Option<Monomial> {
        if s == "1" {
            return Some(Monomial(0));
        }
        let mut mask = 0u32;
        for part in s.split('*') {
            let i = self.var_index(part)?;
            if mask >> i & 1 == 1 {
                return None;
            }
            mask |= 1 << i;
        }
        Some(Monomial(mask))
    }

    /// Parity as an element of the function algebra.
    pub fn function_parity(&self, m: Monomial) -> Parity {
        let odd = m.vars().filter(|&i| self.vars[i].parity.is_odd()).count();
        Parity::from_bit(odd % 2 == 1)
    }

    /// Parity as an element of the Lie superalgebra: shifted for the Buttin bracket.
    pub fn lie_parity(&self, m: Monomial) -> Parity {
        let p = self.function_parity(m);
        if self.is_buttin() {
            p + Parity::Odd
        } else {
            p
        }
    }

    pub fn weight(&self, m: Monomial) -> Vec<i32> {
        self.pairs
            .iter()
            .map(|&(p, q)| i32::from(m.contains(p)) - i32::from(m.contains(q)))
            .collect()
    }

    /// Lie degree: monomial degree minus 2, so that brackets add degrees.
    pub fn degree(&self, m: Monomial) -> i32 {
        m.degree() as i32 - 2
    }

    fn check(&self, f: &Poly) -> Result<(), FuncError> {
        let n = self.nvars();
        if f.terms().any(|m| m.0 >> n != 0) {
            return Err(FuncError::VariableMismatch(n));
        }
        Ok(())
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Result<Poly, FuncError> {
        self.check(f)?;
        self.check(g)?;
        Ok(f.mul(g))
    }

    pub fn partial(&self, f: &Poly, x: usize) -> Result<Poly, FuncError> {
        self.check(f)?;
        if x >= self.nvars() {
            return Err(FuncError::UnknownVariable(x));
        }
        Ok(f.partial(x))
    }

    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly, FuncError> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.bracket_unchecked(f, g))
    }

    pub(crate) fn bracket_unchecked(&self, f: &Poly, g: &Poly) -> Poly {
        let mut r = Poly::zero();
        for &(x, y) in &self.pairs {
            r += &f.partial(x).mul(&g.partial(y));
            r += &f.partial(y).mul(&g.partial(x));
        }
        for &t in &self.diagonals {
            r += &f.partial(t).mul(&g.partial(t));
        }
        r
    }

    /// Bracket of two monomials, the hot path of structure-constant tables.
    pub fn bracket_monomials(&self, a: Monomial, b: Monomial) -> Poly {
        let mut r = Poly::zero();
        let mut term = |x: usize, y: usize| {
            if a.contains(x) && b.contains(y) {
                let (u, v) = (a.0 ^ 1 << x, b.0 ^ 1 << y);
                if u & v == 0 {
                    r.toggle(Monomial(u | v));
                }
            }
        };
        for &(x, y) in &self.pairs {
            term(x, y);
            term(y, x);
        }
        for &t in &self.diagonals {
            term(t, t);
        }
        r
    }

    /// The squaring s(f) on odd elements (odd in the Lie sense).
    ///
    /// Pairs contribute `∂f/∂x · ∂f/∂y`; a diagonal variable t contributes
    /// the divided square of `∂f/∂t`. The divided square of `Σ c_m m` is
    /// `Σ_{m<m'} c_m c_m' m m'` in bitmask order.
    pub fn squaring(&self, f: &Poly) -> Result<Poly, FuncError> {
        self.check(f)?;
        if f.terms().any(|m| !self.lie_parity(m).is_odd()) {
            return Err(FuncError::NotOddHomogeneous);
        }
        let mut r = Poly::zero();
        for &(x, y) in &self.pairs {
            r += &f.partial(x).mul(&f.partial(y));
        }
        for &t in &self.diagonals {
            r += &divided_square(&f.partial(t));
        }
        Ok(r)
    }

    /// Berezin pairing: the coefficient of X̄ in `f·g`.
    pub fn berezin_form(&self, f: &Poly, g: &Poly) -> Result<FormValue, FuncError> {
        let prod = self.mul(f, g)?;
        Ok(FormValue { value: prod.contains(self.top()), parity: self.form_parity() })
    }

    /// The parity of the Berezin form on the Lie superalgebra.
    ///
    /// This is the parity of X̄, the number of odd indeterminates. For the
    /// Buttin case the Lie parity shift occurs in both arguments and cancels.
    pub fn form_parity(&self) -> Parity {
        self.function_parity(self.top())
    }
}

/// `Σ_{m<m'} c_m c_m' m·m'` for `u = Σ c_m m`.
pub fn divided_square(u: &Poly) -> Poly {
    let terms: Vec<Monomial> = u.terms().collect();
    let mut r = Poly::zero();
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            if a.0 & b.0 == 0 {
                r.toggle(Monomial(a.0 | b.0));
            }
        }
    }
    r
}
