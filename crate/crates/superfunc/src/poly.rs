use std::collections::BTreeSet;
use std::ops::{Add, AddAssign};

/// A monomial as a bitmask over the variable list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub u32);

impl Monomial {
    #[inline]
    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn vars(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Product; `None` when the masks overlap (x² = 0).
    #[inline]
    pub fn mul(self, other: Monomial) -> Option<Monomial> {
        (self.0 & other.0 == 0).then_some(Monomial(self.0 | other.0))
    }
}

/// A GF(2)-linear combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(BTreeSet<Monomial>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeSet::new())
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly(BTreeSet::from([m]))
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Poly::zero();
        for m in ms {
            p.toggle(m);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.0.contains(&m)
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero();
        for a in self.terms() {
            for b in other.terms() {
                if let Some(c) = a.mul(b) {
                    r.toggle(c);
                }
            }
        }
        r
    }

    /// ∂/∂x: deletes `x` from every monomial containing it, drops the rest.
    pub fn partial(&self, x: usize) -> Poly {
        Poly(self.terms().filter(|m| m.contains(x)).map(|m| Monomial(m.0 ^ 1 << x)).collect())
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for m in rhs.terms() {
            self.toggle(m);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut r = self.clone();
        r += rhs;
        r
    }
}
