use std::collections::BTreeMap;
use std::fmt;

use super::perm::FiniteGroup;
use crate::exactalg::{Field, Rational};

/// Element of the rational group algebra Q[G], keyed by element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupAlgebraElement {
    coeffs: BTreeMap<usize, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The identity element of the group, as an algebra element.
    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(h: usize) -> Self {
        Self::from_terms([(h, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut out = Self::zero();
        for (h, c) in terms {
            out.add_term(h, &c);
        }
        out
    }

    fn add_term(&mut self, h: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(h).or_insert_with(Rational::zero);
        entry.add_assign(c);
        if entry.is_zero() {
            self.coeffs.remove(&h);
        }
    }

    pub fn coefficient(&self, h: usize) -> Rational {
        self.coeffs.get(&h).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&h, c)| (h, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (h, c) in other.terms() {
            out.add_term(h, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::one().neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        GroupAlgebraElement {
            coeffs: self.coeffs.iter().map(|(&h, c)| (h, c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, other: &Self, g: &FiniteGroup) -> Self {
        let mut out = Self::zero();
        for (x, a) in self.terms() {
            for (y, b) in other.terms() {
                out.add_term(g.mul(x, y), &a.mul(b));
            }
        }
        out
    }

    /// The canonical involution h ↦ h⁻¹, extended linearly.
    pub fn tau(&self, g: &FiniteGroup) -> Self {
        GroupAlgebraElement {
            coeffs: self.coeffs.iter().map(|(&h, c)| (g.inv(h), c.clone())).collect(),
        }
    }

    pub fn is_central(&self, g: &FiniteGroup) -> bool {
        g.generators().iter().all(|&s| {
            let b = Self::basis(s);
            self.mul(&b, g) == b.mul(self, g)
        })
    }

    /// Dense coefficient vector of length |G|.
    pub fn to_dense(&self, g: &FiniteGroup) -> Vec<Rational> {
        (0..g.order()).map(|h| self.coefficient(h)).collect()
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.terms().map(|(h, c)| format!("{c}*g{h}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}
