//! Exact scalars, dense matrices and polynomials.

mod cyclotomic;
mod matrix;
mod poly;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use matrix::{CycloMatrix, Matrix, QMatrix, Rref};
pub use poly::Polynomial;
pub use rational::{int, is_integer, rat, Rational};

use std::fmt::{Debug, Display};

/// A commutative field with exact arithmetic.
///
/// Method names shadow the std operator traits on purpose: generic code only
/// sees this trait, so there is no ambiguity.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
    fn add_assign(&mut self, other: &Self) {
        *self = Field::add(self, other);
    }
    /// `self += a * b`, skipping the work when either factor vanishes.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = Field::add(self, &Field::mul(a, b));
    }
}
