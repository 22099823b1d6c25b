use std::fmt;

use super::rational::int;
use super::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![T::one()],
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Monic `f` with `f^n = self`, read off from the leading coefficients and
    /// then checked exactly.
    pub fn nth_root(&self, n: usize) -> Result<Self> {
        let fail = Error::RootExtraction { n };
        if n == 0 || !self.is_monic() {
            return Err(fail);
        }
        let deg = self.degree().expect("monic is nonzero");
        if !deg.is_multiple_of(n) {
            return Err(fail);
        }
        let d = deg / n;
        // Reversed series G(s) = s^deg g(1/s) has G_0 = 1. From n·F'·G = G'·F:
        // n·k·F_k = Σ_{j=1..k} (j − n(k−j)) G_j F_{k−j}.
        let g_rev: Vec<T> = (0..=d).map(|k| self.coeff(deg - k)).collect();
        let nn = T::from_int(n as i64);
        let mut f_rev: Vec<T> = vec![T::one()];
        for k in 1..=d {
            let mut acc = T::zero();
            for j in 1..=k {
                let w = T::from_rational(&int(j as i64 - (n as i64) * ((k - j) as i64)));
                acc.add_mul(&g_rev[j].mul(&f_rev[k - j]), &w);
            }
            let denom = nn.mul(&T::from_int(k as i64));
            f_rev.push(acc.div(&denom).expect("characteristic zero"));
        }
        let f = Self::new(f_rev.into_iter().rev().collect());
        if f.pow(n) == *self {
            Ok(f)
        } else {
            Err(fail)
        }
    }
}

impl<T: Field> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<T: Field> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Rational};

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn square_roots() {
        assert_eq!(p(&[4, -4, 1]).nth_root(2).unwrap(), p(&[-2, 1]));
        assert_eq!(p(&[1, 0, 2, 0, 1]).nth_root(2).unwrap(), p(&[1, 0, 1]));
        assert_eq!(p(&[1, 0, 1]).nth_root(2), Err(Error::RootExtraction { n: 2 }));
        assert_eq!(p(&[1, 1]).nth_root(2), Err(Error::RootExtraction { n: 2 }));
    }

    #[test]
    fn cube_root() {
        let f = p(&[3, -1, 0, 1]);
        assert_eq!(f.pow(3).nth_root(3).unwrap(), f);
    }

    #[test]
    fn eval_horner() {
        assert_eq!(p(&[1, 2, 3]).eval(&int(2)), int(17));
    }
}
