use std::collections::BTreeMap;

use super::word::Word;
use crate::exactalg::{int, Field, Rational};

/// Finite formal sum of free-group words with rational coefficients.
pub type FoxSum = BTreeMap<Word, Rational>;

fn add_term(sum: &mut FoxSum, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = sum.entry(w.clone()).or_insert_with(Rational::zero);
    entry.add_assign(&c);
    if entry.is_zero() {
        sum.remove(&w);
    }
}

/// The free derivative ∂w/∂x_i.
pub fn fox_derivative(w: &Word, i: i32) -> FoxSum {
    let mut out = FoxSum::new();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        if l == i {
            add_term(&mut out, prefix.clone(), int(1));
        } else if l == -i {
            add_term(&mut out, prefix.mul(&Word::generator(-i)), int(-1));
        }
        prefix = prefix.mul(&Word::generator(l));
    }
    out
}

pub fn fox_add(a: &FoxSum, b: &FoxSum) -> FoxSum {
    let mut out = a.clone();
    for (w, c) in b {
        add_term(&mut out, w.clone(), c.clone());
    }
    out
}

pub fn fox_mul(a: &FoxSum, b: &FoxSum) -> FoxSum {
    let mut out = FoxSum::new();
    for (u, x) in a {
        for (v, y) in b {
            add_term(&mut out, u.mul(v), x.mul(y));
        }
    }
    out
}

/// The single-term sum `c·w`.
pub fn fox_term(w: Word, c: Rational) -> FoxSum {
    let mut out = FoxSum::new();
    add_term(&mut out, w, c);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_examples() {
        let x1 = Word::generator(1);
        assert_eq!(fox_derivative(&x1, 1), fox_term(Word::identity(), int(1)));
        assert_eq!(
            fox_derivative(&x1.inverse(), 1),
            fox_term(Word::generator(-1), int(-1))
        );
        assert!(fox_derivative(&Word::generator(2), 1).is_empty());
        // ∂[x1,x2]/∂x1 = 1 − x1 x2 x1⁻¹
        let comm = Word::new(vec![1, 2, -1, -2]);
        let expected = fox_add(
            &fox_term(Word::identity(), int(1)),
            &fox_term(Word::new(vec![1, 2, -1]), int(-1)),
        );
        assert_eq!(fox_derivative(&comm, 1), expected);
    }
}
