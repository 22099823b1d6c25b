use coverhom_core::exactalg::{
    cyclotomic_polynomial, int, rat, CyclotomicNumber, Field, Polynomial, QMatrix, Rational,
};
use num_integer::Integer;
use proptest::prelude::*;

const CONDUCTORS: &[u32] = &[1, 3, 4, 5, 7, 8, 9, 12, 15];

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

fn cyclotomic() -> impl Strategy<Value = CyclotomicNumber> {
    (prop::sample::select(CONDUCTORS), prop::collection::vec(rational(), 8)).prop_map(
        |(n, coeffs)| {
            let mut by_exp = coeffs;
            by_exp.truncate(n as usize);
            CyclotomicNumber::from_exponents(n, by_exp)
        },
    )
}

fn small_matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            QMatrix::from_fn(r, c, |i, j| int(v[i * c + j]))
        })
    })
}

fn monic(deg: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec(rational(), deg).prop_map(|mut c| {
        c.push(int(1));
        Polynomial::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !Field::is_zero(&a) {
            prop_assert!(Field::is_one(&a.mul(&Field::inv(&a).unwrap())));
        }
    }

    #[test]
    fn cyclotomic_field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, CyclotomicNumber::from_int(1));
        }
    }

    #[test]
    fn galois_is_a_field_automorphism(a in cyclotomic(), b in cyclotomic(), k in 1i64..60, l in 1i64..60) {
        let n = a.conductor().lcm(&b.conductor()) as i64;
        prop_assume!(k.gcd(&n) == 1 && l.gcd(&n) == 1);
        let s = &a + &b;
        let p = &a * &b;
        prop_assert_eq!(s.galois(k).unwrap(), &a.galois(k).unwrap() + &b.galois(k).unwrap());
        prop_assert_eq!(p.galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        prop_assert_eq!(a.galois(k).unwrap().galois(l).unwrap(), a.galois(k * l).unwrap());
    }

    #[test]
    fn rref_is_idempotent_and_kernel_exact(m in small_matrix()) {
        let r = m.rref();
        prop_assert_eq!(&r.reduced.rref().reduced, &r.reduced);
        prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.len(), m.cols() - r.rank);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Field::is_zero));
        }
    }

    #[test]
    fn nth_root_inverts_power(f in (1usize..=6).prop_flat_map(monic), n in 1usize..4) {
        prop_assert_eq!(f.pow(n).nth_root(n).unwrap(), f);
    }

    #[test]
    fn charpoly_matches_determinant(v in prop::collection::vec(-3i64..4, 16), x in -5i64..5) {
        // independent oracle: det(x·I − A) by elimination
        let a = QMatrix::from_fn(4, 4, |i, j| int(v[i * 4 + j]));
        let shifted = QMatrix::identity(4).scale(&int(x)).sub(&a);
        prop_assert_eq!(a.charpoly().eval(&int(x)), shifted.determinant());
    }
}

#[test]
fn roots_of_unity_up_to_conductor_200() {
    for n in 1u32..=200 {
        let z = CyclotomicNumber::root_of_unity(n, 1);
        assert_eq!(z.pow(n as u64), CyclotomicNumber::from_int(1), "ζ_{n}^{n}");
        if n > 1 {
            assert_ne!(z.pow((n / 2) as u64), CyclotomicNumber::from_int(1));
        }
        let phi = cyclotomic_polynomial(n);
        let mut acc = CyclotomicNumber::from_int(0);
        let mut power = CyclotomicNumber::from_int(1);
        for c in phi {
            acc = &acc + &power.scale(&int(c));
            power = &power * &z;
        }
        assert!(acc.is_zero(), "Φ_{n}(ζ_{n}) ≠ 0");
    }
}
