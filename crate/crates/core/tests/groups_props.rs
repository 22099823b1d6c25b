use coverhom_core::exactalg::{int, rat, CyclotomicNumber};
use coverhom_core::groups::{
    character_table, families, fs_indicator, inner_product, rational_components,
    ComplexCharacter, FiniteGroup, GroupAlgebraElement,
};
use proptest::prelude::*;

fn fixture_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z2", families::cyclic(2)),
        ("Z3", families::cyclic(3)),
        ("Z4", families::cyclic(4)),
        ("Z5", families::cyclic(5)),
        ("Z7", families::cyclic(7)),
        ("Sym3", families::symmetric(3)),
        ("Sym4", families::symmetric(4)),
        ("Sym5", families::symmetric(5)),
        ("Dih8", families::dihedral(4)),
        ("Dih10", families::dihedral(5)),
        ("Dic8", families::dicyclic(2)),
        ("Dic12", families::dicyclic(3)),
        ("Alt4", families::alternating(4)),
        ("Alt4xDih6", families::direct_product(&families::alternating(4), &families::dihedral(3))),
    ]
}

fn c(n: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_int(n)
}

#[test]
fn orthogonality_relations_are_exact() {
    for (name, g) in fixture_groups() {
        let t = character_table(&g);
        assert_eq!(t.len(), g.classes().len(), "{name}: one row per class");
        for (i, a) in t.iter().enumerate() {
            for (j, b) in t.iter().enumerate() {
                let expected = if i == j { c(1) } else { c(0) };
                assert_eq!(inner_product(&g, a, b), expected, "{name}: rows {i},{j}");
            }
        }
        // second orthogonality: Σ_χ χ(x) conj χ(y) = δ |C_G(x)|
        for k in 0..t.len() {
            for l in 0..t.len() {
                let mut acc = c(0);
                for chi in &t {
                    acc = &acc + &(&chi.values[k] * &chi.values[l].conj());
                }
                let expected = if k == l {
                    c((g.order() / g.classes()[k].len()) as i64)
                } else {
                    c(0)
                };
                assert_eq!(acc, expected, "{name}: columns {k},{l}");
            }
        }
        let sum_sq: usize = t.iter().map(|x| x.degree() * x.degree()).sum();
        assert_eq!(sum_sq, g.order(), "{name}: Σ χ(1)² = |G|");
    }
}

/// Brute-force oracle: central characters satisfy ω_i ω_j = Σ_k a_ijk ω_k with
/// structure constants counted directly from the multiplication table.
#[test]
fn central_characters_satisfy_class_algebra() {
    for (name, g) in fixture_groups().into_iter().take(9) {
        let t = character_table(&g);
        let r = g.classes().len();
        let omega = |chi: &ComplexCharacter, k: usize| {
            chi.values[k].scale(&rat(g.classes()[k].len() as i64, chi.degree() as i64))
        };
        for i in 0..r {
            for j in 0..r {
                let mut a = vec![0i64; r];
                for &x in &g.classes()[i] {
                    for &y in &g.classes()[j] {
                        let z = g.mul(x, y);
                        if g.class_representative(g.class_of(z)) == z {
                            a[g.class_of(z)] += 1;
                        }
                    }
                }
                for chi in &t {
                    let lhs = &omega(chi, i) * &omega(chi, j);
                    let mut rhs = c(0);
                    for (k, &ak) in a.iter().enumerate() {
                        rhs = &rhs + &omega(chi, k).scale(&int(ak));
                    }
                    assert_eq!(lhs, rhs, "{name}: classes {i},{j}");
                }
            }
        }
    }
}

#[test]
fn explicit_representation_characters_appear_in_tables() {
    let cases = vec![
        (families::symmetric(3), families::standard_rep(3)),
        (families::symmetric(4), families::standard_rep(4)),
        (families::symmetric(5), families::standard_rep(5)),
        (families::cyclic(5), families::cyclic_rep(5)),
        (families::dihedral(5), families::dihedral_rep(5)),
        (families::dicyclic(3), families::dicyclic_rep(3)),
    ];
    for (g, rep) in cases {
        let chi = rep.character(&g).unwrap();
        assert!(character_table(&g).contains(&chi), "{}", rep.name);
    }
}

#[test]
fn component_idempotents_are_central_tau_invariant_and_complete() {
    for (name, g) in fixture_groups() {
        let d = rational_components(&g, character_table(&g)).unwrap();
        let mut total = GroupAlgebraElement::zero();
        let mut qdim = 0;
        for comp in d.all() {
            let e = &comp.idempotent;
            assert_eq!(e.mul(e, &g), *e, "{name}: e² = e");
            assert!(e.is_central(&g), "{name}: central");
            assert_eq!(e.tau(&g), *e, "{name}: τ(e) = e");
            for other in d.all() {
                if other.orbit != comp.orbit {
                    assert!(e.mul(&other.idempotent, &g).is_zero(), "{name}: orthogonal");
                }
            }
            assert_eq!(
                comp.q_dimension,
                comp.orbit.len() * comp.n * comp.n,
                "{name}: dim A = |orbit|·n²"
            );
            total = total.add(e);
            qdim += comp.q_dimension;
        }
        assert_eq!(total, GroupAlgebraElement::one(), "{name}: Σ e = 1");
        assert_eq!(qdim, g.order(), "{name}: Σ dim = |G|");
    }
}

#[test]
fn fs_indicator_matches_kind() {
    for (name, g) in fixture_groups() {
        let d = rational_components(&g, character_table(&g)).unwrap();
        for comp in d.all() {
            let fs = fs_indicator(&g, &d.characters[comp.orbit[0]]).unwrap();
            assert_eq!(fs, comp.fs_indicator);
            assert_eq!(fs != 0, comp.stabilizer_contains_minus_one(), "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tau_is_an_involutive_anti_automorphism(
        a in prop::collection::vec((0usize..24, -5i64..6), 0..6),
        b in prop::collection::vec((0usize..24, -5i64..6), 0..6),
    ) {
        let g = families::symmetric(4);
        let x = GroupAlgebraElement::from_terms(a.into_iter().map(|(h, c)| (h, int(c))));
        let y = GroupAlgebraElement::from_terms(b.into_iter().map(|(h, c)| (h, int(c))));
        prop_assert_eq!(x.tau(&g).tau(&g), x.clone());
        prop_assert_eq!(x.mul(&y, &g).tau(&g), y.tau(&g).mul(&x.tau(&g), &g));
        for (h, coeff) in x.tau(&g).terms() {
            prop_assert_eq!(coeff.clone(), x.coefficient(g.inv(h)));
        }
    }
}
