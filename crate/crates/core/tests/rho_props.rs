use std::sync::OnceLock;

use coverhom_core::cover::{
    all_isotypic, homology, kernel_submodule, surface_cover_complex, CoverChainComplex, CoverHomology, IsotypicModule,
    KernelSubmodule,
};
use coverhom_core::exactalg::{int, rat, CyclotomicNumber, Field, QMatrix};
use coverhom_core::fixtures::{surface_fixtures, SurfaceFixture};
use coverhom_core::groups::{character_table, families, fs_indicator, rational_components, Decomposition};
use coverhom_core::rho::{
    adjoint, adjoint_fixed_dimension, commutant_basis, expected_adjoint_fixed_dimension, in_gamma, induced_action,
    invariant_bilinear_forms, norm_one_check, parabolic_check, project_action, scalar_matrix, stabilizer_twists,
    verify_unipotent_pair, EndoContext, EndoElement,
};
use coverhom_core::surface::{builtin_twist, compose, SurfaceAutomorphism, SurfacePresentation, Word};
use proptest::prelude::*;

struct Built {
    fixture: SurfaceFixture,
    pres: SurfacePresentation,
    cx: CoverChainComplex,
    hom: CoverHomology,
    decomposition: Decomposition,
    modules: Vec<IsotypicModule>,
    contexts: Vec<EndoContext>,
    phat: KernelSubmodule,
    twists: Vec<(String, SurfaceAutomorphism)>,
}

fn built() -> &'static [Built] {
    static CELL: OnceLock<Vec<Built>> = OnceLock::new();
    CELL.get_or_init(|| {
        surface_fixtures()
            .into_iter()
            .map(|fixture| {
                let p = fixture.hom().unwrap();
                let cx = surface_cover_complex(&p).unwrap();
                let hom = homology(&cx).unwrap();
                let g = fixture.group.clone();
                let decomposition = rational_components(&g, character_table(&g)).unwrap();
                let modules = all_isotypic(&cx, &hom, &decomposition).unwrap();
                let contexts = modules.iter().map(|m| EndoContext::new(m, &hom, &g).unwrap()).collect();
                let phat = kernel_submodule(&cx, &hom, &p, &fixture.pprime().unwrap()).unwrap();
                let mut twists = stabilizer_twists(&p).unwrap();
                let pres = SurfacePresentation::new(fixture.genus).unwrap();
                let inverses: Vec<_> = twists
                    .iter()
                    .map(|(name, _)| {
                        let inv = match name.split_once('^') {
                            Some((c, k)) => format!("{c}^-{k}"),
                            None => format!("{name}^-1"),
                        };
                        (inv.clone(), builtin_twist(&pres, &inv).unwrap())
                    })
                    .collect();
                twists.extend(inverses);
                Built {
                    fixture,
                    pres,
                    cx,
                    hom,
                    decomposition,
                    modules,
                    contexts,
                    phat,
                    twists,
                }
            })
            .collect()
    })
}

fn fixture(name: &str) -> &'static Built {
    built().iter().find(|b| b.fixture.name == name).unwrap()
}

#[test]
fn double_cover_reproduces_elementary_matrices() {
    let b = fixture("g2-z2");
    let setup = b.fixture.redundant_setup().unwrap();
    let report = verify_unipotent_pair(&b.cx, &b.hom, &setup, &b.modules[1], &b.phat).unwrap();
    assert!(report.passed());
    let unit = &b.modules[1].component.idempotent;
    assert_eq!(scalar_matrix(&report.tb, unit).unwrap(), QMatrix::from_i64(&[&[1, 1], &[0, 1]]));
    assert_eq!(scalar_matrix(&report.ta_inv, unit).unwrap(), QMatrix::from_i64(&[&[1, 0], &[1, 1]]));
}

#[test]
fn unipotent_pattern_on_every_component() {
    for name in ["g2-z2", "g3-z3", "g3-dih8", "g3-sym3"] {
        let b = fixture(name);
        let setup = b.fixture.redundant_setup().unwrap();
        for m in &b.modules {
            let report = verify_unipotent_pair(&b.cx, &b.hom, &setup, m, &b.phat).unwrap();
            assert!(report.passed(), "{name}");
        }
    }
}

#[test]
fn trivial_cover_gives_classical_transvections() {
    let trivial = std::sync::Arc::new(coverhom_core::groups::FiniteGroup::trivial());
    let setup = coverhom_core::surface::redundant_setup(3, trivial.clone(), vec![0, 0, 0]).unwrap();
    let cx = surface_cover_complex(&setup.p).unwrap();
    let hom = homology(&cx).unwrap();
    let d = rational_components(&trivial, character_table(&trivial)).unwrap();
    let modules = all_isotypic(&cx, &hom, &d).unwrap();
    let phat = kernel_submodule(&cx, &hom, &setup.p, &setup.pprime).unwrap();
    let report = verify_unipotent_pair(&cx, &hom, &setup, &modules[0], &phat).unwrap();
    assert!(report.passed());
    let unit = &modules[0].component.idempotent;
    let tb = scalar_matrix(&report.tb, unit).unwrap();
    let mut expected = QMatrix::identity(6);
    expected.set(0, 3, int(1));
    assert_eq!(tb, expected);
}

#[test]
fn handlebody_twists_are_parabolic() {
    for b in built() {
        for i in 1..=b.fixture.genus {
            let f = builtin_twist(&b.pres, &format!("Tb{i}")).unwrap();
            let rm = induced_action(&f, &b.cx, &b.hom).unwrap();
            assert!(parabolic_check(&rm, &b.phat), "{} Tb{i}", b.fixture.name);
        }
        let id = induced_action(&SurfaceAutomorphism::identity(&b.pres), &b.cx, &b.hom).unwrap();
        assert_eq!(id.matrix, QMatrix::identity(b.hom.dimension()));
        assert!(parabolic_check(&id, &b.phat));
    }
    let b = fixture("g2-z2");
    let ta = induced_action(&builtin_twist(&b.pres, "Ta1").unwrap(), &b.cx, &b.hom).unwrap();
    assert!(!parabolic_check(&ta, &b.phat));
}

#[test]
fn adjoint_fixed_space_has_the_opposite_type() {
    for name in ["g2-z2", "g3-sym3", "g3-z3", "g3-dih8"] {
        let b = fixture(name);
        for (m, ctx) in b.modules.iter().zip(&b.contexts) {
            let commutant = commutant_basis(&ctx.restricted_actions);
            let l = m.component.center_degree();
            assert_eq!(commutant.len(), l * ctx.degree * ctx.degree, "{name}");
            let fixed = adjoint_fixed_dimension(&commutant, m.sp_gram.as_ref().unwrap()).unwrap();
            assert_eq!(fixed, expected_adjoint_fixed_dimension(&m.component, ctx.degree), "{name}");
        }
    }
}

#[test]
fn reduced_norm_and_trace_of_scalars() {
    for b in built() {
        for ctx in &b.contexts {
            let d = ctx.dimension();
            let one = EndoElement::new(ctx, QMatrix::identity(d)).unwrap();
            assert_eq!(one.reduced_norm(ctx).unwrap(), CyclotomicNumber::from_int(1));
            assert_eq!(one.reduced_trace(ctx).unwrap(), CyclotomicNumber::from_int(ctx.degree as i64));
            let q = rat(-3, 2);
            let scalar = EndoElement::new(ctx, QMatrix::identity(d).scale(&q)).unwrap();
            let expected = (0..ctx.degree).fold(int(1), |acc, _| acc.mul(&q));
            assert_eq!(scalar.reduced_norm(ctx).unwrap(), CyclotomicNumber::from_rational(expected));
        }
    }
}

#[test]
fn non_linear_endomorphism_is_rejected() {
    let b = fixture("g2-z2");
    let ctx = &b.contexts[0];
    let mut m = QMatrix::zeros(ctx.dimension(), ctx.dimension());
    m.set(0, 1, int(1));
    let trivial_ok = EndoElement::new(ctx, m.clone()).is_ok();
    assert!(trivial_ok, "every matrix commutes with a trivial action");
    let b = fixture("g3-sym3");
    let k = b.modules.iter().position(|m| m.component.q_dimension == 4).unwrap();
    let ctx = &b.contexts[k];
    let mut m = QMatrix::zeros(ctx.dimension(), ctx.dimension());
    m.set(0, 1, int(1));
    assert!(EndoElement::new(ctx, m).is_err());
}

#[test]
fn invariant_forms_match_frobenius_schur() {
    let mut cases = Vec::new();
    for k in [3, 4, 5] {
        cases.push((families::symmetric(k), families::standard_rep(k), 1));
    }
    for n in [3, 4, 5, 7] {
        cases.push((families::cyclic(n), families::cyclic_rep(n), 0));
    }
    for n in [3, 4, 5] {
        cases.push((families::dihedral(n), families::dihedral_rep(n), 1));
    }
    for n in [2, 3] {
        cases.push((families::dicyclic(n), families::dicyclic_rep(n), -1));
    }
    for (g, rep, expected) in cases {
        let chi = rep.character(&g).unwrap();
        let fs = fs_indicator(&g, &chi).unwrap();
        assert_eq!(fs, expected, "{}", rep.name);
        assert_eq!(invariant_bilinear_forms(&rep.images).unwrap().indicator(), fs, "{}", rep.name);
    }
}

fn product(b: &Built, picks: &[usize]) -> SurfaceAutomorphism {
    picks.iter().fold(SurfaceAutomorphism::identity(&b.pres), |acc, &i| {
        compose(&b.pres, &acc, &b.twists[i % b.twists.len()].1).unwrap()
    })
}

fn picks() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn representation_certificates(i in 0usize..5, f in picks(), g in picks()) {
        let b = &built()[i];
        let f = product(b, &f);
        let g = product(b, &g);
        let fg = compose(&b.pres, &f, &g).unwrap();
        prop_assert!(in_gamma(&b.fixture.hom().unwrap(), &fg));
        let rf = induced_action(&f, &b.cx, &b.hom).unwrap();
        let rg = induced_action(&g, &b.cx, &b.hom).unwrap();
        let rfg = induced_action(&fg, &b.cx, &b.hom).unwrap();
        for r in [&rf, &rg, &rfg] {
            prop_assert!(r.certifications.all());
        }
        prop_assert_eq!(&rfg.matrix, &rf.matrix.mul(&rg.matrix));
        for (m, ctx) in b.modules.iter().zip(&b.contexts) {
            let pf = project_action(&rf, m).unwrap();
            let pg = project_action(&rg, m).unwrap();
            let pfg = project_action(&rfg, m).unwrap();
            prop_assert_eq!(&pfg, &pf.mul(&pg));
            let gram = m.sp_gram.as_ref().unwrap();
            prop_assert_eq!(adjoint(&pf, gram).unwrap().mul(&pf), QMatrix::identity(m.dimension()));
            let ef = EndoElement::new(ctx, pf).unwrap();
            let eg = EndoElement::new(ctx, pg).unwrap();
            let efg = EndoElement::new(ctx, pfg).unwrap();
            let nf = ef.reduced_norm(ctx).unwrap();
            let ng = eg.reduced_norm(ctx).unwrap();
            prop_assert_eq!(efg.reduced_norm(ctx).unwrap(), &nf * &ng);
            let sum = EndoElement::new(ctx, ef.matrix.add(&eg.matrix)).unwrap();
            prop_assert_eq!(
                sum.reduced_trace(ctx).unwrap(),
                &ef.reduced_trace(ctx).unwrap() + &eg.reduced_trace(ctx).unwrap()
            );
            for check in norm_one_check(ctx, &[ef, eg, efg]).unwrap() {
                prop_assert!(check.passed(), "{:?}", check);
            }
        }
    }

    #[test]
    fn inner_automorphisms_act_by_deck_transformations(
        i in 0usize..5,
        letters in prop::collection::vec((1i32..=6, any::<bool>()), 0..6),
    ) {
        let b = &built()[i];
        let rank = 2 * b.fixture.genus as i32;
        let t = Word::new(letters.into_iter().map(|(l, s)| {
            let l = (l - 1) % rank + 1;
            if s { l } else { -l }
        }).collect());
        let p = b.fixture.hom().unwrap();
        let f = SurfaceAutomorphism::inner(&b.pres, &t).unwrap();
        let pt = p.eval(&t);
        let central = b.fixture.group.is_central(pt);
        prop_assert_eq!(in_gamma(&p, &f), central);
        if central {
            let rm = induced_action(&f, &b.cx, &b.hom).unwrap();
            prop_assert_eq!(&rm.matrix, b.hom.h_action(pt));
        }
    }
}

#[test]
fn decomposition_has_trivial_first() {
    for b in built() {
        assert!(b.modules[0].is_trivial(&b.decomposition));
    }
}
