use std::sync::OnceLock;

use coverhom_core::cover::{
    all_isotypic, are_orthogonal, equivariant_form, homology, intersection_number, isotropic_split, kernel_submodule,
    rose_cover_complex, special_vectors, surface_cover_complex, CoverChainComplex, CoverHomology, IsotypicModule,
};
use coverhom_core::exactalg::{int, is_integer, Field, QMatrix, Rational};
use coverhom_core::fixtures::{rose_fixtures, surface_fixtures, SurfaceFixture};
use coverhom_core::groups::{character_table, rational_components, Decomposition, GroupAlgebraElement};
use coverhom_core::surface::SurfacePresentation;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

struct Built {
    fixture: SurfaceFixture,
    cx: CoverChainComplex,
    hom: CoverHomology,
    decomposition: Decomposition,
    modules: Vec<IsotypicModule>,
}

fn built() -> &'static [Built] {
    static CELL: OnceLock<Vec<Built>> = OnceLock::new();
    CELL.get_or_init(|| {
        surface_fixtures()
            .into_iter()
            .map(|fixture| {
                let cx = surface_cover_complex(&fixture.hom().unwrap()).unwrap();
                let hom = homology(&cx).unwrap();
                let g = fixture.group.clone();
                let decomposition = rational_components(&g, character_table(&g)).unwrap();
                let modules = all_isotypic(&cx, &hom, &decomposition).unwrap();
                Built {
                    fixture,
                    cx,
                    hom,
                    decomposition,
                    modules,
                }
            })
            .collect()
    })
}

fn vec_add(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
}

fn integral(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let s = Rational::from_integer(l);
    v.iter().map(|x| x.mul(&s)).collect()
}

/// Signed edges of the boundary walk of the face at vertex `h`.
fn face_walk(cx: &CoverChainComplex, h: usize) -> Vec<(usize, i64)> {
    let genus = cx.genus().unwrap();
    let pres = SurfacePresentation::new(genus).unwrap();
    let g = cx.group();
    let images = cx.generator_images();
    let mut v = h;
    let mut out = Vec::new();
    for &l in pres.relator().letters() {
        let j = l.unsigned_abs() as usize - 1;
        if l > 0 {
            out.push((cx.edge_index(v, j), 1));
            v = g.mul(v, images[j]);
        } else {
            v = g.mul(v, g.inv(images[j]));
            out.push((cx.edge_index(v, j), -1));
        }
    }
    assert_eq!(v, h);
    out
}

/// Cup product of two 1-cocycles evaluated on the fundamental class.
///
/// Each face is barycentrically subdivided and vertices are ordered corner <
/// edge midpoint < face centre, which makes the subdivision an ordered
/// simplicial complex. A cocycle c extends by giving the half-edge from an
/// edge's tail to its midpoint the value c(e), the other half zero, and the
/// spoke from a boundary point x to the centre the value −F(x), where F is a
/// potential of c along the face boundary. Summing φ(x₀x₁)ψ(x₁x₂) over the two
/// triangles on edge k collapses to −G(m_k)·s_k·φ(e_k), with G the potential of
/// ψ at the midpoint.
fn cup(cx: &CoverChainComplex, phi: &[Rational], psi: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for h in 0..cx.group().order() {
        let mut corner = Rational::zero();
        for (e, s) in face_walk(cx, h) {
            let midpoint = if s > 0 { corner.add(&psi[e]) } else { corner.clone() };
            total = total.sub(&midpoint.mul(&phi[e]).mul(&int(s)));
            corner = corner.add(&psi[e].mul(&int(s)));
        }
    }
    total
}

/// Cup-product Gram matrix on the cocycle basis dual to the homology basis.
fn cup_gram(cx: &CoverChainComplex, hom: &CoverHomology) -> QMatrix {
    let cocycles = cx.boundary2().transpose().kernel_basis();
    let n = hom.dimension();
    let z = QMatrix::from_rows_with_cols(cocycles, cx.num_edges());
    let w = QMatrix::from_rows_with_cols(hom.basis().to_vec(), cx.num_edges());
    let pairing = z.mul(&w.transpose());
    let x = pairing.transpose().solve(&QMatrix::identity(n)).expect("cohomology is dual to homology");
    let psi = z.transpose().mul(&x);
    let cols: Vec<Vec<Rational>> = (0..n).map(|k| psi.column(k)).collect();
    QMatrix::from_fn(n, n, |i, j| cup(cx, &cols[i], &cols[j]))
}

#[test]
fn chain_complexes_and_dimensions() {
    for b in built() {
        let f = &b.fixture;
        let order = f.group.order();
        assert!(b.cx.boundary1().mul(b.cx.boundary2()).is_zero(), "{}", f.name);
        assert_eq!(b.cx.rank_profile(), (order, 2 * f.genus * order, order));
        assert_eq!(b.hom.dimension(), 2 + (2 * f.genus - 2) * order, "{}", f.name);
    }
    for f in rose_fixtures() {
        let cx = rose_cover_complex(&f.hom().unwrap()).unwrap();
        let n = f.images.len();
        let order = f.group.order();
        assert_eq!(homology(&cx).unwrap().dimension(), (n - 1) * order + 1, "{}", f.name);
    }
}

#[test]
fn intersection_pairing_matches_cup_product() {
    let mut sign = None;
    for b in built() {
        let j = b.hom.sp_pairing().unwrap();
        let c = cup_gram(&b.cx, &b.hom);
        let prod = j.mul(&c);
        let s = prod.get(0, 0).clone();
        assert!(s == int(1) || s == int(-1), "{}", b.fixture.name);
        assert_eq!(prod, QMatrix::identity(b.hom.dimension()).scale(&s), "{}", b.fixture.name);
        assert_eq!(*sign.get_or_insert(s.clone()), s, "global sign changed at {}", b.fixture.name);
    }
}

#[test]
fn symplectic_form_identities() {
    for b in built() {
        let j = b.hom.sp_pairing().unwrap();
        let n = b.hom.dimension();
        assert_eq!(j.transpose(), j.scale(&int(-1)), "{}", b.fixture.name);
        assert_eq!(j.rank(), n);
        let g = &b.fixture.group;
        for x in 0..g.order() {
            let a = b.hom.h_action(x);
            assert_eq!(a.transpose().mul(j).mul(a), *j);
            for y in 0..g.order() {
                assert_eq!(a.mul(b.hom.h_action(y)), *b.hom.h_action(g.mul(x, y)));
            }
        }
    }
}

#[test]
fn pairing_is_integral_and_homology_invariant() {
    for b in built() {
        let cycles: Vec<Vec<Rational>> = b.cx.boundary1().kernel_basis().iter().map(|v| integral(v)).collect();
        let d2 = b.cx.boundary2();
        for (i, u) in cycles.iter().enumerate().step_by(3) {
            for v in cycles.iter().skip(i).step_by(5) {
                let x = intersection_number(&b.cx, u, v).unwrap();
                assert!(is_integer(&x), "{}", b.fixture.name);
                let shifted = vec_add(u, &d2.column(i % d2.cols()));
                assert_eq!(intersection_number(&b.cx, &shifted, v).unwrap(), x);
            }
        }
    }
}

#[test]
fn isotypic_modules() {
    for b in built() {
        let total: usize = b.modules.iter().map(|m| m.dimension()).sum();
        assert_eq!(total, b.hom.dimension(), "{}", b.fixture.name);
        let free = 2 * b.fixture.genus - 2;
        assert_eq!(b.modules[0].dimension(), 2 * b.fixture.genus);
        for (m, c) in b.modules[1..].iter().zip(&b.decomposition.components) {
            assert_eq!(m.dimension(), free * c.q_dimension);
        }
        for (i, x) in b.modules.iter().enumerate() {
            for a in b.hom.h_actions() {
                let moved: Vec<Vec<Rational>> = x.basis.iter().map(|v| a.mul_vec(v)).collect();
                assert!(moved.iter().all(|v| x.contains(v)));
            }
            for y in &b.modules[i + 1..] {
                assert!(are_orthogonal(&b.hom, x, y).unwrap());
            }
        }
    }
}

#[test]
fn kernel_submodule_is_lagrangian_with_expected_multiplicities() {
    for b in built() {
        let f = &b.fixture;
        let phat = kernel_submodule(&b.cx, &b.hom, &f.hom().unwrap(), &f.pprime().unwrap()).unwrap();
        let order = f.group.order();
        assert_eq!(phat.dimension(), (f.genus - 1) * order + 1);
        for x in &phat.basis {
            for y in &phat.basis {
                assert!(b.hom.form(x, y).unwrap().is_zero(), "{}", f.name);
            }
        }
        for (i, m) in b.modules.iter().enumerate() {
            let projected: Vec<Vec<Rational>> = phat.basis.iter().map(|v| m.projector.mul_vec(v)).collect();
            let dim = QMatrix::from_rows_with_cols(projected, b.hom.dimension()).rank();
            let expected = (f.genus - 1) * m.component.q_dimension + usize::from(i == 0);
            assert_eq!(dim, expected, "{} component {i}", f.name);
            assert_eq!(m.dimension() - dim, expected, "{} complement {i}", f.name);
        }
    }
}

#[test]
fn kernel_of_trivial_cover_is_spanned_by_b_curves() {
    let trivial = std::sync::Arc::new(coverhom_core::groups::FiniteGroup::trivial());
    let setup = coverhom_core::surface::redundant_setup(2, trivial, vec![0, 0]).unwrap();
    let cx = surface_cover_complex(&setup.p).unwrap();
    let hom = homology(&cx).unwrap();
    let phat = kernel_submodule(&cx, &hom, &setup.p, &setup.pprime).unwrap();
    let z = Rational::zero();
    let o = int(1);
    assert_eq!(
        phat.basis,
        vec![vec![z.clone(), o.clone(), z.clone(), z.clone()], vec![z.clone(), z.clone(), z, o]]
    );
}

#[test]
fn special_classes_pair_to_one() {
    for b in built().iter().filter(|b| b.fixture.is_redundant()) {
        let setup = b.fixture.redundant_setup().unwrap();
        let (a, _) = b.cx.chain_of_lift(&setup.a, 0);
        let (bb, _) = b.cx.chain_of_lift(&setup.b, 0);
        let x = b.hom.coordinates(&a).unwrap();
        let y = b.hom.coordinates(&bb).unwrap();
        assert_eq!(b.hom.form(&x, &y).unwrap(), GroupAlgebraElement::one(), "{}", b.fixture.name);
    }
}

#[test]
fn isotropic_split_postconditions() {
    for b in built().iter().filter(|b| b.fixture.is_redundant()) {
        let f = &b.fixture;
        let setup = f.redundant_setup().unwrap();
        let phat = kernel_submodule(&b.cx, &b.hom, &setup.p, &setup.pprime).unwrap();
        for m in &b.modules {
            let (alpha, beta) = special_vectors(&b.cx, &b.hom, &setup, m).unwrap();
            let split = isotropic_split(&b.hom, &f.group, m, &phat, &alpha, &beta).unwrap();
            let expected_rank = if m.is_trivial(&b.decomposition) { f.genus } else { f.genus - 1 };
            assert_eq!(split.rank(), expected_rank, "{}", f.name);
            assert_eq!(split.mprime[0], beta);
            assert_eq!(split.mdouble[0], alpha);
            split.verify(&b.hom).unwrap();
            let gram = split.a_gram(&b.hom).unwrap();
            let r = split.rank();
            for (i, row) in gram.iter().enumerate() {
                for (k, x) in row.iter().enumerate() {
                    let expected = if i + r == k {
                        m.component.idempotent.neg()
                    } else if k + r == i {
                        m.component.idempotent.clone()
                    } else {
                        GroupAlgebraElement::zero()
                    };
                    assert_eq!(*x, expected);
                }
            }
        }
    }
}

#[test]
fn isotropic_split_rejects_swapped_legs() {
    let b = &built()[0];
    let setup = b.fixture.redundant_setup().unwrap();
    let phat = kernel_submodule(&b.cx, &b.hom, &setup.p, &setup.pprime).unwrap();
    let m = &b.modules[1];
    let (alpha, beta) = special_vectors(&b.cx, &b.hom, &setup, m).unwrap();
    assert!(isotropic_split(&b.hom, &b.fixture.group, m, &phat, &beta, &alpha).is_err());
}

#[test]
fn equivariant_form_gram_is_skew_hermitian() {
    for b in built() {
        let form = equivariant_form(&b.hom, &b.fixture.group).unwrap();
        let n = b.hom.dimension();
        let id = QMatrix::from_fn(n, n, |u, v| form.gram[u][v].coefficient(0));
        assert_eq!(&id, b.hom.sp_pairing().unwrap());
    }
}

fn fixture_and_vectors() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, usize, usize)> {
    (0..surface_fixtures().len()).prop_flat_map(|i| {
        let b = &built()[i];
        let n = b.hom.dimension();
        let order = b.fixture.group.order();
        (
            Just(i),
            prop::collection::vec(-3i64..=3, n),
            prop::collection::vec(-3i64..=3, n),
            0..order,
            0..order,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn form_is_sesquilinear_and_skew_hermitian((i, x, y, r, s) in fixture_and_vectors()) {
        let b = &built()[i];
        let g = &b.fixture.group;
        let x: Vec<Rational> = x.into_iter().map(int).collect();
        let y: Vec<Rational> = y.into_iter().map(int).collect();
        let xy = b.hom.form(&x, &y).unwrap();
        let yx = b.hom.form(&y, &x).unwrap();
        prop_assert_eq!(&xy, &yx.tau(g).neg());
        let rx = b.hom.h_action(r).mul_vec(&x);
        let sy = b.hom.h_action(s).mul_vec(&y);
        let lhs = b.hom.form(&rx, &sy).unwrap();
        let rhs = GroupAlgebraElement::basis(r)
            .mul(&xy, g)
            .mul(&GroupAlgebraElement::basis(s).tau(g), g);
        prop_assert_eq!(lhs, rhs);
        if x.iter().any(|c| !c.is_zero()) {
            let j = b.hom.sp_pairing().unwrap();
            prop_assert!(!j.mul_vec(&x).iter().all(|c| c.is_zero()));
        }
        let xx = b.hom.form(&x, &x).unwrap();
        prop_assert!(xx.coefficient(0).is_zero());
    }
}
