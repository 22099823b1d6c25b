use super::complex::CoverChainComplex;
use super::homology::CoverHomology;
use super::isotypic::IsotypicModule;
use super::kernel::KernelSubmodule;
use crate::error::{Error, Result};
use crate::exactalg::{int, rat, Field, QMatrix, Rational};
use crate::groups::{FiniteGroup, GroupAlgebraElement};
use crate::surface::RedundantSetup;

/// Square matrix with entries in the simple factor A = e·Q[H].
pub type AMatrix = Vec<Vec<GroupAlgebraElement>>;

/// Hyperbolic A-basis of an isotypic module: an isotropic leg inside P̂ and a
/// dual isotropic leg with ⟨m″_j, m′_k⟩ = δ_jk·e.
#[derive(Clone, Debug)]
pub struct IsotropicSplit {
    pub unit: GroupAlgebraElement,
    /// m′_1 = β, ..., m′_r as H₁ coordinate vectors.
    pub mprime: Vec<Vec<Rational>>,
    /// m″_1 = α, ..., m″_r.
    pub mdouble: Vec<Vec<Rational>>,
}

/// The projected special classes (α, β) of a redundant setup.
pub fn special_vectors(
    cx: &CoverChainComplex,
    hom: &CoverHomology,
    setup: &RedundantSetup,
    module: &IsotypicModule,
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let project = |w| -> Result<Vec<Rational>> {
        let (chain, end) = cx.chain_of_lift(w, 0);
        if end != 0 {
            return Err(Error::NotRedundant("special curve does not lift to a loop".into()));
        }
        Ok(module.projector.mul_vec(&hom.coordinates(&chain)?))
    };
    Ok((project(&setup.a)?, project(&setup.b)?))
}

fn orbit_span(hom: &CoverHomology, v: &[Rational]) -> Vec<Vec<Rational>> {
    hom.h_actions().iter().map(|a| a.mul_vec(v)).collect()
}

fn span_rank(rows: &[Vec<Rational>], n: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    QMatrix::from_rows_with_cols(rows.to_vec(), n).rank()
}

/// Deterministic candidate vectors: the given basis, then small integer
/// combinations of it.
fn candidates(basis: &[Vec<Rational>]) -> impl Iterator<Item = Vec<Rational>> + '_ {
    let n = basis.first().map_or(0, |b| b.len());
    let singles = basis.iter().cloned();
    let combos = (1..200i64).map(move |t| {
        let mut v = vec![Rational::zero(); n];
        for (i, b) in basis.iter().enumerate() {
            let c = int((i as i64 * 31 + t * 17 + i as i64 * t * 7) % 11 - 5);
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                x.add_assign(&c.mul(y));
            }
        }
        v
    });
    singles.chain(combos)
}

/// Greedily extends `chosen` to `count` A-free generators whose spans are
/// independent of each other and of `fixed`.
fn extend_free(
    hom: &CoverHomology,
    pool: &[Vec<Rational>],
    fixed: &[Vec<Rational>],
    mut chosen: Vec<Vec<Rational>>,
    count: usize,
    q_dim: usize,
) -> Result<Vec<Vec<Rational>>> {
    let n = hom.dimension();
    let mut span: Vec<Vec<Rational>> = fixed.to_vec();
    for v in &chosen {
        span.extend(orbit_span(hom, v));
    }
    let mut rank = span_rank(&span, n);
    if rank != fixed.len() + chosen.len() * q_dim {
        return Err(Error::Precondition("prescribed generators are not A-free".into()));
    }
    for v in candidates(pool) {
        if chosen.len() == count {
            break;
        }
        let mut trial = span.clone();
        trial.extend(orbit_span(hom, &v));
        let r = span_rank(&trial, n);
        if r == rank + q_dim {
            span = trial;
            rank = r;
            chosen.push(v);
        }
    }
    if chosen.len() != count {
        return Err(Error::Decomposition("could not find an A-free basis".into()));
    }
    Ok(chosen)
}

fn act(hom: &CoverHomology, r: &GroupAlgebraElement, v: &[Rational]) -> Vec<Rational> {
    hom.act(r, v)
}

fn axpy(acc: &mut [Rational], v: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(v) {
        a.add_assign(b);
    }
}

pub fn isotropic_split(
    hom: &CoverHomology,
    group: &FiniteGroup,
    module: &IsotypicModule,
    phat: &KernelSubmodule,
    alpha: &[Rational],
    beta: &[Rational],
) -> Result<IsotropicSplit> {
    let n = hom.dimension();
    let e = module.component.idempotent.clone();
    let q_dim = module.component.q_dimension;
    let j = hom
        .sp_pairing()
        .ok_or_else(|| Error::Precondition("isotropic split needs a surface cover".into()))?;

    let projected: Vec<Vec<Rational>> = phat.basis.iter().map(|v| module.projector.mul_vec(v)).collect();
    let r = QMatrix::from_rows_with_cols(projected, n).rref();
    let leg: Vec<Vec<Rational>> = r.reduced.row_vecs().into_iter().take(r.rank).collect();
    if 2 * leg.len() != module.dimension() || !leg.len().is_multiple_of(q_dim) {
        return Err(Error::Precondition("P̂ ∩ M is not of half dimension".into()));
    }
    let leg_m = QMatrix::from_rows_with_cols(leg.clone(), n);
    if !leg_m.mul(j).mul(&leg_m.transpose()).is_zero() {
        return Err(Error::Precondition("P̂ ∩ M is not isotropic".into()));
    }
    let rank = leg.len() / q_dim;
    if hom.form(alpha, beta)? != e {
        return Err(Error::Precondition("⟨α, β⟩ is not the component unit".into()));
    }
    if span_rank(&[leg.clone(), vec![beta.to_vec()]].concat(), n) != leg.len() {
        return Err(Error::Precondition("β does not lie in P̂".into()));
    }

    // Complement with α first, orthogonalized against β.
    let mut others = extend_free(hom, &module.basis, &leg, vec![alpha.to_vec()], rank, q_dim)?;
    for v in others.iter_mut().skip(1) {
        let x = hom.form(v, beta)?;
        let shift = act(hom, &x, alpha);
        for (a, b) in v.iter_mut().zip(shift) {
            *a = a.sub(&b);
        }
    }
    let comp = others;

    // Dual basis: m′_k ∈ P̂ ∩ M with ⟨n_j, m′_k⟩ = δ_jk·e, solved over Q.
    // ⟨c, m⟩ has h-coefficient cᵀ·J·A_h·m.
    let rows: Vec<Vec<Rational>> = comp
        .iter()
        .flat_map(|c| {
            let jt_c = j.transpose().mul_vec(c);
            hom.h_actions()
                .iter()
                .map(move |a| a.transpose().mul_vec(&jt_c))
                .collect::<Vec<_>>()
        })
        .collect();
    let lhs = QMatrix::from_rows_with_cols(rows, n).mul(&leg_m.transpose());
    let order = group.order();
    let mut mprime = Vec::with_capacity(rank);
    for k in 0..rank {
        let mut rhs = vec![Rational::zero(); rank * order];
        for (h, c) in e.terms() {
            rhs[k * order + h] = c.clone();
        }
        let coeffs = lhs
            .solve_vec(&rhs)
            .ok_or_else(|| Error::Decomposition("dual basis system is inconsistent".into()))?;
        mprime.push(leg_m.transpose().mul_vec(&coeffs));
    }
    if mprime[0] != beta {
        return Err(Error::Convention("first dual vector differs from β".into()));
    }

    // m″_j = n_j + Σ_{ℓ<j} ⟨n_j, n_ℓ⟩·m′_ℓ + ½⟨n_j, n_j⟩·m′_j.
    let half = rat(1, 2);
    let mut mdouble = Vec::with_capacity(rank);
    for (jx, nj) in comp.iter().enumerate() {
        let mut v = nj.clone();
        for (l, nl) in comp.iter().enumerate().take(jx + 1) {
            let mut c = hom.form(nj, nl)?;
            if l == jx {
                c = c.scale(&half);
            }
            if !c.is_zero() {
                axpy(&mut v, &act(hom, &c, &mprime[l]));
            }
        }
        mdouble.push(v);
    }

    let split = IsotropicSplit { unit: e, mprime, mdouble };
    split.verify(hom)?;
    if split.mdouble[0] != alpha {
        return Err(Error::Convention("first dual leg differs from α".into()));
    }
    Ok(split)
}

impl IsotropicSplit {
    pub fn rank(&self) -> usize {
        self.mprime.len()
    }

    /// Basis ordered m′_1..m′_r, m″_1..m″_r.
    pub fn ordered_basis(&self) -> Vec<Vec<Rational>> {
        self.mprime.iter().chain(&self.mdouble).cloned().collect()
    }

    /// Checks isotropy of both legs and the duality between them.
    pub fn verify(&self, hom: &CoverHomology) -> Result<()> {
        let r = self.rank();
        for a in 0..r {
            for b in 0..r {
                if !hom.form(&self.mprime[a], &self.mprime[b])?.is_zero() {
                    return Err(Error::Convention(format!("⟨m′_{a}, m′_{b}⟩ ≠ 0")));
                }
                if !hom.form(&self.mdouble[a], &self.mdouble[b])?.is_zero() {
                    return Err(Error::Convention(format!("⟨m″_{a}, m″_{b}⟩ ≠ 0")));
                }
                let expected = if a == b { self.unit.clone() } else { GroupAlgebraElement::zero() };
                if hom.form(&self.mdouble[a], &self.mprime[b])? != expected {
                    return Err(Error::Convention(format!("⟨m″_{a}, m′_{b}⟩ is not δ·e")));
                }
            }
        }
        Ok(())
    }

    /// Gram matrix over A in the ordered basis.
    pub fn a_gram(&self, hom: &CoverHomology) -> Result<AMatrix> {
        let basis = self.ordered_basis();
        basis
            .iter()
            .map(|u| basis.iter().map(|v| hom.form(u, v)).collect())
            .collect()
    }

    /// Left A-coefficients of `v` in the ordered basis.
    pub fn a_coordinates(&self, hom: &CoverHomology, v: &[Rational]) -> Result<Vec<GroupAlgebraElement>> {
        let mut out = Vec::with_capacity(2 * self.rank());
        for m in &self.mdouble {
            out.push(hom.form(v, m)?.neg());
        }
        for m in &self.mprime {
            out.push(hom.form(v, m)?);
        }
        let rebuilt = self.reconstruct(hom, &out);
        if rebuilt != v {
            return Err(Error::Precondition("vector does not lie in the isotypic module".into()));
        }
        Ok(out)
    }

    pub fn reconstruct(&self, hom: &CoverHomology, coeffs: &[GroupAlgebraElement]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); hom.dimension()];
        for (c, b) in coeffs.iter().zip(self.ordered_basis()) {
            if !c.is_zero() {
                axpy(&mut v, &act(hom, c, &b));
            }
        }
        v
    }

    /// Matrix over A of an H-equivariant map on H₁; column k holds the
    /// coefficients of the image of the k-th basis vector.
    pub fn a_matrix(&self, hom: &CoverHomology, m: &QMatrix) -> Result<AMatrix> {
        let columns: Vec<Vec<GroupAlgebraElement>> = self
            .ordered_basis()
            .iter()
            .map(|b| self.a_coordinates(hom, &m.mul_vec(b)))
            .collect::<Result<_>>()?;
        let size = columns.len();
        Ok((0..size)
            .map(|row| columns.iter().map(|c| c[row].clone()).collect())
            .collect())
    }

    /// Identity plus the unit in one off-diagonal corner: the expected image
    /// of T_b (`upper`) or of T_a⁻¹ (lower).
    pub fn elementary(&self, upper: bool) -> AMatrix {
        let size = 2 * self.rank();
        let mut m = a_identity(size, &self.unit);
        let (row, col) = if upper { (0, self.rank()) } else { (self.rank(), 0) };
        m[row][col] = self.unit.clone();
        m
    }
}

pub fn a_identity(size: usize, unit: &GroupAlgebraElement) -> AMatrix {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|k| if i == k { unit.clone() } else { GroupAlgebraElement::zero() })
                .collect()
        })
        .collect()
}

/// Matrix of S∘T from those of S and T. Coefficients multiply on the left, so
/// entries compose as (S∘T)_{lk} = Σ_j T_{jk}·S_{lj}.
pub fn a_compose(s: &AMatrix, t: &AMatrix, group: &FiniteGroup) -> AMatrix {
    let size = s.len();
    (0..size)
        .map(|l| {
            (0..size)
                .map(|k| {
                    (0..size).fold(GroupAlgebraElement::zero(), |acc, jx| {
                        acc.add(&t[jx][k].mul(&s[l][jx], group))
                    })
                })
                .collect()
        })
        .collect()
}

/// Whether an A-matrix preserves the Gram matrix F:
/// Σ_{m,n} C_{ml}·F_{mn}·τ(C_{nk}) = F_{lk}.
pub fn a_preserves_gram(c: &AMatrix, gram: &AMatrix, group: &FiniteGroup) -> bool {
    let size = c.len();
    (0..size).all(|l| {
        (0..size).all(|k| {
            let mut acc = GroupAlgebraElement::zero();
            for m in 0..size {
                if c[m][l].is_zero() {
                    continue;
                }
                for n in 0..size {
                    if gram[m][n].is_zero() || c[n][k].is_zero() {
                        continue;
                    }
                    let term = c[m][l].mul(&gram[m][n], group).mul(&c[n][k].tau(group), group);
                    acc = acc.add(&term);
                }
            }
            acc == gram[l][k]
        })
    })
}
