use num_integer::Integer;

use crate::cover::{CoverHomology, IsotypicModule};
use crate::error::{Error, Result};
use crate::exactalg::{rat, CycloMatrix, CyclotomicNumber, Field, Polynomial, QMatrix};
use crate::groups::{FiniteGroup, RationalComponent};

/// Data shared by all endomorphisms of one isotypic module: the restricted
/// deck actions and the primitive central idempotent of the first character
/// of the orbit, as a matrix over Q(ζ).
#[derive(Clone, Debug)]
pub struct EndoContext {
    pub component: RationalComponent,
    pub restricted_actions: Vec<QMatrix>,
    generators: Vec<usize>,
    chi_projector: CycloMatrix,
    /// Degree of End_A(M) over its center.
    pub degree: usize,
}

impl EndoContext {
    pub fn new(module: &IsotypicModule, hom: &CoverHomology, group: &FiniteGroup) -> Result<Self> {
        let b = module.basis_matrix();
        let restricted_actions: Vec<QMatrix> = hom
            .h_actions()
            .iter()
            .map(|a| {
                b.solve(&a.mul(&b))
                    .ok_or_else(|| Error::Convention("deck action leaves the isotypic module".into()))
            })
            .collect::<Result<_>>()?;
        let comp = module.component.clone();
        let d = module.dimension();
        let mut projector = CycloMatrix::zeros(d, d);
        for (h, a) in restricted_actions.iter().enumerate() {
            let c = &comp.values[group.class_of(group.inv(h))];
            if c.is_zero() {
                continue;
            }
            projector = projector.add(&a.to_cyclotomic().scale(c));
        }
        let weight = rat(comp.n as i64, group.order() as i64);
        let chi_projector = projector.scale(&CyclotomicNumber::from_rational(weight));
        let degree = d / comp.q_dimension * comp.n;
        if chi_projector.rank() != comp.n * degree {
            return Err(Error::Decomposition("character projection has the wrong rank".into()));
        }
        Ok(EndoContext {
            component: comp,
            restricted_actions,
            generators: group.generators().to_vec(),
            chi_projector,
            degree,
        })
    }

    pub fn dimension(&self) -> usize {
        self.chi_projector.rows()
    }
}

/// An A-linear endomorphism of an isotypic module, as a Q-matrix in the
/// module basis.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoElement {
    pub matrix: QMatrix,
}

impl EndoElement {
    pub fn new(ctx: &EndoContext, matrix: QMatrix) -> Result<Self> {
        if matrix.rows() != ctx.dimension() || !matrix.is_square() {
            return Err(Error::Dimension("endomorphism size differs from the module".into()));
        }
        for &s in &ctx.generators {
            let a = &ctx.restricted_actions[s];
            if matrix.mul(a) != a.mul(&matrix) {
                return Err(Error::Precondition("matrix is not A-linear".into()));
            }
        }
        Ok(EndoElement { matrix })
    }

    pub fn mul(&self, other: &Self) -> Self {
        EndoElement {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    /// Reduced characteristic polynomial, through the first embedding of the
    /// center: the χ(1)-th root of the characteristic polynomial on e_χ·M.
    pub fn reduced_charpoly(&self, ctx: &EndoContext) -> Result<Polynomial<CyclotomicNumber>> {
        let d = ctx.dimension();
        let full = self.matrix.to_cyclotomic().mul(&ctx.chi_projector).charpoly();
        let shift = d - ctx.component.n * ctx.degree;
        if full.coeffs().iter().take(shift).any(|c| !c.is_zero()) {
            return Err(Error::Precondition("endomorphism does not preserve the character projection".into()));
        }
        let trimmed = Polynomial::new(full.coeffs()[shift..].to_vec());
        trimmed.nth_root(ctx.component.n)
    }

    pub fn reduced_norm(&self, ctx: &EndoContext) -> Result<CyclotomicNumber> {
        let f = self.reduced_charpoly(ctx)?;
        let c0 = f.coeff(0);
        Ok(if ctx.degree.is_multiple_of(2) { c0 } else { c0.neg() })
    }

    pub fn reduced_trace(&self, ctx: &EndoContext) -> Result<CyclotomicNumber> {
        let f = self.reduced_charpoly(ctx)?;
        Ok(f.coeff(ctx.degree - 1).neg())
    }
}

/// Whether a value is fixed by every unit in the component's center stabilizer.
pub fn lies_in_center(value: &CyclotomicNumber, comp: &RationalComponent) -> Result<bool> {
    for &k in &comp.center_stabilizer {
        if value.galois(k as i64)? != *value {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormCheck {
    pub nrd: CyclotomicNumber,
    pub in_center: bool,
    /// λ^m = 1 for m = lcm(2, conductor).
    pub root_of_unity: bool,
    /// τ(λ)·λ = 1, with τ acting on the center as complex conjugation.
    pub norm_one: bool,
}

impl NormCheck {
    pub fn passed(&self) -> bool {
        self.in_center && self.root_of_unity && self.norm_one
    }
}

pub fn norm_one_check(ctx: &EndoContext, elements: &[EndoElement]) -> Result<Vec<NormCheck>> {
    let m = 2u64.lcm(&(ctx.component.center_conductor as u64));
    let one = CyclotomicNumber::from_int(1);
    elements
        .iter()
        .map(|x| {
            let nrd = x.reduced_norm(ctx)?;
            Ok(NormCheck {
                in_center: lies_in_center(&nrd, &ctx.component)?,
                root_of_unity: nrd.pow(m) == one,
                norm_one: &nrd.conj() * &nrd == one,
                nrd,
            })
        })
        .collect()
}
