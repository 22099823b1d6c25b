use super::action::induced_action;
use crate::cover::{
    isotropic_split, special_vectors, AMatrix, CoverChainComplex, CoverHomology, IsotropicSplit, IsotypicModule,
    KernelSubmodule,
};
use crate::error::Result;
use crate::exactalg::{Field, QMatrix};
use crate::groups::GroupAlgebraElement;
use crate::surface::{twist, Curve, RedundantSetup, SurfacePresentation};

/// Images of T_b and T_a⁻¹ over A in the basis (m′, m″).
#[derive(Clone, Debug)]
pub struct UnipotentReport {
    pub split: IsotropicSplit,
    pub tb: AMatrix,
    pub ta_inv: AMatrix,
    pub tb_matches: bool,
    pub ta_inv_matches: bool,
}

impl UnipotentReport {
    pub fn passed(&self) -> bool {
        self.tb_matches && self.ta_inv_matches
    }
}

/// Checks that T_b acts as I + e·E(m′₁, m″₁) and T_a⁻¹ as I + e·E(m″₁, m′₁)
/// with columns holding the images of basis vectors.
pub fn verify_unipotent_pair(
    cx: &CoverChainComplex,
    hom: &CoverHomology,
    setup: &RedundantSetup,
    module: &IsotypicModule,
    phat: &KernelSubmodule,
) -> Result<UnipotentReport> {
    let genus = setup.p.genus().unwrap_or(0);
    let pres = SurfacePresentation::new(genus)?;
    let (alpha, beta) = special_vectors(cx, hom, setup, module)?;
    let split = isotropic_split(hom, cx.group(), module, phat, &alpha, &beta)?;
    let tb = induced_action(&twist(&pres, Curve::B(1), 1)?, cx, hom)?;
    let ta_inv = induced_action(&twist(&pres, Curve::A(1), -1)?, cx, hom)?;
    let tb = split.a_matrix(hom, &tb.matrix)?;
    let ta_inv = split.a_matrix(hom, &ta_inv.matrix)?;
    Ok(UnipotentReport {
        tb_matches: tb == split.elementary(true),
        ta_inv_matches: ta_inv == split.elementary(false),
        split,
        tb,
        ta_inv,
    })
}

/// Reads an A-matrix as a rational matrix when every entry is a rational
/// multiple of the unit, as happens when A ≅ Q.
pub fn scalar_matrix(a: &AMatrix, unit: &GroupAlgebraElement) -> Option<QMatrix> {
    let (h, u) = unit.terms().next()?;
    let u = u.clone();
    let rows = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let q = x.coefficient(h).div(&u)?;
                    (unit.scale(&q) == *x).then_some(q)
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some(QMatrix::from_rows(rows))
}
