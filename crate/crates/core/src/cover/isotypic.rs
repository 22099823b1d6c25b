use super::complex::{CoverChainComplex, CoverKind};
use super::homology::CoverHomology;
use crate::error::{Error, Result};
use crate::exactalg::{QMatrix, Rational};
use crate::groups::{Decomposition, RationalComponent};

/// The submodule e·H₁ for one rational component.
#[derive(Clone, Debug)]
pub struct IsotypicModule {
    pub component: RationalComponent,
    /// Rows are H₁ coordinate vectors.
    pub basis: Vec<Vec<Rational>>,
    /// Action of the idempotent on H₁.
    pub projector: QMatrix,
    /// Restricted intersection pairing, when the cover is a surface.
    pub sp_gram: Option<QMatrix>,
}

impl IsotypicModule {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// H₁-coordinate basis vectors as columns.
    pub fn basis_matrix(&self) -> QMatrix {
        let n = self.basis.first().map_or(0, |b| b.len());
        QMatrix::from_columns(&self.basis, n)
    }

    pub fn is_trivial(&self, decomposition: &Decomposition) -> bool {
        self.component.orbit == decomposition.trivial.orbit
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.projector.mul_vec(x) == x
    }

    /// Coordinates of a module vector in this module's basis.
    pub fn coordinates(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.basis_matrix()
            .solve_vec(x)
            .ok_or_else(|| Error::Precondition("vector does not lie in the isotypic module".into()))
    }
}

/// Expected dim_Q of the isotypic module: Q² ⊕ Q[H]^{2g−2} for surfaces and
/// Q ⊕ Q[H]^{n−1} for roses.
pub fn expected_dimension(cx: &CoverChainComplex, comp: &RationalComponent, trivial: bool) -> usize {
    let (free, fixed) = match cx.kind() {
        CoverKind::Surface { genus } => (2 * genus - 2, 2),
        CoverKind::Rose { rank } => (rank - 1, 1),
    };
    free * comp.q_dimension + if trivial { fixed } else { 0 }
}

pub fn isotypic_projection(
    cx: &CoverChainComplex,
    hom: &CoverHomology,
    comp: &RationalComponent,
    trivial: bool,
) -> Result<IsotypicModule> {
    let projector = hom.action_matrix(&comp.idempotent);
    if projector.mul(&projector) != projector {
        return Err(Error::Decomposition("idempotent acts non-idempotently".into()));
    }
    let r = projector.transpose().rref();
    let basis: Vec<Vec<Rational>> = r.reduced.row_vecs().into_iter().take(r.rank).collect();
    let expected = expected_dimension(cx, comp, trivial);
    if basis.len() != expected {
        return Err(Error::Decomposition(format!(
            "isotypic dimension {} differs from the expected {expected}",
            basis.len()
        )));
    }
    let sp_gram = hom.sp_pairing().map(|j| {
        let b = QMatrix::from_rows_with_cols(basis.clone(), hom.dimension());
        b.mul(j).mul(&b.transpose())
    });
    Ok(IsotypicModule {
        component: comp.clone(),
        basis,
        projector,
        sp_gram,
    })
}

/// Projections onto every component, trivial first.
pub fn all_isotypic(cx: &CoverChainComplex, hom: &CoverHomology, d: &Decomposition) -> Result<Vec<IsotypicModule>> {
    let mut out = vec![isotypic_projection(cx, hom, &d.trivial, true)?];
    for c in &d.components {
        out.push(isotypic_projection(cx, hom, c, false)?);
    }
    Ok(out)
}

/// Whether two modules are perpendicular under the intersection pairing, which
/// for H-stable subspaces is the same as under the equivariant form.
pub fn are_orthogonal(hom: &CoverHomology, a: &IsotypicModule, b: &IsotypicModule) -> Result<bool> {
    let j = hom
        .sp_pairing()
        .ok_or_else(|| Error::Precondition("orthogonality needs a surface cover".into()))?;
    let n = hom.dimension();
    let ma = QMatrix::from_rows_with_cols(a.basis.clone(), n);
    let mb = QMatrix::from_rows_with_cols(b.basis.clone(), n);
    Ok(ma.mul(j).mul(&mb.transpose()).is_zero())
}
