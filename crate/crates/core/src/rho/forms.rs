use crate::error::{Error, Result};
use crate::exactalg::{CycloMatrix, CyclotomicNumber, Field, Matrix, QMatrix};
use crate::groups::{Kind, RationalComponent};

/// Symmetry type of the invariant bilinear forms of a representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormClass {
    Symmetric,
    Alternating,
    None,
}

impl FormClass {
    /// The Frobenius–Schur indicator the class corresponds to.
    pub fn indicator(self) -> i8 {
        match self {
            FormClass::Symmetric => 1,
            FormClass::Alternating => -1,
            FormClass::None => 0,
        }
    }
}

/// Solves gᵀ·B·g = B for all given generator matrices.
pub fn invariant_bilinear_forms(generators: &[CycloMatrix]) -> Result<FormClass> {
    let d = generators.first().map_or(0, |g| g.rows());
    let n = d * d;
    let mut rows: Vec<Vec<CyclotomicNumber>> = Vec::with_capacity(n * generators.len());
    for g in generators {
        if g.rows() != d || !g.is_square() {
            return Err(Error::Dimension("generator matrices differ in size".into()));
        }
        // (gᵀBg)_{ij} − B_{ij} = Σ_{k,l} g_{ki}·g_{lj}·B_{kl} − B_{ij}
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![CyclotomicNumber::zero(); n];
                for k in 0..d {
                    for l in 0..d {
                        row[k * d + l].add_mul(g.get(k, i), g.get(l, j));
                    }
                }
                row[i * d + j] = row[i * d + j].sub(&CyclotomicNumber::one());
                rows.push(row);
            }
        }
    }
    let kernel = Matrix::from_rows_with_cols(rows, n).kernel_basis();
    match kernel.len() {
        0 => Ok(FormClass::None),
        1 => {
            let b = Matrix::from_fn(d, d, |i, j| kernel[0][i * d + j].clone());
            if b.determinant().is_zero() {
                return Err(Error::Convention("invariant form is degenerate".into()));
            }
            if b.transpose() == b {
                Ok(FormClass::Symmetric)
            } else if b.transpose() == b.neg() {
                Ok(FormClass::Alternating)
            } else {
                Err(Error::Convention("invariant form is neither symmetric nor alternating".into()))
            }
        }
        k => Err(Error::Reducible(k)),
    }
}

/// Basis of the matrices commuting with all of `actions`.
pub fn commutant_basis(actions: &[QMatrix]) -> Vec<QMatrix> {
    let d = actions.first().map_or(0, |a| a.rows());
    let n = d * d;
    let mut rows = Vec::with_capacity(n * actions.len());
    for a in actions {
        // (CA − AC)_{ij} = Σ_k C_{ik}A_{kj} − A_{ik}C_{kj}
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![crate::exactalg::Rational::zero(); n];
                for k in 0..d {
                    row[i * d + k].add_assign(a.get(k, j));
                    row[k * d + j] = row[k * d + j].sub(a.get(i, k));
                }
                rows.push(row);
            }
        }
    }
    QMatrix::from_rows_with_cols(rows, n)
        .kernel_basis()
        .into_iter()
        .map(|v| QMatrix::from_fn(d, d, |i, j| v[i * d + j].clone()))
        .collect()
}

/// Dimension of the σ-fixed part of the commutant, σ(C) = F⁻¹·Cᵀ·F.
pub fn adjoint_fixed_dimension(commutant: &[QMatrix], gram: &QMatrix) -> Result<usize> {
    let finv = gram.inverse()?;
    let d = gram.rows();
    let flat = |m: &QMatrix| -> Vec<_> { (0..d * d).map(|k| m.get(k / d, k % d).clone()).collect() };
    let basis: Vec<Vec<_>> = commutant.iter().map(flat).collect();
    let bm = QMatrix::from_columns(&basis, d * d);
    let images: Vec<Vec<_>> = commutant
        .iter()
        .map(|c| flat(&finv.mul(&c.transpose()).mul(gram)))
        .collect();
    let sigma = bm
        .solve(&QMatrix::from_columns(&images, d * d))
        .ok_or_else(|| Error::Convention("adjoint leaves the commutant".into()))?;
    let k = commutant.len();
    Ok(k - sigma.sub(&QMatrix::identity(k)).rank())
}

/// Expected σ-fixed dimension for End_A(M) of degree `degree` over its
/// center: the adjoint involution has the type opposite to τ on A.
pub fn expected_adjoint_fixed_dimension(comp: &RationalComponent, degree: usize) -> usize {
    let l = comp.center_degree();
    match (comp.kind, comp.fs_indicator) {
        (Kind::Second, _) => l * degree * degree / 2,
        (Kind::First, 1) => l * degree * (degree - 1) / 2,
        _ => l * degree * (degree + 1) / 2,
    }
}
