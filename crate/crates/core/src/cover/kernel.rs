use super::complex::{rose_cover_complex, CoverChainComplex};
use super::homology::{homology, CoverHomology};
use crate::error::{Error, Result};
use crate::exactalg::{Field, QMatrix, Rational};
use crate::surface::{handlebody_map, GroupHom};

/// Kernel of H₁(surface cover) → H₁(handlebody cover).
#[derive(Clone, Debug)]
pub struct KernelSubmodule {
    /// Rows are H₁ coordinate vectors.
    pub basis: Vec<Vec<Rational>>,
    pub rose_dimension: usize,
}

impl KernelSubmodule {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self, ambient: usize) -> QMatrix {
        QMatrix::from_rows_with_cols(self.basis.clone(), ambient)
    }

    /// Whether `m` maps the subspace into itself.
    pub fn is_preserved_by(&self, m: &QMatrix) -> bool {
        let b = self.matrix(m.rows());
        let image = m.mul(&b.transpose()).transpose();
        b.vstack(&image).rank() == b.rank()
    }
}

pub fn kernel_submodule(
    cx: &CoverChainComplex,
    hom: &CoverHomology,
    p: &GroupHom,
    pprime: &GroupHom,
) -> Result<KernelSubmodule> {
    let genus = cx
        .genus()
        .ok_or_else(|| Error::Precondition("kernel submodule needs a surface cover".into()))?;
    let expected = handlebody_map(genus).pull_back(pprime)?;
    if expected.images != p.images || cx.generator_images() != p.images.as_slice() {
        return Err(Error::Precondition("p does not factor as p′∘φ".into()));
    }
    let rose = rose_cover_complex(pprime)?;
    let rose_hom = homology(&rose)?;
    let order = cx.group().order();
    let cols: Vec<Vec<Rational>> = hom
        .basis()
        .iter()
        .map(|z| {
            let mut image = vec![Rational::zero(); rose.num_edges()];
            for h in 0..order {
                for i in 0..genus {
                    let c = &z[cx.edge_index(h, 2 * i)];
                    if !c.is_zero() {
                        image[rose.edge_index(h, i)] = c.clone();
                    }
                }
            }
            rose_hom.coordinates(&image)
        })
        .collect::<Result<_>>()?;
    let map = QMatrix::from_columns(&cols, rose_hom.dimension());
    if map.rank() != rose_hom.dimension() {
        return Err(Error::Convention("handlebody map is not onto in homology".into()));
    }
    let kernel = map.kernel_basis();
    let expected_dim = (genus - 1) * order + 1;
    if kernel.len() != expected_dim {
        return Err(Error::Decomposition(format!(
            "kernel has dimension {} instead of {expected_dim}",
            kernel.len()
        )));
    }
    let basis = QMatrix::from_rows_with_cols(kernel, hom.dimension()).rref();
    let out = KernelSubmodule {
        basis: basis.reduced.row_vecs().into_iter().take(basis.rank).collect(),
        rose_dimension: rose_hom.dimension(),
    };
    let b = out.matrix(hom.dimension());
    for a in hom.h_actions() {
        if !out.is_preserved_by(a) {
            return Err(Error::Convention("kernel is not H-stable".into()));
        }
    }
    if let Some(j) = hom.sp_pairing() {
        if !b.mul(j).mul(&b.transpose()).is_zero() {
            return Err(Error::Convention("kernel is not isotropic".into()));
        }
    }
    Ok(out)
}
