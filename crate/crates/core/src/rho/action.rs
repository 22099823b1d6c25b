use crate::cover::{CoverChainComplex, CoverHomology, IsotypicModule, KernelSubmodule};
use crate::error::{Error, Result};
use crate::exactalg::{int, QMatrix, Rational};
use crate::surface::{twist, Curve, GroupHom, SurfaceAutomorphism, SurfacePresentation};

/// Flags set only after the corresponding identity has been checked exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Certifications {
    /// Commutes with every deck transformation.
    pub equivariant: bool,
    /// Preserves J, hence the equivariant form.
    pub form_preserving: bool,
    /// Induced by an integral chain map and unimodular.
    pub integral_on_lattice: bool,
}

impl Certifications {
    pub fn all(&self) -> bool {
        self.equivariant && self.form_preserving && self.integral_on_lattice
    }
}

/// Action of a surface automorphism on H₁ of the cover.
#[derive(Clone, Debug)]
pub struct RhoMatrix {
    pub matrix: QMatrix,
    pub certifications: Certifications,
}

/// Indices of generators x with p(f(x)) ≠ p(x).
pub fn gamma_violations(p: &GroupHom, f: &SurfaceAutomorphism) -> Vec<usize> {
    f.images
        .iter()
        .enumerate()
        .filter(|(j, w)| p.eval(w) != p.images[*j])
        .map(|(j, _)| j)
        .collect()
}

/// Whether p∘f = p.
pub fn in_gamma(p: &GroupHom, f: &SurfaceAutomorphism) -> bool {
    f.images.len() == p.images.len() && gamma_violations(p, f).is_empty()
}

/// For every standard curve, the least positive power of its twist lying in
/// Γ, named like `Ta2^3`.
pub fn stabilizer_twists(p: &GroupHom) -> Result<Vec<(String, SurfaceAutomorphism)>> {
    let genus = p
        .genus()
        .ok_or_else(|| Error::Precondition("stabilizer twists need a surface group".into()))?;
    let pres = SurfacePresentation::new(genus)?;
    let curves = (1..=genus)
        .flat_map(|i| [Curve::A(i), Curve::B(i)])
        .chain((1..genus).map(Curve::C));
    let mut out = Vec::new();
    for curve in curves {
        let step = twist(&pres, curve, 1)?;
        let mut f = step.clone();
        for k in 1..=p.target.order() {
            if in_gamma(p, &f) {
                let name = if k == 1 { format!("T{curve}") } else { format!("T{curve}^{k}") };
                out.push((name, f));
                break;
            }
            f = crate::surface::compose(&pres, &step, &f)?;
        }
    }
    Ok(out)
}

/// Lifts f to the chain map sending the edge (h, x_j) to the lift of f(x_j)
/// starting at h, then reads off the induced map on homology.
pub fn induced_action(f: &SurfaceAutomorphism, cx: &CoverChainComplex, hom: &CoverHomology) -> Result<RhoMatrix> {
    if f.orientation_sign != 1 {
        return Err(Error::Precondition("automorphism reverses orientation".into()));
    }
    if cx.genus() != Some(f.genus) {
        return Err(Error::Precondition("automorphism and cover have different genus".into()));
    }
    let order = cx.group().order();
    let images = cx.generator_images();
    let mut violations = Vec::new();
    let mut edge_images = Vec::with_capacity(cx.num_edges());
    for e in 0..cx.num_edges() {
        let (h, j) = cx.edge_cell(e);
        let (chain, end) = cx.chain_of_lift(&f.images[j], h);
        if h == 0 && end != images[j] {
            violations.push(j);
        }
        edge_images.push(chain);
    }
    if !violations.is_empty() {
        return Err(Error::NotInStabilizer(violations));
    }
    let chain_map = QMatrix::from_columns(&edge_images, cx.num_edges());
    let d2 = cx.boundary2();
    for c in 0..order {
        if !hom.is_boundary(&chain_map.mul_vec(&d2.column(c))) {
            return Err(Error::Convention("lifted chain map does not preserve boundaries".into()));
        }
    }
    let columns: Vec<Vec<Rational>> = hom
        .basis()
        .iter()
        .map(|z| hom.coordinates(&chain_map.mul_vec(z)))
        .collect::<Result<_>>()?;
    let matrix = QMatrix::from_columns(&columns, hom.dimension());
    let certifications = certify(&matrix, hom, chain_map.is_integral());
    Ok(RhoMatrix { matrix, certifications })
}

fn certify(m: &QMatrix, hom: &CoverHomology, integral_chain_map: bool) -> Certifications {
    let equivariant = hom.h_actions().iter().all(|a| m.mul(a) == a.mul(m));
    let form_preserving = hom
        .sp_pairing()
        .is_some_and(|j| m.transpose().mul(j).mul(m) == *j);
    let det = m.determinant();
    let integral_on_lattice = integral_chain_map && (det == int(1) || det == int(-1));
    Certifications {
        equivariant,
        form_preserving,
        integral_on_lattice,
    }
}

/// Restriction of a certified action to an isotypic module, in that module's
/// basis. The restricted intersection form is re-checked.
pub fn project_action(rm: &RhoMatrix, module: &IsotypicModule) -> Result<QMatrix> {
    if !rm.certifications.equivariant {
        return Err(Error::Precondition("action is not certified equivariant".into()));
    }
    let b = module.basis_matrix();
    let y = b
        .solve(&rm.matrix.mul(&b))
        .ok_or_else(|| Error::Convention("action does not stabilize the isotypic module".into()))?;
    if let Some(g) = &module.sp_gram {
        if y.transpose().mul(g).mul(&y) != *g {
            return Err(Error::Convention("restricted action does not preserve the form".into()));
        }
    }
    Ok(y)
}

/// Whether the action maps P̂ into itself.
pub fn parabolic_check(rm: &RhoMatrix, phat: &KernelSubmodule) -> bool {
    phat.is_preserved_by(&rm.matrix)
}

/// σ(C) = F⁻¹·Cᵀ·F for the restricted Gram matrix F.
pub fn adjoint(c: &QMatrix, gram: &QMatrix) -> Result<QMatrix> {
    Ok(gram.inverse()?.mul(&c.transpose()).mul(gram))
}
