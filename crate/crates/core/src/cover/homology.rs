use super::complex::{CoverChainComplex, CoverKind};
use super::pairing::intersection_matrix;
use crate::error::{Error, Result};
use crate::exactalg::{Field, QMatrix, Rational};
use crate::groups::GroupAlgebraElement;

/// First rational homology of a cover with its deck-group action.
#[derive(Clone, Debug)]
pub struct CoverHomology {
    basis: Vec<Vec<Rational>>,
    basis_pivots: Vec<usize>,
    boundaries: Vec<Vec<Rational>>,
    boundary_pivots: Vec<usize>,
    h_action: Vec<QMatrix>,
    sp_pairing: Option<QMatrix>,
    /// J·A_h for every group element, used by the equivariant form.
    form_blocks: Vec<QMatrix>,
}

fn nonzero_rows(m: QMatrix, rank: usize) -> Vec<Vec<Rational>> {
    m.row_vecs().into_iter().take(rank).collect()
}

fn eliminate(v: &mut [Rational], rows: &[Vec<Rational>], pivots: &[usize]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let f = v[p].clone();
        for (x, r) in v.iter_mut().zip(row) {
            if !r.is_zero() {
                *x = x.sub(&f.mul(r));
            }
        }
    }
}

/// Cycles modulo boundaries, with canonical representatives.
pub fn homology(cx: &CoverChainComplex) -> Result<CoverHomology> {
    let cycles = cx.boundary1().kernel_basis();
    let b = cx.boundary2().transpose().rref();
    let boundary_pivots = b.pivots.clone();
    let boundaries = nonzero_rows(b.reduced, b.rank);
    let reduced: Vec<Vec<Rational>> = cycles
        .into_iter()
        .map(|mut z| {
            eliminate(&mut z, &boundaries, &boundary_pivots);
            z
        })
        .collect();
    let w = QMatrix::from_rows_with_cols(reduced, cx.num_edges()).rref();
    let mut hom = CoverHomology {
        basis_pivots: w.pivots.clone(),
        basis: nonzero_rows(w.reduced, w.rank),
        boundaries,
        boundary_pivots,
        h_action: Vec::new(),
        sp_pairing: None,
        form_blocks: Vec::new(),
    };
    let g = cx.group();
    let mut actions = Vec::with_capacity(g.order());
    for h in 0..g.order() {
        let cols: Vec<Vec<Rational>> = hom
            .basis
            .iter()
            .map(|v| hom.coordinates(&cx.act_on_chain(h, v)))
            .collect::<Result<_>>()?;
        actions.push(QMatrix::from_columns(&cols, hom.dimension()));
    }
    hom.h_action = actions;
    if let CoverKind::Surface { .. } = cx.kind() {
        let j = intersection_matrix(cx, &hom.basis)?;
        hom.form_blocks = hom.h_action.iter().map(|a| j.mul(a)).collect();
        hom.sp_pairing = Some(j);
    }
    Ok(hom)
}

impl CoverHomology {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Representative cycles, one per basis vector.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Coordinates of a cycle in the homology basis.
    pub fn coordinates(&self, chain: &[Rational]) -> Result<Vec<Rational>> {
        let mut z = chain.to_vec();
        eliminate(&mut z, &self.boundaries, &self.boundary_pivots);
        let coords: Vec<Rational> = self.basis_pivots.iter().map(|&p| z[p].clone()).collect();
        eliminate(&mut z, &self.basis, &self.basis_pivots);
        if z.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle);
        }
        Ok(coords)
    }

    /// Whether the chain is a boundary.
    pub fn is_boundary(&self, chain: &[Rational]) -> bool {
        let mut z = chain.to_vec();
        eliminate(&mut z, &self.boundaries, &self.boundary_pivots);
        z.iter().all(|x| x.is_zero())
    }

    /// Cycle representing the given coordinates.
    pub fn representative(&self, coords: &[Rational]) -> Vec<Rational> {
        let n = self.basis.first().map_or(0, |b| b.len());
        let mut out = vec![Rational::zero(); n];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(b) {
                x.add_assign(&c.mul(y));
            }
        }
        out
    }

    pub fn h_action(&self, h: usize) -> &QMatrix {
        &self.h_action[h]
    }

    pub fn h_actions(&self) -> &[QMatrix] {
        &self.h_action
    }

    pub fn sp_pairing(&self) -> Option<&QMatrix> {
        self.sp_pairing.as_ref()
    }

    fn j(&self) -> Result<&QMatrix> {
        self.sp_pairing
            .as_ref()
            .ok_or_else(|| Error::Precondition("no intersection pairing on a rose cover".into()))
    }

    /// ⟨x, y⟩_Sp on coordinate vectors.
    pub fn sp(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let jy = self.j()?.mul_vec(y);
        Ok(dot(x, &jy))
    }

    /// ⟨x, y⟩ = Σ_h ⟨x, h·y⟩_Sp h.
    pub fn form(&self, x: &[Rational], y: &[Rational]) -> Result<GroupAlgebraElement> {
        self.j()?;
        Ok(GroupAlgebraElement::from_terms(
            self.form_blocks
                .iter()
                .enumerate()
                .map(|(h, m)| (h, dot(x, &m.mul_vec(y)))),
        ))
    }

    /// Left action of a group-algebra element on a coordinate vector.
    pub fn act(&self, r: &GroupAlgebraElement, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); x.len()];
        for (h, c) in r.terms() {
            for (o, y) in out.iter_mut().zip(self.h_action[h].mul_vec(x)) {
                o.add_assign(&c.mul(&y));
            }
        }
        out
    }

    /// Matrix of the left action of a group-algebra element.
    pub fn action_matrix(&self, r: &GroupAlgebraElement) -> QMatrix {
        let n = self.dimension();
        let mut out = QMatrix::zeros(n, n);
        for (h, c) in r.terms() {
            out = out.add(&self.h_action[h].scale(c));
        }
        out
    }
}

pub(crate) fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            acc.add_assign(&a.mul(b));
        }
    }
    acc
}
