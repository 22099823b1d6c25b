use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{int, Field, QMatrix, Rational};
use crate::groups::FiniteGroup;
use crate::surface::{GroupHom, HomDomain, SurfacePresentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    Surface { genus: usize },
    Rose { rank: usize },
}

/// Cellular chain complex of the finite cover attached to a surjection onto H.
///
/// Cells are indexed by pairs (h, cell) flattened as `h·k + cell`; H acts on the
/// left, and the lift of generator j starting at vertex h ends at h·p(x_j).
#[derive(Clone, Debug)]
pub struct CoverChainComplex {
    group: Arc<FiniteGroup>,
    kind: CoverKind,
    images: Vec<usize>,
    boundary1: QMatrix,
    boundary2: QMatrix,
}

/// Signed edge list of a lifted path, plus its end vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPath {
    pub edges: Vec<(usize, i64)>,
    pub end: usize,
}

pub fn surface_cover_complex(p: &GroupHom) -> Result<CoverChainComplex> {
    let genus = match p.domain {
        HomDomain::Surface { genus } => genus,
        HomDomain::Free { .. } => {
            return Err(Error::InvalidHomomorphism("surface cover needs a surface-group map".into()))
        }
    };
    let pres = SurfacePresentation::new(genus)?;
    if p.eval(pres.relator()) != p.target.identity() {
        return Err(Error::InvalidHomomorphism("relator does not map to the identity".into()));
    }
    let mut cx = CoverChainComplex::skeleton(p, CoverKind::Surface { genus });
    let order = cx.group.order();
    let mut b2 = QMatrix::zeros(cx.num_edges(), order);
    for h in 0..order {
        let path = cx.lift(pres.relator(), h);
        debug_assert_eq!(path.end, h);
        for (e, s) in path.edges {
            let x = b2.get(e, h).add(&int(s));
            b2.set(e, h, x);
        }
    }
    cx.boundary2 = b2;
    if !cx.boundary1.mul(&cx.boundary2).is_zero() {
        return Err(Error::Convention("boundary of boundary is nonzero".into()));
    }
    Ok(cx)
}

pub fn rose_cover_complex(pprime: &GroupHom) -> Result<CoverChainComplex> {
    let rank = match pprime.domain {
        HomDomain::Free { rank } => rank,
        HomDomain::Surface { .. } => {
            return Err(Error::InvalidHomomorphism("rose cover needs a free-group map".into()))
        }
    };
    Ok(CoverChainComplex::skeleton(pprime, CoverKind::Rose { rank }))
}

impl CoverChainComplex {
    fn skeleton(p: &GroupHom, kind: CoverKind) -> Self {
        let group = p.target.clone();
        let k = p.images.len();
        let order = group.order();
        let mut b1 = QMatrix::zeros(order, k * order);
        for h in 0..order {
            for (j, &x) in p.images.iter().enumerate() {
                let e = h * k + j;
                let t = group.mul(h, x);
                if t != h {
                    b1.set(t, e, int(1));
                    b1.set(h, e, int(-1));
                }
            }
        }
        CoverChainComplex {
            group,
            kind,
            images: p.images.clone(),
            boundary1: b1,
            boundary2: QMatrix::zeros(k * order, 0),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn kind(&self) -> CoverKind {
        self.kind
    }

    pub fn genus(&self) -> Option<usize> {
        match self.kind {
            CoverKind::Surface { genus } => Some(genus),
            CoverKind::Rose { .. } => None,
        }
    }

    /// Number of base 1-cells.
    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.images
    }

    pub fn num_edges(&self) -> usize {
        self.images.len() * self.group.order()
    }

    /// (c₂, c₁, c₀).
    pub fn rank_profile(&self) -> (usize, usize, usize) {
        (self.boundary2.cols(), self.num_edges(), self.group.order())
    }

    pub fn boundary1(&self) -> &QMatrix {
        &self.boundary1
    }

    pub fn boundary2(&self) -> &QMatrix {
        &self.boundary2
    }

    pub fn edge_index(&self, vertex: usize, generator: usize) -> usize {
        vertex * self.images.len() + generator
    }

    /// (start vertex, generator index) of an edge.
    pub fn edge_cell(&self, edge: usize) -> (usize, usize) {
        (edge / self.images.len(), edge % self.images.len())
    }

    pub fn edge_end(&self, edge: usize) -> usize {
        let (h, j) = self.edge_cell(edge);
        self.group.mul(h, self.images[j])
    }

    /// Lift of a word over the base generators starting at `start`.
    pub fn lift(&self, w: &Word, start: usize) -> LiftedPath {
        let g = &self.group;
        let mut v = start;
        let mut edges = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let j = l.unsigned_abs() as usize - 1;
            let x = self.images[j];
            if l > 0 {
                edges.push((self.edge_index(v, j), 1));
                v = g.mul(v, x);
            } else {
                v = g.mul(v, g.inv(x));
                edges.push((self.edge_index(v, j), -1));
            }
        }
        LiftedPath { edges, end: v }
    }

    /// Lifted path as a dense 1-chain.
    pub fn chain_of_lift(&self, w: &Word, start: usize) -> (Vec<Rational>, usize) {
        let path = self.lift(w, start);
        let mut out = vec![Rational::zero(); self.num_edges()];
        for (e, s) in path.edges {
            out[e].add_assign(&int(s));
        }
        (out, path.end)
    }

    /// Left deck action of `h` on a 1-chain: (h′, j) ↦ (h·h′, j).
    pub fn act_on_chain(&self, h: usize, chain: &[Rational]) -> Vec<Rational> {
        let k = self.images.len();
        let mut out = vec![Rational::zero(); chain.len()];
        for (e, c) in chain.iter().enumerate() {
            if !c.is_zero() {
                let (v, j) = (e / k, e % k);
                out[self.group.mul(h, v) * k + j] = c.clone();
            }
        }
        out
    }

    pub fn is_cycle(&self, chain: &[Rational]) -> bool {
        self.boundary1.mul_vec(chain).iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::families;

    #[test]
    fn trivial_cover_profile() {
        let h = Arc::new(FiniteGroup::trivial());
        let p = GroupHom::surface(h, 2, vec![0; 4]).unwrap();
        let cx = surface_cover_complex(&p).unwrap();
        assert_eq!(cx.rank_profile(), (1, 4, 1));
        assert!(cx.boundary1().is_zero());
        assert!(cx.boundary2().is_zero());
    }

    #[test]
    fn double_cover_profile() {
        let h = Arc::new(families::cyclic(2));
        let g = h.generators()[0];
        let p = GroupHom::surface(h, 2, vec![0, 0, g, 0]).unwrap();
        let cx = surface_cover_complex(&p).unwrap();
        assert_eq!(cx.rank_profile(), (2, 8, 2));
        assert!(cx.boundary1().mul(cx.boundary2()).is_zero());
        for j in 0..cx.boundary1().cols() {
            let s = (0..2).fold(Rational::zero(), |acc, i| acc.add(cx.boundary1().get(i, j)));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn lift_of_inverse_letter() {
        let h = Arc::new(families::cyclic(3));
        let g = h.generators()[0];
        let p = GroupHom::free(h.clone(), 1, vec![g]).unwrap();
        let cx = rose_cover_complex(&p).unwrap();
        let path = cx.lift(&Word::generator(-1), 0);
        let back = h.inv(g);
        assert_eq!(path.end, back);
        assert_eq!(path.edges, vec![(cx.edge_index(back, 0), -1)]);
    }
}
