use std::sync::Arc;

use super::automorphism::SurfacePresentation;
use super::word::Word;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomDomain {
    Surface { genus: usize },
    Free { rank: usize },
}

/// Surjection from a surface group or a free group onto a finite group.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub target: Arc<FiniteGroup>,
    pub domain: HomDomain,
    pub images: Vec<usize>,
}

impl GroupHom {
    pub fn surface(target: Arc<FiniteGroup>, genus: usize, images: Vec<usize>) -> Result<Self> {
        let pres = SurfacePresentation::new(genus)?;
        let hom = Self::build(target, HomDomain::Surface { genus }, images)?;
        if hom.eval(pres.relator()) != hom.target.identity() {
            return Err(Error::InvalidHomomorphism(
                "relator does not map to the identity".into(),
            ));
        }
        Ok(hom)
    }

    pub fn free(target: Arc<FiniteGroup>, rank: usize, images: Vec<usize>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Precondition("free group of rank 0".into()));
        }
        Self::build(target, HomDomain::Free { rank }, images)
    }

    fn build(target: Arc<FiniteGroup>, domain: HomDomain, images: Vec<usize>) -> Result<Self> {
        let n = match domain {
            HomDomain::Surface { genus } => 2 * genus,
            HomDomain::Free { rank } => rank,
        };
        if images.len() != n {
            return Err(Error::InvalidHomomorphism(format!(
                "expected {n} images, got {}",
                images.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&h| h >= target.order()) {
            return Err(Error::InvalidHomomorphism(format!("element index {bad} out of range")));
        }
        if !target.generates(&images) {
            return Err(Error::NotSurjective);
        }
        Ok(GroupHom {
            target,
            domain,
            images,
        })
    }

    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn genus(&self) -> Option<usize> {
        match self.domain {
            HomDomain::Surface { genus } => Some(genus),
            HomDomain::Free { .. } => None,
        }
    }

    pub fn eval(&self, w: &Word) -> usize {
        let g = &self.target;
        w.letters().iter().fold(g.identity(), |acc, &l| {
            let x = self.images[l.unsigned_abs() as usize - 1];
            g.mul(acc, if l > 0 { x } else { g.inv(x) })
        })
    }
}

/// The map φ: T_g → F_g with a_i ↦ x_i and b_i ↦ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HandlebodyMap {
    pub genus: usize,
}

pub fn handlebody_map(genus: usize) -> HandlebodyMap {
    HandlebodyMap { genus }
}

impl HandlebodyMap {
    /// Image of surface generator `l` (signed index) as a free-group word.
    pub fn letter_image(&self, l: i32) -> Word {
        let i = l.unsigned_abs() as i32;
        if i % 2 == 0 {
            Word::identity()
        } else {
            Word::generator(l.signum() * (i + 1) / 2)
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word::new(
            w.letters()
                .iter()
                .flat_map(|&l| self.letter_image(l).letters().to_vec())
                .collect(),
        )
    }

    /// p = p′ ∘ φ.
    pub fn pull_back(&self, pprime: &GroupHom) -> Result<GroupHom> {
        if pprime.domain != (HomDomain::Free { rank: self.genus }) {
            return Err(Error::Precondition("rank of p′ must equal the genus".into()));
        }
        let id = pprime.target.identity();
        let images = (0..self.genus)
            .flat_map(|i| [pprime.images[i], id])
            .collect();
        GroupHom::surface(pprime.target.clone(), self.genus, images)
    }
}

/// φ-redundant data: p = p′∘φ with p′(x₁) = 1, and the special curves a = a₁, b = b₁.
#[derive(Clone, Debug)]
pub struct RedundantSetup {
    pub p: GroupHom,
    pub pprime: GroupHom,
    pub a: Word,
    pub b: Word,
}

pub fn redundant_setup(genus: usize, target: Arc<FiniteGroup>, pprime_images: Vec<usize>) -> Result<RedundantSetup> {
    if pprime_images.first() != Some(&target.identity()) {
        return Err(Error::NotRedundant(
            "the first free generator must map to the identity".into(),
        ));
    }
    let pprime = GroupHom::free(target, genus, pprime_images)?;
    let p = handlebody_map(genus).pull_back(&pprime)?;
    Ok(RedundantSetup {
        p,
        pprime,
        a: Word::generator(SurfacePresentation::a(1)),
        b: Word::generator(SurfacePresentation::b(1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::families;

    #[test]
    fn handlebody_examples() {
        let phi = handlebody_map(2);
        assert_eq!(phi.apply(&Word::parse_surface("a2").unwrap()), Word::generator(2));
        assert!(phi.apply(&Word::parse_surface("b1").unwrap()).is_empty());
        let r = SurfacePresentation::new(2).unwrap();
        assert!(phi.apply(r.relator()).is_empty());
        assert_eq!(phi.apply(&Word::parse_surface("A1 b2 a2").unwrap()).letters(), &[-1, 2]);
    }

    #[test]
    fn redundant_z2() {
        let h = Arc::new(families::cyclic(2));
        let gen = h.generators()[0];
        let s = redundant_setup(2, h.clone(), vec![0, gen]).unwrap();
        assert_eq!(s.p.images, vec![0, 0, gen, 0]);
        assert_eq!(s.p.eval(&s.a), 0);
        assert_eq!(s.p.eval(&s.b), 0);
        assert!(matches!(redundant_setup(2, h.clone(), vec![0, 0]), Err(Error::NotSurjective)));
        assert!(matches!(redundant_setup(2, h, vec![gen, 0]), Err(Error::NotRedundant(_))));
    }

    #[test]
    fn redundant_sym3() {
        let h = Arc::new(families::symmetric(3));
        let t = h.index_of(&[1, 0, 2]).unwrap();
        let c = h.index_of(&[1, 2, 0]).unwrap();
        let s = redundant_setup(3, h, vec![0, t, c]).unwrap();
        assert_eq!(s.p.genus(), Some(3));
    }

    #[test]
    fn relator_must_vanish() {
        let h = Arc::new(families::symmetric(3));
        let t = h.index_of(&[1, 0, 2]).unwrap();
        let c = h.index_of(&[1, 2, 0]).unwrap();
        assert!(matches!(
            GroupHom::surface(h.clone(), 2, vec![t, c, 0, 0]),
            Err(Error::InvalidHomomorphism(_))
        ));
        assert!(GroupHom::surface(h, 2, vec![t, 0, c, 0]).is_ok());
    }
}
