//! Small covers used by the demo, the acceptance suite and the tests.

use std::sync::Arc;

use crate::error::Result;
use crate::groups::{families, FiniteGroup};
use crate::surface::{handlebody_map, redundant_setup, GroupHom, RedundantSetup};

/// A surface cover p = p′∘φ given by the images of the free generators.
#[derive(Clone, Debug)]
pub struct SurfaceFixture {
    pub name: &'static str,
    pub genus: usize,
    pub group: Arc<FiniteGroup>,
    pub pprime_images: Vec<usize>,
}

impl SurfaceFixture {
    pub fn pprime(&self) -> Result<GroupHom> {
        GroupHom::free(self.group.clone(), self.genus, self.pprime_images.clone())
    }

    pub fn hom(&self) -> Result<GroupHom> {
        handlebody_map(self.genus).pull_back(&self.pprime()?)
    }

    /// Whether x₁ maps to the identity.
    pub fn is_redundant(&self) -> bool {
        self.pprime_images[0] == self.group.identity()
    }

    pub fn redundant_setup(&self) -> Result<RedundantSetup> {
        redundant_setup(self.genus, self.group.clone(), self.pprime_images.clone())
    }
}

#[derive(Clone, Debug)]
pub struct RoseFixture {
    pub name: &'static str,
    pub group: Arc<FiniteGroup>,
    pub images: Vec<usize>,
}

impl RoseFixture {
    pub fn hom(&self) -> Result<GroupHom> {
        GroupHom::free(self.group.clone(), self.images.len(), self.images.clone())
    }
}

fn perm(g: &FiniteGroup, p: &[usize]) -> usize {
    g.index_of(p).expect("fixture permutation lies in the group")
}

/// The five surface covers (2, Z/2), (2, Sym 3), (3, Z/3), (3, Dih 8), (3, Sym 3).
pub fn surface_fixtures() -> Vec<SurfaceFixture> {
    let z2 = Arc::new(families::cyclic(2));
    let z3 = Arc::new(families::cyclic(3));
    let d8 = Arc::new(families::dihedral(4));
    let s3 = Arc::new(families::symmetric(3));
    let (t, c) = (perm(&s3, &[1, 0, 2]), perm(&s3, &[1, 2, 0]));
    let (r, s) = (d8.generators()[0], d8.generators()[1]);
    vec![
        SurfaceFixture {
            name: "g2-z2",
            genus: 2,
            pprime_images: vec![0, z2.generators()[0]],
            group: z2,
        },
        SurfaceFixture {
            name: "g2-sym3",
            genus: 2,
            pprime_images: vec![t, c],
            group: s3.clone(),
        },
        SurfaceFixture {
            name: "g3-z3",
            genus: 3,
            pprime_images: vec![0, z3.generators()[0], z3.generators()[0]],
            group: z3,
        },
        SurfaceFixture {
            name: "g3-dih8",
            genus: 3,
            pprime_images: vec![0, r, s],
            group: d8,
        },
        SurfaceFixture {
            name: "g3-sym3",
            genus: 3,
            pprime_images: vec![0, t, c],
            group: s3,
        },
    ]
}

/// Rose covers (2, Z/2), (3, Z/3), (4, Sym 3).
pub fn rose_fixtures() -> Vec<RoseFixture> {
    let z2 = Arc::new(families::cyclic(2));
    let z3 = Arc::new(families::cyclic(3));
    let s3 = Arc::new(families::symmetric(3));
    let (t, c) = (perm(&s3, &[1, 0, 2]), perm(&s3, &[1, 2, 0]));
    vec![
        RoseFixture {
            name: "r2-z2",
            images: vec![0, z2.generators()[0]],
            group: z2,
        },
        RoseFixture {
            name: "r3-z3",
            images: vec![z3.generators()[0], 0, 0],
            group: z3,
        },
        RoseFixture {
            name: "r4-sym3",
            images: vec![t, c, 0, 0],
            group: s3,
        },
    ]
}
