//! Finite covers of surfaces and roses: chain complexes, homology, forms and
//! the submodules used by the unipotent construction.

mod complex;
mod form;
mod homology;
mod isotropic;
mod isotypic;
mod kernel;
mod pairing;

pub use complex::{rose_cover_complex, surface_cover_complex, CoverChainComplex, CoverKind, LiftedPath};
pub use form::{equivariant_form, EquivariantForm};
pub use homology::{homology, CoverHomology};
pub use isotropic::{a_compose, a_identity, a_preserves_gram, isotropic_split, special_vectors, AMatrix, IsotropicSplit};
pub use isotypic::{all_isotypic, are_orthogonal, expected_dimension, isotypic_projection, IsotypicModule};
pub use kernel::{kernel_submodule, KernelSubmodule};
pub use pairing::{intersection_matrix, intersection_number, Rotation};
