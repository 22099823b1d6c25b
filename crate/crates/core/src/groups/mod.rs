//! Finite permutation groups, characters and the rational group algebra.

mod algebra;
mod character;
mod components;
pub mod families;
mod perm;

pub use algebra::GroupAlgebraElement;
pub use character::{character_table, dixon_prime, fs_indicator, inner_product, value_conductor, ComplexCharacter};
pub use components::{
    rational_components, Decomposition, InvolutionType, Kind, RationalComponent, TargetLabel,
};
pub use perm::{FiniteGroup, DEFAULT_SIZE_BOUND};
