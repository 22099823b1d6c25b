//! Surface groups, free-group words, Fox calculus and Dehn twists.

mod automorphism;
mod fox;
mod hom;
mod word;

pub use automorphism::{
    builtin_twist, compose, twist, validate_automorphism, Curve, SurfaceAutomorphism,
    SurfacePresentation,
};
pub use fox::{fox_add, fox_derivative, fox_mul, fox_term, FoxSum};
pub use hom::{handlebody_map, redundant_setup, GroupHom, HandlebodyMap, HomDomain, RedundantSetup};
pub use word::Word;
