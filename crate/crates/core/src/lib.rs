//! Exact computation of homology representations of surface automorphisms
//! on finite regular covers, together with the group-ring bookkeeping
//! (characters, rational components, involutions) needed to classify them.

pub mod cover;
pub mod error;
pub mod exactalg;
pub mod fixtures;
pub mod groups;
pub mod rho;
pub mod surface;

pub use error::{Error, Result};
