//! The representation of the stabilizer Γ of p on cover homology, with its
//! certificates, the unipotent and parabolic checks, reduced norms and the
//! invariant-form classification of explicit representations.

mod action;
mod forms;
mod norm;
mod unipotent;

pub use action::{
    adjoint, gamma_violations, in_gamma, induced_action, parabolic_check, project_action, stabilizer_twists, Certifications, RhoMatrix,
};
pub use forms::{
    adjoint_fixed_dimension, commutant_basis, expected_adjoint_fixed_dimension, invariant_bilinear_forms, FormClass,
};
pub use norm::{lies_in_center, norm_one_check, EndoContext, EndoElement, NormCheck};
pub use unipotent::{scalar_matrix, verify_unipotent_pair, UnipotentReport};
