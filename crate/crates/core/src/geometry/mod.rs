//! The geometric pipeline on a Lie algebra carrying a left-invariant metric
//! and almost complex structure. All vector fields are left-invariant, so
//! every tensor is determined by its constant components on the basis and
//! derivative terms of functions vanish throughout.

mod complex;
mod connection;
mod curvature;
mod lie;
mod pipeline;
pub mod samples;
mod structure;
mod transfer;

use crate::algebra::Poly;

/// Component vector of a left-invariant vector field.
pub type Vector = Vec<Poly>;

pub use complex::{associated_metric, AlmostComplexStructure};
pub use connection::{levi_civita, lower04, Connection};
pub use curvature::{curvature_symmetry_residuals, pi1, psi1, ricci_and_scalar, weyl, WeylConvention};
pub use lie::LieAlgebra;
pub use pipeline::{PairGeometry, SideGeometry};
pub use structure::{
    classify, classify_with, cyclic_sum, f_prop_residuals, f_tensor, lie_form, nabla_j, square_norm, w1_rhs,
    with_j_on_slot, ClassFlags, ClassifierConfig,
};
pub use transfer::{
    connection_difference, curvature_transfer_rhs, difference_identity_residual, difference_identity_rhs,
    ftilde_general_rhs, ftilde_w3_rhs, invariants_s_p, nablatilde_rhs, q_tensor, tilde_connection,
    tilde_connection_paths, tilde_printed_bracket_formula, transfer_lowered, transfer_tensor, TildePaths,
};
