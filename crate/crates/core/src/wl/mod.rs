//! Two-dimensional Weisfeiler-Leman closure, fissions, and lockstep
//! stabilization of two relation lists.

mod closure;
pub(crate) mod engine;
mod iso;

pub use closure::{
    closure_of_matrix, coherent_closure, fission, fission_points, inv_of_group, Relation,
    RelationSet,
};
pub use iso::{simultaneous_stabilization, AlgebraicIsomorphism, Stabilization};
