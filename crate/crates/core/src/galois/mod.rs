//! Comatrix corings, the canonical map and the Galois and comonadic-Galois conditions.

mod compare;
mod context;
mod equivalence;
mod instance;

pub use compare::{
    comonadic_context, coring_isomorphism_check, endomorphism_ring_comparison, galois_comonadic_agreement,
    galois_implies_comonadic, image_of_r, intermediate_instance, ComonadicContext,
};
pub use context::{adjunction_check, comatrix_coring, ComatrixContext, ComatrixCoring, Named};
pub use equivalence::{
    comodule_family, dual_basis, dual_basis_composite, dual_iso, equivalence_check, generator_map, left_dual_ring,
    local_units_check, tensor_comodule, unital_corollary_check, DualIso, LeftDual,
};
pub use instance::{
    can_naturality, canonical_map, comonadic_from_evaluations, coring_morphism_check, evaluation, evaluation_check,
    is_cokernel, is_comonadic_galois, preserves_cokernel, random_morphism, tensor_preserves_cokernel, CanM, EndRing,
    Evaluation, GaloisInstance, GaloisReport, Presentation, TestFamily,
};
