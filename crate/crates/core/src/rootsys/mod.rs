//! Root data of the classical types, the compact form over the Chevalley
//! basis, unitary frames of `ℂⁿ`, and the two constructions of a maximal
//! torus orthogonal to a given one.

mod compact;
mod frames;
mod presentation;
mod torus;

pub(crate) use torus::require_su;

pub use compact::{compact_form_from_roots, BasisLabel, CompactForm, JACOBI_TOL};
pub use frames::{
    fourier_frame, frame_generator, is_unbiased_pair, trace_pairing_formula, unbiasedness_defect, UnitaryFrame,
    FRAME_TOL,
};
pub use presentation::{
    highest_root_is_fund_weight, CartanType, DefiningRep, RootSystemPresentation, StructureConstant,
};
pub use torus::{
    conjugate_into_torus, fourier_orthogonal_torus, frame_torus, orthogonal_torus_for, orthogonal_torus_inductive,
    TorusBasis, TorusChecks,
};
