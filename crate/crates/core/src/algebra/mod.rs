//! Commutative algebras, Lie–Rinehart algebras, their morphisms and modules,
//! each with a validator that reports failures per axiom and basis instance.

mod action;
mod ambient;
mod comm;
mod lr;
mod module;
mod morphism;

pub use action::{apply_action, bracket_action, is_zero_action, validate_action};
pub use ambient::{check_well_defined, quotient_algebra, subalgebra, Ambient};
pub use comm::CommAlgebra;
pub use lr::LieRinehartAlgebra;
pub(crate) use module::{character_action, check_a_module};
pub use module::{LeftLRModule, RightLRModule};
pub use morphism::LRMorphism;
