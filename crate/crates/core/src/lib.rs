//! Exact computations with finite-dimensional Lie–Rinehart algebras given by
//! structure constants over the rationals.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`]: rational matrices, canonical subspaces, quotients.
//! * [`algebra`]: commutative algebras, Lie–Rinehart algebras, morphisms,
//!   modules and their validators.
//! * [`constructions`]: transformation and Atiyah algebras, semidirect and
//!   fiber products, pullbacks, and the builtin library.
//! * [`uce`]: the universal central extension functor `uce_A`.
//! * [`homology`]: Rinehart (co)homology in low degrees and the
//!   Chevalley–Eilenberg comparison.
//! * [`lifting`]: derivations, coverings, and lifting of automorphisms and
//!   derivations.
//! * [`nabtensor`]: actions, crossed modules and the non-abelian tensor
//!   product.
//!
//! ```
//! use lierinehart::constructions::builtin;
//! use lierinehart::uce::build_uce;
//!
//! let sl2 = builtin("sl2").unwrap();
//! assert!(sl2.validate().is_valid());
//! let u = build_uce(&sl2).unwrap();
//! assert_eq!(u.algebra.dim(), 3);
//! ```

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod exactlin;
pub mod homology;
pub mod lifting;
pub mod nabtensor;
pub mod report;
pub mod uce;

pub use algebra::{CommAlgebra, LRMorphism, LeftLRModule, LieRinehartAlgebra, RightLRModule};
pub use error::{Error, Result};
pub use exactlin::{Matrix, Scalar, Subspace};
pub use report::{Axiom, ValidationReport};

/// Runs the guide's snippets as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/algebras.md")]
    struct Algebras;
    #[doc = include_str!("../../../book/src/uce.md")]
    struct Uce;
    #[doc = include_str!("../../../book/src/homology.md")]
    struct Homology;
    #[doc = include_str!("../../../book/src/lifting.md")]
    struct Lifting;
    #[doc = include_str!("../../../book/src/tensor.md")]
    struct Tensor;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
