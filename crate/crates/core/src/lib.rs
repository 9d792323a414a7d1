//! Exact structure-constant toolkit for finite-dimensional Leibniz algebras.
//!
//! Algebras are tables of rational structure constants `γ_ij^k` with
//! `[e_i, e_j] = Σ_k γ_ij^k e_k`, indexed from 1. All arithmetic is exact.
//!
//! ```
//! use leibniz::catalog::make_m1;
//! use leibniz::derivation::cohomology_dims;
//!
//! let a = make_m1(7, 4).unwrap();
//! assert!(a.is_leibniz());
//! let dims = cohomology_dims(&a).unwrap();
//! assert_eq!(dims.dim_der, 7);
//! assert_eq!(dims.h1 + dims.dim_inn, dims.dim_der);
//! ```

pub mod algebra;
pub mod audit;
pub mod catalog;
pub mod derivation;
pub mod document;
pub mod error;
pub mod gradation;
pub mod linalg;
pub mod linear_map;
pub mod scalar;
pub mod structure;
pub mod subspace;

pub use algebra::{Algebra, LeibnizViolation};
pub use catalog::{Family, FamilyId};
pub use error::{Error, Result};
pub use gradation::WeightVector;
pub use linear_map::LinearMap;
pub use scalar::Scalar;
pub use subspace::Subspace;

/// Guide chapters, compiled here so their snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/gradations.md")]
    mod gradations {}
    #[doc = include_str!("../../../book/src/derivations.md")]
    mod derivations {}
    #[doc = include_str!("../../../book/src/audit.md")]
    mod audit {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
