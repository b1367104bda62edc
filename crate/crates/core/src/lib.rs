//! Exact computer algebra on (1|1)-dimensional complex superspace.
//!
//! The crate models superanalytic maps `(z, θ) ↦ (f + θχ, ψ + θg)` whose
//! component functions are polynomials with coefficients in a finite
//! Grassmann algebra over the Gaussian rationals. All arithmetic is exact,
//! so every identity is checked as an equality, never up to a tolerance.
//!
//! Layers, bottom up:
//!
//! - [`scalar`] and [`grassmann`]: the coefficient algebra Λ_L.
//! - [`poly`], [`rational`], [`superfield`], [`supermatrix`]: component
//!   functions, their quotients, superfields with ∂, ∂_θ and D, and 2×2
//!   supermatrices with their Berezinian.
//! - [`transform`], [`reduction`], [`cocycle`]: transformations, their
//!   tangent matrices and reductions, the `(g, ψ)` parametrization and the
//!   cocycle relations.
//! - [`verify`] and [`wire`]: the randomized identity checker and the JSON
//!   wire formats.

pub mod cocycle;
pub mod error;
pub mod grassmann;
mod intpoly;
pub mod poly;
pub mod rational;
pub mod reduction;
pub mod scalar;
pub mod superfield;
pub mod supermatrix;
pub mod transform;
pub mod verify;
pub mod wire;

pub use error::{Error, Result};
pub use grassmann::{GrassmannNumber, Parity};
pub use poly::ComponentFunction;
pub use rational::RationalComponent;
pub use reduction::{ReducedPair, Spin};
pub use scalar::GaussianRational;
pub use superfield::{FieldParity, Superfield};
pub use supermatrix::{MatrixShape, TangentMatrix};
pub use transform::{BerClass, ClassifyMode, Projection, ReductionConditions, ReductionKind, SATransform, TptBerezinian};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/grassmann.md")]
    mod grassmann {}
    #[doc = include_str!("../../../book/src/superfields.md")]
    mod superfields {}
    #[doc = include_str!("../../../book/src/berezinian.md")]
    mod berezinian {}
    #[doc = include_str!("../../../book/src/transformations.md")]
    mod transformations {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
