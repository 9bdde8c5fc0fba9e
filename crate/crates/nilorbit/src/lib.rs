//! Exact-arithmetic coadjoint orbit computations for nilpotent Lie algebras.
//!
//! The crate works with nilpotent Lie algebras given by rational structure
//! constants and keeps every computation exact: rationals everywhere, no
//! floating point. On top of the structural layer it provides
//!
//! - the group in exponential coordinates (truncated BCH, `Ad`, `Ad*`),
//! - coadjoint orbits: skew forms, polarizations, a deterministic orbit
//!   canonical form deciding orbit equality with an explicit conjugator,
//! - involutions and the orbit-theoretic classification of distinguished
//!   representations,
//! - restriction of scalars from a number field down to the rationals,
//! - a brute-force finite-field oracle: coadjoint orbits of the group over
//!   F_p, exact cyclotomic character tables, and distinction multiplicities.
//!
//! All linear algebra kernels are generic over an exact scalar field so the
//! same code runs over the rationals and over number fields.

pub mod acceptance;
pub mod catalog;
pub mod coadjoint;
pub mod error;
pub mod finite_model;
pub mod group_law;
pub mod involution;
pub mod lie_core;
pub mod linalg;
pub mod number_field;
pub mod res_scalars;
pub mod scalar;

pub use error::Error;
pub use scalar::{Rational, Scalar};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
