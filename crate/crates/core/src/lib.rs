//! Numerical laboratory for the value distribution of `log|ζ(σ + it)|`.
//!
//! The crate builds prime sums, truncated exponentials and constrained
//! mollifiers, together with a certified zeta evaluator, adaptive quadrature
//! and the statistics used to check moment and distribution identities at
//! desk-scale heights.
//!
//! Core numerics are generic over a [`Scalar`] (`f32` or `f64`); the
//! experiments run in double precision through the [`Real`] and [`Complex`]
//! aliases.

pub mod dirichlet;
pub mod error;
pub mod experiments;
pub mod numerics;
pub mod primes;
pub mod scalar;
pub mod statistics;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Working precision for all experiments.
pub type Real = f64;

/// Complex numbers at working precision.
pub type Complex = num_complex::Complex<Real>;

pub use dirichlet::{ParamSet, PrimeSumMode, PrimeSumSpec, SparseDirichletCoeffs};
pub use numerics::quadrature::QuadratureResult;
pub use numerics::zeta::ComplexPoint;
pub use primes::PrimeTable;

/// Version string echoed into every output header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
