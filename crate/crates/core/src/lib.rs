//! Exact computation of the stochastic branching matrices obtained by
//! restricting normalized symplectic and orthogonal characters, and more
//! generally multivariate Jacobi polynomials, together with the discrete
//! B-splines they generalize.
//!
//! Every quantity is an exact rational. The main entry point is
//! [`lambda::lambda_det`]; [`jacobi::lambda_oracle`] computes the same rows by
//! an independent linear solve.

pub mod error;
pub mod exact;
pub mod hypergeom;
pub mod jacobi;
pub mod lambda;
pub mod params;
pub mod rational_fn;
pub mod signature;
pub mod splines;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rat;
pub use params::{BasisCtx, JacobiParams, SeriesTag};
pub use signature::Signature;
