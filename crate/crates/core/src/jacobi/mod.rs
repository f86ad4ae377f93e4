//! Multivariate Jacobi polynomials, multiparameter Schur functions and the
//! branching oracle built from them.

mod multi;
mod oracle;
mod schur;
mod univariate;

pub use multi::multi_jacobi_eval;
pub use oracle::{
    binom_c, binomial_formula_residual, coherency_residual, lambda_oracle, lambda_oracle_from, shifted_schur,
};
pub use schur::{dual_denominator, dual_schur, mp_schur, vandermonde, ParamSeq};
pub use univariate::{jacobi_deriv_at_1, jacobi_tilde};
