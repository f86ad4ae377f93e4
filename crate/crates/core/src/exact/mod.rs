//! Exact rational scalars, Pochhammer products and determinants.

mod comb;
pub mod linalg;
mod rat;

pub use comb::{factorial, falling, gamma_ratio_up, poch};
pub use rat::{ParseRatError, Rat};
