use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("pole: evaluation point t = {t} lies on a pole")]
    Pole { t: Rat },

    #[error("pole of multiplicity {multiplicity} at t = {at}; only simple poles have residues here")]
    MultiplePole { at: Rat, multiplicity: usize },

    #[error("function is not regular at infinity (numerator degree {numer} > denominator degree {denom})")]
    NotRegularAtInfinity { numer: usize, denom: usize },

    #[error("function is not in F(eps, L): pole u = {pole} is off the grid")]
    NotInSpace { pole: Rat },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("linear system stayed rank deficient after {rounds} resampling rounds")]
    RankDeficient { rounds: usize },

    #[error("row weights sum to {sum}, not 1 (check the d_K normalization)")]
    NormalizationMismatch { sum: Rat },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
