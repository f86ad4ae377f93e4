use crate::error::{Error, Result};
use crate::exact::{linalg, Rat};
use crate::signature::Signature;

/// A parameter sequence `c_0, c_1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamSeq {
    Zero,
    /// `c_i = (shift + i)^2`; the standard instance has `shift = eps`.
    ShiftedSquares(Rat),
}

impl ParamSeq {
    pub fn get(&self, i: usize) -> Rat {
        match self {
            ParamSeq::Zero => Rat::zero(),
            ParamSeq::ShiftedSquares(s) => (s + Rat::from(i)).square(),
        }
    }

    /// `(x | c_from, c_from+1, ...)^m`.
    pub fn factorial_power(&self, x: &Rat, m: usize, from: usize) -> Rat {
        (from..from + m).map(|i| x - self.get(i)).product()
    }
}

pub fn vandermonde(xs: &[Rat]) -> Rat {
    let mut v = Rat::one();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            v *= &xs[i] - &xs[j];
        }
    }
    v
}

fn check_distinct(xs: &[Rat]) -> Result<()> {
    for i in 0..xs.len() {
        if xs[i + 1..].contains(&xs[i]) {
            return Err(Error::DegenerateInput(format!("repeated argument {}", xs[i])));
        }
    }
    Ok(())
}

fn exponents(mu: &Signature, n: usize) -> Result<Vec<usize>> {
    let mu = Signature::padded(mu.parts(), n)?;
    Ok(mu.shifted().into_iter().map(|v| v as usize).collect())
}

/// Multiparameter Schur polynomial `det[(x_i | c)^{mu_r + N - r}] / V(x)`.
pub fn mp_schur(mu: &Signature, xs: &[Rat], c: &ParamSeq) -> Result<Rat> {
    check_distinct(xs)?;
    let ex = exponents(mu, xs.len())?;
    let m: Vec<Vec<Rat>> = xs
        .iter()
        .map(|x| ex.iter().map(|&e| c.factorial_power(x, e, 0)).collect())
        .collect();
    Ok(linalg::det(&m) / vandermonde(xs))
}

/// Denominator determinant `det[1 / (y_j | c_1, c_2, ...)^{N - r}]`.
pub fn dual_denominator(ys: &[Rat], c: &ParamSeq) -> Result<Rat> {
    dual_det(&Signature::empty(ys.len()), ys, c)
}

fn dual_det(mu: &Signature, ys: &[Rat], c: &ParamSeq) -> Result<Rat> {
    let ex = exponents(mu, ys.len())?;
    let mut m = Vec::with_capacity(ys.len());
    for y in ys {
        let mut row = Vec::with_capacity(ex.len());
        for &e in &ex {
            let p = c.factorial_power(y, e, 1);
            if p.is_zero() {
                return Err(Error::DegenerateInput(format!("argument {y} hits a parameter")));
            }
            row.push(p.recip());
        }
        m.push(row);
    }
    Ok(linalg::det(&m))
}

/// Dual Schur function: ratio of determinants of reciprocal factorial powers
/// in the parameters `c_1, c_2, ...`.
pub fn dual_schur(mu: &Signature, ys: &[Rat], c: &ParamSeq) -> Result<Rat> {
    check_distinct(ys)?;
    let den = dual_denominator(ys, c)?;
    if den.is_zero() {
        return Err(Error::DegenerateInput("dual Schur denominator vanishes".into()));
    }
    Ok(dual_det(mu, ys, c)? / den)
}
