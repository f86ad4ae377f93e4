use std::collections::BTreeMap;

use rayon::prelude::*;

use super::multi::{multi_jacobi_eval, Evaluator};
use super::schur::{mp_schur, ParamSeq};
use crate::error::{Error, Result};
use crate::exact::{linalg, poch, Rat};
use crate::lambda::{LambdaRow, RowParams};
use crate::params::JacobiParams;
use crate::signature::Signature;

/// Normalizing constant of the binomial formula,
/// `2^{|mu|} prod_i (N-i+1)_{mu_i} (N-i+a+1)_{mu_i}`.
pub fn binom_c(n: usize, mu: &Signature, a: &Rat) -> Result<Rat> {
    let mu = Signature::padded(mu.parts(), n)?;
    let mut acc = Rat::int(2).pow(mu.size() as i32);
    for (i, &m) in mu.parts().iter().enumerate() {
        let base = Rat::from(n - i);
        acc *= poch(&base, m as usize) * poch(&(base + a), m as usize);
    }
    Ok(acc)
}

/// `S_mu((n_i + eps)^2 | eps^2, (eps+1)^2, ...)` for a signature `nu` of
/// length `n`.
pub fn shifted_schur(mu: &Signature, nu: &Signature, eps: &Rat) -> Result<Rat> {
    let pts: Vec<Rat> = nu.shifted().iter().map(|&v| (Rat::int(v) + eps).square()).collect();
    mp_schur(mu, &pts, &ParamSeq::ShiftedSquares(eps.clone()))
}

/// LHS minus RHS of the binomial formula at `x_i = 1 + alpha_i`.
pub fn binomial_formula_residual(nu: &Signature, alphas: &[Rat], p: &JacobiParams) -> Result<Rat> {
    let n = alphas.len();
    let nu = Signature::padded(nu.parts(), n)?;
    let xs: Vec<Rat> = alphas.iter().map(|a| Rat::one() + a).collect();
    let lhs = multi_jacobi_eval(&nu, n, p, &xs)?;
    let mut rhs = Rat::zero();
    for mu in Signature::enumerate(n, nu.first()) {
        let s = shifted_schur(&mu, &nu, p.eps())?;
        if s.is_zero() {
            continue;
        }
        rhs += s / binom_c(n, &mu, p.a())? * mp_schur(&mu, alphas, &ParamSeq::Zero)?;
    }
    Ok(lhs - rhs)
}

/// LHS minus RHS of the coherency relation for one `mu` of length `K`.
pub fn coherency_residual(row: &LambdaRow, mu: &Signature) -> Result<Rat> {
    let p = row.params.jacobi();
    let nu = Signature::padded(row.nu.parts(), row.n)?;
    let lhs = shifted_schur(mu, &nu, p.eps())? / binom_c(row.n, mu, p.a())?;
    let ck = binom_c(row.k, mu, p.a())?;
    let mut rhs = Rat::zero();
    for (kappa, w) in &row.weights {
        rhs += w * shifted_schur(mu, kappa, p.eps())? / &ck;
    }
    Ok(lhs - rhs)
}

const SCHEDULE_DENOM: i64 = 1009;
const MAX_ROUNDS: usize = 8;

/// Sample point `x_j = 1 + j/1009`.
fn schedule_point(j: usize) -> Rat {
    Rat::one() + Rat::new(j as i64, SCHEDULE_DENOM)
}

/// Branching row computed by solving the defining expansion at sample points.
pub fn lambda_oracle(nu: &Signature, n: usize, k: usize, params: impl Into<RowParams>) -> Result<LambdaRow> {
    lambda_oracle_from(nu, n, k, params, 0)
}

/// As [`lambda_oracle`], with the sample schedule starting after `offset`
/// points.
pub fn lambda_oracle_from(
    nu: &Signature,
    n: usize,
    k: usize,
    params: impl Into<RowParams>,
    offset: usize,
) -> Result<LambdaRow> {
    let params = params.into();
    let p = params.jacobi();
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("need 1 <= K <= N, got K = {k}, N = {n}")));
    }
    let nu = Signature::padded(nu.parts(), n)?;
    let support = Signature::enumerate(k, nu.first());
    
    let small = Evaluator::new(k, &p);
    let scaled: Vec<(Signature, Rat)> = support
        .iter()
        .map(|kappa| Ok((kappa.clone(), small.scale(kappa)?)))
        .collect::<Result<_>>()?;
    let big = Evaluator::new(n, &p);
    let target = vec![(nu.clone(), big.scale(&nu)?)];
    let span = nu.first() as usize + k;
    for round in 0..MAX_ROUNDS {
        // one K-subset of the schedule per kappa, at its shifted coordinates
        let start = offset + round * span;
        let tuples: Vec<Vec<Rat>> = support
            .iter()
            .map(|kappa| kappa.shifted().iter().map(|&ki| schedule_point(start + ki as usize + 1)).collect())
            .collect();
        let rows: Vec<(Vec<Rat>, Rat)> = tuples
            .par_iter()
            .map(|xs| Ok((small.eval(&scaled, xs)?, big.eval(&target, xs)?.remove(0))))
            .collect::<Result<_>>()?;
        let (matrix, rhs): (Vec<Vec<Rat>>, Vec<Rat>) = rows.into_iter().unzip();
        match linalg::solve(&matrix, &rhs) {
            Ok(x) => {
                let weights: BTreeMap<Signature, Rat> = support
                    .into_iter()
                    .zip(x)
                    .filter(|(_, w)| !w.is_zero())
                    .collect();
                return Ok(LambdaRow {
                    nu,
                    n,
                    k,
                    params,
                    weights,
                });
            }
            Err(Error::RankDeficient { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RankDeficient { rounds: MAX_ROUNDS })
}
