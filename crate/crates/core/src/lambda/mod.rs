//! Branching coefficients `Lambda^N_K(nu, kappa)` via the determinantal
//! formula over the `g_k` basis.

mod k1;
mod row;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use k1::{lambda_k1_closed, lambda_k1_piece, residue_f_n};
pub use row::{LambdaRow, RowParams};

use crate::error::{Error, Result};
use crate::exact::{factorial, linalg, poch, Rat};
use crate::jacobi::{dual_schur, shifted_schur, ParamSeq};
use crate::hypergeom::{expand_in_g_with, g_general, CoeffVector, ESource};
use crate::params::{BasisCtx, JacobiParams, SeriesTag};
use crate::rational_fn::EvenRatFn;
use crate::signature::Signature;

/// Characteristic function
/// `F_N(t) = prod_i (t^2 - (N-i+eps)^2) / (t^2 - (n_i+eps)^2)`.
pub fn char_fn(nu: &Signature, n: usize, eps: &Rat) -> Result<EvenRatFn> {
    let nu = Signature::padded(nu.parts(), n)?;
    let zeros = Signature::empty(n).shifted().into_iter().map(|v| (Rat::int(v) + eps).square()).collect();
    let poles = nu.shifted().into_iter().map(|v| (Rat::int(v) + eps).square()).collect();
    Ok(EvenRatFn::make(Rat::one(), zeros, poles))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DkNorm {
    Plain,
    #[default]
    Normalized,
}

impl DkNorm {
    pub const ALL: [DkNorm; 2] = [DkNorm::Plain, DkNorm::Normalized];
}

impl std::fmt::Display for DkNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DkNorm::Plain => "plain",
            DkNorm::Normalized => "normalized",
        })
    }
}

fn gap_product(shifted: &[i64], eps: &Rat) -> Rat {
    let sq: Vec<Rat> = shifted.iter().map(|&v| (Rat::int(v) + eps).square()).collect();
    let mut acc = Rat::one();
    for i in 0..sq.len() {
        for j in i + 1..sq.len() {
            acc *= &sq[i] - &sq[j];
        }
    }
    acc
}

/// `prod_{i<j} ((k_i+eps)^2 - (k_j+eps)^2)`, optionally divided by its value
/// at the empty signature.
pub fn d_k(kappa: &Signature, eps: &Rat, norm: DkNorm) -> Rat {
    let plain = gap_product(&kappa.shifted(), eps);
    match norm {
        DkNorm::Plain => plain,
        DkNorm::Normalized => plain / gap_product(&Signature::empty(kappa.len()).shifted(), eps),
    }
}

/// `det[g_{k_i}(t_j)] / det[g_{K-i}(t_j)]`.
pub fn g_kappa_eval(kappa: &Signature, ts: &[Rat], ctx: &BasisCtx) -> Result<Rat> {
    if kappa.len() != ts.len() {
        return Err(Error::DegenerateInput(format!("{} points for a length {} signature", ts.len(), kappa.len())));
    }
    let matrix = |shifted: Vec<i64>| -> Result<Vec<Vec<Rat>>> {
        shifted
            .iter()
            .map(|&k| {
                let g = g_general(k as usize, ctx);
                ts.iter().map(|t| g.eval(t)).collect()
            })
            .collect()
    };
    let den = linalg::det(&matrix(Signature::empty(kappa.len()).shifted())?);
    if den.is_zero() {
        return Err(Error::DegenerateInput("denominator determinant vanishes; choose other points".into()));
    }
    Ok(linalg::det(&matrix(kappa.shifted())?) / den)
}

/// `G_kappa(t) / d_K(kappa)` expanded over dual Schur functions in `t_j^2`
/// with parameters `(L + eps + i - 1)^2`, `i >= 1`.
pub fn g_kappa_dual_expansion(kappa: &Signature, ts: &[Rat], ctx: &BasisCtx) -> Result<Rat> {
    let k = kappa.len();
    let (a, eps) = (ctx.a(), ctx.eps());
    let lr = ctx.l_rat();
    let ys: Vec<Rat> = ts.iter().map(Rat::square).collect();
    let c = ParamSeq::ShiftedSquares(&lr + eps - Rat::one());
    let a1 = a + Rat::one();
    let mut total = Rat::zero();
    for mu in kappa.subdiagrams(k) {
        let mut coeff = shifted_schur(&mu, kappa, eps)?;
        for (i, &m) in mu.shifted().iter().enumerate() {
            let (m, base) = (m as usize, k - 1 - i);
            coeff *= poch(&lr, m) * poch(&(&lr + a), m) * poch(&a1, base) * factorial(base)
                / (poch(&a1, m) * factorial(m) * poch(&lr, base) * poch(&(&lr + a), base));
        }
        total += coeff * dual_schur(&mu, &ys, &c)?;
    }
    Ok(total)
}

/// Parameters for the determinantal engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineParams {
    pub params: RowParams,
    pub dk: DkNorm,
}

impl EngineParams {
    pub fn series(s: SeriesTag) -> Self {
        EngineParams {
            params: RowParams::Series(s),
            dk: DkNorm::default(),
        }
    }

    pub fn general(p: JacobiParams) -> Self {
        EngineParams {
            params: RowParams::General(p),
            dk: DkNorm::default(),
        }
    }

    pub fn with_dk(mut self, dk: DkNorm) -> Self {
        self.dk = dk;
        self
    }
}

impl From<SeriesTag> for EngineParams {
    fn from(s: SeriesTag) -> Self {
        EngineParams::series(s)
    }
}

impl From<JacobiParams> for EngineParams {
    fn from(p: JacobiParams) -> Self {
        EngineParams::general(p)
    }
}

fn check_sizes(nu: &Signature, n: usize, k: usize) -> Result<Signature> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParams(format!("need 1 <= K < N, got K = {k}, N = {n}")));
    }
    Signature::padded(nu.parts(), n)
}

/// Determinantal row without the normalization check.
pub fn lambda_det_unchecked(nu: &Signature, n: usize, k: usize, ep: &EngineParams, source: ESource) -> Result<LambdaRow> {
    let nu = check_sizes(nu, n, k)?;
    let p = ep.params.jacobi();
    let ctx = BasisCtx::new(p.clone(), n - k + 1)?;
    let f_n = char_fn(&nu, n, p.eps())?;
    // column j holds the expansion of g_{K-j} F_N
    let columns: Vec<CoeffVector> = (1..=k)
        .into_par_iter()
        .map(|j| expand_in_g_with(&g_general(k - j, &ctx).mul(&f_n), &ctx, source))
        .collect::<Result<_>>()?;

    let weights: Vec<(Signature, Rat)> = Signature::enumerate(k, nu.first())
        .into_par_iter()
        .map(|kappa| {
            let m: Vec<Vec<Rat>> = kappa
                .shifted()
                .iter()
                .map(|&ki| columns.iter().map(|c| c.get(ki as usize)).collect())
                .collect();
            let w = d_k(&kappa, p.eps(), ep.dk) * linalg::det(&m);
            (kappa, w)
        })
        .collect();
    Ok(LambdaRow {
        nu,
        n,
        k,
        params: ep.params.clone(),
        weights: weights.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
    })
}

fn checked(row: LambdaRow) -> Result<LambdaRow> {
    let sum = row.total();
    if sum.is_one() {
        Ok(row)
    } else {
        Err(Error::NormalizationMismatch { sum })
    }
}

/// `Lambda^N_K(nu, .)` from the determinantal formula, using the closed
/// transition coefficients where available.
pub fn lambda_det(nu: &Signature, n: usize, k: usize, params: impl Into<EngineParams>) -> Result<LambdaRow> {
    checked(lambda_det_unchecked(nu, n, k, &params.into(), ESource::Auto)?)
}

/// As [`lambda_det`], always through the terminating `4F3` coefficients.
pub fn lambda_general(nu: &Signature, n: usize, k: usize, p: JacobiParams) -> Result<LambdaRow> {
    checked(lambda_det_unchecked(nu, n, k, &EngineParams::general(p), ESource::General)?)
}

/// `Lambda^N_K = Lambda^N_M o Lambda^M_K`.
pub fn lambda_composed(
    nu: &Signature,
    n: usize,
    m: usize,
    k: usize,
    params: impl Into<EngineParams>,
) -> Result<LambdaRow> {
    let ep = params.into();
    let outer = lambda_det(nu, n, m, ep.clone())?;
    let mut acc: BTreeMap<Signature, Rat> = BTreeMap::new();
    for (lam, w) in &outer.weights {
        for (kappa, v) in lambda_det(lam, m, k, ep.clone())?.weights {
            *acc.entry(kappa).or_insert_with(Rat::zero) += w * &v;
        }
    }
    acc.retain(|_, w| !w.is_zero());
    Ok(LambdaRow {
        nu: outer.nu,
        n,
        k,
        params: ep.params,
        weights: acc,
    })
}

/// `prod_j F_N(t_j) - sum_kappa Lambda(nu, kappa) / d_K(kappa) * G_kappa(t)`.
pub fn cauchy_residual(row: &LambdaRow, ts: &[Rat]) -> Result<Rat> {
    let p = row.params.jacobi();
    let ctx = BasisCtx::new(p.clone(), row.n - row.k + 1)?;
    let f_n = char_fn(&row.nu, row.n, p.eps())?;
    let mut lhs = Rat::one();
    for t in ts {
        lhs *= f_n.eval(t)?;
    }
    let mut rhs = Rat::zero();
    for (kappa, w) in &row.weights {
        rhs += w / d_k(kappa, p.eps(), DkNorm::Normalized) * g_kappa_eval(kappa, ts, &ctx)?;
    }
    Ok(lhs - rhs)
}
