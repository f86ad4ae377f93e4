use super::univariate::{jacobi_deriv_at_1, jacobi_tilde};
use crate::error::{Error, Result};
use crate::exact::{linalg, Rat};
use crate::params::JacobiParams;
use crate::signature::Signature;

/// Confluent determinant: `K` point columns at `xs`, then `N - K` columns of
/// Taylor coefficients at 1.
fn confluent_det(shifted: &[i64], p: &JacobiParams, xs: &[Rat]) -> Rat {
    let n = shifted.len();
    let m: Vec<Vec<Rat>> = shifted
        .iter()
        .map(|&deg| {
            let deg = deg as usize;
            xs.iter()
                .map(|x| jacobi_tilde(deg, p, x))
                .chain((0..n - xs.len()).map(|r| jacobi_deriv_at_1(deg, p, r)))
                .collect()
        })
        .collect();
    linalg::det(&m)
}

fn check_points(n: usize, xs: &[Rat]) -> Result<()> {
    let k = xs.len();
    if k > n {
        return Err(Error::DegenerateInput(format!("{k} arguments for {n} variables")));
    }
    for (i, x) in xs.iter().enumerate() {
        if x.is_one() {
            return Err(Error::DegenerateInput("argument equals 1".into()));
        }
        if xs[i + 1..].contains(x) {
            return Err(Error::DegenerateInput(format!("repeated argument {x}")));
        }
    }
    Ok(())
}

/// Evaluates many signatures of the same length, sharing the determinants
/// that do not depend on the signature.
pub(crate) struct Evaluator {
    n: usize,
    p: JacobiParams,
    base: Vec<i64>,
    base_at_one: Rat,
}

impl Evaluator {
    pub(crate) fn new(n: usize, p: &JacobiParams) -> Self {
        let base = Signature::empty(n).shifted();
        let base_at_one = confluent_det(&base, p, &[]);
        Evaluator {
            n,
            p: p.clone(),
            base,
            base_at_one,
        }
    }

    /// Value at `(1, ..., 1)` of the unnormalized ratio.
    pub(crate) fn scale(&self, nu: &Signature) -> Result<Rat> {
        let nu = Signature::padded(nu.parts(), self.n)?;
        Ok(confluent_det(&nu.shifted(), &self.p, &[]) / &self.base_at_one)
    }

    /// Normalized values at `xs` for signatures with precomputed scales.
    pub(crate) fn eval(&self, nus: &[(Signature, Rat)], xs: &[Rat]) -> Result<Vec<Rat>> {
        check_points(self.n, xs)?;
        let den = confluent_det(&self.base, &self.p, xs);
        nus.iter()
            .map(|(nu, scale)| {
                let nu = Signature::padded(nu.parts(), self.n)?;
                Ok(confluent_det(&nu.shifted(), &self.p, xs) / &den / scale)
            })
            .collect()
    }
}

/// Normalized multivariate Jacobi polynomial evaluated at
/// `(x_1, ..., x_K, 1, ..., 1)`.
pub fn multi_jacobi_eval(nu: &Signature, n: usize, p: &JacobiParams, xs: &[Rat]) -> Result<Rat> {
    check_points(n, xs)?;
    let ev = Evaluator::new(n, p);
    let scale = ev.scale(nu)?;
    Ok(ev.eval(&[(nu.clone(), scale)], xs)?.remove(0))
}
