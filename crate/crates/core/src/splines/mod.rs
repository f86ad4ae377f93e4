//! Continuous and discrete B-splines, the type A `K = 1` branching row, and
//! piecewise-polynomial shape certificates for the symplectic and orthogonal
//! analogues.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{poch, Rat};
use crate::lambda::{lambda_k1_closed, lambda_k1_piece};
use crate::params::SeriesTag;
use crate::signature::Signature;

/// Strictly decreasing knots `y_1 > ... > y_N`, `N >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotVector<T>(Vec<T>);

impl<T: Ord + Clone + fmt::Debug> KnotVector<T> {
    pub fn new(knots: Vec<T>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::DegenerateInput("need at least two knots".into()));
        }
        if knots.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::DegenerateInput(format!("knots must be strictly decreasing: {knots:?}")));
        }
        Ok(KnotVector(knots))
    }

    pub fn knots(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `M_N(x; y) = (N-1) sum_{y_i >= x} (y_i - x)^{N-2} / prod_{r != i} (y_i - y_r)`.
pub fn bspline(x: &Rat, knots: &KnotVector<Rat>) -> Rat {
    let y = knots.knots();
    let n = y.len();
    let mut sum = Rat::zero();
    for (i, yi) in y.iter().enumerate() {
        if yi < x {
            continue;
        }
        let den: Rat = y.iter().enumerate().filter(|&(r, _)| r != i).map(|(_, yr)| yi - yr).product();
        sum += (yi - x).pow(n as i32 - 2) / den;
    }
    sum * Rat::from(n - 1)
}

/// Which knots enter the discrete B-spline sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Cutoff {
    /// `y_i >= x`
    #[default]
    Strict,
    /// `y_i + N - 2 >= x`
    Widened,
}

pub fn discrete_bspline(x: i64, knots: &KnotVector<i64>) -> Rat {
    discrete_bspline_with(x, knots, Cutoff::Strict)
}

/// `(N-1) sum_i (y_i - x + 1)_{N-2} / prod_{r != i} (y_i - y_r)`.
pub fn discrete_bspline_with(x: i64, knots: &KnotVector<i64>, cutoff: Cutoff) -> Rat {
    let y = knots.knots();
    let n = y.len();
    let slack = match cutoff {
        Cutoff::Strict => 0,
        Cutoff::Widened => n as i64 - 2,
    };
    let mut sum = Rat::zero();
    for (i, &yi) in y.iter().enumerate() {
        if yi + slack < x {
            continue;
        }
        let den: i64 = y.iter().enumerate().filter(|&(r, _)| r != i).map(|(_, &yr)| yi - yr).product();
        sum += poch(&Rat::int(yi - x + 1), n - 2) / Rat::int(den);
    }
    sum * Rat::from(n - 1)
}

/// Knots `y_i = nu_i - i + 1` of the type A row.
pub fn type_a_knots(nu: &Signature) -> Result<KnotVector<i64>> {
    KnotVector::new(nu.parts().iter().enumerate().map(|(i, &v)| v as i64 - i as i64).collect())
}

/// Type A `Lambda^N_1(nu, k)`: the discrete B-spline with knots `nu_i - i + 1`.
pub fn lambda_type_a_k1(nu: &Signature, n: usize, k: i64) -> Result<Rat> {
    let nu = Signature::padded(nu.parts(), n)?;
    Ok(discrete_bspline(k, &type_a_knots(&nu)?))
}

/// Shape certificates for `k -> Lambda^N_1(nu, k)` in one series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub series: SeriesTag,
    pub nu: Signature,
    pub n: usize,
    /// Claimed degree of each polynomial piece.
    pub degree: usize,
    /// `(k, Lambda(nu, k))` for `k = 0..=nu_1`.
    pub values: Vec<(usize, Rat)>,
    /// Breakpoints `nu_i - i + 1` that are `>= 1`, decreasing.
    pub breakpoints: Vec<i64>,
    /// Exact degree of the polynomial on each nonzero piece, right to left.
    pub piece_degrees: Vec<usize>,
    pub normalized: bool,
    pub nonnegative: bool,
    /// Each piece agrees with its polynomial and has degree at most `degree`.
    pub piecewise_polynomial: bool,
}

impl ShapeReport {
    pub fn passes(&self) -> bool {
        self.normalized && self.nonnegative && self.piecewise_polynomial
    }
}

impl fmt::Display for ShapeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} N={} nu={} degree={} pieces={:?} normalized={} nonnegative={} piecewise={}",
            self.series,
            self.n,
            self.nu,
            self.degree,
            self.piece_degrees,
            self.normalized,
            self.nonnegative,
            self.piecewise_polynomial
        )
    }
}

fn differences(v: &[Rat]) -> Vec<Rat> {
    v.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// Exact degree of a polynomial sampled at `len > degree + 1` consecutive
/// integers, or `None` if the samples do not fit a polynomial of degree
/// `< len - 1`.
fn sampled_degree(samples: &[Rat]) -> Option<usize> {
    let mut cur = samples.to_vec();
    for r in 0..samples.len().saturating_sub(1) {
        let next = differences(&cur);
        if next.iter().all(Rat::is_zero) {
            return if cur.iter().all(Rat::is_zero) { None } else { Some(r) };
        }
        cur = next;
    }
    None
}

/// Evaluates `Lambda^N_1(nu, .)` from the closed forms and checks
/// normalization, nonnegativity and the piecewise degree for `k >= 1`.
///
/// On the piece `(b_{j+1}, b_j]` the row is the polynomial with the first
/// `j` terms active. That polynomial is sampled on `degree + 3` integers,
/// which fixes its exact degree, and compared with the row on the piece.
pub fn spline_shape_report(series: SeriesTag, nu: &Signature, n: usize) -> Result<ShapeReport> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("need N >= 2, got {n}")));
    }
    let nu = Signature::padded(nu.parts(), n)?;
    let degree = series.spline_degree(n);
    let top = nu.first() as usize;
    let values: Vec<(usize, Rat)> = (0..=top).map(|k| (k, lambda_k1_closed(series, &nu, n, k))).collect();
    let total: Rat = values.iter().map(|(_, v)| v).sum();

    let breakpoints: Vec<i64> = nu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &v)| v as i64 - i as i64)
        .filter(|&b| b >= 1)
        .collect();

    let mut piecewise_polynomial = true;
    let mut piece_degrees = Vec::new();
    for (j, &hi) in breakpoints.iter().enumerate() {
        let lo = breakpoints.get(j + 1).copied().unwrap_or(0);
        let active = j + 1;
        let samples: Vec<Rat> = (0..degree as i64 + 3)
            .map(|s| lambda_k1_piece(series, &nu, active, lo + 1 + s))
            .collect();
        match sampled_degree(&samples) {
            Some(d) if d <= degree => piece_degrees.push(d),
            _ => piecewise_polynomial = false,
        }
        for k in lo + 1..=hi {
            piecewise_polynomial &= lambda_k1_piece(series, &nu, active, k) == values[k as usize].1;
        }
    }
    // right of the support the row vanishes identically
    piecewise_polynomial &= (top + 1..=top + degree + 2).all(|k| lambda_k1_closed(series, &nu, n, k).is_zero());

    Ok(ShapeReport {
        series,
        degree,
        normalized: total.is_one(),
        nonnegative: values.iter().all(|(_, v)| !v.is_negative()),
        piecewise_polynomial,
        piece_degrees,
        values,
        breakpoints,
        nu,
        n,
    })
}
