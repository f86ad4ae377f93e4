//! The bases `g_k`, `e_m`, `f_l` of even rational functions with simple
//! poles on the grid `A_m`, and the transition coefficients between them.

mod closed;
mod expand;

pub use closed::{e_closed, g_closed, r_fn, r_fn_poles, telescoping};
pub use expand::{biortho_pairing, e_coeff, expand_in_g, expand_in_g_with, CoeffVector, ESource};

use crate::exact::{factorial, poch, Rat};
use crate::params::BasisCtx;
use crate::rational_fn::{EvenRatFn, Poly};

fn sign(l: usize) -> Rat {
    if l.is_multiple_of(2) {
        Rat::one()
    } else {
        Rat::int(-1)
    }
}

/// `f_l = (-1)^l / prod_{j<l} (u - (L + eps + j)^2)`.
pub fn f_fn(l: usize, ctx: &BasisCtx) -> EvenRatFn {
    let poles = (1..=l).map(|m| ctx.grid(m).square()).collect();
    EvenRatFn::make(sign(l), Vec::new(), poles)
}

/// `e_m = 1/(t - A_m) - 1/(t + A_m) = 2 A_m / (u - A_m^2)`.
pub fn e_fn(m: usize, ctx: &BasisCtx) -> EvenRatFn {
    let a = ctx.grid(m);
    EvenRatFn::make(&a * Rat::int(2), Vec::new(), vec![a.square()])
}

/// Coefficient of `f_l` in the terminating series for `g_k`.
fn g_series_coeff(k: usize, l: usize, ctx: &BasisCtx) -> Rat {
    let (a, eps) = (ctx.a(), ctx.eps());
    let lr = ctx.l_rat();
    poch(&Rat::int(-(k as i64)), l) * poch(&(Rat::from(k) + eps * Rat::int(2)), l)
        / (poch(&(a + Rat::one()), l) * factorial(l))
        * poch(&lr, l)
        * poch(&(&lr + a), l)
}

/// `g_k` as an even rational function, assembled over the common
/// denominator `prod_{m<=k} (u - A_m^2)`.
pub fn g_general(k: usize, ctx: &BasisCtx) -> EvenRatFn {
    let grid: Vec<Rat> = (1..=k).map(|m| ctx.grid(m).square()).collect();
    let mut numer = Poly::zero();
    for l in 0..=k {
        let c = g_series_coeff(k, l, ctx) * sign(l);
        if c.is_zero() {
            continue;
        }
        numer = numer.add(&Poly::from_roots(&grid[l..]).scale(&c));
    }
    EvenRatFn::from_numerator(numer, grid)
}

/// `(e_m : f_l)`.
pub fn coeff_e_in_f(m: usize, l: usize, ctx: &BasisCtx) -> Rat {
    if l == 0 {
        return Rat::zero();
    }
    let two_shift = ctx.l_rat() * Rat::int(2) + ctx.eps() * Rat::int(2);
    let prod: Rat = (1..l)
        .map(|j| (&two_shift + Rat::from(m + j) - Rat::int(2)) * Rat::int(m as i64 - j as i64))
        .product();
    sign(l) * Rat::int(2) * ctx.grid(m) * prod
}

/// `(f_l : g_k)`, with the gamma ratios written as Pochhammer products.
pub fn coeff_f_in_g(l: usize, k: usize, ctx: &BasisCtx) -> Rat {
    if k > l {
        return Rat::zero();
    }
    let (a, eps) = (ctx.a(), ctx.eps());
    let lr = ctx.l_rat();
    let two_eps = eps * Rat::int(2);
    let common = poch(&(a + Rat::one()), l) / (poch(&lr, l) * poch(&(&lr + a), l));
    if k == 0 {
        // 2 eps Gamma(2 eps) / Gamma(2 eps + l + 1) = 1 / (2 eps + 1)_l, also at eps = 0
        return common / poch(&(&two_eps + Rat::one()), l);
    }
    let kr = Rat::from(k);
    common * Rat::int(2) * (&kr + eps) * poch(&Rat::int(-(l as i64)), k)
        / (poch(&(&kr + &two_eps), l + 1) * factorial(k))
}

/// `(e_m : g_k)` from the terminating 4F3 representation, summed directly.
pub fn e_general(m: usize, k: usize, ctx: &BasisCtx) -> Rat {
    assert!(m >= 1);
    if k > m {
        return Rat::zero();
    }
    let (a, eps) = (ctx.a(), ctx.eps());
    let lr = ctx.l_rat();
    let one = Rat::one();
    let two_l_eps = &lr * Rat::int(2) + eps * Rat::int(2);
    let a1 = a + &one;

    if k == 0 {
        let upper = [
            Rat::int(1 - m as i64),
            Rat::one(),
            a + Rat::int(2),
            &two_l_eps + Rat::from(m) - &one,
        ];
        let lower = [&lr + &one, &lr + a + &one, eps * Rat::int(2) + Rat::int(2)];
        let s = hyper_4f3(&upper, &lower);
        return -(Rat::int(2) * ctx.grid(m) * &a1) / (&lr * (&lr + a) * (eps * Rat::int(2) + &one)) * s;
    }

    let kr = Rat::from(k);
    let pre = Rat::int(2)
        * ctx.grid(m)
        * poch(&(&two_l_eps + Rat::from(m) - &one), k - 1)
        * factorial(m - 1)
        / factorial(m - k)
        * poch(&a1, k)
        / (poch(&lr, k) * poch(&(&lr + a), k) * poch(&(&kr + eps * Rat::int(2)), k));
    let upper = [
        Rat::int(k as i64 - m as i64),
        &kr + &one,
        &kr + &a1,
        &two_l_eps + Rat::from(m + k) - Rat::int(2),
    ];
    let lower = [
        &lr + &kr,
        &lr + a + &kr,
        &kr * Rat::int(2) + eps * Rat::int(2) + &one,
    ];
    pre * hyper_4f3(&upper, &lower)
}

/// Terminating `4F3(upper; lower | 1)`; the first upper parameter must be a
/// nonpositive integer.
pub fn hyper_4f3(upper: &[Rat; 4], lower: &[Rat; 3]) -> Rat {
    let n = upper[0]
        .to_i64()
        .filter(|v| *v <= 0 && upper[0].is_integer())
        .expect("series must terminate");
    let mut term = Rat::one();
    let mut sum = Rat::one();
    for j in 0..(-n) {
        let jr = Rat::int(j);
        let num: Rat = upper.iter().map(|u| u + &jr).product();
        let den: Rat = lower.iter().map(|l| l + &jr).product::<Rat>() * Rat::int(j + 1);
        term = term * num / den;
        sum += &term;
    }
    sum
}
