//! Pochhammer symbols and friends.

use super::Rat;

/// Rising factorial `x(x+1)...(x+m-1)`; equals 1 for `m = 0`.
pub fn poch(x: &Rat, m: usize) -> Rat {
    let mut acc = Rat::one();
    let mut f = x.clone();
    for _ in 0..m {
        if f.is_zero() {
            return Rat::zero();
        }
        acc *= &f;
        f += Rat::one();
    }
    acc
}

/// Falling factorial `n(n-1)...(n-k+1)`.
pub fn falling(n: i64, k: usize) -> Rat {
    (0..k as i64).map(|j| Rat::int(n - j)).product()
}

pub fn factorial(n: usize) -> Rat {
    poch(&Rat::one(), n)
}

/// `Gamma(x + n) / Gamma(x + m)` for integers `n >= m`, as the finite product
/// `(x+m)_{n-m}`.
pub fn gamma_ratio_up(x: &Rat, n: usize, m: usize) -> Rat {
    assert!(n >= m);
    poch(&(x + Rat::from(m)), n - m)
}
