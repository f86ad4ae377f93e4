//! Elementary closed forms for the three distinguished parameter pairs.

use crate::error::{Error, Result};
use crate::exact::{factorial, poch, Rat};
use crate::params::{BasisCtx, SeriesTag};

fn nonzero(x: Rat, t: &Rat) -> Result<Rat> {
    if x.is_zero() {
        Err(Error::Pole { t: t.clone() })
    } else {
        Ok(x)
    }
}

/// Closed elementary value of `g_k(t)` for a series; at `t = 0` the C form has
/// a removable singularity and the general series is used instead.
pub fn g_closed(series: SeriesTag, k: usize, l: usize, t: &Rat) -> Result<Rat> {
    let lr = Rat::from(l);
    let kr = Rat::from(k);
    let one = Rat::one();
    let half = Rat::half();
    let two = Rat::int(2);
    match series {
        SeriesTag::C => {
            if t.is_zero() {
                return super::g_general(k, &BasisCtx::series(series, l)).eval(t);
            }
            let d1 = nonzero(poch(&(t + &lr + &one), k), t)?;
            let d2 = nonzero(poch(&(-t + &lr + &one), k), t)?;
            let bracket = poch(&(t - &lr), k + 2) / d1 - poch(&(-t - &lr), k + 2) / d2;
            Ok(bracket / (two * (&kr + &one) * (&one - &lr * Rat::int(2)) * t))
        }
        SeriesTag::B => {
            let d1 = nonzero(poch(&(t + &lr + &half), k), t)?;
            let d2 = nonzero(poch(&(-t + &lr + &half), k), t)?;
            let bracket =
                poch(&(t - &lr + &half), k + 1) / d1 + poch(&(-t - &lr + &half), k + 1) / d2;
            Ok(bracket / (two * (&kr + &half) * (&one - &lr * Rat::int(2))))
        }
        SeriesTag::D => {
            let d1 = nonzero(poch(&(t + &lr), k), t)?;
            let d2 = nonzero(poch(&(-t + &lr), k), t)?;
            let bracket = poch(&(t - &lr + &one), k) / d1 + poch(&(-t - &lr + &one), k) / d2;
            Ok(bracket * half)
        }
    }
}

/// Elementary transition coefficients `E(m, k)` for a series, `L >= 2`.
pub fn e_closed(series: SeriesTag, m: usize, k: usize, l: usize) -> Rat {
    assert!(m >= 1 && l >= 2, "closed transition coefficients need m >= 1, L >= 2");
    if k > m {
        return Rat::zero();
    }
    let (mi, li) = (m as i64, l as i64);
    if k == 0 {
        return match series {
            SeriesTag::C => Rat::new(-2 * (mi + 4 * li - 3) * (li + mi), 1)
                / Rat::int((2 * li + mi) * (2 * li + mi - 1) * (2 * li + mi - 2)),
            SeriesTag::B => Rat::new(-(2 * mi + 6 * li - 5), (2 * li + mi - 1) * (2 * li + mi - 2)),
            SeriesTag::D => Rat::new(-2, 2 * li + mi - 2),
        };
    }
    let kr = Rat::from(k);
    let common = factorial(m - 1) * factorial(2 * l + m - k - 3) / factorial(m - k);
    let two_l = Rat::int(2 * li - 2);
    match series {
        SeriesTag::C => {
            Rat::int(2) * (kr + Rat::one()) * common * two_l * Rat::int(2 * li - 1) * Rat::int(li + mi)
                / factorial(2 * l + m)
        }
        SeriesTag::B => {
            Rat::int(2) * (kr + Rat::half()) * common * two_l * Rat::int(2 * li - 1)
                / factorial(2 * l + m - 1)
        }
        SeriesTag::D => Rat::int(2) * common * two_l / factorial(2 * l + m - 2),
    }
}

fn prefactor(series: SeriesTag, k: usize, l: usize) -> Rat {
    let kr = Rat::from(k);
    let li = l as i64;
    match series {
        SeriesTag::C => Rat::int(2) * (kr + Rat::one()) * Rat::int((2 * li - 2) * (2 * li - 1)),
        SeriesTag::B => Rat::int(2) * (kr + Rat::half()) * Rat::int((2 * li - 2) * (2 * li - 1)),
        SeriesTag::D => Rat::int(2 * (2 * li - 2)),
    }
}

/// Denominator factors `(t - r)` of the rational extension, as the list of `r`.
pub fn r_fn_poles(series: SeriesTag, k: usize, l: usize) -> Vec<Rat> {
    let lr = Rat::from(l);
    if k == 0 {
        let shifts: Vec<Rat> = match series {
            SeriesTag::C => vec![Rat::zero(), Rat::one(), Rat::int(2)],
            SeriesTag::B => vec![Rat::half(), Rat::new(3, 2)],
            SeriesTag::D => vec![Rat::one()],
        };
        return shifts.into_iter().map(|s| s - &lr).collect();
    }
    // (t + base)_len has roots -base, -base - 1, ...
    let (base, len) = match series {
        SeriesTag::C => (-&lr, 2 * l + 1),
        SeriesTag::B => (-&lr + Rat::half(), 2 * l),
        SeriesTag::D => (-&lr + Rat::one(), 2 * l - 1),
    };
    (0..len).map(|j| -(&base + Rat::from(j))).collect()
}

/// Rational continuation `R(t, k)` of `E(m, k)` in `t = A_m`, for `L >= 2`.
///
/// It agrees with `E(m, k)` for `m >= k - 2L + 3`; at smaller `m` with `k > m`
/// it is nonzero while `E(m, k) = 0`.
pub fn r_fn(series: SeriesTag, k: usize, l: usize, t: &Rat) -> Result<Rat> {
    assert!(l >= 2);
    let lr = Rat::from(l);
    let den: Rat = r_fn_poles(series, k, l).iter().map(|r| t - r).product();
    let den = nonzero(den, t)?;
    if k == 0 {
        let two = Rat::int(2);
        let num = match series {
            SeriesTag::C => -(&two) * (t + &lr * Rat::int(3) - Rat::int(3)) * t,
            SeriesTag::B => -(t * &two + &lr * Rat::int(4) - Rat::int(4)),
            SeriesTag::D => -two,
        };
        return Ok(num / den);
    }
    let kr = Rat::from(k);
    let pre = prefactor(series, k, l);
    let n = 2 * l - 3;
    let num = match series {
        SeriesTag::C => t * poch(&(t - &lr - &kr + Rat::one()), n),
        SeriesTag::B => poch(&(t - &lr - &kr + Rat::new(3, 2)), n),
        SeriesTag::D => poch(&(t - &lr - &kr + Rat::int(2)), n),
    };
    Ok(pre * num / den)
}

/// The three factorial sums used to sum the `k = 0` coefficients, together
/// with their closed forms.
pub mod telescoping {
    use crate::exact::{factorial, Rat};

    fn sum_with(m: usize, big_m: usize, weight: impl Fn(usize) -> Rat) -> Rat {
        let s: Rat = (1..=m)
            .map(|k| factorial(big_m + m - k - 1) / factorial(m - k) * weight(k))
            .sum();
        s * Rat::from(big_m)
    }

    pub fn s_d(m: usize, big_m: usize) -> Rat {
        sum_with(m, big_m, |_| Rat::one())
    }

    pub fn s_b(m: usize, big_m: usize) -> Rat {
        sum_with(m, big_m, |k| Rat::from(2 * k + 1))
    }

    pub fn s_c(m: usize, big_m: usize) -> Rat {
        sum_with(m, big_m, |k| Rat::from(k + 1))
    }

    pub fn s_d_closed(m: usize, big_m: usize) -> Rat {
        factorial(big_m + m - 1) / factorial(m - 1)
    }

    pub fn s_b_closed(m: usize, big_m: usize) -> Rat {
        factorial(big_m + m - 1) * Rat::from(2 * m + 3 * big_m + 1)
            / (factorial(m - 1) * Rat::from(big_m + 1))
    }

    pub fn s_c_closed(m: usize, big_m: usize) -> Rat {
        factorial(big_m + m - 1) * Rat::from(m + 2 * big_m + 1)
            / (factorial(m - 1) * Rat::from(big_m + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::telescoping::*;
    use super::*;
    use crate::hypergeom::{e_general, g_general};

    #[test]
    fn d_at_k_zero_is_one() {
        for l in 1..5 {
            for t in [Rat::new(1, 3), Rat::int(17), Rat::new(-5, 2)] {
                assert_eq!(g_closed(SeriesTag::D, 0, l, &t).unwrap(), Rat::one());
            }
        }
    }

    #[test]
    fn c_closed_instance() {
        let g = g_general(1, &BasisCtx::series(SeriesTag::C, 2));
        assert_eq!(g_closed(SeriesTag::C, 1, 2, &Rat::int(5)).unwrap(), g.eval(&Rat::int(5)).unwrap());
        // removable point
        assert_eq!(g_closed(SeriesTag::C, 3, 2, &Rat::zero()).unwrap(), g_general(3, &BasisCtx::series(SeriesTag::C, 2)).eval(&Rat::zero()).unwrap());
    }

    #[test]
    fn closed_g_poles_are_reported() {
        // A_1 for series D at L = 2 is 2
        assert!(matches!(g_closed(SeriesTag::D, 1, 2, &Rat::int(2)), Err(Error::Pole { .. })));
        assert!(matches!(g_closed(SeriesTag::B, 2, 2, &Rat::new(-7, 2)), Err(Error::Pole { .. })));
    }

    #[test]
    fn e_closed_instances() {
        for l in 2..5 {
            for m in 1..6 {
                assert_eq!(e_closed(SeriesTag::D, m, 0, l), Rat::new(-2, (2 * l + m - 2) as i64));
            }
        }
        assert_eq!(
            e_closed(SeriesTag::C, 2, 1, 2),
            e_general(2, 1, &BasisCtx::series(SeriesTag::C, 2))
        );
    }

    #[test]
    fn e_closed_columns_sum_to_zero() {
        for s in SeriesTag::ALL {
            for l in 2..6 {
                for m in 1..10 {
                    let total: Rat = (0..=m).map(|k| e_closed(s, m, k, l)).sum();
                    assert!(total.is_zero(), "{s} m={m} L={l}");
                }
            }
        }
    }

    #[test]
    fn r_fn_interpolates_grid() {
        for s in SeriesTag::ALL {
            for l in 2..5 {
                let ctx = BasisCtx::series(s, l);
                for k in 0..8 {
                    for m in 1..=8 {
                        let r = r_fn(s, k, l, &ctx.grid(m)).unwrap();
                        let e = e_closed(s, m, k, l);
                        // below m = k - 2L + 3 the continuation no longer vanishes
                        if m + 2 * l >= k + 3 {
                            assert_eq!(r, e, "{s} k={k} m={m} L={l}");
                        } else {
                            assert!(e.is_zero() && !r.is_zero(), "{s} k={k} m={m} L={l}");
                        }
                    }
                }
            }
        }
        let ctx = BasisCtx::series(SeriesTag::B, 3);
        assert_eq!(r_fn(SeriesTag::B, 0, 3, &ctx.grid(2)).unwrap(), e_closed(SeriesTag::B, 2, 0, 3));
    }

    #[test]
    fn r_fn_regular_in_right_half_plane() {
        for s in SeriesTag::ALL {
            for l in 2..5 {
                let bound = Rat::from(l) + s.eps() - Rat::one();
                for k in 1..8 {
                    assert!(r_fn_poles(s, k, l).iter().all(|p| *p <= bound), "{s} k={k} L={l}");
                }
            }
        }
        let bound = Rat::int(1);
        assert!(r_fn_poles(SeriesTag::D, 1, 2).iter().all(|p| *p <= bound));
    }

    #[test]
    fn telescoping_sums() {
        for m in 1..=12 {
            for big_m in 1..=10 {
                assert_eq!(s_d(m, big_m), s_d_closed(m, big_m));
                assert_eq!(s_b(m, big_m), s_b_closed(m, big_m));
                assert_eq!(s_c(m, big_m), s_c_closed(m, big_m));
                if m >= 2 {
                    let mm = Rat::from(big_m);
                    let reduced = s_d(m - 1, big_m + 1) / (&mm + Rat::one());
                    assert_eq!(
                        Rat::from(2 * m + 1) * s_d(m, big_m) - s_b(m, big_m),
                        Rat::int(2) * &mm * &reduced
                    );
                    assert_eq!(Rat::from(m + 1) * s_d(m, big_m) - s_c(m, big_m), &mm * &reduced);
                }
            }
        }
    }
}
