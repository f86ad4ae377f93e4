use crate::exact::{factorial, poch, Rat};
use crate::params::JacobiParams;

/// `(-k)_l (k + 2 eps)_l / ((a + 1)_l l!)`, the coefficient of
/// `((1 - x)/2)^l` in the polynomial normalized to 1 at `x = 1`.
fn coeff(k: usize, l: usize, p: &JacobiParams) -> Rat {
    poch(&Rat::int(-(k as i64)), l) * poch(&(Rat::from(k) + p.eps() * Rat::int(2)), l)
        / (poch(&(p.a() + Rat::one()), l) * factorial(l))
}

/// Jacobi polynomial of degree `k` normalized by its value at `x = 1`.
pub fn jacobi_tilde(k: usize, p: &JacobiParams, x: &Rat) -> Rat {
    let y = (Rat::one() - x) / Rat::int(2);
    let mut pow = Rat::one();
    let mut sum = Rat::zero();
    for l in 0..=k {
        sum += coeff(k, l, p) * &pow;
        pow *= &y;
    }
    sum
}

/// Taylor coefficient of order `r` at `x = 1`, i.e. the `r`-th derivative
/// there divided by `r!`.
pub fn jacobi_deriv_at_1(k: usize, p: &JacobiParams, r: usize) -> Rat {
    if r > k {
        return Rat::zero();
    }
    coeff(k, r, p) * Rat::new(-1, 2).pow(r as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SeriesTag;

    /// Classical unnormalized recurrence in `(alpha, beta)`, then divided by
    /// the value at 1, `(alpha + 1)_n / n!`.
    fn by_recurrence(n: usize, p: &JacobiParams, x: &Rat) -> Rat {
        let al = p.a().clone();
        let be = p.b();
        let s = &al + &be;
        let mut prev = Rat::one();
        if n == 0 {
            return prev;
        }
        let mut cur = (&al + Rat::one()) + (&s + Rat::int(2)) * (x - Rat::one()) / Rat::int(2);
        for k in 2..=n {
            let kr = Rat::from(k);
            let two_k_s = &kr * Rat::int(2) + &s;
            let lhs = Rat::int(2) * &kr * (&kr + &s) * (&two_k_s - Rat::int(2));
            let a1 = (&two_k_s - Rat::one())
                * ((&two_k_s * (&two_k_s - Rat::int(2))) * x + al.square() - be.square());
            let a2 = Rat::int(2) * (&kr + &al - Rat::one()) * (&kr + &be - Rat::one()) * &two_k_s;
            let next = (a1 * &cur - a2 * &prev) / lhs;
            prev = cur;
            cur = next;
        }
        cur / (poch(&(&al + Rat::one()), n) / factorial(n))
    }

    fn param_sets() -> Vec<JacobiParams> {
        let mut v: Vec<JacobiParams> = SeriesTag::ALL.iter().map(|s| s.params()).collect();
        v.push(JacobiParams::from_ab(Rat::new(1, 3), Rat::new(-2, 5)).unwrap());
        v.push(JacobiParams::from_ab(Rat::int(2), Rat::new(7, 4)).unwrap());
        v
    }

    #[test]
    fn normalization_and_degree_zero() {
        for p in param_sets() {
            for k in 0..8 {
                assert_eq!(jacobi_tilde(k, &p, &Rat::one()), Rat::one());
                assert_eq!(jacobi_deriv_at_1(k, &p, 0), Rat::one());
            }
            assert_eq!(jacobi_tilde(0, &p, &Rat::new(3, 7)), Rat::one());
            assert!(jacobi_deriv_at_1(0, &p, 1).is_zero());
        }
    }

    #[test]
    fn matches_three_term_recurrence() {
        let xs = [
            Rat::zero(),
            Rat::new(1, 3),
            Rat::new(-5, 7),
            Rat::int(2),
            Rat::new(11, 13),
            Rat::new(-1, 2),
            Rat::new(9, 4),
            Rat::new(-17, 5),
            Rat::new(2, 9),
            Rat::new(101, 100),
        ];
        for p in param_sets() {
            for k in 0..=8 {
                for x in &xs {
                    assert_eq!(jacobi_tilde(k, &p, x), by_recurrence(k, &p, x), "k={k} x={x} {p:?}");
                }
            }
        }
        let p = JacobiParams::from_ab(Rat::half(), Rat::half()).unwrap();
        assert_eq!(jacobi_tilde(2, &p, &Rat::zero()), by_recurrence(2, &p, &Rat::zero()));
    }

    #[test]
    fn derivative_is_taylor_coefficient() {
        // expand around 1 by finite shifts: p(1 + h) = sum_r c_r h^r
        for p in param_sets() {
            for k in 0..6 {
                for h in [Rat::new(1, 5), Rat::new(-2, 3)] {
                    let taylor: Rat = (0..=k)
                        .map(|r| jacobi_deriv_at_1(k, &p, r) * h.pow(r as i32))
                        .sum();
                    assert_eq!(taylor, jacobi_tilde(k, &p, &(Rat::one() + &h)));
                }
            }
        }
        let p = JacobiParams::from_ab(Rat::half(), Rat::half()).unwrap();
        let want = poch(&Rat::int(-3), 3) * poch(&Rat::int(5), 3)
            / (poch(&Rat::new(3, 2), 3) * factorial(3))
            * Rat::new(-1, 8);
        assert_eq!(jacobi_deriv_at_1(3, &p, 3), want);
    }
}
