use crate::exact::{poch, Rat};
use crate::hypergeom::e_closed;
use crate::params::SeriesTag;
use crate::signature::Signature;

/// Residue of `F_N(t; nu)` at `t = n_i + eps` (zero-based `i`).
pub fn residue_f_n(nu: &Signature, eps: &Rat, i: usize) -> Rat {
    let n = nu.len();
    let sh: Vec<Rat> = nu.shifted().iter().map(|&v| Rat::int(v) + eps).collect();
    let x = sh[i].square();
    let numer: Rat = (1..=n).map(|r| &x - (Rat::from(n - r) + eps).square()).product();
    let denom: Rat = (0..n).filter(|&r| r != i).map(|r| &x - sh[r].square()).product();
    numer / (denom * &sh[i] * Rat::int(2))
}

/// `Lambda^N_1(nu, k)` for the three series by elementary formulas.
///
/// For `k = 0` the complement `1 + sum_i Res_i E(m_i, 0)` is used with
/// `m_i = nu_i - i + 1` and the residues of `F_N` written out.
pub fn lambda_k1_closed(series: SeriesTag, nu: &Signature, n: usize, k: usize) -> Rat {
    assert!(n >= 2, "closed K = 1 formulas need N >= 2");
    let nu = Signature::padded(nu.parts(), n).expect("signature fits N");
    let eps = series.eps();
    // zero-based i, so nu_i - i + 1 in one-based terms is parts[i] - i
    let m_of = |i: usize| nu.parts()[i] as i64 - i as i64;

    if k == 0 {
        let mut acc = Rat::one();
        for i in 0..n {
            let m = m_of(i);
            if m >= 1 {
                acc += residue_f_n(&nu, &eps, i) * e_closed(series, m as usize, 0, n);
            }
        }
        return acc;
    }

    let active = (0..n).take_while(|&i| m_of(i) >= k as i64).count();
    lambda_k1_piece(series, &nu, active, k as i64)
}

/// The polynomial in `k` that gives `Lambda^N_1(nu, k)` on the piece where
/// exactly the first `active` terms contribute, evaluated at any integer `k`.
pub fn lambda_k1_piece(series: SeriesTag, nu: &Signature, active: usize, k: i64) -> Rat {
    let n = nu.len();
    let eps = series.eps();
    let kr = Rat::int(k);
    let nr = Rat::from(n);
    let one = Rat::one();
    let two = Rat::int(2);
    let prefactor = match series {
        SeriesTag::C => &two * (&kr + &one) * (&nr - &one) * (&two * &nr - &one),
        SeriesTag::B => &two * (&kr + Rat::half()) * (&nr - &one) * (&two * &nr - &one),
        SeriesTag::D => &two * (&nr - &one),
    };
    let sh: Vec<Rat> = nu.shifted().iter().map(|&v| Rat::int(v) + &eps).collect();
    let mut sum = Rat::zero();
    for i in 0..active {
        let m = nu.parts()[i] as i64 - i as i64;
        let top = poch(&Rat::int(m + 1 - k), 2 * n - 3);
        let mut den: Rat = (0..n).filter(|&r| r != i).map(|r| sh[i].square() - sh[r].square()).product();
        if series != SeriesTag::D {
            den *= &sh[i];
        }
        sum += top / den;
    }
    prefactor * sum
}
