use branching_core::hypergeom::{g_closed, g_general};
use branching_core::jacobi::{binomial_formula_residual, coherency_residual};
use branching_core::lambda::{cauchy_residual, d_k, g_kappa_dual_expansion, g_kappa_eval, lambda_det, DkNorm};
use branching_core::{BasisCtx, Error, JacobiParams, Rat, SeriesTag, Signature};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-200i64..200, 1i64..15).prop_map(|(p, q)| Rat::new(p, q))
}

fn series() -> impl Strategy<Value = SeriesTag> {
    prop_oneof![Just(SeriesTag::C), Just(SeriesTag::B), Just(SeriesTag::D)]
}

fn distinct(v: &[Rat]) -> bool {
    v.iter().enumerate().all(|(i, x)| !v[i + 1..].contains(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closed_g_matches_series(s in series(), k in 0usize..=5, l in 1usize..=4, t in rat()) {
        let general = g_general(k, &BasisCtx::series(s, l)).eval(&t);
        match (general, g_closed(s, k, l, &t)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(Error::Pole { .. }), Err(Error::Pole { .. })) => {}
            (a, b) => prop_assert!(false, "pole mismatch {:?} {:?}", a, b),
        }
    }

    #[test]
    fn cauchy_identity_random_points(s in series(), nu in proptest::collection::vec(0u32..=2, 3), ts in proptest::collection::vec(rat(), 2)) {
        prop_assume!(distinct(&ts));
        let mut nu = nu;
        nu.sort_unstable_by(|a, b| b.cmp(a));
        let row = lambda_det(&Signature::new(nu).unwrap(), 3, 2, s).unwrap();
        match cauchy_residual(&row, &ts) {
            Ok(r) => prop_assert!(r.is_zero(), "residual {}", r),
            Err(Error::Pole { .. } | Error::DegenerateInput(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn binomial_formula_random_points(
        s in series(),
        nu in proptest::collection::vec(0u32..=3, 2),
        alphas in proptest::collection::vec(rat(), 2),
    ) {
        prop_assume!(distinct(&alphas) && alphas.iter().all(|a| !a.is_zero()));
        let mut nu = nu;
        nu.sort_unstable_by(|a, b| b.cmp(a));
        let r = binomial_formula_residual(&Signature::new(nu).unwrap(), &alphas, &s.params()).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn dual_expansion_random_points(
        (a, eps) in (0i64..6, 1i64..6).prop_map(|(p, q)| (Rat::new(p, 3), Rat::new(p, 6) + Rat::new(q, 4))),
        l in 1usize..=3,
        ts in proptest::collection::vec((20i64..400, 7i64..9).prop_map(|(p, q)| Rat::new(p, q)), 2),
    ) {
        prop_assume!(distinct(&ts) && ts.iter().all(|t| !t.is_integer()));
        let ctx = BasisCtx::new(JacobiParams::new(a, eps).unwrap(), l).unwrap();
        prop_assume!(g_kappa_eval(&Signature::empty(2), &ts, &ctx).is_ok());
        for kappa in Signature::enumerate(2, 2) {
            let lhs = g_kappa_eval(&kappa, &ts, &ctx).unwrap() / d_k(&kappa, ctx.eps(), DkNorm::Normalized);
            prop_assert_eq!(lhs, g_kappa_dual_expansion(&kappa, &ts, &ctx).unwrap());
        }
    }
}

#[test]
fn coherency_for_small_rows() {
    for s in SeriesTag::ALL {
        for nu in Signature::enumerate(3, 2) {
            for k in 1..3 {
                let row = lambda_det(&nu, 3, k, s).unwrap();
                for mu in Signature::enumerate(k, 3) {
                    assert!(coherency_residual(&row, &mu).unwrap().is_zero(), "{s} nu={nu} K={k} mu={mu}");
                }
            }
        }
    }
}
