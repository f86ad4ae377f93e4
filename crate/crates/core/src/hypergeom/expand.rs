use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{e_closed, e_general, g_general, r_fn};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::params::{BasisCtx, SeriesTag};
use crate::rational_fn::EvenRatFn;

/// Which formula supplies the transition coefficients `E(m, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ESource {
    /// Closed form when the parameters are a series and `L >= 2`.
    Auto,
    General,
}

pub fn e_coeff(m: usize, k: usize, ctx: &BasisCtx, source: ESource) -> Rat {
    match (source, ctx.params.series()) {
        (ESource::Auto, Some(s)) if ctx.l >= 2 => e_closed(s, m, k, ctx.l),
        _ => e_general(m, k, ctx),
    }
}

/// Finitely supported coefficients `(phi : g_k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoeffVector(BTreeMap<usize, Rat>);

impl CoeffVector {
    pub fn get(&self, k: usize) -> Rat {
        self.0.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(usize, Rat)> for CoeffVector {
    fn from_iter<I: IntoIterator<Item = (usize, Rat)>>(iter: I) -> Self {
        CoeffVector(iter.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }
}

/// Residues of `phi` at the grid points, indexed by `m`.
fn grid_residues(phi: &EvenRatFn, ctx: &BasisCtx) -> Result<BTreeMap<usize, Rat>> {
    let mut out = BTreeMap::new();
    for p in phi.distinct_poles() {
        let m = ctx
            .grid_index(&p)
            .ok_or_else(|| Error::NotInSpace { pole: p.clone() })?;
        let r = phi.residue_at(&ctx.grid(m))?;
        out.insert(m, r);
    }
    Ok(out)
}

pub fn expand_in_g(phi: &EvenRatFn, ctx: &BasisCtx) -> Result<CoeffVector> {
    expand_in_g_with(phi, ctx, ESource::Auto)
}

/// Expansion of `phi` in the `g_k` basis via residues at the grid points.
pub fn expand_in_g_with(phi: &EvenRatFn, ctx: &BasisCtx, source: ESource) -> Result<CoeffVector> {
    let at_inf = phi.at_infinity()?;
    let res = grid_residues(phi, ctx)?;
    let top = res.keys().next_back().copied().unwrap_or(0);
    Ok((0..=top)
        .map(|k| {
            let mut c: Rat = res
                .range(k.max(1)..)
                .map(|(&m, r)| r * e_coeff(m, k, ctx, source))
                .sum();
            if k == 0 {
                c += &at_inf;
            }
            (k, c)
        })
        .collect())
}

/// Residue-sum form of the contour pairing between `g_l` and `R(., k)`.
pub fn biortho_pairing(k: usize, l: usize, series: SeriesTag, big_l: usize) -> Result<Rat> {
    let ctx = BasisCtx::series(series, big_l);
    let g = g_general(l, &ctx);
    (1..=l)
        .map(|m| {
            let a = ctx.grid(m);
            Ok(g.residue_at(&a)? * r_fn(series, k, big_l, &a)?)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::{e_fn, f_fn};
    use crate::params::JacobiParams;
    use proptest::prelude::*;

    fn ctxs() -> Vec<BasisCtx> {
        let mut v = vec![
            BasisCtx::new(JacobiParams::new(Rat::zero(), Rat::half()).unwrap(), 2).unwrap(),
            BasisCtx::new(JacobiParams::new(Rat::new(2, 3), Rat::new(3, 2)).unwrap(), 1).unwrap(),
        ];
        for s in SeriesTag::ALL {
            v.push(BasisCtx::series(s, 1));
            v.push(BasisCtx::series(s, 3));
        }
        v
    }

    #[test]
    fn constant_and_basis_idempotence() {
        for c in ctxs() {
            let one = expand_in_g(&EvenRatFn::one(), &c).unwrap();
            assert_eq!(one, [(0, Rat::one())].into_iter().collect());
            for k in 0..6 {
                let v = expand_in_g(&g_general(k, &c), &c).unwrap();
                assert_eq!(v, [(k, Rat::one())].into_iter().collect(), "k={k} {c:?}");
            }
        }
    }

    #[test]
    fn e_expansion_is_triangular() {
        for c in ctxs() {
            for m in 1..7 {
                let v = expand_in_g(&e_fn(m, &c), &c).unwrap();
                assert!(v.support().all(|k| k <= m));
                for k in 0..=m {
                    assert_eq!(v.get(k), e_coeff(m, k, &c, ESource::Auto));
                }
                let f = expand_in_g(&f_fn(m, &c), &c).unwrap();
                assert!(f.support().all(|k| k <= m));
            }
        }
    }

    #[test]
    fn off_grid_pole_rejected() {
        let c = BasisCtx::series(SeriesTag::D, 2);
        let phi = EvenRatFn::make(Rat::one(), vec![], vec![Rat::int(5)]);
        assert!(matches!(expand_in_g(&phi, &c), Err(Error::NotInSpace { .. })));
    }

    #[test]
    fn coeff_vector_json() {
        let v: CoeffVector = [(2, Rat::new(1, 3)), (0, Rat::int(-1)), (10, Rat::one())].into_iter().collect();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"0":"-1","2":"1/3","10":"1"}"#);
        assert_eq!(serde_json::from_str::<CoeffVector>(&s).unwrap(), v);
    }

    #[test]
    fn biorthogonality() {
        for s in SeriesTag::ALL {
            for big_l in 2..=4 {
                let ctx = BasisCtx::series(s, big_l);
                for k in 1..=6 {
                    for l in 1..=6 {
                        let delta = if k == l { Rat::one() } else { Rat::zero() };
                        let got = biortho_pairing(k, l, s, big_l).unwrap();
                        if k + 2 <= 2 * big_l {
                            assert_eq!(got, delta, "{s} L={big_l} k={k} l={l}");
                        }
                        // any deviation comes from grid points where R(A_m, k) != E(m, k)
                        let g = g_general(l, &ctx);
                        let defect: Rat = (1..=l)
                            .map(|m| {
                                let a = ctx.grid(m);
                                g.residue_at(&a).unwrap()
                                    * (r_fn(s, k, big_l, &a).unwrap() - e_coeff(m, k, &ctx, ESource::Auto))
                            })
                            .sum();
                        assert_eq!(got - delta, defect);
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn roundtrip_random_combination(coeffs in prop::collection::vec((-20i64..20, 1i64..6), 7), which in 0usize..8) {
            let c = &ctxs()[which];
            let gs: Vec<EvenRatFn> = (0..7).map(|k| g_general(k, c)).collect();
            let cs: Vec<Rat> = coeffs.iter().map(|&(p, q)| Rat::new(p, q)).collect();
            let phi = EvenRatFn::linear_combination(cs.iter().cloned().zip(gs.iter()));
            let v = expand_in_g(&phi, c).unwrap();
            for (k, ck) in cs.iter().enumerate() {
                prop_assert_eq!(&v.get(k), ck);
            }
        }
    }
}
