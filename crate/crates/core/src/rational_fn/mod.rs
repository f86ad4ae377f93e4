//! Even rational functions of `t`, stored in the variable `u = t^2`.
//!
//! A function is `scale * prod(u - z) * r(u) / prod(u - p)` where `r` is a
//! monic polynomial holding any numerator factors that were never split into
//! rational roots. Numerator and denominator are kept coprime, so two values
//! are equal exactly when their expanded numerators and pole multisets agree.

mod poly;

use std::fmt;

pub use poly::Poly;

use crate::error::{Error, Result};
use crate::exact::Rat;

#[derive(Clone)]
pub struct EvenRatFn {
    scale: Rat,
    zeros: Vec<Rat>,
    residual: Poly,
    poles: Vec<Rat>,
}

impl EvenRatFn {
    pub fn make(scale: Rat, zeros: Vec<Rat>, poles: Vec<Rat>) -> Self {
        EvenRatFn::with_residual(scale, zeros, Poly::one(), poles)
    }

    pub fn constant(c: Rat) -> Self {
        EvenRatFn::make(c, Vec::new(), Vec::new())
    }

    pub fn one() -> Self {
        EvenRatFn::constant(Rat::one())
    }

    /// General constructor; `residual` need not be monic.
    pub fn with_residual(scale: Rat, zeros: Vec<Rat>, residual: Poly, poles: Vec<Rat>) -> Self {
        if scale.is_zero() || residual.is_zero() {
            return EvenRatFn {
                scale: Rat::zero(),
                zeros: Vec::new(),
                residual: Poly::one(),
                poles: Vec::new(),
            };
        }
        let lead = residual.leading();
        let mut residual = residual.scale(&lead.recip());
        let scale = scale * lead;

        let mut zeros = zeros;
        zeros.sort();
        let mut poles = poles;
        poles.sort();

        // cancel rational zeros against poles
        let (mut zs, mut ps) = (Vec::with_capacity(zeros.len()), Vec::with_capacity(poles.len()));
        let (mut i, mut j) = (0, 0);
        while i < zeros.len() && j < poles.len() {
            match zeros[i].cmp(&poles[j]) {
                std::cmp::Ordering::Less => {
                    zs.push(zeros[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    ps.push(poles[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        zs.extend_from_slice(&zeros[i..]);
        ps.extend_from_slice(&poles[j..]);

        // cancel residual roots against the remaining poles
        if residual.degree() > 0 {
            let mut kept = Vec::with_capacity(ps.len());
            for p in ps {
                let (q, r) = residual.div_linear(&p);
                if r.is_zero() && residual.degree() > 0 {
                    residual = q;
                } else {
                    kept.push(p);
                }
            }
            ps = kept;
        }

        EvenRatFn {
            scale,
            zeros: zs,
            residual,
            poles: ps,
        }
    }

    /// Builds `numer(u) / prod(u - p)` from an expanded numerator.
    pub fn from_numerator(numer: Poly, poles: Vec<Rat>) -> Self {
        EvenRatFn::with_residual(Rat::one(), Vec::new(), numer, poles)
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn zeros(&self) -> &[Rat] {
        &self.zeros
    }

    pub fn residual(&self) -> &Poly {
        &self.residual
    }

    /// Pole locations in `u`, sorted, with multiplicity.
    pub fn poles(&self) -> &[Rat] {
        &self.poles
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    /// Expanded numerator `scale * prod(u - z) * r(u)`.
    pub fn numerator(&self) -> Poly {
        Poly::from_roots(&self.zeros)
            .mul(&self.residual)
            .scale(&self.scale)
    }

    pub fn numerator_degree(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.zeros.len() + self.residual.degree()
        }
    }

    fn numer_at(&self, u: &Rat) -> Rat {
        let z: Rat = self.zeros.iter().map(|z| u - z).product();
        &self.scale * z * self.residual.eval(u)
    }

    pub fn eval_u(&self, u: &Rat) -> Result<Rat> {
        let mut den = Rat::one();
        for p in &self.poles {
            let d = u - p;
            if d.is_zero() {
                return Err(Error::Pole {
                    t: u.sqrt_exact().unwrap_or_else(|| u.clone()),
                });
            }
            den *= d;
        }
        Ok(self.numer_at(u) / den)
    }

    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        self.eval_u(&t.square()).map_err(|e| match e {
            Error::Pole { .. } => Error::Pole { t: t.clone() },
            other => other,
        })
    }

    pub fn mul(&self, other: &EvenRatFn) -> EvenRatFn {
        let zeros = self.zeros.iter().chain(&other.zeros).cloned().collect();
        let poles = self.poles.iter().chain(&other.poles).cloned().collect();
        EvenRatFn::with_residual(
            &self.scale * &other.scale,
            zeros,
            self.residual.mul(&other.residual),
            poles,
        )
    }

    pub fn pole_multiplicity(&self, u: &Rat) -> usize {
        self.poles.iter().filter(|p| *p == u).count()
    }

    /// Distinct poles in increasing order.
    pub fn distinct_poles(&self) -> Vec<Rat> {
        let mut v = self.poles.clone();
        v.dedup();
        v
    }

    /// Residue of `f(t)` at `t = a`, for `a > 0`.
    pub fn residue_at(&self, a: &Rat) -> Result<Rat> {
        assert!(a.is_positive(), "residue point must be positive");
        let u0 = a.square();
        match self.pole_multiplicity(&u0) {
            0 => Ok(Rat::zero()),
            1 => {
                let den: Rat = self
                    .poles
                    .iter()
                    .filter(|p| **p != u0)
                    .map(|p| &u0 - p)
                    .product();
                Ok(self.numer_at(&u0) / den / (a * Rat::int(2)))
            }
            multiplicity => Err(Error::MultiplePole {
                at: a.clone(),
                multiplicity,
            }),
        }
    }

    pub fn at_infinity(&self) -> Result<Rat> {
        let n = self.numerator_degree();
        let d = self.poles.len();
        match n.cmp(&d) {
            std::cmp::Ordering::Greater => Err(Error::NotRegularAtInfinity { numer: n, denom: d }),
            std::cmp::Ordering::Equal => Ok(self.scale.clone()),
            std::cmp::Ordering::Less => Ok(Rat::zero()),
        }
    }

    /// `sum c_i f_i`, brought to a common denominator.
    pub fn linear_combination<'a>(terms: impl IntoIterator<Item = (Rat, &'a EvenRatFn)>) -> Self {
        let terms: Vec<(Rat, &EvenRatFn)> = terms.into_iter().filter(|(c, f)| !c.is_zero() && !f.is_zero()).collect();
        // least common multiple of the pole multisets
        let mut common: Vec<Rat> = Vec::new();
        for (_, f) in &terms {
            for p in f.distinct_poles() {
                let need = f.pole_multiplicity(&p);
                let have = common.iter().filter(|q| **q == p).count();
                common.extend(std::iter::repeat_n(p, need.saturating_sub(have)));
            }
        }
        common.sort();

        let mut numer = Poly::zero();
        for (c, f) in &terms {
            let mut missing = common.clone();
            for p in &f.poles {
                let idx = missing.iter().position(|q| q == p).expect("pole in common denominator");
                missing.remove(idx);
            }
            let piece = f.numerator().mul(&Poly::from_roots(&missing)).scale(c);
            numer = numer.add(&piece);
        }
        EvenRatFn::from_numerator(numer, common)
    }
}

impl PartialEq for EvenRatFn {
    fn eq(&self, other: &Self) -> bool {
        self.poles == other.poles && self.numerator() == other.numerator()
    }
}

impl Eq for EvenRatFn {}

impl fmt::Display for EvenRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scale)?;
        if !self.zeros.is_empty() || self.residual.degree() > 0 {
            write!(f, " *")?;
            for z in &self.zeros {
                write!(f, " (u - {z})")?;
            }
            if self.residual.degree() > 0 {
                write!(f, " ({})", self.residual)?;
            }
        }
        if !self.poles.is_empty() {
            write!(f, " /")?;
            for p in &self.poles {
                write!(f, " (u - {p})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for EvenRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    #[test]
    fn make_examples() {
        assert_eq!(EvenRatFn::make(Rat::one(), vec![], vec![]), EvenRatFn::one());
        let f = EvenRatFn::make(Rat::one(), vec![Rat::int(4)], vec![Rat::int(4)]);
        assert_eq!(f, EvenRatFn::one());
        assert!(f.poles().is_empty() && f.zeros().is_empty());
        let f = EvenRatFn::make(Rat::int(2), vec![Rat::int(1)], vec![Rat::int(9)]);
        assert_eq!(f.eval(&Rat::int(2)).unwrap(), r(-6, 5));
    }

    #[test]
    fn pole_error() {
        let f = EvenRatFn::make(Rat::one(), vec![], vec![Rat::int(9)]);
        assert_eq!(f.eval(&Rat::int(-3)), Err(Error::Pole { t: Rat::int(-3) }));
    }

    #[test]
    fn residue_rules() {
        let a = r(5, 2);
        // e(t) = 1/(t - A) - 1/(t + A) = 2A / (u - A^2)
        let e = EvenRatFn::make(&a * Rat::int(2), vec![], vec![a.square()]);
        assert_eq!(e.residue_at(&a).unwrap(), Rat::one());
        assert_eq!(EvenRatFn::one().residue_at(&a).unwrap(), Rat::zero());
        let double = EvenRatFn::make(Rat::one(), vec![], vec![a.square(), a.square()]);
        assert!(matches!(double.residue_at(&a), Err(Error::MultiplePole { multiplicity: 2, .. })));
    }

    #[test]
    fn residue_matches_limit_probe() {
        let a = Rat::int(3);
        let f = EvenRatFn::make(r(7, 3), vec![Rat::int(2), r(1, 4)], vec![Rat::int(9), Rat::int(16)]);
        let res = f.residue_at(&a).unwrap();
        let h = r(1, 1_000_000);
        let probe = (&a + &h) - &a;
        let limit = f.eval(&(&a + &h)).unwrap() * probe;
        assert!((limit - &res).abs() < r(1, 10_000), "{res}");
    }

    #[test]
    fn infinity() {
        assert_eq!(EvenRatFn::constant(r(3, 4)).at_infinity().unwrap(), r(3, 4));
        let e = EvenRatFn::make(Rat::int(2), vec![], vec![Rat::int(9)]);
        assert_eq!(e.at_infinity().unwrap(), Rat::zero());
        let bad = EvenRatFn::make(Rat::one(), vec![Rat::one()], vec![]);
        assert!(bad.at_infinity().is_err());
    }

    #[test]
    fn display_format() {
        let f = EvenRatFn::make(r(1, 2), vec![Rat::int(1)], vec![Rat::int(9), r(1, 4)]);
        assert_eq!(f.to_string(), "1/2 * (u - 1) / (u - 1/4) (u - 9)");
    }

    #[test]
    fn combination_cancels() {
        // 1/(u-1) - 1/(u-4) = -3 / ((u-1)(u-4))
        let f = EvenRatFn::make(Rat::one(), vec![], vec![Rat::int(1)]);
        let g = EvenRatFn::make(Rat::one(), vec![], vec![Rat::int(4)]);
        let h = EvenRatFn::linear_combination([(Rat::one(), &f), (Rat::int(-1), &g)]);
        assert_eq!(h, EvenRatFn::make(Rat::int(-3), vec![], vec![Rat::int(1), Rat::int(4)]));
        // (u-1)/(u-4) - 1 = 3/(u-4)
        let p = EvenRatFn::make(Rat::one(), vec![Rat::int(1)], vec![Rat::int(4)]);
        let q = EvenRatFn::linear_combination([(Rat::one(), &p), (Rat::int(-1), &EvenRatFn::one())]);
        assert_eq!(q.poles(), &[Rat::int(4)]);
        assert_eq!(q.numerator(), Poly::constant(Rat::int(3)));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-30i64..30, 1i64..5).prop_map(|(p, q)| Rat::new(p, q))
    }

    fn even_fn() -> impl Strategy<Value = EvenRatFn> {
        (
            small_rat(),
            prop::collection::vec(small_rat(), 0..4),
            prop::collection::vec((0i64..12).prop_map(|k| Rat::int(k * k)), 0..4),
        )
            .prop_map(|(s, z, p)| EvenRatFn::make(s, z, p))
    }

    proptest! {
        #[test]
        fn cancellation_is_sound(s in small_rat(), z in prop::collection::vec(small_rat(), 0..4),
                                 p in prop::collection::vec(small_rat(), 0..4), t in small_rat()) {
            let u = t.square();
            prop_assume!(p.iter().all(|p| *p != u));
            let f = EvenRatFn::make(s.clone(), z.clone(), p.clone());
            let direct = z.iter().map(|z| &u - z).product::<Rat>() * &s
                / p.iter().map(|p| &u - p).product::<Rat>();
            prop_assert_eq!(f.eval(&t).unwrap(), direct);
        }

        #[test]
        fn evenness(f in even_fn(), t in small_rat()) {
            if let Ok(v) = f.eval(&t) {
                prop_assert_eq!(f.eval(&-t).unwrap(), v);
            }
        }

        #[test]
        fn mul_is_homomorphism(f in even_fn(), g in even_fn(), t in small_rat()) {
            if let (Ok(a), Ok(b)) = (f.eval(&t), g.eval(&t)) {
                prop_assert_eq!(f.mul(&g).eval(&t).unwrap(), a * b);
            }
            prop_assert_eq!(f.mul(&EvenRatFn::one()), f.clone());
        }

        #[test]
        fn residue_is_linear(f in even_fn(), g in even_fn(), c in small_rat(), k in 1i64..12) {
            let a = Rat::int(k);
            let (rf, rg) = (f.residue_at(&a), g.residue_at(&a));
            let h = EvenRatFn::linear_combination([(Rat::one(), &f), (c.clone(), &g)]);
            if let (Ok(rf), Ok(rg)) = (rf, rg) {
                if let Ok(rh) = h.residue_at(&a) {
                    prop_assert_eq!(rh, rf + c * rg);
                }
            }
        }

        #[test]
        fn residue_of_product_with_regular_factor(k in 1i64..8, s in small_rat(),
                                                  z in prop::collection::vec(small_rat(), 0..3),
                                                  g in even_fn()) {
            let a = Rat::int(k);
            let f = EvenRatFn::make(s, z, vec![a.square()]);
            prop_assume!(g.pole_multiplicity(&a.square()) == 0);
            let lhs = f.mul(&g).residue_at(&a).unwrap();
            prop_assert_eq!(lhs, g.eval(&a).unwrap() * f.residue_at(&a).unwrap());
        }
    }
}
