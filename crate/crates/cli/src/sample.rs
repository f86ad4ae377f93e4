use branching_core::lambda::LambdaRow;
use branching_core::{Rat, Signature};
use num_bigint::BigInt;
use rand::RngCore;

/// Inverse-CDF sampler over the exact weights of a row.
pub struct Sampler {
    cumulative: Vec<(Rat, Signature)>,
    scale: BigInt,
}

impl Sampler {
    pub fn new(row: &LambdaRow) -> Self {
        let mut acc = Rat::zero();
        let cumulative = row
            .weights
            .iter()
            .filter(|(_, w)| w.is_positive())
            .map(|(kappa, w)| {
                acc = &acc + w;
                (acc.clone(), kappa.clone())
            })
            .collect();
        Sampler {
            cumulative,
            scale: BigInt::from(1u128 << 64),
        }
    }

    /// Draws `u = r / 2^64` and returns the first signature whose cumulative
    /// weight exceeds `u`. The comparison is exact.
    pub fn draw(&self, rng: &mut impl RngCore) -> &Signature {
        let u = Rat::from_bigints(BigInt::from(rng.next_u64()), self.scale.clone());
        let idx = self.cumulative.partition_point(|(c, _)| *c <= u);
        &self.cumulative[idx.min(self.cumulative.len() - 1)].1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use branching_core::lambda::lambda_det;
    use branching_core::SeriesTag;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn frequencies_within_three_sigma() {
        let nu: Signature = "(2,1,0)".parse().unwrap();
        let row = lambda_det(&nu, 3, 1, SeriesTag::C).unwrap();
        let sampler = Sampler::new(&row);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 100_000usize;
        let mut counts = std::collections::BTreeMap::<Signature, usize>::new();
        for _ in 0..draws {
            *counts.entry(sampler.draw(&mut rng).clone()).or_default() += 1;
        }
        for (kappa, w) in &row.weights {
            let p = w.to_f64();
            let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
            let got = *counts.get(kappa).unwrap_or(&0) as f64;
            assert!((got - draws as f64 * p).abs() <= 3.0 * sigma + 1e-9, "{kappa}: {got} vs {p}");
        }
    }

    #[test]
    fn empty_signature_is_constant() {
        let row = lambda_det(&Signature::empty(3), 3, 2, SeriesTag::D).unwrap();
        let sampler = Sampler::new(&row);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..100 {
            assert_eq!(sampler.draw(&mut rng), &Signature::empty(2));
        }
    }
}
