//! Streaming and per-block statistics.
//!
//! Rewards are standardized against running all-history statistics kept by a
//! Welford accumulator, so every epoch sees a consistent scale without
//! reprocessing old data. Values are standardized per block against the
//! block's own mean and population standard deviation, which are stored next
//! to the encoded block so the transform can be inverted later.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gae::check_finite;

/// Divisor floor applied wherever a standard deviation could be zero
/// (constant streams standardize to zero instead of dividing by zero).
pub const SIGMA_FLOOR: f64 = 1e-8;

/// Welford accumulator: element count, running mean, and the aggregated
/// squared deviation `S_n` from which the population variance is `S_n / n`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    agg: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Aggregated squared deviation `S_n`; never negative.
    pub fn aggregated_sq_dev(&self) -> f64 {
        self.agg
    }

    /// Folds one reward into the accumulator and returns the new state; the
    /// input accumulator is left untouched.
    #[must_use = "update returns a new accumulator"]
    pub fn update(&self, reward: f64) -> Result<Self> {
        if !reward.is_finite() {
            return Err(Error::NonFiniteValue {
                context: "running stats update",
                value: reward,
            });
        }
        let count = self.count + 1;
        let delta = reward - self.mean;
        let mean = self.mean + delta / count as f64;
        let agg = self.agg + delta * (reward - mean);
        Ok(Self { count, mean, agg })
    }

    /// Population standard deviation `sqrt(S_n / n)`; errors on an empty
    /// accumulator.
    pub fn std(&self) -> Result<f64> {
        if self.count == 0 {
            return Err(Error::Empty {
                context: "running stats std",
            });
        }
        Ok((self.agg / self.count as f64).sqrt())
    }
}

/// Folds `rewards` into the accumulator in arrival order, standardizing each
/// one against the statistics that already include it. Returns the advanced
/// accumulator and the standardized stream.
///
/// History is never reset: feeding two batches through successive calls gives
/// the same final statistics as one concatenated batch.
pub fn dynamic_standardize(
    stats: RunningStats,
    rewards: &[f64],
) -> Result<(RunningStats, Vec<f64>)> {
    let mut stats = stats;
    let mut standardized = Vec::with_capacity(rewards.len());
    for &reward in rewards {
        stats = stats.update(reward)?;
        let sigma = (stats.agg / stats.count as f64).sqrt();
        standardized.push((reward - stats.mean) / sigma.max(SIGMA_FLOOR));
    }
    Ok((stats, standardized))
}

/// Mean and population standard deviation of one block of values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockStats {
    mu: f64,
    sigma: f64,
    count: usize,
}

impl BlockStats {
    pub fn new(mu: f64, sigma: f64, count: usize) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || sigma < 0.0 {
            return Err(Error::Invalid {
                context: "block stats",
                detail: format!("mu = {mu}, sigma = {sigma} (sigma must be finite and >= 0)"),
            });
        }
        if count == 0 {
            return Err(Error::Empty {
                context: "block stats",
            });
        }
        Ok(Self { mu, sigma, count })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

/// Two-pass mean and population standard deviation of a block.
pub fn block_stats(values: &[f64]) -> Result<BlockStats> {
    if values.is_empty() {
        return Err(Error::Empty {
            context: "block_stats",
        });
    }
    check_finite("block_stats", values)?;
    let n = values.len() as f64;
    let mu = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / n;
    BlockStats::new(mu, var.sqrt(), values.len())
}

/// `z_i = (v_i - mu) / max(sigma, SIGMA_FLOOR)`.
pub fn block_standardize(values: &[f64], stats: &BlockStats) -> Vec<f64> {
    let sigma = stats.sigma.max(SIGMA_FLOOR);
    values.iter().map(|v| (v - stats.mu) / sigma).collect()
}

/// Inverse of [`block_standardize`]: `v_i = z_i * sigma + mu`.
pub fn block_destandardize(standardized: &[f64], stats: &BlockStats) -> Vec<f64> {
    standardized
        .iter()
        .map(|z| z * stats.sigma + stats.mu)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent straight two-pass statistics used as the oracle for the
    /// Welford accumulator.
    fn two_pass(values: &[f64]) -> (f64, f64) {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        (mean, var.sqrt())
    }

    fn fold(values: &[f64]) -> RunningStats {
        values
            .iter()
            .fold(RunningStats::new(), |s, &v| s.update(v).unwrap())
    }

    #[test]
    fn single_sample() {
        let stats = RunningStats::new().update(5.0).unwrap();
        assert_eq!(stats.count(), 1);
        assert_eq!(stats.mean(), 5.0);
        assert_eq!(stats.aggregated_sq_dev(), 0.0);
        assert_eq!(stats.std().unwrap(), 0.0);
    }

    #[test]
    fn three_samples_match_two_pass_oracle() {
        let stats = fold(&[1.0, 2.0, 3.0]);
        assert!((stats.mean() - 2.0).abs() < 1e-12);
        assert!((stats.aggregated_sq_dev() - 2.0).abs() < 1e-12);
        // sqrt(2/3)
        assert!((stats.std().unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn constant_stream_has_zero_spread() {
        for c in [-3.5, 0.0, 7.0] {
            let stats = fold(&[c, c, c]);
            assert_eq!(stats.aggregated_sq_dev(), 0.0);
            assert_eq!(stats.std().unwrap(), 0.0);
        }
        assert_eq!(fold(&[0.0, 0.0, 0.0, 0.0]).std().unwrap(), 0.0);
    }

    #[test]
    fn std_of_empty_accumulator_is_an_error() {
        assert!(matches!(
            RunningStats::new().std(),
            Err(Error::Empty { .. })
        ));
    }

    #[test]
    fn update_rejects_non_finite() {
        assert!(RunningStats::new().update(f64::NAN).is_err());
        assert!(RunningStats::new().update(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn dynamic_standardize_first_sample_is_zero() {
        let (stats, z) = dynamic_standardize(RunningStats::new(), &[5.0]).unwrap();
        assert_eq!(z, vec![0.0]);
        assert_eq!(stats.count(), 1);
    }

    #[test]
    fn dynamic_standardize_tracks_post_update_statistics() {
        let (stats, z) = dynamic_standardize(RunningStats::new(), &[1.0, 2.0, 3.0]).unwrap();
        assert!((stats.mean() - 2.0).abs() < 1e-12);
        assert!((stats.std().unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);

        // Scalar re-computation of each step.
        let mut reference = RunningStats::new();
        for (i, &r) in [1.0, 2.0, 3.0].iter().enumerate() {
            reference = reference.update(r).unwrap();
            let sigma = reference.std().unwrap().max(SIGMA_FLOOR);
            let expected = (r - reference.mean()) / sigma;
            assert!((z[i] - expected).abs() < 1e-12, "element {i}");
        }
    }

    #[test]
    fn dynamic_standardize_accumulates_across_calls() {
        let (stats_a, _) = dynamic_standardize(RunningStats::new(), &[1.0, 2.0]).unwrap();
        let (stats_a, _) = dynamic_standardize(stats_a, &[3.0]).unwrap();
        let (stats_b, _) = dynamic_standardize(RunningStats::new(), &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(stats_a, stats_b);
    }

    #[test]
    fn dynamic_standardize_empty_batch_is_a_no_op() {
        let seeded = fold(&[4.0, 5.0]);
        let (stats, z) = dynamic_standardize(seeded, &[]).unwrap();
        assert_eq!(stats, seeded);
        assert!(z.is_empty());
    }

    #[test]
    fn block_stats_hand_cases() {
        let s = block_stats(&[2.0, 4.0]).unwrap();
        assert_eq!((s.mu(), s.sigma()), (3.0, 1.0));

        let s = block_stats(&[7.25]).unwrap();
        assert_eq!((s.mu(), s.sigma()), (7.25, 0.0));

        let s = block_stats(&[-1.0, 1.0]).unwrap();
        assert_eq!((s.mu(), s.sigma()), (0.0, 1.0));
    }

    #[test]
    fn block_stats_rejects_empty_and_non_finite() {
        assert!(matches!(block_stats(&[]), Err(Error::Empty { .. })));
        assert!(matches!(
            block_stats(&[1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1, .. })
        ));
    }

    #[test]
    fn block_standardize_hand_case() {
        let stats = BlockStats::new(3.0, 1.0, 2).unwrap();
        assert_eq!(block_standardize(&[2.0, 4.0], &stats), vec![-1.0, 1.0]);
        assert_eq!(block_destandardize(&[-1.0, 1.0], &stats), vec![2.0, 4.0]);
    }

    #[test]
    fn constant_block_standardizes_to_zero() {
        let values = [5.0, 5.0, 5.0];
        let stats = block_stats(&values).unwrap();
        assert_eq!(block_standardize(&values, &stats), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn standardized_block_is_a_fixed_point() {
        let values = [-1.0, 0.5, 0.5];
        let stats = block_stats(&values).unwrap();
        let z = block_standardize(&values, &stats);
        let z_stats = block_stats(&z).unwrap();
        let z2 = block_standardize(&z, &z_stats);
        for (a, b) in z.iter().zip(&z2) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn destandardize_inverts_standardize() {
        let values = [0.25, -3.0, 12.5, 7.75];
        let stats = block_stats(&values).unwrap();
        let z = block_standardize(&values, &stats);
        let back = block_destandardize(&z, &stats);
        let scale = 1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (v, b) in values.iter().zip(&back) {
            assert!((v - b).abs() <= 1e-12 * scale);
        }

        let stats = BlockStats::new(5.0, 2.0, 2).unwrap();
        assert_eq!(block_destandardize(&[0.0, 0.0], &stats), vec![5.0, 5.0]);
    }

    proptest! {
        #[test]
        fn welford_matches_two_pass(values in proptest::collection::vec(-1e6f64..1e6, 1..512)) {
            let stats = fold(&values);
            let (mean, std) = two_pass(&values);
            prop_assert!((stats.mean() - mean).abs() <= 1e-9 * (1.0 + mean.abs()));
            prop_assert!((stats.std().unwrap() - std).abs() <= 1e-9 * (1.0 + std));
            prop_assert!(stats.aggregated_sq_dev() >= 0.0);
        }

        #[test]
        fn final_statistics_are_permutation_invariant(
            mut values in proptest::collection::vec(-1e3f64..1e3, 2..256),
            swaps in proptest::collection::vec((0usize..256, 0usize..256), 0..64),
        ) {
            let original = fold(&values);
            for (i, j) in swaps {
                let n = values.len();
                values.swap(i % n, j % n);
            }
            let shuffled = fold(&values);
            prop_assert!(
                (original.mean() - shuffled.mean()).abs()
                    <= 1e-9 * (1.0 + original.mean().abs())
            );
            prop_assert!(
                (original.std().unwrap() - shuffled.std().unwrap()).abs()
                    <= 1e-9 * (1.0 + original.std().unwrap())
            );
        }

        #[test]
        fn block_round_trip_is_identity(
            values in proptest::collection::vec(-1e4f64..1e4, 1..128),
        ) {
            let stats = block_stats(&values).unwrap();
            prop_assume!(stats.sigma() > SIGMA_FLOOR);
            let back = block_destandardize(&block_standardize(&values, &stats), &stats);
            let scale = 1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (v, b) in values.iter().zip(&back) {
                prop_assert!((v - b).abs() <= 1e-12 * scale);
            }
        }
    }
}
