//! Fidelity experiments: run a datapath variant over a batch and measure how
//! far its streams and advantage outputs land from the full-precision
//! baseline (variant 1). The baseline reports zero error by definition.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gae::{compute_advantages, GaeParams, Trajectory};
use crate::quant::{process_trajectory, DatapathVariant, QuantScheme};
use crate::stats::RunningStats;

/// Mean-squared errors of one variant (or one bit width) against the
/// baseline datapath.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub label: String,
    pub variant: u8,
    pub bits: u32,
    pub range: f64,
    pub reward_mse: f64,
    pub value_mse: f64,
    pub advantage_mse: f64,
    pub rtg_mse: f64,
}

fn mse(accum: &mut (f64, u64), a: &[f64], b: &[f64]) {
    for (x, y) in a.iter().zip(b) {
        accum.0 += (x - y) * (x - y);
        accum.1 += 1;
    }
}

fn finish(accum: (f64, u64)) -> f64 {
    if accum.1 == 0 {
        0.0
    } else {
        accum.0 / accum.1 as f64
    }
}

/// Feeds every trajectory through `variant` (threading the running reward
/// statistics across the batch in order), computes advantages and
/// rewards-to-go from the processed streams, and reports MSEs against the
/// untouched baseline. Bootstrap values pass through unchanged on both sides.
pub fn run_variant(
    streams: &[Trajectory],
    variant: DatapathVariant,
    scheme: &QuantScheme,
    params: &GaeParams,
) -> Result<FidelityReport> {
    let mut stats = RunningStats::new();
    let mut reward_err = (0.0, 0);
    let mut value_err = (0.0, 0);
    let mut adv_err = (0.0, 0);
    let mut rtg_err = (0.0, 0);

    for traj in streams {
        let baseline = compute_advantages(traj, params)?;
        let (next_stats, rewards, values) = process_trajectory(traj, variant, scheme, stats)?;
        stats = next_stats;
        let processed = Trajectory::new(rewards, values, traj.bootstrap_value())?;
        let candidate = compute_advantages(&processed, params)?;

        mse(&mut reward_err, processed.rewards(), traj.rewards());
        mse(&mut value_err, processed.values(), traj.values());
        mse(&mut adv_err, &candidate.advantages, &baseline.advantages);
        mse(&mut rtg_err, &candidate.rtgs, &baseline.rtgs);
    }

    Ok(FidelityReport {
        label: format!("variant-{}", variant.index()),
        variant: variant.index(),
        bits: scheme.bits(),
        range: scheme.range(),
        reward_mse: finish(reward_err),
        value_mse: finish(value_err),
        advantage_mse: finish(adv_err),
        rtg_mse: finish(rtg_err),
    })
}

/// One fidelity report per bit width, on the fully reconstructing datapath
/// (block standardize + quantize + de-standardize both streams) so every MSE
/// column is a pure quantization-error curve. The same streams are reused for
/// every width.
pub fn quant_sweep(
    streams: &[Trajectory],
    bits: &[u32],
    range: f64,
    params: &GaeParams,
) -> Result<Vec<FidelityReport>> {
    let mut reports = Vec::with_capacity(bits.len());
    for &b in bits {
        let scheme = QuantScheme::new(b, range)?;
        let mut report = run_variant(streams, DatapathVariant::BlockBothDestd, &scheme, params)?;
        report.label = format!("bits-{b}");
        reports.push(report);
    }
    Ok(reports)
}
