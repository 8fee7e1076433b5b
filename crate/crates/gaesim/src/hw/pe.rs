//! The processing element: functional math plus pipeline timing.
//!
//! The accumulation loop `A_t = d_t + C * A_{t+1}` has a registered
//! multiply-accumulate of depth `L` in its feedback path. Re-associating the
//! recurrence to reach `k` outputs ahead lets a new element issue every
//! `II = max(1, ceil(L / k))` cycles; at `k >= L` the loop runs at full rate.
//! Timing never touches the numbers: the functional result is identical for
//! every `(k, L, F)` configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gae::{
    gae_lookahead, rewards_to_go, td_residuals, AdvantageResult, GaeParams, Trajectory,
};
use crate::quant::StreamCodec;

/// Lookahead depth, pipeline latencies, and clock for one PE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    k: usize,
    feedback_latency: u64,
    frontend_latency: u64,
    clock_hz: f64,
}

impl PipelineConfig {
    pub const DEFAULT_CLOCK_HZ: f64 = 3.0e8;

    /// `k` in [1, 8], `feedback_latency >= 1`, `clock_hz > 0`. The frontend
    /// latency (fetch, dequantize, residual, partial sum) may be zero.
    pub fn new(
        k: usize,
        feedback_latency: u64,
        frontend_latency: u64,
        clock_hz: f64,
    ) -> Result<Self> {
        if !(1..=8).contains(&k) {
            return Err(Error::Invalid {
                context: "pipeline config",
                detail: format!("lookahead depth k must be in [1, 8], got {k}"),
            });
        }
        if feedback_latency == 0 {
            return Err(Error::Invalid {
                context: "pipeline config",
                detail: "feedback latency must be at least 1 cycle".to_string(),
            });
        }
        if !clock_hz.is_finite() || clock_hz <= 0.0 {
            return Err(Error::Invalid {
                context: "pipeline config",
                detail: format!("clock must be a positive frequency, got {clock_hz}"),
            });
        }
        Ok(Self {
            k,
            feedback_latency,
            frontend_latency,
            clock_hz,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn feedback_latency(&self) -> u64 {
        self.feedback_latency
    }

    pub fn frontend_latency(&self) -> u64 {
        self.frontend_latency
    }

    pub fn clock_hz(&self) -> f64 {
        self.clock_hz
    }

    pub fn initiation_interval(&self) -> u64 {
        initiation_interval(self.k, self.feedback_latency)
    }

    /// Cycles before the first result emerges: frontend plus feedback depth.
    pub fn fill_cycles(&self) -> u64 {
        self.frontend_latency + self.feedback_latency
    }

    /// Timing summary for a stream of `num_elements >= 1` elements.
    pub fn cycle_report(&self, num_elements: usize) -> CycleReport {
        debug_assert!(num_elements >= 1);
        let ii = self.initiation_interval();
        let fill = self.fill_cycles();
        CycleReport {
            initiation_interval: ii,
            fill_cycles: fill,
            total_cycles: fill + (num_elements as u64 - 1) * ii,
            elements_per_second: self.clock_hz / ii as f64,
        }
    }
}

impl Default for PipelineConfig {
    /// 2-step lookahead against a depth-2 feedback loop at 300 MHz with a
    /// 4-cycle frontend.
    fn default() -> Self {
        Self {
            k: 2,
            feedback_latency: 2,
            frontend_latency: 4,
            clock_hz: Self::DEFAULT_CLOCK_HZ,
        }
    }
}

/// Issue scheduling: consecutive outputs are `k` apart in the re-associated
/// recurrence, so `k` issues must cover the loop depth `L`, giving
/// `II = max(1, ceil(L / k))`.
pub fn initiation_interval(k: usize, feedback_latency: u64) -> u64 {
    debug_assert!(k >= 1 && feedback_latency >= 1);
    feedback_latency.div_ceil(k as u64).max(1)
}

/// Per-trajectory timing of one PE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub initiation_interval: u64,
    pub fill_cycles: u64,
    /// `fill_cycles + (T - 1) * initiation_interval`.
    pub total_cycles: u64,
    /// Steady-state rate, `clock_hz / initiation_interval`.
    pub elements_per_second: f64,
}

/// Runs one trajectory's encoded streams through a PE: decode, TD residuals,
/// k-step-lookahead accumulation, rewards-to-go, and the cycle accounting for
/// the configured pipeline.
pub fn simulate_pe(
    reward_words: &[u64],
    value_words: &[u64],
    reward_codec: &StreamCodec,
    value_codec: &StreamCodec,
    bootstrap_value: f64,
    params: &GaeParams,
    cfg: &PipelineConfig,
) -> Result<(AdvantageResult, CycleReport)> {
    if reward_words.len() != value_words.len() {
        return Err(Error::LengthMismatch {
            context: "simulate_pe",
            left: reward_words.len(),
            right: value_words.len(),
        });
    }
    if reward_words.is_empty() {
        return Err(Error::Empty {
            context: "simulate_pe",
        });
    }
    let rewards: Vec<f64> = reward_words
        .iter()
        .map(|&w| reward_codec.decode(w))
        .collect::<Result<_>>()?;
    let values: Vec<f64> = value_words
        .iter()
        .map(|&w| value_codec.decode(w))
        .collect::<Result<_>>()?;
    let traj = Trajectory::new(rewards, values, bootstrap_value)?;
    let deltas = td_residuals(&traj, params);
    let advantages = gae_lookahead(&deltas, params.decay(), cfg.k())?;
    let rtgs = rewards_to_go(traj.values(), &advantages)?;
    let report = cfg.cycle_report(traj.len());
    Ok((AdvantageResult { advantages, rtgs }, report))
}
