//! Advantage-estimation math.
//!
//! Three routes to the same numbers, kept deliberately independent:
//!
//! * [`gae_sequential`] — the reverse-time recurrence `A_t = d_t + C * A_{t+1}`
//!   that software implementations use;
//! * [`gae_truncated_sum`] — the O(T^2) exponentially-weighted sum, used only
//!   as a reference oracle;
//! * [`gae_lookahead`] — the k-step re-association
//!   `A_t = C^k * A_{t+k} + sum_{i=0}^{k-1} C^i * d_{t+i}` that lets hardware
//!   place k registers in the accumulation loop.
//!
//! All three must agree to floating tolerance for every decay and every k.

use crate::error::{Error, Result};

/// Per-agent rollout: rewards, critic values, and the bootstrap value used for
/// the final TD residual.
///
/// Invariants are enforced at construction: rewards and values have the same
/// nonzero length and every entry (including the bootstrap) is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    rewards: Vec<f64>,
    values: Vec<f64>,
    bootstrap_value: f64,
}

impl Trajectory {
    /// Validates and builds a trajectory. `bootstrap_value` is the critic's
    /// estimate for the state after the last step; pass 0 for terminal ends.
    pub fn new(rewards: Vec<f64>, values: Vec<f64>, bootstrap_value: f64) -> Result<Self> {
        if rewards.len() != values.len() {
            return Err(Error::LengthMismatch {
                context: "trajectory",
                left: rewards.len(),
                right: values.len(),
            });
        }
        if rewards.is_empty() {
            return Err(Error::Empty {
                context: "trajectory",
            });
        }
        check_finite("trajectory rewards", &rewards)?;
        check_finite("trajectory values", &values)?;
        if !bootstrap_value.is_finite() {
            return Err(Error::NonFiniteValue {
                context: "trajectory bootstrap value",
                value: bootstrap_value,
            });
        }
        Ok(Self {
            rewards,
            values,
            bootstrap_value,
        })
    }

    pub fn len(&self) -> usize {
        self.rewards.len()
    }

    pub fn is_empty(&self) -> bool {
        // An invariant of `new`; kept for API completeness.
        self.rewards.is_empty()
    }

    pub fn rewards(&self) -> &[f64] {
        &self.rewards
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn bootstrap_value(&self) -> f64 {
        self.bootstrap_value
    }
}

pub(crate) fn check_finite(context: &'static str, xs: &[f64]) -> Result<()> {
    for (index, &value) in xs.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite {
                context,
                index,
                value,
            });
        }
    }
    Ok(())
}

/// Discount and smoothing parameters. The loop decay `C = gamma * lambda` is
/// always recomputed from the pair, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaeParams {
    gamma: f64,
    lambda: f64,
}

impl GaeParams {
    /// `gamma` must lie in (0, 1] and `lambda` in [0, 1].
    pub fn new(gamma: f64, lambda: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 || gamma > 1.0 {
            return Err(Error::Invalid {
                context: "gae params",
                detail: format!("gamma must be in (0, 1], got {gamma}"),
            });
        }
        if !lambda.is_finite() || !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Invalid {
                context: "gae params",
                detail: format!("lambda must be in [0, 1], got {lambda}"),
            });
        }
        Ok(Self { gamma, lambda })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The per-step decay of the advantage recurrence, `gamma * lambda`.
    pub fn decay(&self) -> f64 {
        self.gamma * self.lambda
    }
}

impl Default for GaeParams {
    fn default() -> Self {
        Self {
            gamma: 0.99,
            lambda: 0.95,
        }
    }
}

/// Advantages and rewards-to-go for one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct AdvantageResult {
    pub advantages: Vec<f64>,
    pub rtgs: Vec<f64>,
}

/// One-step TD residuals `d_t = r_t + gamma * V_{t+1} - V_t`, with the
/// trajectory's bootstrap value standing in for `V_{T+1}`.
pub fn td_residuals(traj: &Trajectory, params: &GaeParams) -> Vec<f64> {
    let gamma = params.gamma();
    let values = traj.values();
    let n = traj.len();
    let mut deltas = Vec::with_capacity(n);
    for t in 0..n {
        let next_value = if t + 1 < n {
            values[t + 1]
        } else {
            traj.bootstrap_value()
        };
        deltas.push(traj.rewards()[t] + gamma * next_value - values[t]);
    }
    deltas
}

/// Reverse-time recurrence `A_T = d_T`, `A_t = d_t + decay * A_{t+1}`.
pub fn gae_sequential(deltas: &[f64], decay: f64) -> Result<Vec<f64>> {
    gae_sequential_observed(deltas, decay, |_| {})
}

/// Same recurrence, reporting each delta index as it is consumed. Lets tests
/// verify that processing really runs from the last timestep down to the
/// first.
pub(crate) fn gae_sequential_observed(
    deltas: &[f64],
    decay: f64,
    mut on_consume: impl FnMut(usize),
) -> Result<Vec<f64>> {
    if deltas.is_empty() {
        return Err(Error::Empty {
            context: "gae_sequential",
        });
    }
    let mut out = vec![0.0; deltas.len()];
    let mut acc = 0.0;
    for t in (0..deltas.len()).rev() {
        on_consume(t);
        acc = deltas[t] + decay * acc;
        out[t] = acc;
    }
    Ok(out)
}

/// Brute-force reference: `A_t = sum_{l=0}^{T-t} decay^l * d_{t+l}`.
///
/// O(T^2); exists to cross-check the recurrences, never for production use.
pub fn gae_truncated_sum(deltas: &[f64], decay: f64) -> Result<Vec<f64>> {
    if deltas.is_empty() {
        return Err(Error::Empty {
            context: "gae_truncated_sum",
        });
    }
    let n = deltas.len();
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        let mut sum = 0.0;
        let mut weight = 1.0;
        for &delta in &deltas[t..] {
            sum += weight * delta;
            weight *= decay;
        }
        out.push(sum);
    }
    Ok(out)
}

/// k-step re-association of the recurrence:
/// `A_t = decay^k * A_{t+k} + sum_{i=0}^{k-1} decay^i * d_{t+i}`,
/// with `A` and `d` taken as 0 beyond the horizon.
///
/// The feedback term reaches k outputs ahead, so a hardware loop may hold k
/// pipeline registers. For every k the result equals [`gae_sequential`]
/// (bit-exact for k = 1, to floating tolerance otherwise).
pub fn gae_lookahead(deltas: &[f64], decay: f64, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::Invalid {
            context: "gae_lookahead",
            detail: "lookahead depth k must be at least 1".to_string(),
        });
    }
    if deltas.is_empty() {
        return Err(Error::Empty {
            context: "gae_lookahead",
        });
    }
    let n = deltas.len();
    let decay_k = decay.powi(k as i32);
    let mut out = vec![0.0; n];
    for t in (0..n).rev() {
        let ahead = if t + k < n { out[t + k] } else { 0.0 };
        let mut acc = decay_k * ahead;
        let mut weight = 1.0;
        for i in 0..k {
            if t + i < n {
                acc += weight * deltas[t + i];
            }
            weight *= decay;
        }
        out[t] = acc;
    }
    Ok(out)
}

/// Critic regression targets `RTG_t = V_t + A_t`.
pub fn rewards_to_go(values: &[f64], advantages: &[f64]) -> Result<Vec<f64>> {
    if values.len() != advantages.len() {
        return Err(Error::LengthMismatch {
            context: "rewards_to_go",
            left: values.len(),
            right: advantages.len(),
        });
    }
    Ok(values.iter().zip(advantages).map(|(v, a)| v + a).collect())
}

/// Full reference pipeline for one trajectory: residuals, sequential
/// recurrence, rewards-to-go.
pub fn compute_advantages(traj: &Trajectory, params: &GaeParams) -> Result<AdvantageResult> {
    let deltas = td_residuals(traj, params);
    let advantages = gae_sequential(&deltas, params.decay())?;
    let rtgs = rewards_to_go(traj.values(), &advantages)?;
    Ok(AdvantageResult { advantages, rtgs })
}
