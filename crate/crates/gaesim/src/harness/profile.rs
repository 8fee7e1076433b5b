//! Phase-profile speedup model.
//!
//! A profile lists (phase, sub-phase, percent-of-total-time) rows for one
//! training iteration. Accelerating a set of phases by given factors yields
//! the remaining time fraction and the whole-run speedup; an infinite factor
//! eliminates a phase outright. Shares are normalized by the profile's actual
//! column sum, so the Amdahl identity `speedup = 1 / (1 - p + p / f)` holds
//! exactly for a single accelerated phase with share `p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Memory-handling share of iteration time quoted alongside the bundled
/// CPU-GPU profile. The row sum of the memory-related sub-phases is 11.75;
/// the quoted figure differs by 0.02 points.
pub const MEMORY_TIME_CLAIM_PERCENT: f64 = 11.73;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseEntry {
    pub phase: String,
    pub sub_phase: String,
    pub percent: f64,
}

/// An ordered phase/sub-phase time breakdown for one system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseProfile {
    pub system: String,
    pub entries: Vec<PhaseEntry>,
}

fn entry(phase: &str, sub_phase: &str, percent: f64) -> PhaseEntry {
    PhaseEntry {
        phase: phase.to_string(),
        sub_phase: sub_phase.to_string(),
        percent,
    }
}

impl PhaseProfile {
    /// Percentages must be positive and sum to 100 within a point (measured
    /// columns rarely sum exactly).
    pub fn new(system: impl Into<String>, entries: Vec<PhaseEntry>) -> Result<Self> {
        for e in &entries {
            if !e.percent.is_finite() || e.percent <= 0.0 {
                return Err(Error::Invalid {
                    context: "phase profile",
                    detail: format!(
                        "{} / {}: percent must be positive, got {}",
                        e.phase, e.sub_phase, e.percent
                    ),
                });
            }
        }
        let total: f64 = entries.iter().map(|e| e.percent).sum();
        if !(99.0..=101.0).contains(&total) {
            return Err(Error::Invalid {
                context: "phase profile",
                detail: format!("percent column sums to {total}, expected 99..101"),
            });
        }
        Ok(Self {
            system: system.into(),
            entries,
        })
    }

    /// Bundled measurement of a PPO iteration on a CPU-GPU system.
    pub fn cpu_gpu() -> Self {
        Self {
            system: "cpu-gpu".to_string(),
            entries: vec![
                entry("Trajectory Collection", "DNN Inference", 9.92),
                entry("Trajectory Collection", "Environment Run", 46.58),
                entry("Trajectory Collection", "CPU-GPU Communication", 0.85),
                entry("Trajectory Collection", "Storing Trajectories", 5.73),
                entry("GAE", "GAE Memory Fetch", 5.00),
                entry("GAE", "GAE Computation", 24.79),
                entry("GAE", "GAE Memory Write", 0.17),
                entry("Network Update", "Loss Calculation", 5.21),
                entry("Network Update", "Backpropagation", 1.77),
            ],
        }
    }

    /// Bundled measurement of the same iteration on a CPU-only system.
    pub fn cpu_only() -> Self {
        Self {
            system: "cpu".to_string(),
            entries: vec![
                entry("Trajectory Collection", "DNN Inference", 10.46),
                entry("Trajectory Collection", "Environment Run", 60.71),
                entry("Trajectory Collection", "Storing Trajectories", 4.75),
                entry("GAE", "GAE Memory Fetch", 3.49),
                entry("GAE", "GAE Computation", 11.23),
                entry("GAE", "GAE Memory Write", 0.32),
                entry("Network Update", "Loss Calculation", 6.10),
                entry("Network Update", "Backpropagation", 2.95),
            ],
        }
    }

    pub fn total_percent(&self) -> f64 {
        self.entries.iter().map(|e| e.percent).sum()
    }

    /// Sum of the sub-phases that move trajectory data through memory.
    pub fn memory_subphase_percent(&self) -> f64 {
        const MEMORY_SUB_PHASES: [&str; 4] = [
            "Storing Trajectories",
            "GAE Memory Fetch",
            "GAE Memory Write",
            "CPU-GPU Communication",
        ];
        self.entries
            .iter()
            .filter(|e| MEMORY_SUB_PHASES.contains(&e.sub_phase.as_str()))
            .map(|e| e.percent)
            .sum()
    }
}

/// Applies acceleration factors (>= 1; infinity removes a phase) to every
/// entry whose phase or sub-phase matches a factor's name. Returns
/// `(new_time_fraction, speedup)`.
///
/// A name matching no entry is an error, as is one entry matched by two
/// factors.
pub fn profile_speedup(
    profile: &PhaseProfile,
    accelerations: &[(&str, f64)],
) -> Result<(f64, f64)> {
    for &(name, factor) in accelerations {
        if factor.is_nan() || factor < 1.0 {
            return Err(Error::Invalid {
                context: "profile speedup",
                detail: format!("factor for '{name}' must be >= 1 (or infinite), got {factor}"),
            });
        }
    }

    let mut factors = vec![1.0f64; profile.entries.len()];
    for &(name, factor) in accelerations {
        let mut matched = false;
        for (i, e) in profile.entries.iter().enumerate() {
            if e.phase == name || e.sub_phase == name {
                if factors[i] != 1.0 {
                    return Err(Error::Invalid {
                        context: "profile speedup",
                        detail: format!(
                            "entry '{} / {}' matched by more than one factor",
                            e.phase, e.sub_phase
                        ),
                    });
                }
                factors[i] = factor;
                matched = true;
            }
        }
        if !matched {
            return Err(Error::UnknownPhase(name.to_string()));
        }
    }

    let total = profile.total_percent();
    let remaining: f64 = profile
        .entries
        .iter()
        .zip(&factors)
        .map(|(e, f)| e.percent / f)
        .sum();
    let new_time_fraction = remaining / total;
    Ok((new_time_fraction, 1.0 / new_time_fraction))
}

fn factor_is_infinite(factor: &f64) -> bool {
    factor.is_infinite()
}

/// One applied acceleration, as reported. Eliminated phases omit the factor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppliedFactor {
    pub name: String,
    #[serde(skip_serializing_if = "factor_is_infinite")]
    pub factor: f64,
    pub eliminated: bool,
}

/// Serializable result of one speedup analysis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeedupReport {
    pub system: String,
    pub factors: Vec<AppliedFactor>,
    pub new_time_fraction: f64,
    pub speedup: f64,
    pub time_reduction_percent: f64,
    /// Row sum of the memory-related sub-phases.
    pub memory_time_percent: f64,
    /// The figure quoted with the dataset; differs from the row sum slightly.
    pub memory_time_claim_percent: f64,
}

impl SpeedupReport {
    pub fn build(profile: &PhaseProfile, accelerations: &[(&str, f64)]) -> Result<Self> {
        let (new_time_fraction, speedup) = profile_speedup(profile, accelerations)?;
        Ok(Self {
            system: profile.system.clone(),
            factors: accelerations
                .iter()
                .map(|&(name, factor)| AppliedFactor {
                    name: name.to_string(),
                    factor,
                    eliminated: factor.is_infinite(),
                })
                .collect(),
            new_time_fraction,
            speedup,
            time_reduction_percent: (1.0 - new_time_fraction) * 100.0,
            memory_time_percent: profile.memory_subphase_percent(),
            memory_time_claim_percent: MEMORY_TIME_CLAIM_PERCENT,
        })
    }
}
