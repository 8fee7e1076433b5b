//! Deterministic synthetic reward/value streams.
//!
//! Generation is seeded ChaCha8; the same spec always produces bit-identical
//! trajectories. The drifting kinds shift the per-trajectory mean or scale so
//! standardization and quantization see distributions that move over the
//! batch, like critic outputs do over training.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Normal, StudentT};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gae::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StreamKind {
    /// Unit normal, identical for every trajectory.
    StationaryNormal,
    /// Mean shifts by `drift_mean` per trajectory.
    DriftingMean,
    /// Scale multiplies by `1 + drift_scale` per trajectory.
    DriftingScale,
    /// Student-t with 3 degrees of freedom.
    HeavyTail,
}

impl StreamKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "stationary-normal" => Ok(Self::StationaryNormal),
            "drifting-mean" => Ok(Self::DriftingMean),
            "drifting-scale" => Ok(Self::DriftingScale),
            "heavy-tail" => Ok(Self::HeavyTail),
            other => Err(Error::Invalid {
                context: "stream kind",
                detail: format!(
                    "unknown kind '{other}' (expected stationary-normal, drifting-mean, \
                     drifting-scale or heavy-tail)"
                ),
            }),
        }
    }
}

impl std::fmt::Display for StreamKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Self::StationaryNormal => "stationary-normal",
            Self::DriftingMean => "drifting-mean",
            Self::DriftingScale => "drifting-scale",
            Self::HeavyTail => "heavy-tail",
        };
        f.pad(name)
    }
}

/// Shape, size, seed, and drift parameters of one synthetic batch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StreamSpec {
    pub kind: StreamKind,
    pub num_traj: usize,
    pub timesteps: usize,
    pub seed: u64,
    /// Per-trajectory additive mean shift for [`StreamKind::DriftingMean`].
    pub drift_mean: f64,
    /// Per-trajectory multiplicative scale step for
    /// [`StreamKind::DriftingScale`].
    pub drift_scale: f64,
}

impl StreamSpec {
    pub fn new(kind: StreamKind, num_traj: usize, timesteps: usize, seed: u64) -> Self {
        Self {
            kind,
            num_traj,
            timesteps,
            seed,
            drift_mean: 0.25,
            drift_scale: 0.05,
        }
    }
}

/// Generates the batch; a [`StreamSpec`] (seed included) always produces the
/// same trajectories.
pub fn generate_streams(spec: &StreamSpec) -> Result<Vec<Trajectory>> {
    if spec.num_traj == 0 || spec.timesteps == 0 {
        return Err(Error::Invalid {
            context: "stream spec",
            detail: format!(
                "num_traj ({}) and timesteps ({}) must be positive",
                spec.num_traj, spec.timesteps
            ),
        });
    }
    if !spec.drift_mean.is_finite() || !spec.drift_scale.is_finite() || spec.drift_scale <= -1.0 {
        return Err(Error::Invalid {
            context: "stream spec",
            detail: "drift parameters must be finite with drift_scale > -1".to_string(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut trajectories = Vec::with_capacity(spec.num_traj);
    for i in 0..spec.num_traj {
        let (mean, sigma) = match spec.kind {
            StreamKind::StationaryNormal | StreamKind::HeavyTail => (0.0, 1.0),
            StreamKind::DriftingMean => (spec.drift_mean * i as f64, 1.0),
            StreamKind::DriftingScale => (0.0, (1.0 + spec.drift_scale).powi(i as i32)),
        };
        let mut draw: Box<dyn FnMut(&mut ChaCha8Rng) -> f64> = match spec.kind {
            StreamKind::HeavyTail => {
                let dist = StudentT::new(3.0).expect("valid degrees of freedom");
                Box::new(move |rng| rng.sample(dist))
            }
            _ => {
                let dist = Normal::new(mean, sigma).expect("valid normal parameters");
                Box::new(move |rng| rng.sample(dist))
            }
        };
        let rewards: Vec<f64> = (0..spec.timesteps).map(|_| draw(&mut rng)).collect();
        let values: Vec<f64> = (0..spec.timesteps).map(|_| draw(&mut rng)).collect();
        let bootstrap = draw(&mut rng);
        trajectories.push(Trajectory::new(rewards, values, bootstrap)?);
    }
    Ok(trajectories)
}
