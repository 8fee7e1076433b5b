//! One-dimensional systolic array of PE rows with work-conserving dispatch.
//!
//! Trajectories queue in input order; whichever row frees first takes the
//! next one (lowest row index on ties). For equal-length trajectories this
//! degenerates to plain round-robin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hw::pe::PipelineConfig;

/// Elements per second measured for a conventional CPU-GPU implementation of
/// the same reverse-order advantage pass; the reference point for speedups.
pub const CPU_GPU_BASELINE_ELEMENTS_PER_SEC: f64 = 9000.0;

/// Row count plus the per-row pipeline parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystolicConfig {
    rows: usize,
    pipeline: PipelineConfig,
}

impl SystolicConfig {
    pub fn new(rows: usize, pipeline: PipelineConfig) -> Result<Self> {
        if rows == 0 {
            return Err(Error::Invalid {
                context: "systolic config",
                detail: "row count must be at least 1".to_string(),
            });
        }
        Ok(Self { rows, pipeline })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn pipeline(&self) -> &PipelineConfig {
        &self.pipeline
    }
}

impl Default for SystolicConfig {
    fn default() -> Self {
        Self {
            rows: 64,
            pipeline: PipelineConfig::default(),
        }
    }
}

/// Where one trajectory ran: the row and its occupancy interval
/// `[start_cycle, end_cycle)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DispatchEntry {
    pub trajectory: usize,
    pub row: usize,
    pub start_cycle: u64,
    pub end_cycle: u64,
}

/// Full dispatch schedule; `makespan` is the largest end cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DispatchTrace {
    pub assignments: Vec<DispatchEntry>,
    pub makespan: u64,
}

/// Schedules a batch of trajectories (given by length) across the array.
pub fn simulate_systolic(traj_lengths: &[usize], cfg: &SystolicConfig) -> Result<DispatchTrace> {
    if traj_lengths.is_empty() {
        return Err(Error::Empty {
            context: "simulate_systolic",
        });
    }
    let mut row_free_at = vec![0u64; cfg.rows];
    let mut assignments = Vec::with_capacity(traj_lengths.len());
    for (trajectory, &len) in traj_lengths.iter().enumerate() {
        if len == 0 {
            return Err(Error::Invalid {
                context: "simulate_systolic",
                detail: format!("trajectory {trajectory} has zero length"),
            });
        }
        let row = earliest_free_row(&row_free_at);
        let start_cycle = row_free_at[row];
        let end_cycle = start_cycle + cfg.pipeline.cycle_report(len).total_cycles;
        row_free_at[row] = end_cycle;
        assignments.push(DispatchEntry {
            trajectory,
            row,
            start_cycle,
            end_cycle,
        });
    }
    let makespan = row_free_at.into_iter().max().unwrap_or(0);
    Ok(DispatchTrace {
        assignments,
        makespan,
    })
}

fn earliest_free_row(row_free_at: &[u64]) -> usize {
    let mut best = 0;
    for (row, &free_at) in row_free_at.iter().enumerate().skip(1) {
        if free_at < row_free_at[best] {
            best = row;
        }
    }
    best
}

/// Steady-state upper bound `rows * clock_hz / II` in elements per second.
pub fn aggregate_throughput(cfg: &SystolicConfig) -> f64 {
    cfg.rows as f64 * cfg.pipeline.clock_hz() / cfg.pipeline.initiation_interval() as f64
}

/// Ratio of an aggregate rate to a baseline rate (`baseline > 0`).
pub fn speedup_vs_baseline(aggregate_elements_per_sec: f64, baseline_elements_per_sec: f64) -> f64 {
    aggregate_elements_per_sec / baseline_elements_per_sec
}
