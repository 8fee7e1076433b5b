//! On-chip memory model: bandwidth/storage calculators for the dual-port
//! BRAM stack, the FILO stack itself with a per-cycle access trace, and the
//! end-to-end push/pop/compute/write-back pipeline driver.

mod pipeline;
mod stack;

pub use pipeline::{run_stack_pipeline, PipelineCoding, StackPipelineConfig, StackPipelineRun};
pub use stack::{
    bytes_by_cycle, port_conflict_check, AccessKind, AccessRecord, Bank, Port, PortViolation,
    StackMemory,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Batch geometry and element widths for the reward/value banks.
///
/// `element_bits` is the stored width of one reward or value; `writeback_bits`
/// the width of one result element. Both are accounting parameters for the
/// bandwidth and storage arithmetic. In-place mode overwrites the input slots,
/// so it requires `writeback_bits == element_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutConfig {
    pub num_traj: usize,
    pub timesteps: usize,
    pub element_bits: u32,
    pub writeback_bits: u32,
    pub in_place: bool,
}

impl LayoutConfig {
    pub fn new(
        num_traj: usize,
        timesteps: usize,
        element_bits: u32,
        writeback_bits: u32,
        in_place: bool,
    ) -> Result<Self> {
        if num_traj == 0 || timesteps == 0 {
            return Err(Error::Invalid {
                context: "layout config",
                detail: "trajectory count and timesteps must be positive".to_string(),
            });
        }
        for (name, bits) in [
            ("element_bits", element_bits),
            ("writeback_bits", writeback_bits),
        ] {
            if !matches!(bits, 8 | 16 | 32) {
                return Err(Error::Invalid {
                    context: "layout config",
                    detail: format!("{name} must be 8, 16 or 32, got {bits}"),
                });
            }
        }
        if in_place && writeback_bits != element_bits {
            return Err(Error::Invalid {
                context: "layout config",
                detail: format!(
                    "in-place updates overwrite the input slots, so writeback width \
                     ({writeback_bits}) must equal element width ({element_bits})"
                ),
            });
        }
        Ok(Self {
            num_traj,
            timesteps,
            element_bits,
            writeback_bits,
            in_place,
        })
    }

    /// Bytes read per timestep across both input streams
    /// (`num_traj * element_bytes * 2`).
    pub fn bytes_per_timestep(&self) -> u64 {
        self.num_traj as u64 * u64::from(self.element_bits / 8) * 2
    }

    /// Total occupied bytes: the input banks, plus separate result banks when
    /// results do not overwrite in place.
    pub fn storage_bytes(&self) -> u64 {
        let input = self.bytes_per_timestep() * self.timesteps as u64;
        if self.in_place {
            input
        } else {
            let results = self.num_traj as u64
                * u64::from(self.writeback_bits / 8)
                * 2
                * self.timesteps as u64;
            input + results
        }
    }
}

impl Default for LayoutConfig {
    /// 64 trajectories x 1024 timesteps of 8-bit codes, updated in place.
    fn default() -> Self {
        Self {
            num_traj: 64,
            timesteps: 1024,
            element_bits: 8,
            writeback_bits: 8,
            in_place: true,
        }
    }
}

/// Fixed parameters of one dual-port BRAM block on the target device.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BramGeometry {
    pub block_capacity_bits: u64,
    pub ports_per_block: u64,
    pub bytes_per_port_per_cycle: u64,
}

impl Default for BramGeometry {
    /// 36 Kb blocks with two 4-byte ports.
    fn default() -> Self {
        Self {
            block_capacity_bits: 36 * 1024,
            ports_per_block: 2,
            bytes_per_port_per_cycle: 4,
        }
    }
}

/// Which transfers to count when sizing bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AccessMix {
    /// Fetch of rewards and values only.
    ReadOnly,
    /// Fetch plus result write-back in the same cycle.
    ReadWrite,
}

/// Bytes fetched per cycle for full-width parallel access to both input
/// streams.
pub fn read_bytes_per_cycle(layout: &LayoutConfig) -> u64 {
    layout.bytes_per_timestep()
}

/// Bytes written per cycle for both result streams.
pub fn write_bytes_per_cycle(layout: &LayoutConfig) -> u64 {
    layout.num_traj as u64 * u64::from(layout.writeback_bits / 8) * 2
}

/// Per-cycle byte demand of the layout under the given access mix.
pub fn bandwidth_requirement(layout: &LayoutConfig, mix: AccessMix) -> u64 {
    match mix {
        AccessMix::ReadOnly => read_bytes_per_cycle(layout),
        AccessMix::ReadWrite => read_bytes_per_cycle(layout) + write_bytes_per_cycle(layout),
    }
}

/// Sustained external bandwidth normalized by the clock.
pub fn dram_bytes_per_cycle(bandwidth_bytes_per_sec: f64, clock_hz: f64) -> f64 {
    bandwidth_bytes_per_sec / clock_hz
}

/// Blocks needed to hold the layout's banks by capacity alone.
pub fn bram_blocks_for_storage(layout: &LayoutConfig, geometry: &BramGeometry) -> u64 {
    let block_bytes = geometry.block_capacity_bits / 8;
    layout.storage_bytes().div_ceil(block_bytes)
}

/// Blocks needed to move `bytes_per_cycle` each cycle through the available
/// ports.
pub fn bram_blocks_for_bandwidth(bytes_per_cycle: u64, geometry: &BramGeometry) -> u64 {
    let block_bytes_per_cycle = geometry.bytes_per_port_per_cycle * geometry.ports_per_block;
    bytes_per_cycle.div_ceil(block_bytes_per_cycle)
}
