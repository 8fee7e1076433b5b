//! Numerical datapath and performance model for a hardware advantage
//! estimator.
//!
//! The library has three layers:
//!
//! * **Datapath** — [`gae`] (TD residuals, the sequential recurrence, its
//!   k-step-lookahead re-association, rewards-to-go), [`stats`] (running
//!   Welford statistics for dynamic reward standardization, block statistics
//!   for values), and [`quant`] (n-bit uniform codecs and the five
//!   experiment datapath variants).
//! * **Hardware model** — [`hw`] (pipelined PE timing, initiation-interval
//!   arithmetic, systolic dispatch, throughput and speedup figures) and
//!   [`mem`] (dual-port FILO BRAM stack with a per-cycle access trace,
//!   bandwidth/storage calculators, and the end-to-end
//!   push/pop/compute/write-back pipeline).
//! * **Harness** — [`harness`] (seeded stream generation, fidelity
//!   experiments and bit-width sweeps, phase-profile speedup analysis,
//!   consolidated reports, file I/O).
//!
//! Everything is deterministic: seeded generation uses ChaCha8, simulations
//! share no global state, and identical inputs produce bit-identical outputs.
//! See the `examples/` directory for one runnable walkthrough per capability.

pub mod error;
pub mod gae;
pub mod harness;
pub mod hw;
pub mod mem;
pub mod quant;
pub mod stats;

pub use error::{Error, Result};
pub use gae::{
    compute_advantages, gae_lookahead, gae_sequential, gae_truncated_sum, rewards_to_go,
    td_residuals, AdvantageResult, GaeParams, Trajectory,
};
pub use hw::{
    aggregate_throughput, initiation_interval, simulate_pe, simulate_systolic, speedup_vs_baseline,
    CycleReport, DispatchTrace, PipelineConfig, SystolicConfig,
};
pub use mem::{
    bandwidth_requirement, bram_blocks_for_bandwidth, bram_blocks_for_storage,
    dram_bytes_per_cycle, port_conflict_check, run_stack_pipeline, AccessMix, BramGeometry,
    LayoutConfig, PipelineCoding, StackMemory, StackPipelineConfig,
};
pub use quant::{
    decode_rewards, decode_values, dequantize, encode_rewards, encode_values, quantize,
    DatapathVariant, QuantScheme, QuantizedRewards, QuantizedValueBlock, StreamCodec,
};
pub use stats::{
    block_destandardize, block_standardize, block_stats, dynamic_standardize, BlockStats,
    RunningStats, SIGMA_FLOOR,
};
