//! Cycle-level model of the accelerator: the pipelined k-step-lookahead
//! processing element and the N-row systolic array that feeds it.

mod pe;
mod systolic;

pub use pe::{initiation_interval, simulate_pe, CycleReport, PipelineConfig};
pub use systolic::{
    aggregate_throughput, simulate_systolic, speedup_vs_baseline, DispatchEntry, DispatchTrace,
    SystolicConfig, CPU_GPU_BASELINE_ELEMENTS_PER_SEC,
};
