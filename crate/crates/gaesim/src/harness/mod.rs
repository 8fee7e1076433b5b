//! Experiment harness: synthetic stream generation, the five datapath
//! variants as fidelity experiments, bit-width sweeps, consolidated hardware
//! and memory reports, the phase-profile speedup model, and file I/O.

pub mod fidelity;
pub mod io;
pub mod profile;
pub mod report;
pub mod streams;

pub use fidelity::{quant_sweep, run_variant, FidelityReport};
pub use io::{parse_trajectories, TrajectoryRecord};
pub use profile::{
    profile_speedup, PhaseEntry, PhaseProfile, SpeedupReport, MEMORY_TIME_CLAIM_PERCENT,
};
pub use report::{report_hw, report_hw_with, report_mem, HwReport, MemReport, ReportOptions};
pub use streams::{generate_streams, StreamKind, StreamSpec};
