//! Consolidated hardware and memory reports.
//!
//! Every number here is produced by calling the corresponding model operation
//! directly; the report layer never re-derives arithmetic of its own.

use serde::Serialize;

use crate::hw::{aggregate_throughput, simulate_systolic, speedup_vs_baseline, SystolicConfig};
use crate::mem::{
    bandwidth_requirement, bram_blocks_for_bandwidth, bram_blocks_for_storage,
    dram_bytes_per_cycle, read_bytes_per_cycle, write_bytes_per_cycle, AccessMix, BramGeometry,
    LayoutConfig,
};

/// Reference points for the comparative figures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportOptions {
    /// CPU-GPU advantage-pass rate the speedup is measured against.
    pub baseline_elements_per_sec: f64,
    /// Sustained external memory bandwidth for the DRAM comparison.
    pub dram_bytes_per_sec: f64,
    /// BRAM blocks available on the target device (utilization divisor).
    pub device_bram_blocks: u64,
}

impl Default for ReportOptions {
    /// 9000 elements/s baseline, DDR4-3200 at 25 GB/s, 312-block device.
    fn default() -> Self {
        Self {
            baseline_elements_per_sec: 9000.0,
            dram_bytes_per_sec: 25e9,
            device_bram_blocks: 312,
        }
    }
}

/// Bandwidth and storage accounting for one layout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MemReport {
    pub num_traj: usize,
    pub timesteps: usize,
    pub element_bits: u32,
    pub writeback_bits: u32,
    pub in_place: bool,
    pub read_bytes_per_cycle: u64,
    pub write_bytes_per_cycle: u64,
    pub total_bytes_per_cycle: u64,
    pub dram_bytes_per_sec: f64,
    pub dram_bytes_per_cycle: f64,
    /// Fetch demand minus DRAM supply; positive means DRAM cannot keep up.
    pub dram_read_shortfall_bytes_per_cycle: f64,
    pub storage_bytes: u64,
    pub bram_blocks_storage: u64,
    pub bram_blocks_bandwidth: u64,
    pub device_bram_blocks: u64,
    pub storage_utilization_percent: f64,
    pub bandwidth_utilization_percent: f64,
}

/// Pipeline, throughput, and speedup figures plus the memory accounting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HwReport {
    pub rows: usize,
    pub k: usize,
    pub feedback_latency: u64,
    pub frontend_latency: u64,
    pub clock_hz: f64,
    pub initiation_interval: u64,
    pub fill_cycles: u64,
    /// Single-PE cycles for one trajectory of the layout's length.
    pub trajectory_cycles: u64,
    /// Makespan of the layout's whole batch across the array.
    pub batch_makespan_cycles: u64,
    pub per_pe_elements_per_sec: f64,
    pub aggregate_elements_per_sec: f64,
    pub baseline_elements_per_sec: f64,
    pub speedup_vs_baseline: f64,
    pub memory: MemReport,
}

pub fn report_mem(
    layout: &LayoutConfig,
    geometry: &BramGeometry,
    clock_hz: f64,
    opts: &ReportOptions,
) -> MemReport {
    let read = read_bytes_per_cycle(layout);
    let write = write_bytes_per_cycle(layout);
    let total = bandwidth_requirement(layout, AccessMix::ReadWrite);
    let dram_per_cycle = dram_bytes_per_cycle(opts.dram_bytes_per_sec, clock_hz);
    let storage_blocks = bram_blocks_for_storage(layout, geometry);
    let bandwidth_blocks = bram_blocks_for_bandwidth(total, geometry);
    MemReport {
        num_traj: layout.num_traj,
        timesteps: layout.timesteps,
        element_bits: layout.element_bits,
        writeback_bits: layout.writeback_bits,
        in_place: layout.in_place,
        read_bytes_per_cycle: read,
        write_bytes_per_cycle: write,
        total_bytes_per_cycle: total,
        dram_bytes_per_sec: opts.dram_bytes_per_sec,
        dram_bytes_per_cycle: dram_per_cycle,
        dram_read_shortfall_bytes_per_cycle: read as f64 - dram_per_cycle,
        storage_bytes: layout.storage_bytes(),
        bram_blocks_storage: storage_blocks,
        bram_blocks_bandwidth: bandwidth_blocks,
        device_bram_blocks: opts.device_bram_blocks,
        storage_utilization_percent: 100.0 * storage_blocks as f64 / opts.device_bram_blocks as f64,
        bandwidth_utilization_percent: 100.0 * bandwidth_blocks as f64
            / opts.device_bram_blocks as f64,
    }
}

pub fn report_hw_with(
    cfg: &SystolicConfig,
    layout: &LayoutConfig,
    geometry: &BramGeometry,
    opts: &ReportOptions,
) -> HwReport {
    let pipeline = cfg.pipeline();
    let aggregate = aggregate_throughput(cfg);
    let batch = simulate_systolic(&vec![layout.timesteps; layout.num_traj], cfg)
        .expect("layout guarantees a nonempty batch of positive lengths");
    HwReport {
        rows: cfg.rows(),
        k: pipeline.k(),
        feedback_latency: pipeline.feedback_latency(),
        frontend_latency: pipeline.frontend_latency(),
        clock_hz: pipeline.clock_hz(),
        initiation_interval: pipeline.initiation_interval(),
        fill_cycles: pipeline.fill_cycles(),
        trajectory_cycles: pipeline.cycle_report(layout.timesteps).total_cycles,
        batch_makespan_cycles: batch.makespan,
        per_pe_elements_per_sec: pipeline.clock_hz() / pipeline.initiation_interval() as f64,
        aggregate_elements_per_sec: aggregate,
        baseline_elements_per_sec: opts.baseline_elements_per_sec,
        speedup_vs_baseline: speedup_vs_baseline(aggregate, opts.baseline_elements_per_sec),
        memory: report_mem(layout, geometry, pipeline.clock_hz(), opts),
    }
}

/// [`report_hw_with`] under the default geometry and reference points.
pub fn report_hw(cfg: &SystolicConfig, layout: &LayoutConfig) -> HwReport {
    report_hw_with(
        cfg,
        layout,
        &BramGeometry::default(),
        &ReportOptions::default(),
    )
}

impl MemReport {
    pub fn csv_header() -> Vec<&'static str> {
        vec![
            "num_traj",
            "timesteps",
            "element_bits",
            "writeback_bits",
            "in_place",
            "read_bytes_per_cycle",
            "write_bytes_per_cycle",
            "total_bytes_per_cycle",
            "dram_bytes_per_sec",
            "dram_bytes_per_cycle",
            "dram_read_shortfall_bytes_per_cycle",
            "storage_bytes",
            "bram_blocks_storage",
            "bram_blocks_bandwidth",
            "device_bram_blocks",
            "storage_utilization_percent",
            "bandwidth_utilization_percent",
        ]
    }

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.num_traj.to_string(),
            self.timesteps.to_string(),
            self.element_bits.to_string(),
            self.writeback_bits.to_string(),
            self.in_place.to_string(),
            self.read_bytes_per_cycle.to_string(),
            self.write_bytes_per_cycle.to_string(),
            self.total_bytes_per_cycle.to_string(),
            self.dram_bytes_per_sec.to_string(),
            self.dram_bytes_per_cycle.to_string(),
            self.dram_read_shortfall_bytes_per_cycle.to_string(),
            self.storage_bytes.to_string(),
            self.bram_blocks_storage.to_string(),
            self.bram_blocks_bandwidth.to_string(),
            self.device_bram_blocks.to_string(),
            self.storage_utilization_percent.to_string(),
            self.bandwidth_utilization_percent.to_string(),
        ]
    }
}

impl HwReport {
    pub fn csv_header() -> Vec<&'static str> {
        let mut header = vec![
            "rows",
            "k",
            "feedback_latency",
            "frontend_latency",
            "clock_hz",
            "initiation_interval",
            "fill_cycles",
            "trajectory_cycles",
            "batch_makespan_cycles",
            "per_pe_elements_per_sec",
            "aggregate_elements_per_sec",
            "baseline_elements_per_sec",
            "speedup_vs_baseline",
        ];
        header.extend(MemReport::csv_header());
        header
    }

    pub fn csv_row(&self) -> Vec<String> {
        let mut row = vec![
            self.rows.to_string(),
            self.k.to_string(),
            self.feedback_latency.to_string(),
            self.frontend_latency.to_string(),
            self.clock_hz.to_string(),
            self.initiation_interval.to_string(),
            self.fill_cycles.to_string(),
            self.trajectory_cycles.to_string(),
            self.batch_makespan_cycles.to_string(),
            self.per_pe_elements_per_sec.to_string(),
            self.aggregate_elements_per_sec.to_string(),
            self.baseline_elements_per_sec.to_string(),
            self.speedup_vs_baseline.to_string(),
        ];
        row.extend(self.memory.csv_row());
        row
    }
}
