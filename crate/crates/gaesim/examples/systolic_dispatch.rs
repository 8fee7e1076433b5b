//! Dispatch a batch of unequal trajectories across the systolic rows and
//! inspect the schedule, aggregate throughput, and speedup.
//!
//! Run with: cargo run -p gaesim --example systolic_dispatch

use gaesim::hw::CPU_GPU_BASELINE_ELEMENTS_PER_SEC;
use gaesim::{
    aggregate_throughput, simulate_systolic, speedup_vs_baseline, PipelineConfig, SystolicConfig,
};

fn main() -> gaesim::Result<()> {
    // Four rows, ten trajectories of mixed length.
    let cfg = SystolicConfig::new(4, PipelineConfig::default())?;
    let lengths = [100usize, 400, 250, 100, 300, 50, 120, 80, 500, 60];
    let trace = simulate_systolic(&lengths, &cfg)?;

    println!("trajectory | length | row | start..end");
    for entry in &trace.assignments {
        println!(
            "{:>10} | {:>6} | {:>3} | {}..{}",
            entry.trajectory,
            lengths[entry.trajectory],
            entry.row,
            entry.start_cycle,
            entry.end_cycle
        );
    }
    println!("makespan: {} cycles", trace.makespan);

    let total_work: u64 = lengths
        .iter()
        .map(|&l| cfg.pipeline().cycle_report(l).total_cycles)
        .sum();
    println!(
        "work-conservation bound: ceil({total_work} / 4) = {} cycles",
        total_work.div_ceil(4)
    );

    // Full-size array headline numbers.
    let full = SystolicConfig::default();
    let aggregate = aggregate_throughput(&full);
    println!(
        "\n64 rows at 300 MHz, II = 1: {:.2e} elements/s, {:.2e}x a {} elements/s baseline",
        aggregate,
        speedup_vs_baseline(aggregate, CPU_GPU_BASELINE_ELEMENTS_PER_SEC),
        CPU_GPU_BASELINE_ELEMENTS_PER_SEC
    );

    Ok(())
}
