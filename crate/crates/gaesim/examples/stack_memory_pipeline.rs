//! The whole machine end to end: encode a batch, push it into the FILO
//! stack, pop rows in reverse, run the PEs, write results back in place
//! through the second port, and audit the access trace.
//!
//! Run with: cargo run -p gaesim --example stack_memory_pipeline

use gaesim::harness::{generate_streams, StreamKind, StreamSpec};
use gaesim::mem::bytes_by_cycle;
use gaesim::{
    bandwidth_requirement, compute_advantages, port_conflict_check, run_stack_pipeline, AccessMix,
    GaeParams, LayoutConfig, PipelineCoding, PipelineConfig, QuantScheme, StackPipelineConfig,
    StreamCodec, Trajectory,
};

fn main() -> gaesim::Result<()> {
    let layout = LayoutConfig::new(64, 256, 8, 8, true)?;
    let batch = generate_streams(&StreamSpec::new(
        StreamKind::StationaryNormal,
        layout.num_traj,
        layout.timesteps,
        42,
    ))?;
    let scheme = QuantScheme::new(8, 4.0)?;
    let cfg = StackPipelineConfig {
        layout,
        pipeline: PipelineConfig::default(),
        params: GaeParams::new(0.99, 0.95)?,
        coding: PipelineCoding::Quantized {
            input: scheme,
            writeback: scheme,
        },
    };

    let run = run_stack_pipeline(&batch, &cfg)?;
    println!(
        "processed {} x {} elements in {} cycles (fill {} + {} issues)",
        cfg.layout.num_traj,
        cfg.layout.timesteps,
        run.cycle_report.total_cycles,
        run.cycle_report.fill_cycles,
        cfg.layout.timesteps - 1
    );

    // The banks now hold results; decode error vs. the exact computation over
    // the streams the PEs consumed is just the write-back quantization.
    let StreamCodec::QuantizedBlock(wb, stats) = &run.advantage_codec else {
        unreachable!()
    };
    let bound = wb.step() / 2.0 * stats.sigma();
    let mut max_err = 0.0f64;
    for (i, source) in batch.iter().enumerate() {
        let exact = compute_advantages(
            &Trajectory::new(
                run.pe_rewards[i].clone(),
                run.pe_values[i].clone(),
                source.bootstrap_value(),
            )?,
            &cfg.params,
        )?;
        for t in 0..cfg.layout.timesteps {
            let z = (exact.advantages[t] - stats.mu()) / stats.sigma();
            if z.abs() <= wb.range() {
                max_err = max_err.max((run.advantages[i][t] - exact.advantages[t]).abs());
            }
        }
    }
    println!("max in-range advantage decode error: {max_err:.3e} (bound {bound:.3e})");
    assert!(max_err <= bound + 1e-9);

    // Port audit: reads on port A, delayed writes on port B, never two
    // accesses on one (block, port) in a cycle.
    let violations = port_conflict_check(run.memory.trace());
    println!("port conflicts: {}", violations.len());
    assert!(violations.is_empty());

    // Steady-state traffic matches the analytical figure.
    let per_cycle = bytes_by_cycle(run.memory.trace());
    let steady_cycle = cfg.layout.timesteps as u64 + run.cycle_report.fill_cycles + 10;
    println!(
        "bytes moved in a steady-state cycle: {} (analytical: {})",
        per_cycle[&steady_cycle],
        bandwidth_requirement(&cfg.layout, AccessMix::ReadWrite)
    );

    Ok(())
}
