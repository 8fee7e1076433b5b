//! Why the data lives on chip: per-cycle byte demand vs. what DRAM can
//! supply, and how many BRAM blocks cover storage and bandwidth.
//!
//! Run with: cargo run -p gaesim --example bandwidth_analysis

use gaesim::{
    bandwidth_requirement, bram_blocks_for_bandwidth, bram_blocks_for_storage,
    dram_bytes_per_cycle, AccessMix, BramGeometry, LayoutConfig,
};

fn main() -> gaesim::Result<()> {
    let clock_hz = 3.0e8;
    let dram = dram_bytes_per_cycle(25e9, clock_hz);
    let geometry = BramGeometry::default();

    // Full-precision storage: 64 trajectories x 32-bit rewards and values.
    let wide = LayoutConfig::new(64, 1024, 32, 32, true)?;
    let wide_read = bandwidth_requirement(&wide, AccessMix::ReadOnly);
    println!("32-bit layout: fetch needs {wide_read} B/cycle");
    println!("DDR4-3200 at 25 GB/s and 300 MHz supplies {dram:.1} B/cycle");
    println!(
        "shortfall: {:.1} B/cycle -> DRAM cannot feed 64 parallel PEs\n",
        wide_read as f64 - dram
    );

    // Quantized in-place layout: reads + result writes.
    let quantized = LayoutConfig::default();
    let demand = bandwidth_requirement(&quantized, AccessMix::ReadWrite);
    println!(
        "8-bit in-place layout: {} B read + {} B written = {demand} B/cycle",
        bandwidth_requirement(&quantized, AccessMix::ReadOnly),
        demand - bandwidth_requirement(&quantized, AccessMix::ReadOnly),
    );

    let storage = bram_blocks_for_storage(&quantized, &geometry);
    let bandwidth = bram_blocks_for_bandwidth(demand, &geometry);
    println!(
        "storage: {} bytes -> {storage} BRAM blocks ({:.1}% of a 312-block device)",
        quantized.storage_bytes(),
        100.0 * storage as f64 / 312.0
    );
    println!(
        "bandwidth: {demand} B/cycle over {}-byte dual ports -> {bandwidth} blocks ({:.1}%)",
        geometry.bytes_per_port_per_cycle,
        100.0 * bandwidth as f64 / 312.0
    );
    println!(
        "\nin-place updates keep the footprint at {} KB; separate result banks would double it",
        quantized.storage_bytes() / 1024
    );

    Ok(())
}
