//! A single processing element: functional output plus cycle accounting.
//!
//! Run with: cargo run -p gaesim --example pe_pipeline

use gaesim::{simulate_pe, GaeParams, PipelineConfig, StreamCodec};

fn main() -> gaesim::Result<()> {
    let rewards: Vec<f64> = (0..1024)
        .map(|i| ((i * 7) % 11) as f64 / 5.0 - 1.0)
        .collect();
    let values: Vec<f64> = (0..1024)
        .map(|i| ((i * 3) % 13) as f64 / 6.0 - 1.0)
        .collect();
    let reward_words: Vec<u64> = rewards.iter().map(|r| r.to_bits()).collect();
    let value_words: Vec<u64> = values.iter().map(|v| v.to_bits()).collect();
    let params = GaeParams::new(0.99, 0.95)?;

    println!("k | L | II | fill | total cycles (T=1024) | elements/s at 300 MHz");
    for (k, l) in [(1, 2), (2, 2), (3, 3), (2, 4)] {
        let cfg = PipelineConfig::new(k, l, 4, 3.0e8)?;
        let (result, report) = simulate_pe(
            &reward_words,
            &value_words,
            &StreamCodec::Float,
            &StreamCodec::Float,
            0.0,
            &params,
            &cfg,
        )?;
        println!(
            "{k} | {l} | {:>2} | {:>4} | {:>21} | {:.2e}",
            report.initiation_interval,
            report.fill_cycles,
            report.total_cycles,
            report.elements_per_second
        );
        // The numbers never depend on the timing configuration.
        assert_eq!(result.advantages.len(), 1024);
    }

    let full_rate = PipelineConfig::default().cycle_report(1024);
    println!(
        "\ndefault config: {} cycles for 1024 elements = fill {} + {} issues at II {}",
        full_rate.total_cycles, full_rate.fill_cycles, 1023, full_rate.initiation_interval
    );

    Ok(())
}
