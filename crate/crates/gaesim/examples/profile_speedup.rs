//! What accelerating the advantage phase is worth at the whole-run level,
//! from the bundled per-phase time breakdowns.
//!
//! Run with: cargo run -p gaesim --example profile_speedup

use gaesim::harness::{profile_speedup, PhaseProfile, MEMORY_TIME_CLAIM_PERCENT};

fn main() -> gaesim::Result<()> {
    let profile = PhaseProfile::cpu_gpu();
    println!("{} profile:", profile.system);
    for e in &profile.entries {
        println!("  {:<22} {:<22} {:>6.2}%", e.phase, e.sub_phase, e.percent);
    }
    println!("  column sum: {:.2}%\n", profile.total_percent());

    // Headline: the advantage phase goes to hardware and vanishes from the
    // host timeline.
    let (fraction, speedup) = profile_speedup(&profile, &[("GAE", f64::INFINITY)])?;
    println!(
        "eliminate GAE: {:.2}% of time removed, whole-run speedup {speedup:.3}x",
        (1.0 - fraction) * 100.0
    );

    // Amdahl sanity check for a single accelerated sub-phase.
    let share = 46.58 / profile.total_percent();
    let (_, env_speedup) = profile_speedup(&profile, &[("Environment Run", 2.0)])?;
    let amdahl = 1.0 / (1.0 - share + share / 2.0);
    println!("halve Environment Run: speedup {env_speedup:.6} (Amdahl: {amdahl:.6})");
    assert!((env_speedup - amdahl).abs() <= 1e-12);

    // The memory-handling rows, which on-chip storage attacks directly.
    println!(
        "\nmemory-related sub-phases sum to {:.2}% (quoted alongside the dataset: {:.2}%)",
        profile.memory_subphase_percent(),
        MEMORY_TIME_CLAIM_PERCENT
    );

    Ok(())
}
