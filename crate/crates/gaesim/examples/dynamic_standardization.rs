//! Dynamic standardization: rewards scaled against all-history running
//! statistics, so later epochs keep their relative magnitudes.
//!
//! Run with: cargo run -p gaesim --example dynamic_standardization

use gaesim::harness::{generate_streams, StreamKind, StreamSpec};
use gaesim::{dynamic_standardize, RunningStats};

fn main() -> gaesim::Result<()> {
    // A batch whose reward scale grows trajectory over trajectory, the way
    // returns grow over training.
    let spec = StreamSpec {
        drift_scale: 0.5,
        ..StreamSpec::new(StreamKind::DriftingScale, 6, 2000, 7)
    };
    let batch = generate_streams(&spec)?;

    let mut stats = RunningStats::new();
    println!("epoch | raw std (this epoch) | running std (all history) | z in [-4, 4]");
    for (epoch, traj) in batch.iter().enumerate() {
        let standardized;
        (stats, standardized) = dynamic_standardize(stats, traj.rewards())?;
        let raw_std = {
            let m = traj.rewards().iter().sum::<f64>() / traj.len() as f64;
            (traj
                .rewards()
                .iter()
                .map(|r| (r - m) * (r - m))
                .sum::<f64>()
                / traj.len() as f64)
                .sqrt()
        };
        let in_range = standardized.iter().filter(|z| z.abs() <= 4.0).count();
        println!(
            "{epoch:>5} | {raw_std:>20.3} | {:>25.3} | {:>5.1}%",
            stats.std()?,
            100.0 * in_range as f64 / standardized.len() as f64,
        );
    }

    // The accumulator is one logical stream: two calls compose exactly like
    // one concatenated call.
    let (split, _) = dynamic_standardize(RunningStats::new(), &[1.0, 2.0])?;
    let (split, _) = dynamic_standardize(split, &[3.0])?;
    let (joint, _) = dynamic_standardize(RunningStats::new(), &[1.0, 2.0, 3.0])?;
    assert_eq!(split, joint);
    println!(
        "\nsplit-epoch and concatenated statistics agree: mean = {}",
        joint.mean()
    );

    Ok(())
}
