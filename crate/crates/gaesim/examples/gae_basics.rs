//! Compute advantages and rewards-to-go for a trajectory, and check the
//! sequential recurrence against the brute-force exponential sum.
//!
//! Run with: cargo run -p gaesim --example gae_basics

use gaesim::{
    compute_advantages, gae_sequential, gae_truncated_sum, td_residuals, GaeParams, Trajectory,
};

fn main() -> gaesim::Result<()> {
    let traj = Trajectory::new(
        vec![1.0, 0.5, -0.25, 2.0, 0.0],
        vec![0.8, 0.6, 0.4, 0.9, 0.3],
        0.15, // critic's estimate for the state after the last step
    )?;
    let params = GaeParams::new(0.99, 0.95)?;

    let deltas = td_residuals(&traj, &params);
    println!("TD residuals: {deltas:.4?}");

    let result = compute_advantages(&traj, &params)?;
    println!("advantages:   {:.4?}", result.advantages);
    println!("rewards-to-go:{:.4?}", result.rtgs);

    // The O(T) reverse recurrence and the O(T^2) weighted sum are two routes
    // to the same numbers.
    let sequential = gae_sequential(&deltas, params.decay())?;
    let brute_force = gae_truncated_sum(&deltas, params.decay())?;
    let max_diff = sequential
        .iter()
        .zip(&brute_force)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("max |sequential - truncated sum| = {max_diff:.3e}");
    assert!(max_diff <= 1e-12);

    Ok(())
}
