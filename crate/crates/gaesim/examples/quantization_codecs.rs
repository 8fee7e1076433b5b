//! The reward and value codecs: what gets stored, what comes back, and how
//! big the round-trip error can be.
//!
//! Run with: cargo run -p gaesim --example quantization_codecs

use gaesim::{
    decode_rewards, decode_values, dequantize, encode_rewards, encode_values, quantize,
    QuantScheme, RunningStats,
};

fn main() -> gaesim::Result<()> {
    let scheme = QuantScheme::new(8, 4.0)?;
    println!(
        "scheme: {} bits over [-{}, {}), step = {}",
        scheme.bits(),
        scheme.range(),
        scheme.range(),
        scheme.step()
    );

    // Scalar round trip: in-range error is at most half a step.
    for x in [-3.9, -1.0, 0.0, 0.3, 2.625] {
        let code = quantize(x, &scheme)?;
        let back = dequantize(code, &scheme)?;
        println!(
            "x = {x:>8.5} -> code {code:>3} -> {back:>9.6} (err {:+.6})",
            back - x
        );
        assert!((back - x).abs() <= scheme.step() / 2.0);
    }

    // Rewards: dynamic standardization first, and the decoded stream STAYS in
    // standardized units.
    let rewards = [12.0, 15.0, 9.0, 14.0, 11.0, 8.0];
    let (_, encoded) = encode_rewards(&rewards, RunningStats::new(), &scheme)?;
    let decoded = decode_rewards(&encoded);
    println!("\nrewards (raw):          {rewards:.2?}");
    println!("rewards (decoded, std): {decoded:.4?}");

    // Values: block-coded, and decode restores the original scale from the
    // stored block statistics.
    let values = [105.0, 98.5, 110.25, 101.0, 95.75];
    let block = encode_values(&values, &scheme)?;
    let restored = decode_values(&block);
    println!(
        "\nvalue block: mu = {:.3}, sigma = {:.3}, codes = {:?}",
        block.stats().mu(),
        block.stats().sigma(),
        block.codes()
    );
    println!("values (raw):     {values:.2?}");
    println!("values (decoded): {restored:.3?}");
    let bound = scheme.step() / 2.0 * block.stats().sigma();
    for (v, r) in values.iter().zip(&restored) {
        assert!((v - r).abs() <= bound + 1e-12);
    }
    println!("every element within (step/2) * sigma = {bound:.4}");

    Ok(())
}
