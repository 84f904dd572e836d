//! Threshold for horizontal clamping as the right clamp moves up.

use std::f64::consts::PI;

use willmore::threshold::asymptotic_probe;

fn main() -> willmore::Result<()> {
    let grid: Vec<f64> = (0..=12).map(|k| 10f64.powf(k as f64 / 4.0)).collect();
    for am in [1.0, 10.0] {
        println!("alpha_minus = {am}");
        for (ap, v) in asymptotic_probe(am, &grid)? {
            println!("  alpha_plus = {ap:>10.3}: {:.6}π", v / PI);
        }
    }
    Ok(())
}
