//! Compares initial curves with their threshold and with the 8π bound.

use std::f64::consts::PI;

use willmore::threshold::admissibility;
use willmore::SampledCurve;

fn main() -> willmore::Result<()> {
    let curves = [
        ("catenoid", SampledCurve::from_fn(-1.0, 1.0, 1000, |x| [x, x.cosh()])?),
        ("bump", SampledCurve::from_fn(-1.0, 1.0, 1000, |x| [x, 1.0 + 0.3 * (PI * x).cos().powi(2)])?),
        ("wave", SampledCurve::from_fn(-1.0, 1.0, 1000, |x| [x, 1.0 + 0.3 * (8.0 * x).sin()])?),
    ];
    for (name, c) in &curves {
        let r = admissibility(c)?;
        println!(
            "{name:>9}: energy {:.4}π, threshold {:.4}π, 8π bound: {}, threshold: {}",
            r.curve_energy.unwrap() / PI,
            r.value / PI,
            if r.admissible_schlierf == Some(true) { "admissible" } else { "not admissible" },
            if r.admissible_improved == Some(true) { "admissible" } else { "not admissible" },
        );
    }
    Ok(())
}
