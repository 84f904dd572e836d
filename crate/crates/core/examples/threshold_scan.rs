//! Closed energy of the two-arc configuration over axis points, and its minimum.

use std::f64::consts::PI;

use willmore::hyper::BoundaryPoint;
use willmore::revsurf::BoundaryData;
use willmore::threshold::{closed_energy_of_cx, minimize_threshold, sampled_closed_energy};

fn main() -> willmore::Result<()> {
    let bd = BoundaryData::horizontal(1.0, 2.0);
    for x in [-50.0, -10.0, -3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0, 10.0, 50.0] {
        println!("x = {x:>6}: {:.6}π", closed_energy_of_cx(&bd, BoundaryPoint::Finite(x))? / PI);
    }
    let th = minimize_threshold(&bd)?;
    println!("minimum {:.8}π at x* = {:?}, {:.6}π above 8π", th.value / PI, th.x_star, th.improvement() / PI);
    let x = th.x_star;
    println!("sampled with caps at N = 4000: {:.6}π", sampled_closed_energy(&bd, x, 4000)? / PI);
    Ok(())
}
