//! Critical arcs from a clamp to axis points, with their energies and curvature.

use std::f64::consts::PI;

use willmore::elastica::{side_energy, solve_boundary};
use willmore::hyper::{geodesic_curvature, BoundaryPoint, UnitTangent};
use willmore::revsurf::elastic_energy;

fn main() -> willmore::Result<()> {
    let start = UnitTangent::from_angle(0.0, 1.0, 0.0)?;
    for x in [BoundaryPoint::Finite(-3.0), BoundaryPoint::Finite(0.5), BoundaryPoint::Finite(1.0), BoundaryPoint::Finite(3.0), BoundaryPoint::Infinity] {
        let arc = solve_boundary(&start, x)?;
        let c = arc.sample(10_000)?;
        let mid = c.len() / 4;
        let s = c.params()[mid];
        println!(
            "x = {x:?}: {} s0 = {:+.6}, energy {:.6} (closed form {:.6}, quadrature {:.6}), κ_h({s:.2}) = {:+.6} vs {:+.6}",
            arc.branch().name(),
            arc.s0(),
            arc.energy(),
            side_energy(&start, x),
            elastic_energy(&c)?,
            geodesic_curvature(&c, mid)?,
            arc.curvature(s)
        );
    }
    let tilted = UnitTangent::from_angle(1.0, 0.5, PI / 3.0)?;
    let arc = solve_boundary(&tilted, BoundaryPoint::Finite(-2.0))?;
    println!("tilted clamp: reaches {:?} on the axis with energy {:.6}", arc.singular_point(), arc.energy());
    Ok(())
}
