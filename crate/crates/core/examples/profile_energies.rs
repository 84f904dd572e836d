//! Willmore and elastic energies of a few profile curves, and the identity linking them.

use std::f64::consts::PI;

use willmore::revsurf::{bryant_griffiths_check, closed_willmore_energy, energy_report, read_boundary_data};
use willmore::SampledCurve;

fn main() -> willmore::Result<()> {
    let n = 4000;
    let catenoid = SampledCurve::from_fn(-1.0, 1.0, n, |x| [x, x.cosh()])?;
    let sphere = SampledCurve::from_fn(0.0, PI, n, |t| match t {
        t if t == 0.0 => [-1.0, 0.0],
        t if t == PI => [1.0, 0.0],
        t => [-t.cos(), t.sin()],
    })?;
    let bump = SampledCurve::from_fn(-1.0, 1.0, n, |x| [x, 1.0 + 0.2 * (PI * x).cos()])?;

    for (name, c) in [("catenoid", &catenoid), ("sphere", &sphere), ("bump", &bump)] {
        let r = energy_report(c)?;
        println!(
            "{name:>9}: W_e = {:.6}π, W_h = {:.6}, bracket = {:.6}, hyperbolic length = {}",
            r.willmore / PI,
            r.elastic,
            r.boundary_term,
            r.hyp_length
        );
    }
    let (lhs, rhs) = bryant_griffiths_check(&bump)?;
    println!("bump: (2/π) W_e = {lhs:.8}, W_h - 4 [..] = {rhs:.8}");

    let bd = read_boundary_data(&catenoid)?;
    let closed = closed_willmore_energy(&catenoid, &bd)?;
    println!("catenoid closed with both caps: {:.6}π", closed.closed_willmore.unwrap() / PI);
    Ok(())
}
