//! Normalizing a unit tangent with the frame map and carrying one tangent onto another.

use willmore::hyper::{frame_map, transport_map, BoundaryPoint, UnitTangent};

fn main() -> willmore::Result<()> {
    let t = UnitTangent::from_angle(2.0, 0.5, 1.0)?;
    let phi = frame_map(1.0, &t);
    let img = phi.apply_tangent(t);
    println!("frame map coefficients {:?}", phi.coefficients());
    println!("image of the tangent: base {:?}, direction {:?}", img.base().xy(), img.direction());

    let s = UnitTangent::from_angle(-1.0, 2.0, -0.3)?;
    let m = transport_map(&t, &s);
    let moved = m.apply_tangent(t);
    println!("transported base {:?} (target {:?})", moved.base().xy(), s.base().xy());
    println!("infinity goes to {:?}", m.apply_boundary(BoundaryPoint::Infinity));
    Ok(())
}
