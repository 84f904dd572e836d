//! Geometry of the hyperbolic upper half-plane: points, unit tangents,
//! orientation preserving Möbius maps, frames, inversions, curvature and length.

use serde::{Deserialize, Serialize};

use crate::curve::SampledCurve;
use crate::error::{Error, Result};

/// Point of the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    x: f64,
    y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) || y <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "({x}, {y}) is not a point of the open upper half-plane"
            )));
        }
        Ok(Self { x, y })
    }

    pub(crate) fn raw(x: f64, y: f64) -> Self {
        debug_assert!(y > 0.0);
        Self { x, y }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn xy(&self) -> [f64; 2] {
        [self.x, self.y]
    }

    /// Hyperbolic distance, `2 asinh(|p - q| / (2 sqrt(y_p y_q)))`.
    pub fn distance(&self, other: &HPoint) -> f64 {
        edge_length(self.xy(), other.xy())
    }
}

/// Exact hyperbolic distance between two points above the axis.
pub fn edge_length(p: [f64; 2], q: [f64; 2]) -> f64 {
    let e = (q[0] - p[0]).hypot(q[1] - p[1]);
    2.0 * (e / (2.0 * (p[1] * q[1]).sqrt())).asinh()
}

/// Tangent vector of hyperbolic norm one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitTangent {
    base: HPoint,
    v: [f64; 2],
}

impl UnitTangent {
    /// Checks that `|v| / y = 1` to `1e-12`.
    pub fn new(base: HPoint, v: [f64; 2]) -> Result<Self> {
        let n = v[0].hypot(v[1]) / base.y;
        if !n.is_finite() || (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "tangent has hyperbolic norm {n}, expected 1"
            )));
        }
        Ok(Self { base, v })
    }

    /// Rescales any nonzero direction to hyperbolic unit length.
    pub fn from_direction(base: HPoint, dir: [f64; 2]) -> Result<Self> {
        let n = dir[0].hypot(dir[1]);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidParameter("zero tangent direction".into()));
        }
        Ok(Self {
            base,
            v: [base.y * dir[0] / n, base.y * dir[1] / n],
        })
    }

    /// Tangent at `(x, y)` pointing at angle `beta`.
    pub fn from_angle(x: f64, y: f64, beta: f64) -> Result<Self> {
        Self::from_direction(HPoint::new(x, y)?, [beta.cos(), beta.sin()])
    }

    pub fn base(&self) -> HPoint {
        self.base
    }

    pub fn v(&self) -> [f64; 2] {
        self.v
    }

    /// Euclidean unit direction.
    pub fn direction(&self) -> [f64; 2] {
        let n = self.v[0].hypot(self.v[1]);
        [self.v[0] / n, self.v[1] / n]
    }
}

/// Point of the ideal boundary `R ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }
}

impl std::fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for BoundaryPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "+inf" | "-inf" | "infinity" | "∞") {
            return Ok(BoundaryPoint::Infinity);
        }
        let x: f64 = t
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("cannot read boundary point {s:?}")))?;
        if x.is_finite() {
            Ok(BoundaryPoint::Finite(x))
        } else {
            Err(Error::InvalidParameter(format!("cannot read boundary point {s:?}")))
        }
    }
}

/// `z ↦ (a z + b) / (c z + d)` with real coefficients and `ad - bc > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub(crate) a: f64,
    pub(crate) b: f64,
    pub(crate) c: f64,
    pub(crate) d: f64,
}

impl MoebiusMap {
    pub const IDENTITY: MoebiusMap = MoebiusMap {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0 && det.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Möbius coefficients need ad - bc > 0, got {det}"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Dilation `z ↦ λ z`.
    pub fn dilation(lambda: f64) -> Result<Self> {
        Self::new(lambda, 0.0, 0.0, 1.0)
    }

    /// Translation `z ↦ z + t`.
    pub fn translation(t: f64) -> Self {
        Self {
            a: 1.0,
            b: t,
            c: 0.0,
            d: 1.0,
        }
    }

    /// Same map with `ad - bc = 1`.
    pub fn normalized(&self) -> Self {
        let s = self.det().sqrt();
        Self {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self ∘ other`, normalized.
    pub fn compose(&self, other: &MoebiusMap) -> Self {
        let (s, o) = (self.normalized(), other.normalized());
        Self {
            a: s.a * o.a + s.b * o.c,
            b: s.a * o.b + s.b * o.d,
            c: s.c * o.a + s.d * o.c,
            d: s.c * o.b + s.d * o.d,
        }
        .normalized()
    }

    /// Equality as maps, i.e. up to a common factor of the coefficients.
    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        let (s, o) = (self.normalized(), other.normalized());
        let diff = |sign: f64| {
            (s.a - sign * o.a)
                .abs()
                .max((s.b - sign * o.b).abs())
                .max((s.c - sign * o.c).abs())
                .max((s.d - sign * o.d).abs())
        };
        diff(1.0).min(diff(-1.0)) <= tol
    }

    /// Image of `(x, y)`; coordinates need not be validated.
    pub fn apply_xy(&self, x: f64, y: f64) -> [f64; 2] {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let u = c * x + d;
        let den = u * u + c * c * y * y;
        [((a * x + b) * u + a * c * y * y) / den, self.det() * y / den]
    }

    pub fn apply(&self, p: HPoint) -> HPoint {
        let [x, y] = self.apply_xy(p.x, p.y);
        HPoint::raw(x, y)
    }

    /// Complex derivative `det / (c z + d)^2` at `p`, as (re, im).
    fn derivative(&self, p: HPoint) -> [f64; 2] {
        let (re, im) = (self.c * p.x + self.d, self.c * p.y);
        // 1/(re + i im)^2 = (re - i im)^2 / |.|^4
        let m2 = re * re + im * im;
        let k = self.det() / (m2 * m2);
        [k * (re * re - im * im), -k * 2.0 * re * im]
    }

    pub fn apply_vector(&self, p: HPoint, v: [f64; 2]) -> [f64; 2] {
        let [dr, di] = self.derivative(p);
        [dr * v[0] - di * v[1], dr * v[1] + di * v[0]]
    }

    pub fn apply_tangent(&self, t: UnitTangent) -> UnitTangent {
        UnitTangent {
            base: self.apply(t.base),
            v: self.apply_vector(t.base, t.v),
        }
    }

    pub fn apply_boundary(&self, q: BoundaryPoint) -> BoundaryPoint {
        match q {
            BoundaryPoint::Finite(x) => {
                let den = self.c * x + self.d;
                // a pole up to rounding in the denominator
                if den.abs() <= 4.0 * f64::EPSILON * ((self.c * x).abs() + self.d.abs()) {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * x + self.b) / den)
                }
            }
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
        }
    }

    /// Image of a sampled curve; parameters are kept.
    pub fn apply_curve(&self, curve: &SampledCurve) -> Result<SampledCurve> {
        curve.map_points(|p| {
            if p[1] == 0.0 {
                match self.apply_boundary(BoundaryPoint::Finite(p[0])) {
                    BoundaryPoint::Finite(x) => [x, 0.0],
                    BoundaryPoint::Infinity => [f64::INFINITY, 0.0],
                }
            } else {
                self.apply_xy(p[0], p[1])
            }
        })
    }
}

/// General-position frame map; fails when the tangent is (numerically) horizontal.
///
/// The result sends `t.base` to `(0, alpha)` and `t` to `(alpha, 0)` there.
pub fn frame_map_general(alpha: f64, t: &UnitTangent) -> Result<MoebiusMap> {
    let [v1, v2] = t.v;
    let vn = v1.hypot(v2);
    if v2.abs() < 1e-14 * vn {
        return Err(Error::DegenerateTangent { v2 });
    }
    Ok(frame_coefficients(alpha, t))
}

fn frame_coefficients(alpha: f64, t: &UnitTangent) -> MoebiusMap {
    let (p1, p2) = (t.base.x, t.base.y);
    let vn = t.v[0].hypot(t.v[1]);
    let (v1, v2) = (t.v[0] * p2 / vn, t.v[1] * p2 / vn);
    // d0 = p2 (p2 + V1) / V2 = p2 V2 / (p2 - V1); pick the cancellation-free form
    let d0 = if v1 <= 0.0 {
        p2 * v2 / (p2 - v1)
    } else {
        p2 * (p2 + v1) / v2
    };
    let a = alpha * d0 / p2;
    let b0 = -alpha * p2;
    // precompose with the shift z ↦ z - p1
    MoebiusMap {
        a,
        b: b0 - a * p1,
        c: 1.0,
        d: d0 - p1,
    }
}

/// Total frame map: the general formula, or a dilation with translation
/// when the tangent points in the positive x direction.
pub fn frame_map(alpha: f64, t: &UnitTangent) -> MoebiusMap {
    match frame_map_general(alpha, t) {
        Ok(m) => m,
        Err(_) if t.v[0] > 0.0 => {
            let (p1, p2) = (t.base.x, t.base.y);
            MoebiusMap {
                a: alpha / p2,
                b: -alpha * p1 / p2,
                c: 0.0,
                d: 1.0,
            }
        }
        // pointing in -x: the formula degenerates gracefully to z ↦ -alpha p2 / (z - p1)
        Err(_) => frame_coefficients(alpha, t),
    }
}

/// The isometry carrying `from` to `to`.
pub fn transport_map(from: &UnitTangent, to: &UnitTangent) -> MoebiusMap {
    frame_map(1.0, to).inverse().compose(&frame_map(1.0, from))
}

/// Inversion in the circle of radius `radius` centred at `(center_x, 0)`.
pub fn invert_at_circle(center_x: f64, radius: f64, p: HPoint) -> HPoint {
    let [x, y] = invert_xy(center_x, radius, p.x, p.y);
    HPoint::raw(x, y)
}

pub(crate) fn invert_xy(cx: f64, r: f64, x: f64, y: f64) -> [f64; 2] {
    let u = x - cx;
    let k = r * r / (u * u + y * y);
    [cx + k * u, k * y]
}

/// Boundary action of the same inversion.
pub fn invert_boundary(center_x: f64, radius: f64, q: BoundaryPoint) -> BoundaryPoint {
    match q {
        BoundaryPoint::Infinity => BoundaryPoint::Finite(center_x),
        BoundaryPoint::Finite(x) if x == center_x => BoundaryPoint::Infinity,
        BoundaryPoint::Finite(x) => BoundaryPoint::Finite(center_x + radius * radius / (x - center_x)),
    }
}

/// Geodesic curvature at an interior sample, `y κ_e + x' / |γ'|`, normal = tangent
/// rotated by +π/2.
///
/// Both `κ_e` and the tangent are taken from the circle through the sample and its
/// neighbours, so the value is exact on circles and invariant under isometries.
pub fn geodesic_curvature(curve: &SampledCurve, index: usize) -> Result<f64> {
    let (t, ke) = curve.tangent_and_curvature(index)?;
    let y = curve.points()[index][1];
    Ok(y * ke + t[0])
}

/// Hyperbolic length as the sum of exact geodesic distances between consecutive samples.
pub fn hyperbolic_length(curve: &SampledCurve) -> Result<f64> {
    if let Some((i, p)) = curve.points().iter().enumerate().find(|(_, p)| p[1] <= 0.0) {
        return Err(Error::AxisContact { index: i, y: p[1] });
    }
    Ok(curve.points().windows(2).map(|w| edge_length(w[0], w[1])).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn complex_apply(m: &MoebiusMap, z: Complex64) -> Complex64 {
        (m.a * z + m.b) / (m.c * z + m.d)
    }

    #[test]
    fn apply_matches_complex_evaluation() {
        let m = MoebiusMap::new(1.0, -1.0, 1.0, 1.0).unwrap();
        let p = m.apply(HPoint::new(0.0, 1.0).unwrap());
        assert!((p.x() - 0.0).abs() < 1e-15 && (p.y() - 1.0).abs() < 1e-15);
        let m = MoebiusMap::new(2.0, 3.0, -0.5, 1.25).unwrap();
        for &(x, y) in &[(0.3, 0.7), (-4.0, 2.0), (10.0, 0.01)] {
            let w = complex_apply(&m, Complex64::new(x, y));
            let p = m.apply(HPoint::new(x, y).unwrap());
            assert!((p.x() - w.re).abs() < 1e-13 && (p.y() - w.im).abs() < 1e-13);
        }
        let t = MoebiusMap::translation(1.0).apply(HPoint::new(0.0, 2.0).unwrap());
        assert_eq!(t.xy(), [1.0, 2.0]);
        let p = MoebiusMap::IDENTITY.apply(HPoint::new(3.0, 2.0).unwrap());
        assert_eq!(p.xy(), [3.0, 2.0]);
    }

    #[test]
    fn tangent_examples() {
        let m = MoebiusMap::new(1.0, -1.0, 1.0, 1.0).unwrap();
        let t = UnitTangent::new(HPoint::new(0.0, 1.0).unwrap(), [0.0, 1.0]).unwrap();
        let u = m.apply_tangent(t);
        // phi'(i) i = 2 i / (i + 1)^2 = 1
        let z = Complex64::new(0.0, 1.0);
        let w = 2.0 / ((z + 1.0) * (z + 1.0)) * z;
        assert!((u.v()[0] - w.re).abs() < 1e-15 && (u.v()[1] - w.im).abs() < 1e-15);
        assert!((u.v()[0] - 1.0).abs() < 1e-15 && u.v()[1].abs() < 1e-15);

        let s = MoebiusMap::dilation(3.0).unwrap();
        let t = UnitTangent::new(HPoint::new(0.0, 1.0).unwrap(), [1.0, 0.0]).unwrap();
        let u = s.apply_tangent(t);
        assert_eq!(u.base().xy(), [0.0, 3.0]);
        assert_eq!(u.v(), [3.0, 0.0]);
    }

    #[test]
    fn boundary_examples() {
        let m = MoebiusMap::new(1.0, -1.0, 1.0, 1.0).unwrap();
        assert_eq!(m.apply_boundary(BoundaryPoint::Infinity), BoundaryPoint::Finite(1.0));
        assert_eq!(m.apply_boundary(BoundaryPoint::Finite(-1.0)), BoundaryPoint::Infinity);
        assert_eq!(
            MoebiusMap::IDENTITY.apply_boundary(BoundaryPoint::Finite(5.0)),
            BoundaryPoint::Finite(5.0)
        );
        assert_ne!(BoundaryPoint::Infinity, BoundaryPoint::Finite(f64::MAX));
    }

    #[test]
    fn frame_map_examples() {
        let t = UnitTangent::new(HPoint::new(0.0, 1.0).unwrap(), [0.0, 1.0]).unwrap();
        let m = frame_map_general(1.0, &t).unwrap();
        assert_eq!(m.coefficients(), [1.0, -1.0, 1.0, 1.0]);

        let t = UnitTangent::new(HPoint::new(0.0, 2.0).unwrap(), [2.0, 0.0]).unwrap();
        assert!(matches!(
            frame_map_general(1.0, &t),
            Err(Error::DegenerateTangent { .. })
        ));
        let m = frame_map(1.0, &t);
        assert!(m.approx_eq(&MoebiusMap::new(0.5, 0.0, 0.0, 1.0).unwrap(), 1e-15));

        // pointing left on the nose: half-turn about the base
        let t = UnitTangent::new(HPoint::new(1.5, 2.0).unwrap(), [-2.0, 0.0]).unwrap();
        let m = frame_map(0.7, &t);
        let u = m.apply_tangent(t);
        assert!((u.base().x()).abs() < 1e-14 && (u.base().y() - 0.7).abs() < 1e-14);
        assert!((u.v()[0] - 0.7).abs() < 1e-14 && u.v()[1].abs() < 1e-14);
    }

    #[test]
    fn transport_examples() {
        let a = UnitTangent::new(HPoint::new(0.0, 1.0).unwrap(), [1.0, 0.0]).unwrap();
        let b = UnitTangent::new(HPoint::new(0.0, 2.0).unwrap(), [2.0, 0.0]).unwrap();
        assert!(transport_map(&a, &a).approx_eq(&MoebiusMap::IDENTITY, 1e-12));
        assert!(transport_map(&a, &b).approx_eq(&MoebiusMap::dilation(2.0).unwrap(), 1e-12));
    }

    #[test]
    fn inversion_examples() {
        let p = invert_at_circle(0.0, 1.0, HPoint::new(0.0, 1.0).unwrap());
        assert_eq!(p.xy(), [0.0, 1.0]);
        let p = invert_at_circle(0.0, 1.0, HPoint::new(0.0, 2.0).unwrap());
        assert_eq!(p.xy(), [0.0, 0.5]);
        let a = 1.7;
        assert_eq!(
            invert_boundary(0.0, a, BoundaryPoint::Finite(3.0)),
            BoundaryPoint::Finite(a * a / 3.0)
        );
        // the boundary action is the limit of the interior action
        let q = invert_at_circle(0.0, a, HPoint::new(3.0, 1e-9).unwrap());
        assert!((q.x() - a * a / 3.0).abs() < 1e-12);
    }

    #[test]
    fn curvature_examples() {
        let seg = SampledCurve::from_fn(1.0, 2.0, 50, |t| [0.0, t]).unwrap();
        for i in 1..50 {
            assert!(geodesic_curvature(&seg, i).unwrap().abs() < 1e-12);
        }
        assert!(matches!(
            geodesic_curvature(&seg, 0),
            Err(Error::BoundaryIndex { .. })
        ));
        let arc = SampledCurve::from_fn(0.2, 2.9, 1000, |t| [2.0 + 3.0 * t.cos(), 3.0 * t.sin()])
            .unwrap();
        for i in 1..1000 {
            assert!(geodesic_curvature(&arc, i).unwrap().abs() < 1e-6);
        }
        let cat = SampledCurve::from_fn(-3.0, 3.0, 10_000, |s| [s, s.cosh()]).unwrap();
        for i in 1..10_000 {
            let s = cat.params()[i];
            let k = geodesic_curvature(&cat, i).unwrap();
            assert!((k - 2.0 / s.cosh()).abs() < 1e-4);
        }
    }

    #[test]
    fn length_examples() {
        let seg =
            SampledCurve::from_fn(1.0, std::f64::consts::E, 10, |t| [0.0, t]).unwrap();
        assert!((hyperbolic_length(&seg).unwrap() - 1.0).abs() < 1e-8);
        let cat = SampledCurve::from_fn(0.0, 2.0, 2000, |s| [s, s.cosh()]).unwrap();
        assert!((hyperbolic_length(&cat).unwrap() - 2.0).abs() < 1e-6);
        let touch = SampledCurve::new(vec![0.0, 1.0], vec![[0.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(hyperbolic_length(&touch), Err(Error::AxisContact { index: 0, .. })));
    }
}
