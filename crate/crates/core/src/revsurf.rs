//! Energies of surfaces of revolution about the x-axis generated by profile curves.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

pub use crate::curve::SampledCurve;
use crate::error::{End, Error, Result};
use crate::hyper::{edge_length, geodesic_curvature, hyperbolic_length, UnitTangent};

/// Minimum number of samples for the energy quadratures.
pub const MIN_SAMPLES: usize = 16;

/// Principal curvatures (meridian, parallel) at an interior sample.
///
/// Orientation: a round sphere traversed left to right over the top gives `(1, 1)`.
pub fn principal_curvatures(curve: &SampledCurve, index: usize) -> Result<(f64, f64)> {
    let (t, ke) = curve.tangent_and_curvature(index)?;
    let y = curve.points()[index][1];
    if y <= 0.0 {
        return Err(Error::AxisContact { index, y });
    }
    Ok((-ke, t[0] / y))
}

/// Trapezoid rule over the parameter grid. The integrand is evaluated at interior
/// samples and extended linearly to both endpoints.
fn integrate(curve: &SampledCurve, s: &[f64], f: impl Fn(usize) -> Result<f64>) -> Result<f64> {
    let n = curve.len();
    if n < MIN_SAMPLES {
        return Err(Error::InsufficientResolution {
            needed: MIN_SAMPLES,
            got: n,
        });
    }
    let mut vals = vec![0.0; n];
    for (i, v) in vals.iter_mut().enumerate().take(n - 1).skip(1) {
        *v = f(i)?;
    }
    let extrapolate = |v: &[f64], i0: usize, i1: usize, at: usize| {
        let t = (s[at] - s[i0]) / (s[i1] - s[i0]);
        v[i0] + t * (v[i1] - v[i0])
    };
    vals[0] = extrapolate(&vals, 1, 2, 0);
    vals[n - 1] = extrapolate(&vals, n - 2, n - 3, n - 1);
    Ok((1..n)
        .map(|i| 0.5 * (s[i] - s[i - 1]) * (vals[i] + vals[i - 1]))
        .sum())
}

/// Willmore energy `¼ ∫ (k₁ + k₂)² dA` of the surface of revolution.
pub fn willmore_energy(curve: &SampledCurve) -> Result<f64> {
    integrate(curve, curve.params(), |i| {
        let (k1, k2) = principal_curvatures(curve, i)?;
        let (d1, _) = curve.derivatives(i)?;
        let h = k1 + k2;
        Ok(0.25 * h * h * 2.0 * PI * curve.points()[i][1] * d1[0].hypot(d1[1]))
    })
}

/// Hyperbolic elastic energy `∫ κ_h² ds_h`.
///
/// Off the axis the trapezoid rule runs in exact hyperbolic arclength, which makes
/// the value invariant under isometries up to rounding. Curves with an endpoint on
/// the axis integrate `κ_h² |γ'| / y` in their own parameter instead.
pub fn elastic_energy(curve: &SampledCurve) -> Result<f64> {
    let p = curve.points();
    if p.iter().all(|q| q[1] > 0.0) {
        let mut s = Vec::with_capacity(p.len());
        s.push(0.0);
        for w in p.windows(2) {
            s.push(s[s.len() - 1] + edge_length(w[0], w[1]));
        }
        return integrate(curve, &s, |i| Ok(geodesic_curvature(curve, i)?.powi(2)));
    }
    integrate(curve, curve.params(), |i| {
        let k = geodesic_curvature(curve, i)?;
        let (d1, _) = curve.derivatives(i)?;
        Ok(k * k * d1[0].hypot(d1[1]) / p[i][1])
    })
}

/// `[γ²' / |γ'|]` between the endpoints: change of the vertical component of the unit tangent.
pub fn boundary_term(curve: &SampledCurve) -> f64 {
    curve.end_tangent(End::Finish)[1] - curve.end_tangent(End::Start)[1]
}

/// Both sides of `(2/π) W_e = W_h - 4 [γ²'/|γ'|]`.
pub fn bryant_griffiths_check(curve: &SampledCurve) -> Result<(f64, f64)> {
    let lhs = 2.0 / PI * willmore_energy(curve)?;
    let rhs = elastic_energy(curve)? - 4.0 * boundary_term(curve);
    Ok((lhs, rhs))
}

/// Clamped boundary data at both ends of a profile curve.
///
/// The curve starts at `(x_minus, alpha_minus)` heading `(cos β₋, sin β₋)` and
/// ends at `(x_plus, alpha_plus)` heading `-(cos β₊, sin β₊)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub x_minus: f64,
    pub x_plus: f64,
    pub alpha_minus: f64,
    pub alpha_plus: f64,
    pub beta_minus: f64,
    pub beta_plus: f64,
}

impl BoundaryData {
    /// Horizontal clamping at `x = ∓1`, the setting of the closed-form threshold.
    pub fn horizontal(alpha_minus: f64, alpha_plus: f64) -> Self {
        Self {
            x_minus: -1.0,
            x_plus: 1.0,
            alpha_minus,
            alpha_plus,
            beta_minus: 0.0,
            beta_plus: PI,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.x_minus,
            self.x_plus,
            self.alpha_minus,
            self.alpha_plus,
            self.beta_minus,
            self.beta_plus,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("boundary data must be finite".into()));
        }
        if self.alpha_minus <= 0.0 || self.alpha_plus <= 0.0 {
            return Err(Error::InvalidParameter("alpha_minus and alpha_plus must be positive".into()));
        }
        Ok(())
    }

    /// Start of the curve as a unit tangent pointing along the curve.
    pub fn start_minus(&self) -> Result<UnitTangent> {
        UnitTangent::from_angle(self.x_minus, self.alpha_minus, self.beta_minus)
    }

    /// End of the curve as a unit tangent pointing back into the curve.
    pub fn start_plus(&self) -> Result<UnitTangent> {
        UnitTangent::from_angle(self.x_plus, self.alpha_plus, self.beta_plus)
    }

    pub fn cap_minus(&self) -> CapSpec {
        CapSpec::new(self.x_minus, self.alpha_minus, self.beta_minus)
    }

    pub fn cap_plus(&self) -> CapSpec {
        CapSpec::new(self.x_plus, self.alpha_plus, self.beta_plus)
    }
}

/// Angle in `(-π, π]`.
pub fn normalize_angle(beta: f64) -> f64 {
    let mut b = beta.rem_euclid(2.0 * PI);
    if b > PI {
        b -= 2.0 * PI;
    }
    if b <= -PI {
        b += 2.0 * PI;
    }
    b
}

/// Boundary data of a curve, read from its endpoints and end tangents.
pub fn read_boundary_data(curve: &SampledCurve) -> Result<BoundaryData> {
    let (p0, p1) = (curve.first(), curve.last());
    if p0[1] <= 0.0 {
        return Err(Error::AxisContact { index: 0, y: p0[1] });
    }
    if p1[1] <= 0.0 {
        return Err(Error::AxisContact {
            index: curve.len() - 1,
            y: p1[1],
        });
    }
    let t0 = curve.end_tangent(End::Start);
    let t1 = curve.end_tangent(End::Finish);
    Ok(BoundaryData {
        x_minus: p0[0],
        x_plus: p1[0],
        alpha_minus: p0[1],
        alpha_plus: p1[1],
        beta_minus: normalize_angle(t0[1].atan2(t0[0])),
        beta_plus: normalize_angle((-t1[1]).atan2(-t1[0])),
    })
}

/// Shape of a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CapKind {
    Circle,
    VerticalLine,
}

/// Which vertical ray closes a vertical clamp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerticalBranch {
    /// The ray where `(α₀ - y) sin β₀ > 0`: toward the axis for `β₀ = π/2`,
    /// upward (a plane through infinity) for `β₀ = -π/2`.
    #[default]
    Standard,
    /// The other ray.
    Opposite,
}

/// Geodesic cap closing a clamped end down to the axis.
///
/// The cap leaves `(x0, alpha0)` in direction `-(cos β₀, sin β₀)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapSpec {
    pub x0: f64,
    pub alpha0: f64,
    pub beta0: f64,
}

impl CapSpec {
    pub fn new(x0: f64, alpha0: f64, beta0: f64) -> Self {
        Self { x0, alpha0, beta0 }
    }

    pub fn kind(&self) -> CapKind {
        if self.beta0.cos().abs() <= 1e-12 {
            CapKind::VerticalLine
        } else {
            CapKind::Circle
        }
    }

    /// Centre on the axis and radius of a circular cap.
    pub fn circle(&self) -> Option<(f64, f64)> {
        match self.kind() {
            CapKind::Circle => Some((
                self.x0 + self.alpha0 * self.beta0.tan(),
                self.alpha0 / self.beta0.cos().abs(),
            )),
            CapKind::VerticalLine => None,
        }
    }

    /// Whether the closing vertical ray goes up, away from the axis.
    fn vertical_goes_up(&self, branch: VerticalBranch) -> bool {
        let standard_up = self.beta0.sin() < 0.0;
        match branch {
            VerticalBranch::Standard => standard_up,
            VerticalBranch::Opposite => !standard_up,
        }
    }

    /// True when the cap surface is unbounded (a plane through infinity).
    pub fn is_unbounded(&self, branch: VerticalBranch) -> bool {
        self.kind() == CapKind::VerticalLine && self.vertical_goes_up(branch)
    }

    /// Density at infinity of the cap surface: 1 for a plane, 0 otherwise.
    pub fn density_infinity(&self, branch: VerticalBranch) -> f64 {
        if self.is_unbounded(branch) {
            1.0
        } else {
            0.0
        }
    }

    /// Willmore energy of the cap surface, without its density at infinity.
    /// Vertical caps are flat (a disk or a plane) and carry none.
    pub fn willmore(&self) -> f64 {
        match self.kind() {
            CapKind::VerticalLine => 0.0,
            // cap is a geodesic: only the tangent bracket contributes
            CapKind::Circle => 2.0 * PI * (1.0 - self.beta0.sin()),
        }
    }
}

/// Samples of a cap from `(x0, alpha0)` to the axis, uniform in Euclidean arclength.
/// An upward vertical ray is truncated at height `10 alpha0`.
pub fn cap_curve(spec: &CapSpec, samples: usize) -> Result<SampledCurve> {
    cap_curve_with(spec, samples, VerticalBranch::Standard)
}

pub fn cap_curve_with(spec: &CapSpec, samples: usize, branch: VerticalBranch) -> Result<SampledCurve> {
    if samples < MIN_SAMPLES {
        return Err(Error::InsufficientResolution {
            needed: MIN_SAMPLES,
            got: samples,
        });
    }
    if !(spec.alpha0 > 0.0) {
        return Err(Error::InvalidParameter("cap height must be positive".into()));
    }
    let n = samples - 1;
    let CapSpec { x0, alpha0, beta0 } = *spec;
    match spec.circle() {
        None => {
            let top = if spec.vertical_goes_up(branch) {
                10.0 * alpha0
            } else {
                0.0
            };
            let len = (top - alpha0).abs();
            SampledCurve::from_fn(0.0, len, n, |t| {
                let y = alpha0 + (top - alpha0) * t / len;
                [x0, if t == len { top } else { y }]
            })
        }
        Some((cx, r)) => {
            let phi0 = alpha0.atan2(x0 - cx);
            // cos β₀ > 0 leaves towards smaller x and lands at cx - r
            let phi1 = if beta0.cos() > 0.0 { PI } else { 0.0 };
            let len = r * (phi1 - phi0).abs();
            SampledCurve::from_fn(0.0, len, n, |t| {
                if t == len {
                    return [cx + r * phi1.cos(), 0.0];
                }
                let phi = phi0 + (phi1 - phi0) * t / len;
                [cx + r * phi.cos(), r * phi.sin()]
            })
        }
    }
}

/// Energy summary of a profile curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub willmore: f64,
    pub elastic: f64,
    pub boundary_term: f64,
    #[serde(serialize_with = "crate::io::ser_f64_or_inf")]
    pub hyp_length: f64,
    pub density_infinity: f64,
    pub closed_willmore: Option<f64>,
    #[serde(skip)]
    pub cap_minus: Option<f64>,
    #[serde(skip)]
    pub cap_plus: Option<f64>,
}

/// Energies of a curve on its own, without closing caps.
pub fn energy_report(curve: &SampledCurve) -> Result<EnergyReport> {
    let hyp_length = match hyperbolic_length(curve) {
        Ok(l) => l,
        Err(Error::AxisContact { .. }) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    Ok(EnergyReport {
        willmore: willmore_energy(curve)?,
        elastic: elastic_energy(curve)?,
        boundary_term: boundary_term(curve),
        hyp_length,
        density_infinity: 0.0,
        closed_willmore: None,
        cap_minus: None,
        cap_plus: None,
    })
}

/// Closed Willmore energy: the curve's surface, both caps, and `4π` per unit density
/// at infinity.
pub fn closed_willmore_energy(curve: &SampledCurve, bd: &BoundaryData) -> Result<EnergyReport> {
    closed_willmore_energy_with(curve, bd, VerticalBranch::Standard)
}

pub fn closed_willmore_energy_with(
    curve: &SampledCurve,
    bd: &BoundaryData,
    branch: VerticalBranch,
) -> Result<EnergyReport> {
    bd.validate()?;
    check_endpoints(curve, bd)?;
    let mut report = energy_report(curve)?;
    let (cm, cp) = (bd.cap_minus(), bd.cap_plus());
    let (wm, wp) = (cm.willmore(), cp.willmore());
    report.density_infinity = cm.density_infinity(branch) + cp.density_infinity(branch);
    report.closed_willmore = Some(report.willmore + wm + wp + 4.0 * PI * report.density_infinity);
    report.cap_minus = Some(wm);
    report.cap_plus = Some(wp);
    Ok(report)
}

fn check_endpoints(curve: &SampledCurve, bd: &BoundaryData) -> Result<()> {
    let checks = [
        (End::Start, curve.first(), [bd.x_minus, bd.alpha_minus], bd.beta_minus, 1.0),
        (End::Finish, curve.last(), [bd.x_plus, bd.alpha_plus], bd.beta_plus, -1.0),
    ];
    for (end, p, q, beta, sign) in checks {
        let dev = (p[0] - q[0]).hypot(p[1] - q[1]);
        if dev.is_nan() || dev > 1e-8 * (1.0 + q[0].abs().max(q[1])) {
            return Err(Error::BoundaryMismatch {
                end,
                what: "position",
                deviation: dev,
            });
        }
        let t = curve.end_tangent(end);
        let want = [sign * beta.cos(), sign * beta.sin()];
        let dev = (t[0] - want[0]).hypot(t[1] - want[1]);
        if dev.is_nan() || dev > 1e-6 {
            return Err(Error::BoundaryMismatch {
                end,
                what: "direction",
                deviation: dev,
            });
        }
    }
    Ok(())
}

/// `true` if the clamp direction is vertical.
pub fn is_vertical(beta: f64) -> bool {
    (normalize_angle(beta).abs() - FRAC_PI_2).abs() <= 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_sphere(n: usize) -> SampledCurve {
        SampledCurve::from_fn(0.0, PI, n, |t| {
            if t == PI {
                [1.0, 0.0]
            } else if t == 0.0 {
                [-1.0, 0.0]
            } else {
                [-t.cos(), t.sin()]
            }
        })
        .unwrap()
    }

    #[test]
    fn principal_curvature_examples() {
        let s = unit_sphere(1000);
        for i in [1, 200, 500, 999] {
            let (k1, k2) = principal_curvatures(&s, i).unwrap();
            assert!((k1 - 1.0).abs() < 1e-6 && (k2 - 1.0).abs() < 1e-6, "{k1} {k2}");
        }
        let cat = SampledCurve::from_fn(-1.0, 1.0, 1000, |s| [s, s.cosh()]).unwrap();
        for i in 1..1000 {
            let (k1, k2) = principal_curvatures(&cat, i).unwrap();
            assert!((k1 + k2).abs() < 1e-6);
        }
        let cyl = SampledCurve::from_fn(0.0, 1.0, 20, |s| [s, 1.0]).unwrap();
        let (k1, k2) = principal_curvatures(&cyl, 7).unwrap();
        assert!(k1.abs() < 1e-10 && (k2 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn willmore_examples() {
        let w = willmore_energy(&unit_sphere(10_000)).unwrap();
        assert!((w / (4.0 * PI) - 1.0).abs() < 1e-4, "{w}");
        let cat = SampledCurve::from_fn(-1.0, 1.0, 2000, |s| [s, s.cosh()]).unwrap();
        assert!(willmore_energy(&cat).unwrap() < 1e-10);
        let hemi = cap_curve(&CapSpec::new(0.0, 1.0, 0.0), 10_001).unwrap();
        assert!((willmore_energy(&hemi).unwrap() - 2.0 * PI).abs() < 1e-4);
        assert!(matches!(
            willmore_energy(&SampledCurve::from_fn(0.0, 1.0, 10, |s| [s, 1.0]).unwrap()),
            Err(Error::InsufficientResolution { .. })
        ));
    }

    #[test]
    fn elastic_examples() {
        let arc = SampledCurve::from_fn(0.3, 2.5, 2000, |t| [1.0 + 2.0 * t.cos(), 2.0 * t.sin()])
            .unwrap();
        assert!(elastic_energy(&arc).unwrap() < 1e-8);
        let cat = SampledCurve::from_fn(-20.0, 20.0, 40_000, |s| [s, s.cosh()]).unwrap();
        assert!((elastic_energy(&cat).unwrap() - 8.0).abs() < 1e-4);
    }

    #[test]
    fn bryant_griffiths_examples() {
        let cat = SampledCurve::from_fn(-1.0, 1.0, 4000, |s| [s, s.cosh()]).unwrap();
        let (l, r) = bryant_griffiths_check(&cat).unwrap();
        assert!(l.abs() < 1e-5 && r.abs() < 1e-5, "{l} {r}");
        let hemi = cap_curve(&CapSpec::new(0.0, 1.0, 0.0), 4001).unwrap();
        let (l, r) = bryant_griffiths_check(&hemi).unwrap();
        assert!((l - 4.0).abs() < 1e-4 && (r - 4.0).abs() < 1e-4, "{l} {r}");
        let seg = SampledCurve::from_fn(1.0, 2.0, 100, |t| [0.0, t]).unwrap();
        let (l, r) = bryant_griffiths_check(&seg).unwrap();
        assert!(l.abs() < 1e-12 && r.abs() < 1e-12);
    }

    #[test]
    fn cap_examples() {
        let c = cap_curve(&CapSpec::new(0.0, 1.0, 0.0), 101).unwrap();
        assert_eq!(c.last(), [-1.0, 0.0]);
        let c = cap_curve(&CapSpec::new(0.0, 1.0, PI), 101).unwrap();
        assert!((c.last()[0] - 1.0).abs() < 1e-15 && c.last()[1] == 0.0);
        // vertical clamp pointing up: the cap runs down to the axis and is a flat disk
        let spec = CapSpec::new(0.0, 1.0, FRAC_PI_2);
        assert_eq!(spec.kind(), CapKind::VerticalLine);
        let c = cap_curve(&spec, 101).unwrap();
        assert_eq!(c.last(), [0.0, 0.0]);
        assert!(!spec.is_unbounded(VerticalBranch::Standard));
        let c = cap_curve_with(&spec, 101, VerticalBranch::Opposite).unwrap();
        assert_eq!(c.last(), [0.0, 10.0]);
        // pointing down: the cap is the upward ray, a plane through infinity
        let spec = CapSpec::new(0.0, 1.0, -FRAC_PI_2);
        assert!(spec.is_unbounded(VerticalBranch::Standard));
        assert_eq!(spec.density_infinity(VerticalBranch::Standard), 1.0);
        assert_eq!(spec.willmore(), 0.0);
    }

    #[test]
    fn cap_start_tangent_is_reversed_clamp() {
        for beta in [0.0, 0.4, -1.1, 2.5, PI, -2.9] {
            let spec = CapSpec::new(0.3, 1.4, beta);
            let c = cap_curve(&spec, 2001).unwrap();
            let t = c.end_tangent(End::Start);
            assert!((t[0] + beta.cos()).abs() < 1e-6 && (t[1] + beta.sin()).abs() < 1e-6);
            assert!(c.points().iter().all(|p| (p[0] - 0.3) * beta.cos() <= 1e-12));
        }
    }

    #[test]
    fn cap_energy_closed_form_matches_quadrature() {
        for beta in [0.0, 0.7, -0.7, 2.0, -2.5] {
            let spec = CapSpec::new(-0.5, 0.8, beta);
            let c = cap_curve(&spec, 10_001).unwrap();
            let q = willmore_energy(&c).unwrap();
            assert!((q - spec.willmore()).abs() < 1e-4, "{beta}: {q}");
        }
    }

    #[test]
    fn read_boundary_examples() {
        let cat = SampledCurve::from_fn(-1.0, 1.0, 4000, |s| [s, s.cosh()]).unwrap();
        let bd = read_boundary_data(&cat).unwrap();
        let b = -(1f64.sinh().atan());
        assert!((bd.x_minus + 1.0).abs() < 1e-15 && (bd.x_plus - 1.0).abs() < 1e-15);
        assert!((bd.alpha_minus - 1f64.cosh()).abs() < 1e-15);
        assert!((bd.beta_minus - b).abs() < 1e-6);
        assert!((bd.beta_plus - normalize_angle(PI - b)).abs() < 1e-6);

        let flat = SampledCurve::from_fn(-1.0, 1.0, 100, |s| [s, 2.0]).unwrap();
        let bd = read_boundary_data(&flat).unwrap();
        assert!(bd.beta_minus.abs() < 1e-12 && (bd.beta_plus - PI).abs() < 1e-12);

        // a cap started at (0, 1) with beta0 = 0, read back from the other side
        let cap = cap_curve(&CapSpec::new(0.0, 1.0, 0.0), 2001).unwrap();
        assert!(matches!(read_boundary_data(&cap), Err(Error::AxisContact { .. })));
        let t = cap.end_tangent(End::Start);
        assert!(normalize_angle((-t[1]).atan2(-t[0])).abs() < 1e-6);
    }

    #[test]
    fn closed_energy_of_sphere_piece() {
        let th0: f64 = 0.6;
        let arc = SampledCurve::from_fn(th0, PI - th0, 8000, |t| [-t.cos(), t.sin()]).unwrap();
        let bd = read_boundary_data(&arc).unwrap();
        let r = closed_willmore_energy(&arc, &bd).unwrap();
        assert!((r.closed_willmore.unwrap() - 4.0 * PI).abs() < 1e-4);
        assert_eq!(r.density_infinity, 0.0);
    }

    #[test]
    fn mismatch_is_reported() {
        let arc = SampledCurve::from_fn(-1.0, 1.0, 200, |s| [s, s.cosh()]).unwrap();
        let mut bd = read_boundary_data(&arc).unwrap();
        bd.alpha_plus += 1e-3;
        assert!(matches!(
            closed_willmore_energy(&arc, &bd),
            Err(Error::BoundaryMismatch { end: End::Finish, what: "position", .. })
        ));
    }
}
