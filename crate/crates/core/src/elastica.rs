//! Asymptotic geodesics: Möbius images of the catenoid profile `σ ↦ (σ, cosh σ)`
//! and of its inversion, with geodesic curvature `±2 / cosh(s + s₀)`.

use serde::Serialize;

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::hyper::{frame_map, invert_xy, BoundaryPoint, HPoint, MoebiusMap, UnitTangent};

/// Intrinsic parameter length sampled past `max(s₀, 0)` toward the singular end.
pub const DEFAULT_TAIL: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Catenoid,
    InvertedCatenoid,
    HalfCircle,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Catenoid => "catenoid",
            Branch::InvertedCatenoid => "inverted_catenoid",
            Branch::HalfCircle => "half_circle",
        }
    }
}

/// `Forward` samples from the start toward the axis, `Backward` the other way round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureSign {
    Positive,
    Negative,
}

/// An asymptotic geodesic or a geodesic half circle, in closed form.
///
/// In the normalized frame the arc starts at `(0, alpha)` with velocity `(alpha, 0)`
/// and reaches the axis as its intrinsic parameter `s → ∞`; `frame` carries it to
/// its actual position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticaArc {
    branch: Branch,
    s0: f64,
    frame: MoebiusMap,
    orientation: Orientation,
    alpha: f64,
    inner: MoebiusMap,
}

/// The two explicit unit-speed solutions through `(0, 1)`.
pub fn standard_point(branch: Branch, s: f64) -> Result<HPoint> {
    match branch {
        Branch::Catenoid => HPoint::new(s, s.cosh()),
        Branch::InvertedCatenoid => {
            let c = s.cosh();
            let r2 = s * s + c * c;
            HPoint::new(s / r2, c / r2)
        }
        Branch::HalfCircle => Err(Error::BranchMismatch { x: s, branch: "half_circle" }),
    }
}

impl ElasticaArc {
    pub fn new(branch: Branch, s0: f64, frame: MoebiusMap, orientation: Orientation, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) || !s0.is_finite() {
            return Err(Error::InvalidParameter(format!("need alpha > 0 and finite s0 (alpha = {alpha}, s0 = {s0})")));
        }
        let base = HPoint::new(s0, s0.cosh())?;
        let t = UnitTangent::from_direction(base, [1.0, s0.sinh()])?;
        let inner = frame_map(alpha, &t);
        let s0 = if branch == Branch::HalfCircle { 0.0 } else { s0 };
        Ok(Self { branch, s0, frame, orientation, alpha, inner })
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn frame(&self) -> MoebiusMap {
        self.frame
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    /// Point in the normalized frame at intrinsic parameter `s`.
    pub fn normalized_point(&self, s: f64) -> [f64; 2] {
        let a = self.alpha;
        match self.branch {
            Branch::HalfCircle => [a * s.tanh(), a / s.cosh()],
            Branch::Catenoid => {
                let t = s + self.s0;
                self.inner.apply_xy(t, t.cosh())
            }
            Branch::InvertedCatenoid => {
                let t = s + self.s0;
                let [x, y] = self.inner.apply_xy(t, t.cosh());
                invert_xy(0.0, a, x, y)
            }
        }
    }

    pub fn point(&self, s: f64) -> [f64; 2] {
        let [x, y] = self.normalized_point(s);
        self.frame.apply_xy(x, y)
    }

    /// Start position and direction (toward the singular end).
    pub fn start(&self) -> UnitTangent {
        let t = UnitTangent::new(HPoint::new(0.0, self.alpha).expect("alpha > 0"), [self.alpha, 0.0])
            .expect("unit by construction");
        self.frame.apply_tangent(t)
    }

    /// Geodesic curvature at intrinsic parameter `s`, for forward traversal.
    pub fn curvature(&self, s: f64) -> f64 {
        match self.branch {
            Branch::HalfCircle => 0.0,
            Branch::Catenoid => 2.0 / (s + self.s0).cosh(),
            Branch::InvertedCatenoid => -2.0 / (s + self.s0).cosh(),
        }
    }

    /// Axis point reached as `s → ∞`.
    pub fn singular_point(&self) -> BoundaryPoint {
        let a = self.alpha;
        let q = match self.branch {
            Branch::HalfCircle => BoundaryPoint::Finite(a),
            Branch::Catenoid if self.s0 == 0.0 => BoundaryPoint::Infinity,
            Branch::Catenoid => BoundaryPoint::Finite(a / (0.5 * self.s0).tanh()),
            Branch::InvertedCatenoid => BoundaryPoint::Finite(a * (0.5 * self.s0).tanh()),
        };
        self.frame.apply_boundary(q)
    }

    /// Elastic energy from the start to the singular end.
    pub fn energy(&self) -> f64 {
        match self.branch {
            Branch::HalfCircle => 0.0,
            _ => partial_energies(self.s0).1,
        }
    }

    /// Parameter at which sampling stops by default.
    pub fn default_end(&self) -> f64 {
        (-self.s0).max(0.0) + DEFAULT_TAIL
    }

    /// `n + 1` samples on `[0, default_end]`, in the arc's orientation.
    pub fn sample(&self, n: usize) -> Result<SampledCurve> {
        self.sample_range(0.0, self.default_end(), n)
    }

    /// `n + 1` samples uniform in the intrinsic parameter on `[a, b]`; the stored
    /// parameter is `s` (negated for backward orientation).
    pub fn sample_range(&self, a: f64, b: f64, n: usize) -> Result<SampledCurve> {
        let c = SampledCurve::from_fn(a, b, n, |s| self.point(s))?;
        Ok(match self.orientation {
            Orientation::Forward => c,
            Orientation::Backward => c.reversed(),
        })
    }
}

/// Arc with start `(0, alpha)`, velocity `(alpha, 0)` and curvature `±2 / cosh(s + s₀)`.
pub fn solve_frenet(alpha: f64, s0: f64, sign: CurvatureSign) -> Result<ElasticaArc> {
    let branch = match sign {
        CurvatureSign::Positive => Branch::Catenoid,
        CurvatureSign::Negative => Branch::InvertedCatenoid,
    };
    ElasticaArc::new(branch, s0, MoebiusMap::IDENTITY, Orientation::Forward, alpha)
}

/// Axis point of the catenoid branch with offset `s0`, `α (1 + cosh s₀) / sinh s₀`.
pub fn singularity_x(alpha: f64, s0: f64) -> Result<f64> {
    if s0 == 0.0 {
        return Err(Error::ZeroOffset);
    }
    Ok(alpha / (0.5 * s0).tanh())
}

/// Offset reaching the axis point `x` on the given branch.
pub fn s0_from_x(alpha: f64, x: f64, branch: Branch) -> Result<f64> {
    if (x.abs() - alpha).abs() <= 1e-12 * alpha {
        return Err(Error::HalfCircleCase);
    }
    match branch {
        Branch::Catenoid if x.abs() > alpha => Ok((2.0 * alpha / (x - alpha)).ln_1p()),
        Branch::InvertedCatenoid if x.abs() < alpha => Ok((2.0 * x / (alpha - x)).ln_1p()),
        _ => Err(Error::BranchMismatch { x, branch: branch.name() }),
    }
}

/// `(E₊, E₋) = (4 + 4 tanh s₀, 4 - 4 tanh s₀)`: energies of the two halves of an
/// asymptotic geodesic split at parameter `s₀`. They sum to exactly 8.
pub fn partial_energies(s0: f64) -> (f64, f64) {
    let t = s0.tanh();
    if t >= 0.0 {
        let ep = 4.0 + 4.0 * t;
        (ep, 8.0 - ep)
    } else {
        let em = 4.0 - 4.0 * t;
        (8.0 - em, em)
    }
}

/// Side energy in the normalized frame with `alpha = 1`: `4 - 8x / (1 + x²)`.
pub fn normalized_side_energy(x: BoundaryPoint) -> f64 {
    match x {
        BoundaryPoint::Infinity => 4.0,
        BoundaryPoint::Finite(x) if x.abs() > 1.0 => 4.0 - 8.0 / (x + 1.0 / x),
        BoundaryPoint::Finite(x) => 4.0 - 8.0 * x / (1.0 + x * x),
    }
}

/// Elastic energy of the critical arc from `start` to `target`.
pub fn side_energy(start: &UnitTangent, target: BoundaryPoint) -> f64 {
    normalized_side_energy(frame_map(1.0, start).apply_boundary(target))
}

/// The critical arc leaving `start` that reaches `target` on the axis.
///
/// Fails only when `target` is the limit point directly behind the start tangent,
/// which no arc attains.
pub fn solve_boundary(start: &UnitTangent, target: BoundaryPoint) -> Result<ElasticaArc> {
    solve_boundary_in_frame(start, target, 1.0)
}

/// As [`solve_boundary`], normalizing the start to `(0, alpha)` internally.
pub fn solve_boundary_in_frame(start: &UnitTangent, target: BoundaryPoint, alpha: f64) -> Result<ElasticaArc> {
    let phi = frame_map(alpha, start);
    let frame = phi.inverse();
    let arc = |branch, s0| ElasticaArc::new(branch, s0, frame, Orientation::Forward, alpha);
    match phi.apply_boundary(target) {
        BoundaryPoint::Infinity => arc(Branch::Catenoid, 0.0),
        BoundaryPoint::Finite(x) => {
            if (x - alpha).abs() <= 1e-12 * alpha {
                arc(Branch::HalfCircle, 0.0)
            } else if (x + alpha).abs() <= 1e-12 * alpha {
                Err(Error::NoCriticalArc)
            } else if x.abs() > alpha {
                arc(Branch::Catenoid, s0_from_x(alpha, x, Branch::Catenoid)?)
            } else {
                arc(Branch::InvertedCatenoid, s0_from_x(alpha, x, Branch::InvertedCatenoid)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::geodesic_curvature;

    #[test]
    fn standard_points() {
        assert_eq!(standard_point(Branch::Catenoid, 0.0).unwrap().xy(), [0.0, 1.0]);
        assert_eq!(standard_point(Branch::InvertedCatenoid, 0.0).unwrap().xy(), [0.0, 1.0]);
        assert_eq!(standard_point(Branch::Catenoid, 1.0).unwrap().xy(), [1.0, 1f64.cosh()]);
        assert!(standard_point(Branch::HalfCircle, 0.0).is_err());
    }

    #[test]
    fn frenet_examples() {
        let arc = solve_frenet(1.0, 0.0, CurvatureSign::Positive).unwrap();
        for s in [-2.0, 0.0, 0.5, 3.0] {
            let p = arc.point(s);
            assert!((p[0] - s).abs() < 1e-15 && (p[1] - f64::cosh(s)).abs() < 1e-12);
        }
        let arc = solve_frenet(1.0, 2f64.ln(), CurvatureSign::Positive).unwrap();
        assert!((arc.curvature(0.0) - 1.6).abs() < 1e-15);
        let c = arc.sample_range(-0.01, 0.01, 2).unwrap();
        assert!((geodesic_curvature(&c, 1).unwrap() - 1.6).abs() < 1e-4);
        // starts at (0, alpha) heading right with unit hyperbolic speed
        let arc = solve_frenet(2.5, -0.7, CurvatureSign::Negative).unwrap();
        let st = arc.start();
        assert_eq!(st.base().xy(), [0.0, 2.5]);
        let p = arc.point(1e-6);
        assert!((p[0] / 1e-6 - 2.5).abs() < 1e-4 && (p[1] - 2.5).abs() < 1e-9);
    }

    #[test]
    fn frenet_scaling() {
        let a1 = solve_frenet(1.0, 0.4, CurvatureSign::Positive).unwrap();
        let a2 = solve_frenet(2.0, 0.4, CurvatureSign::Positive).unwrap();
        for s in [0.0, 0.3, 1.0, 4.0] {
            let (p, q) = (a1.point(s), a2.point(s));
            assert!((2.0 * p[0] - q[0]).abs() < 1e-12 && (2.0 * p[1] - q[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn singularity_examples() {
        let l2 = 2f64.ln();
        assert!((singularity_x(1.0, l2).unwrap() - 3.0).abs() < 1e-14);
        assert!((singularity_x(1.0, -l2).unwrap() + 3.0).abs() < 1e-14);
        assert!((singularity_x(1.0, 40.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(singularity_x(1.0, 0.0), Err(Error::ZeroOffset));
        // singular point of the arc agrees, and the arc actually gets there
        let arc = solve_frenet(1.0, l2, CurvatureSign::Positive).unwrap();
        assert_eq!(arc.singular_point(), BoundaryPoint::Finite(1.0 / (0.5 * l2).tanh()));
        let p = arc.point(30.0);
        assert!((p[0] - 3.0).abs() < 1e-10 && p[1] < 1e-10);
        let arc = solve_frenet(1.0, l2, CurvatureSign::Negative).unwrap();
        let p = arc.point(30.0);
        assert!((p[0] - 1.0 / 3.0).abs() < 1e-10 && p[1] < 1e-10);
    }

    #[test]
    fn offset_examples() {
        assert!((s0_from_x(1.0, 3.0, Branch::Catenoid).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((s0_from_x(1.0, 0.5, Branch::InvertedCatenoid).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert_eq!(s0_from_x(1.0, 1.0, Branch::Catenoid), Err(Error::HalfCircleCase));
        assert!(matches!(s0_from_x(1.0, 0.5, Branch::Catenoid), Err(Error::BranchMismatch { .. })));
        assert!(matches!(s0_from_x(1.0, 5.0, Branch::InvertedCatenoid), Err(Error::BranchMismatch { .. })));
    }

    #[test]
    fn partial_energy_examples() {
        assert_eq!(partial_energies(0.0), (4.0, 4.0));
        assert_eq!(partial_energies(50.0), (8.0, 0.0));
        let (p, m) = partial_energies(2f64.ln());
        assert!((p - 6.4).abs() < 1e-14 && (m - 1.6).abs() < 1e-14);
        for s0 in [-3.3, -1e-9, 1e-300, 0.1, 0.77, 18.0, -40.0] {
            let (p, m) = partial_energies(s0);
            assert_eq!(p + m, 8.0);
        }
    }

    #[test]
    fn boundary_examples() {
        let start = UnitTangent::from_angle(0.0, 1.0, 0.0).unwrap();
        let arc = solve_boundary(&start, BoundaryPoint::Finite(3.0)).unwrap();
        assert_eq!(arc.branch(), Branch::Catenoid);
        assert!((arc.s0() - 2f64.ln()).abs() < 1e-15);
        assert!((arc.energy() - 1.6).abs() < 1e-14);
        let arc = solve_boundary(&start, BoundaryPoint::Finite(1.0)).unwrap();
        assert_eq!(arc.branch(), Branch::HalfCircle);
        assert_eq!(arc.energy(), 0.0);
        let arc = solve_boundary(&start, BoundaryPoint::Infinity).unwrap();
        assert_eq!((arc.branch(), arc.s0(), arc.energy()), (Branch::Catenoid, 0.0, 4.0));
        assert_eq!(solve_boundary(&start, BoundaryPoint::Finite(-1.0)), Err(Error::NoCriticalArc));
    }

    #[test]
    fn side_energy_examples() {
        assert_eq!(normalized_side_energy(BoundaryPoint::Finite(1.0)), 0.0);
        assert!((normalized_side_energy(BoundaryPoint::Finite(3.0)) - 1.6).abs() < 1e-15);
        assert_eq!(normalized_side_energy(BoundaryPoint::Finite(-1.0)), 8.0);
        assert_eq!(normalized_side_energy(BoundaryPoint::Infinity), 4.0);
        assert_eq!(normalized_side_energy(BoundaryPoint::Finite(1e300)), 4.0);
    }

    #[test]
    fn solved_arcs_start_and_end_where_asked() {
        let start = UnitTangent::from_angle(-0.4, 1.3, 0.9).unwrap();
        for target in [-5.0, -0.3, 0.2, 2.0, 40.0] {
            let arc = solve_boundary(&start, BoundaryPoint::Finite(target)).unwrap();
            let st = arc.start();
            assert!((st.base().x() + 0.4).abs() < 1e-12 && (st.base().y() - 1.3).abs() < 1e-12);
            let d = st.direction();
            assert!((d[0] - 0.9f64.cos()).abs() < 1e-12 && (d[1] - 0.9f64.sin()).abs() < 1e-12);
            match arc.singular_point() {
                BoundaryPoint::Finite(x) => assert!((x - target).abs() < 1e-9 * (1.0 + target.abs())),
                BoundaryPoint::Infinity => panic!("finite target"),
            }
            let end = arc.point(arc.default_end());
            assert!((end[0] - target).abs() < 1.3 / 100.0 && end[1] < 1.3 / 100.0);
        }
    }
}
