//! The energy threshold `inf_x W_closed(S(c^x))` over axis points `x ∈ R ∪ {∞}` and
//! admissibility of initial curves against it and against the flat `8π` bound.

use std::f64::consts::PI;

use num_dual::{second_derivative, DualNum};
use serde::{Serialize, Serializer};

use crate::curve::SampledCurve;
use crate::elastica::{solve_boundary, Orientation};
use crate::error::{Error, Result};
use crate::hyper::{frame_map, BoundaryPoint, MoebiusMap};
use crate::revsurf::{
    cap_curve, closed_willmore_energy, read_boundary_data, willmore_energy, BoundaryData,
};

/// The earlier admissibility bound `8π`.
pub const SCHLIERF_BOUND: f64 = 8.0 * PI;

/// Grid size of the compactified scan.
pub const SCAN_POINTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    #[serde(serialize_with = "ser_boundary_point")]
    pub x_star: BoundaryPoint,
    pub value: f64,
    pub schlierf_bound: f64,
    pub curve_energy: Option<f64>,
    pub admissible_improved: Option<bool>,
    pub admissible_schlierf: Option<bool>,
    pub margin: Option<f64>,
}

impl ThresholdResult {
    /// How far the threshold lies above `8π`.
    pub fn improvement(&self) -> f64 {
        self.value - self.schlierf_bound
    }
}

fn ser_boundary_point<S: Serializer>(q: &BoundaryPoint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        BoundaryPoint::Finite(x) => s.serialize_f64(*x),
        BoundaryPoint::Infinity => s.serialize_str("inf"),
    }
}

/// `x ↦ W_h(c^x)` for fixed boundary data, as the sum of two side energies
/// `4 - 8u / (1 + u²)` in the frames of the two clamps.
#[derive(Debug, Clone, Copy)]
pub struct PairObjective {
    minus: MoebiusMap,
    plus: MoebiusMap,
}

/// `u / (1 + u²)` for `u = n / d`, without dividing by `d`.
fn ratio<D: DualNum<Primitive = f64> + Copy>(n: D, d: D) -> D {
    n * d / (d * d + n * n)
}

impl PairObjective {
    pub fn new(bd: &BoundaryData) -> Result<Self> {
        bd.validate()?;
        Ok(Self {
            minus: frame_map(1.0, &bd.start_minus()?),
            plus: frame_map(1.0, &bd.start_plus()?),
        })
    }

    fn side<D: DualNum<Primitive = f64> + Copy>(m: &MoebiusMap, x: Option<D>) -> D {
        let [a, b, c, d] = m.coefficients();
        let (n, den) = match x {
            Some(x) => (x * a + b, x * c + d),
            None => (D::one() * a, D::one() * c),
        };
        D::one() * 4.0 - ratio(n, den) * 8.0
    }

    fn eval<D: DualNum<Primitive = f64> + Copy>(&self, x: Option<D>) -> D {
        Self::side(&self.minus, x) + Self::side(&self.plus, x)
    }

    /// `W_h(c^x)`.
    pub fn pair(&self, x: BoundaryPoint) -> f64 {
        self.eval::<f64>(x.finite())
    }

    /// `W_closed(S(c^x)) = (π/2) W_h(c^x) + 8π`.
    pub fn closed(&self, x: BoundaryPoint) -> f64 {
        0.5 * PI * self.pair(x) + 8.0 * PI
    }

    fn closed_t(&self, t: f64) -> f64 {
        self.closed(point_of_t(t))
    }
}

/// `t ∈ [0, 1)` to the compactified line; `t ≡ 0 (mod 1)` is `∞`.
fn point_of_t(t: f64) -> BoundaryPoint {
    let f = t.rem_euclid(1.0);
    if f == 0.0 {
        BoundaryPoint::Infinity
    } else {
        BoundaryPoint::Finite((PI * (f - 0.5)).tan())
    }
}

/// Elastic energy of `c^x`, both critical arcs from the clamps to `(x, 0)`.
pub fn pair_elastic_energy(bd: &BoundaryData, x: BoundaryPoint) -> Result<f64> {
    Ok(PairObjective::new(bd)?.pair(x))
}

/// Closed Willmore energy of `c^x` with its caps.
pub fn closed_energy_of_cx(bd: &BoundaryData, x: BoundaryPoint) -> Result<f64> {
    Ok(PairObjective::new(bd)?.closed(x))
}

fn better(a: (BoundaryPoint, f64), b: (BoundaryPoint, f64)) -> bool {
    let scale = a.1.abs().max(b.1.abs());
    if (a.1 - b.1).abs() > 1e-13 * scale {
        return a.1 < b.1;
    }
    match (a.0, b.0) {
        (BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => x.abs() < y.abs() || (x.abs() == y.abs() && x < y),
        (BoundaryPoint::Finite(_), BoundaryPoint::Infinity) => true,
        _ => false,
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn golden(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let x = (PI * (mid - 0.5)).tan().abs();
        let tol = 1e-10 * x.max(1.0) / (PI * (1.0 + x * x));
        if b - a < tol || b - a <= 4.0 * f64::EPSILON * mid.abs().max(1.0) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        c
    } else {
        d
    }
}

/// Newton steps on the derivative; only improvements are kept.
fn polish(obj: &PairObjective, x0: f64) -> f64 {
    let mut x = x0;
    let mut fx = obj.pair(BoundaryPoint::Finite(x));
    for _ in 0..30 {
        let (_, d1, d2) = second_derivative(|z| obj.eval(Some(z)), x);
        if !(d2 > 0.0) {
            break;
        }
        let step = d1 / d2;
        let xn = x - step;
        let fn_ = obj.pair(BoundaryPoint::Finite(xn));
        if !(fn_ <= fx) {
            break;
        }
        x = xn;
        fx = fn_;
        if step.abs() <= 1e-15 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Global minimum of the closed energy of `c^x` over `x ∈ R ∪ {∞}`.
///
/// A uniform scan in `t` with `x = tan(π(t - ½))` finds every local minimum of the grid;
/// each is refined by golden-section search and Newton steps. Ties go to the
/// smallest `|x|`, with `∞` last.
pub fn minimize_threshold(bd: &BoundaryData) -> Result<ThresholdResult> {
    let obj = PairObjective::new(bd)?;
    let n = SCAN_POINTS;
    let h = 1.0 / n as f64;
    let vals: Vec<f64> = (0..n).map(|k| obj.closed_t(k as f64 * h)).collect();
    let mut best = (BoundaryPoint::Infinity, vals[0]);
    for k in 0..n {
        let (l, r) = (vals[(k + n - 1) % n], vals[(k + 1) % n]);
        if !(vals[k] <= l && vals[k] <= r) {
            continue;
        }
        let t = golden(|t| obj.closed_t(t), (k as f64 - 1.0) * h, (k as f64 + 1.0) * h);
        let mut cand = match point_of_t(t) {
            BoundaryPoint::Finite(x) => {
                let x = polish(&obj, x);
                (BoundaryPoint::Finite(x), obj.closed(BoundaryPoint::Finite(x)))
            }
            inf => (inf, obj.closed(inf)),
        };
        if k != 0 && !better(cand, (point_of_t(k as f64 * h), vals[k])) {
            cand = (point_of_t(k as f64 * h), vals[k]);
        }
        if better(cand, best) {
            best = cand;
        }
    }
    Ok(ThresholdResult {
        x_star: best.0,
        value: best.1,
        schlierf_bound: SCHLIERF_BOUND,
        curve_energy: None,
        admissible_improved: None,
        admissible_schlierf: None,
        margin: None,
    })
}

/// Threshold for horizontal clamping at `x = ∓1` over a grid of `alpha_plus`.
pub fn asymptotic_probe(alpha_minus: f64, alpha_plus_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if alpha_plus_grid.is_empty() {
        return Err(Error::InvalidParameter("empty alpha_plus grid".into()));
    }
    if alpha_plus_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("alpha_plus grid must be increasing".into()));
    }
    alpha_plus_grid
        .iter()
        .map(|&ap| Ok((ap, minimize_threshold(&BoundaryData::horizontal(alpha_minus, ap))?.value)))
        .collect()
}

/// Compares a curve's closed Willmore energy with the threshold of its own
/// boundary data and with `8π`.
pub fn admissibility(curve: &SampledCurve) -> Result<ThresholdResult> {
    let bd = read_boundary_data(curve)?;
    let energy = closed_willmore_energy(curve, &bd)?
        .closed_willmore
        .expect("closed energy with boundary data");
    let mut r = minimize_threshold(&bd)?;
    r.curve_energy = Some(energy);
    r.admissible_improved = Some(energy <= r.value);
    r.admissible_schlierf = Some(energy <= SCHLIERF_BOUND);
    r.margin = Some(r.value - energy);
    Ok(r)
}

/// Sampled pieces of the closed configuration: both caps and both critical arcs,
/// ordered along the profile from the left axis point to the right one.
#[derive(Debug, Clone)]
pub struct CxPieces {
    pub cap_minus: SampledCurve,
    pub arc_minus: SampledCurve,
    pub arc_plus: SampledCurve,
    pub cap_plus: SampledCurve,
    pub density_infinity: f64,
}

/// Samples `c^x` (each arc with `n` intervals up to the default truncation) and its caps.
pub fn assemble_cx(bd: &BoundaryData, x: BoundaryPoint, n: usize) -> Result<CxPieces> {
    bd.validate()?;
    let am = solve_boundary(&bd.start_minus()?, x)?;
    let ap = solve_boundary(&bd.start_plus()?, x)?.with_orientation(Orientation::Backward);
    let (cm, cp) = (bd.cap_minus(), bd.cap_plus());
    let branch = crate::revsurf::VerticalBranch::Standard;
    Ok(CxPieces {
        cap_minus: cap_curve(&cm, n + 1)?.reversed(),
        arc_minus: am.sample(n)?,
        arc_plus: ap.sample(n)?,
        cap_plus: cap_curve(&cp, n + 1)?,
        density_infinity: cm.density_infinity(branch) + cp.density_infinity(branch),
    })
}

/// Closed energy of `c^x` by quadrature over all sampled pieces.
pub fn sampled_closed_energy(bd: &BoundaryData, x: BoundaryPoint, n: usize) -> Result<f64> {
    if x.is_infinite() {
        return Err(Error::InvalidParameter(
            "quadrature of c^x needs a finite axis point".into(),
        ));
    }
    let p = assemble_cx(bd, x, n)?;
    let mut total = 4.0 * PI * p.density_infinity;
    for c in [&p.cap_minus, &p.arc_minus, &p.arc_plus, &p.cap_plus] {
        total += willmore_energy(c)?;
    }
    Ok(total)
}
