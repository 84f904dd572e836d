//! Discrete gradient flow of the hyperbolic elastic energy for clamped profile curves.
//!
//! A curve is a polyline `p₀ … p_N`. The clamp is realised by freezing the two end
//! edges `p₀p₁` and `p_{N-1}p_N`; the vertices `p₂ … p_{N-2}` move. The energy is
//! `Σ κᵢ² ℓᵢ` over `i = 0 … N`: at interior vertices `κᵢ` is the geodesic curvature of
//! the Euclidean circle through `p_{i-1}, pᵢ, p_{i+1}` (exact for circles, horocycles
//! and geodesics) and `ℓᵢ` is half of each adjacent hyperbolic edge length; at the two
//! endpoints the circle is the one tangent to the clamped direction through the
//! neighbour, weighted by half the end edge.

use nalgebra::SVector;
use num_dual::{gradient, hessian, DualNum};
use serde::Serialize;

use crate::curve::{resample_polyline, SampledCurve};
use crate::error::{End, Error, Result};
use crate::hyper::{edge_length, hyperbolic_length};
use crate::revsurf::{normalize_angle, BoundaryData};

/// Descent direction used by [`step`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Damped Newton in normal offsets: exact Hessian plus a Levenberg shift.
    Newton,
    /// Plain negative gradient, restricted to vertex normals.
    Euclidean,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowConfig {
    pub max_steps: usize,
    pub grad_tol: f64,
    pub initial_step: f64,
    pub backtrack_factor: f64,
    pub armijo_c: f64,
    /// Resample to uniform arclength after this many accepted steps; 0 disables.
    pub reparam_every: usize,
    /// Number of polyline segments.
    pub resolution: usize,
    pub metric: Metric,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            max_steps: 500,
            grad_tol: 1e-6,
            initial_step: 1.0,
            backtrack_factor: 0.5,
            armijo_c: 1e-4,
            reparam_every: 10,
            resolution: 512,
            metric: Metric::Newton,
        }
    }
}

impl FlowConfig {
    /// Explicit gradient descent with small steps and periodic resampling. Very stiff
    /// (step sizes scale like N⁻³); mostly useful for short runs.
    pub fn euclidean() -> Self {
        Self {
            max_steps: 20_000,
            initial_step: 1e-2,
            reparam_every: 50,
            metric: Metric::Euclidean,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        if !(self.grad_tol > 0.0) {
            return bad("grad_tol must be positive");
        }
        if !(self.initial_step > 0.0) {
            return bad("initial_step must be positive");
        }
        if !(self.backtrack_factor > 0.0 && self.backtrack_factor < 1.0) {
            return bad("backtrack_factor must lie in (0, 1)");
        }
        if !(self.armijo_c > 0.0 && self.armijo_c < 1.0) {
            return bad("armijo_c must lie in (0, 1)");
        }
        if self.resolution < 32 {
            return bad("resolution must be at least 32");
        }
        Ok(())
    }
}

/// Clamped end tangents (direction of traversal) at the two endpoints.
///
/// In the discrete problem the first and last edges are frozen together with the
/// endpoints; the tangents enter only through the constant end contributions of the
/// energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Clamps {
    pub t_minus: [f64; 2],
    pub t_plus: [f64; 2],
}

impl Clamps {
    /// One-sided end tangents of a sampled curve.
    pub fn from_curve(curve: &SampledCurve) -> Result<Self> {
        if curve.len() < 5 {
            return Err(Error::InsufficientResolution { needed: 5, got: curve.len() });
        }
        Ok(Self {
            t_minus: curve.end_tangent(End::Start),
            t_plus: curve.end_tangent(End::Finish),
        })
    }

    pub fn from_boundary_data(bd: &BoundaryData) -> Self {
        Self {
            t_minus: [bd.beta_minus.cos(), bd.beta_minus.sin()],
            // β₊ points back into the curve
            t_plus: [-bd.beta_plus.cos(), -bd.beta_plus.sin()],
        }
    }

    pub fn boundary_data(&self, p_minus: [f64; 2], p_plus: [f64; 2]) -> BoundaryData {
        BoundaryData {
            x_minus: p_minus[0],
            x_plus: p_plus[0],
            alpha_minus: p_minus[1],
            alpha_plus: p_plus[1],
            beta_minus: normalize_angle(self.t_minus[1].atan2(self.t_minus[0])),
            beta_plus: normalize_angle((-self.t_plus[1]).atan2(-self.t_plus[0])),
        }
    }
}

/// Free coordinates `[x₂, y₂, …, x_{N-2}, y_{N-2}]`; the two end edges are frozen.
pub fn to_free(points: &[[f64; 2]]) -> Vec<f64> {
    points[2..points.len() - 2].iter().flatten().copied().collect()
}

/// Inverse of [`to_free`], taking the frozen end edges from `frame`.
pub fn from_free(frame: &[[f64; 2]], q: &[f64]) -> Vec<[f64; 2]> {
    let n = frame.len() - 1;
    let mut pts = Vec::with_capacity(n + 1);
    pts.extend_from_slice(&frame[..2]);
    pts.extend(q.chunks_exact(2).map(|c| [c[0], c[1]]));
    pts.extend_from_slice(&frame[n - 1..]);
    pts
}

/// Geodesic curvature of the Euclidean circle through `a, b, c`, evaluated at `b`,
/// for traversal `a → b → c`.
pub fn circle_curvature<D: DualNum<Primitive = f64> + Copy>(a: [D; 2], b: [D; 2], c: [D; 2]) -> D {
    let u = [a[0] - b[0], a[1] - b[1]];
    let v = [c[0] - b[0], c[1] - b[1]];
    let uu = u[0] * u[0] + u[1] * u[1];
    let vv = v[0] * v[0] + v[1] * v[1];
    let cross = u[0] * v[1] - u[1] * v[0];
    // w is 2·cross times the offset from b to the circumcentre
    let wx = v[1] * uu - u[1] * vv;
    let wy = u[0] * vv - v[0] * uu;
    let norm = (wx * wx + wy * wy).sqrt();
    (cross * b[1] * (-2.0) - wy) / norm
}

fn edge<D: DualNum<Primitive = f64> + Copy>(p: [D; 2], q: [D; 2]) -> D {
    let dx = q[0] - p[0];
    let dy = q[1] - p[1];
    let e = (dx * dx + dy * dy).sqrt();
    (e / ((p[1] * q[1]).sqrt() * 2.0)).asinh() * 2.0
}

/// Energy contribution of interior vertex `b` with neighbours `a`, `c`.
fn vertex_term<D: DualNum<Primitive = f64> + Copy>(a: [D; 2], b: [D; 2], c: [D; 2]) -> D {
    let k = circle_curvature(a, b, c);
    k * k * (edge(a, b) + edge(b, c)) * 0.5
}

fn term_vec<D: DualNum<Primitive = f64> + Copy>(v: SVector<D, 6>) -> D {
    vertex_term([v[0], v[1]], [v[2], v[3]], [v[4], v[5]])
}

/// Half end edge `p q` weighted by the curvature of the circle tangent to `t` at `p`
/// through `q`.
fn end_term(p: [f64; 2], t: [f64; 2], q: [f64; 2], end: End) -> f64 {
    // mirror q in the normal line at p
    let along = (q[0] - p[0]) * t[0] + (q[1] - p[1]) * t[1];
    let g = [q[0] - 2.0 * along * t[0], q[1] - 2.0 * along * t[1]];
    let k = match end {
        End::Start => circle_curvature(g, p, q),
        End::Finish => circle_curvature(q, p, g),
    };
    k * k * edge(p, q) * 0.5
}

fn check_heights(points: &[[f64; 2]]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if !(p[1] > 0.0) {
            return Err(Error::AxisContact { index: i, y: p[1] });
        }
    }
    Ok(())
}

fn energy_of_points(clamps: &Clamps, points: &[[f64; 2]]) -> f64 {
    let n = points.len() - 1;
    let interior: f64 = (1..n).map(|i| vertex_term(points[i - 1], points[i], points[i + 1])).sum();
    interior
        + end_term(points[0], clamps.t_minus, points[1], End::Start)
        + end_term(points[n], clamps.t_plus, points[n - 1], End::Finish)
}

fn check_len(curve: &SampledCurve) -> Result<()> {
    if curve.len() < 5 {
        return Err(Error::InsufficientResolution { needed: 5, got: curve.len() });
    }
    Ok(())
}

/// Discrete elastic energy of a polyline, clamped at its own end tangents.
pub fn discrete_energy(curve: &SampledCurve) -> Result<f64> {
    check_len(curve)?;
    discrete_energy_with(curve, &Clamps::from_curve(curve)?)
}

/// Discrete elastic energy with prescribed end tangents.
pub fn discrete_energy_with(curve: &SampledCurve, clamps: &Clamps) -> Result<f64> {
    check_heights(curve.points())?;
    check_len(curve)?;
    Ok(energy_of_points(clamps, curve.points()))
}

/// Vertex curvatures `(s, κ)` at vertices `1 … N-1`, with `s` the hyperbolic arclength
/// from `p₀`.
pub fn vertex_curvatures(curve: &SampledCurve) -> Result<Vec<(f64, f64)>> {
    let p = curve.points();
    check_heights(p)?;
    let mut s = 0.0;
    let mut out = Vec::with_capacity(p.len());
    for i in 1..p.len() - 1 {
        s += edge_length(p[i - 1], p[i]);
        out.push((s, circle_curvature(p[i - 1], p[i], p[i + 1])));
    }
    Ok(out)
}

/// Offset of vertex `j` in the free coordinates, if it is free.
fn slot(n: usize, j: usize) -> Option<usize> {
    (j >= 2 && j + 2 <= n).then(|| 2 * (j - 2))
}

fn local(points: &[[f64; 2]], i: usize) -> SVector<f64, 6> {
    let (a, b, c) = (points[i - 1], points[i], points[i + 1]);
    SVector::from([a[0], a[1], b[0], b[1], c[0], c[1]])
}

fn assemble_gradient(points: &[[f64; 2]]) -> Vec<f64> {
    let n = points.len() - 1;
    let mut g = vec![0.0; 2 * n - 6];
    for i in 1..n {
        let (_, gl) = gradient(term_vec, &local(points, i));
        for k in 0..6 {
            if let Some(base) = slot(n, i - 1 + k / 2) {
                g[base + k % 2] += gl[k];
            }
        }
    }
    g
}

/// Half bandwidth of the Hessian in normal offsets.
const BW: usize = 2;

/// Symmetric band matrix, lower part stored row by row.
#[derive(Clone)]
struct Band {
    n: usize,
    data: Vec<f64>,
}

impl Band {
    fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * (BW + 1)] }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (BW + 1) + (i - j)]
    }

    fn add(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        debug_assert!(i - j <= BW);
        self.data[i * (BW + 1) + (i - j)] += v;
    }

    /// Cholesky factor of `self + mu·diag(scale)`, or `None` if not positive definite.
    fn cholesky(&self, mu: f64, scale: &[f64]) -> Option<Band> {
        let mut l = self.clone();
        for i in 0..self.n {
            l.data[i * (BW + 1)] += mu * scale[i];
        }
        for j in 0..self.n {
            let lo = j.saturating_sub(BW);
            let mut s = l.at(j, j);
            for k in lo..j {
                s -= l.at(j, k) * l.at(j, k);
            }
            if !(s > 0.0) {
                return None;
            }
            let d = s.sqrt();
            l.data[j * (BW + 1)] = d;
            for i in j + 1..(j + BW + 1).min(self.n) {
                let lo = i.saturating_sub(BW);
                let mut s = l.at(i, j);
                for k in lo..j {
                    s -= l.at(i, k) * l.at(j, k);
                }
                l.data[i * (BW + 1) + (i - j)] = s / d;
            }
        }
        Some(l)
    }

    /// Solves `L Lᵀ x = b` with `self` holding `L`.
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in i.saturating_sub(BW)..i {
                s -= self.at(i, k) * y[k];
            }
            y[i] = s / self.at(i, i);
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..(i + BW + 1).min(n) {
                s -= self.at(k, i) * y[k];
            }
            y[i] = s / self.at(i, i);
        }
        y
    }
}

/// Unit normals (left of the direction of traversal) at the free vertices.
fn normals(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    (2..points.len() - 2)
        .map(|j| {
            let d = [points[j + 1][0] - points[j - 1][0], points[j + 1][1] - points[j - 1][1]];
            let l = d[0].hypot(d[1]);
            [-d[1] / l, d[0] / l]
        })
        .collect()
}

fn normal_part(g: &[f64], nrm: &[[f64; 2]]) -> Vec<f64> {
    nrm.iter().enumerate().map(|(a, n)| g[2 * a] * n[0] + g[2 * a + 1] * n[1]).collect()
}

/// Gradient and Hessian of the energy in the normal offsets `p_j + u_j n_j`.
fn normal_system(points: &[[f64; 2]], nrm: &[[f64; 2]]) -> (Vec<f64>, Band) {
    let n = points.len() - 1;
    let m = nrm.len();
    let mut g = vec![0.0; m];
    let mut h = Band::zeros(m);
    for i in 1..n {
        let (_, gl, hl) = hessian(term_vec, &local(points, i));
        let free: Vec<Option<usize>> = (0..3).map(|r| slot(n, i - 1 + r).map(|b| b / 2)).collect();
        for r in 0..3 {
            let Some(a) = free[r] else { continue };
            let na = nrm[a];
            g[a] += gl[2 * r] * na[0] + gl[2 * r + 1] * na[1];
            for c in 0..3 {
                let Some(b) = free[c] else { continue };
                if b > a {
                    continue;
                }
                let nb = nrm[b];
                let mut v = 0.0;
                for k in 0..2 {
                    for l in 0..2 {
                        v += na[k] * hl[(2 * r + k, 2 * c + l)] * nb[l];
                    }
                }
                h.add(a, b, v);
            }
        }
    }
    (g, h)
}

/// Gradient of [`discrete_energy`] in the free coordinates of [`to_free`]. The
/// end contributions do not depend on free vertices, so no clamps are needed.
pub fn discrete_gradient(curve: &SampledCurve) -> Result<Vec<f64>> {
    check_heights(curve.points())?;
    check_len(curve)?;
    Ok(assemble_gradient(curve.points()))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Current state of a flow.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub curve: SampledCurve,
    pub clamps: BoundaryData,
    pub step_count: usize,
    pub energy: f64,
    pub grad_norm: f64,
    /// Step size accepted by the last call to [`step`] (0 if it did not move).
    pub last_step: f64,
    tangents: Clamps,
    damping: f64,
}

/// Parameters hyperbolic arclength from the start.
fn curve_from_points(points: Vec<[f64; 2]>) -> Result<SampledCurve> {
    let mut s = Vec::with_capacity(points.len());
    let mut acc = 0.0;
    s.push(0.0);
    for w in points.windows(2) {
        acc += edge_length(w[0], w[1]);
        s.push(acc);
    }
    SampledCurve::new(s, points)
}

impl FlowState {
    /// State for a curve, clamped at its own end tangents.
    pub fn new(curve: &SampledCurve) -> Result<Self> {
        check_len(curve)?;
        Self::with_clamps(curve, &Clamps::from_curve(curve)?)
    }

    pub fn with_clamps(curve: &SampledCurve, clamps: &Clamps) -> Result<Self> {
        check_len(curve)?;
        Self::from_points(curve.points().to_vec(), *clamps, 0)
    }

    fn from_points(points: Vec<[f64; 2]>, tangents: Clamps, step_count: usize) -> Result<Self> {
        check_heights(&points)?;
        let g = assemble_gradient(&points);
        let n = points.len() - 1;
        Ok(Self {
            energy: energy_of_points(&tangents, &points),
            grad_norm: norm(&normal_part(&g, &normals(&points))),
            clamps: tangents.boundary_data(points[0], points[n]),
            curve: curve_from_points(points)?,
            step_count,
            last_step: 0.0,
            tangents,
            damping: 0.0,
        })
    }

    pub fn tangents(&self) -> &Clamps {
        &self.tangents
    }

    /// Resamples vertices `2 … N-2` to uniform Euclidean spacing between `p₁` and `p_{N-1}`.
    fn resampled(&self) -> Result<Self> {
        let p = self.curve.points();
        let n = p.len() - 1;
        let mut pts = vec![p[0]];
        pts.extend(resample_polyline(&p[1..n], n - 2));
        pts.push(p[n]);
        let mut s = Self::from_points(pts, self.tangents, self.step_count)?;
        s.damping = self.damping;
        s.last_step = self.last_step;
        Ok(s)
    }
}

fn neg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| -x).collect()
}

/// One descent step with Armijo backtracking. A state whose gradient norm is already
/// below `grad_tol` is returned unchanged.
pub fn step(state: &FlowState, config: &FlowConfig) -> Result<FlowState> {
    config.validate()?;
    if state.grad_norm <= config.grad_tol {
        let mut s = state.clone();
        s.last_step = 0.0;
        return Ok(s);
    }
    let points = state.curve.points();
    let nrm = normals(points);
    let e0 = state.energy;
    let mut damping = state.damping;
    let (g, mut dir) = match config.metric {
        Metric::Euclidean => {
            let g = normal_part(&assemble_gradient(points), &nrm);
            let d = neg(&g);
            (g, d)
        }
        Metric::Newton => {
            let (g, h) = normal_system(points, &nrm);
            // identity shift scaled to the stiffest offset
            let hmax = (0..h.n).map(|i| h.at(i, i).abs()).fold(0.0, f64::max);
            let unit = vec![hmax; h.n];
            let mut factor = None;
            for _ in 0..80 {
                if let Some(l) = h.cholesky(damping, &unit) {
                    factor = Some(l);
                    break;
                }
                damping = (damping * 4.0).max(1e-14);
            }
            let d = match factor {
                Some(l) => neg(&l.solve(&g)),
                None => neg(&g),
            };
            (g, d)
        }
    };
    let mut slope: f64 = g.iter().zip(&dir).map(|(a, b)| a * b).sum();
    if !(slope < 0.0) {
        dir = neg(&g);
        slope = -g.iter().map(|x| x * x).sum::<f64>();
    }
    let mut tau = config.initial_step;
    loop {
        if tau < 1e-16 {
            return Err(Error::StepFailure { tau });
        }
        let mut pts = points.to_vec();
        for (a, (u, nv)) in dir.iter().zip(&nrm).enumerate() {
            pts[a + 2] = [pts[a + 2][0] + tau * u * nv[0], pts[a + 2][1] + tau * u * nv[1]];
        }
        if pts.iter().all(|p| p[1] > 0.0) {
            let e = energy_of_points(&state.tangents, &pts);
            if e.is_finite() && e < e0 && e <= e0 + config.armijo_c * tau * slope {
                let mut next = FlowState::from_points(pts, state.tangents, state.step_count + 1)?;
                next.last_step = tau;
                next.damping = if tau == config.initial_step {
                    if damping < 1e-10 { 0.0 } else { damping * 0.25 }
                } else {
                    (damping * 4.0).max(1e-12)
                };
                return Ok(next);
            }
        }
        tau *= config.backtrack_factor;
    }
}

/// One row of the flow monitors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonitorRecord {
    pub step: usize,
    pub energy: f64,
    pub energy_before: f64,
    pub hyp_length: f64,
    pub min_height: f64,
    pub grad_norm: f64,
    pub accepted_step: f64,
    pub resampled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowMonitors {
    /// The state before the first step.
    pub initial: MonitorRecord,
    /// One record per accepted step.
    pub records: Vec<MonitorRecord>,
    pub converged: bool,
    pub stop_reason: Option<String>,
}

impl FlowMonitors {
    pub fn max_hyp_length(&self) -> f64 {
        self.records.iter().map(|r| r.hyp_length).fold(self.initial.hyp_length, f64::max)
    }

    /// Rows for the monitor CSV: the initial state as step 0, then every accepted step.
    pub fn table(&self) -> Vec<Vec<f64>> {
        std::iter::once(&self.initial)
            .chain(&self.records)
            .map(|r| vec![r.step as f64, r.energy, r.hyp_length, r.min_height, r.grad_norm, r.accepted_step])
            .collect()
    }

    pub const HEADER: [&'static str; 6] = ["step", "energy", "hyp_length", "min_height", "grad_norm", "accepted_step"];
}

fn record(state: &FlowState, energy_before: f64) -> Result<MonitorRecord> {
    Ok(MonitorRecord {
        step: state.step_count,
        energy: state.energy,
        energy_before,
        hyp_length: hyperbolic_length(&state.curve)?,
        min_height: state.curve.min_height(),
        grad_norm: state.grad_norm,
        accepted_step: state.last_step,
        resampled: false,
    })
}

/// Runs the flow until the gradient norm drops below `grad_tol` or `max_steps` is hit.
/// Clamps are the endpoints and end tangents of `initial`; a curve with a different
/// number of segments than `config.resolution` is resampled first.
pub fn run(initial: &SampledCurve, config: &FlowConfig) -> Result<(FlowState, FlowMonitors)> {
    run_with_clamps(initial, &Clamps::from_curve(initial)?, config)
}

pub fn run_with_clamps(initial: &SampledCurve, clamps: &Clamps, config: &FlowConfig) -> Result<(FlowState, FlowMonitors)> {
    config.validate()?;
    let curve = if initial.len() == config.resolution + 1 {
        initial.clone()
    } else {
        initial.resample_uniform(config.resolution)?
    };
    let mut state = FlowState::with_clamps(&curve, clamps)?;
    let mut mon = FlowMonitors {
        initial: record(&state, state.energy)?,
        records: Vec::new(),
        converged: false,
        stop_reason: None,
    };
    while state.grad_norm > config.grad_tol && state.step_count < config.max_steps {
        let before = state.energy;
        match step(&state, config) {
            Ok(next) => state = next,
            Err(Error::StepFailure { tau }) => {
                mon.stop_reason = Some(format!(
                    "line search failed at step {} (tau = {tau:e}, grad_norm = {:e})",
                    state.step_count + 1,
                    state.grad_norm
                ));
                break;
            }
            Err(e) => return Err(e),
        }
        let mut rec = record(&state, before)?;
        if config.reparam_every > 0 && state.step_count % config.reparam_every == 0 {
            state = state.resampled()?;
            rec.resampled = true;
        }
        mon.records.push(rec);
    }
    mon.converged = state.grad_norm <= config.grad_tol;
    if !mon.converged && mon.stop_reason.is_none() {
        mon.stop_reason = Some(format!("max_steps = {} reached", config.max_steps));
    }
    Ok((state, mon))
}
