//! Sampled profile curves in the closed upper half-plane.

use crate::diff::{centered3, fornberg};
use crate::error::{End, Error, Result};

/// Polyline approximation of a profile curve together with its parameter values.
///
/// Interior samples lie strictly above the axis; the two endpoints may sit on it.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    params: Vec<f64>,
    points: Vec<[f64; 2]>,
}

impl SampledCurve {
    pub fn new(params: Vec<f64>, points: Vec<[f64; 2]>) -> Result<Self> {
        if params.len() != points.len() {
            return Err(Error::InvalidCurve(format!(
                "{} parameters for {} points",
                params.len(),
                points.len()
            )));
        }
        if points.len() < 2 {
            return Err(Error::InsufficientResolution {
                needed: 2,
                got: points.len(),
            });
        }
        for (i, (s, p)) in params.iter().zip(&points).enumerate() {
            if !(s.is_finite() && p[0].is_finite() && p[1].is_finite()) {
                return Err(Error::InvalidCurve(format!("sample {i} is not finite")));
            }
        }
        for i in 1..params.len() {
            if params[i] <= params[i - 1] {
                return Err(Error::InvalidCurve(format!(
                    "parameter not strictly increasing at sample {i}"
                )));
            }
            if points[i] == points[i - 1] {
                return Err(Error::InvalidCurve(format!(
                    "samples {} and {i} coincide",
                    i - 1
                )));
            }
        }
        let last = points.len() - 1;
        for (i, p) in points.iter().enumerate() {
            let interior = i != 0 && i != last;
            if p[1] < 0.0 || (interior && p[1] == 0.0) {
                return Err(Error::AxisContact { index: i, y: p[1] });
            }
        }
        Ok(Self { params, points })
    }

    /// Samples `f` at `n + 1` equally spaced parameters on `[a, b]`.
    pub fn from_fn(a: f64, b: f64, n: usize, f: impl Fn(f64) -> [f64; 2]) -> Result<Self> {
        if n == 0 || b <= a {
            return Err(Error::InvalidParameter(format!(
                "need n >= 1 and a < b (got n = {n}, [{a}, {b}])"
            )));
        }
        let params: Vec<f64> = (0..=n)
            .map(|k| if k == n { b } else { a + (b - a) * k as f64 / n as f64 })
            .collect();
        let points = params.iter().map(|&s| f(s)).collect();
        Self::new(params, points)
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> [f64; 2] {
        self.points[0]
    }

    pub fn last(&self) -> [f64; 2] {
        self.points[self.points.len() - 1]
    }

    /// Whether the start and the end touch the axis.
    pub fn axis_touch(&self) -> (bool, bool) {
        (self.first()[1] == 0.0, self.last()[1] == 0.0)
    }

    /// Same image, opposite traversal; parameters are negated.
    pub fn reversed(&self) -> Self {
        Self {
            params: self.params.iter().rev().map(|s| -s).collect(),
            points: self.points.iter().rev().copied().collect(),
        }
    }

    /// Applies `f` to every point, keeping the parameters.
    pub fn map_points(&self, f: impl Fn([f64; 2]) -> [f64; 2]) -> Result<Self> {
        Self::new(self.params.clone(), self.points.iter().map(|&p| f(p)).collect())
    }

    /// First and second coordinate derivatives at an interior sample.
    pub fn derivatives(&self, index: usize) -> Result<([f64; 2], [f64; 2])> {
        if index == 0 || index + 1 >= self.len() {
            return Err(Error::BoundaryIndex {
                index,
                len: self.len(),
            });
        }
        let h1 = self.params[index] - self.params[index - 1];
        let h2 = self.params[index + 1] - self.params[index];
        let (w1, w2) = centered3(h1, h2);
        let p = &self.points[index - 1..=index + 1];
        // differences relative to the centre sample keep large offsets out of the sum
        let c = p[1];
        let mut d1 = [0.0; 2];
        let mut d2 = [0.0; 2];
        for k in 0..2 {
            let f = [p[0][k] - c[k], 0.0, p[2][k] - c[k]];
            d1[k] = w1[0] * f[0] + w1[2] * f[2];
            d2[k] = w2[0] * f[0] + w2[2] * f[2];
        }
        Ok((d1, d2))
    }

    /// Unit tangent at an endpoint in the direction of traversal, from a
    /// one-sided stencil on up to five samples.
    pub fn end_tangent(&self, end: End) -> [f64; 2] {
        let n = self.len();
        let m = n.min(5);
        let idx: Vec<usize> = match end {
            End::Start => (0..m).collect(),
            End::Finish => (n - m..n).rev().collect(),
        };
        let z = self.params[idx[0]];
        let nodes: Vec<f64> = idx.iter().map(|&i| self.params[i]).collect();
        let w = fornberg(z, &nodes, 1);
        let c = self.points[idx[0]];
        let mut d = [0.0; 2];
        for (j, &i) in idx.iter().enumerate() {
            d[0] += w[1][j] * (self.points[i][0] - c[0]);
            d[1] += w[1][j] * (self.points[i][1] - c[1]);
        }
        let norm = d[0].hypot(d[1]);
        [d[0] / norm, d[1] / norm]
    }

    /// Resamples to `n + 1` points equally spaced in Euclidean arclength
    /// by linear interpolation along the polyline.
    pub fn resample_uniform(&self, n: usize) -> Result<Self> {
        let pts = resample_polyline(&self.points, n);
        let len = *cumulative_length(&self.points).last().unwrap();
        let params = (0..=n).map(|k| len * k as f64 / n as f64).collect();
        Self::new(params, pts)
    }

    /// Unit tangent and signed Euclidean curvature of the circle through the sample
    /// and its two neighbours. Depends on the three points only, not on the parameters.
    pub fn tangent_and_curvature(&self, index: usize) -> Result<([f64; 2], f64)> {
        if index == 0 || index + 1 >= self.len() {
            return Err(Error::BoundaryIndex {
                index,
                len: self.len(),
            });
        }
        let p = &self.points[index - 1..=index + 1];
        Ok((circle_tangent(p[0], p[1], p[2]), menger_curvature(p[0], p[1], p[2])))
    }

    pub fn min_height(&self) -> f64 {
        self.points.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min)
    }
}

/// Unit tangent at `b` of the circle through `a`, `b`, `c`, oriented from `a` to `c`:
/// inversion at `b` maps that circle to a line along `u/|u|² + v/|v|²`.
pub fn circle_tangent(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> [f64; 2] {
    let u = [b[0] - a[0], b[1] - a[1]];
    let v = [c[0] - b[0], c[1] - b[1]];
    let (uu, vv) = (u[0] * u[0] + u[1] * u[1], v[0] * v[0] + v[1] * v[1]);
    let t = [u[0] / uu + v[0] / vv, u[1] / uu + v[1] / vv];
    let n = t[0].hypot(t[1]);
    [t[0] / n, t[1] / n]
}

/// Signed curvature of the circle through three points, positive for a left turn.
pub fn menger_curvature(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1]];
    let v = [c[0] - b[0], c[1] - b[1]];
    let w = [c[0] - a[0], c[1] - a[1]];
    let cross = u[0] * v[1] - u[1] * v[0];
    2.0 * cross / (u[0].hypot(u[1]) * v[0].hypot(v[1]) * w[0].hypot(w[1]))
}

pub(crate) fn cumulative_length(points: &[[f64; 2]]) -> Vec<f64> {
    let mut acc = Vec::with_capacity(points.len());
    let mut total = 0.0;
    acc.push(0.0);
    for w in points.windows(2) {
        total += (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]);
        acc.push(total);
    }
    acc
}

/// `n + 1` points equally spaced in arclength along a polyline; both ends kept exactly.
pub(crate) fn resample_polyline(points: &[[f64; 2]], n: usize) -> Vec<[f64; 2]> {
    let acc = cumulative_length(points);
    let total = *acc.last().unwrap();
    let mut out = Vec::with_capacity(n + 1);
    out.push(points[0]);
    let mut seg = 0;
    for k in 1..n {
        let target = total * k as f64 / n as f64;
        while seg + 2 < acc.len() && acc[seg + 1] < target {
            seg += 1;
        }
        let span = acc[seg + 1] - acc[seg];
        let t = if span > 0.0 { (target - acc[seg]) / span } else { 0.0 };
        let (a, b) = (points[seg], points[seg + 1]);
        out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
    }
    out.push(points[points.len() - 1]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(SampledCurve::new(vec![0.0], vec![[0.0, 1.0]]).is_err());
        assert!(SampledCurve::new(vec![0.0, 0.0], vec![[0.0, 1.0], [1.0, 1.0]]).is_err());
        assert!(matches!(
            SampledCurve::new(
                vec![0.0, 1.0, 2.0],
                vec![[0.0, 1.0], [1.0, 0.0], [2.0, 1.0]]
            ),
            Err(Error::AxisContact { index: 1, .. })
        ));
        assert!(SampledCurve::new(vec![0.0, 1.0], vec![[0.0, 0.0], [1.0, 1.0]]).is_ok());
    }

    #[test]
    fn end_tangents_of_parabola() {
        let c = SampledCurve::from_fn(0.0, 1.0, 200, |t| [t, 1.0 + t * t]).unwrap();
        let t0 = c.end_tangent(End::Start);
        assert!((t0[0] - 1.0).abs() < 1e-12 && t0[1].abs() < 1e-10);
        let t1 = c.end_tangent(End::Finish);
        let s = 5f64.sqrt();
        // traversal direction at t = 1 is (1, 2)/sqrt5
        assert!((t1[0] - 1.0 / s).abs() < 1e-9 && (t1[1] - 2.0 / s).abs() < 1e-9);
    }

    #[test]
    fn resampling_keeps_ends_and_spacing() {
        let c = SampledCurve::from_fn(0.0, 1.0, 7, |t| [t, 1.0 + 3.0 * t * t]).unwrap();
        let r = c.resample_uniform(40).unwrap();
        assert_eq!(r.first(), c.first());
        assert_eq!(r.last(), c.last());
        assert_eq!(r.len(), 41);
    }
}
