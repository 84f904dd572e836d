//! Finite-difference weights on arbitrary grids.

/// Weights for derivatives of order `0..=m` at `z` from the nodes `x`.
/// Returns `w[k][j]`, the weight of node `j` for derivative `k`.
pub fn fornberg(z: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// First and second derivative weights of the 3-point stencil
/// with left gap `h1` and right gap `h2`.
pub fn centered3(h1: f64, h2: f64) -> ([f64; 3], [f64; 3]) {
    let s = h1 + h2;
    let d1 = [-h2 / (h1 * s), (h2 - h1) / (h1 * h2), h1 / (h2 * s)];
    let d2 = [2.0 / (h1 * s), -2.0 / (h1 * h2), 2.0 / (h2 * s)];
    (d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_five_point_one_sided() {
        let w = fornberg(0.0, &[0.0, 1.0, 2.0, 3.0, 4.0], 1);
        let expect = [-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25];
        for (a, b) in w[1].iter().zip(expect) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn centered_matches_general() {
        let (h1, h2) = (0.3, 0.7);
        let (d1, d2) = centered3(h1, h2);
        let w = fornberg(0.0, &[-h1, 0.0, h2], 2);
        for j in 0..3 {
            assert!((w[1][j] - d1[j]).abs() < 1e-12);
            assert!((w[2][j] - d2[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_on_polynomials() {
        let xs = [0.0, 0.1, 0.35, 0.5, 0.9];
        let w = fornberg(0.0, &xs, 2);
        // cubic: f = 1 + 2x - x^2 + 3x^3, f'(0)=2, f''(0)=-2
        let f = |x: f64| 1.0 + 2.0 * x - x * x + 3.0 * x * x * x;
        let d1: f64 = xs.iter().zip(&w[1]).map(|(x, c)| c * f(*x)).sum();
        let d2: f64 = xs.iter().zip(&w[2]).map(|(x, c)| c * f(*x)).sum();
        assert!((d1 - 2.0).abs() < 1e-10);
        assert!((d2 + 2.0).abs() < 1e-9);
    }
}
