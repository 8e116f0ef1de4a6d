//! Gauss-Legendre quadrature and the polar grid used for axisymmetric surfaces.
//!
//! Surface quantities are functions of `x = cos θ`. The polar grid stores the
//! Gauss-Legendre nodes in x (ordered north to south, i.e. increasing θ), the
//! matching weights for `∫ f dx`, a barycentric differentiation matrix, and
//! Legendre tables for spectral antiderivatives.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{acos, sqrt, PI};

/// Legendre polynomial `P_n(x)` and its derivative.
pub fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = if (1.0 - x * x).abs() < 1e-300 {
        let sign = if x < 0.0 && n % 2 == 0 { -1.0 } else { 1.0 };
        0.5 * nf * (nf + 1.0) * sign
    } else {
        nf * (x * p1 - p0) / (x * x - 1.0)
    };
    (p1, dp)
}

/// Fourth-order running integral `∫_{x₀}^{x_i} y` of uniform samples.
pub fn uniform_cumulative(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    assert!(n >= 4, "need at least four samples");
    let mut out = vec![0.0; n];
    let c = h / 24.0;
    for i in 0..n - 1 {
        let piece = if i == 0 {
            c * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3])
        } else if i == n - 2 {
            c * (9.0 * y[n - 1] + 19.0 * y[n - 2] - 5.0 * y[n - 3] + y[n - 4])
        } else {
            c * (-y[i - 1] + 13.0 * y[i] + 13.0 * y[i + 1] - y[i + 2])
        };
        out[i + 1] = out[i] + piece;
    }
    out
}

/// Fourth-order finite-difference derivative of samples on a uniform grid.
pub fn uniform_diff(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    assert!(n >= 5, "need at least five samples");
    let mut d = vec![0.0; n];
    let c = 1.0 / (12.0 * h);
    d[0] = c * (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]);
    d[1] = c * (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]);
    for i in 2..n - 2 {
        d[i] = c * (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]);
    }
    d[n - 2] = -c * (-3.0 * y[n - 1] - 10.0 * y[n - 2] + 18.0 * y[n - 3] - 6.0 * y[n - 4] + y[n - 5]);
    d[n - 1] = -c * (-25.0 * y[n - 1] + 48.0 * y[n - 2] - 36.0 * y[n - 3] + 16.0 * y[n - 4] - 3.0 * y[n - 5]);
    d
}

/// Nodes (descending) and weights of the n-point rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = crate::math::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre(n, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, z);
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Composite Gauss-Legendre rule on `[lo, hi]` split into `panels` pieces.
pub fn composite_rule(lo: f64, hi: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(order);
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let a = lo + p as f64 * h;
        for k in (0..order).rev() {
            nodes.push(a + 0.5 * h * (x[k] + 1.0));
            weights.push(0.5 * h * w[k]);
        }
    }
    (nodes, weights)
}

/// Polar grid in `x = cos θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    pub x: Vec<f64>,
    pub theta: Vec<f64>,
    /// `sin θ` at the nodes.
    pub s: Vec<f64>,
    /// Weights for `∫_{-1}^{1} f dx`.
    pub w: Vec<f64>,
    bary: Vec<f64>,
    dmat: Vec<f64>,
    /// `leg[l * n + i] = P_l(x_i)` for `l = 0..=n`.
    leg: Vec<f64>,
}

impl PolarGrid {
    pub fn new(n: usize) -> Self {
        assert!(n >= 4, "polar grid needs at least 4 nodes");
        let (x, w) = gauss_legendre(n);
        let theta: Vec<f64> = x.iter().map(|&xi| acos(xi)).collect();
        let s: Vec<f64> = x.iter().map(|&xi| sqrt(1.0 - xi * xi)).collect();
        // barycentric weights for Legendre points: (-1)^i sqrt((1-x_i^2) w_i)
        let bary: Vec<f64> = (0..n)
            .map(|i| {
                let sgn = if i % 2 == 0 { 1.0 } else { -1.0 };
                sgn * sqrt((1.0 - x[i] * x[i]) * w[i])
            })
            .collect();
        let mut dmat = vec![0.0; n * n];
        for i in 0..n {
            let mut diag = 0.0;
            for j in 0..n {
                if i != j {
                    let d = bary[j] / bary[i] / (x[i] - x[j]);
                    dmat[i * n + j] = d;
                    diag -= d;
                }
            }
            dmat[i * n + i] = diag;
        }
        let mut leg = vec![0.0; (n + 1) * n];
        for i in 0..n {
            let (mut p0, mut p1) = (1.0, x[i]);
            leg[i] = 1.0;
            leg[n + i] = x[i];
            for l in 2..=n {
                let lf = l as f64;
                let p2 = ((2.0 * lf - 1.0) * x[i] * p1 - (lf - 1.0) * p0) / lf;
                leg[l * n + i] = p2;
                p0 = p1;
                p1 = p2;
            }
        }
        PolarGrid { x, theta, s, w, bary, dmat, leg }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `∫_{-1}^{1} f dx`.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        f.iter().zip(&self.w).map(|(a, b)| a * b).sum()
    }

    /// Spectral derivative d/dx.
    pub fn diff(&self, f: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let row = &self.dmat[i * n..(i + 1) * n];
                row.iter().zip(f).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// Entry `(i, j)` of the differentiation matrix.
    pub fn dmat(&self, i: usize, j: usize) -> f64 {
        self.dmat[i * self.len() + j]
    }

    /// Value of the interpolant of `f` at an arbitrary `x ∈ [-1, 1]`.
    pub fn eval(&self, f: &[f64], x: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..self.len() {
            let d = x - self.x[j];
            if d == 0.0 {
                return f[j];
            }
            let t = self.bary[j] / d;
            num += t * f[j];
            den += t;
        }
        num / den
    }

    /// Legendre coefficients of the interpolant.
    pub fn modal(&self, f: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|l| {
                let row = &self.leg[l * n..(l + 1) * n];
                let proj: f64 = (0..n).map(|i| self.w[i] * f[i] * row[i]).sum();
                proj * (2.0 * l as f64 + 1.0) / 2.0
            })
            .collect()
    }

    /// `F(x_i) = ∫_{x_i}^{1} f dx` (integration from the north pole).
    pub fn cumulative_from_north(&self, f: &[f64]) -> Vec<f64> {
        let n = self.len();
        let c = self.modal(f);
        (0..n)
            .map(|i| {
                let mut acc = c[0] * (1.0 - self.x[i]);
                for (l, cl) in c.iter().enumerate().skip(1) {
                    let up = self.leg[(l + 1) * n + i];
                    let down = self.leg[(l - 1) * n + i];
                    acc -= cl * (up - down) / (2.0 * l as f64 + 1.0);
                }
                acc
            })
            .collect()
    }

    /// Sample a function of x on the nodes.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.x.iter().map(|&x| f(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, exp, sin};

    #[test]
    fn weights_and_moments() {
        let (x, w) = gauss_legendre(20);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let m8: f64 = x.iter().zip(&w).map(|(x, w)| w * crate::math::powi(*x, 8)).sum();
        assert!((m8 - 2.0 / 9.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] > p[1]));
    }

    #[test]
    fn composite_integrates_exp() {
        let (x, w) = composite_rule(0.0, 3.0, 4, 8);
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * exp(*x)).sum();
        assert!((v - (exp(3.0) - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn spectral_derivative_and_antiderivative() {
        let g = PolarGrid::new(32);
        let f = g.sample(|x| exp(x) * cos(2.0 * x));
        let df = g.diff(&f);
        for (i, &x) in g.x.iter().enumerate() {
            let exact = exp(x) * (cos(2.0 * x) - 2.0 * sin(2.0 * x));
            assert!((df[i] - exact).abs() < 1e-11);
        }
        let fx = g.sample(|x| 3.0 * x * x);
        let cum = g.cumulative_from_north(&fx);
        for (i, &x) in g.x.iter().enumerate() {
            assert!((cum[i] - (1.0 - x * x * x)).abs() < 1e-13);
        }
        assert!((g.eval(&f, 1.0) - exp(1.0) * cos(2.0)).abs() < 1e-12);
    }

    #[test]
    fn uniform_rules_fourth_order() {
        let h = 0.01;
        let x: Vec<f64> = (0..201).map(|i| i as f64 * h).collect();
        let y: Vec<f64> = x.iter().map(|&t| sin(t)).collect();
        let d = uniform_diff(&y, h);
        let c = uniform_cumulative(&y, h);
        for i in 0..x.len() {
            assert!((d[i] - cos(x[i])).abs() < 1e-8);
            assert!((c[i] - (1.0 - cos(x[i]))).abs() < 1e-9);
        }
    }
}
