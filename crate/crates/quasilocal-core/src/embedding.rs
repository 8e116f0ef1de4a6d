//! Rotational isometric embeddings into flat space and into the Schwarzschild
//! static slice, the hat metric `σ̂ = σ + dτ²`, and the convexity conditions.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{max_abs, min_of, sqrt};
use crate::quad::PolarGrid;
use crate::surface::AxisymSurfaceData;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reference {
    Flat,
    /// Schwarzschild slice of mass `m`, profile stored in isotropic coordinates.
    Schwarzschild(f64),
}

/// Profile curve `(ρ(θ), z(θ))` and curvature data of an embedded surface.
///
/// For the Schwarzschild reference `rho`, `z` are isotropic cylindrical
/// coordinates and `kappa*`, `h0` are measured in the Schwarzschild metric.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedProfile {
    pub grid: Arc<PolarGrid>,
    pub reference: Reference,
    pub rho: Vec<f64>,
    pub z: Vec<f64>,
    pub kappa1: Vec<f64>,
    pub kappa2: Vec<f64>,
    pub h0: Vec<f64>,
    /// Static potential; 1 for the flat reference.
    pub v: Vec<f64>,
    /// Sup-norm deviation of the induced metric from the input metric.
    pub metric_residual: f64,
}

fn band(grid: &PolarGrid, bad: &[bool]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, &b) in bad.iter().enumerate() {
        if b {
            lo = lo.min(grid.theta[i]);
            hi = hi.max(grid.theta[i]);
        }
    }
    (lo, hi)
}

/// Profile of a rotationally symmetric metric in flat ℝ³: `ρ = b`,
/// `z′ = −√(a² − b′²)` integrated from the north pole.
pub fn embed_rotational(s: &AxisymSurfaceData) -> Result<EmbeddedProfile> {
    let g = &s.grid;
    let n = s.len();
    let k = s.gauss_curvature();
    let bad: Vec<bool> = k.iter().map(|&v| !(v > 0.0)).collect();
    if bad.iter().any(|&b| b) {
        let (lo, hi) = band(g, &bad);
        return Err(Error::NotEmbeddable(format!("Gauss curvature ≤ 0 for θ in [{lo:.4}, {hi:.4}]")));
    }
    let bb = s.big_b();
    let bx = g.diff(&bb);
    let bxx = g.diff(&bx);
    let bp = s.b_prime();
    let scale = max_abs(&s.a);
    let mut w2 = vec![0.0; n];
    let mut bad = vec![false; n];
    for i in 0..n {
        let si = g.s[i];
        let v = (s.a[i] * s.a[i] - bp[i] * bp[i]) / (si * si);
        if v < -1e-10 * scale * scale {
            bad[i] = true;
        }
        w2[i] = v.max(0.0);
    }
    if bad.iter().any(|&b| b) {
        let (lo, hi) = band(g, &bad);
        return Err(Error::NotEmbeddable(format!("a² − b′² < 0 for θ in [{lo:.4}, {hi:.4}]")));
    }
    // W = w / sin θ with w = |dz/dθ|
    let ww: Vec<f64> = w2.iter().map(|&v| sqrt(v)).collect();
    let wx = g.diff(&ww);
    let cum = g.cumulative_from_north(&ww);
    let half = 0.5 * g.integrate(&ww);
    let z: Vec<f64> = cum.iter().map(|c| half - c).collect();
    let mut kappa1 = vec![0.0; n];
    let mut kappa2 = vec![0.0; n];
    let mut h0 = vec![0.0; n];
    for i in 0..n {
        let x = g.x[i];
        let y = 1.0 - x * x;
        let a = s.a[i];
        let wp = x * ww[i] - y * wx[i];
        let b_pp_over_s = -(bb[i] + 3.0 * x * bx[i] - y * bxx[i]);
        // κ₁ = (b′ w′ − w b″)/a³ from the meridian curve
        kappa1[i] = (bp[i] * wp - ww[i] * y * b_pp_over_s) / (a * a * a);
        kappa2[i] = ww[i] / (a * bb[i]);
        h0[i] = kappa1[i] + kappa2[i];
    }
    let rho = s.b.clone();
    let zt = s.d_theta(&z);
    let metric_residual = (0..n)
        .map(|i| (sqrt(bp[i] * bp[i] + zt[i] * zt[i]) - s.a[i]).abs())
        .fold(0.0, f64::max);
    Ok(EmbeddedProfile { grid: s.grid.clone(), reference: Reference::Flat, rho, z, kappa1, kappa2, h0, v: vec![1.0; n], metric_residual })
}

fn is_round(s: &AxisymSurfaceData) -> Option<f64> {
    let a0 = s.a[0];
    let bb = s.big_b();
    let tol = 1e-12 * a0;
    if s.a.iter().all(|a| (a - a0).abs() < tol) && bb.iter().all(|b| (b - a0).abs() < tol) {
        Some(a0)
    } else {
        None
    }
}

/// Isotropic radius of the centred sphere of areal radius `rt` (outer branch).
pub fn isotropic_radius(rt: f64, m: f64) -> f64 {
    0.5 * ((rt - m) + sqrt((rt * rt - 2.0 * m * rt).max(0.0)))
}

/// Embed into the Schwarzschild slice `ψ⁴(dR² + R²dΩ²)`, `ψ = 1 + m/2R`.
///
/// The flat profile of `σ/ψ⁴` is iterated to a fixed point; the axial gauge
/// centres the z-extent. Exactly round metrics use the centred sphere directly.
pub fn embed_static_schwarzschild(s: &AxisymSurfaceData, m: f64) -> Result<EmbeddedProfile> {
    if m == 0.0 {
        return embed_rotational(s);
    }
    if m < 0.0 {
        return Err(Error::InvalidParameters("reference mass must be nonnegative".into()));
    }
    let g = s.grid.clone();
    let n = s.len();
    let (rho, z) = if let Some(rt) = is_round(s) {
        if rt < 2.0 * m * (1.0 - 1e-14) {
            return Err(Error::NotEmbeddable("sphere lies inside the reference horizon".into()));
        }
        let r_iso = isotropic_radius(rt, m);
        (g.s.iter().map(|si| r_iso * si).collect::<Vec<f64>>(), g.x.iter().map(|x| r_iso * x).collect::<Vec<f64>>())
    } else {
        let flat = embed_rotational(s)?;
        let (mut rho, mut z) = (flat.rho, flat.z);
        let mut conv = false;
        for _ in 0..500 {
            let mut scaled = s.clone();
            for i in 0..n {
                let r = sqrt(rho[i] * rho[i] + z[i] * z[i]);
                if r <= 0.5 * m {
                    return Err(Error::NotEmbeddable("surface penetrates the isotropic horizon".into()));
                }
                let psi2 = (1.0 + m / (2.0 * r)) * (1.0 + m / (2.0 * r));
                scaled.a[i] = s.a[i] / psi2;
                scaled.b[i] = s.b[i] / psi2;
            }
            let next = embed_rotational(&scaled)?;
            let mut change = 0.0f64;
            for i in 0..n {
                let nr = 0.5 * (rho[i] + next.rho[i]);
                let nz = 0.5 * (z[i] + next.z[i]);
                change = change.max((nr - rho[i]).abs()).max((nz - z[i]).abs());
                rho[i] = nr;
                z[i] = nz;
            }
            if change < 1e-14 * max_abs(&s.a) {
                conv = true;
                break;
            }
        }
        if !conv {
            return Err(Error::NonConvergence("Schwarzschild embedding fixed point".into()));
        }
        (rho, z)
    };
    schwarzschild_profile(s, m, g, rho, z)
}

fn schwarzschild_profile(s: &AxisymSurfaceData, m: f64, g: Arc<PolarGrid>, rho: Vec<f64>, z: Vec<f64>) -> Result<EmbeddedProfile> {
    let n = s.len();
    // flat curvatures of the isotropic profile
    let mut flat = s.clone();
    let mut psi = vec![0.0; n];
    let mut big_r = vec![0.0; n];
    for i in 0..n {
        big_r[i] = sqrt(rho[i] * rho[i] + z[i] * z[i]);
        if big_r[i] < 0.5 * m * (1.0 - 1e-12) {
            return Err(Error::NotEmbeddable("surface penetrates the isotropic horizon".into()));
        }
        psi[i] = 1.0 + m / (2.0 * big_r[i]);
        flat.a[i] = s.a[i] / (psi[i] * psi[i]);
        flat.b[i] = s.b[i] / (psi[i] * psi[i]);
    }
    let fp = embed_rotational(&flat)?;
    let zt = flat.d_theta(&z);
    let rt: Vec<f64> = flat.b_prime();
    let mut kappa1 = vec![0.0; n];
    let mut kappa2 = vec![0.0; n];
    let mut h0 = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut metric_residual = 0.0f64;
    for i in 0..n {
        let speed = sqrt(rt[i] * rt[i] + zt[i] * zt[i]);
        // outward flat normal (−z′, ρ′)/|·|
        let x_dot_nu = (rho[i] * (-zt[i]) + z[i] * rt[i]) / speed;
        let psi_r = -m / (2.0 * big_r[i] * big_r[i]);
        let dpsi = psi_r * x_dot_nu / big_r[i];
        let p = psi[i];
        kappa1[i] = fp.kappa1[i] / (p * p) + 2.0 * dpsi / (p * p * p);
        kappa2[i] = fp.kappa2[i] / (p * p) + 2.0 * dpsi / (p * p * p);
        h0[i] = kappa1[i] + kappa2[i];
        v[i] = (1.0 - m / (2.0 * big_r[i])) / p;
        metric_residual = metric_residual.max((p * p * speed - s.a[i]).abs()).max((p * p * rho[i] - s.b[i]).abs());
    }
    Ok(EmbeddedProfile { grid: g, reference: Reference::Schwarzschild(m), rho, z, kappa1, kappa2, h0, v, metric_residual })
}

impl EmbeddedProfile {
    /// Positive mean curvature and Gauss-Kronecker curvature.
    pub fn two_convex(&self) -> bool {
        self.kappa1.iter().zip(&self.kappa2).all(|(a, b)| a + b > 0.0 && a * b > 0.0)
    }

    /// Star-shaped with respect to the origin of the profile coordinates.
    pub fn star_shaped(&self) -> bool {
        let n = self.rho.len();
        let mut s = AxisymSurfaceData::zeros(self.grid.clone());
        s.a = vec![1.0; n];
        s.b = self.rho.clone();
        let rt = s.b_prime();
        let zt = s.d_theta(&self.z);
        (0..n).all(|i| self.rho[i] * (-zt[i]) + self.z[i] * rt[i] > 0.0)
    }

    /// Largest `Ric(ν, ν)` of the Schwarzschild reference along the surface
    /// (0 for the flat reference).
    pub fn max_ricci_normal(&self) -> f64 {
        let m = match self.reference {
            Reference::Flat => return 0.0,
            Reference::Schwarzschild(m) => m,
        };
        let n = self.rho.len();
        let mut s = AxisymSurfaceData::zeros(self.grid.clone());
        s.a = vec![1.0; n];
        s.b = self.rho.clone();
        let rt = s.b_prime();
        let zt = s.d_theta(&self.z);
        let mut best = f64::NEG_INFINITY;
        for i in 0..n {
            let r = sqrt(self.rho[i] * self.rho[i] + self.z[i] * self.z[i]);
            let psi = 1.0 + m / (2.0 * r);
            let areal = psi * psi * r;
            let speed = sqrt(rt[i] * rt[i] + zt[i] * zt[i]);
            let cos_b = (self.rho[i] * (-zt[i]) + self.z[i] * rt[i]) / (speed * r);
            let c2 = cos_b * cos_b;
            let ric = m / (areal * areal * areal) * (1.0 - 3.0 * c2);
            best = best.max(ric);
        }
        best
    }
}

/// Axisymmetric time function and its derived quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeFunctionData {
    pub tau: Vec<f64>,
    /// `dτ/dx`.
    pub tau_x: Vec<f64>,
    /// `|∇τ|²`.
    pub grad2: Vec<f64>,
    /// `Δ_σ τ`.
    pub lap: Vec<f64>,
    /// Optional boost angle with `sinh ψ = ν(f)/√(1+|∇f|²)` from a Jang graph.
    pub psi: Option<Vec<f64>>,
}

impl TimeFunctionData {
    pub fn new(s: &AxisymSurfaceData, tau: Vec<f64>) -> Self {
        let g = &s.grid;
        let n = s.len();
        let tau_x = g.diff(&tau);
        let bb = s.big_b();
        let flux: Vec<f64> = (0..n).map(|i| (1.0 - g.x[i] * g.x[i]) * bb[i] / s.a[i] * tau_x[i]).collect();
        let fx = g.diff(&flux);
        let lap = (0..n).map(|i| fx[i] / (s.a[i] * bb[i])).collect();
        let grad2 = (0..n).map(|i| (1.0 - g.x[i] * g.x[i]) * tau_x[i] * tau_x[i] / (s.a[i] * s.a[i])).collect();
        TimeFunctionData { tau, tau_x, grad2, lap, psi: None }
    }

    pub fn from_fn<F: Fn(f64) -> f64>(s: &AxisymSurfaceData, f: F) -> Self {
        Self::new(s, s.grid.sample(f))
    }

    pub fn zero(s: &AxisymSurfaceData) -> Self {
        Self::new(s, vec![0.0; s.len()])
    }

    /// `dτ/dθ`.
    pub fn tau_theta(&self, s: &AxisymSurfaceData) -> Vec<f64> {
        (0..s.len()).map(|i| -s.grid.s[i] * self.tau_x[i]).collect()
    }
}

/// `σ̂ = σ + dτ²` as surface data (metric fields only).
pub fn hat_metric(s: &AxisymSurfaceData, tau: &TimeFunctionData) -> AxisymSurfaceData {
    let mut out = AxisymSurfaceData::zeros(s.grid.clone());
    let tt = tau.tau_theta(s);
    for i in 0..s.len() {
        out.a[i] = sqrt(s.a[i] * s.a[i] + tt[i] * tt[i]);
        out.b[i] = s.b[i];
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub ok: bool,
    /// `min_θ (1+|∇τ|²) K_σ̂`.
    pub min_value: f64,
    pub argmin_theta: f64,
    /// Sup difference between `(1+|∇τ|²)K_σ̂` and `K_σ + det(∇²τ)/(1+|∇τ|²)`.
    pub identity_residual: f64,
}

pub fn convexity_check(s: &AxisymSurfaceData, tau: &TimeFunctionData) -> ConvexityReport {
    let g = &s.grid;
    let n = s.len();
    let hat = hat_metric(s, tau);
    let k_hat = hat.gauss_curvature();
    let k = s.gauss_curvature();
    let ax = g.diff(&s.a);
    let bb = s.big_b();
    let bx = g.diff(&bb);
    let txx = g.diff(&tau.tau_x);
    let mut lhs = vec![0.0; n];
    let mut residual = 0.0f64;
    for i in 0..n {
        let x = g.x[i];
        let y = 1.0 - x * x;
        let a = s.a[i];
        let tx = tau.tau_x[i];
        let t_pp = -x * tx + y * txx[i];
        let first = t_pp - y * ax[i] * tx / a;
        let second = -(x * bb[i] - y * bx[i]) * tx / bb[i];
        let det = first * second / (a * a * a * a);
        let w = 1.0 + tau.grad2[i];
        lhs[i] = w * k_hat[i];
        let rhs = k[i] + det / w;
        residual = residual.max((lhs[i] - rhs).abs());
    }
    let min_value = min_of(&lhs);
    let idx = lhs.iter().position(|&v| v == min_value).unwrap_or(0);
    ConvexityReport { ok: min_value > 0.0, min_value, argmin_theta: g.theta[idx], identity_residual: residual }
}
