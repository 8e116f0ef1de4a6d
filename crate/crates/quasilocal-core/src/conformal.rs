//! The glued manifold in the radial model: Jang interior, Shi-Tam exterior,
//! the smoothed corner, and the conformal-factor problem
//! `Δu − (1/8)(R̄ − 2|Ē|² − |k̄|²)u = 0` with the constants read off from it.
//!
//! The mollifier is `φ(s) = C exp(−1/(1 − s²))` on `(−1, 1)` and the corner
//! profile is the polynomial bump `σ(t) = (1 − S(y))/100` with
//! `y = 4|t| − 1` on `1/4 < |t| < 1/2` and `S(y) = 35y⁴ − 84y⁵ + 70y⁶ − 20y⁷`,
//! equal to `1/100` on `|t| ≤ 1/4` and zero for `|t| ≥ 1/2`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::flows::ShiTamTrace;
use crate::embedding::Reference;
use crate::jang::JangSolution;
use crate::linalg::solve_tridiagonal;
use crate::math::{exp, sqrt, PI};
use crate::quad::{gauss_legendre, uniform_cumulative, uniform_diff};

fn phi_raw(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        exp(-1.0 / (1.0 - s * s))
    }
}

fn phi_raw_prime(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        let d = 1.0 - s * s;
        -2.0 * s / (d * d) * exp(-1.0 / d)
    }
}

/// Composite Gauss-Legendre nodes and weights on `[a, b]`.
fn panels(a: f64, b: f64, count: usize, rule: &(Vec<f64>, Vec<f64>)) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(count * rule.0.len());
    let h = (b - a) / count as f64;
    for p in 0..count {
        let lo = a + p as f64 * h;
        for (x, w) in rule.0.iter().zip(&rule.1) {
            out.push((lo + 0.5 * h * (x + 1.0), 0.5 * h * w));
        }
    }
    out
}

/// Normalized standard mollifier `φ` with `∫φ = 1`, and `φ′`.
#[derive(Debug, Clone)]
pub struct Mollifier {
    norm: f64,
    rule: (Vec<f64>, Vec<f64>),
}

impl Default for Mollifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Mollifier {
    pub fn new() -> Self {
        let rule = gauss_legendre(16);
        let total: f64 = panels(-1.0, 1.0, 64, &rule).iter().map(|(s, w)| w * phi_raw(*s)).sum();
        Mollifier { norm: 1.0 / total, rule }
    }

    pub fn phi(&self, s: f64) -> f64 {
        self.norm * phi_raw(s)
    }

    pub fn phi_prime(&self, s: f64) -> f64 {
        self.norm * phi_raw_prime(s)
    }

    /// `∫_a^b g(s) φ(s) ds` restricted to `(−1, 1)`.
    fn average<F: Fn(f64) -> f64>(&self, a: f64, b: f64, g: F) -> f64 {
        let (a, b) = (a.max(-1.0), b.min(1.0));
        if b <= a {
            return 0.0;
        }
        panels(a, b, 16, &self.rule).iter().map(|(s, w)| w * self.phi(*s) * g(*s)).sum()
    }
}

/// Corner profile `σ(t)` and its first two derivatives.
pub fn sigma_profile(t: f64) -> (f64, f64, f64) {
    let a = t.abs();
    if a <= 0.25 {
        return (0.01, 0.0, 0.0);
    }
    if a >= 0.5 {
        return (0.0, 0.0, 0.0);
    }
    let y = 4.0 * a - 1.0;
    let (y2, y3) = (y * y, y * y * y);
    let s = y2 * y2 * (35.0 - 84.0 * y + 70.0 * y2 - 20.0 * y3);
    let s1 = y3 * (140.0 - 420.0 * y + 420.0 * y2 - 140.0 * y3);
    let s2 = y2 * (420.0 - 1680.0 * y + 2100.0 * y2 - 840.0 * y3);
    let sgn = if t < 0.0 { -1.0 } else { 1.0 };
    (0.01 * (1.0 - s), -0.01 * 4.0 * sgn * s1, -0.01 * 16.0 * s2)
}

/// Round Gaussian-coordinate band `dt² + ρ(t)² dΩ²` around the corner at `t = 0`
/// (`t < 0` inside), with one-sided quadratic jets and the normal component
/// `X_t` of the Jang 1-form (linear inside, zero outside).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerBand {
    pub rho0: f64,
    /// `ρ′` on the inner and outer side.
    pub drho: [f64; 2],
    pub d2rho: [f64; 2],
    /// `X_t(0⁻)` and `dX_t/dt(0⁻)`.
    pub x_t: [f64; 2],
    /// Half-width `ε` of the band.
    pub eps: f64,
}

impl CornerBand {
    /// Band with `ρ′ = ρ₀H/2` on each side.
    pub fn from_mean_curvatures(rho0: f64, h_minus: f64, h_plus: f64, d2rho: [f64; 2], x_t: [f64; 2], eps: f64) -> Self {
        CornerBand { rho0, drho: [0.5 * rho0 * h_minus, 0.5 * rho0 * h_plus], d2rho, x_t, eps }
    }

    pub fn h_minus(&self) -> f64 {
        2.0 * self.drho[0] / self.rho0
    }

    pub fn h_plus(&self) -> f64 {
        2.0 * self.drho[1] / self.rho0
    }

    /// `(ρ, ρ′, ρ″)` of the unsmoothed band.
    pub fn rho(&self, t: f64) -> (f64, f64, f64) {
        let k = if t < 0.0 { 0 } else { 1 };
        (self.rho0 + self.drho[k] * t + 0.5 * self.d2rho[k] * t * t, self.drho[k] + self.d2rho[k] * t, self.d2rho[k])
    }

    /// `(γ, γ′, γ″)` for `γ = ρ²`.
    pub fn gamma(&self, t: f64) -> (f64, f64, f64) {
        let (r, r1, r2) = self.rho(t);
        (r * r, 2.0 * r * r1, 2.0 * r1 * r1 + 2.0 * r * r2)
    }

    pub fn scalar(&self, t: f64) -> f64 {
        let (g, g1, g2) = self.gamma(t);
        scalar_from_gamma(g, g1, g2)
    }

    /// `(X_t, dX_t/dt)`.
    pub fn x(&self, t: f64) -> (f64, f64) {
        if t < 0.0 {
            (self.x_t[0] + self.x_t[1] * t, self.x_t[1])
        } else {
            (0.0, 0.0)
        }
    }

    /// `[γ′]` across the corner.
    fn gamma_jump(&self) -> f64 {
        2.0 * self.rho0 * (self.drho[1] - self.drho[0])
    }
}

/// Scalar curvature of `dt² + γ(t) dΩ²` from `γ` and its derivatives.
fn scalar_from_gamma(g: f64, g1: f64, g2: f64) -> f64 {
    // ρ = √γ, ρ′ = γ′/2ρ, ρ″ = γ″/2ρ − γ′²/4ρ³
    let r = sqrt(g);
    let r1 = g1 / (2.0 * r);
    let r2 = g2 / (2.0 * r) - g1 * g1 / (4.0 * r * g);
    -4.0 * r2 / r - 2.0 * r1 * r1 / g + 2.0 / g
}

/// Smoothed band at one `δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MollifiedCorner {
    pub delta: f64,
    pub t: Vec<f64>,
    pub gamma: Vec<f64>,
    pub scalar: Vec<f64>,
    pub x_t: Vec<f64>,
    pub dx_t: Vec<f64>,
    pub div_x: Vec<f64>,
    pub sup_abs_scalar: f64,
    /// `∫R_δ dt` over `|t| < δ/2`.
    pub band_integral: f64,
    /// `∫ div X_δ dt` over `|t| < δ/2`.
    pub div_integral: f64,
    /// Coefficient `A` of the fit `R_δ ≈ A (100/δ²)φ(100t/δ²) + B` on `|t| ≤ δ²/50`.
    pub spike_amplitude: f64,
    pub spike_offset: f64,
    /// `H₋ − H₊`.
    pub jump: f64,
}

struct Smoother<'a> {
    band: &'a CornerBand,
    m: &'a Mollifier,
    delta: f64,
}

impl Smoother<'_> {
    fn sigma(&self, t: f64) -> (f64, f64, f64) {
        let (s, s1, s2) = sigma_profile(t / self.delta);
        let d = self.delta;
        (d * d * s, d * s1, s2)
    }

    fn varsigma(&self, t: f64) -> (f64, f64) {
        let (lo, hi) = (0.25 * self.delta, self.band.eps);
        let a = t.abs();
        if a <= lo {
            return (2.0, 0.0);
        }
        if a >= hi {
            return (1.0, 0.0);
        }
        let y = (a - lo) / (hi - lo);
        let sgn = if t < 0.0 { -1.0 } else { 1.0 };
        (2.0 - y * y * (3.0 - 2.0 * y), -sgn * 6.0 * y * (1.0 - y) / (hi - lo))
    }

    /// `(γ_δ, γ_δ′, γ_δ″)` with `γ_δ(t) = ∫γ(t − σ_δ(t)s)φ(s)ds`.
    fn gamma(&self, t: f64) -> (f64, f64, f64) {
        let (sg, s1, s2) = self.sigma(t);
        if sg == 0.0 {
            return self.band.gamma(t);
        }
        let b = self.band;
        let f0 = |s: f64| b.gamma(t - sg * s).0;
        let f1 = |s: f64| b.gamma(t - sg * s).1 * (1.0 - s1 * s);
        let f2 = |s: f64| {
            let (_, g1, g2) = b.gamma(t - sg * s);
            g2 * (1.0 - s1 * s) * (1.0 - s1 * s) - g1 * s2 * s
        };
        let star = t / sg;
        let split = |f: &dyn Fn(f64) -> f64| -> f64 {
            if star.abs() < 1.0 {
                self.m.average(-1.0, star, f) + self.m.average(star, 1.0, f)
            } else {
                self.m.average(-1.0, 1.0, f)
            }
        };
        let g0 = split(&f0);
        let g1 = split(&f1);
        let mut g2 = split(&f2);
        if star.abs() < 1.0 {
            // γ′ jumps where t − σ_δ s crosses the corner
            g2 += b.gamma_jump() * (1.0 - s1 * star) * (1.0 - s1 * star) * self.m.phi(star) / sg;
        }
        (g0, g1, g2)
    }

    fn scalar(&self, t: f64) -> f64 {
        let (g, g1, g2) = self.gamma(t);
        scalar_from_gamma(g, g1, g2)
    }

    /// `(X_δt, ∂_t X_δt)` with `X_δt = ∫X_t(t − 2σ_δ s)φ(ς_δ s)ds`.
    fn x(&self, t: f64) -> (f64, f64) {
        let (sg, s1, _) = self.sigma(t);
        let (vs, vs1) = self.varsigma(t);
        let b = self.band;
        let m = self.m;
        // substitute y = ς s so the quadrature runs over the support of φ
        let val = |y: f64| b.x(t - 2.0 * sg * y / vs).0 / vs;
        let der = |y: f64| {
            let s = y / vs;
            let (x0, x1) = b.x(t - 2.0 * sg * s);
            (x1 * (1.0 - 2.0 * s1 * s) + x0 * m.phi_prime(y) / m.phi(y).max(1e-300) * vs1 * s) / vs
        };
        let star = if sg > 0.0 { vs * t / (2.0 * sg) } else { f64::INFINITY };
        let (mut v, mut d) = if star.abs() < 1.0 {
            (m.average(-1.0, star, val) + m.average(star, 1.0, val), m.average(-1.0, star, der) + m.average(star, 1.0, der))
        } else {
            (m.average(-1.0, 1.0, val), m.average(-1.0, 1.0, der))
        };
        if star.abs() < 1.0 {
            let jump = 0.0 - b.x_t[0];
            let s = star / vs;
            d += jump * m.phi(star) * (1.0 - 2.0 * s1 * s) / (2.0 * sg);
        }
        if sg == 0.0 {
            let (x0, x1) = b.x(t);
            v = x0 / vs;
            d = x1 / vs - x0 * vs1 / (vs * vs);
        }
        (v, d)
    }
}

/// Smooth the corner of `band` per the mollification construction at scale `δ`.
pub fn mollify_corner(band: &CornerBand, delta: f64) -> Result<MollifiedCorner> {
    if !(delta > 0.0) || delta > 0.5 * band.eps {
        return Err(invalid("δ must be positive and well inside the band"));
    }
    let m = Mollifier::new();
    let sm = Smoother { band, m: &m, delta };
    let c = 0.01 * delta * delta;
    let mut ts: Vec<f64> = (0..=400).map(|k| -0.5 * delta + delta * k as f64 / 400.0).collect();
    ts.extend((0..=200).map(|k| -2.0 * c + 4.0 * c * k as f64 / 200.0));
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup();
    let mut gamma = Vec::with_capacity(ts.len());
    let mut scalar = Vec::with_capacity(ts.len());
    let mut x_t = Vec::with_capacity(ts.len());
    let mut dx_t = Vec::with_capacity(ts.len());
    let mut div_x = Vec::with_capacity(ts.len());
    for &t in &ts {
        let (g, g1, g2) = sm.gamma(t);
        let (x, dx) = sm.x(t);
        gamma.push(g);
        scalar.push(scalar_from_gamma(g, g1, g2));
        x_t.push(x);
        dx_t.push(dx);
        div_x.push(dx + g1 / g * x);
    }
    let sup_abs_scalar = scalar.iter().fold(0.0f64, |a, r| a.max(r.abs()));
    let rule = gauss_legendre(20);
    let cuts = [-0.5 * delta, -0.25 * delta, -c, c, 0.25 * delta, 0.5 * delta];
    let mut band_integral = 0.0;
    let mut div_integral = 0.0;
    for w in cuts.windows(2) {
        for (t, wt) in panels(w[0], w[1], 4, &rule) {
            band_integral += wt * sm.scalar(t);
            let (g, g1, _) = sm.gamma(t);
            let (x, dx) = sm.x(t);
            div_integral += wt * (dx + g1 / g * x);
        }
    }
    // least squares on the spike zone
    let (mut s11, mut s12, mut s22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (i, &t) in ts.iter().enumerate() {
        if t.abs() <= 2.0 * c {
            let f = m.phi(t / c) / c;
            s11 += f * f;
            s12 += f;
            s22 += 1.0;
            b1 += f * scalar[i];
            b2 += scalar[i];
        }
    }
    let det = s11 * s22 - s12 * s12;
    let spike_amplitude = (b1 * s22 - b2 * s12) / det;
    let spike_offset = (s11 * b2 - s12 * b1) / det;
    Ok(MollifiedCorner {
        delta,
        t: ts,
        gamma,
        scalar,
        x_t,
        dx_t,
        div_x,
        sup_abs_scalar,
        band_integral,
        div_integral,
        spike_amplitude,
        spike_offset,
        jump: band.h_minus() - band.h_plus(),
    })
}

/// Jang interior glued to a round Shi-Tam exterior at `Σ`.
///
/// The interior is sampled on the Jang grid `q`; `p = ρ²/s̄_q` and
/// `w = ρ² s̄_q` put the radial Laplacian in the form `(p u_q)_q / w`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeRadialManifold {
    pub q: Vec<f64>,
    pub dq: f64,
    pub s_bar: Vec<f64>,
    pub rho: Vec<f64>,
    pub p: Vec<f64>,
    pub w: Vec<f64>,
    /// `(R̄ − 2|Ē|² − |k̄|²)/8`.
    pub coeff: Vec<f64>,
    /// Mean curvature of the level spheres in `ḡ`.
    pub h_bar: Vec<f64>,
    pub x_nu: Vec<f64>,
    /// Mean curvature of `Σ` from the Jang side.
    pub h_minus: f64,
    /// `X(ν̄)` at `Σ`.
    pub x_sigma: f64,
    /// Mean curvature of `Σ` in the exterior.
    pub h_plus: f64,
    /// `H̄ − X(ν̄) − H₊`: zero when `u₀ = H₀/(H̄ − X(ν̄))`.
    pub boundary_jump: f64,
    /// `∫_{r₀}^∞ u_st/r² dr` over the exterior.
    pub exterior_integral: f64,
    /// Extrapolated mass of the exterior.
    pub exterior_mass: f64,
    pub area_mismatch: f64,
    pub band: CornerBand,
    pub blowup: bool,
    pub cylinder_scale: Option<f64>,
}

impl CompositeRadialManifold {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Corner jump `H₋ − H₊` seen by the scalar curvature.
    pub fn jump(&self) -> f64 {
        self.h_minus - self.h_plus
    }

    /// `𝐦 + 2𝒜`: the mass after the conformal change.
    pub fn conformal_mass(&self, sol: &ConformalSolution) -> f64 {
        self.exterior_mass + sol.mass_shift
    }

    /// Sup of `|X|_ḡ` over the nodes with `q ≤ q_end`.
    pub fn chi_sup(&self, q_end: f64) -> f64 {
        (0..self.len()).filter(|&i| self.q[i] <= q_end).map(|i| self.x_nu[i].abs()).fold(0.0, f64::max)
    }
}

/// Composite tolerance on the corner areal radii.
pub const CORNER_TOL: f64 = 1e-10;

/// Glue the Jang solution to a round flat-reference Shi-Tam exterior.
pub fn compose(jang: &JangSolution, st: &ShiTamTrace) -> Result<CompositeRadialManifold> {
    if !matches!(st.reference, Reference::Flat) {
        return Err(Error::Unsupported("the composite uses a flat-reference exterior".into()));
    }
    let round = st.u.iter().all(|u| {
        let mean = u.iter().sum::<f64>() / u.len() as f64;
        u.iter().all(|v| (v - mean).abs() <= 1e-10 * mean)
    });
    if !round {
        return Err(Error::Unsupported("the radial composite needs a round exterior".into()));
    }
    let n = jang.len();
    let r0 = st.r[0];
    let rho_sigma = jang.rt[n - 1];
    let area_mismatch = (rho_sigma - r0).abs() / r0;
    if area_mismatch > CORNER_TOL {
        return Err(invalid("induced corner metrics disagree"));
    }
    let fl = jang.fields();
    let dq = jang.dq;
    let sq = &jang.ds_bar_dq;
    let rho = jang.rt.clone();
    let p: Vec<f64> = (0..n).map(|i| rho[i] * rho[i] / sq[i]).collect();
    let w: Vec<f64> = (0..n).map(|i| rho[i] * rho[i] * sq[i]).collect();
    let coeff: Vec<f64> = (0..n).map(|i| (fl.r_bar[i] - 2.0 * fl.e_bar2[i] - fl.k_bar2[i]) / 8.0).collect();
    let rho_q = uniform_diff(&rho, dq);
    let drho: Vec<f64> = (0..n).map(|i| rho_q[i] / sq[i]).collect();
    let h_bar: Vec<f64> = (0..n).map(|i| 2.0 * drho[i] / rho[i]).collect();
    let d2 = uniform_diff(&drho, dq);
    let xq = uniform_diff(&fl.x_nu, dq);
    let u0 = st.u[0][0];
    let h_plus = 2.0 / (r0 * u0);
    let h_minus = h_bar[n - 1];
    let x_sigma = fl.x_nu[n - 1];
    // round exterior: H u_r = K(u − u³) gives u_r = (u − u³)/2r and ρ″ = −u_r/u³
    let u_r = (u0 - u0 * u0 * u0) / (2.0 * r0);
    let band = CornerBand {
        rho0: rho_sigma,
        drho: [drho[n - 1], 1.0 / u0],
        d2rho: [d2[n - 1] / sq[n - 1], -u_r / (u0 * u0 * u0)],
        x_t: [x_sigma, xq[n - 1] / sq[n - 1]],
        eps: 0.1 * rho_sigma,
    };
    let exterior_integral = exterior_integral(st);
    Ok(CompositeRadialManifold {
        q: jang.q.clone(),
        dq,
        s_bar: jang.bar_distance(),
        rho,
        p,
        w,
        coeff,
        h_bar,
        x_nu: fl.x_nu,
        h_minus,
        x_sigma,
        h_plus,
        boundary_jump: h_minus - x_sigma - h_plus,
        exterior_integral,
        exterior_mass: st.mass_extrapolated,
        area_mismatch,
        band,
        blowup: jang.blowup,
        cylinder_scale: jang.cylinder_scale(),
    })
}

/// `∫_{r₀}^∞ u/r² dr` from the trace samples (Simpson in `ln r`) plus the
/// `1/R + 𝐦/2R²` tail.
fn exterior_integral(st: &ShiTamTrace) -> f64 {
    let n = st.r.len();
    let f: Vec<f64> = (0..n).map(|i| st.u[i][0] / st.r[i]).collect();
    let x: Vec<f64> = st.r.iter().map(|r| crate::math::ln(*r)).collect();
    let odd = if n % 2 == 1 { n } else { n - 1 };
    let mut acc = 0.0;
    let mut i = 0;
    while i + 2 < odd {
        let h = x[i + 2] - x[i];
        acc += h / 6.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        i += 2;
    }
    if odd < n {
        acc += 0.5 * (x[n - 1] - x[n - 2]) * (f[n - 1] + f[n - 2]);
    }
    let big_r = st.r[n - 1];
    acc + 1.0 / big_r + st.mass_extrapolated / (2.0 * big_r * big_r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerCondition {
    /// `u = 0` at the truncated end.
    Dirichlet,
    /// `∂_ν u + H̄u/4 = (1/4)√(16π/|∂M|_ũ) u³`, linear for round ends.
    Robin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OuterCondition {
    Dirichlet(f64),
    /// Harmonic exterior `u = 1 − C∫_r^∞ u_st/r²` with corner jump `ΔH`
    /// entering as `[ρ²u_s] = (ΔH/4)ρ²u`.
    Exterior { integral: f64, jump: f64 },
}

/// Radial problem `(p u_q)_q = c w u` on a uniform `q` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialBvp {
    pub dq: f64,
    pub p: Vec<f64>,
    pub w: Vec<f64>,
    pub c: Vec<f64>,
    pub rho: Vec<f64>,
    pub h_bar: Vec<f64>,
    pub inner: InnerCondition,
    pub outer: OuterCondition,
}

impl RadialBvp {
    /// Product cylinder `dt² + ρ²dΩ²` of length `len`, `u(0) = 0`, `u(len) = 1`.
    pub fn cylinder(len: f64, radius: f64, nodes: usize) -> Self {
        let r2 = radius * radius;
        RadialBvp {
            dq: len / (nodes - 1) as f64,
            p: vec![r2; nodes],
            w: vec![r2; nodes],
            c: vec![0.0; nodes],
            rho: vec![radius; nodes],
            h_bar: vec![0.0; nodes],
            inner: InnerCondition::Dirichlet,
            outer: OuterCondition::Dirichlet(1.0),
        }
    }

    /// The composite from node `start` outward with the limit-problem coefficient.
    pub fn from_composite(cm: &CompositeRadialManifold, start: usize, inner: InnerCondition) -> Result<Self> {
        if start + 8 > cm.len() {
            return Err(invalid("truncation leaves too few nodes"));
        }
        Ok(RadialBvp {
            dq: cm.dq,
            p: cm.p[start..].to_vec(),
            w: cm.w[start..].to_vec(),
            c: cm.coeff[start..].to_vec(),
            rho: cm.rho[start..].to_vec(),
            h_bar: cm.h_bar[start..].to_vec(),
            inner,
            outer: OuterCondition::Exterior { integral: cm.exterior_integral, jump: cm.jump() },
        })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalSolution {
    pub u: Vec<f64>,
    /// Expansion coefficient `𝒜` in `u = 1 + 𝒜/|x| + …`.
    pub a_coef: f64,
    /// Discrete `P(v)`.
    pub p_value: f64,
    /// `P(v)` by fourth-order quadrature; differs from `p_value` by the scheme error.
    pub p_quadrature: f64,
    /// `‖∇u‖²` over the sampled interior.
    pub grad_energy: f64,
    /// Mass shift `2𝒜`.
    pub mass_shift: f64,
    pub u_min: f64,
    /// Sup of the discrete equation residual.
    pub residual: f64,
}

/// Second-order finite-volume solve of the radial problem.
pub fn solve_conformal(bvp: &RadialBvp) -> Result<ConformalSolution> {
    let n = bvp.len();
    if n < 3 {
        return Err(invalid("need at least three nodes"));
    }
    let h = bvp.dq;
    let ph: Vec<f64> = (0..n - 1).map(|i| 0.5 * (bvp.p[i] + bvp.p[i + 1])).collect();
    let mut lo = vec![0.0; n];
    let mut di = vec![0.0; n];
    let mut up = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    match bvp.inner {
        InnerCondition::Dirichlet => {
            di[0] = 1.0;
        }
        InnerCondition::Robin => {
            // outward flux −ρ²u_s = −ρ²(H̄/4 − 1/(2ρ))u
            let r = bvp.rho[0];
            let coef = r * r * (0.25 * bvp.h_bar[0] - 0.5 / r);
            di[0] = -ph[0] / h - coef - 0.5 * h * bvp.c[0] * bvp.w[0];
            up[0] = ph[0] / h;
        }
    }
    for i in 1..n - 1 {
        lo[i] = ph[i - 1] / (h * h);
        up[i] = ph[i] / (h * h);
        di[i] = -(ph[i - 1] + ph[i]) / (h * h) - bvp.c[i] * bvp.w[i];
    }
    let last = n - 1;
    match bvp.outer {
        OuterCondition::Dirichlet(v) => {
            di[last] = 1.0;
            rhs[last] = v;
        }
        OuterCondition::Exterior { integral, jump } => {
            let r = bvp.rho[last];
            lo[last] = ph[last - 1] / h;
            di[last] = -ph[last - 1] / h - 1.0 / integral - 0.25 * jump * r * r - 0.5 * h * bvp.c[last] * bvp.w[last];
            rhs[last] = -1.0 / integral;
        }
    }
    let u = solve_tridiagonal(&lo, &di, &up, &rhs)?;
    let mut residual = 0.0f64;
    for i in 1..n - 1 {
        let r = lo[i] * u[i - 1] + di[i] * u[i] + up[i] * u[i + 1] - rhs[i];
        residual = residual.max(r.abs() / (bvp.w[i].abs() + bvp.p[i].abs() / (h * h)).max(1e-300));
    }
    let u_min = u.iter().skip(1).copied().fold(f64::INFINITY, f64::min);
    if !(u_min > 0.0) {
        return Err(Error::NonConvergence("conformal factor is not positive".into()));
    }
    let last_flux = ph[last - 1] * (u[last] - u[last - 1]) / h + 0.5 * h * bvp.c[last] * bvp.w[last] * u[last];
    let a_coef = match bvp.outer {
        OuterCondition::Dirichlet(_) => -last_flux,
        OuterCondition::Exterior { integral, .. } => -(1.0 - u[last]) / integral,
    };
    let grad_energy = 4.0 * PI * (0..n - 1).map(|i| ph[i] * (u[i + 1] - u[i]) * (u[i + 1] - u[i]) / h).sum::<f64>();
    let p_value = discrete_p(bvp, &u);
    let p_quadrature = quadrature_p(bvp, &u);
    Ok(ConformalSolution { u, a_coef, p_value, p_quadrature, grad_energy, mass_shift: 2.0 * a_coef, u_min, residual })
}

/// Exterior, corner and Robin contributions to `P`.
fn boundary_terms(bvp: &RadialBvp, u: &[f64]) -> f64 {
    let n = u.len();
    let mut val = 0.0;
    if let OuterCondition::Exterior { integral, jump } = bvp.outer {
        let c_out = (1.0 - u[n - 1]) / integral;
        let r = bvp.rho[n - 1];
        val += 2.0 * PI * c_out * c_out * integral + 0.5 * PI * jump * u[n - 1] * u[n - 1] * r * r;
    }
    if let InnerCondition::Robin = bvp.inner {
        let r = bvp.rho[0];
        let area = 4.0 * PI * r * r;
        val += -0.125 * bvp.h_bar[0] * u[0] * u[0] * area + 0.5 * sqrt(PI) * sqrt(u[0] * u[0] * u[0] * u[0] * area);
    }
    val
}

/// `P` on the grid: midpoint gradients and trapezoid potential, the functional
/// whose stationarity conditions are the finite-volume equations.
fn discrete_p(bvp: &RadialBvp, u: &[f64]) -> f64 {
    let n = u.len();
    let h = bvp.dq;
    let mut acc = 0.0;
    for i in 0..n - 1 {
        let ph = 0.5 * (bvp.p[i] + bvp.p[i + 1]);
        acc += ph * (u[i + 1] - u[i]) * (u[i + 1] - u[i]) / h;
    }
    for i in 0..n {
        let wt = if i == 0 || i == n - 1 { 0.5 * h } else { h };
        acc += wt * bvp.c[i] * bvp.w[i] * u[i] * u[i];
    }
    2.0 * PI * acc + boundary_terms(bvp, u)
}

/// `P` with fourth-order gradients and quadrature.
fn quadrature_p(bvp: &RadialBvp, u: &[f64]) -> f64 {
    let n = u.len();
    let h = bvp.dq;
    let uq = uniform_diff(u, h);
    let dens: Vec<f64> = (0..n).map(|i| bvp.p[i] * uq[i] * uq[i] + bvp.c[i] * bvp.w[i] * u[i] * u[i]).collect();
    2.0 * PI * uniform_cumulative(&dens, h)[n - 1] + boundary_terms(bvp, u)
}

/// `γ = ‖∇u‖² / Σ√(4π|Σ_h|)`.
pub fn gamma_constant(sol: &ConformalSolution, horizon_areas: &[f64]) -> Result<f64> {
    let den: f64 = horizon_areas.iter().map(|a| sqrt(4.0 * PI * a)).sum();
    if !(den > 0.0) {
        return Err(invalid("horizon area must be positive"));
    }
    Ok(sol.grad_energy / den)
}

/// Discrete `P(v)` for `u = 1 + v`; the exterior uses the harmonic extension
/// of the outer value.
pub fn functional_p(bvp: &RadialBvp, v: &[f64]) -> f64 {
    let u: Vec<f64> = v.iter().map(|x| 1.0 + x).collect();
    discrete_p(bvp, &u)
}

/// Conformal solve with the cylindrical end truncated at `ξ = −T` for each `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationSweep {
    pub t: Vec<f64>,
    pub gamma: Vec<f64>,
    pub a_coef: Vec<f64>,
    /// `|γ_last − γ_prev|`.
    pub drift: f64,
    pub solutions: Vec<ConformalSolution>,
}

pub fn truncation_sweep(cm: &CompositeRadialManifold, ts: &[f64], inner: InnerCondition, horizon_area: f64) -> Result<TruncationSweep> {
    if !cm.blowup {
        return Err(Error::Unsupported("truncation applies to cylindrical ends".into()));
    }
    let mut gamma = Vec::new();
    let mut a_coef = Vec::new();
    let mut solutions = Vec::new();
    for &t in ts {
        let start = cm.q.iter().position(|&q| q >= -t).ok_or_else(|| invalid("truncation beyond the grid"))?;
        let bvp = RadialBvp::from_composite(cm, start, inner)?;
        let sol = solve_conformal(&bvp)?;
        gamma.push(gamma_constant(&sol, &[horizon_area])?);
        a_coef.push(sol.a_coef);
        solutions.push(sol);
    }
    let k = gamma.len();
    let drift = if k >= 2 { (gamma[k - 1] - gamma[k - 2]).abs() } else { 0.0 };
    Ok(TruncationSweep { t: ts.to_vec(), gamma, a_coef, drift, solutions })
}

/// Ends with `sup|X| < 1e-8` take the Robin condition, others Dirichlet.
pub fn classify_end(cm: &CompositeRadialManifold, t: f64) -> InnerCondition {
    if cm.chi_sup(-t) < 1e-8 {
        InnerCondition::Robin
    } else {
        InnerCondition::Dirichlet
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mollifier_is_normalized() {
        let m = Mollifier::new();
        let total = m.average(-1.0, 1.0, |_| 1.0);
        assert!((total - 1.0).abs() < 1e-12, "{total}");
        let h = 1e-5;
        let fd = (m.phi(0.3 + h) - m.phi(0.3 - h)) / (2.0 * h);
        assert!((fd - m.phi_prime(0.3)).abs() < 1e-8);
    }

    #[test]
    fn sigma_profile_shape() {
        assert_eq!(sigma_profile(0.2).0, 0.01);
        assert_eq!(sigma_profile(0.6).0, 0.0);
        for k in 1..50 {
            let t = 0.25 + 0.25 * k as f64 / 50.0;
            let (s, s1, s2) = sigma_profile(t);
            assert!(s > 0.0 && s <= 0.01);
            let h = 1e-6;
            assert!(((sigma_profile(t + h).0 - sigma_profile(t - h).0) / (2.0 * h) - s1).abs() < 1e-7);
            assert!(((sigma_profile(t + h).1 - sigma_profile(t - h).1) / (2.0 * h) - s2).abs() < 1e-5);
        }
    }

    #[test]
    fn smooth_band_is_unchanged_to_mollifier_order() {
        let band = CornerBand { rho0: 2.0, drho: [1.0, 1.0], d2rho: [0.0, 0.0], x_t: [0.0, 0.0], eps: 0.2 };
        let mc = mollify_corner(&band, 0.01).unwrap();
        for (i, &t) in mc.t.iter().enumerate() {
            // γ = (2 + t)² is quadratic: γ_δ − γ = σ_δ² ∫s²φ
            assert!((mc.gamma[i] - band.gamma(t).0).abs() < 1e-9);
            assert!((mc.scalar[i] - band.scalar(t)).abs() < 1e-6);
        }
    }

    #[test]
    fn cylinder_profile_is_linear() {
        let sol = solve_conformal(&RadialBvp::cylinder(2.0, 1.0, 21)).unwrap();
        for (i, u) in sol.u.iter().enumerate() {
            assert!((u - i as f64 / 20.0).abs() < 1e-13);
        }
    }
}
