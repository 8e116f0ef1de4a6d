//! Exterior and interior flows: the Shi-Tam quasi-spherical flow over the
//! parallel-surface foliation of an embedded profile, its round static
//! analogue in a Schwarzschild reference, and radial weak inverse mean
//! curvature flow with the Hawking-mass refinements built on it.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::{EmbeddedProfile, Reference};
use crate::error::{invalid, Error, Result};
use crate::linalg::solve_dense;
use crate::math::{exp, ln, max_abs, spaced, sqrt, PI};
use crate::ode::{integrate, OdeOptions};
use crate::quad::{gauss_legendre, PolarGrid};
use crate::slices::{horizon_locate, radial_point, surface_on_grid, RadialInitialData};
use crate::surface::AxisymSurfaceData;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiTamOptions {
    /// Local error tolerance of the extrapolated step.
    pub rtol: f64,
    /// Number of output radii (log spaced).
    pub samples: usize,
    /// Polar nodes used for the flow; the profile is resampled if finer.
    pub max_nodes: usize,
    pub max_steps: usize,
}

impl Default for ShiTamOptions {
    fn default() -> Self {
        ShiTamOptions { rtol: 1e-8, samples: 200, max_nodes: 32, max_steps: 400_000 }
    }
}

/// Samples of a Shi-Tam type flow.
///
/// `r` is the foliation radius: `r₀ + t` for the parallel surfaces at distance
/// `t` (the radius itself for round leaves), and the areal radius of the leaf
/// for the static reference. `m` holds `(1/8π)∮H(1 − u⁻¹)dA` for the flat
/// reference and `m_ref + (1/8π)∮V(H_m − H_u)dA` for the static one.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiTamTrace {
    pub reference: Reference,
    pub grid: Arc<PolarGrid>,
    pub r: Vec<f64>,
    pub u: Vec<Vec<f64>>,
    pub m: Vec<f64>,
    pub mass_raw: f64,
    pub mass_extrapolated: f64,
    /// Residual of the tail fit.
    pub tail_residual: f64,
    /// Largest increase `M(r_{j+1}) − M(r_j)` (0 when monotone).
    pub max_increase: f64,
    pub steps: usize,
}

impl ShiTamTrace {
    pub fn is_monotone(&self, tol: f64) -> bool {
        self.max_increase <= tol
    }
}

/// Least-squares fit `c₀ + c₁/r + c₂/r²` over the last decade of radii.
/// Returns `(c₀, rms residual)`.
pub fn tail_fit(r: &[f64], m: &[f64]) -> Result<(f64, f64)> {
    let r_max = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let idx: Vec<usize> = (0..r.len()).filter(|&i| r[i] >= 0.1 * r_max).collect();
    if idx.len() < 4 {
        return Err(invalid("tail fit needs at least four samples in the last decade"));
    }
    let mut ata = [0.0; 9];
    let mut atb = [0.0; 3];
    for &i in &idx {
        let row = [1.0, 1.0 / r[i], 1.0 / (r[i] * r[i])];
        for p in 0..3 {
            atb[p] += row[p] * m[i];
            for q in 0..3 {
                ata[3 * p + q] += row[p] * row[q];
            }
        }
    }
    let c = solve_dense(3, &ata, &atb)?;
    let mut ss = 0.0;
    for &i in &idx {
        let e = c[0] + c[1] / r[i] + c[2] / (r[i] * r[i]) - m[i];
        ss += e * e;
    }
    Ok((c[0], sqrt(ss / idx.len() as f64)))
}

fn max_increase(m: &[f64]) -> f64 {
    m.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

/// Geometry of the parallel-surface foliation on the flow grid.
struct Foliation {
    grid: Arc<PolarGrid>,
    a: Vec<f64>,
    big_b: Vec<f64>,
    k1: Vec<f64>,
    k2: Vec<f64>,
    r0: f64,
}

impl Foliation {
    fn from_profile(p: &EmbeddedProfile, max_nodes: usize) -> Result<Self> {
        let n = p.grid.len().min(max_nodes.max(8));
        let grid = if n == p.grid.len() { p.grid.clone() } else { Arc::new(PolarGrid::new(n)) };
        let bsrc: Vec<f64> = (0..p.grid.len()).map(|i| p.rho[i] / p.grid.s[i]).collect();
        let resample = |f: &[f64]| -> Vec<f64> {
            if Arc::ptr_eq(&grid, &p.grid) {
                f.to_vec()
            } else {
                grid.x.iter().map(|&x| p.grid.eval(f, x)).collect()
            }
        };
        let big_b = resample(&bsrc);
        let z = resample(&p.z);
        let k1 = resample(&p.kappa1);
        let k2 = resample(&p.kappa2);
        let bx = grid.diff(&big_b);
        let zx = grid.diff(&z);
        let a: Vec<f64> = (0..n)
            .map(|i| {
                let (x, s) = (grid.x[i], grid.s[i]);
                let rho_t = -s * s * bx[i] + x * big_b[i];
                let z_t = -s * zx[i];
                sqrt(rho_t * rho_t + z_t * z_t)
            })
            .collect();
        if k1.iter().chain(&k2).any(|&k| !(k > 0.0)) {
            return Err(Error::MeanCurvature("parallel surfaces need a strictly convex profile".into()));
        }
        let area: f64 = 2.0 * PI * (0..n).map(|i| grid.w[i] * a[i] * big_b[i]).sum::<f64>();
        Ok(Foliation { grid, a, big_b, k1, k2, r0: sqrt(area / (4.0 * PI)) })
    }

    fn len(&self) -> usize {
        self.a.len()
    }

    /// `(a_t, B_t, H_t, K_t)` at node `i`.
    fn leaf(&self, t: f64, i: usize) -> (f64, f64, f64, f64) {
        let (f1, f2) = (1.0 + t * self.k1[i], 1.0 + t * self.k2[i]);
        let (c1, c2) = (self.k1[i] / f1, self.k2[i] / f2);
        (self.a[i] * f1, self.big_b[i] * f2, c1 + c2, c1 * c2)
    }

    /// Row-major Laplacian of the leaf at distance `t`.
    fn laplacian(&self, t: f64) -> Vec<f64> {
        let n = self.len();
        let g = &self.grid;
        let mut ab = vec![0.0; n];
        let mut wk = vec![0.0; n];
        for k in 0..n {
            let (a, b, _, _) = self.leaf(t, k);
            ab[k] = 1.0 / (a * b);
            wk[k] = g.s[k] * g.s[k] * b / a;
        }
        let mut tmp = vec![0.0; n * n];
        for k in 0..n {
            for j in 0..n {
                tmp[k * n + j] = wk[k] * g.dmat(k, j);
            }
        }
        let mut lap = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let d = g.dmat(i, k) * ab[i];
                if d == 0.0 {
                    continue;
                }
                for j in 0..n {
                    lap[i * n + j] += d * tmp[k * n + j];
                }
            }
        }
        lap
    }

    fn monotone(&self, t: f64, u: &[f64]) -> f64 {
        let g = &self.grid;
        (0..self.len())
            .map(|i| {
                let (a, b, h, _) = self.leaf(t, i);
                g.w[i] * h * (1.0 - 1.0 / u[i]) * a * b
            })
            .sum::<f64>()
            / 4.0
    }
}

/// One linearly implicit Euler step in `σ = ln(r/r₀)` from `σ0` of size `h`:
/// the diffusion `u²Δu` is implicit with frozen `u²`, the reaction explicit.
fn imex_euler(fol: &Foliation, sigma0: f64, u: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = fol.len();
    let t0 = fol.r0 * (exp(sigma0) - 1.0);
    let t1 = fol.r0 * (exp(sigma0 + h) - 1.0);
    let lap = fol.laplacian(t1);
    let mut mat = vec![0.0; n * n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        let (_, _, h0, k0) = fol.leaf(t0, i);
        let (_, _, h1, _) = fol.leaf(t1, i);
        let c0 = (fol.r0 + t0) / h0;
        let c1 = (fol.r0 + t1) / h1;
        rhs[i] = u[i] + h * c0 * k0 * (u[i] - u[i] * u[i] * u[i]);
        for j in 0..n {
            mat[i * n + j] = -h * c1 * u[i] * u[i] * lap[i * n + j];
        }
        mat[i * n + i] += 1.0;
    }
    solve_dense(n, &mat, &rhs)
}

/// Extrapolated IMEX step (substep counts 1, 2, 3). Returns the third-order
/// value and the difference to the second-order one.
fn extrapolated_step(fol: &Foliation, sigma0: f64, u: &[f64], h: f64) -> Result<(Vec<f64>, f64)> {
    let seq = [1usize, 2, 3];
    let mut table: Vec<Vec<Vec<f64>>> = Vec::with_capacity(3);
    for (j, &nj) in seq.iter().enumerate() {
        let hj = h / nj as f64;
        let mut y = u.to_vec();
        for k in 0..nj {
            y = imex_euler(fol, sigma0 + k as f64 * hj, &y, hj)?;
        }
        let mut row = vec![y];
        for k in 1..=j {
            let ratio = nj as f64 / seq[j - k] as f64 - 1.0;
            let prev = &row[k - 1];
            let above = &table[j - 1][k - 1];
            row.push(prev.iter().zip(above).map(|(p, a)| p + (p - a) / ratio).collect());
        }
        table.push(row);
    }
    let best = table[2][2].clone();
    let err = best
        .iter()
        .zip(&table[2][1])
        .map(|(a, b)| (a - b).abs() / (1.0 + a.abs()))
        .fold(0.0, f64::max);
    Ok((best, err))
}

/// Shi-Tam flow `H_r ∂u/∂r = u²Δ_r u + K_r(u − u³)` from `u₀` on the profile
/// out to foliation radius `r_max`. A Schwarzschild profile runs the round
/// static analogue instead (see [`static_round_flow`]).
pub fn shi_tam_flow(profile: &EmbeddedProfile, u0: &[f64], r_max: f64, o: ShiTamOptions) -> Result<ShiTamTrace> {
    if u0.len() != profile.grid.len() {
        return Err(invalid("u₀ must be sampled on the profile grid"));
    }
    if u0.iter().any(|&u| !(u > 0.0) || !u.is_finite()) {
        return Err(invalid("u₀ must be positive"));
    }
    if let Reference::Schwarzschild(m) = profile.reference {
        return static_flow_from_profile(profile, u0, m, r_max, o);
    }
    let fol = Foliation::from_profile(profile, o.max_nodes)?;
    if !(r_max > fol.r0) {
        return Err(invalid(format!("r_max = {r_max} must exceed the starting radius {}", fol.r0)));
    }
    let n = fol.len();
    let mut u: Vec<f64> = if Arc::ptr_eq(&fol.grid, &profile.grid) {
        u0.to_vec()
    } else {
        fol.grid.x.iter().map(|&x| profile.grid.eval(u0, x)).collect()
    };
    let radii = spaced(fol.r0, r_max, o.samples.max(2), true);
    let sig_end = ln(r_max / fol.r0);
    let mut out_u = Vec::with_capacity(radii.len());
    let mut out_m = Vec::with_capacity(radii.len());
    out_u.push(u.clone());
    out_m.push(fol.monotone(0.0, &u));
    let mut sigma = 0.0;
    let mut h: f64 = 1e-3;
    let mut steps = 0usize;
    let mut next = 1usize;
    while next < radii.len() {
        let target = ln(radii[next] / fol.r0).min(sig_end);
        let step = h.min(target - sigma);
        let (cand, err) = extrapolated_step(&fol, sigma, &u, step)?;
        steps += 1;
        if steps > o.max_steps {
            return Err(Error::NonConvergence("Shi-Tam step budget exhausted".into()));
        }
        let fac = if err > 0.0 { 0.9 * crate::math::powf(o.rtol / err, 1.0 / 3.0) } else { 4.0 };
        if err <= o.rtol {
            sigma += step;
            u = cand;
            if u.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
                return Err(Error::NonConvergence(format!("u left (0, ∞) at r = {}", fol.r0 * exp(sigma))));
            }
            if (target - sigma).abs() <= 1e-14 * (1.0 + target) {
                sigma = target;
                let t = fol.r0 * (exp(sigma) - 1.0);
                out_u.push(u.clone());
                out_m.push(fol.monotone(t, &u));
                next += 1;
            }
            if step == h {
                h *= fac.clamp(0.2, 4.0);
            }
        } else {
            h = step * fac.clamp(0.1, 0.9);
            if h < 1e-14 {
                return Err(Error::NonConvergence("Shi-Tam step size underflow".into()));
            }
        }
    }
    let (mass_extrapolated, tail_residual) = tail_fit(&radii, &out_m)?;
    debug_assert_eq!(out_u[0].len(), n);
    Ok(ShiTamTrace {
        reference: profile.reference,
        grid: fol.grid.clone(),
        mass_raw: *out_m.last().unwrap(),
        max_increase: max_increase(&out_m),
        r: radii,
        u: out_u,
        m: out_m,
        mass_extrapolated,
        tail_residual,
        steps,
    })
}

fn static_flow_from_profile(profile: &EmbeddedProfile, u0: &[f64], m: f64, r_max: f64, o: ShiTamOptions) -> Result<ShiTamTrace> {
    let n = profile.grid.len();
    let iso: Vec<f64> = (0..n).map(|i| sqrt(profile.rho[i] * profile.rho[i] + profile.z[i] * profile.z[i])).collect();
    let r_iso = iso.iter().sum::<f64>() / n as f64;
    let spread = iso.iter().map(|r| (r - r_iso).abs()).fold(0.0, f64::max);
    let u_mean = u0.iter().sum::<f64>() / n as f64;
    let u_spread = u0.iter().map(|u| (u - u_mean).abs()).fold(0.0, f64::max);
    if spread > 1e-10 * r_iso || u_spread > 1e-12 * u_mean {
        return Err(Error::Unsupported("the static-reference flow is implemented for centred round spheres with uniform u₀".into()));
    }
    let psi = 1.0 + m / (2.0 * r_iso);
    let mut tr = static_round_flow(m, r_iso * psi * psi, u_mean, r_max, o.samples)?;
    tr.grid = profile.grid.clone();
    tr.u = tr.u.iter().map(|v| vec![v[0]; n]).collect();
    Ok(tr)
}

/// Round leaves of the Schwarzschild(`m`) reference flowed with speed
/// `κ = (κ₁⁻¹ + κ₂⁻¹)/4 = 1/H_m`, so the areal radius obeys `R = R₀e^{r/2}`.
/// The extension `u²dr² + R²dΩ²` has zero scalar curvature iff
/// `du/dR = 3u/(2R) − 2u³/R³`, and its leaves have mean curvature `1/u`.
/// Samples `m + (R²/2)V_m(H_m − 1/u)` at log-spaced areal radii.
pub fn static_round_flow(m: f64, areal0: f64, u0: f64, r_max: f64, samples: usize) -> Result<ShiTamTrace> {
    if !(m >= 0.0) || !(areal0 > 2.0 * m) {
        return Err(invalid("the starting sphere must lie outside the reference horizon"));
    }
    if !(u0 > 0.0) {
        return Err(invalid("u₀ must be positive"));
    }
    if !(r_max > areal0) {
        return Err(invalid("r_max must exceed the starting areal radius"));
    }
    let radii = spaced(areal0, r_max, samples.max(2), true);
    // w = u/R^{3/2} keeps the solution O(1): dw/dR = −2w³
    let w0 = u0 / (areal0 * sqrt(areal0));
    let opt = OdeOptions { rtol: 1e-13, atol: 1e-300, h0: 1e-3 * areal0, max_steps: 2_000_000 };
    let ys = integrate(
        |rr, y, dy| {
            let _ = rr;
            dy[0] = -2.0 * y[0] * y[0] * y[0];
        },
        areal0,
        &[w0],
        &radii,
        opt,
    )?;
    let mut us = Vec::with_capacity(radii.len());
    let mut qs = Vec::with_capacity(radii.len());
    for (rr, y) in radii.iter().zip(&ys) {
        let u = y[0] * rr * sqrt(*rr);
        if !(u > 0.0) || !u.is_finite() {
            return Err(Error::NonConvergence("u left (0, ∞) in the static flow".into()));
        }
        let v = sqrt(1.0 - 2.0 * m / rr);
        let hm = 2.0 * v / rr;
        us.push(vec![u]);
        qs.push(m + 0.5 * rr * rr * v * (hm - 1.0 / u));
    }
    let (mass_extrapolated, tail_residual) = tail_fit(&radii, &qs)?;
    Ok(ShiTamTrace {
        reference: Reference::Schwarzschild(m),
        grid: Arc::new(PolarGrid::new(4)),
        mass_raw: *qs.last().unwrap(),
        max_increase: max_increase(&qs),
        r: radii,
        u: us,
        m: qs,
        mass_extrapolated,
        tail_residual,
        steps: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ImcfStart {
    /// Outermost apparent horizon of the slice.
    Horizon,
    /// Inner end of the sampled data (a cylindrical end or inner boundary).
    CylindricalEnd,
    Radius(f64),
}

/// Leaves of radial weak IMCF.
///
/// For rotating data the leaves are coordinate spheres with `t` read off the
/// areas (`surrogate` is set); they are not exact IMCF leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct ImcfTrace {
    pub t: Vec<f64>,
    /// Coordinate radius of each leaf.
    pub radius: Vec<f64>,
    pub areal_radius: Vec<f64>,
    pub area: Vec<f64>,
    pub hawking: Vec<f64>,
    /// `∮(|E|² + |B|²)dA`.
    pub charge_integrand: Vec<f64>,
    /// `∮|k(η/|η|, ν)|² dA`.
    pub am_integrand: Vec<f64>,
    /// `∮ k(ν, η) dA = 8π𝒥` on the leaf.
    pub am_flux: Vec<f64>,
    /// `∮|η|² dA`.
    pub eta_norm2: Vec<f64>,
    /// `(1/4π)∮E_ν dA`.
    pub charge: Vec<f64>,
    /// Scalar curvature of the slice on the leaf (NaN when not sampled).
    pub scalar: Vec<f64>,
    /// Set on the first leaf after a jump.
    pub jump: Vec<bool>,
    /// Coordinate radii skipped by jumps.
    pub skipped: Vec<f64>,
    pub t0_index: usize,
    pub alpha2: f64,
    /// `max |log(|S_t|/|S₀|) − t|` over leaves reached without a jump.
    pub area_law_residual: f64,
    pub surrogate: bool,
}

impl ImcfTrace {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn start_area(&self) -> f64 {
        self.area[0]
    }

    pub fn t0(&self) -> f64 {
        self.t[self.t0_index]
    }

    pub fn alpha(&self) -> f64 {
        sqrt(self.alpha2.max(0.0))
    }

    /// Largest decrease of `m_H` between consecutive leaves (0 when monotone).
    pub fn hawking_decrease(&self) -> f64 {
        self.hawking.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max)
    }

    /// Geroch monotonicity audit: largest `m_H` decrease over stretches
    /// where the sampled scalar curvature is nonnegative.
    pub fn geroch_violation(&self, tol: f64) -> f64 {
        let mut worst = 0.0f64;
        for i in 1..self.len() {
            let ok = [self.scalar[i - 1], self.scalar[i]].iter().all(|r| r.is_nan() || *r >= -tol);
            if ok {
                worst = worst.max(self.hawking[i - 1] - self.hawking[i]);
            }
        }
        worst
    }

    /// `(t, |S_t|, m_H, charge integrand, AM integrand, jump)` rows.
    pub fn rows(&self) -> Vec<[f64; 6]> {
        (0..self.len())
            .map(|i| [self.t[i], self.area[i], self.hawking[i], self.charge_integrand[i], self.am_integrand[i], if self.jump[i] { 1.0 } else { 0.0 }])
            .collect()
    }
}

struct Leaf {
    area: f64,
    hawking: f64,
    charge_integrand: f64,
    am_integrand: f64,
    am_flux: f64,
    eta_norm2: f64,
    charge: f64,
    scalar: f64,
    h_min: f64,
}

fn leaf_of(s: &AxisymSurfaceData, scalar: f64) -> Leaf {
    let n = s.len();
    let area = s.area();
    let h2: Vec<f64> = s.h.iter().map(|h| h * h).collect();
    let e2: Vec<f64> = (0..n).map(|i| s.e_nu[i] * s.e_nu[i] + s.b_nu[i] * s.b_nu[i]).collect();
    let kn: Vec<f64> = (0..n).map(|i| if s.b[i] > 0.0 { (s.p_phi[i] / s.b[i]) * (s.p_phi[i] / s.b[i]) } else { 0.0 }).collect();
    let b2: Vec<f64> = s.b.iter().map(|b| b * b).collect();
    let hawking = sqrt(area / (16.0 * PI)) * (1.0 - s.integrate(&h2) / (16.0 * PI));
    Leaf {
        area,
        hawking,
        charge_integrand: s.integrate(&e2),
        am_integrand: s.integrate(&kn),
        am_flux: s.integrate(&s.p_phi),
        eta_norm2: s.integrate(&b2),
        charge: s.integrate(&s.e_nu) / (4.0 * PI),
        scalar,
        h_min: s.h.iter().copied().fold(f64::INFINITY, f64::min),
    }
}

/// `∫ d ln(r̃²)` between two radii by Gauss-Legendre quadrature of
/// `H √A = 2 r̃_r / r̃`, the IMCF time elapsed between two round leaves.
fn imcf_time(data: &RadialInitialData, lo: f64, hi: f64) -> Result<f64> {
    let (x, w) = gauss_legendre(10);
    let mut acc = 0.0;
    for k in 0..x.len() {
        let r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x[k];
        let p = radial_point(&data.spec, r)?;
        acc += w[k] * 2.0 * p.rt_r / p.rt;
    }
    Ok(0.5 * (hi - lo) * acc)
}

/// A sphere is outward minimizing iff no sphere outside it has less area;
/// the others are skipped by jumps.
pub fn outward_minimizing(areas: &[f64]) -> Vec<bool> {
    let n = areas.len();
    let mut hull = vec![0.0; n];
    let mut run = f64::INFINITY;
    for i in (0..n).rev() {
        run = run.min(areas[i]);
        hull[i] = run;
    }
    (0..n).map(|i| areas[i] <= hull[i] * (1.0 + 1e-12)).collect()
}

/// Radial weak IMCF from `start` to the coordinate sphere `stop` with
/// `nodes` leaves (log spaced). Leaves that are not outward minimizing are
/// skipped: the flow jumps to the outermost sphere of equal area.
pub fn imcf_radial(data: &RadialInitialData, start: ImcfStart, stop: f64, nodes: usize) -> Result<ImcfTrace> {
    let spec = data.spec;
    let r_start = match start {
        ImcfStart::Horizon => horizon_locate(&spec)?.radius,
        ImcfStart::CylindricalEnd => data.r_min(),
        ImcfStart::Radius(r) => r,
    };
    if !(stop > r_start) {
        return Err(invalid("stop surface must lie outside the start surface"));
    }
    if nodes < 4 {
        return Err(invalid("IMCF needs at least four leaves"));
    }
    let rs = spaced(r_start, stop, nodes, r_start > 0.0);
    let rotating = spec.is_rotating();
    let grid = match &data.polar {
        Some(slab) => slab.grid.clone(),
        None => Arc::new(PolarGrid::new(if rotating { spec.polar_order } else { 8 })),
    };
    let mut leaves = Vec::with_capacity(rs.len());
    for &r in &rs {
        let s = surface_on_grid(&spec, r, grid.clone())?;
        let scalar = if rotating { f64::NAN } else { radial_point(&spec, r)?.scalar_curvature() };
        leaves.push(leaf_of(&s, scalar));
    }
    if leaves[0].h_min < -1e-10 {
        return Err(Error::Hypothesis("IMCF start surface has negative mean curvature".into()));
    }
    let n = rs.len();
    let areas: Vec<f64> = leaves.iter().map(|l| l.area).collect();
    let is_leaf = outward_minimizing(&areas);
    if !is_leaf[0] {
        return Err(Error::Hypothesis("start surface is not outward minimizing".into()));
    }
    if !is_leaf[n - 1] {
        return Err(Error::Hypothesis("radial grid exhausted before the stop surface".into()));
    }
    let mut tr = ImcfTrace {
        t: Vec::new(),
        radius: Vec::new(),
        areal_radius: Vec::new(),
        area: Vec::new(),
        hawking: Vec::new(),
        charge_integrand: Vec::new(),
        am_integrand: Vec::new(),
        am_flux: Vec::new(),
        eta_norm2: Vec::new(),
        charge: Vec::new(),
        scalar: Vec::new(),
        jump: Vec::new(),
        skipped: Vec::new(),
        t0_index: 0,
        alpha2: 0.0,
        area_law_residual: 0.0,
        surrogate: rotating,
    };
    let a0 = leaves[0].area;
    let mut t = 0.0;
    let mut prev: Option<usize> = None;
    let mut jumped = false;
    let mut smooth = true;
    for i in 0..n {
        if !is_leaf[i] {
            tr.skipped.push(rs[i]);
            jumped = true;
            continue;
        }
        if let Some(p) = prev {
            if jumped || rotating {
                t += ln(leaves[i].area / leaves[p].area);
            } else {
                t += imcf_time(data, rs[p], rs[i])?;
            }
        }
        if jumped {
            smooth = false;
        }
        let lf = &leaves[i];
        if smooth {
            tr.area_law_residual = tr.area_law_residual.max((ln(lf.area / a0) - t).abs());
        }
        tr.t.push(t);
        tr.radius.push(rs[i]);
        tr.areal_radius.push(sqrt(lf.area / (4.0 * PI)));
        tr.area.push(lf.area);
        tr.hawking.push(lf.hawking);
        tr.charge_integrand.push(lf.charge_integrand);
        tr.am_integrand.push(lf.am_integrand);
        tr.am_flux.push(lf.am_flux);
        tr.eta_norm2.push(lf.eta_norm2);
        tr.charge.push(lf.charge);
        tr.scalar.push(lf.scalar);
        tr.jump.push(jumped);
        jumped = false;
        prev = Some(i);
    }
    // the stop sphere is a leaf, so it is the largest leaf inside the region
    tr.t0_index = tr.len() - 1;
    tr.alpha2 = 1.0 - sqrt(a0 / tr.area[tr.t0_index]);
    Ok(tr)
}

/// Charge refinement of Geroch monotonicity, audited leaf by leaf.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeBound {
    /// `√(π/|Σ_*|) Q² (1 − e^{−t/2})` on each leaf.
    pub bound: Vec<f64>,
    /// `m_H(S_t) − √(|Σ_*|/16π)`.
    pub lhs: Vec<f64>,
    /// Integrated Geroch chain `∫ √|S|/(16π)^{3/2} · 2∮(|E|²+|B|²) dt`.
    pub chain: Vec<f64>,
    /// `min(lhs − bound)` over all leaves.
    pub slack: f64,
    /// `min(lhs − chain, chain − bound)`; trapezoid error in `chain` is included.
    pub chain_slack: f64,
    /// Bound at `t₀`.
    pub at_t0: f64,
}

/// Evaluate the charge bound along `trace` with `|Σ_*|` the start area.
pub fn charge_monotonicity_bound(trace: &ImcfTrace, q: f64) -> Result<ChargeBound> {
    if trace.is_empty() {
        return Err(Error::Missing("empty IMCF trace".into()));
    }
    let a_star = trace.start_area();
    let c = sqrt(PI / a_star) * q * q;
    let bound: Vec<f64> = trace.t.iter().map(|&t| c * (1.0 - exp(-0.5 * t))).collect();
    let base = sqrt(a_star / (16.0 * PI));
    let lhs: Vec<f64> = trace.hawking.iter().map(|m| m - base).collect();
    let rate: Vec<f64> = (0..trace.len())
        .map(|i| sqrt(trace.area[i]) / crate::math::powf(16.0 * PI, 1.5) * 2.0 * trace.charge_integrand[i])
        .collect();
    let mut chain = vec![0.0; trace.len()];
    for i in 1..trace.len() {
        let dt = trace.t[i] - trace.t[i - 1];
        chain[i] = chain[i - 1] + 0.5 * dt * (rate[i] + rate[i - 1]);
    }
    let slack = (0..trace.len()).map(|i| lhs[i] - bound[i]).fold(f64::INFINITY, f64::min);
    let chain_slack = (0..trace.len()).map(|i| (lhs[i] - chain[i]).min(chain[i] - bound[i])).fold(f64::INFINITY, f64::min);
    Ok(ChargeBound { at_t0: bound[trace.t0_index], bound, lhs, chain, slack, chain_slack })
}

/// Angular-momentum estimate `(2πα)²/𝒞² · √(4π/|Σ_*|) 𝒥²` with the per-leaf
/// Hölder step `(∮k(ν,η))² ≤ ∮|k(η/|η|,ν)|² · ∮|η|²` audited.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmBound {
    pub value: f64,
    /// Smallest relative Hölder slack over the leaves.
    pub holder_slack: f64,
    /// Largest leafwise change of `𝒥` relative to `|𝒥|` (flux conservation).
    pub flux_drift: f64,
}

pub fn am_monotonicity_bound(trace: &ImcfTrace, j: f64, circumference: f64) -> Result<AmBound> {
    if !(circumference > 0.0) {
        return Err(invalid("circumference must be positive"));
    }
    let value = (2.0 * PI * trace.alpha()) * (2.0 * PI * trace.alpha()) / (circumference * circumference) * sqrt(4.0 * PI / trace.start_area()) * j * j;
    let mut holder = f64::INFINITY;
    let mut drift = 0.0f64;
    for i in 0..trace.len() {
        let lhs = trace.am_integrand[i] * trace.eta_norm2[i];
        let rhs = trace.am_flux[i] * trace.am_flux[i];
        holder = holder.min((lhs - rhs) / lhs.max(1e-300));
        drift = drift.max((trace.am_flux[i] / (8.0 * PI) - j).abs() / j.abs().max(1e-300));
    }
    if j == 0.0 {
        drift = max_abs(&trace.am_flux);
    }
    Ok(AmBound { value, holder_slack: holder, flux_drift: drift })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRatio {
    pub lambda: f64,
    /// Index of the leaf attaining the sup of the barred areas.
    pub argmax: usize,
}

/// `λ = √(|S̃_{t₀}| |Σ_h|) / sup_{t ≤ t₀} |S̃_t|_ḡ` over the sampled leaves.
pub fn lambda_ratio(conformal_areas: &[f64], barred_areas: &[f64], t0_index: usize, horizon_area: f64) -> Result<LambdaRatio> {
    if conformal_areas.len() != barred_areas.len() || t0_index >= conformal_areas.len() {
        return Err(invalid("area samples are inconsistent"));
    }
    let mut argmax = 0;
    for i in 0..=t0_index {
        if barred_areas[i] > barred_areas[argmax] {
            argmax = i;
        }
    }
    let sup = barred_areas[argmax];
    if !(sup > 0.0) {
        return Err(Error::NonConvergence("degenerate sup of barred areas".into()));
    }
    Ok(LambdaRatio { lambda: sqrt(conformal_areas[t0_index] * horizon_area) / sup, argmax })
}

/// `β = α R_* / R_c` with `R_* = √(|Σ_*|/4π)` and `R_c = 𝒞/2π`.
pub fn beta_ratio(alpha2: f64, area_star: f64, circumference: f64) -> f64 {
    sqrt(alpha2.max(0.0)) * sqrt(area_star / (4.0 * PI)) * 2.0 * PI / circumference
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::embed_rotational;
    use crate::slices::{build_radial_data, SpacetimeSpec};

    fn round_profile(r: f64, n: usize) -> EmbeddedProfile {
        let s = AxisymSurfaceData::round(Arc::new(PolarGrid::new(n)), r);
        embed_rotational(&s).unwrap()
    }

    #[test]
    fn tail_fit_recovers_constant() {
        let r = spaced(10.0, 1000.0, 50, true);
        let m: Vec<f64> = r.iter().map(|r| 2.0 + 3.0 / r - 1.0 / (r * r)).collect();
        let (c0, res) = tail_fit(&r, &m).unwrap();
        assert!((c0 - 2.0).abs() < 1e-12 && res < 1e-12);
    }

    #[test]
    fn laplacian_of_round_sphere_has_legendre_spectrum() {
        let p = round_profile(2.0, 12);
        let fol = Foliation::from_profile(&p, 12).unwrap();
        let lap = fol.laplacian(1.0);
        let n = fol.len();
        // P₂ on the sphere of radius 3: eigenvalue −6/9
        let p2: Vec<f64> = fol.grid.x.iter().map(|x| 1.5 * x * x - 0.5).collect();
        for i in 0..n {
            let v: f64 = (0..n).map(|j| lap[i * n + j] * p2[j]).sum();
            assert!((v + 6.0 / 9.0 * p2[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn euclidean_fixed_point() {
        let p = round_profile(3.0, 16);
        let tr = shi_tam_flow(&p, &vec![1.0; 16], 300.0, ShiTamOptions { samples: 40, ..Default::default() }).unwrap();
        assert!(tr.m.iter().zip(&tr.r).all(|(m, r)| m.abs() < 1e-11 * r));
        assert!(tr.u.iter().flatten().all(|u| (u - 1.0).abs() < 1e-11));
    }

    #[test]
    fn static_flow_reproduces_schwarzschild_extension() {
        // u₀ for a Schwarzschild(μ) extension of the m-reference foliation
        let (m, mu, r0) = (0.5, 1.0, 6.0);
        let u0 = r0 / (2.0 * sqrt(1.0 - 2.0 * mu / r0));
        let tr = static_round_flow(m, r0, u0, 1e4, 120).unwrap();
        for (r, u) in tr.r.iter().zip(&tr.u) {
            let exact = r / (2.0 * sqrt(1.0 - 2.0 * mu / r));
            assert!((u[0] / exact - 1.0).abs() < 1e-9, "{r}");
        }
        assert!(tr.is_monotone(1e-12));
        assert!((tr.mass_extrapolated - mu).abs() < 1e-5);
    }

    #[test]
    fn static_flow_is_constant_on_the_reference() {
        let m = 1.0;
        let r0 = 5.0;
        let tr = static_round_flow(m, r0, r0 / (2.0 * sqrt(1.0 - 2.0 * m / r0)), 1e3, 40).unwrap();
        assert!(tr.m.iter().all(|q| (q - m).abs() < 1e-9));
    }

    #[test]
    fn flat_imcf_has_zero_hawking_mass() {
        let data = build_radial_data(SpacetimeSpec::minkowski(), 1.0, 10.0, 32).unwrap();
        let tr = imcf_radial(&data, ImcfStart::Radius(1.0), 4.0, 40).unwrap();
        assert!(tr.hawking.iter().all(|m| m.abs() < 1e-13));
        assert!((tr.alpha2 - 0.75).abs() < 1e-12);
        assert!(tr.area_law_residual < 1e-10);
    }

    #[test]
    fn isotropic_throat_forces_a_jump() {
        let spec = SpacetimeSpec::schwarzschild(1.0).with_slicing(crate::slices::Slicing::Isotropic);
        let data = build_radial_data(spec, 0.5, 20.0, 64).unwrap();
        // inside the throat the coordinate spheres have H < 0
        assert!(imcf_radial(&data, ImcfStart::Radius(0.3), 4.0, 200).is_err());
        let tr = imcf_radial(&data, ImcfStart::Horizon, 4.0, 200).unwrap();
        assert!(tr.jump.iter().all(|&j| !j));
        assert!(tr.hawking.iter().all(|m| (m - 1.0).abs() < 1e-10));
    }

    #[test]
    fn jumps_skip_spheres_with_a_smaller_outer_sphere() {
        let areas = [1.0, 2.0, 3.0, 2.5, 2.0, 2.8, 4.0];
        let ok = outward_minimizing(&areas);
        assert_eq!(ok, vec![true, true, false, false, true, true, true]);
    }

    #[test]
    fn lambda_examples() {
        // identity conformal factor, areal spheres out to R = 8, m = 1
        let areas = [16.0 * PI, 64.0 * PI, 256.0 * PI];
        let l = lambda_ratio(&areas, &areas, 2, 16.0 * PI).unwrap();
        assert!((l.lambda - 0.25).abs() < 1e-14);
        let scaled: Vec<f64> = areas.iter().map(|a| 9.0 * a).collect();
        let l2 = lambda_ratio(&scaled, &scaled, 2, 9.0 * 16.0 * PI).unwrap();
        assert!((l.lambda - l2.lambda).abs() < 1e-14);
    }
}
