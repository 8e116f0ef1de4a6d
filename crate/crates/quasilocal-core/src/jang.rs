//! Radial Jang equation and the Jang-deformed data.
//!
//! For `f = f(r)` the Jang equation reduces to a first-order equation for
//! `v = f_s/√(1+f_s²)` along proper distance `s`:
//! `v_s = −H v + k_ν(1 − v²) + Tr_Σ k`. It is integrated in `u = 1 + v`, which
//! vanishes where the graph blows up over a future apparent horizon.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{exp, ln, log2_ratio, sqrt, PI};
use crate::ode::{integrate, OdeOptions};
use crate::quad::{uniform_cumulative, uniform_diff};
use crate::slices::{horizon_locate, radial_point_near, RadialInitialData, RadialPoint, SpacetimeSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JangOptions {
    pub nodes: usize,
    /// Length of the `ξ = log((r − r_h)/(r_out − r_h))` interval for blow-up solutions.
    pub xi_span: f64,
    /// Regularization offsets `ε₀ 2^{−j}` relative to `r_out − r_h`.
    pub eps0: f64,
    pub eps_levels: usize,
}

impl Default for JangOptions {
    fn default() -> Self {
        JangOptions { nodes: 2001, xi_span: 20.0, eps0: 1e-2, eps_levels: 5 }
    }
}

/// ε-regularized blow-up runs: `u(r_h + ε) = 0` for a dyadic sequence of ε.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupExtrapolation {
    pub eps: Vec<f64>,
    /// `v(r_out)` for each ε.
    pub outer_v: Vec<f64>,
    pub extrapolated: f64,
    /// Observed convergence order in ε.
    pub rate: f64,
    /// Difference between the extrapolated value and the ε = 0 solve.
    pub error: f64,
}

/// Radial Jang solution sampled on a grid uniform in `q`.
///
/// With blow-up `q = ξ` and `r = r_h + (r_out − r_h)e^ξ`; otherwise `q = r − r_in`.
#[derive(Debug, Clone, PartialEq)]
pub struct JangSolution {
    pub spec: SpacetimeSpec,
    pub tau_outer: f64,
    pub blowup: bool,
    /// `r_h` with blow-up, else the inner radius.
    pub base: f64,
    pub q: Vec<f64>,
    pub dq: f64,
    pub r: Vec<f64>,
    pub delta: Vec<f64>,
    /// `1 + v`.
    pub u: Vec<f64>,
    pub f: Vec<f64>,
    /// `df/dr`.
    pub fp: Vec<f64>,
    pub rt: Vec<f64>,
    /// `Ā = A + f′²`, so `ḡ = Ā dr² + r̃² dΩ²`.
    pub big_a_bar: Vec<f64>,
    /// `ds̄/dq`; tends to the cylinder scale at a blow-up end.
    pub ds_bar_dq: Vec<f64>,
    pub extrapolation: Option<BlowupExtrapolation>,
}

fn rhs_u(p: &RadialPoint, u: f64) -> f64 {
    if p.k_nu == 0.0 && p.k_t == 0.0 {
        // √A·H = 2 r̃_r/r̃ stays finite on a static horizon
        return 2.0 * p.rt_r / p.rt * (1.0 - u);
    }
    let sa = sqrt(p.big_a);
    sa * p.theta_plus - 2.0 * p.rt_r / p.rt * u + sa * p.k_nu * u * (2.0 - u)
}

fn fprime(p: &RadialPoint, u: f64) -> f64 {
    let om = u * (2.0 - u);
    if p.big_a.is_infinite() {
        return f64::INFINITY * (u - 1.0).signum();
    }
    sqrt(p.big_a) * (u - 1.0) / sqrt(om)
}

fn point(spec: &SpacetimeSpec, base: f64, delta: f64) -> RadialPoint {
    radial_point_near(spec, base, delta).expect("radius validated by the caller")
}

fn opts(h0: f64) -> OdeOptions {
    OdeOptions { rtol: 1e-12, atol: 1e-300, h0, max_steps: 2_000_000 }
}

/// Integrate `u` in `δ = r − base` from `δ0` (where `u = u0`) to each output.
fn shoot(spec: &SpacetimeSpec, base: f64, d0: f64, u0: f64, outputs: &[f64]) -> Result<Vec<f64>> {
    let h0 = (outputs[0] - d0).abs().max(1e-300) * 1e-3;
    let sol = integrate(
        |d, y, dy| {
            dy[0] = rhs_u(&point(spec, base, d), y[0]);
        },
        d0,
        &[u0],
        outputs,
        opts(h0),
    )?;
    Ok(sol.into_iter().map(|y| y[0]).collect())
}

/// Solve the radial Jang equation with `f(r_out) = τ_outer`, where `r_out` is the
/// outer radius of `data`. With `blowup_at_horizon` the graph diverges over the
/// outer horizon; otherwise `f′(r_in) = 0` at the inner radius of `data`.
pub fn solve_jang_radial(data: &RadialInitialData, tau_outer: f64, blowup_at_horizon: bool, o: JangOptions) -> Result<JangSolution> {
    let spec = data.spec;
    if spec.is_rotating() {
        return Err(Error::Unsupported("the Jang solver handles spherical data only".into()));
    }
    if o.nodes < 16 {
        return Err(Error::InvalidParameters("Jang grid needs at least 16 nodes".into()));
    }
    let r_out = data.r_max();
    let outer = point(&spec, r_out, 0.0);
    let h_out = outer.mean_curvature();
    let trk = outer.tr_sigma_k();
    if !(h_out > trk.abs()) {
        return Err(Error::Hypothesis("outer boundary is trapped".into()));
    }
    let n = o.nodes;
    if blowup_at_horizon {
        let rh = horizon_locate(&spec).map_err(|_| Error::NoHorizon)?.radius;
        if rh < data.r_min() - 1e-9 * (1.0 + rh) {
            return Err(Error::OutOfRange { r: rh, lo: data.r_min(), hi: r_out });
        }
        let span = r_out - rh;
        let dq = o.xi_span / (n - 1) as f64;
        let q: Vec<f64> = (0..n).map(|j| -o.xi_span + j as f64 * dq).collect();
        let delta: Vec<f64> = q.iter().map(|&x| span * exp(x)).collect();
        let u = shoot(&spec, rh, 0.0, 0.0, &delta)?;
        if u.iter().any(|&x| !(x > 0.0 && x < 2.0)) {
            return Err(Error::NonConvergence("Jang solution left |v| < 1".into()));
        }
        let mut sol = assemble(spec, tau_outer, true, rh, q, dq, delta, u, |d| d);
        // ε-regularized runs
        let mut eps = Vec::with_capacity(o.eps_levels);
        let mut outer_v = Vec::with_capacity(o.eps_levels);
        for j in 0..o.eps_levels {
            let e = o.eps0 * span / (1u64 << j) as f64;
            let ue = shoot(&spec, rh, e, 0.0, &[span])?;
            eps.push(e);
            outer_v.push(ue[0] - 1.0);
        }
        let exact = *sol.u.last().unwrap() - 1.0;
        let k = outer_v.len();
        let (rate, extrapolated) = if k >= 3 {
            let (a, b, c) = (outer_v[k - 3], outer_v[k - 2], outer_v[k - 1]);
            let p = log2_ratio(a - b, b - c);
            let fac = exp(p * core::f64::consts::LN_2) - 1.0;
            (p, if fac.abs() > 1e-12 { c + (c - b) / fac } else { c })
        } else {
            (f64::NAN, *outer_v.last().unwrap_or(&exact))
        };
        sol.extrapolation = Some(BlowupExtrapolation { eps, outer_v, extrapolated, rate, error: (extrapolated - exact).abs() });
        Ok(sol)
    } else {
        let r_in = data.r_min();
        let span = r_out - r_in;
        let dq = span / (n - 1) as f64;
        let q: Vec<f64> = (0..n).map(|j| j as f64 * dq).collect();
        let delta = q.clone();
        let mut u = vec![1.0; n];
        let rest = shoot(&spec, r_in, 0.0, 1.0, &delta[1..])?;
        u[1..].copy_from_slice(&rest);
        Ok(assemble(spec, tau_outer, false, r_in, q, dq, delta, u, |_| 1.0))
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble<D: Fn(f64) -> f64>(
    spec: SpacetimeSpec,
    tau_outer: f64,
    blowup: bool,
    base: f64,
    q: Vec<f64>,
    dq: f64,
    delta: Vec<f64>,
    u: Vec<f64>,
    dr_dq: D,
) -> JangSolution {
    let n = q.len();
    let mut r = vec![0.0; n];
    let mut fp = vec![0.0; n];
    let mut fq = vec![0.0; n];
    let mut rt = vec![0.0; n];
    let mut big_a_bar = vec![0.0; n];
    let mut ds_bar_dq = vec![0.0; n];
    for j in 0..n {
        let p = point(&spec, base, delta[j]);
        r[j] = base + delta[j];
        rt[j] = p.rt;
        let om = u[j] * (2.0 - u[j]);
        fp[j] = fprime(&p, u[j]);
        big_a_bar[j] = p.big_a / om;
        let jac = dr_dq(delta[j]);
        fq[j] = jac * fp[j];
        ds_bar_dq[j] = jac * sqrt(big_a_bar[j]);
    }
    let cum = uniform_cumulative(&fq, dq);
    let top = cum[n - 1];
    let f = cum.iter().map(|c| tau_outer + c - top).collect();
    JangSolution { spec, tau_outer, blowup, base, q, dq, r, delta, u, f, fp, rt, big_a_bar, ds_bar_dq, extrapolation: None }
}

/// Pointwise fields of the Jang deformation in `ḡ`-orthonormal frames.
#[derive(Debug, Clone, PartialEq)]
pub struct JangFields {
    pub v: Vec<f64>,
    /// `dv/ds` along `g`-proper distance.
    pub v_s: Vec<f64>,
    pub r_bar: Vec<f64>,
    /// `X(ν̄)`; `|X|_ḡ = |X(ν̄)|` since X is radial.
    pub x_nu: Vec<f64>,
    pub div_x: Vec<f64>,
    pub k_bar2: Vec<f64>,
    /// `2(μ − J(w))` with `μ = (R + (Tr k)² − |k|²)/2`.
    pub mu_term: Vec<f64>,
    /// `|Ē|²_ḡ` (radial fields, equal to `|E|²_g`).
    pub e_bar2: Vec<f64>,
    pub e2: Vec<f64>,
    pub jang_residual: Vec<f64>,
}

impl JangSolution {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    fn jac(&self, j: usize) -> f64 {
        if self.blowup {
            self.delta[j]
        } else {
            1.0
        }
    }

    pub fn fields(&self) -> JangFields {
        let n = self.len();
        let pts: Vec<RadialPoint> = self.delta.iter().map(|&d| point(&self.spec, self.base, d)).collect();
        let uq = uniform_diff(&self.u, self.dq);
        let mut v = vec![0.0; n];
        let mut v_s = vec![0.0; n];
        let mut p_bar = vec![0.0; n];
        let mut x_nu = vec![0.0; n];
        let mut k_bar2 = vec![0.0; n];
        let mut mu_term = vec![0.0; n];
        let mut e2 = vec![0.0; n];
        let mut jang_residual = vec![0.0; n];
        for j in 0..n {
            let p = &pts[j];
            let om = self.u[j] * (2.0 - self.u[j]);
            let w = 1.0 / sqrt(om);
            v[j] = self.u[j] - 1.0;
            // d/ds = (1/√A) d/dr
            let vr = uq[j] / self.jac(j);
            v_s[j] = if p.big_a.is_infinite() { 0.0 } else { vr / sqrt(p.big_a) };
            p_bar[j] = p.rt_s * sqrt(om);
            x_nu[j] = v[j] * (w * v_s[j] - p.k_nu / w);
            let kn = v_s[j] - p.k_nu * om;
            let kt = p.rt_s / p.rt * v[j] - p.k_t;
            k_bar2[j] = kn * kn + 2.0 * kt * kt;
            let mu = 8.0 * PI * p.mu();
            let js = 8.0 * PI * p.j_radial();
            mu_term[j] = 2.0 * (mu - js * v[j]);
            e2[j] = p.e_nu * p.e_nu + p.b_nu * p.b_nu;
            jang_residual[j] = v_s[j] + p.mean_curvature() * v[j] - p.k_nu * om - p.tr_sigma_k();
        }
        let pq = uniform_diff(&p_bar, self.dq);
        let flux: Vec<f64> = (0..n).map(|j| self.rt[j] * self.rt[j] * x_nu[j]).collect();
        let fluxq = uniform_diff(&flux, self.dq);
        let mut r_bar = vec![0.0; n];
        let mut div_x = vec![0.0; n];
        for j in 0..n {
            let rt = self.rt[j];
            let qs = self.ds_bar_dq[j];
            r_bar[j] = -4.0 * pq[j] / (qs * rt) - 2.0 * p_bar[j] * p_bar[j] / (rt * rt) + 2.0 / (rt * rt);
            div_x[j] = fluxq[j] / (rt * rt * qs);
        }
        JangFields { v, v_s, r_bar, x_nu, div_x, k_bar2, mu_term, e_bar2: e2.clone(), e2, jang_residual }
    }

    /// `ḡ`-length of the grid from the inner node to `r_out`.
    pub fn bar_length(&self) -> f64 {
        let c = uniform_cumulative(&self.ds_bar_dq, self.dq);
        c[self.len() - 1]
    }

    /// Running `ḡ`-distance `s̄_j` from the inner node.
    pub fn bar_distance(&self) -> Vec<f64> {
        uniform_cumulative(&self.ds_bar_dq, self.dq)
    }

    /// `ds̄/dξ` at the inner node: the length scale of the cylindrical end.
    pub fn cylinder_scale(&self) -> Option<f64> {
        if self.blowup {
            Some(self.ds_bar_dq[0])
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JangIdentities {
    /// Sup of `R̄ − [2(μ − J(w)) + |h − k|² + 2|X|² − 2 div X]` over nodes.
    pub scalar_residual: f64,
    /// Min of `R̄ − 2|X|² + 2 div X − 2|Ē|² − |k̄|²`.
    pub energy_slack: f64,
    /// Sup of the Jang equation residual.
    pub jang_residual: f64,
    /// Min of `|E|_g − |Ē|_ḡ`.
    pub field_slack: f64,
}

/// Check the Jang scalar curvature identity and the energy inequality.
/// `skip` nodes at each end are excluded to avoid one-sided stencils.
pub fn jang_identities(sol: &JangSolution, skip: usize) -> JangIdentities {
    let fl = sol.fields();
    let n = sol.len();
    let mut res = 0.0f64;
    let mut slack = f64::INFINITY;
    let mut jres = 0.0f64;
    let mut fslack = f64::INFINITY;
    for j in skip..n.saturating_sub(skip) {
        let rhs = fl.mu_term[j] + fl.k_bar2[j] + 2.0 * fl.x_nu[j] * fl.x_nu[j] - 2.0 * fl.div_x[j];
        let scale = 1.0 + fl.r_bar[j].abs() + rhs.abs();
        res = res.max((fl.r_bar[j] - rhs).abs() / scale);
        let lhs = fl.r_bar[j] - 2.0 * fl.x_nu[j] * fl.x_nu[j] + 2.0 * fl.div_x[j];
        slack = slack.min(lhs - 2.0 * fl.e_bar2[j] - fl.k_bar2[j]);
        jres = jres.max(fl.jang_residual[j].abs());
        fslack = fslack.min(sqrt(fl.e2[j]) - sqrt(fl.e_bar2[j]));
    }
    JangIdentities { scalar_residual: res, energy_slack: slack, jang_residual: jres, field_slack: fslack }
}

/// Total charge of the deformed field through the level set at `r`, using
/// `Ē_i = (E_i + f_i f^j E_j)/√(1+|∇f|²)` and the `ḡ`-unit normal.
pub fn deformed_charge(sol: &JangSolution, r: f64) -> Result<f64> {
    let lo = sol.r[0];
    let hi = *sol.r.last().unwrap();
    if r < lo || r > hi {
        return Err(Error::OutOfRange { r, lo, hi });
    }
    let j = sol.r.iter().position(|&x| x >= r).unwrap_or(sol.len() - 1).max(1);
    let t = (r - sol.r[j - 1]) / (sol.r[j] - sol.r[j - 1]);
    let u = sol.u[j - 1] + t * (sol.u[j] - sol.u[j - 1]);
    let p = point(&sol.spec, sol.base, r - sol.base);
    let om = u * (2.0 - u);
    let w = 1.0 / sqrt(om);
    let f_s = (u - 1.0) * w;
    // orthonormal radial components in g
    let e_s = p.e_nu;
    let e_bar_s = (e_s + f_s * f_s * e_s) / w;
    let nu_bar_s = w - f_s * f_s / w;
    Ok(e_bar_s * nu_bar_s * p.rt * p.rt)
}

/// Total charge `(1/4π)∮ E(ν) dA` of the undeformed field at `r`.
pub fn charge_at(spec: &SpacetimeSpec, r: f64) -> Result<f64> {
    let p = radial_point_near(spec, r, 0.0)?;
    Ok(p.e_nu * p.rt * p.rt)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JangBoundary {
    pub h_bar: f64,
    pub x_nu: f64,
    /// `H̄ − X(ν̄)`.
    pub h_plus: f64,
    pub hvec: f64,
    /// `H̄ − X(ν̄) − |H⃗|`.
    pub slack: f64,
    /// `sinh ψ = ν(f)/√(1+|∇f|²)` on the boundary.
    pub psi: f64,
}

/// Boundary quantities at `r_out`; errors if `H̄ − X(ν̄) < |H⃗|` beyond tolerance.
pub fn jang_boundary(sol: &JangSolution) -> Result<JangBoundary> {
    let n = sol.len();
    let p = point(&sol.spec, sol.base, sol.delta[n - 1]);
    let u = sol.u[n - 1];
    let v = u - 1.0;
    let om = u * (2.0 - u);
    let w = 1.0 / sqrt(om);
    let h = p.mean_curvature();
    let trk = p.tr_sigma_k();
    // X(ν̄) from the Jang equation at the boundary
    let v_s = -h * v + p.k_nu * om + trk;
    let x_nu = v * (w * v_s - p.k_nu / w);
    let h_bar = h / w;
    let h_plus = h_bar - x_nu;
    let hv2 = h * h - trk * trk;
    if hv2 < 0.0 {
        return Err(Error::MeanCurvature("timelike mean curvature vector".into()));
    }
    let hvec = sqrt(hv2);
    let slack = h_plus - hvec;
    if slack < -1e-10 * (1.0 + hvec) {
        return Err(Error::NonConvergence("boundary inequality H̄ − X(ν̄) ≥ |H⃗| violated".into()));
    }
    Ok(JangBoundary { h_bar, x_nu, h_plus, hvec, slack, psi: libm::asinh(v) })
}

/// Radius where `ξ` takes the value `x` for a blow-up solution.
pub fn radius_at_xi(sol: &JangSolution, x: f64) -> f64 {
    let span = *sol.r.last().unwrap() - sol.base;
    sol.base + span * exp(x)
}

/// `ξ` of the radius `r` for a blow-up solution.
pub fn xi_of_radius(sol: &JangSolution, r: f64) -> f64 {
    let span = *sol.r.last().unwrap() - sol.base;
    ln((r - sol.base) / span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slices::{build_radial_data, Slicing};

    fn pg(m: f64, r_out: f64) -> RadialInitialData {
        build_radial_data(SpacetimeSpec::schwarzschild(m).with_slicing(Slicing::PainleveGullstrand), 0.5, r_out, 64).unwrap()
    }

    #[test]
    fn time_symmetric_data_gives_constant_graph() {
        let d = build_radial_data(SpacetimeSpec::schwarzschild(1.0), 2.5, 10.0, 64).unwrap();
        for tau in [0.0, 0.7] {
            let s = solve_jang_radial(&d, tau, false, JangOptions::default()).unwrap();
            assert!(s.f.iter().all(|f| (f - tau).abs() < 1e-14));
            let id = jang_identities(&s, 2);
            assert!(id.scalar_residual < 1e-8 && id.energy_slack.abs() < 1e-10, "{:?}", id);
            let b = jang_boundary(&s).unwrap();
            assert!((b.h_bar - 0.2 * sqrt(0.8)).abs() < 1e-14 && b.x_nu == 0.0 && b.slack.abs() < 1e-14);
        }
    }

    #[test]
    fn static_schwarzschild_blowup_is_closed_form() {
        // k = 0: r̃² v is constant, v = −4m²/r²
        let d = build_radial_data(SpacetimeSpec::schwarzschild(1.0), 2.0, 8.0, 64).unwrap();
        let s = solve_jang_radial(&d, 0.0, true, JangOptions::default()).unwrap();
        for j in (0..s.len()).step_by(97) {
            let v = -4.0 / (s.r[j] * s.r[j]);
            assert!(((s.u[j] - 1.0) - v).abs() < 1e-11 * (1.0 + (1.0 + v).abs().recip().min(1e6)));
        }
        // cross sections approach the horizon area and the end is cylindrical
        assert!((4.0 * PI * s.rt[0] * s.rt[0] - 16.0 * PI).abs() < 1e-6);
        assert!((s.cylinder_scale().unwrap() - 1.0).abs() < 1e-6);
        let fl = s.fields();
        assert!((fl.x_nu[0].abs() - 0.5).abs() < 1e-6);
        let id = jang_identities(&s, 2);
        assert!(id.scalar_residual < 1e-7, "{:?}", id);
        assert!(id.energy_slack > -1e-7);
        let ex = s.extrapolation.as_ref().unwrap();
        assert!(ex.error < 1e-4 && (ex.rate - 1.0).abs() < 0.1, "{:?}", ex);
    }

    #[test]
    fn painleve_gullstrand_identities() {
        let s = solve_jang_radial(&pg(1.0, 10.0), 0.0, true, JangOptions::default()).unwrap();
        let id = jang_identities(&s, 2);
        assert!(id.scalar_residual < 1e-6, "{:?}", id);
        assert!(id.jang_residual < 1e-6, "{:?}", id);
        assert!(id.energy_slack > -1e-6);
        let b = jang_boundary(&s).unwrap();
        assert!(b.slack > 0.0);
        assert!((deformed_charge(&s, 5.0).unwrap()).abs() == 0.0);
    }

    #[test]
    fn painleve_gullstrand_boundary_near_horizon() {
        let mut last = JangBoundary { h_bar: 0.0, x_nu: 0.0, h_plus: 0.0, hvec: 0.0, slack: 0.0, psi: 0.0 };
        for r in [4.0, 3.0, 2.4, 2.1, 2.01, 2.0001] {
            let s = solve_jang_radial(&pg(1.0, r), 0.0, true, JangOptions { nodes: 801, ..Default::default() }).unwrap();
            last = jang_boundary(&s).unwrap();
            assert!(last.slack >= 0.0, "{r} {:?}", last);
        }
        // |H⃗| → 0 while H̄ − X(ν̄) → √(dθ₊/ds) = 1/(2m) on the horizon
        assert!(last.hvec < 1e-2 && (last.h_plus - 0.5).abs() < 1e-3, "{:?}", last);
    }

    #[test]
    fn reissner_nordstrom_charge_and_slack() {
        let spec = SpacetimeSpec::reissner_nordstrom(1.0, 0.6);
        let d = build_radial_data(spec, 1.8, 8.0, 64).unwrap();
        let s = solve_jang_radial(&d, 0.0, false, JangOptions::default()).unwrap();
        assert!((deformed_charge(&s, 4.0).unwrap() - 0.6).abs() < 1e-12);
        let id = jang_identities(&s, 2);
        assert!(id.energy_slack.abs() < 1e-6 && id.field_slack.abs() < 1e-12);
        let b = solve_jang_radial(&d, 0.0, true, JangOptions::default()).unwrap();
        for r in [1.9, 3.0, 7.5] {
            assert!((deformed_charge(&b, r).unwrap() - charge_at(&spec, r).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_trapped_or_rotating() {
        let d = pg(1.0, 1.5);
        assert!(matches!(solve_jang_radial(&d, 0.0, false, JangOptions::default()), Err(Error::Hypothesis(_))));
        let k = build_radial_data(SpacetimeSpec::kerr(1.0, 0.5), 2.0, 5.0, 32).unwrap();
        assert!(solve_jang_radial(&k, 0.0, true, JangOptions::default()).is_err());
        let flat = build_radial_data(SpacetimeSpec::minkowski(), 1.0, 5.0, 32).unwrap();
        assert!(matches!(solve_jang_radial(&flat, 0.0, true, JangOptions::default()), Err(Error::NoHorizon)));
    }
}
