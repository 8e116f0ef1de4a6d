//! Brown-York, Liu-Yau and Wang-Yau quasi-local masses, the Chen-Wang-Yau
//! angular momentum and the masses measured against a Schwarzschild reference.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::{embed_rotational, hat_metric, convexity_check, EmbeddedProfile, Reference, TimeFunctionData};
use crate::error::{Error, Result};
use crate::math::{asinh, cos, acos, max_abs, sqrt, PI};
use crate::optimize::nelder_mead;
use crate::surface::AxisymSurfaceData;

const HVEC_FLOOR: f64 = 1e-10;

fn check_profile(s: &AxisymSurfaceData, prof: &EmbeddedProfile) -> Result<()> {
    if prof.h0.len() != s.len() {
        return Err(Error::InvalidParameters("profile and surface grids differ".into()));
    }
    Ok(())
}

/// `(1/8π)∮(H₀ − H) dA`.
pub fn brown_york(s: &AxisymSurfaceData, prof: &EmbeddedProfile) -> Result<f64> {
    check_profile(s, prof)?;
    if s.h.iter().any(|&h| !(h > 0.0)) {
        return Err(Error::MeanCurvature("surface is not mean convex".into()));
    }
    let f: Vec<f64> = (0..s.len()).map(|i| prof.h0[i] - s.h[i]).collect();
    Ok(s.integrate(&f) / (8.0 * PI))
}

/// `(1/8π)∮(H₀ − |H⃗|) dA`.
pub fn liu_yau(s: &AxisymSurfaceData, prof: &EmbeddedProfile) -> Result<f64> {
    check_profile(s, prof)?;
    let hv = s.hvec_norm()?;
    let f: Vec<f64> = (0..s.len()).map(|i| prof.h0[i] - hv[i]).collect();
    Ok(s.integrate(&f) / (8.0 * PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StaticKind {
    BrownYork,
    LiuYau,
}

/// `(1/8π)∮ V (H_s − H) dA` or with `|H⃗|`, for an embedding into a
/// Schwarzschild slice with static potential `V`.
pub fn static_mass(s: &AxisymSurfaceData, prof: &EmbeddedProfile, kind: StaticKind) -> Result<f64> {
    check_profile(s, prof)?;
    let phys = match kind {
        StaticKind::BrownYork => {
            if s.tr_k.iter().any(|t| *t != 0.0) || s.p_theta.iter().chain(&s.p_phi).any(|p| *p != 0.0) {
                return Err(Error::Hypothesis("static Brown-York mass needs time-symmetric data".into()));
            }
            s.h.clone()
        }
        StaticKind::LiuYau => s.hvec_norm()?,
    };
    let f: Vec<f64> = (0..s.len()).map(|i| prof.v[i] * (prof.h0[i] - phys[i])).collect();
    Ok(s.integrate(&f) / (8.0 * PI))
}

/// Generalized mean curvature `√(1+|∇τ|²)⟨H⃗, e₃⟩ − α_{e₃}(∇τ)` in the normal
/// frame `e₃ = cosh ψ ν + sinh ψ n`.
pub fn generalized_mean_curvature(s: &AxisymSurfaceData, tau: &TimeFunctionData, psi: &[f64]) -> Vec<f64> {
    let tt = tau.tau_theta(s);
    let dpsi = s.d_theta(psi);
    (0..s.len())
        .map(|i| {
            let w = sqrt(1.0 + tau.grad2[i]);
            let (c, sh) = (libm::cosh(psi[i]), libm::sinh(psi[i]));
            let alpha_nu = -s.p_theta[i];
            w * (s.h[i] * c + s.tr_k[i] * sh) - (alpha_nu - dpsi[i]) * tt[i] / (s.a[i] * s.a[i])
        })
        .collect()
}

/// Evaluation of the Wang-Yau energy for one time function.
#[derive(Debug, Clone, PartialEq)]
pub struct WangYauEvaluation {
    pub tau: TimeFunctionData,
    pub h0_frak: Vec<f64>,
    pub h_frak: Vec<f64>,
    /// Energy from `∮(𝔥₀ − 𝔥)`.
    pub energy: f64,
    /// Energy from `∮(ϱ + ⟨𝔧, ∇τ⟩)`.
    pub energy_alt: f64,
    pub rho: Vec<f64>,
    /// `𝔧(∂θ)` and `𝔧(∂φ)`, with `𝔧 = ϱ∇τ − ∇ sinh⁻¹(ϱΔτ/|H₀||H|) − α_{H₀} + α_H`.
    pub j_theta: Vec<f64>,
    pub j_phi: Vec<f64>,
    pub div_j: Vec<f64>,
    /// `|H⃗₀|` of the reference image in Minkowski space.
    pub h0_norm: Vec<f64>,
    /// Boost angle of the frame `(ē₃, ē₄)` relative to `(ν, n)`.
    pub frame_angle: Vec<f64>,
}

impl WangYauEvaluation {
    /// `(1/8π)∮ϱ dA`.
    pub fn rho_mass(&self, s: &AxisymSurfaceData) -> f64 {
        s.integrate(&self.rho) / (8.0 * PI)
    }

    pub fn cross_form_gap(&self) -> f64 {
        (self.energy - self.energy_alt).abs()
    }
}

fn chi_of(h: f64, t: f64) -> f64 {
    libm::atanh(-t / h)
}

/// Wang-Yau energy of `s` against the Minkowski embedding with time function
/// `τ`, given the flat profile of `σ̂ = σ + dτ²`.
pub fn wang_yau_energy(s: &AxisymSurfaceData, tau: &TimeFunctionData, prof_hat: &EmbeddedProfile) -> Result<WangYauEvaluation> {
    check_profile(s, prof_hat)?;
    if prof_hat.reference != Reference::Flat {
        return Err(Error::InvalidParameters("Wang-Yau energy needs the flat profile of the hat metric".into()));
    }
    let g = &s.grid;
    let n = s.len();
    let conv = convexity_check(s, tau);
    if !conv.ok {
        return Err(Error::Hypothesis(format!("convexity condition fails at θ = {:.4}", conv.argmin_theta)));
    }
    if (0..n).any(|i| !(s.h[i] > s.tr_k[i].abs())) {
        return Err(Error::Hypothesis("surface is not untrapped".into()));
    }
    let hv = s.hvec_norm()?;
    if hv.iter().any(|&v| v < HVEC_FLOOR) {
        return Err(Error::MeanCurvature("|H⃗| below tolerance".into()));
    }
    let tt = tau.tau_theta(s);
    let bb = s.big_b();
    let ahat = hat_metric(s, tau).a;

    // Laplacian of the reference coordinates ρ̂ = b, ẑ on (Σ, σ)
    let beta = s.b_prime();
    let gfun: Vec<f64> = (0..n).map(|i| bb[i] * beta[i] / s.a[i]).collect();
    let gx = g.diff(&gfun);
    let zx = g.diff(&prof_hat.z);
    let zflux: Vec<f64> = (0..n).map(|i| (1.0 - g.x[i] * g.x[i]) * bb[i] / s.a[i] * zx[i]).collect();
    let zfx = g.diff(&zflux);

    let mut h0_norm = vec![0.0; n];
    let mut chi0 = vec![0.0; n];
    let mut alpha_e3 = vec![0.0; n];
    for i in 0..n {
        let x = g.x[i];
        let y = 1.0 - x * x;
        let lap_rho = ((x * gfun[i] - y * gx[i]) / s.a[i] - 1.0) / (g.s[i] * bb[i]);
        let lap_z = zfx[i] / (s.a[i] * bb[i]);
        let lap_t = tau.lap[i];
        let h0sq = lap_rho * lap_rho + lap_z * lap_z - lap_t * lap_t;
        if !(h0sq > 0.0) {
            return Err(Error::MeanCurvature(format!("reference mean curvature vector not spacelike at θ = {:.4}", g.theta[i])));
        }
        h0_norm[i] = sqrt(h0sq);
        // frame e₃′ = (0, N̂), e₄′ = (1, ∇̂τ)/√(1 − |∇̂τ|²)
        let rp = beta[i];
        let zp = -g.s[i] * zx[i];
        let ah = ahat[i];
        let nr = -zp / ah;
        let nz = rp / ah;
        let h3 = lap_rho * nr + lap_z * nz;
        let gam = ah / s.a[i];
        let grad_dot = tt[i] / (ah * ah) * (lap_rho * rp + lap_z * zp);
        let h4 = gam * (-lap_t + grad_dot);
        if !(h3 < 0.0) {
            return Err(Error::MeanCurvature(format!("reference surface not outward mean convex at θ = {:.4}", g.theta[i])));
        }
        // −H⃗₀ = −h3 e₃′ + h4 e₄′
        chi0[i] = asinh(h4 / h0_norm[i]);
        alpha_e3[i] = prof_hat.kappa1[i] * tt[i] * gam;
    }
    let dchi0 = s.d_theta(&chi0);
    let alpha_h0: Vec<f64> = (0..n).map(|i| alpha_e3[i] - dchi0[i]).collect();

    let mut h0_frak = vec![0.0; n];
    let mut h_frak = vec![0.0; n];
    let mut rho = vec![0.0; n];
    let mut theta_b = vec![0.0; n];
    let mut sh_arg = vec![0.0; n];
    let mut chi = vec![0.0; n];
    for i in 0..n {
        let w2 = 1.0 + tau.grad2[i];
        let w = sqrt(w2);
        let lt = tau.lap[i];
        theta_b[i] = asinh(-lt / (hv[i] * w));
        let r0 = sqrt(h0_norm[i] * h0_norm[i] + lt * lt / w2);
        let r1 = sqrt(hv[i] * hv[i] + lt * lt / w2);
        rho[i] = (r0 - r1) / w;
        sh_arg[i] = asinh(rho[i] * lt / (h0_norm[i] * hv[i]));
        chi[i] = chi_of(s.h[i], s.tr_k[i]);
        h0_frak[i] = w * prof_hat.h0[i];
    }
    let dth = s.d_theta(&theta_b);
    let dsh = s.d_theta(&sh_arg);
    let mut j_theta = vec![0.0; n];
    let mut j_phi = vec![0.0; n];
    let mut frame_angle = vec![0.0; n];
    let mut alt = vec![0.0; n];
    for i in 0..n {
        let w2 = 1.0 + tau.grad2[i];
        let lt = tau.lap[i];
        let a2 = s.a[i] * s.a[i];
        let alpha_h = s.alpha_theta[i];
        h_frak[i] = sqrt(w2 * hv[i] * hv[i] + lt * lt) - (dth[i] + alpha_h) * tt[i] / a2;
        j_theta[i] = rho[i] * tt[i] - dsh[i] - alpha_h0[i] + alpha_h;
        // α_H(∂φ) = −p_φ; the reference term vanishes by axisymmetry
        j_phi[i] = -s.p_phi[i];
        alt[i] = rho[i] + j_theta[i] * tt[i] / a2;
        frame_angle[i] = chi[i] - theta_b[i];
    }
    let diff: Vec<f64> = (0..n).map(|i| h0_frak[i] - h_frak[i]).collect();
    let energy = s.integrate(&diff) / (8.0 * PI);
    let energy_alt = s.integrate(&alt) / (8.0 * PI);

    // div 𝔧 = −(1/(AB)) ∂ₓ((1 − x²) B J / A) with 𝔧(∂θ) = sin θ · J
    let flux: Vec<f64> = (0..n).map(|i| -g.s[i] * bb[i] * j_theta[i] / s.a[i]).collect();
    let fx = g.diff(&flux);
    let div_j: Vec<f64> = (0..n).map(|i| -fx[i] / (s.a[i] * bb[i])).collect();

    Ok(WangYauEvaluation { tau: tau.clone(), h0_frak, h_frak, energy, energy_alt, rho, j_theta, j_phi, div_j, h0_norm, frame_angle })
}

/// Embed `σ̂` and evaluate the Wang-Yau energy.
pub fn wang_yau_energy_for(s: &AxisymSurfaceData, tau: &TimeFunctionData) -> Result<WangYauEvaluation> {
    let prof = embed_rotational(&hat_metric(s, tau))?;
    wang_yau_energy(s, tau, &prof)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalityResidual {
    /// `max |div 𝔧|`.
    pub sup: f64,
    /// `∮ div 𝔧 dA`, zero up to quadrature error.
    pub total: f64,
}

pub fn optimal_embedding_residual(ev: &WangYauEvaluation, s: &AxisymSurfaceData) -> OptimalityResidual {
    OptimalityResidual { sup: max_abs(&ev.div_j), total: s.integrate(&ev.div_j) }
}

/// `(1/8π)∮(ϱ⟨η, T₀⟩ + 𝔧(ηᵀ)) dA` for an axisymmetric reference, where
/// `⟨η, T₀⟩ = 0`. The sign is fixed so that the value equals `(1/8π)∮ p(η)`
/// at `τ = 0`.
pub fn chen_wang_yau_j(ev: &WangYauEvaluation, s: &AxisymSurfaceData) -> f64 {
    -s.integrate(&ev.j_phi) / (8.0 * PI)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WangYauMass {
    /// `(1/8π)∮ϱ dA` at the minimizer: an upper estimate for the mass.
    pub mass: f64,
    /// Smallest energy found over the family.
    pub energy: f64,
    /// Coefficients of `τ = Σ c_k cos(kθ)`.
    pub coefficients: Vec<f64>,
    pub residual: OptimalityResidual,
    pub evaluations: usize,
}

/// Time functions `τ = Σ_{k=1}^{K} c_k cos(kθ)` on the surface grid.
pub fn cosine_family(s: &AxisymSurfaceData, c: &[f64]) -> TimeFunctionData {
    TimeFunctionData::from_fn(s, |x| {
        let th = acos(x.clamp(-1.0, 1.0));
        c.iter().enumerate().map(|(k, ck)| ck * cos((k + 1) as f64 * th)).sum()
    })
}

/// Minimize the Wang-Yau energy over the cosine family with `|c_k| ≤ bound`.
pub fn wang_yau_mass(s: &AxisymSurfaceData, terms: usize, bound: f64) -> Result<WangYauMass> {
    let energy = |c: &[f64]| -> f64 {
        match wang_yau_energy_for(s, &cosine_family(s, c)) {
            Ok(ev) => ev.energy,
            Err(_) => f64::INFINITY,
        }
    };
    let x0 = vec![0.0; terms];
    if !energy(&x0).is_finite() {
        return Err(Error::Hypothesis("τ = 0 is not admissible".into()));
    }
    let scale = s.areal_radius();
    let min = nelder_mead(energy, &x0, 0.05 * bound.min(scale), bound, 1e-12, 400 * (terms + 1));
    let ev = wang_yau_energy_for(s, &cosine_family(s, &min.x))?;
    Ok(WangYauMass {
        mass: ev.rho_mass(s),
        energy: ev.energy,
        coefficients: min.x,
        residual: optimal_embedding_residual(&ev, s),
        evaluations: min.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::embed_static_schwarzschild;
    use crate::quad::PolarGrid;
    use crate::slices::{surface_of, SpacetimeSpec, Slicing};
    use alloc::sync::Arc;

    fn grid() -> Arc<PolarGrid> {
        Arc::new(PolarGrid::new(40))
    }

    fn flat(s: &AxisymSurfaceData) -> EmbeddedProfile {
        embed_rotational(s).unwrap()
    }

    #[test]
    fn brown_york_closed_forms() {
        let s = AxisymSurfaceData::round(grid(), 1.0);
        assert!(brown_york(&s, &flat(&s)).unwrap().abs() < 1e-13);
        let rn = surface_of(&SpacetimeSpec::reissner_nordstrom(1.0, 0.6), 2.0).unwrap();
        assert!((brown_york(&rn, &flat(&rn)).unwrap() - 1.4).abs() < 1e-12);
        let sc = surface_of(&SpacetimeSpec::schwarzschild(1.0), 4.0).unwrap();
        assert!((brown_york(&sc, &flat(&sc)).unwrap() - 4.0 * (1.0 - sqrt(0.5))).abs() < 1e-12);
        let mut bad = s.clone();
        bad.h[3] = -0.1;
        assert!(brown_york(&bad, &flat(&s)).is_err());
    }

    #[test]
    fn brown_york_monotone_on_rn() {
        let spec = SpacetimeSpec::reissner_nordstrom(1.0, 0.6);
        let mut prev = f64::INFINITY;
        for r in [1.9, 2.0, 3.0, 5.0, 10.0, 40.0, 400.0] {
            let s = surface_of(&spec, r).unwrap();
            let m = brown_york(&s, &flat(&s)).unwrap();
            assert!(m <= prev);
            prev = m;
        }
        assert!((prev - 1.0).abs() < 2e-3);
    }

    #[test]
    fn liu_yau_slicing_independent() {
        let st = surface_of(&SpacetimeSpec::schwarzschild(1.0), 4.0).unwrap();
        let pg = surface_of(&SpacetimeSpec::schwarzschild(1.0).with_slicing(Slicing::PainleveGullstrand), 4.0).unwrap();
        assert!(pg.tr_k.iter().all(|t| t.abs() > 0.1));
        let a = brown_york(&st, &flat(&st)).unwrap();
        let b = liu_yau(&pg, &flat(&pg)).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!((liu_yau(&st, &flat(&st)).unwrap() - a).abs() < 1e-14);
        let mut bad = pg.clone();
        bad.tr_k.iter_mut().for_each(|t| *t = 1.0);
        assert!(matches!(liu_yau(&bad, &flat(&pg)), Err(Error::MeanCurvature(_))));
    }

    #[test]
    fn wang_yau_reduces_to_liu_yau() {
        for s in [
            surface_of(&SpacetimeSpec::schwarzschild(1.0).with_slicing(Slicing::PainleveGullstrand), 4.0).unwrap(),
            surface_of(&SpacetimeSpec::kerr(1.0, 0.6), 5.0).unwrap(),
        ] {
            let ev = wang_yau_energy_for(&s, &TimeFunctionData::zero(&s)).unwrap();
            let ly = liu_yau(&s, &flat(&s)).unwrap();
            assert!((ev.energy - ly).abs() < 1e-10);
            assert!((ev.energy_alt - ly).abs() < 1e-10);
        }
    }

    #[test]
    fn minkowski_sphere_boosted_observer() {
        let s = AxisymSurfaceData::round(grid(), 1.0);
        for eps in [0.02, 0.1, 0.3] {
            let tau = TimeFunctionData::from_fn(&s, |x| eps * x);
            let ev = wang_yau_energy_for(&s, &tau).unwrap();
            assert!(ev.energy.abs() < 1e-6, "{eps} {}", ev.energy);
            assert!(ev.cross_form_gap() < 1e-8, "{eps} {}", ev.cross_form_gap());
        }
    }

    #[test]
    fn schwarzschild_forms_agree() {
        let s = surface_of(&SpacetimeSpec::schwarzschild(1.0), 4.0).unwrap();
        let tau = TimeFunctionData::from_fn(&s, |x| 0.05 * x);
        let ev = wang_yau_energy_for(&s, &tau).unwrap();
        assert!(ev.cross_form_gap() < 1e-8, "{}", ev.cross_form_gap());
        let res = optimal_embedding_residual(&ev, &s);
        assert!(res.total.abs() < 1e-10);
        assert!(ev.energy >= 4.0 * (1.0 - sqrt(0.5)) - 1e-10);
    }

    #[test]
    fn gauge_frame_minimizes_hamiltonian() {
        let s = surface_of(&SpacetimeSpec::schwarzschild(1.0).with_slicing(Slicing::PainleveGullstrand), 4.0).unwrap();
        let tau = TimeFunctionData::from_fn(&s, |x| 0.2 * x + 0.1 * x * x);
        let ev = wang_yau_energy_for(&s, &tau).unwrap();
        let best = generalized_mean_curvature(&s, &tau, &ev.frame_angle);
        assert!((0..s.len()).all(|i| (best[i] - ev.h_frak[i]).abs() < 1e-10));
        let base = s.integrate(&best);
        let mut seed = 7u64;
        for _ in 0..20 {
            let mut psi = ev.frame_angle.clone();
            let c: Vec<f64> = (0..3).map(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 0.6
            }).collect();
            for i in 0..s.len() {
                let x = s.grid.x[i];
                psi[i] += c[0] + c[1] * x + c[2] * x * x;
            }
            assert!(s.integrate(&generalized_mean_curvature(&s, &tau, &psi)) >= base);
        }
    }

    #[test]
    fn time_symmetric_round_minimizer_is_zero() {
        let s = surface_of(&SpacetimeSpec::schwarzschild(1.0), 4.0).unwrap();
        let m = wang_yau_mass(&s, 4, 0.5).unwrap();
        let ly = 4.0 * (1.0 - sqrt(0.5));
        assert!((m.energy - ly).abs() < 1e-8, "{:?}", m);
        assert!((m.mass - ly).abs() < 1e-6);
        assert!(m.coefficients.iter().all(|c| c.abs() < 1e-3));
        let flat = AxisymSurfaceData::round(grid(), 2.0);
        let mz = wang_yau_mass(&flat, 2, 0.5).unwrap();
        assert!(mz.mass.abs() < 1e-10 && mz.energy.abs() < 1e-10);
    }

    #[test]
    fn chen_wang_yau_matches_kerr() {
        let s = surface_of(&SpacetimeSpec::kerr(1.0, 0.6), 5.0).unwrap();
        let ev = wang_yau_energy_for(&s, &TimeFunctionData::zero(&s)).unwrap();
        assert!((chen_wang_yau_j(&ev, &s) - 0.6).abs() < 1e-6);
        let st = surface_of(&SpacetimeSpec::schwarzschild(1.0), 4.0).unwrap();
        let ev = wang_yau_energy_for(&st, &TimeFunctionData::zero(&st)).unwrap();
        assert_eq!(chen_wang_yau_j(&ev, &st), 0.0);
    }

    #[test]
    fn static_masses() {
        let s = surface_of(&SpacetimeSpec::schwarzschild(1.0), 4.0).unwrap();
        let own = embed_static_schwarzschild(&s, 1.0).unwrap();
        assert!(static_mass(&s, &own, StaticKind::BrownYork).unwrap().abs() < 1e-12);
        let zero = embed_static_schwarzschild(&s, 0.0).unwrap();
        let by = brown_york(&s, &flat(&s)).unwrap();
        assert!((static_mass(&s, &zero, StaticKind::BrownYork).unwrap() - by).abs() < 1e-14);
        assert!((static_mass(&s, &zero, StaticKind::LiuYau).unwrap() - by).abs() < 1e-14);
        // reference mass 1/2: V(H_m − H) with closed forms on the round sphere
        let half = embed_static_schwarzschild(&s, 0.5).unwrap();
        let v = sqrt(1.0 - 0.25);
        let expect = 64.0 * PI * v * (0.5 * v - 0.5 * sqrt(0.5)) / (8.0 * PI);
        let got = static_mass(&s, &half, StaticKind::BrownYork).unwrap();
        assert!((got - expect).abs() < 1e-12, "{got} {expect} {:?}", &half.h0[..3]);
        let fine = surface_on_fine(&s);
        let half_fine = embed_static_schwarzschild(&fine, 0.5).unwrap();
        assert!((static_mass(&fine, &half_fine, StaticKind::BrownYork).unwrap() - expect).abs() < 1e-12);
        let pg = surface_of(&SpacetimeSpec::schwarzschild(1.0).with_slicing(Slicing::PainleveGullstrand), 4.0).unwrap();
        assert!(static_mass(&pg, &half, StaticKind::BrownYork).is_err());
        assert!((static_mass(&pg, &half, StaticKind::LiuYau).unwrap() - expect).abs() < 1e-12);
    }

    fn surface_on_fine(s: &AxisymSurfaceData) -> AxisymSurfaceData {
        crate::slices::surface_on_grid(&SpacetimeSpec::schwarzschild(1.0), s.areal_radius(), Arc::new(PolarGrid::new(4 * s.len()))).unwrap()
    }

    #[test]
    fn minkowski_sphere_all_masses_vanish() {
        let s = AxisymSurfaceData::round(grid(), 3.0);
        let p = flat(&s);
        assert!(brown_york(&s, &p).unwrap().abs() < 1e-12);
        assert!(liu_yau(&s, &p).unwrap().abs() < 1e-12);
        let ev = wang_yau_energy_for(&s, &TimeFunctionData::zero(&s)).unwrap();
        assert!(ev.energy.abs() < 1e-12 && ev.rho_mass(&s).abs() < 1e-12);
        assert!(optimal_embedding_residual(&ev, &s).sup < 1e-12);
    }
}
