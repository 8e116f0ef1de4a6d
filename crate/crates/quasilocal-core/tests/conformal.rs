use std::sync::Arc;

use quasilocal_core::conformal::*;
use quasilocal_core::embedding::embed_rotational;
use quasilocal_core::flows::{shi_tam_flow, ShiTamOptions};
use quasilocal_core::jang::{jang_boundary, solve_jang_radial, JangOptions};
use quasilocal_core::quad::PolarGrid;
use quasilocal_core::slices::{build_radial_data, SpacetimeSpec};
use quasilocal_core::surface::AxisymSurfaceData;

const PI: f64 = std::f64::consts::PI;

fn composite(spec: SpacetimeSpec, r_out: f64, nodes: usize) -> CompositeRadialManifold {
    let rh = spec.outer_horizon().unwrap();
    let data = build_radial_data(spec, spec.coordinate_floor().max(0.5 * rh), r_out, 400).unwrap();
    let jang = solve_jang_radial(&data, 0.0, true, JangOptions { nodes, ..Default::default() }).unwrap();
    let b = jang_boundary(&jang).unwrap();
    let r0 = *jang.rt.last().unwrap();
    let s = AxisymSurfaceData::round(Arc::new(PolarGrid::new(8)), r0);
    let prof = embed_rotational(&s).unwrap();
    // u₀ = H₀/(H̄ − X(ν̄)) closes the corner jump
    let u0 = vec![(2.0 / r0) / b.h_plus; 8];
    let st = shi_tam_flow(&prof, &u0, 1e3 * r0, ShiTamOptions::default()).unwrap();
    compose(&jang, &st).unwrap()
}

#[test]
fn cylinder_gamma_and_energy_identity() {
    for &len in &[1.0, 2.0, 4.0] {
        let bvp = RadialBvp::cylinder(len, 1.0, 201);
        let sol = solve_conformal(&bvp).unwrap();
        let gamma = gamma_constant(&sol, &[4.0 * PI]).unwrap();
        assert!((gamma - 1.0 / len).abs() < 1e-6, "L = {len}: γ = {gamma}");
        let target = -2.0 * PI * sol.a_coef;
        assert!((sol.p_value - target).abs() < 1e-6 * target.abs());
        assert!((functional_p(&bvp, &sol.u.iter().map(|u| u - 1.0).collect::<Vec<_>>()) - sol.p_value).abs() < 1e-12);

        // g → 4g doubles lengths and radii
        let big = solve_conformal(&RadialBvp::cylinder(2.0 * len, 2.0, 201)).unwrap();
        let g4 = gamma_constant(&big, &[16.0 * PI]).unwrap();
        assert!((g4 - gamma).abs() < 1e-10);
    }
}

#[test]
fn matched_corner_stays_bounded() {
    let band = CornerBand::from_mean_curvatures(2.0, 1.0, 1.0, [-0.3, 0.4], [0.0, 0.0], 0.1);
    let sups: Vec<f64> = [1e-2, 5e-3, 2.5e-3].iter().map(|&d| mollify_corner(&band, d).unwrap().sup_abs_scalar).collect();
    for w in sups.windows(2) {
        let ratio = w[1] / w[0];
        assert!((0.5..=2.0).contains(&ratio), "{sups:?}");
    }
}

#[test]
fn mismatched_corner_integral_is_twice_the_jump() {
    let band = CornerBand::from_mean_curvatures(1.0, 1.2, 1.0, [0.0, 0.0], [0.0, 0.0], 0.1);
    let mut last = 0.0;
    for &d in &[1e-2, 5e-3, 2.5e-3] {
        let mc = mollify_corner(&band, d).unwrap();
        assert!((mc.jump - 0.2).abs() < 1e-12);
        // the spike 2ΔH (100/δ²)φ(100t/δ²) plus the O(δ) smooth part
        let smooth = d * 0.5 * (band.scalar(-1e-9) + band.scalar(1e-9));
        assert!((mc.band_integral - smooth - 0.4).abs() < 1e-3, "δ = {d}: {}", mc.band_integral);
        assert!((mc.spike_amplitude - 0.4).abs() < 1e-2);
        last = mc.band_integral;
    }
    assert!((last - 0.4).abs() < 0.02 * 0.4);
    assert!((last - 0.2).abs() > 0.1);
}

#[test]
fn smooth_band_needs_no_correction() {
    let band = CornerBand::from_mean_curvatures(3.0, 0.5, 0.5, [0.0, 0.0], [0.0, 0.0], 0.2);
    let mc = mollify_corner(&band, 1e-2).unwrap();
    for (i, &t) in mc.t.iter().enumerate() {
        assert!((mc.gamma[i] - band.gamma(t).0).abs() < 1e-10, "{}", mc.gamma[i] - band.gamma(t).0);
        // σ_δσ_δ″ terms leave an O(δ²) residue
        assert!((mc.scalar[i] - band.scalar(t)).abs() < 1e-5);
    }
    assert!(mc.spike_amplitude.abs() < 1e-6);
}

#[test]
fn schwarzschild_composite_glues_and_solves() {
    let cm = composite(SpacetimeSpec::schwarzschild(1.0), 4.0, 2001);
    assert!(cm.area_mismatch < 1e-10);
    assert!(cm.boundary_jump.abs() < 1e-8);
    // exterior is the round Shi-Tam lapse u = (1 − 2μ/r)^{-1/2}
    let m = cm.exterior_mass;
    let r0 = cm.rho[cm.len() - 1];
    let u0 = 2.0 / (r0 * cm.h_plus);
    let mu = 0.5 * r0 * (1.0 - 1.0 / (u0 * u0));
    assert!((m - mu).abs() < 1e-4);
    let exact = (1.0 - (1.0 - 2.0 * mu / r0).sqrt()) / mu;
    assert!((cm.exterior_integral - exact).abs() < 1e-6 * exact, "{} {exact}", cm.exterior_integral);
    // cylindrical end: R̄ → 2/ρ² with |X| → 1/(2m), so the end is Dirichlet
    assert!((cm.coeff[0] - 1.0 / 16.0).abs() < 1e-6);
    assert_eq!(classify_end(&cm, 8.0), InnerCondition::Dirichlet);

    let area = 4.0 * PI * cm.rho[0] * cm.rho[0];
    let sw = truncation_sweep(&cm, &[4.0, 8.0, 16.0], InnerCondition::Dirichlet, area).unwrap();
    assert!(sw.gamma.windows(2).all(|w| w[1] < w[0]));
    for s in &sw.solutions {
        let target = -2.0 * PI * s.a_coef;
        assert!((s.p_value - target).abs() < 1e-10 * target.abs());
        assert!((s.p_quadrature - target).abs() < 1e-4 * target.abs());
        assert!(s.a_coef < 0.0 && s.u_min > 0.0);
        assert!(cm.conformal_mass(s) < m);
    }
}

#[test]
fn conformal_solution_minimizes_p() {
    let cm = composite(SpacetimeSpec::schwarzschild(1.0), 4.0, 1001);
    let start = cm.q.iter().position(|&q| q >= -8.0).unwrap();
    let bvp = RadialBvp::from_composite(&cm, start, InnerCondition::Dirichlet).unwrap();
    let sol = solve_conformal(&bvp).unwrap();
    let v: Vec<f64> = sol.u.iter().map(|u| u - 1.0).collect();
    let p0 = functional_p(&bvp, &v);
    let n = v.len();
    for &eps in &[1e-2, -1e-2] {
        let pert: Vec<f64> = (0..n).map(|i| v[i] + eps * (PI * i as f64 / (n - 1) as f64).sin()).collect();
        assert!(functional_p(&bvp, &pert) > p0);
    }
}

#[test]
fn composite_gamma_is_scale_invariant_and_resolved() {
    let g = |m: f64, nodes: usize| {
        let cm = composite(SpacetimeSpec::schwarzschild(m), 4.0 * m, nodes);
        let area = 4.0 * PI * cm.rho[0] * cm.rho[0];
        truncation_sweep(&cm, &[8.0], InnerCondition::Dirichlet, area).unwrap().gamma[0]
    };
    let g1 = g(1.0, 2001);
    assert!((g(2.0, 2001) - g1).abs() < 1e-8 * g1);
    assert!((g(1.0, 8001) - g1).abs() < 1e-4 * g1);
}

#[test]
fn mismatched_exterior_records_the_jump() {
    let spec = SpacetimeSpec::schwarzschild(1.0);
    let data = build_radial_data(spec, 2.0, 4.0, 400).unwrap();
    let jang = solve_jang_radial(&data, 0.0, true, JangOptions { nodes: 1001, ..Default::default() }).unwrap();
    let b = jang_boundary(&jang).unwrap();
    let r0 = *jang.rt.last().unwrap();
    let prof = embed_rotational(&AxisymSurfaceData::round(Arc::new(PolarGrid::new(8)), r0)).unwrap();
    let u0 = 1.1 * (2.0 / r0) / b.h_plus;
    let st = shi_tam_flow(&prof, &[u0; 8], 1e3 * r0, ShiTamOptions::default()).unwrap();
    let cm = compose(&jang, &st).unwrap();
    // H₊ = H₀/u₀ drops by the factor 1.1; the composite differentiates ρ
    // on the grid, so agreement is to the finite-difference error
    let expect = b.h_plus - b.h_plus / 1.1;
    assert!((cm.boundary_jump - expect).abs() < 1e-6 * expect, "{} {expect}", cm.boundary_jump);
}
