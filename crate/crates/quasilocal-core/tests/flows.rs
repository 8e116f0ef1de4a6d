use std::sync::Arc;

use quasilocal_core::embedding::{embed_rotational, embed_static_schwarzschild};
use quasilocal_core::flows::*;
use quasilocal_core::quad::PolarGrid;
use quasilocal_core::slices::{build_radial_data, horizon_locate, SpacetimeSpec};
use quasilocal_core::surface::AxisymSurfaceData;

const PI: f64 = std::f64::consts::PI;

#[test]
fn round_shi_tam_matches_schwarzschild_lapse() {
    let s = AxisymSurfaceData::round(Arc::new(PolarGrid::new(16)), 4.0);
    let prof = embed_rotational(&s).unwrap();
    let u0 = vec![2f64.sqrt(); 16];
    let tr = shi_tam_flow(&prof, &u0, 1e3, ShiTamOptions::default()).unwrap();
    let mut sup = 0.0f64;
    for (r, u) in tr.r.iter().zip(&tr.u) {
        let exact = 1.0 / (1.0 - 2.0 / r).sqrt();
        for v in u {
            sup = sup.max((v - exact).abs());
        }
        let m_exact = r * (1.0 - (1.0 - 2.0 / r).sqrt());
        let i = tr.r.iter().position(|x| x == r).unwrap();
        assert!((tr.m[i] - m_exact).abs() < 1e-5, "r = {r}");
    }
    assert!(sup < 1e-6, "sup error {sup}");
    assert!(tr.is_monotone(1e-12));
    assert!((tr.mass_extrapolated - 1.0).abs() < 1e-4);
}

fn ellipsoid(n: usize, ax: f64, cz: f64) -> AxisymSurfaceData {
    AxisymSurfaceData::from_metric(Arc::new(PolarGrid::new(n)), |x| (ax * ax * x * x + cz * cz * (1.0 - x * x)).sqrt(), |_| ax)
}

#[test]
fn ellipsoid_flow_is_monotone_at_two_resolutions() {
    let mut masses = Vec::new();
    for &n in &[16usize, 24] {
        let s = ellipsoid(n, 2.0, 3.0);
        let prof = embed_rotational(&s).unwrap();
        let u0: Vec<f64> = prof.grid.x.iter().map(|x| 1.0 / (0.8 + 0.1 * x * x)).collect();
        let opts = ShiTamOptions { max_nodes: n, samples: 120, ..Default::default() };
        let tr = shi_tam_flow(&prof, &u0, 2e3, opts).unwrap();
        assert!(tr.is_monotone(1e-9), "increase {}", tr.max_increase);
        assert!(tr.u.iter().flatten().all(|&u| u > 0.0));
        // M(0) is the boundary integral (1/8π)∮(H₀ − H₀/u₀)
        let hp: Vec<f64> = (0..n).map(|i| prof.h0[i] / u0[i]).collect();
        let m0 = s.integrate(&(0..n).map(|i| prof.h0[i] - hp[i]).collect::<Vec<_>>()) / (8.0 * PI);
        assert!((tr.m[0] - m0).abs() < 1e-8);
        masses.push(tr.mass_extrapolated);
    }
    assert!((masses[0] - masses[1]).abs() < 1e-5, "{masses:?}");
    assert!(masses[0] > 0.0);
}

#[test]
fn shi_tam_rejects_nonpositive_data() {
    let s = AxisymSurfaceData::round(Arc::new(PolarGrid::new(8)), 1.0);
    let prof = embed_rotational(&s).unwrap();
    assert!(shi_tam_flow(&prof, &[0.0; 8], 10.0, ShiTamOptions::default()).is_err());
}

#[test]
fn static_reference_profile_runs_the_round_flow() {
    let s = AxisymSurfaceData::round(Arc::new(PolarGrid::new(8)), 5.0);
    let prof = embed_static_schwarzschild(&s, 1.0).unwrap();
    let u0 = vec![2.5 / (1.0 - 2.0 / 5.0f64).sqrt(); 8];
    let tr = shi_tam_flow(&prof, &u0, 1e4, ShiTamOptions::default()).unwrap();
    assert!(tr.m.iter().all(|q| (q - 1.0).abs() < 1e-9));
    // boundary data with less mean curvature than the reference
    let u1 = vec![u0[0] * 1.1; 8];
    let tr = shi_tam_flow(&prof, &u1, 1e4, ShiTamOptions::default()).unwrap();
    assert!(tr.is_monotone(1e-12));
    assert!(tr.mass_extrapolated > 1.0);
}

#[test]
fn schwarzschild_imcf_hawking_mass_and_alpha() {
    let data = build_radial_data(SpacetimeSpec::schwarzschild(1.0), 2.0, 10.0, 64).unwrap();
    let tr = imcf_radial(&data, ImcfStart::Horizon, 8.0, 200).unwrap();
    assert!(tr.hawking.iter().all(|m| (m - 1.0).abs() < 1e-8));
    assert!(tr.area_law_residual < 1e-10, "{}", tr.area_law_residual);
    assert!((tr.alpha2 - 0.75).abs() < 1e-12);
}

#[test]
fn reissner_nordstrom_charge_bound_holds_leafwise() {
    let spec = SpacetimeSpec::reissner_nordstrom(1.0, 0.6);
    let h = horizon_locate(&spec).unwrap();
    let data = build_radial_data(spec, h.radius, 10.0, 64).unwrap();
    let tr = imcf_radial(&data, ImcfStart::Horizon, 8.0, 400).unwrap();
    assert!(tr.hawking.windows(2).all(|w| w[1] > w[0]));
    assert!(tr.geroch_violation(1e-12) == 0.0);
    let b = charge_monotonicity_bound(&tr, 0.6).unwrap();
    assert!(b.slack >= -1e-9, "slack {}", b.slack);
    assert!(b.chain_slack >= -1e-5, "chain slack {}", b.chain_slack);
    assert!(b.at_t0 > 0.0);
    // Q = 0 gives the trivial bound
    let b0 = charge_monotonicity_bound(&tr, 0.0).unwrap();
    assert!(b0.bound.iter().all(|&v| v == 0.0));
}

#[test]
fn kerr_surrogate_am_bound() {
    let spec = SpacetimeSpec::kerr(1.0, 0.6);
    let h = horizon_locate(&spec).unwrap();
    let data = build_radial_data(spec, h.radius, 10.0, 32).unwrap();
    let tr = imcf_radial(&data, ImcfStart::Horizon, 8.0, 60).unwrap();
    assert!(tr.surrogate);
    let c = quasilocal_core::slices::circumference(&spec, h.radius, 8.0).unwrap();
    let b = am_monotonicity_bound(&tr, 0.6, c).unwrap();
    let expect = (2.0 * PI * tr.alpha()).powi(2) / (c * c) * (4.0 * PI / tr.start_area()).sqrt() * 0.36;
    assert!((b.value - expect).abs() < 1e-14);
    assert!(b.holder_slack >= -1e-12);
    assert!(b.flux_drift < 1e-8, "{}", b.flux_drift);
    assert_eq!(am_monotonicity_bound(&tr, 0.0, c).unwrap().value, 0.0);
    assert!(am_monotonicity_bound(&tr, 0.6, 1e12).unwrap().value < 1e-20);
}

#[test]
fn ratios_are_scale_invariant() {
    for &c in &[1.0, 3.0] {
        let spec = SpacetimeSpec::schwarzschild(c);
        let data = build_radial_data(spec, 2.0 * c, 10.0 * c, 64).unwrap();
        let tr = imcf_radial(&data, ImcfStart::Horizon, 6.0 * c, 100).unwrap();
        let alpha2 = 1.0 - (4.0f64 / 36.0).sqrt();
        assert!((tr.alpha2 - alpha2).abs() < 1e-12);
        let beta = beta_ratio(tr.alpha2, tr.start_area(), 2.0 * PI * 6.0 * c);
        assert!((beta - alpha2.sqrt() / 3.0).abs() < 1e-12);
    }
}
