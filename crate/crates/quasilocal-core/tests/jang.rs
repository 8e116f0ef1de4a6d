use quasilocal_core::jang::*;
use quasilocal_core::slices::{build_radial_data, Slicing, SpacetimeSpec};

const PI: f64 = std::f64::consts::PI;

fn pg(r_out: f64) -> quasilocal_core::slices::RadialInitialData {
    build_radial_data(SpacetimeSpec::schwarzschild(1.0).with_slicing(Slicing::PainleveGullstrand), 0.5, r_out, 64).unwrap()
}

#[test]
fn time_symmetric_reissner_nordstrom_keeps_its_charge() {
    let spec = SpacetimeSpec::reissner_nordstrom(1.0, 0.6);
    let d = build_radial_data(spec, 2.0, 10.0, 64).unwrap();
    let s = solve_jang_radial(&d, 0.0, false, JangOptions::default()).unwrap();
    assert!(s.f.iter().all(|f| *f == 0.0));
    for r in [2.5, 6.0, 9.5] {
        assert!((deformed_charge(&s, r).unwrap() - 0.6).abs() < 1e-12);
    }
    let b = jang_boundary(&s).unwrap();
    assert!(b.x_nu == 0.0 && (b.h_bar - b.hvec).abs() < 1e-14);
}

#[test]
fn static_blowup_has_a_cylindrical_end_over_the_horizon() {
    let d = build_radial_data(SpacetimeSpec::schwarzschild(1.0), 2.0, 8.0, 64).unwrap();
    let s = solve_jang_radial(&d, 0.0, true, JangOptions::default()).unwrap();
    assert!(s.blowup);
    let areas: Vec<f64> = s.rt.iter().map(|r| 4.0 * PI * r * r).collect();
    assert!((areas[0] - 16.0 * PI).abs() < 1e-6);
    assert!(areas.windows(2).all(|w| w[1] >= w[0]));
    // ḡ-length grows linearly in ξ along the end
    let sb = s.bar_distance();
    let k = s.len() / 20;
    let slope = (sb[2 * k] - sb[k]) / (s.q[2 * k] - s.q[k]);
    assert!((slope - s.cylinder_scale().unwrap()).abs() < 1e-3);
}

#[test]
fn painleve_gullstrand_identity_and_boundary() {
    let s = solve_jang_radial(&pg(4.0), 0.0, true, JangOptions::default()).unwrap();
    let id = jang_identities(&s, 2);
    assert!(id.scalar_residual < 1e-6, "{id:?}");
    assert!(id.jang_residual < 1e-6, "{id:?}");
    let b = jang_boundary(&s).unwrap();
    assert!(b.slack > 0.0, "{b:?}");
    assert_eq!(deformed_charge(&s, 3.0).unwrap(), 0.0);
}

#[test]
fn xi_and_radius_are_inverse() {
    let s = solve_jang_radial(&pg(6.0), 0.0, true, JangOptions::default()).unwrap();
    for x in [-8.0, -1.0, 0.0] {
        assert!((xi_of_radius(&s, radius_at_xi(&s, x)) - x).abs() < 1e-12);
    }
}

#[test]
fn rotating_data_is_refused() {
    let d = build_radial_data(SpacetimeSpec::kerr(1.0, 0.5), 2.0, 5.0, 32).unwrap();
    assert!(solve_jang_radial(&d, 0.0, true, JangOptions::default()).is_err());
}
