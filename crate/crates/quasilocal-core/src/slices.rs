//! Exact black-hole initial data: Minkowski, Schwarzschild, Reissner-Nordström,
//! Kerr and Kerr-Newman in static/Boyer-Lindquist, isotropic and
//! Painlevé-Gullstrand slicings.
//!
//! Sign conventions: the extrinsic curvature is `k(X, Y) = ⟨∇_X n, Y⟩` for the
//! future unit normal `n`, so future apparent horizons have `θ₊ = H + Tr_Σ k = 0`.
//! For the rotating families φ is oriented so that `𝒥 = +ma` for `a > 0`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::math::{deriv, spaced, sqrt, PI};
use crate::quad::PolarGrid;
use crate::surface::AxisymSurfaceData;

/// Extremality tolerance on `m² − a² − Q²`.
pub const EXTREME_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Minkowski,
    Schwarzschild { m: f64 },
    ReissnerNordstrom { m: f64, q: f64 },
    Kerr { m: f64, a: f64 },
    KerrNewman { m: f64, a: f64, q: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slicing {
    /// Static t-slices; Boyer-Lindquist t-slices for the rotating families.
    Static,
    PainleveGullstrand,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeSpec {
    pub family: Family,
    pub slicing: Slicing,
    pub grid: GridKind,
    pub polar_order: usize,
}

impl SpacetimeSpec {
    pub fn new(family: Family, slicing: Slicing) -> Self {
        SpacetimeSpec { family, slicing, grid: GridKind::Log, polar_order: 64 }
    }

    pub fn minkowski() -> Self {
        Self::new(Family::Minkowski, Slicing::Static)
    }
    pub fn schwarzschild(m: f64) -> Self {
        Self::new(Family::Schwarzschild { m }, Slicing::Static)
    }
    pub fn reissner_nordstrom(m: f64, q: f64) -> Self {
        Self::new(Family::ReissnerNordstrom { m, q }, Slicing::Static)
    }
    pub fn kerr(m: f64, a: f64) -> Self {
        Self::new(Family::Kerr { m, a }, Slicing::Static)
    }
    pub fn kerr_newman(m: f64, a: f64, q: f64) -> Self {
        Self::new(Family::KerrNewman { m, a, q }, Slicing::Static)
    }

    pub fn with_slicing(mut self, slicing: Slicing) -> Self {
        self.slicing = slicing;
        self
    }

    /// `(m, a, Q)`.
    pub fn params(&self) -> (f64, f64, f64) {
        match self.family {
            Family::Minkowski => (0.0, 0.0, 0.0),
            Family::Schwarzschild { m } => (m, 0.0, 0.0),
            Family::ReissnerNordstrom { m, q } => (m, 0.0, q),
            Family::Kerr { m, a } => (m, a, 0.0),
            Family::KerrNewman { m, a, q } => (m, a, q),
        }
    }

    pub fn is_rotating(&self) -> bool {
        matches!(self.family, Family::Kerr { .. } | Family::KerrNewman { .. })
    }

    pub fn is_black_hole(&self) -> bool {
        !matches!(self.family, Family::Minkowski)
    }

    pub fn is_extreme(&self) -> bool {
        let (m, a, q) = self.params();
        self.is_black_hole() && (m * m - a * a - q * q).abs() < EXTREME_TOL
    }

    pub fn validate(&self) -> Result<()> {
        let (m, a, q) = self.params();
        if self.is_black_hole() && !(m > 0.0) {
            return Err(invalid("black-hole families need m > 0"));
        }
        if m * m - a * a - q * q < -EXTREME_TOL {
            return Err(invalid(format!("m² < a² + Q² (m={m}, a={a}, Q={q})")));
        }
        if self.polar_order < 4 {
            return Err(invalid("polar_order must be at least 4"));
        }
        match (self.family, self.slicing) {
            (Family::Schwarzschild { .. } | Family::Minkowski, Slicing::PainleveGullstrand) => Ok(()),
            (_, Slicing::PainleveGullstrand) => Err(Error::Unsupported("Painlevé-Gullstrand slicing is only available for Schwarzschild".into())),
            (Family::Kerr { .. } | Family::KerrNewman { .. }, Slicing::Isotropic) => Err(Error::Unsupported("isotropic slicing is only available for static families".into())),
            _ => Ok(()),
        }
    }

    /// Outer horizon `r₊ = m + √(m² − a² − Q²)` of the family (areal/BL radius).
    pub fn outer_horizon(&self) -> Option<f64> {
        if !self.is_black_hole() {
            return None;
        }
        let (m, a, q) = self.params();
        Some(m + sqrt((m * m - a * a - q * q).max(0.0)))
    }

    /// Inner end of the slice's coordinate domain, in the slice's own radial coordinate.
    pub fn coordinate_floor(&self) -> f64 {
        let (m, _, q) = self.params();
        match (self.family, self.slicing) {
            (Family::Minkowski, _) => 0.0,
            (_, Slicing::Isotropic) => 0.5 * sqrt((m * m - q * q).max(0.0)),
            (_, Slicing::PainleveGullstrand) => 0.0,
            _ => self.outer_horizon().unwrap_or(0.0),
        }
    }
}

/// Closed-form data of a spherically symmetric slice at one radius.
///
/// The metric is `A dr² + r̃² dΩ²`; `s` is proper radial distance. The
/// extrinsic curvature has eigenvalues `k_ν` (radial) and `k_T` (tangential).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPoint {
    pub r: f64,
    pub rt: f64,
    pub rt_r: f64,
    /// `dr̃/ds`.
    pub rt_s: f64,
    /// `d²r̃/ds²`.
    pub rt_ss: f64,
    /// `A`; infinite on a static-slice horizon.
    pub big_a: f64,
    pub k_nu: f64,
    pub k_t: f64,
    /// `dk_T/ds`.
    pub k_t_s: f64,
    pub e_nu: f64,
    pub b_nu: f64,
    /// `θ₊ = H + Tr_Σ k`, evaluated without cancellation near the horizon.
    pub theta_plus: f64,
}

impl RadialPoint {
    pub fn mean_curvature(&self) -> f64 {
        2.0 * self.rt_s / self.rt
    }
    pub fn tr_sigma_k(&self) -> f64 {
        2.0 * self.k_t
    }
    pub fn scalar_curvature(&self) -> f64 {
        let rt = self.rt;
        -4.0 * self.rt_ss / rt - 2.0 * self.rt_s * self.rt_s / (rt * rt) + 2.0 / (rt * rt)
    }
    pub fn trace_k(&self) -> f64 {
        self.k_nu + 2.0 * self.k_t
    }
    pub fn k_norm2(&self) -> f64 {
        self.k_nu * self.k_nu + 2.0 * self.k_t * self.k_t
    }
    /// Energy density from the Hamiltonian constraint.
    pub fn mu(&self) -> f64 {
        let tr = self.trace_k();
        (self.scalar_curvature() + tr * tr - self.k_norm2()) / (16.0 * PI)
    }
    /// Radial momentum density from the momentum constraint.
    pub fn j_radial(&self) -> f64 {
        (-2.0 * self.k_t_s + 2.0 * self.rt_s / self.rt * (self.k_nu - self.k_t)) / (8.0 * PI)
    }
    pub fn field_energy(&self) -> f64 {
        (self.e_nu * self.e_nu + self.b_nu * self.b_nu) / (8.0 * PI)
    }
}

/// Closed-form data of a spherical family at coordinate radius `r`.
pub fn radial_point(spec: &SpacetimeSpec, r: f64) -> Result<RadialPoint> {
    radial_point_near(spec, r, 0.0)
}

/// Data at `r = base + delta`. Horizon factors are evaluated as
/// `(base − r_h) + delta`, so a tiny `delta` above `base = r_h` keeps full
/// relative precision.
pub fn radial_point_near(spec: &SpacetimeSpec, base: f64, delta: f64) -> Result<RadialPoint> {
    let (m, _, q) = spec.params();
    let r = base + delta;
    if spec.is_rotating() {
        return Err(Error::Unsupported("rotating families have no spherical reduction".into()));
    }
    match spec.slicing {
        Slicing::Static => {
            let disc = m * m - q * q;
            let f = if disc >= 0.0 && m > 0.0 {
                let (rp, rm) = (m + sqrt(disc), m - sqrt(disc));
                ((base - rp) + delta) * ((base - rm) + delta) / (r * r)
            } else {
                1.0 - 2.0 * m / r + q * q / (r * r)
            };
            if f < -1e-14 {
                return Err(invalid(format!("r = {r} is inside the static-slice horizon")));
            }
            let f = f.max(0.0);
            let fp = 2.0 * m / (r * r) - 2.0 * q * q / (r * r * r);
            Ok(RadialPoint {
                r,
                rt: r,
                rt_r: 1.0,
                rt_s: sqrt(f),
                rt_ss: 0.5 * fp,
                big_a: if f > 0.0 { 1.0 / f } else { f64::INFINITY },
                k_nu: 0.0,
                k_t: 0.0,
                k_t_s: 0.0,
                e_nu: q / (r * r),
                b_nu: 0.0,
                theta_plus: 2.0 * sqrt(f) / r,
            })
        }
        Slicing::Isotropic => {
            let c = (m * m - q * q) / 4.0;
            if r <= 0.0 {
                return Err(invalid("isotropic radius must be positive"));
            }
            let rt = r + m + c / r;
            let rt_r = if c > 0.0 {
                let rc = sqrt(c);
                ((base - rc) + delta) * (r + rc) / (r * r)
            } else {
                1.0 - c / (r * r)
            };
            let rt_rr = 2.0 * c / (r * r * r);
            let psi2 = rt / r;
            let big_a = psi2 * psi2;
            let a_r = 2.0 * psi2 * (rt_r * r - rt) / (r * r);
            let sa = sqrt(big_a);
            let e_nu = q / (rt * rt);
            Ok(RadialPoint {
                r,
                rt,
                rt_r,
                rt_s: rt_r / sa,
                rt_ss: (rt_rr - rt_r * a_r / (2.0 * big_a)) / big_a,
                big_a,
                k_nu: 0.0,
                k_t: 0.0,
                k_t_s: 0.0,
                e_nu,
                b_nu: 0.0,
                theta_plus: 2.0 * rt_r / (sa * rt),
            })
        }
        Slicing::PainleveGullstrand => {
            let c = sqrt(2.0 * m) / (r * sqrt(r));
            // 2/r − 2c = 2(r − 2m)/(r^{3/2}(√r + √2m))
            let theta_plus = 2.0 * ((base - 2.0 * m) + delta) / (r * sqrt(r) * (sqrt(r) + sqrt(2.0 * m)));
            Ok(RadialPoint {
                r,
                rt: r,
                rt_r: 1.0,
                rt_s: 1.0,
                rt_ss: 0.0,
                big_a: 1.0,
                k_nu: 0.5 * c,
                k_t: -c,
                k_t_s: 1.5 * c / r,
                e_nu: 0.0,
                b_nu: 0.0,
                theta_plus,
            })
        }
    }
}

/// Boyer-Lindquist Kerr-Newman data at `(r, x = cos θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrPoint {
    pub r: f64,
    pub x: f64,
    pub sigma: f64,
    pub delta: f64,
    pub d: f64,
    pub d_r: f64,
    /// Frame-dragging angular velocity, sign fixed by the φ orientation.
    pub omega: f64,
    pub omega_r: f64,
    pub omega_x: f64,
    pub g_phph: f64,
    pub lapse: f64,
    /// Normal electric and magnetic field components.
    pub e_nu: f64,
    pub b_nu: f64,
    /// Orthonormal tangential components (θ̂ direction).
    pub e_th: f64,
    pub b_th: f64,
    /// `A(η) = A_φ` of the Maxwell potential.
    pub a_phi: f64,
}

pub fn kerr_point(spec: &SpacetimeSpec, r: f64, x: f64) -> KerrPoint {
    let (m, a, q) = spec.params();
    // standard Boyer-Lindquist formulas with rotation parameter -a
    let ab = -a;
    let s2 = 1.0 - x * x;
    let a2 = a * a;
    let sigma = r * r + a2 * x * x;
    let delta = r * r - 2.0 * m * r + a2 + q * q;
    let rr = r * r + a2;
    let d = rr * rr - delta * a2 * s2;
    let d_r = 4.0 * r * rr - (2.0 * r - 2.0 * m) * a2 * s2;
    let d_x = 2.0 * delta * a2 * x;
    let num = (2.0 * m * r - q * q) * ab;
    let omega = num / d;
    let omega_r = (2.0 * m * ab * d - num * d_r) / (d * d);
    let omega_x = -num * d_x / (d * d);
    let g_phph = d * s2 / sigma;
    let lapse = sqrt((sigma * delta / d).max(0.0));
    let sig2 = sigma * sigma;
    let f_rt = q * (r * r - a2 * x * x) / sig2;
    let s = sqrt(s2);
    let f_rph_over_s = -ab * s * f_rt;
    // θ-derivatives, written per unit sin θ to stay finite on the axis
    let f_tht_over_s = -2.0 * q * r * a2 * x / sig2;
    let f_thph_over_s = 2.0 * q * r * ab * x * rr / sig2;
    let e_nu = f_rt * (1.0 - omega * ab * s2) * sqrt(d) / sigma;
    let b_nu = f_thph_over_s / sqrt(d);
    let e_th = if lapse > 0.0 { s * (f_tht_over_s + omega * f_thph_over_s) / (lapse * sqrt(sigma)) } else { 0.0 };
    // orthonormal B^θ = -√g_θθ F_rφ/√γ with √γ = s √(Σ D/Δ)
    let b_th = -f_rph_over_s * sqrt((delta / d).max(0.0));
    KerrPoint {
        r,
        x,
        sigma,
        delta,
        d,
        d_r,
        omega,
        omega_r,
        omega_x,
        g_phph,
        lapse,
        e_nu,
        b_nu,
        e_th,
        b_th,
        a_phi: q * r * ab * s2 / sigma,
    }
}

impl KerrPoint {
    pub fn mean_curvature(&self) -> f64 {
        sqrt((self.delta / self.sigma).max(0.0)) * 0.5 * self.d_r / self.d
    }
    /// `k(η, ν)`.
    pub fn p_phi(&self) -> f64 {
        self.g_phph * self.omega_r * sqrt(self.d) / (2.0 * self.sigma)
    }
    /// Electromagnetic energy density `(|E|² + |B|²)/8π`.
    pub fn mu(&self) -> f64 {
        (self.e_nu * self.e_nu + self.e_th * self.e_th + self.b_nu * self.b_nu + self.b_th * self.b_th) / (8.0 * PI)
    }
    /// `|J| = |E × B|/4π`; the Poynting vector points along η.
    pub fn j_phi_hat(&self) -> f64 {
        (self.e_nu * self.b_th - self.e_th * self.b_nu) / (4.0 * PI)
    }
}

/// `g_tφ` of the Boyer-Lindquist metric; only used for the Komar cross-check.
fn kerr_g_tphi(spec: &SpacetimeSpec, r: f64, x: f64) -> f64 {
    let p = kerr_point(spec, r, x);
    -p.omega * p.g_phph
}

/// Komar angular-momentum density `−⟨∇_ν η, n⟩` from radial derivatives of
/// the spacetime metric components.
pub fn kerr_komar_density(spec: &SpacetimeSpec, r: f64, x: f64) -> f64 {
    let p = kerr_point(spec, r, x);
    let h = 1e-3 * r;
    let dgtp = deriv(|rr| kerr_g_tphi(spec, rr, x), r, h);
    let dgpp = deriv(|rr| kerr_point(spec, rr, x).g_phph, r, h);
    -sqrt(p.d) / (2.0 * p.sigma) * (dgtp + p.omega * dgpp)
}

/// θ-dependent samples for the rotating families, row-major `(r, θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarSlab {
    pub grid: Arc<PolarGrid>,
    pub k_rphi: Vec<f64>,
    pub mu: Vec<f64>,
    pub j_abs: Vec<f64>,
    pub j_eta: Vec<f64>,
}

/// Sampled initial data on a radial grid.
///
/// Spherical families fill the radial arrays from closed forms. For rotating
/// families the radial arrays hold equatorial values and the full θ dependence
/// of the matter terms lives in `polar`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialInitialData {
    pub spec: SpacetimeSpec,
    pub r: Vec<f64>,
    pub rt: Vec<f64>,
    pub big_a: Vec<f64>,
    /// Radial eigenvalue `k(ν, ν)`.
    pub k_rr: Vec<f64>,
    /// Tangential eigenvalue of k.
    pub k_tan: Vec<f64>,
    pub e_nu: Vec<f64>,
    pub b_nu: Vec<f64>,
    pub mu: Vec<f64>,
    pub j_abs: Vec<f64>,
    pub j_eta: Vec<f64>,
    /// `μ − (|E|² + |B|²)/8π`.
    pub mu_em: Vec<f64>,
    /// `|J − E × B/4π|`.
    pub j_em_abs: Vec<f64>,
    pub polar: Option<PolarSlab>,
}

pub fn build_radial_data(spec: SpacetimeSpec, r_min: f64, r_max: f64, n: usize) -> Result<RadialInitialData> {
    spec.validate()?;
    if n < 16 {
        return Err(invalid("need at least 16 radial nodes"));
    }
    if !(r_max > r_min) {
        return Err(invalid("r_max must exceed r_min"));
    }
    let floor = spec.coordinate_floor();
    let tol = 1e-12 * (1.0 + floor);
    let inside = match spec.slicing {
        Slicing::Isotropic => r_min <= 0.0 || r_min < floor - tol,
        _ => r_min < floor - tol || (floor == 0.0 && r_min <= 0.0),
    };
    if inside {
        return Err(invalid(format!("r_min = {r_min} lies inside the coordinate singularity at {floor}")));
    }
    let mut r = spaced(r_min, r_max, n, matches!(spec.grid, GridKind::Log) && r_min > 0.0);
    if (r[0] - floor).abs() < tol {
        r[0] = floor;
    }
    let mut data = RadialInitialData {
        spec,
        r: r.clone(),
        rt: Vec::with_capacity(n),
        big_a: Vec::with_capacity(n),
        k_rr: Vec::with_capacity(n),
        k_tan: Vec::with_capacity(n),
        e_nu: Vec::with_capacity(n),
        b_nu: Vec::with_capacity(n),
        mu: Vec::with_capacity(n),
        j_abs: Vec::with_capacity(n),
        j_eta: Vec::with_capacity(n),
        mu_em: Vec::with_capacity(n),
        j_em_abs: Vec::with_capacity(n),
        polar: None,
    };
    if spec.is_rotating() {
        let grid = Arc::new(PolarGrid::new(spec.polar_order));
        let nt = grid.len();
        let mut slab = PolarSlab {
            grid: grid.clone(),
            k_rphi: Vec::with_capacity(n * nt),
            mu: Vec::with_capacity(n * nt),
            j_abs: Vec::with_capacity(n * nt),
            j_eta: Vec::with_capacity(n * nt),
        };
        for &ri in &r {
            let eq = kerr_point(&spec, ri, 0.0);
            data.rt.push(sqrt(eq.d) / ri);
            data.big_a.push(eq.sigma / eq.delta);
            data.k_rr.push(0.0);
            data.k_tan.push(0.0);
            data.e_nu.push(eq.e_nu);
            data.b_nu.push(eq.b_nu);
            data.mu.push(eq.mu());
            data.j_abs.push(eq.j_phi_hat().abs());
            data.j_eta.push(eq.j_phi_hat() * sqrt(eq.g_phph));
            data.mu_em.push(0.0);
            data.j_em_abs.push(0.0);
            for &x in &grid.x {
                let p = kerr_point(&spec, ri, x);
                slab.k_rphi.push(if p.lapse > 0.0 { p.g_phph * p.omega_r / (2.0 * p.lapse) } else { f64::INFINITY });
                slab.mu.push(p.mu());
                slab.j_abs.push(p.j_phi_hat().abs());
                slab.j_eta.push(p.j_phi_hat() * sqrt(p.g_phph));
            }
        }
        data.polar = Some(slab);
    } else {
        for &ri in &r {
            let p = radial_point(&spec, ri)?;
            let mu = p.mu();
            let j = p.j_radial();
            data.rt.push(p.rt);
            data.big_a.push(p.big_a);
            data.k_rr.push(p.k_nu);
            data.k_tan.push(p.k_t);
            data.e_nu.push(p.e_nu);
            data.b_nu.push(p.b_nu);
            data.mu.push(mu);
            data.j_abs.push(j.abs());
            data.j_eta.push(0.0);
            data.mu_em.push(mu - p.field_energy());
            data.j_em_abs.push(j.abs());
        }
    }
    Ok(data)
}

impl RadialInitialData {
    pub fn r_min(&self) -> f64 {
        self.r[0]
    }
    pub fn r_max(&self) -> f64 {
        *self.r.last().unwrap()
    }
    pub fn point(&self, r: f64) -> Result<RadialPoint> {
        radial_point(&self.spec, r)
    }
    pub fn check_range(&self, r: f64) -> Result<()> {
        let (lo, hi) = (self.r_min(), self.r_max());
        let slack = 1e-12 * (1.0 + hi.abs());
        if r < lo - slack || r > hi + slack {
            return Err(Error::OutOfRange { r, lo, hi });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horizon {
    /// Radius in the slice's own radial coordinate.
    pub radius: f64,
    pub area: f64,
}

/// Signed function whose outermost zero is the outer horizon of the slice.
fn horizon_indicator(spec: &SpacetimeSpec, r: f64) -> f64 {
    let (m, a, q) = spec.params();
    match (spec.family, spec.slicing) {
        (Family::Kerr { .. } | Family::KerrNewman { .. }, _) => r * r - 2.0 * m * r + a * a + q * q,
        (_, Slicing::Static) => 1.0 - 2.0 * m / r + q * q / (r * r),
        (_, Slicing::Isotropic) => 1.0 - (m * m - q * q) / (4.0 * r * r),
        (_, Slicing::PainleveGullstrand) => 2.0 / r - 2.0 * sqrt(2.0 * m) / (r * sqrt(r)),
    }
}

/// Outermost root of `θ₊ = 0` and the area of that surface.
pub fn horizon_locate(spec: &SpacetimeSpec) -> Result<Horizon> {
    spec.validate()?;
    if !spec.is_black_hole() {
        return Err(Error::NoHorizon);
    }
    let (m, _, _) = spec.params();
    let radius = if spec.is_extreme() && !matches!(spec.slicing, Slicing::PainleveGullstrand) {
        match spec.slicing {
            Slicing::Isotropic => return Err(Error::Unsupported("extreme data has no isotropic horizon".into())),
            _ => m,
        }
    } else {
        let mut hi = 50.0 * m;
        let steps = 4000;
        let mut found = None;
        for _ in 0..steps {
            let lo = hi * (1.0 - 1.0 / 400.0);
            if lo <= 1e-9 * m {
                break;
            }
            if horizon_indicator(spec, lo) <= 0.0 && horizon_indicator(spec, hi) > 0.0 {
                found = Some((lo, hi));
                break;
            }
            hi = lo;
        }
        let (mut lo, mut hi) = found.ok_or(Error::NoHorizon)?;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if horizon_indicator(spec, mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 * hi {
                break;
            }
        }
        0.5 * (lo + hi)
    };
    let surf = surface_of(spec, radius)?;
    Ok(Horizon { radius, area: surf.area() })
}

/// Data of the coordinate sphere at `r`, straight from the closed forms.
pub fn surface_of(spec: &SpacetimeSpec, r: f64) -> Result<AxisymSurfaceData> {
    let grid = Arc::new(PolarGrid::new(spec.polar_order));
    surface_on_grid(spec, r, grid)
}

pub fn surface_on_grid(spec: &SpacetimeSpec, r: f64, grid: Arc<PolarGrid>) -> Result<AxisymSurfaceData> {
    let n = grid.len();
    if spec.is_rotating() {
        let mut s = AxisymSurfaceData::zeros(grid.clone());
        let mut komar = Vec::with_capacity(n);
        for i in 0..n {
            let p = kerr_point(spec, r, grid.x[i]);
            s.a[i] = sqrt(p.sigma);
            s.b[i] = sqrt(p.d / p.sigma) * grid.s[i];
            s.h[i] = p.mean_curvature();
            s.p_phi[i] = p.p_phi();
            s.e_nu[i] = p.e_nu;
            s.b_nu[i] = p.b_nu;
            s.a_eta[i] = p.a_phi;
            komar.push(kerr_komar_density(spec, r, grid.x[i]));
        }
        s.komar = Some(komar);
        s.finish_connection();
        Ok(s)
    } else {
        let p = radial_point(spec, r)?;
        let mut s = AxisymSurfaceData::zeros(grid.clone());
        for i in 0..n {
            s.a[i] = p.rt;
            s.b[i] = p.rt * grid.s[i];
            s.h[i] = p.mean_curvature();
            s.tr_k[i] = p.tr_sigma_k();
            s.e_nu[i] = p.e_nu;
            s.b_nu[i] = p.b_nu;
        }
        s.finish_connection();
        Ok(s)
    }
}

/// Restrict the sampled data to the coordinate sphere at `r`.
pub fn extract_surface(data: &RadialInitialData, r: f64) -> Result<AxisymSurfaceData> {
    data.check_range(r)?;
    let grid = match &data.polar {
        Some(slab) => slab.grid.clone(),
        None => Arc::new(PolarGrid::new(data.spec.polar_order)),
    };
    surface_on_grid(&data.spec, r, grid)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    pub dec_ok: bool,
    pub dec_em_ok: bool,
    pub strict_on_horizon: bool,
    pub min_dec: f64,
    pub min_dec_em: f64,
    /// Values at the inner boundary, which is the horizon when the data starts there.
    pub dec_at_inner: f64,
    pub dec_em_at_inner: f64,
}

/// Pointwise dominant-energy audit over the whole grid.
pub fn energy_condition_report(data: &RadialInitialData) -> EnergyReport {
    let tol = 1e-10;
    let (dec, dec_em): (Vec<f64>, Vec<f64>) = match &data.polar {
        Some(slab) => {
            let n = slab.mu.len();
            ((0..n).map(|i| slab.mu[i] - slab.j_abs[i]).collect(), (0..n).map(|_| 0.0).collect())
        }
        None => (
            data.mu.iter().zip(&data.j_abs).map(|(m, j)| m - j).collect(),
            data.mu_em.iter().zip(&data.j_em_abs).map(|(m, j)| m - j).collect(),
        ),
    };
    let nt = data.polar.as_ref().map(|s| s.grid.len()).unwrap_or(1);
    let inner = crate::math::min_of(&dec[..nt]);
    let inner_em = crate::math::min_of(&dec_em[..nt.min(dec_em.len())]);
    let min_dec = crate::math::min_of(&dec);
    let min_dec_em = crate::math::min_of(&dec_em);
    EnergyReport {
        dec_ok: min_dec >= -tol,
        dec_em_ok: min_dec_em >= -tol,
        strict_on_horizon: inner > tol,
        min_dec,
        min_dec_em,
        dec_at_inner: inner,
        dec_em_at_inner: inner_em,
    }
}

/// Recompute μ and J_ν from the sampled `r̃`, `A`, `k` arrays by finite
/// differences and return the largest deviation from the stored values
/// (spherical families only; nodes with infinite `A` are skipped).
pub fn constraint_residual(data: &RadialInitialData) -> Result<(f64, f64)> {
    if data.polar.is_some() {
        return Err(Error::Unsupported("finite-difference constraint audit is radial only".into()));
    }
    let n = data.r.len();
    let d1 = |v: &[f64], i: usize| -> f64 {
        let (h0, h1) = (data.r[i] - data.r[i - 1], data.r[i + 1] - data.r[i]);
        (v[i + 1] * h0 * h0 - v[i - 1] * h1 * h1 + v[i] * (h1 * h1 - h0 * h0)) / (h0 * h1 * (h0 + h1))
    };
    let d2 = |v: &[f64], i: usize| -> f64 {
        let (h0, h1) = (data.r[i] - data.r[i - 1], data.r[i + 1] - data.r[i]);
        2.0 * (v[i + 1] * h0 - v[i] * (h0 + h1) + v[i - 1] * h1) / (h0 * h1 * (h0 + h1))
    };
    let (mut res_mu, mut res_j) = (0.0f64, 0.0f64);
    for i in 1..n - 1 {
        if !data.big_a[i - 1].is_finite() || !data.big_a[i].is_finite() || !data.big_a[i + 1].is_finite() {
            continue;
        }
        let a = data.big_a[i];
        let sa = sqrt(a);
        let rt = data.rt[i];
        let rt_r = d1(&data.rt, i);
        let rt_rr = d2(&data.rt, i);
        let a_r = d1(&data.big_a, i);
        let rt_s = rt_r / sa;
        let rt_ss = (rt_rr - rt_r * a_r / (2.0 * a)) / a;
        let ricci = -4.0 * rt_ss / rt - 2.0 * rt_s * rt_s / (rt * rt) + 2.0 / (rt * rt);
        let (kn, kt) = (data.k_rr[i], data.k_tan[i]);
        let tr = kn + 2.0 * kt;
        let mu = (ricci + tr * tr - (kn * kn + 2.0 * kt * kt)) / (16.0 * PI);
        let kt_s = d1(&data.k_tan, i) / sa;
        let j = (-2.0 * kt_s + 2.0 * rt_s / rt * (kn - kt)) / (8.0 * PI);
        res_mu = res_mu.max((mu - data.mu[i]).abs());
        res_j = res_j.max((j.abs() - data.j_abs[i]).abs());
    }
    Ok((res_mu, res_j))
}

/// Largest η-orbit circumference `2π max |η|` over `r ∈ [r_in, r_out]`.
pub fn circumference(spec: &SpacetimeSpec, r_in: f64, r_out: f64) -> Result<f64> {
    let rs = spaced(r_in, r_out, 400, false);
    let mut best = 0.0f64;
    if spec.is_rotating() {
        let grid = PolarGrid::new(spec.polar_order);
        for &r in &rs {
            let mut xs = grid.x.clone();
            xs.push(0.0);
            for x in xs {
                best = best.max(sqrt(kerr_point(spec, r, x).g_phph));
            }
        }
    } else {
        for &r in &rs {
            best = best.max(radial_point(spec, r)?.rt);
        }
    }
    Ok(2.0 * PI * best)
}
