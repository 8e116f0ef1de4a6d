//! Axisymmetric 2-surfaces: intrinsic metric `a²dθ² + b²dφ²`, extrinsic
//! scalars, momentum 1-form, field fluxes, and the quantities built from them.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{sqrt, PI};
use crate::quad::PolarGrid;

/// Surface data sampled on the polar Gauss-Legendre grid.
///
/// `p_theta`, `p_phi` are the components of `p(ν)ᵀ = k(ν, ·)ᵀ` on `∂θ`, `∂φ`.
/// `alpha_theta` is `α_H(∂θ)` in the mean-curvature normal frame.
/// `a_eta` holds `A(η)` for a Maxwell potential regular on the axis and
/// `komar` an optional Komar density `−⟨∇_ν η, n⟩` computed independently.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisymSurfaceData {
    pub grid: Arc<PolarGrid>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub h: Vec<f64>,
    pub tr_k: Vec<f64>,
    pub p_theta: Vec<f64>,
    pub p_phi: Vec<f64>,
    pub alpha_theta: Vec<f64>,
    pub e_nu: Vec<f64>,
    pub b_nu: Vec<f64>,
    pub a_eta: Vec<f64>,
    pub komar: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Charges {
    pub q_e: f64,
    pub q_b: f64,
    pub q2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HodgePair {
    pub upsilon: Vec<f64>,
    pub varpi: Vec<f64>,
    /// `𝐣(∂φ) = (b/a) ϖ′`.
    pub j_phi: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularMomentumKind {
    BrownYork,
    LiuYau,
    Komar,
}

impl AxisymSurfaceData {
    pub fn zeros(grid: Arc<PolarGrid>) -> Self {
        let n = grid.len();
        AxisymSurfaceData {
            grid,
            a: vec![0.0; n],
            b: vec![0.0; n],
            h: vec![0.0; n],
            tr_k: vec![0.0; n],
            p_theta: vec![0.0; n],
            p_phi: vec![0.0; n],
            alpha_theta: vec![0.0; n],
            e_nu: vec![0.0; n],
            b_nu: vec![0.0; n],
            a_eta: vec![0.0; n],
            komar: None,
        }
    }

    /// Round sphere of radius `r` in flat space with `k = 0`.
    pub fn round(grid: Arc<PolarGrid>, r: f64) -> Self {
        let mut s = Self::zeros(grid);
        for i in 0..s.len() {
            s.a[i] = r;
            s.b[i] = r * s.grid.s[i];
            s.h[i] = 2.0 / r;
        }
        s
    }

    /// Metric-only surface with the given `a(x)` and `B(x) = b/sin θ`.
    pub fn from_metric<FA: Fn(f64) -> f64, FB: Fn(f64) -> f64>(grid: Arc<PolarGrid>, a: FA, big_b: FB) -> Self {
        let mut s = Self::zeros(grid);
        for i in 0..s.len() {
            let x = s.grid.x[i];
            s.a[i] = a(x);
            s.b[i] = big_b(x) * s.grid.s[i];
        }
        s
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `B = b / sin θ`, smooth in `x = cos θ` for regular surfaces.
    pub fn big_b(&self) -> Vec<f64> {
        self.b.iter().zip(&self.grid.s).map(|(b, s)| b / s).collect()
    }

    /// `db/dθ`.
    pub fn b_prime(&self) -> Vec<f64> {
        let bb = self.big_b();
        let bx = self.grid.diff(&bb);
        (0..self.len()).map(|i| {
            let x = self.grid.x[i];
            x * bb[i] - (1.0 - x * x) * bx[i]
        }).collect()
    }

    /// `d/dθ` of a function sampled on the grid.
    pub fn d_theta(&self, f: &[f64]) -> Vec<f64> {
        let fx = self.grid.diff(f);
        fx.iter().zip(&self.grid.s).map(|(d, s)| -s * d).collect()
    }

    /// `∮ f dA`.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        let g = &self.grid;
        2.0 * PI * (0..self.len()).map(|i| g.w[i] * f[i] * self.a[i] * self.b[i] / g.s[i]).sum::<f64>()
    }

    pub fn area(&self) -> f64 {
        let ones = vec![1.0; self.len()];
        self.integrate(&ones)
    }

    pub fn areal_radius(&self) -> f64 {
        sqrt(self.area() / (4.0 * PI))
    }

    /// Gauss curvature from the metric coefficients.
    pub fn gauss_curvature(&self) -> Vec<f64> {
        let g = &self.grid;
        let bb = self.big_b();
        let ax = g.diff(&self.a);
        let bx = g.diff(&bb);
        let bxx = g.diff(&bx);
        (0..self.len())
            .map(|i| {
                let x = g.x[i];
                let y = 1.0 - x * x;
                let (a, b) = (self.a[i], bb[i]);
                (-ax[i] * (x * b - y * bx[i]) + a * (b + 3.0 * x * bx[i] - y * bxx[i])) / (a * a * a * b)
            })
            .collect()
    }

    pub fn gauss_bonnet(&self) -> f64 {
        self.integrate(&self.gauss_curvature())
    }

    /// Largest deviation from the smooth-pole conditions `b′ = ±a` at the poles.
    pub fn pole_defect(&self) -> f64 {
        let bb = self.big_b();
        let north = (self.grid.eval(&bb, 1.0) - self.grid.eval(&self.a, 1.0)).abs();
        let south = (self.grid.eval(&bb, -1.0) - self.grid.eval(&self.a, -1.0)).abs();
        north.max(south)
    }

    pub fn theta_plus(&self) -> Vec<f64> {
        self.h.iter().zip(&self.tr_k).map(|(h, t)| h + t).collect()
    }

    pub fn theta_minus(&self) -> Vec<f64> {
        self.h.iter().zip(&self.tr_k).map(|(h, t)| h - t).collect()
    }

    /// `|H⃗|² = H² − (Tr_Σ k)²`.
    pub fn hvec_norm2(&self) -> Vec<f64> {
        self.h.iter().zip(&self.tr_k).map(|(h, t)| h * h - t * t).collect()
    }

    pub fn hvec_norm(&self) -> Result<Vec<f64>> {
        self.hvec_norm2()
            .into_iter()
            .map(|v| if v >= 0.0 { Ok(sqrt(v)) } else { Err(Error::MeanCurvature("timelike mean curvature vector".into())) })
            .collect()
    }

    /// Fill `alpha_theta` from `p_theta`, `H` and `Tr_Σ k`: `α_H = α_ν − dχ`
    /// with `tanh χ = −Tr_Σ k / H` the boost to the mean-curvature frame.
    pub fn finish_connection(&mut self) {
        let chi: Vec<f64> = (0..self.len())
            .map(|i| {
                let (h, t) = (self.h[i], self.tr_k[i]);
                if h.abs() > t.abs() {
                    libm::atanh(-t / h)
                } else {
                    0.0
                }
            })
            .collect();
        let dchi = self.d_theta(&chi);
        for i in 0..self.len() {
            self.alpha_theta[i] = -self.p_theta[i] - dchi[i];
        }
    }

    pub fn charges(&self) -> Charges {
        let q_e = self.integrate(&self.e_nu) / (4.0 * PI);
        let q_b = self.integrate(&self.b_nu) / (4.0 * PI);
        Charges { q_e, q_b, q2: q_e * q_e + q_b * q_b }
    }

    /// `p(ν)ᵀ = dυ + ⋆dϖ` with mean-zero potentials.
    pub fn hodge_decompose(&self) -> Result<HodgePair> {
        let g = &self.grid;
        let n = self.len();
        let bb = self.big_b();
        let ups_x: Vec<f64> = (0..n).map(|i| -self.p_theta[i] / g.s[i]).collect();
        let var_x: Vec<f64> = (0..n).map(|i| -self.a[i] * self.p_phi[i] / (bb[i] * g.s[i] * g.s[i])).collect();
        let area = self.area();
        let mut ups: Vec<f64> = g.cumulative_from_north(&ups_x).into_iter().map(|v| -v).collect();
        let mut var: Vec<f64> = g.cumulative_from_north(&var_x).into_iter().map(|v| -v).collect();
        let mu = self.integrate(&ups) / area;
        let mv = self.integrate(&var) / area;
        ups.iter_mut().for_each(|v| *v -= mu);
        var.iter_mut().for_each(|v| *v -= mv);
        let p_th = self.d_theta(&ups);
        let dvar = self.d_theta(&var);
        let j_phi: Vec<f64> = (0..n).map(|i| self.b[i] / self.a[i] * dvar[i]).collect();
        let mut residual = 0.0f64;
        for i in 0..n {
            residual = residual.max((p_th[i] - self.p_theta[i]).abs()).max((j_phi[i] - self.p_phi[i]).abs());
        }
        if !residual.is_finite() {
            return Err(Error::NonConvergence("Hodge decomposition produced non-finite values".into()));
        }
        Ok(HodgePair { upsilon: ups, varpi: var, j_phi, residual })
    }

    pub fn angular_momentum(&self, which: AngularMomentumKind) -> Result<f64> {
        let val = match which {
            AngularMomentumKind::BrownYork => self.integrate(&self.p_phi),
            AngularMomentumKind::LiuYau => self.integrate(&self.hodge_decompose()?.j_phi),
            AngularMomentumKind::Komar => {
                let k = self.komar.as_ref().ok_or_else(|| Error::Missing("Komar density".into()))?;
                self.integrate(k)
            }
        };
        Ok(val / (8.0 * PI))
    }

    /// Electromagnetic contribution `−(1/4π)∮ A(η) E(ν) dA` to the conserved
    /// angular momentum, with `E(ν) = F(ν, n)` and `F = dA`.
    pub fn field_angular_momentum(&self) -> f64 {
        let f: Vec<f64> = self.a_eta.iter().zip(&self.e_nu).map(|(a, e)| a * e).collect();
        -self.integrate(&f) / (4.0 * PI)
    }

    /// `𝒥_BY` plus the field contribution; equals `𝒥_BY` without fields.
    pub fn total_angular_momentum(&self) -> f64 {
        self.integrate(&self.p_phi) / (8.0 * PI) + self.field_angular_momentum()
    }

    /// Circumference `2π max b` of the largest η-orbit on the surface.
    pub fn circumference(&self) -> f64 {
        let bb = self.big_b();
        let eq = self.grid.eval(&bb, 0.0);
        2.0 * PI * self.b.iter().copied().fold(eq, f64::max)
    }

    /// Duality rotation `(E, B) → (cos ϑ E + sin ϑ B, −sin ϑ E + cos ϑ B)`.
    pub fn duality_rotate(&self, angle: f64) -> Self {
        let (c, s) = (crate::math::cos(angle), crate::math::sin(angle));
        let mut out = self.clone();
        for i in 0..self.len() {
            out.e_nu[i] = c * self.e_nu[i] + s * self.b_nu[i];
            out.b_nu[i] = -s * self.e_nu[i] + c * self.b_nu[i];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, exp};
    use crate::slices::{surface_of, SpacetimeSpec};

    fn grid() -> Arc<PolarGrid> {
        Arc::new(PolarGrid::new(48))
    }

    #[test]
    fn round_sphere_basics() {
        let s = AxisymSurfaceData::round(grid(), 4.0);
        assert!((s.area() - 64.0 * PI).abs() < 1e-11);
        assert!(s.gauss_curvature().iter().all(|k| (k - 1.0 / 16.0).abs() < 1e-13));
        assert!((s.gauss_bonnet() - 4.0 * PI).abs() < 1e-11);
        assert!(s.pole_defect() < 1e-12);
        assert!((s.circumference() - 8.0 * PI).abs() < 1e-12);
        let unit = AxisymSurfaceData::round(grid(), 1.0);
        assert!((unit.circumference() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn gauss_bonnet_on_a_squashed_sphere() {
        let s = AxisymSurfaceData::from_metric(grid(), |x| 1.0 + 0.3 * x * x, |x| 1.2 - 0.1 * x * x + 0.0 * cos(x));
        // make poles regular: B(±1) = a(±1)
        let s = AxisymSurfaceData::from_metric(s.grid.clone(), |x| 1.0 + 0.1 * x * x, |x| 1.1 - 0.05 * x * x * x * x + 0.05 * x * x);
        assert!(s.pole_defect() < 1e-12);
        assert!((s.gauss_bonnet() - 4.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn charges_and_duality() {
        let s = surface_of(&SpacetimeSpec::reissner_nordstrom(1.0, 0.6), 3.0).unwrap();
        let c = s.charges();
        assert!((c.q_e - 0.6).abs() < 1e-13 && c.q_b.abs() < 1e-15);
        let rot = s.duality_rotate(0.7).charges();
        assert!((rot.q2 - c.q2).abs() < 1e-14);
        let vac = surface_of(&SpacetimeSpec::schwarzschild(1.0), 3.0).unwrap();
        assert_eq!(vac.charges().q2, 0.0);
    }

    #[test]
    fn hodge_recovers_gradient_and_coexact_parts() {
        let mut s = AxisymSurfaceData::round(grid(), 2.0);
        // υ₀ = e^x, p_θ = dυ₀/dθ = -sin θ e^x
        for i in 0..s.len() {
            let x = s.grid.x[i];
            s.p_theta[i] = -s.grid.s[i] * exp(x);
        }
        let hp = s.hodge_decompose().unwrap();
        let mean = s.integrate(&s.grid.sample(exp)) / s.area();
        for i in 0..s.len() {
            assert!((hp.upsilon[i] - (exp(s.grid.x[i]) - mean)).abs() < 1e-12);
            assert!(hp.varpi[i].abs() < 1e-14);
        }
        assert!(hp.residual < 1e-10);
        // ϖ₀ = x³, p_φ = (b/a) dϖ₀/dθ = sin θ (-3 x² sin θ)
        let mut t = AxisymSurfaceData::round(grid(), 2.0);
        for i in 0..t.len() {
            let (x, sn) = (t.grid.x[i], t.grid.s[i]);
            t.p_phi[i] = -3.0 * x * x * sn * sn;
        }
        let hp = t.hodge_decompose().unwrap();
        let mean = t.integrate(&t.grid.sample(|x| x * x * x)) / t.area();
        for i in 0..t.len() {
            assert!((hp.varpi[i] - (t.grid.x[i].powi(3) - mean)).abs() < 1e-12);
            assert!(hp.upsilon[i].abs() < 1e-14);
        }
        assert!(hp.residual < 1e-10);
    }

    #[test]
    fn kerr_angular_momenta_agree() {
        let spec = SpacetimeSpec::kerr(1.0, 0.6);
        for r in [2.5, 5.0, 20.0] {
            let s = surface_of(&spec, r).unwrap();
            let by = s.angular_momentum(AngularMomentumKind::BrownYork).unwrap();
            let ly = s.angular_momentum(AngularMomentumKind::LiuYau).unwrap();
            let ko = s.angular_momentum(AngularMomentumKind::Komar).unwrap();
            assert!((by - 0.6).abs() < 1e-10, "{by}");
            assert!((ly - by).abs() < 1e-10 && (ko - by).abs() < 1e-9, "{ly} {ko}");
        }
    }

    #[test]
    fn kerr_newman_total_angular_momentum_is_conserved() {
        let spec = SpacetimeSpec::kerr_newman(1.0, 0.6, 0.3);
        for r in [spec.outer_horizon().unwrap(), 3.0, 10.0] {
            let s = surface_of(&spec, r).unwrap();
            assert!((s.total_angular_momentum() - 0.6).abs() < 1e-10, "{} {}", s.angular_momentum(AngularMomentumKind::BrownYork).unwrap(), s.field_angular_momentum());
            assert!((s.charges().q_e - 0.3).abs() < 1e-12);
            assert!(s.charges().q_b.abs() < 1e-12);
        }
    }

    #[test]
    fn fast_kerr_horizon_has_negative_curvature_at_poles() {
        let spec = SpacetimeSpec::kerr(1.0, 0.9);
        let s = surface_of(&spec, spec.outer_horizon().unwrap()).unwrap();
        let k = s.gauss_curvature();
        assert!(k[0] < 0.0 && k[k.len() - 1] < 0.0);
        assert!((s.gauss_bonnet() - 4.0 * PI).abs() < 1e-9);
    }
}
