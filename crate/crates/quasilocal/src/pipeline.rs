//! Scenario pipeline: data → surfaces → embedding → Jang → flows → conformal →
//! masses, evaluated lazily and cached, then assembled into verdicts.

use std::cell::OnceCell;
use std::sync::Arc;

use quasilocal_core::conformal::{compose, mollify_corner, truncation_sweep, CompositeRadialManifold, InnerCondition, TruncationSweep};
use quasilocal_core::embedding::{embed_rotational, embed_static_schwarzschild, EmbeddedProfile};
use quasilocal_core::flows::{beta_ratio, imcf_radial, lambda_ratio, shi_tam_flow, ImcfStart, ImcfTrace, ShiTamOptions, ShiTamTrace};
use quasilocal_core::jang::{jang_boundary, solve_jang_radial, JangOptions, JangSolution};
use quasilocal_core::masses::{brown_york, liu_yau, static_mass, wang_yau_mass, StaticKind, WangYauMass};
use quasilocal_core::math::spaced;
use quasilocal_core::quad::PolarGrid;
use quasilocal_core::slices::{
    build_radial_data, circumference, energy_condition_report, horizon_locate, radial_point, surface_of, EnergyReport, Horizon,
    RadialInitialData, SpacetimeSpec,
};
use quasilocal_core::surface::{AngularMomentumKind, AxisymSurfaceData};
use quasilocal_core::verdict::{self, Status, TheoremId, VerdictRecord};
use quasilocal_core::Error as CoreError;

use crate::config::{ScenarioConfig, Tolerances};
use crate::error::{stage, HResult, HarnessError};

const PI: f64 = std::f64::consts::PI;

/// Quantities on the outer surface `Σ`.
#[derive(Debug, Clone)]
pub struct SigmaStage {
    pub radius: f64,
    pub surface: AxisymSurfaceData,
    pub profile: EmbeddedProfile,
    pub area: f64,
    pub m_by: Option<f64>,
    pub m_ly: Option<f64>,
    pub q: f64,
    pub j_by: f64,
    pub j_total: f64,
    pub min_gauss: f64,
    pub min_h: f64,
    pub min_hvec2: f64,
}

#[derive(Debug, Clone)]
pub struct HorizonStage {
    pub horizon: Horizon,
    pub q: f64,
    /// Total angular momentum through the horizon, fields included.
    pub j: f64,
}

#[derive(Debug, Clone)]
pub struct ImcfStage {
    pub trace: ImcfTrace,
    pub alpha2: f64,
    pub area_star: f64,
    pub circumference: f64,
    pub beta: f64,
}

#[derive(Debug, Clone)]
pub struct MollificationRow {
    pub delta: f64,
    pub sup_abs_scalar: f64,
    pub band_integral: f64,
    pub spike_amplitude: f64,
}

#[derive(Debug, Clone)]
pub struct GlueStage {
    pub jang: JangSolution,
    pub exterior: ShiTamTrace,
    pub composite: CompositeRadialManifold,
    pub sweep: TruncationSweep,
    pub gamma: f64,
    pub lambda: f64,
    pub a_coef: f64,
    pub p_value: f64,
    pub conformal_mass: f64,
    pub end: InnerCondition,
    pub mollification: Vec<MollificationRow>,
}

#[derive(Debug, Clone)]
pub struct StaticStage {
    pub reference_mass: f64,
    pub profile: EmbeddedProfile,
    pub mass: f64,
    pub star_shaped: bool,
    pub two_convex: bool,
    pub max_ricci_normal: f64,
}

/// Pointwise hypothesis audit over `(r_in, r_out]`.
#[derive(Debug, Clone)]
pub struct Checks {
    pub energy: EnergyReport,
    pub areas_increasing: bool,
    pub min_h: f64,
    pub min_theta_plus: f64,
    pub min_theta_minus: f64,
    pub charge_drift: f64,
    /// `min(R − 2(|E|² + |B|²))` for spherical data.
    pub min_field_slack: Option<f64>,
    pub max_trace_k: Option<f64>,
    pub max_j_eta: f64,
}

pub struct Pipeline {
    pub cfg: ScenarioConfig,
    pub spec: SpacetimeSpec,
    pub tol: Tolerances,
    data: OnceCell<HResult<RadialInitialData>>,
    horizon: OnceCell<HResult<HorizonStage>>,
    sigma: OnceCell<HResult<SigmaStage>>,
    imcf: OnceCell<HResult<ImcfStage>>,
    glue: OnceCell<HResult<GlueStage>>,
    wy: OnceCell<HResult<WangYauMass>>,
    stat: OnceCell<HResult<StaticStage>>,
    checks: OnceCell<HResult<Checks>>,
}

fn cached<'a, T>(cell: &'a OnceCell<HResult<T>>, f: impl FnOnce() -> HResult<T>) -> HResult<&'a T> {
    match cell.get_or_init(f) {
        Ok(v) => Ok(v),
        Err(e) => Err(e.clone()),
    }
}

impl Pipeline {
    pub fn new(cfg: ScenarioConfig) -> HResult<Self> {
        cfg.validate()?;
        Ok(Pipeline {
            spec: cfg.spec(),
            tol: cfg.tolerances.clone(),
            cfg,
            data: OnceCell::new(),
            horizon: OnceCell::new(),
            sigma: OnceCell::new(),
            imcf: OnceCell::new(),
            glue: OnceCell::new(),
            wy: OnceCell::new(),
            stat: OnceCell::new(),
            checks: OnceCell::new(),
        })
    }

    pub fn with_tolerance_scale(mut self, s: f64) -> Self {
        self.tol = self.tol.scaled(s);
        self
    }

    pub fn r_in(&self) -> HResult<f64> {
        match self.cfg.region.r_in {
            Some(r) => Ok(r),
            None => Ok(self.horizon()?.horizon.radius),
        }
    }

    pub fn r_out(&self) -> f64 {
        self.cfg.region.r_out
    }

    pub fn data(&self) -> HResult<&RadialInitialData> {
        cached(&self.data, || {
            let r_in = self.r_in()?;
            if !(self.r_out() > r_in) {
                return Err(HarnessError::Config(format!("r_out = {} must exceed r_in = {r_in}", self.r_out())));
            }
            // a little room past Σ for the IMCF outward-minimizing scan
            stage("build-data", build_radial_data(self.spec, r_in, 1.25 * self.r_out(), self.cfg.region.radial_nodes))
        })
    }

    pub fn horizon(&self) -> HResult<&HorizonStage> {
        cached(&self.horizon, || {
            let horizon = stage("horizon", horizon_locate(&self.spec))?;
            let s = stage("surface", surface_of(&self.spec, horizon.radius))?;
            Ok(HorizonStage { horizon, q: s.charges().q2.sqrt(), j: s.total_angular_momentum() })
        })
    }

    pub fn sigma(&self) -> HResult<&SigmaStage> {
        cached(&self.sigma, || {
            let r = self.r_out();
            let surface = stage("surface", surface_of(&self.spec, r))?;
            let profile = stage("embed", embed_rotational(&surface))?;
            let m_by = brown_york(&surface, &profile).ok();
            let m_ly = liu_yau(&surface, &profile).ok();
            let hv2 = surface.hvec_norm2();
            Ok(SigmaStage {
                radius: r,
                area: surface.area(),
                m_by,
                m_ly,
                q: surface.charges().q2.sqrt(),
                j_by: stage("surface", surface.angular_momentum(AngularMomentumKind::BrownYork))?,
                j_total: surface.total_angular_momentum(),
                min_gauss: min(&surface.gauss_curvature()),
                min_h: min(&surface.h),
                min_hvec2: min(&hv2),
                surface,
                profile,
            })
        })
    }

    pub fn imcf(&self) -> HResult<&ImcfStage> {
        cached(&self.imcf, || {
            let data = self.data()?;
            let start = if self.cfg.region.r_in.is_none() { ImcfStart::Horizon } else { ImcfStart::Radius(self.r_in()?) };
            let trace = stage("imcf", imcf_radial(data, start, self.r_out(), self.cfg.flows.imcf_nodes))?;
            let circ = stage("imcf", circumference(&self.spec, self.r_in()?, self.r_out()))?;
            let area_star = trace.start_area();
            Ok(ImcfStage { alpha2: trace.alpha2, beta: beta_ratio(trace.alpha2, area_star, circ), area_star, circumference: circ, trace })
        })
    }

    pub fn glue(&self) -> HResult<&GlueStage> {
        cached(&self.glue, || {
            let spec = self.spec;
            let f = &self.cfg.flows;
            let rh = self.horizon()?.horizon.radius;
            let r_min = spec.coordinate_floor().max(0.5 * rh);
            let data = stage("jang", build_radial_data(spec, r_min, self.r_out(), self.cfg.region.radial_nodes.max(400)))?;
            let jo = JangOptions { nodes: f.jang_nodes, xi_span: f.jang_xi_span, ..Default::default() };
            let jang = stage("jang", solve_jang_radial(&data, 0.0, true, jo))?;
            let b = stage("jang", jang_boundary(&jang))?;
            let r0 = *jang.rt.last().expect("nonempty Jang grid");
            let n = 8;
            let s = AxisymSurfaceData::round(Arc::new(PolarGrid::new(n)), r0);
            let prof = stage("shitam", embed_rotational(&s))?;
            // u₀ = H₀/(H̄ − X(ν̄)) matches the exterior mean curvature to the Jang side
            let u0 = vec![(2.0 / r0) / b.h_plus; n];
            let opts = ShiTamOptions { rtol: f.shitam_rtol, samples: f.shitam_samples, ..Default::default() };
            let exterior = stage("shitam", shi_tam_flow(&prof, &u0, f.shitam_r_max_factor * r0, opts))?;
            let composite = stage("glue", compose(&jang, &exterior))?;
            let last_t = *f.truncation.last().expect("validated");
            let end = quasilocal_core::conformal::classify_end(&composite, last_t);
            let area_h = self.horizon()?.horizon.area;
            let sweep = stage("conformal", truncation_sweep(&composite, &f.truncation, end, area_h))?;
            let sol = sweep.solutions.last().expect("validated");
            let gamma = *sweep.gamma.last().expect("validated");
            let start = composite.len() - sol.u.len();
            let barred: Vec<f64> = composite.rho[start..].iter().map(|r| 4.0 * PI * r * r).collect();
            let conformal: Vec<f64> = barred.iter().zip(&sol.u).map(|(a, u)| a * u * u * u * u).collect();
            let lambda = stage("conformal", lambda_ratio(&conformal, &barred, barred.len() - 1, area_h))?.lambda;
            let mut mollification = Vec::new();
            for &d in &f.deltas {
                let mc = stage("glue", mollify_corner(&composite.band, d))?;
                mollification.push(MollificationRow {
                    delta: d,
                    sup_abs_scalar: mc.sup_abs_scalar,
                    band_integral: mc.band_integral,
                    spike_amplitude: mc.spike_amplitude,
                });
            }
            Ok(GlueStage {
                a_coef: sol.a_coef,
                p_value: sol.p_value,
                conformal_mass: composite.conformal_mass(sol),
                jang,
                exterior,
                sweep: sweep.clone(),
                composite,
                gamma,
                lambda,
                end,
                mollification,
            })
        })
    }

    pub fn wang_yau(&self) -> HResult<&WangYauMass> {
        cached(&self.wy, || {
            let s = &self.sigma()?.surface;
            stage("mass", wang_yau_mass(s, self.cfg.wang_yau.terms, self.cfg.wang_yau.bound))
        })
    }

    pub fn static_reference(&self) -> HResult<&StaticStage> {
        cached(&self.stat, || {
            let m = self.cfg.static_reference.m;
            let s = &self.sigma()?.surface;
            let profile = stage("embed", embed_static_schwarzschild(s, m))?;
            let mass = stage("mass", static_mass(s, &profile, StaticKind::LiuYau))?;
            Ok(StaticStage {
                reference_mass: m,
                star_shaped: profile.star_shaped(),
                two_convex: profile.two_convex(),
                max_ricci_normal: profile.max_ricci_normal(),
                profile,
                mass,
            })
        })
    }

    pub fn checks(&self) -> HResult<&Checks> {
        cached(&self.checks, || {
            let data = self.data()?;
            let energy = energy_condition_report(data);
            let r_in = self.r_in()?;
            let rs: Vec<f64> = spaced(r_in, self.r_out(), 48, true).into_iter().skip(1).collect();
            let mut areas = Vec::with_capacity(rs.len());
            let (mut min_h, mut min_tp, mut min_tm) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
            let mut charges = Vec::with_capacity(rs.len());
            let mut field_slack: Option<f64> = None;
            let mut trace_k: Option<f64> = None;
            for &r in &rs {
                let s = stage("surface", surface_of(&self.spec, r))?;
                areas.push(s.area());
                min_h = min_h.min(min(&s.h));
                min_tp = min_tp.min(min(&s.theta_plus()));
                min_tm = min_tm.min(min(&s.theta_minus()));
                charges.push(s.charges().q2.sqrt());
                if !self.spec.is_rotating() {
                    let p = stage("surface", radial_point(&self.spec, r))?;
                    let slack = p.scalar_curvature() - 2.0 * (p.e_nu * p.e_nu + p.b_nu * p.b_nu);
                    field_slack = Some(field_slack.map_or(slack, |v: f64| v.min(slack)));
                    trace_k = Some(trace_k.map_or(p.trace_k().abs(), |v: f64| v.max(p.trace_k().abs())));
                }
            }
            let q_ref = charges[charges.len() - 1];
            let charge_drift = charges.iter().map(|q| (q - q_ref).abs()).fold(0.0, f64::max);
            let max_j_eta = match &data.polar {
                Some(slab) => slab.j_eta.iter().map(|v| v.abs()).fold(0.0, f64::max),
                None => data.j_eta.iter().map(|v| v.abs()).fold(0.0, f64::max),
            };
            Ok(Checks {
                energy,
                areas_increasing: areas.windows(2).all(|w| w[1] > w[0]),
                min_h,
                min_theta_plus: min_tp,
                min_theta_minus: min_tm,
                charge_drift,
                min_field_slack: field_slack,
                max_trace_k: trace_k,
                max_j_eta,
            })
        })
    }

    /// Assemble one theorem's verdict.
    pub fn verify(&self, theorem: TheoremId) -> HResult<VerdictRecord> {
        let name = self.cfg.name.clone();
        let rec = VerdictRecord::new(theorem, name);
        match theorem {
            TheoremId::ByCharge => {
                let (sg, hz, im) = (self.sigma()?, self.horizon()?, self.imcf()?);
                let m_by = need(sg.m_by, "mass", "Brown-York mass undefined")?;
                let gap_rhs = verdict::by_charge(m_by, hz.q, im.alpha2, im.area_star)[1].rhs;
                let rec = rec
                    .with_parts(verdict::by_charge(m_by, hz.q, im.alpha2, im.area_star))
                    .constant("m_BY", m_by, "embed")
                    .constant("Q", hz.q, "horizon")
                    .constant("alpha2", im.alpha2, "imcf")
                    .constant("area_star", im.area_star, "imcf")
                    .constant("saturation_gap", hz.q.abs() - gap_rhs, "verify");
                Ok(self.charge_hypotheses(self.boundary_hypotheses(rec)?)?)
            }
            TheoremId::ByAm => {
                let (sg, hz, im) = (self.sigma()?, self.horizon()?, self.imcf()?);
                let m_by = need(sg.m_by, "mass", "Brown-York mass undefined")?;
                let rec = rec
                    .with_parts(verdict::by_am(m_by, hz.j, im.alpha2, im.area_star, im.circumference))
                    .constant("m_BY", m_by, "embed")
                    .constant("J", hz.j, "horizon")
                    .constant("alpha2", im.alpha2, "imcf")
                    .constant("area_star", im.area_star, "imcf")
                    .constant("C", im.circumference, "imcf");
                Ok(self.am_hypotheses(self.boundary_hypotheses(rec)?)?)
            }
            TheoremId::ByCombined => {
                let (sg, hz, im) = (self.sigma()?, self.horizon()?, self.imcf()?);
                let m_by = need(sg.m_by, "mass", "Brown-York mass undefined")?;
                let rec = rec
                    .with_parts(verdict::by_combined(m_by, hz.q, hz.j, im.alpha2, im.beta, im.area_star))
                    .constant("m_BY", m_by, "embed")
                    .constant("Q", hz.q, "horizon")
                    .constant("J", hz.j, "horizon")
                    .constant("alpha2", im.alpha2, "imcf")
                    .constant("beta", im.beta, "imcf")
                    .constant("area_star", im.area_star, "imcf");
                let rec = self.am_hypotheses(self.boundary_hypotheses(rec)?)?;
                Ok(self.charge_hypotheses(rec)?)
            }
            TheoremId::LyPenrose | TheoremId::WyPenrose | TheoremId::StaticLy => {
                let (lhs, rec) = self.penrose_lhs(theorem, rec)?;
                let (hz, gl) = (self.horizon()?, self.glue()?);
                let rec = rec
                    .with_parts(verdict::penrose_like(lhs, gl.gamma, hz.horizon.area, hz.q, hz.j))
                    .constant("gamma", gl.gamma, "conformal")
                    .constant("area_h", hz.horizon.area, "horizon")
                    .constant("Q", hz.q, "horizon")
                    .constant("J", hz.j, "horizon")
                    .constant("gamma_truncation_drift", gl.sweep.drift, "conformal");
                let rec = self.penrose_hypotheses(rec)?
                    .hypothesis("enhanced energy condition", Status::from_bool(self.checks()?.energy.dec_em_ok))
                    .hypothesis("axisymmetric", Status::Pass)
                    .hypothesis("horizon stable", Status::Unchecked);
                Ok(rec)
            }
            TheoremId::LyPenroseQj | TheoremId::WyPenroseQj | TheoremId::StaticLyQj => {
                let (lhs, rec) = self.penrose_lhs(theorem, rec)?;
                let (hz, gl, im) = (self.horizon()?, self.glue()?, self.imcf()?);
                let rec = rec
                    .with_parts([verdict::penrose_like_qj(lhs, gl.gamma, gl.lambda, hz.horizon.area, hz.q, hz.j, im.circumference)])
                    .constant("gamma", gl.gamma, "conformal")
                    .constant("lambda", gl.lambda, "conformal")
                    .constant("area_h", hz.horizon.area, "horizon")
                    .constant("Q", hz.q, "horizon")
                    .constant("J", hz.j, "horizon")
                    .constant("C", im.circumference, "imcf");
                let ck = self.checks()?;
                let rec = self.penrose_hypotheses(rec)?
                    .hypothesis("axisymmetric", Status::Pass)
                    .hypothesis("eta hypersurface orthogonal", Status::Pass)
                    .hypothesis("J(eta) = 0", Status::from_bool(ck.max_j_eta <= self.tol.hypothesis))
                    .hypothesis("single horizon component", Status::Pass)
                    .note("λ uses the sampled leaves of the radial conformal problem; eta ∧ dη = 0 holds for the diagonal slice metrics");
                Ok(rec)
            }
            TheoremId::HorizonArea => {
                let hz = self.horizon()?;
                let rec = rec
                    .with_parts([verdict::horizon_area(hz.horizon.area, hz.q, hz.j)])
                    .constant("area_h", hz.horizon.area, "horizon")
                    .constant("Q", hz.q, "horizon")
                    .constant("J", hz.j, "horizon")
                    .hypothesis("axisymmetric", Status::Pass)
                    .hypothesis("dominant energy condition", Status::from_bool(self.checks()?.energy.dec_ok))
                    .hypothesis("horizon stable", Status::Unchecked);
                Ok(rec)
            }
            TheoremId::Bekenstein => {
                let (sg, hz, im) = (self.sigma()?, self.horizon()?, self.imcf()?);
                let m_by = need(sg.m_by, "mass", "Brown-York mass undefined")?;
                let big_r = (sg.area / (4.0 * PI)).sqrt();
                let rc = im.circumference / (2.0 * PI);
                let rec = rec
                    .with_parts(verdict::bekenstein(m_by, hz.q, hz.j, im.alpha2, big_r, rc))
                    .constant("m_BY", m_by, "embed")
                    .constant("R", big_r, "surface")
                    .constant("R_c", rc, "imcf")
                    .constant("alpha2", im.alpha2, "imcf");
                Ok(self.boundary_hypotheses(rec)?)
            }
        }
    }

    fn penrose_lhs(&self, theorem: TheoremId, rec: VerdictRecord) -> HResult<(f64, VerdictRecord)> {
        match theorem {
            TheoremId::LyPenrose | TheoremId::LyPenroseQj => {
                let m = need(self.sigma()?.m_ly, "mass", "Liu-Yau mass undefined")?;
                Ok((m, rec.constant("m_LY", m, "embed")))
            }
            TheoremId::WyPenrose | TheoremId::WyPenroseQj => {
                let wy = self.wang_yau()?;
                let mut rec = rec
                    .constant("m_WY", wy.mass, "mass")
                    .hypothesis("admissible tau", Status::Pass)
                    .note("verified for the achieved τ, not a certified infimum");
                rec.optimality_residual = Some(wy.residual.sup);
                Ok((wy.mass, rec))
            }
            _ => {
                let st = self.static_reference()?;
                let lhs = st.reference_mass + st.mass;
                let rec = rec
                    .constant("m_ref", st.reference_mass, "static_reference")
                    .constant("m_static_LY", st.mass, "mass")
                    .hypothesis("star-shaped in reference", Status::from_bool(st.star_shaped))
                    .hypothesis("2-convex in reference", Status::from_bool(st.two_convex))
                    .hypothesis("Ric(nu, nu) <= 0", Status::from_bool(st.max_ricci_normal <= self.tol.hypothesis))
                    .note("γ is taken from the flat-reference glued manifold");
                Ok((lhs, rec))
            }
        }
    }

    /// Outer surface and inner boundary hypotheses of the Brown-York bounds.
    fn boundary_hypotheses(&self, rec: VerdictRecord) -> HResult<VerdictRecord> {
        let (sg, ck) = (self.sigma()?, self.checks()?);
        let om = if ck.areas_increasing { Status::Proxy } else { Status::Fail };
        Ok(rec
            .hypothesis("inner boundary strictly outerminimizing", om)
            .hypothesis("horizon only compact minimal surface", Status::from_bool(ck.min_h > 0.0))
            .hypothesis("Sigma mean convex", Status::from_bool(sg.min_h > 0.0))
            .hypothesis("Sigma positive Gauss curvature", Status::from_bool(sg.min_gauss > 0.0)))
    }

    fn charge_hypotheses(&self, rec: VerdictRecord) -> HResult<VerdictRecord> {
        let ck = self.checks()?;
        let tol = self.tol.hypothesis;
        let field = match ck.min_field_slack {
            Some(v) => Status::from_bool(v >= -tol),
            None => Status::Unchecked,
        };
        Ok(rec
            .hypothesis("E, B divergence free", Status::from_bool(ck.charge_drift <= 1e-8))
            .hypothesis("R >= 2(|E|^2 + |B|^2)", field))
    }

    fn am_hypotheses(&self, rec: VerdictRecord) -> HResult<VerdictRecord> {
        let ck = self.checks()?;
        let tol = self.tol.hypothesis;
        let maximal = match ck.max_trace_k {
            Some(v) => Status::from_bool(v <= tol),
            // Boyer-Lindquist slices are maximal
            None => Status::Pass,
        };
        Ok(rec
            .hypothesis("maximal", maximal)
            .hypothesis("axisymmetric", Status::Pass)
            .hypothesis("dominant energy condition", Status::from_bool(ck.energy.dec_ok))
            .hypothesis("J(eta) = 0", Status::from_bool(ck.max_j_eta <= tol)))
    }

    fn penrose_hypotheses(&self, rec: VerdictRecord) -> HResult<VerdictRecord> {
        let (sg, ck) = (self.sigma()?, self.checks()?);
        let strict = if ck.energy.strict_on_horizon { Status::Pass } else { Status::Waived };
        let mut rec = rec
            .hypothesis("dominant energy condition", Status::from_bool(ck.energy.dec_ok))
            .hypothesis("DEC strict on horizons", strict)
            .hypothesis("apparent horizon present", Status::from_bool(self.spec.is_black_hole()))
            .hypothesis("no other apparent horizons", Status::from_bool(ck.min_theta_plus > 0.0 && ck.min_theta_minus > 0.0))
            .hypothesis("Sigma untrapped", Status::from_bool(sg.min_hvec2 > 0.0 && sg.min_h > 0.0))
            .hypothesis("Sigma positive Gauss curvature", Status::from_bool(sg.min_gauss > 0.0));
        if strict == Status::Waived {
            rec = rec.note("strict DEC on the horizon fails for exact vacuum and electrovacuum data and is waived");
        }
        Ok(rec)
    }

    /// Verdicts for every theorem in the config; pipeline errors are kept per theorem.
    pub fn run(&self) -> Vec<(TheoremId, HResult<VerdictRecord>)> {
        self.cfg.theorem_ids().into_iter().map(|t| (t, self.verify(t))).collect()
    }

    pub fn data_if_ready(&self) -> Option<&RadialInitialData> {
        self.data.get().and_then(|r| r.as_ref().ok())
    }
    pub fn horizon_if_ready(&self) -> Option<&HorizonStage> {
        self.horizon.get().and_then(|r| r.as_ref().ok())
    }
    pub fn sigma_if_ready(&self) -> Option<&SigmaStage> {
        self.sigma.get().and_then(|r| r.as_ref().ok())
    }
    pub fn imcf_if_ready(&self) -> Option<&ImcfStage> {
        self.imcf.get().and_then(|r| r.as_ref().ok())
    }
    pub fn glue_if_ready(&self) -> Option<&GlueStage> {
        self.glue.get().and_then(|r| r.as_ref().ok())
    }
    pub fn wang_yau_if_ready(&self) -> Option<&WangYauMass> {
        self.wy.get().and_then(|r| r.as_ref().ok())
    }
    pub fn static_if_ready(&self) -> Option<&StaticStage> {
        self.stat.get().and_then(|r| r.as_ref().ok())
    }
    pub fn checks_if_ready(&self) -> Option<&Checks> {
        self.checks.get().and_then(|r| r.as_ref().ok())
    }
}

fn min(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn need(v: Option<f64>, st: &'static str, msg: &str) -> HResult<f64> {
    v.ok_or_else(|| HarnessError::Stage { stage: st, source: CoreError::MeanCurvature(msg.into()) })
}
