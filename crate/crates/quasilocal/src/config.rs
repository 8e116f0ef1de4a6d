//! Scenario configuration, read from TOML.
//!
//! ```toml
//! version = 1
//! name = "rn"
//! theorems = ["BY-charge", "LY-Penrose"]
//!
//! [spacetime]
//! family = "reissner-nordstrom"
//! m = 1.0
//! q = 0.6
//!
//! [region]
//! r_out = 8.0
//! ```
//!
//! Every section and key is optional except `spacetime.family`; the defaults
//! are those of [`ScenarioConfig::default`].

use std::path::Path;

use quasilocal_core::slices::{Family, Slicing, SpacetimeSpec};
use quasilocal_core::verdict::TheoremId;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, HResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    Minkowski,
    Schwarzschild,
    ReissnerNordstrom,
    Kerr,
    KerrNewman,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlicingName {
    Static,
    PainleveGullstrand,
    Isotropic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpacetimeConfig {
    pub family: FamilyName,
    pub m: f64,
    pub a: f64,
    pub q: f64,
    pub slicing: SlicingName,
}

impl Default for SpacetimeConfig {
    fn default() -> Self {
        SpacetimeConfig { family: FamilyName::Schwarzschild, m: 1.0, a: 0.0, q: 0.0, slicing: SlicingName::Static }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegionConfig {
    /// Inner radius; the outer horizon when absent.
    pub r_in: Option<f64>,
    pub r_out: f64,
    pub radial_nodes: usize,
}

impl Default for RegionConfig {
    fn default() -> Self {
        RegionConfig { r_in: None, r_out: 8.0, radial_nodes: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SurfaceConfig {
    pub polar_order: usize,
}

impl Default for SurfaceConfig {
    fn default() -> Self {
        SurfaceConfig { polar_order: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowConfig {
    pub imcf_nodes: usize,
    pub jang_nodes: usize,
    pub jang_xi_span: f64,
    pub shitam_samples: usize,
    pub shitam_rtol: f64,
    /// Shi-Tam flow runs to `r_max_factor × r₀`.
    pub shitam_r_max_factor: f64,
    /// Cylindrical-end truncations `ξ = −T`; γ is taken at the last one.
    pub truncation: Vec<f64>,
    pub deltas: Vec<f64>,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            imcf_nodes: 400,
            jang_nodes: 2001,
            jang_xi_span: 20.0,
            shitam_samples: 200,
            shitam_rtol: 1e-8,
            shitam_r_max_factor: 1e3,
            truncation: vec![4.0, 8.0, 16.0],
            deltas: vec![1e-2, 5e-3, 2.5e-3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WangYauConfig {
    pub terms: usize,
    pub bound: f64,
}

impl Default for WangYauConfig {
    fn default() -> Self {
        WangYauConfig { terms: 2, bound: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StaticReferenceConfig {
    /// Mass of the Schwarzschild reference.
    pub m: f64,
}

impl Default for StaticReferenceConfig {
    fn default() -> Self {
        StaticReferenceConfig { m: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// A verdict holds when its margin is at least `−margin`.
    pub margin: f64,
    /// Slack allowed in pointwise hypothesis checks.
    pub hypothesis: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { margin: 1e-8, hypothesis: 1e-10 }
    }
}

impl Tolerances {
    pub fn scaled(&self, s: f64) -> Self {
        Tolerances { margin: self.margin * s, hypothesis: self.hypothesis * s }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<String>,
}

/// Ranges over which the base scenario is varied; an empty list keeps the base value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepRanges {
    pub m: Vec<f64>,
    pub a: Vec<f64>,
    pub q: Vec<f64>,
    pub r_out: Vec<f64>,
    pub polar_order: Vec<usize>,
    pub radial_nodes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub version: u32,
    pub name: String,
    pub spacetime: SpacetimeConfig,
    pub region: RegionConfig,
    pub surface: SurfaceConfig,
    pub flows: FlowConfig,
    pub wang_yau: WangYauConfig,
    pub static_reference: StaticReferenceConfig,
    pub theorems: Vec<String>,
    pub tolerances: Tolerances,
    pub output: OutputConfig,
    /// Used by the `sweep` verb only.
    pub sweep: SweepRanges,
    /// Recorded in reports; every stage is deterministic.
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            version: SCHEMA_VERSION,
            name: "scenario".into(),
            spacetime: SpacetimeConfig::default(),
            region: RegionConfig::default(),
            surface: SurfaceConfig::default(),
            flows: FlowConfig::default(),
            wang_yau: WangYauConfig::default(),
            static_reference: StaticReferenceConfig::default(),
            theorems: Vec::new(),
            tolerances: Tolerances::default(),
            output: OutputConfig::default(),
            sweep: SweepRanges::default(),
            seed: 0,
        }
    }
}

impl ScenarioConfig {
    pub fn from_toml_str(s: &str) -> HResult<Self> {
        let cfg: ScenarioConfig = toml::from_str(s).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> HResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> HResult<()> {
        if self.version != SCHEMA_VERSION {
            return Err(HarnessError::Config(format!("unsupported schema version {} (expected {SCHEMA_VERSION})", self.version)));
        }
        if !(self.region.r_out > 0.0) {
            return Err(HarnessError::Config("region.r_out must be positive".into()));
        }
        if self.flows.truncation.is_empty() {
            return Err(HarnessError::Config("flows.truncation needs at least one value".into()));
        }
        for t in &self.theorems {
            if TheoremId::from_label(t).is_none() {
                return Err(HarnessError::Config(format!("unknown theorem id {t:?}")));
            }
        }
        self.spec().validate().map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn spec(&self) -> SpacetimeSpec {
        let s = &self.spacetime;
        let family = match s.family {
            FamilyName::Minkowski => Family::Minkowski,
            FamilyName::Schwarzschild => Family::Schwarzschild { m: s.m },
            FamilyName::ReissnerNordstrom => Family::ReissnerNordstrom { m: s.m, q: s.q },
            FamilyName::Kerr => Family::Kerr { m: s.m, a: s.a },
            FamilyName::KerrNewman => Family::KerrNewman { m: s.m, a: s.a, q: s.q },
        };
        let slicing = match s.slicing {
            SlicingName::Static => Slicing::Static,
            SlicingName::PainleveGullstrand => Slicing::PainleveGullstrand,
            SlicingName::Isotropic => Slicing::Isotropic,
        };
        let mut spec = SpacetimeSpec::new(family, slicing);
        spec.polar_order = self.surface.polar_order;
        spec
    }

    pub fn theorem_ids(&self) -> Vec<TheoremId> {
        self.theorems.iter().filter_map(|t| TheoremId::from_label(t)).collect()
    }
}
