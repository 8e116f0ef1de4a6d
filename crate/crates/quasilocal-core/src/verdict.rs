//! Left and right sides of the mass inequalities, assembled from upstream
//! numbers, with a record of which hypotheses were checked.

use alloc::string::String;
use alloc::vec::Vec;

use crate::math::{sqrt, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    ByCharge,
    ByAm,
    ByCombined,
    LyPenrose,
    LyPenroseQj,
    WyPenrose,
    WyPenroseQj,
    StaticLy,
    StaticLyQj,
    HorizonArea,
    Bekenstein,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::ByCharge,
        TheoremId::ByAm,
        TheoremId::ByCombined,
        TheoremId::LyPenrose,
        TheoremId::LyPenroseQj,
        TheoremId::WyPenrose,
        TheoremId::WyPenroseQj,
        TheoremId::StaticLy,
        TheoremId::StaticLyQj,
        TheoremId::HorizonArea,
        TheoremId::Bekenstein,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            TheoremId::ByCharge => "BY-charge",
            TheoremId::ByAm => "BY-AM",
            TheoremId::ByCombined => "BY-combined",
            TheoremId::LyPenrose => "LY-Penrose",
            TheoremId::LyPenroseQj => "LY-Penrose-QJ",
            TheoremId::WyPenrose => "WY-Penrose",
            TheoremId::WyPenroseQj => "WY-Penrose-QJ",
            TheoremId::StaticLy => "static-LY",
            TheoremId::StaticLyQj => "static-LY-QJ",
            TheoremId::HorizonArea => "horizon-area",
            TheoremId::Bekenstein => "Bekenstein",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|t| t.label().eq_ignore_ascii_case(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Unchecked,
    /// Passed through a radial stand-in for a global property.
    Proxy,
    /// Known to fail on the exact data and set aside; see the record notes.
    Waived,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unchecked => "unchecked",
            Status::Proxy => "proxy",
            Status::Waived => "waived",
        }
    }
}

/// One side-by-side comparison `lhs ≥ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inequality {
    pub part: &'static str,
    pub lhs: f64,
    pub rhs: f64,
}

impl Inequality {
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constant {
    pub name: &'static str,
    pub value: f64,
    /// Stage that produced the value.
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerdictRecord {
    pub theorem: TheoremId,
    pub scenario: String,
    pub parts: Vec<Inequality>,
    pub hypotheses: Vec<(&'static str, Status)>,
    pub constants: Vec<Constant>,
    pub notes: Vec<String>,
    /// Residual of the optimal-embedding equation for Wang-Yau verdicts.
    pub optimality_residual: Option<f64>,
}

impl VerdictRecord {
    pub fn new(theorem: TheoremId, scenario: impl Into<String>) -> Self {
        VerdictRecord {
            theorem,
            scenario: scenario.into(),
            parts: Vec::new(),
            hypotheses: Vec::new(),
            constants: Vec::new(),
            notes: Vec::new(),
            optimality_residual: None,
        }
    }

    pub fn hypothesis(mut self, name: &'static str, status: Status) -> Self {
        self.hypotheses.push((name, status));
        self
    }

    pub fn constant(mut self, name: &'static str, value: f64, source: &'static str) -> Self {
        self.constants.push(Constant { name, value, source });
        self
    }

    pub fn with_parts(mut self, parts: impl IntoIterator<Item = Inequality>) -> Self {
        self.parts.extend(parts);
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    /// No hypothesis failed outright.
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|(_, s)| *s != Status::Fail)
    }

    /// Smallest margin over the parts, suppressed when a hypothesis fails.
    pub fn margin(&self) -> Option<f64> {
        if !self.hypotheses_hold() || self.parts.is_empty() {
            return None;
        }
        Some(self.parts.iter().map(|p| p.margin()).fold(f64::INFINITY, f64::min))
    }

    /// Hypotheses hold and every margin is at least `−tol`.
    pub fn verified(&self, tol: f64) -> bool {
        self.margin().is_some_and(|m| m >= -tol)
    }
}

/// `(1/2)|Q_h|` and `|Q|/2 + α²√(π/|Σ_*|)Q²`.
pub fn by_charge(m_by: f64, q: f64, alpha2: f64, area_star: f64) -> [Inequality; 2] {
    [
        Inequality { part: "total", lhs: m_by, rhs: 0.5 * q.abs() },
        Inequality { part: "refined", lhs: m_by, rhs: 0.5 * q.abs() + alpha2 * sqrt(PI / area_star) * q * q },
    ]
}

/// `√(|𝒥|/2)` and `√(|𝒥|/2) + (2πα)²/𝒞² √(4π/|Σ_*|) 𝒥²`.
pub fn by_am(m_by: f64, j: f64, alpha2: f64, area_star: f64, circumference: f64) -> [Inequality; 2] {
    let base = sqrt(0.5 * j.abs());
    let c2 = circumference * circumference;
    [
        Inequality { part: "total", lhs: m_by, rhs: base },
        Inequality { part: "refined", lhs: m_by, rhs: base + 4.0 * PI * PI * alpha2 / c2 * sqrt(4.0 * PI / area_star) * j * j },
    ]
}

/// `(1/2)(Q⁴ + 4𝒥²)^{1/4}` and the squared form
/// `(√(|Σ_*|/16π) + α²√(π/|Σ_*|)Q²)² + (β²/2)4π𝒥²/|Σ_*|`.
pub fn by_combined(m_by: f64, q: f64, j: f64, alpha2: f64, beta: f64, area_star: f64) -> [Inequality; 2] {
    let q2 = q * q;
    let first = 0.5 * sqrt(sqrt(q2 * q2 + 4.0 * j * j));
    let a = sqrt(area_star / (16.0 * PI)) + alpha2 * sqrt(PI / area_star) * q2;
    [
        Inequality { part: "total", lhs: m_by, rhs: first },
        Inequality { part: "squared", lhs: m_by * m_by, rhs: a * a + 0.5 * beta * beta * 4.0 * PI * j * j / area_star },
    ]
}

/// `γ/(1+γ)`.
pub fn gamma_factor(gamma: f64) -> f64 {
    gamma / (1.0 + gamma)
}

/// `γ/(1+γ)√(|Σ_h|/4π)` and `γ/(1+γ)(Q⁴ + 4𝒥²)^{1/4}`.
pub fn penrose_like(mass: f64, gamma: f64, area_h: f64, q: f64, j: f64) -> [Inequality; 2] {
    let g = gamma_factor(gamma);
    let q2 = q * q;
    [
        Inequality { part: "area", lhs: mass, rhs: g * sqrt(area_h / (4.0 * PI)) },
        Inequality { part: "charge-am", lhs: mass, rhs: g * sqrt(sqrt(q2 * q2 + 4.0 * j * j)) },
    ]
}

/// `(γ/(1+γ)√(|Σ_h|/4π) + λ√(π/|Σ_h|)Q²)² + λγ/(1+γ) 8π²𝒥²/𝒞²` against `mass²`.
pub fn penrose_like_qj(mass: f64, gamma: f64, lambda: f64, area_h: f64, q: f64, j: f64, circumference: f64) -> Inequality {
    let g = gamma_factor(gamma);
    let a = g * sqrt(area_h / (4.0 * PI)) + lambda * sqrt(PI / area_h) * q * q;
    let am = if j == 0.0 { 0.0 } else { lambda * g * 8.0 * PI * PI * j * j / (circumference * circumference) };
    Inequality { part: "squared", lhs: mass * mass, rhs: a * a + am }
}

/// `|Σ_h| ≥ 4π√(Q⁴ + 4𝒥²)`.
pub fn horizon_area(area: f64, q: f64, j: f64) -> Inequality {
    let q2 = q * q;
    Inequality { part: "area", lhs: area, rhs: 4.0 * PI * sqrt(q2 * q2 + 4.0 * j * j) }
}

/// Bekenstein-like consequences with the quasi-local mass as energy:
/// `α²Q²/2ℛ`, `α²𝒥²/2ℛ_c²` (against `m²`), and `α⁴Q⁴/4ℛ² + α²𝒥²/2ℛ_c²`.
pub fn bekenstein(mass: f64, q: f64, j: f64, alpha2: f64, areal_radius: f64, circumference_radius: f64) -> [Inequality; 3] {
    let q2 = q * q;
    let rc2 = circumference_radius * circumference_radius;
    [
        Inequality { part: "charge", lhs: mass, rhs: 0.5 * alpha2 * q2 / areal_radius },
        Inequality { part: "am", lhs: mass * mass, rhs: 0.5 * alpha2 * j * j / rc2 },
        Inequality {
            part: "combined",
            lhs: mass * mass,
            rhs: 0.25 * alpha2 * alpha2 * q2 * q2 / (areal_radius * areal_radius) + 0.5 * alpha2 * j * j / rc2,
        },
    ]
}
