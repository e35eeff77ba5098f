//! Fixed points, Denjoy–Wolff points and the dynamical classification of
//! symbols.

mod fixed;
mod periodic;
mod sup_norm;

use std::f64::consts::TAU;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use fixed::{
    angular_derivative, denjoy_wolff, moebius_fixed_points, DwConfig, DwResult, ExtendedPoint, FixedPoint,
};
pub use periodic::{boundary_periodic_points, PeriodicPoint, MAX_PERIOD};
pub use sup_norm::{
    local_contraction_check, pseudo_hyperbolic, sup_norm_iterate, sup_profile_by, ContractionReport,
    DEFAULT_BOUNDARY_SAMPLES, DEFAULT_RADIAL_SAMPLES,
};

use crate::symbols::cmath::{dist_to_integer, frac_mul};
use crate::symbols::{Symbol, SymbolError};
use crate::Complex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("the identity map has no isolated fixed points")]
    Identity,
    #[error("elliptic automorphism: no attracting Denjoy-Wolff point")]
    EllipticInput,
    #[error("iteration did not converge after {iterations} steps (last point {last_point}, step ratio {last_rate})")]
    NonConvergence {
        iterations: usize,
        last_point: Complex,
        last_rate: f64,
    },
    #[error("{point} is not a fixed point (residual {residual:e})")]
    NotFixed { point: Complex, residual: f64 },
    #[error("unclassifiable: {0}")]
    Unclassifiable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// Period of an elliptic automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Period {
    Finite(u64),
    Aperiodic,
}

impl Serialize for Period {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(k) => s.serialize_u64(*k),
            Self::Aperiodic => s.serialize_str("aperiodic"),
        }
    }
}

impl<'de> Deserialize<'de> for Period {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            K(u64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::K(k) if k >= 1 => Ok(Self::Finite(k)),
            Repr::S(s) if s == "aperiodic" => Ok(Self::Aperiodic),
            _ => Err(serde::de::Error::custom("expected a positive integer or \"aperiodic\"")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum SymbolClass {
    Identity,
    EllipticAutomorphism {
        fixed_point: Complex,
        multiplier: Complex,
        period: Period,
    },
    InteriorDw {
        z0: Complex,
        multiplier_modulus: f64,
    },
    HyperbolicDw {
        z0: Complex,
        angular_derivative: f64,
    },
    ParabolicDw {
        z0: Complex,
        angular_derivative: f64,
    },
}

impl SymbolClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::EllipticAutomorphism { .. } => "elliptic_automorphism",
            Self::InteriorDw { .. } => "interior_dw",
            Self::HyperbolicDw { .. } => "hyperbolic_dw",
            Self::ParabolicDw { .. } => "parabolic_dw",
        }
    }

    /// Denjoy–Wolff point, when there is one.
    pub fn dw_point(&self) -> Option<Complex> {
        match *self {
            Self::InteriorDw { z0, .. } | Self::HyperbolicDw { z0, .. } | Self::ParabolicDw { z0, .. } => Some(z0),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    /// Half-width of the band `|φ′(z0)| ∈ [1 − tol_par, 1 + tol_par]`
    /// counted as parabolic.
    pub tol_par: f64,
    /// Largest period searched for elliptic automorphisms.
    pub k_max: u64,
    pub dw: DwConfig,
    /// Boundary samples for the boundary fixed point search used when
    /// iteration does not settle.
    pub boundary_samples: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            tol_par: 1e-6,
            k_max: 10_000,
            dw: DwConfig::default(),
            boundary_samples: 2048,
        }
    }
}

/// Classification together with the numerical evidence behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub kind: String,
    #[serde(flatten)]
    pub class: SymbolClass,
    /// `|φ(p) − p|` at the fixed point used, 0 for the identity.
    pub residual: f64,
    pub tol_par: f64,
    pub warnings: Vec<String>,
}

const PERIOD_TOL: f64 = 1e-10;
/// Lower edge of the band in which a hyperbolic verdict is reported with a
/// warning.
const NEAR_PARABOLIC: f64 = 1e-4;

fn is_identity(s: &Symbol) -> bool {
    const PROBES: [(f64, f64); 8] = [
        (0.0, 0.0),
        (0.5, 0.0),
        (0.0, 0.5),
        (-0.5, 0.0),
        (0.0, -0.5),
        (0.3, 0.4),
        (0.9, 0.0),
        (-0.2, -0.7),
    ];
    PROBES.iter().all(|&(re, im)| {
        let z = Complex::new(re, im);
        (s.apply(z) - z).norm() <= 1e-12
    })
}

/// Least `k ≤ k_max` with `|λ^k − 1| ≤ 1e-10`.
fn rotation_period(multiplier: Complex, k_max: u64) -> Period {
    let theta = (multiplier.arg() / TAU).rem_euclid(1.0);
    (1..=k_max)
        .find(|&k| 2.0 * (std::f64::consts::PI * dist_to_integer(frac_mul(k, theta))).sin() <= PERIOD_TOL)
        .map_or(Period::Aperiodic, Period::Finite)
}

pub fn classify(s: &Symbol) -> Result<SymbolClass, DynamicsError> {
    classify_report(s, &ClassifyConfig::default()).map(|r| r.class)
}

pub fn classify_report(s: &Symbol, cfg: &ClassifyConfig) -> Result<ClassReport, DynamicsError> {
    let report = |class, residual, warnings| ClassReport {
        kind: s.kind().to_string(),
        class,
        residual,
        tol_par: cfg.tol_par,
        warnings,
    };
    if is_identity(s) {
        return Ok(report(SymbolClass::Identity, 0.0, Vec::new()));
    }
    if let Some(m) = s.as_moebius().filter(|m| m.is_automorphism(1e-10)) {
        let interior = moebius_fixed_points(&m)?
            .into_iter()
            .filter_map(|f| f.point.finite())
            .find(|p| p.norm() < 1.0 - fixed::BOUNDARY_TOL);
        if let Some(p) = interior {
            let multiplier = s.derivative_at(p);
            return Ok(report(
                SymbolClass::EllipticAutomorphism {
                    fixed_point: p,
                    multiplier,
                    period: rotation_period(multiplier, cfg.k_max),
                },
                (s.apply(p) - p).norm(),
                Vec::new(),
            ));
        }
    }
    let dw = match denjoy_wolff(s, cfg.dw) {
        Ok(dw) => dw,
        Err(DynamicsError::NonConvergence { .. }) => fixed::boundary_dw_fallback(s, cfg.tol_par, cfg.boundary_samples)?,
        Err(e) => return Err(e),
    };
    let z0 = dw.point;
    if z0.norm() < 1.0 - fixed::BOUNDARY_TOL {
        let multiplier_modulus = s.derivative_at(z0).norm();
        return Ok(report(
            SymbolClass::InteriorDw { z0, multiplier_modulus },
            dw.residual,
            Vec::new(),
        ));
    }
    let ang = angular_derivative(s, z0)?;
    let mut warnings = Vec::new();
    let class = if (ang - 1.0).abs() <= cfg.tol_par {
        SymbolClass::ParabolicDw {
            z0,
            angular_derivative: ang,
        }
    } else if ang < 1.0 {
        if ang > 1.0 - NEAR_PARABOLIC {
            warnings.push(format!(
                "angular derivative {ang} lies within {NEAR_PARABOLIC:e} of 1; hyperbolic verdict is fragile"
            ));
        }
        SymbolClass::HyperbolicDw {
            z0,
            angular_derivative: ang,
        }
    } else {
        return Err(DynamicsError::Unclassifiable(format!(
            "angular derivative {ang} at the boundary point {z0} exceeds 1"
        )));
    };
    Ok(report(class, dw.residual, warnings))
}
