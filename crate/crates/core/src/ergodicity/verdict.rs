use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::density::{boundary_gap_witness, orbit_density};
use super::ErgodicityError;
use crate::dynamics::{
    boundary_periodic_points, classify_report, pseudo_hyperbolic, sup_profile_by, ClassifyConfig, Period, SymbolClass,
    DEFAULT_BOUNDARY_SAMPLES, DEFAULT_RADIAL_SAMPLES,
};
use crate::grid::boundary_points;
use crate::symbols::Symbol;
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    /// The disc algebra.
    A,
    /// Bounded holomorphic functions.
    Hinf,
    /// Weighted space `H_v^∞`.
    Hv,
    /// Weighted space `H_v^0`.
    Hv0,
}

impl Space {
    pub const ALL: [Space; 4] = [Space::A, Space::Hinf, Space::Hv, Space::Hv0];

    pub fn name(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::Hinf => "Hinf",
            Self::Hv => "Hv",
            Self::Hv0 => "Hv0",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = ErgodicityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|sp| sp.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ErgodicityError::Precondition(format!("unknown space `{s}` (expected A, Hinf, Hv or Hv0)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErgodicityVerdict {
    pub space: Space,
    pub mean_ergodic: Decision,
    pub uniformly_mean_ergodic: Decision,
    /// Result the decision rests on; present whenever either decision is
    /// yes or no.
    pub theorem_tag: Option<String>,
    pub evidence: Vec<Evidence>,
    /// Why a decision is unknown.
    pub explanation: Option<String>,
}

impl ErgodicityVerdict {
    /// True when no decision is unknown.
    pub fn is_decided(&self) -> bool {
        self.mean_ergodic != Decision::Unknown && self.uniformly_mean_ergodic != Decision::Unknown
    }
}

/// Which weight the weighted spaces carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightModel {
    /// An arbitrary typical weight: radial, non-increasing, vanishing at the
    /// circle.
    Typical,
    /// The `v_α` weight built from a lacunary sequence of the rotation.
    VAlpha,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictBudgets {
    pub classify: ClassifyConfig,
    /// Iterates examined for uniform convergence to an interior point.
    pub sup_norm_iterations: usize,
    pub boundary_samples: usize,
    pub radial_samples: usize,
    pub periodic_max_period: usize,
    pub periodic_samples: usize,
    pub density_n: usize,
    pub density_seeds: usize,
    pub density_radii: Vec<f64>,
    /// Density yes-threshold on every estimate.
    pub density_yes: f64,
    /// Density no-threshold on some running minimum ratio.
    pub density_no: f64,
    pub weight: WeightModel,
}

impl Default for VerdictBudgets {
    fn default() -> Self {
        Self {
            classify: ClassifyConfig::default(),
            sup_norm_iterations: 256,
            boundary_samples: DEFAULT_BOUNDARY_SAMPLES,
            radial_samples: DEFAULT_RADIAL_SAMPLES,
            periodic_max_period: 4,
            periodic_samples: 2048,
            density_n: 100_000,
            density_seeds: 32,
            density_radii: vec![0.5, 0.1, 0.02],
            density_yes: 0.999,
            density_no: 0.9,
            weight: WeightModel::Typical,
        }
    }
}

/// Pseudo-hyperbolic radius around an interior Denjoy–Wolff point that,
/// once the whole disc is mapped inside it, certifies uniform convergence.
const UNIFORM_RADIUS: f64 = 0.5;

struct Builder {
    space: Space,
    evidence: Vec<Evidence>,
}

impl Builder {
    fn note(&mut self, name: &str, value: f64) {
        self.evidence.push(Evidence {
            name: name.to_string(),
            value,
        });
    }

    fn decided(self, me: Decision, ume: Decision, tag: &str) -> ErgodicityVerdict {
        ErgodicityVerdict {
            space: self.space,
            mean_ergodic: me,
            uniformly_mean_ergodic: ume,
            theorem_tag: Some(tag.to_string()),
            evidence: self.evidence,
            explanation: None,
        }
    }

    fn partial(self, me: Decision, ume: Decision, tag: &str, why: &str) -> ErgodicityVerdict {
        ErgodicityVerdict {
            explanation: Some(why.to_string()),
            ..self.decided(me, ume, tag)
        }
    }

    fn unknown(self, why: impl Into<String>) -> ErgodicityVerdict {
        ErgodicityVerdict {
            space: self.space,
            mean_ergodic: Decision::Unknown,
            uniformly_mean_ergodic: Decision::Unknown,
            theorem_tag: None,
            evidence: self.evidence,
            explanation: Some(why.into()),
        }
    }
}

use Decision::{No, Unknown, Yes};

/// Mean and uniform mean ergodicity of `C_φ` on `space`.
///
/// Symbolic decisions follow the dynamical class; numerical evidence is
/// used only where the class alone does not settle the question and is
/// reported as yes/no only when it clears the decisive margins in
/// `budgets`.
pub fn verdict(s: &Symbol, space: Space, budgets: &VerdictBudgets) -> ErgodicityVerdict {
    let b = Builder {
        space,
        evidence: Vec::new(),
    };
    let report = match classify_report(s, &budgets.classify) {
        Ok(r) => r,
        Err(e) => return b.unknown(format!("classification failed: {e}")),
    };
    match report.class {
        SymbolClass::Identity => match space {
            Space::A | Space::Hinf => b.decided(Yes, Yes, "Thm 2.2(i)"),
            Space::Hv | Space::Hv0 => b.decided(Yes, Yes, "Appendix Thm (i)"),
        },
        SymbolClass::EllipticAutomorphism {
            fixed_point, period, ..
        } => elliptic(b, fixed_point, period, budgets.weight),
        SymbolClass::InteriorDw { z0, .. } => interior(b, s, z0, budgets),
        SymbolClass::HyperbolicDw { z0, angular_derivative } => boundary(b, s, z0, angular_derivative, budgets),
        SymbolClass::ParabolicDw { z0, angular_derivative } => boundary(b, s, z0, angular_derivative, budgets),
    }
}

fn elliptic(mut b: Builder, fixed_point: Complex, period: Period, weight: WeightModel) -> ErgodicityVerdict {
    if let Period::Finite(k) = period {
        b.note("period", k as f64);
    }
    b.note("fixed_point_modulus", fixed_point.norm());
    let about_origin = fixed_point.norm() <= 1e-12;
    match (b.space, period) {
        (Space::A | Space::Hinf, Period::Finite(_)) => b.decided(Yes, Yes, "Thm 2.2(i)"),
        (Space::A, Period::Aperiodic) => b.decided(Yes, No, "Thm 2.2(ii)"),
        (Space::Hinf, Period::Aperiodic) => b.decided(No, No, "Thm 2.2(ii)"),
        (Space::Hv | Space::Hv0, _) if !about_origin => {
            b.unknown("weighted-space results cover rotations about the origin only")
        }
        (Space::Hv | Space::Hv0, Period::Finite(_)) => b.decided(Yes, Yes, "Appendix Thm (i)"),
        (Space::Hv0, Period::Aperiodic) => match weight {
            WeightModel::VAlpha => b.decided(Yes, No, "Appendix Thm (ii)"),
            WeightModel::Typical => b.partial(
                Yes,
                Unknown,
                "Appendix Thm (ii)",
                "uniform mean ergodicity depends on the weight; it fails for the v_alpha weight",
            ),
        },
        (Space::Hv, Period::Aperiodic) => match weight {
            WeightModel::VAlpha => b.decided(No, No, "Appendix Thm (ii)"),
            WeightModel::Typical => b.unknown("mean ergodicity on H_v^inf is not settled for a general typical weight"),
        },
    }
}

fn interior(mut b: Builder, s: &Symbol, z0: Complex, budgets: &VerdictBudgets) -> ErgodicityVerdict {
    if matches!(b.space, Space::Hv | Space::Hv0) {
        return b.unknown("weighted-space results cover rotations only");
    }
    let periodic = match boundary_periodic_points(s, budgets.periodic_max_period, budgets.periodic_samples) {
        Ok(p) => p,
        Err(e) => return b.unknown(format!("boundary periodic point search failed: {e}")),
    };
    if let Some(p) = periodic.first() {
        b.note("boundary_periodic_points", periodic.len() as f64);
        b.note("first_period", p.period as f64);
        b.note("first_residual", p.residual);
        return match b.space {
            Space::A => b.decided(No, No, "Thm 3.3 / Remark 3.7"),
            _ => b.decided(No, No, "Thm 3.2 + Remark 3.7"),
        };
    }
    if let Symbol::Blaschke(bl) = s {
        if bl.degree() >= 2 {
            b.note("blaschke_degree", bl.degree() as f64);
            return b.decided(No, No, "Prop 3.10");
        }
    }
    let profile = match sup_profile_by(
        s,
        budgets.sup_norm_iterations,
        budgets.boundary_samples,
        budgets.radial_samples,
        |w| pseudo_hyperbolic(w, z0),
    ) {
        Ok(p) => p,
        Err(e) => return b.unknown(format!("sup-norm sweep failed: {e}")),
    };
    match profile.iter().position(|&d| d <= UNIFORM_RADIUS) {
        Some(i) => {
            b.note("decisive_iterate", (i + 1) as f64);
            b.note("pseudo_hyperbolic_sup", profile[i]);
            b.note(
                "pseudo_hyperbolic_sup_last",
                *profile.last().expect("non-empty profile"),
            );
            match b.space {
                Space::A => b.decided(Yes, Yes, "Thm 3.3"),
                _ => b.decided(Yes, Yes, "Thm 3.2"),
            }
        }
        None => {
            b.note(
                "pseudo_hyperbolic_sup_last",
                *profile.last().expect("non-empty profile"),
            );
            b.unknown(format!(
                "iterates did not contract the grid into pseudo-hyperbolic radius {UNIFORM_RADIUS} within {} steps and no boundary periodic point of period <= {} was found",
                budgets.sup_norm_iterations, budgets.periodic_max_period
            ))
        }
    }
}

fn boundary(mut b: Builder, s: &Symbol, z0: Complex, ang: f64, budgets: &VerdictBudgets) -> ErgodicityVerdict {
    if matches!(b.space, Space::Hv | Space::Hv0) {
        return b.unknown("weighted-space results cover rotations only");
    }
    b.note("angular_derivative", ang);
    if let Ok(w) = boundary_gap_witness(s, z0, 10) {
        b.note("gap_witness_n10", w.gap);
    }
    if b.space == Space::Hinf {
        return b.decided(No, No, "Thm 3.5");
    }
    if let Some(m) = s.as_moebius() {
        let hyperbolic_automorphism = m.is_automorphism(1e-10) && ang < 1.0 - budgets.classify.tol_par;
        return if hyperbolic_automorphism {
            b.decided(No, No, "Prop 3.9 + Thm 3.5")
        } else {
            b.decided(Yes, No, "Prop 3.9 + Thm 3.5")
        };
    }
    if let Symbol::Blaschke(bl) = s {
        b.note("blaschke_degree", bl.degree() as f64);
        return b.decided(No, No, "Prop 3.10 + Thm 3.5");
    }
    let periodic = match boundary_periodic_points(s, budgets.periodic_max_period, budgets.periodic_samples) {
        Ok(p) => p,
        Err(e) => return b.unknown(format!("boundary periodic point search failed: {e}")),
    };
    let others: Vec<Complex> = periodic
        .iter()
        .map(|p| p.point)
        .filter(|p| (p - z0).norm() > 1e-6)
        .collect();
    if !others.is_empty() {
        b.note("other_boundary_periodic_points", others.len() as f64);
        return b.decided(No, No, "Remark 3.7 + Thm 3.5");
    }
    let seeds: Vec<Complex> = boundary_points(budgets.density_seeds)
        .into_iter()
        .filter(|z| (z - z0).norm() > 1e-12)
        .collect();
    let mut min_estimate = f64::INFINITY;
    let mut min_running = f64::INFINITY;
    for &z in &seeds {
        for &radius in &budgets.density_radii {
            match orbit_density(s, z, z0, radius, budgets.density_n) {
                Ok(d) => {
                    min_estimate = min_estimate.min(d.estimate);
                    min_running = min_running.min(d.running_min_ratio);
                }
                Err(e) => return b.unknown(format!("density estimate failed: {e}")),
            }
        }
    }
    b.note("density_min_estimate", min_estimate);
    b.note("density_min_running_ratio", min_running);
    if min_estimate >= budgets.density_yes {
        b.decided(Yes, No, "Thm 3.6 + Thm 3.5")
    } else if min_running <= budgets.density_no {
        b.decided(No, No, "Thm 3.6 + Thm 3.5")
    } else {
        b.partial(
            Unknown,
            No,
            "Thm 3.5",
            "orbit densities fall between the decisive margins",
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{make_automorphism, AutomorphismKind, Blaschke, Moebius, Polynomial};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn mob(a: Complex, b: Complex, cc: Complex, d: Complex) -> Symbol {
        Moebius::new(a, b, cc, d).unwrap().into()
    }

    fn quick() -> VerdictBudgets {
        VerdictBudgets {
            boundary_samples: 64,
            radial_samples: 8,
            periodic_samples: 512,
            density_n: 5_000,
            ..VerdictBudgets::default()
        }
    }

    fn tag(v: &ErgodicityVerdict) -> &str {
        v.theorem_tag.as_deref().unwrap_or("")
    }

    #[test]
    fn contraction_is_ume_on_hinf() {
        let s = mob(c(0.3, 0.4), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        let v = verdict(&s, Space::Hinf, &quick());
        assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (Yes, Yes));
        assert_eq!(tag(&v), "Thm 3.2");
    }

    #[test]
    fn z_squared_not_me_on_disc_algebra() {
        let s: Symbol = Polynomial::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
            .unwrap()
            .into();
        let v = verdict(&s, Space::A, &quick());
        assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (No, No));
        assert!(tag(&v).starts_with("Thm 3.3"));
    }

    #[test]
    fn parabolic_and_hyperbolic_automorphisms() {
        let parab: Symbol = make_automorphism(AutomorphismKind::Parabolic { translation: 1.0 })
            .unwrap()
            .into();
        let v = verdict(&parab, Space::A, &quick());
        assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (Yes, No));
        assert_eq!(tag(&v), "Prop 3.9 + Thm 3.5");

        let hyp = mob(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0));
        let v = verdict(&hyp, Space::A, &quick());
        assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (No, No));

        let v = verdict(&parab, Space::Hinf, &quick());
        assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (No, No));
        assert_eq!(tag(&v), "Thm 3.5");
    }

    #[test]
    fn rotations() {
        let golden = 0.5 * (5f64.sqrt() - 1.0);
        let rot: Symbol = Blaschke::new(std::f64::consts::TAU * golden, vec![c(0.0, 0.0)])
            .unwrap()
            .into();
        let b = quick();
        let v = verdict(&rot, Space::A, &b);
        assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (Yes, No));
        let v = verdict(&rot, Space::Hinf, &b);
        assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (No, No));
        let v = verdict(&rot, Space::Hv0, &b);
        assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (Yes, Unknown));
        assert!(v.explanation.is_some());
        let va = VerdictBudgets {
            weight: WeightModel::VAlpha,
            ..quick()
        };
        let v = verdict(&rot, Space::Hv, &va);
        assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (No, No));

        let quarter = mob(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        for sp in Space::ALL {
            let v = verdict(&quarter, sp, &b);
            assert_eq!((v.mean_ergodic, v.uniformly_mean_ergodic), (Yes, Yes), "{sp}");
        }
    }

    #[test]
    fn non_moebius_boundary_dw_uses_densities() {
        // (1 + z)²/4 is parabolic at 1 and pulls the circle into the disc
        let p: Symbol = Polynomial::new(vec![c(0.25, 0.0), c(0.5, 0.0), c(0.25, 0.0)])
            .unwrap()
            .into();
        let v = verdict(&p, Space::A, &quick());
        assert_eq!(v.uniformly_mean_ergodic, No);
        assert!(v.evidence.iter().any(|e| e.name == "density_min_estimate"));
    }

    #[test]
    fn space_parsing() {
        assert_eq!("hinf".parse::<Space>().unwrap(), Space::Hinf);
        assert_eq!("Hv0".parse::<Space>().unwrap(), Space::Hv0);
        assert!("L2".parse::<Space>().is_err());
        assert_eq!(serde_json::to_string(&Space::A).unwrap(), "\"A\"");
    }
}
