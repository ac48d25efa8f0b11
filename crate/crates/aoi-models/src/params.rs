//! System parameters, the (α, δ) rate derivation, and NOMA feasibility.
//!
//! Six rates describe a system: per-user arrival rates λ₁, λ₂; solo service
//! rates μ₁, μ₂ (user alone in the system, OMA always); superposed service
//! rates μ′₁, μ′₂ (NOMA, both users served at once). The superposed rates
//! are either given explicitly or derived as μ′₁ = α·δ·μ₁, μ′₂ = α·(1−δ)·μ₂
//! from a spectral-efficiency factor α ∈ [1,2] and a resource-sharing factor
//! δ ∈ (0,1).
//!
//! A NOMA configuration is *feasible* when superposition coding is actually
//! giving something up and getting something back: each superposed rate stays
//! below the corresponding solo rate, while the superposed sum rate exceeds
//! the time-shared mix δμ₁ + (1−δ)μ₂.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Which discipline a solver should analyze.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Noma,
    Oma,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Noma => "noma",
            Self::Oma => "oma",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "noma" => Ok(Self::Noma),
            "oma" => Ok(Self::Oma),
            other => Err(ModelError::ConfigParse(format!(
                "unknown scheme \"{other}\" (expected \"noma\" or \"oma\")"
            ))),
        }
    }
}

/// How the superposed rates (μ′₁, μ′₂) were produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateDerivation {
    /// Given directly.
    Explicit,
    /// Derived as μ′₁ = α·δ·μ₁, μ′₂ = α·(1−δ)·μ₂.
    AlphaDelta { alpha: f64, delta: f64 },
}

/// Full parameter set of a two-user system.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    pub lambda1: f64,
    pub lambda2: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub mu1p: f64,
    pub mu2p: f64,
    pub derivation: RateDerivation,
}

/// μ′₁ = α·δ·μ₁ and μ′₂ = α·(1−δ)·μ₂.
///
/// The superposed sum rate is then α·(δμ₁ + (1−δ)μ₂), so the sum-rate gain
/// holds strictly exactly when α > 1. Feasibility against the solo-rate caps
/// is a separate question answered by [`check_noma_constraints`].
pub fn noma_rates_from_alpha(mu1: f64, mu2: f64, alpha: f64, delta: f64) -> (f64, f64) {
    (alpha * delta * mu1, alpha * (1.0 - delta) * mu2)
}

fn require_positive(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::NonpositiveRate { name, value })
    }
}

impl SystemParams {
    /// Parameters with explicitly given superposed rates.
    pub fn explicit(
        lambda1: f64,
        lambda2: f64,
        mu1: f64,
        mu2: f64,
        mu1p: f64,
        mu2p: f64,
    ) -> Result<Self, ModelError> {
        let params = Self {
            lambda1,
            lambda2,
            mu1,
            mu2,
            mu1p,
            mu2p,
            derivation: RateDerivation::Explicit,
        };
        params.validate()?;
        Ok(params)
    }

    /// Parameters with superposed rates derived from (α, δ).
    pub fn from_alpha(
        lambda1: f64,
        lambda2: f64,
        mu1: f64,
        mu2: f64,
        alpha: f64,
        delta: f64,
    ) -> Result<Self, ModelError> {
        if !(1.0..=2.0).contains(&alpha) {
            return Err(ModelError::AlphaOutOfRange { value: alpha });
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(ModelError::DeltaOutOfRange { value: delta });
        }
        let (mu1p, mu2p) = noma_rates_from_alpha(mu1, mu2, alpha, delta);
        let params = Self {
            lambda1,
            lambda2,
            mu1,
            mu2,
            mu1p,
            mu2p,
            derivation: RateDerivation::AlphaDelta { alpha, delta },
        };
        params.validate()?;
        Ok(params)
    }

    /// Checks rate positivity and, for derived rates, internal consistency.
    pub fn validate(&self) -> Result<(), ModelError> {
        require_positive("lambda1", self.lambda1)?;
        require_positive("lambda2", self.lambda2)?;
        require_positive("mu1", self.mu1)?;
        require_positive("mu2", self.mu2)?;
        require_positive("mu1p", self.mu1p)?;
        require_positive("mu2p", self.mu2p)?;
        if let RateDerivation::AlphaDelta { alpha, delta } = self.derivation {
            if !(1.0..=2.0).contains(&alpha) {
                return Err(ModelError::AlphaOutOfRange { value: alpha });
            }
            if !(delta > 0.0 && delta < 1.0) {
                return Err(ModelError::DeltaOutOfRange { value: delta });
            }
            let (want1, want2) = noma_rates_from_alpha(self.mu1, self.mu2, alpha, delta);
            if !close(self.mu1p, want1) || !close(self.mu2p, want2) {
                return Err(ModelError::ConfigConflict(format!(
                    "superposed rates ({}, {}) do not match alpha={alpha}, delta={delta} \
                     (expected ({want1}, {want2}))",
                    self.mu1p, self.mu2p
                )));
            }
        }
        Ok(())
    }

    /// The same system with the user roles exchanged. The sharing factor δ
    /// is user 1's share, so it flips to 1−δ.
    pub fn swapped(&self) -> Self {
        Self {
            lambda1: self.lambda2,
            lambda2: self.lambda1,
            mu1: self.mu2,
            mu2: self.mu1,
            mu1p: self.mu2p,
            mu2p: self.mu1p,
            derivation: match self.derivation {
                RateDerivation::Explicit => RateDerivation::Explicit,
                RateDerivation::AlphaDelta { alpha, delta } => RateDerivation::AlphaDelta {
                    alpha,
                    delta: 1.0 - delta,
                },
            },
        }
    }

    /// Both arrival rates replaced (sweeps over a common λ).
    pub fn with_arrival_rates(&self, lambda1: f64, lambda2: f64) -> Self {
        Self {
            lambda1,
            lambda2,
            ..self.clone()
        }
    }

    /// The recorded sharing factor, when the rates were α-derived.
    pub fn recorded_delta(&self) -> Option<f64> {
        match self.derivation {
            RateDerivation::AlphaDelta { delta, .. } => Some(delta),
            RateDerivation::Explicit => None,
        }
    }

    /// The recorded spectral-efficiency factor, when α-derived.
    pub fn recorded_alpha(&self) -> Option<f64> {
        match self.derivation {
            RateDerivation::AlphaDelta { alpha, .. } => Some(alpha),
            RateDerivation::Explicit => None,
        }
    }

    /// Parses the canonical JSON form.
    pub fn from_json_str(s: &str) -> Result<Self, ModelError> {
        let wire: ParamsWire =
            serde_json::from_str(s).map_err(|e| ModelError::ConfigParse(e.to_string()))?;
        wire.into_params()
    }

    /// Canonical JSON form:
    /// `{"lambda1":…, "lambda2":…, "mu1":…, "mu2":…, "noma":{"mode":…, …}}`.
    /// The resolved superposed rates are always included.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ParamsWire::from_params(self)).expect("plain struct serializes")
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Wire form of [`SystemParams`]; field order fixed for stable output.
#[derive(Serialize, Deserialize)]
struct ParamsWire {
    lambda1: f64,
    lambda2: f64,
    mu1: f64,
    mu2: f64,
    noma: NomaWire,
}

#[derive(Serialize, Deserialize)]
struct NomaWire {
    mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu1p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu2p: Option<f64>,
}

impl ParamsWire {
    fn from_params(p: &SystemParams) -> Self {
        let (mode, alpha, delta) = match p.derivation {
            RateDerivation::Explicit => ("explicit", None, None),
            RateDerivation::AlphaDelta { alpha, delta } => ("alpha", Some(alpha), Some(delta)),
        };
        Self {
            lambda1: p.lambda1,
            lambda2: p.lambda2,
            mu1: p.mu1,
            mu2: p.mu2,
            noma: NomaWire {
                mode: mode.to_string(),
                alpha,
                delta,
                mu1p: Some(p.mu1p),
                mu2p: Some(p.mu2p),
            },
        }
    }

    fn into_params(self) -> Result<SystemParams, ModelError> {
        let params = match self.noma.mode.as_str() {
            "alpha" => {
                let alpha = self.noma.alpha.ok_or(ModelError::MissingField {
                    mode: "alpha",
                    field: "alpha",
                })?;
                let delta = self.noma.delta.ok_or(ModelError::MissingField {
                    mode: "alpha",
                    field: "delta",
                })?;
                let params = SystemParams::from_alpha(
                    self.lambda1,
                    self.lambda2,
                    self.mu1,
                    self.mu2,
                    alpha,
                    delta,
                )?;
                // Redundant explicit rates are allowed but must agree.
                for (name, given, derived) in [
                    ("mu1p", self.noma.mu1p, params.mu1p),
                    ("mu2p", self.noma.mu2p, params.mu2p),
                ] {
                    if let Some(given) = given {
                        if !close(given, derived) {
                            return Err(ModelError::ConfigConflict(format!(
                                "{name}={given} contradicts alpha={alpha}, delta={delta} \
                                 (which give {name}={derived})"
                            )));
                        }
                    }
                }
                params
            }
            "explicit" => {
                if self.noma.alpha.is_some() || self.noma.delta.is_some() {
                    return Err(ModelError::ConfigConflict(
                        "alpha/delta are only meaningful with mode=\"alpha\"".to_string(),
                    ));
                }
                let mu1p = self.noma.mu1p.ok_or(ModelError::MissingField {
                    mode: "explicit",
                    field: "mu1p",
                })?;
                let mu2p = self.noma.mu2p.ok_or(ModelError::MissingField {
                    mode: "explicit",
                    field: "mu2p",
                })?;
                SystemParams::explicit(self.lambda1, self.lambda2, self.mu1, self.mu2, mu1p, mu2p)?
            }
            other => {
                return Err(ModelError::ConfigParse(format!(
                    "unknown noma mode \"{other}\" (expected \"alpha\" or \"explicit\")"
                )))
            }
        };
        Ok(params)
    }
}

/// The three NOMA feasibility constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NomaConstraint {
    /// μ′₁ < μ₁ — user 1's superposed rate below its solo rate.
    SoloRateCapUser1,
    /// μ′₂ < μ₂.
    SoloRateCapUser2,
    /// μ′₁ + μ′₂ > δμ₁ + (1−δ)μ₂ — superposition beats time-sharing.
    SumRateGain,
}

impl NomaConstraint {
    /// Constraints whose violation makes the NOMA model physically
    /// meaningless (superposed service faster than solo service).
    pub fn is_solo_cap(self) -> bool {
        matches!(self, Self::SoloRateCapUser1 | Self::SoloRateCapUser2)
    }
}

/// One constraint finding with a human-readable account of the numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintFinding {
    pub constraint: NomaConstraint,
    pub detail: String,
}

/// Outcome of [`check_noma_constraints`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConstraintReport {
    /// Strictly violated constraints.
    pub violations: Vec<ConstraintFinding>,
    /// Constraints holding only with equality (boundary cases such as α=1
    /// or α=2 at δ=0.5, which the sweeps treat as admissible extremes).
    pub warnings: Vec<ConstraintFinding>,
}

impl ConstraintReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when a solo-rate cap is strictly violated — the condition that
    /// makes NOMA analysis of the parameters meaningless.
    pub fn solo_cap_violated(&self) -> bool {
        self.violations.iter().any(|f| f.constraint.is_solo_cap())
    }
}

/// Evaluates the three NOMA feasibility constraints at the given sharing
/// factor δ. Equality within a 1e-12 relative band is reported as a warning,
/// strict violation as a violation; everything else passes silently.
pub fn check_noma_constraints(params: &SystemParams, delta: f64) -> ConstraintReport {
    let mut report = ConstraintReport::default();
    let mut check = |constraint: NomaConstraint, lhs: f64, rhs: f64, detail_violated: String, detail_equal: String| {
        // Constraint shape: lhs strictly below rhs.
        let band = 1e-12 * lhs.abs().max(rhs.abs()).max(1.0);
        if (lhs - rhs).abs() <= band {
            report.warnings.push(ConstraintFinding {
                constraint,
                detail: detail_equal,
            });
        } else if lhs > rhs {
            report.violations.push(ConstraintFinding {
                constraint,
                detail: detail_violated,
            });
        }
    };

    check(
        NomaConstraint::SoloRateCapUser1,
        params.mu1p,
        params.mu1,
        format!(
            "superposed rate mu1p={} exceeds solo rate mu1={}",
            params.mu1p, params.mu1
        ),
        format!("superposed rate mu1p equals solo rate mu1={}", params.mu1),
    );
    check(
        NomaConstraint::SoloRateCapUser2,
        params.mu2p,
        params.mu2,
        format!(
            "superposed rate mu2p={} exceeds solo rate mu2={}",
            params.mu2p, params.mu2
        ),
        format!("superposed rate mu2p equals solo rate mu2={}", params.mu2),
    );
    let sum = params.mu1p + params.mu2p;
    let mix = delta * params.mu1 + (1.0 - delta) * params.mu2;
    check(
        NomaConstraint::SumRateGain,
        mix,
        sum,
        format!("superposed sum rate {sum} does not exceed the time-shared mix {mix}"),
        format!("superposed sum rate equals the time-shared mix {mix}"),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_derivation_examples() {
        assert_eq!(noma_rates_from_alpha(1.0, 2.0, 1.2, 0.5), (0.6, 1.2));
        assert_eq!(noma_rates_from_alpha(1.0, 2.0, 1.0, 0.5), (0.5, 1.0));
        let (a, b) = noma_rates_from_alpha(3.0, 3.0, 4.0 / 3.0, 0.5);
        assert!((a - 2.0).abs() < 1e-15 && (b - 2.0).abs() < 1e-15);
    }

    #[test]
    fn sum_rate_gain_is_strict_iff_alpha_above_one() {
        for (alpha, strict) in [(1.0, false), (1.0001, true), (2.0, true)] {
            let (m1p, m2p) = noma_rates_from_alpha(1.0, 2.0, alpha, 0.5);
            let mix = 0.5 * 1.0 + 0.5 * 2.0;
            assert_eq!(m1p + m2p > mix, strict, "alpha={alpha}");
        }
    }

    #[test]
    fn feasibility_examples() {
        let p = SystemParams::explicit(1.0, 1.0, 1.0, 2.0, 0.6, 1.2).unwrap();
        let report = check_noma_constraints(&p, 0.5);
        assert!(report.is_feasible() && report.warnings.is_empty());

        // α=1 boundary: sum-rate gain holds only with equality.
        let p = SystemParams::explicit(1.0, 1.0, 1.0, 2.0, 0.5, 1.0).unwrap();
        let report = check_noma_constraints(&p, 0.5);
        assert!(report.is_feasible());
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(report.warnings[0].constraint, NomaConstraint::SumRateGain);

        let p = SystemParams::explicit(1.0, 1.0, 1.0, 2.0, 1.5, 1.0).unwrap();
        let report = check_noma_constraints(&p, 0.5);
        assert!(!report.is_feasible());
        assert!(report.solo_cap_violated());
        assert_eq!(
            report.violations[0].constraint,
            NomaConstraint::SoloRateCapUser1
        );
    }

    #[test]
    fn alpha_two_at_symmetric_delta_warns_on_both_caps() {
        // α=2, δ=0.5: both superposed rates equal the solo rates exactly.
        let p = SystemParams::from_alpha(1.0, 1.0, 1.0, 2.0, 2.0, 0.5).unwrap();
        let report = check_noma_constraints(&p, 0.5);
        assert!(report.is_feasible());
        let warned: Vec<_> = report.warnings.iter().map(|f| f.constraint).collect();
        assert!(warned.contains(&NomaConstraint::SoloRateCapUser1));
        assert!(warned.contains(&NomaConstraint::SoloRateCapUser2));
    }

    #[test]
    fn swap_exchanges_roles_and_flips_delta() {
        let p = SystemParams::from_alpha(1.0, 2.0, 3.0, 4.0, 1.5, 0.3).unwrap();
        let s = p.swapped();
        assert_eq!(
            (s.lambda1, s.lambda2, s.mu1, s.mu2, s.mu1p, s.mu2p),
            (p.lambda2, p.lambda1, p.mu2, p.mu1, p.mu2p, p.mu1p)
        );
        assert_eq!(
            s.derivation,
            RateDerivation::AlphaDelta {
                alpha: 1.5,
                delta: 0.7
            }
        );
        // Swapped params remain internally consistent; a double swap restores
        // all rates exactly (δ only up to rounding of 1−(1−δ)).
        s.validate().unwrap();
        let back = s.swapped();
        assert_eq!(
            (back.lambda1, back.lambda2, back.mu1, back.mu2, back.mu1p, back.mu2p),
            (p.lambda1, p.lambda2, p.mu1, p.mu2, p.mu1p, p.mu2p)
        );
        match (back.derivation, p.derivation) {
            (
                RateDerivation::AlphaDelta { alpha: a1, delta: d1 },
                RateDerivation::AlphaDelta { alpha: a2, delta: d2 },
            ) => {
                assert_eq!(a1, a2);
                assert!((d1 - d2).abs() < 1e-15);
            }
            _ => panic!("derivation kind changed"),
        }
    }

    #[test]
    fn rejects_nonpositive_and_out_of_range() {
        assert!(matches!(
            SystemParams::explicit(0.0, 1.0, 1.0, 1.0, 0.5, 0.5),
            Err(ModelError::NonpositiveRate { name: "lambda1", .. })
        ));
        assert!(matches!(
            SystemParams::explicit(1.0, 1.0, 1.0, 1.0, f64::INFINITY, 0.5),
            Err(ModelError::NonpositiveRate { name: "mu1p", .. })
        ));
        assert!(matches!(
            SystemParams::from_alpha(1.0, 1.0, 1.0, 1.0, 2.5, 0.5),
            Err(ModelError::AlphaOutOfRange { .. })
        ));
        assert!(matches!(
            SystemParams::from_alpha(1.0, 1.0, 1.0, 1.0, 1.5, 1.0),
            Err(ModelError::DeltaOutOfRange { .. })
        ));
    }

    #[test]
    fn json_round_trip_alpha_mode() {
        let p = SystemParams::from_alpha(1.0, 2.0, 1.0, 2.0, 1.2, 0.5).unwrap();
        let json = p.to_json_value().to_string();
        let back = SystemParams::from_json_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn json_round_trip_explicit_mode() {
        let p = SystemParams::explicit(0.5, 0.7, 1.0, 2.0, 0.6, 1.2).unwrap();
        let json = p.to_json_value().to_string();
        let back = SystemParams::from_json_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn json_parsing_validates_structure() {
        // Alpha mode without delta.
        let err = SystemParams::from_json_str(
            r#"{"lambda1":1,"lambda2":1,"mu1":1,"mu2":2,"noma":{"mode":"alpha","alpha":1.2}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::MissingField { field: "delta", .. }));

        // Explicit mode without superposed rates.
        let err = SystemParams::from_json_str(
            r#"{"lambda1":1,"lambda2":1,"mu1":1,"mu2":2,"noma":{"mode":"explicit"}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::MissingField { field: "mu1p", .. }));

        // Contradictory redundant rate.
        let err = SystemParams::from_json_str(
            r#"{"lambda1":1,"lambda2":1,"mu1":1,"mu2":2,
                "noma":{"mode":"alpha","alpha":1.2,"delta":0.5,"mu1p":0.7}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::ConfigConflict(_)));

        // Consistent redundant rates are fine.
        let p = SystemParams::from_json_str(
            r#"{"lambda1":1,"lambda2":1,"mu1":1,"mu2":2,
                "noma":{"mode":"alpha","alpha":1.2,"delta":0.5,"mu1p":0.6,"mu2p":1.2}}"#,
        )
        .unwrap();
        assert_eq!((p.mu1p, p.mu2p), (0.6, 1.2));

        // Unknown mode.
        let err = SystemParams::from_json_str(
            r#"{"lambda1":1,"lambda2":1,"mu1":1,"mu2":2,"noma":{"mode":"banana"}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::ConfigParse(_)));

        // Malformed JSON.
        assert!(matches!(
            SystemParams::from_json_str("{"),
            Err(ModelError::ConfigParse(_))
        ));
    }

    #[test]
    fn scheme_parses_and_prints() {
        assert_eq!("noma".parse::<Scheme>().unwrap(), Scheme::Noma);
        assert_eq!("oma".parse::<Scheme>().unwrap(), Scheme::Oma);
        assert!("tdma".parse::<Scheme>().is_err());
        assert_eq!(Scheme::Noma.to_string(), "noma");
    }
}
