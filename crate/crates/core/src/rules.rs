//! Design-rule checks over a completed analysis.
//!
//! Rules live in a registry of [`DesignRule`] implementations; each emits
//! one entry per subject it applies to. Entries pass when their margin is
//! non-negative.

use crate::analysis::AnalysisResult;
use crate::device::ElementRole;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RuleThresholds {
    pub ej_ec_min: f64,
    pub ej_ec_max: f64,
    pub g_over_delta_max: f64,
    /// GHz.
    pub min_pairwise_separation: f64,
    /// fF.
    pub drive_coupling_max: f64,
    /// GHz, compared against |α|.
    pub anharmonicity_min: f64,
}

impl Default for RuleThresholds {
    fn default() -> Self {
        RuleThresholds {
            ej_ec_min: 50.0,
            ej_ec_max: 150.0,
            g_over_delta_max: 0.1,
            min_pairwise_separation: 0.1,
            drive_coupling_max: 1.0,
            anharmonicity_min: 0.15,
        }
    }
}

impl RuleThresholds {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("ej_ec_min", self.ej_ec_min),
            ("ej_ec_max", self.ej_ec_max),
            ("g_over_delta_max", self.g_over_delta_max),
            ("min_pairwise_separation", self.min_pairwise_separation),
            ("drive_coupling_max", self.drive_coupling_max),
            ("anharmonicity_min", self.anharmonicity_min),
        ];
        for (name, v) in all {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Schema {
                    path: name.into(),
                    message: format!("threshold must be > 0, got {v}"),
                });
            }
        }
        if self.ej_ec_min >= self.ej_ec_max {
            return Err(Error::Schema {
                path: "ej_ec_min".into(),
                message: "ej_ec_min must be below ej_ec_max".into(),
            });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: RuleThresholds = serde_json::from_str(text).map_err(|e| Error::Schema {
            path: "<thresholds>".into(),
            message: e.to_string(),
        })?;
        t.validate()?;
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleEntry {
    pub rule: String,
    pub subject: String,
    pub measured: f64,
    pub threshold: f64,
    /// Distance to the threshold; negative when the rule is violated.
    pub margin: f64,
    pub pass: bool,
}

impl RuleEntry {
    fn upper_bound(rule: &str, subject: String, measured: f64, threshold: f64) -> Self {
        Self::with_margin(rule, subject, measured, threshold, threshold - measured)
    }

    fn lower_bound(rule: &str, subject: String, measured: f64, threshold: f64) -> Self {
        Self::with_margin(rule, subject, measured, threshold, measured - threshold)
    }

    fn with_margin(rule: &str, subject: String, measured: f64, threshold: f64, margin: f64) -> Self {
        RuleEntry {
            rule: rule.to_string(),
            subject,
            measured,
            threshold,
            margin,
            pass: margin >= 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignRuleReport {
    pub entries: Vec<RuleEntry>,
    pub overall_pass: bool,
}

impl Default for DesignRuleReport {
    fn default() -> Self {
        DesignRuleReport {
            entries: Vec::new(),
            overall_pass: true,
        }
    }
}

impl DesignRuleReport {
    pub fn failures(&self) -> impl Iterator<Item = &RuleEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

pub trait DesignRule: Send + Sync {
    fn id(&self) -> &'static str;
    fn evaluate(&self, analysis: &AnalysisResult, t: &RuleThresholds) -> Vec<RuleEntry>;
}

/// Ej/Ec at or above the transmon-regime floor.
pub struct EjEcMin;
/// Ej/Ec at or below the ceiling (keeps enough anharmonicity).
pub struct EjEcMax;
/// |α| large enough to address the 0-1 transition selectively.
pub struct AnharmonicityMin;
/// g/|Δ| small enough for dispersive readout.
pub struct DispersiveRegime;
/// Drive-line coupling weak enough to limit drive-port decay.
pub struct DriveCouplingMax;
/// Zero-flux qubit frequencies and resonator fundamentals kept apart.
///
/// Pairs involving at least one qubit are checked; couplers are flux-parked
/// and resonator–resonator spacing is a feedline concern, so both are left out.
pub struct FrequencySeparation;

impl DesignRule for EjEcMin {
    fn id(&self) -> &'static str {
        "ej_ec_min"
    }

    fn evaluate(&self, a: &AnalysisResult, t: &RuleThresholds) -> Vec<RuleEntry> {
        a.qubits
            .iter()
            .map(|q| RuleEntry::lower_bound(self.id(), q.name.clone(), q.ej_over_ec, t.ej_ec_min))
            .collect()
    }
}

impl DesignRule for EjEcMax {
    fn id(&self) -> &'static str {
        "ej_ec_max"
    }

    fn evaluate(&self, a: &AnalysisResult, t: &RuleThresholds) -> Vec<RuleEntry> {
        a.qubits
            .iter()
            .map(|q| RuleEntry::upper_bound(self.id(), q.name.clone(), q.ej_over_ec, t.ej_ec_max))
            .collect()
    }
}

impl DesignRule for AnharmonicityMin {
    fn id(&self) -> &'static str {
        "anharmonicity_min"
    }

    fn evaluate(&self, a: &AnalysisResult, t: &RuleThresholds) -> Vec<RuleEntry> {
        a.qubits
            .iter()
            .map(|q| {
                RuleEntry::lower_bound(self.id(), q.name.clone(), q.anharmonicity_magnitude_ghz, t.anharmonicity_min)
            })
            .collect()
    }
}

impl DesignRule for DispersiveRegime {
    fn id(&self) -> &'static str {
        "dispersive_regime"
    }

    fn evaluate(&self, a: &AnalysisResult, t: &RuleThresholds) -> Vec<RuleEntry> {
        a.couplings
            .iter()
            .filter_map(|c| {
                let ratio = c.g_over_detuning?;
                Some(RuleEntry::upper_bound(self.id(), c.name.clone(), ratio, t.g_over_delta_max))
            })
            .collect()
    }
}

impl DesignRule for DriveCouplingMax {
    fn id(&self) -> &'static str {
        "drive_coupling_max"
    }

    fn evaluate(&self, a: &AnalysisResult, t: &RuleThresholds) -> Vec<RuleEntry> {
        a.drive_lines
            .iter()
            .map(|d| RuleEntry::upper_bound(self.id(), d.name.clone(), d.capacitance_ff, t.drive_coupling_max))
            .collect()
    }
}

impl DesignRule for FrequencySeparation {
    fn id(&self) -> &'static str {
        "frequency_separation"
    }

    fn evaluate(&self, a: &AnalysisResult, t: &RuleThresholds) -> Vec<RuleEntry> {
        // (name, frequency, is_qubit)
        let mut tones: Vec<(&str, f64, bool)> = a
            .qubits
            .iter()
            .filter(|q| q.role == ElementRole::Qubit)
            .map(|q| (q.name.as_str(), q.e01_ghz, true))
            .collect();
        tones.extend(a.resonators.iter().map(|r| (r.name.as_str(), r.frequency_ghz, false)));
        let mut out = Vec::new();
        for i in 0..tones.len() {
            for j in (i + 1)..tones.len() {
                let (a_name, fa, qa) = tones[i];
                let (b_name, fb, qb) = tones[j];
                if !(qa || qb) {
                    continue;
                }
                let (lo, hi) = if a_name < b_name { (a_name, b_name) } else { (b_name, a_name) };
                out.push(RuleEntry::lower_bound(
                    self.id(),
                    format!("{lo}/{hi}"),
                    (fa - fb).abs(),
                    t.min_pairwise_separation,
                ));
            }
        }
        out
    }
}

pub fn default_rules() -> Vec<Box<dyn DesignRule>> {
    vec![
        Box::new(AnharmonicityMin),
        Box::new(DispersiveRegime),
        Box::new(DriveCouplingMax),
        Box::new(EjEcMax),
        Box::new(EjEcMin),
        Box::new(FrequencySeparation),
    ]
}

/// Evaluates the default rule registry.
pub fn run_design_rules(analysis: &AnalysisResult, t: &RuleThresholds) -> DesignRuleReport {
    run_rules_with(&default_rules(), analysis, t)
}

/// Evaluates a custom registry. Entries are ordered by rule id, then subject.
pub fn run_rules_with(rules: &[Box<dyn DesignRule>], analysis: &AnalysisResult, t: &RuleThresholds) -> DesignRuleReport {
    let mut entries: Vec<RuleEntry> = rules.iter().flat_map(|r| r.evaluate(analysis, t)).collect();
    entries.sort_by(|a, b| a.rule.cmp(&b.rule).then_with(|| a.subject.cmp(&b.subject)));
    let overall_pass = entries.iter().all(|e| e.pass);
    DesignRuleReport { entries, overall_pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_thresholds_valid() {
        RuleThresholds::default().validate().unwrap();
        let bad = RuleThresholds {
            ej_ec_min: 200.0,
            ..RuleThresholds::default()
        };
        assert!(bad.validate().is_err());
        let bad = RuleThresholds {
            drive_coupling_max: 0.0,
            ..RuleThresholds::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn thresholds_json_partial_and_strict() {
        let t = RuleThresholds::from_json(r#"{"g_over_delta_max": 0.01}"#).unwrap();
        assert_eq!(t.g_over_delta_max, 0.01);
        assert_eq!(t.ej_ec_min, 50.0);
        assert!(RuleThresholds::from_json(r#"{"g_max": 0.01}"#).is_err());
    }

    #[test]
    fn margin_sign_matches_pass() {
        let e = RuleEntry::upper_bound("x", "s".into(), 0.2, 0.1);
        assert!(!e.pass && e.margin < 0.0);
        let e = RuleEntry::lower_bound("x", "s".into(), 0.2, 0.1);
        assert!(e.pass && e.margin > 0.0);
        let e = RuleEntry::lower_bound("x", "s".into(), 0.1, 0.1);
        assert!(e.pass && e.margin == 0.0);
    }
}
