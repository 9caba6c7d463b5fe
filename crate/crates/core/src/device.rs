//! Declarative chip description: transmons, resonators, coupling and drive
//! capacitances, loaded from a JSON document.
//!
//! Quantities are plain numbers in fF, nA, nH and µm; the unit is part of
//! each key name. Unknown keys are rejected.

use crate::error::{Error, Result};
use crate::resonator::{ResonatorMode, ResonatorParams, DEFAULT_SUBSTRATE_EPSILON};
use crate::squid::SquidParams;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceSpec {
    #[serde(default)]
    pub qubits: Vec<QubitSpec>,
    #[serde(default)]
    pub resonators: Vec<ResonatorSpec>,
    #[serde(default)]
    pub couplings: Vec<CouplingSpec>,
    #[serde(default)]
    pub drive_lines: Vec<DriveLineSpec>,
    #[serde(default = "default_substrate_epsilon")]
    pub substrate_epsilon: f64,
}

fn default_substrate_epsilon() -> f64 {
    DEFAULT_SUBSTRATE_EPSILON
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementRole {
    #[default]
    Qubit,
    /// Tunable coupler: analyzed like a qubit but parked by flux, so it is
    /// left out of frequency-collision checks.
    Coupler,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitSpec {
    pub name: String,
    #[serde(default)]
    pub role: ElementRole,
    pub shunt_capacitance_ff: f64,
    /// Critical current of the single junction, or Ic1 + Ic2 for a SQUID.
    pub ic_total_na: f64,
    /// W1/W2 of a SQUID; absent for a single-junction qubit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width_ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub fixed_frequency: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<QubitReference>,
}

impl QubitSpec {
    pub fn is_tunable(&self) -> bool {
        self.width_ratio.is_some()
    }

    pub fn squid(&self) -> Option<SquidParams> {
        self.width_ratio.map(|width_ratio| SquidParams {
            ic_total: self.ic_total_na,
            width_ratio,
            shunt_capacitance: self.shunt_capacitance_ff,
        })
    }
}

/// Externally reported values to compare against; never used as inputs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitReference {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e01_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e01_half_flux_ghz: Option<f64>,
    /// Magnitude.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anharmonicity_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ej_over_ec: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonatorSpec {
    pub name: String,
    pub l_total_nh: f64,
    pub c_total_ff: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_um: Option<f64>,
    #[serde(default)]
    pub mode: ResonatorMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<ResonatorReference>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonatorReference {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic_frequency_ghz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingSpec {
    pub name: String,
    pub from: String,
    pub to: String,
    pub capacitance_ff: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<CouplingReference>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingReference {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_ghz: Option<f64>,
    /// Magnitude.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_ghz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveLineSpec {
    pub name: String,
    pub qubit: String,
    pub capacitance_ff: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Qubit,
    Resonator,
}

impl ResonatorSpec {
    pub fn params(&self, substrate_epsilon: f64) -> ResonatorParams {
        ResonatorParams {
            l_total: self.l_total_nh,
            c_total: self.c_total_ff,
            mode: self.mode,
            length: self.length_um,
            substrate_epsilon: Some(substrate_epsilon),
        }
    }
}

impl DeviceSpec {
    pub fn qubit(&self, name: &str) -> Option<&QubitSpec> {
        self.qubits.iter().find(|q| q.name == name)
    }

    pub fn resonator(&self, name: &str) -> Option<&ResonatorSpec> {
        self.resonators.iter().find(|r| r.name == name)
    }

    pub fn kind_of(&self, name: &str) -> Option<ElementKind> {
        if self.qubit(name).is_some() {
            Some(ElementKind::Qubit)
        } else if self.resonator(name).is_some() {
            Some(ElementKind::Resonator)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Checks names, references and quantity signs.
    pub fn validate(&self) -> Result<()> {
        let schema = |path: String, message: String| Error::Schema { path, message };
        let positive = |path: String, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(schema(path, format!("must be a finite number > 0, got {v}")))
            }
        };
        let non_negative = |path: String, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(schema(path, format!("must be a finite number >= 0, got {v}")))
            }
        };

        if !(self.substrate_epsilon.is_finite() && self.substrate_epsilon >= 1.0) {
            return Err(schema(
                "substrate_epsilon".into(),
                format!("must be >= 1, got {}", self.substrate_epsilon),
            ));
        }

        let mut names: HashMap<String, String> = HashMap::new();
        let mut claim = |name: &str, path: String| -> Result<()> {
            if name.trim().is_empty() {
                return Err(schema(format!("{path}.name"), "name must not be empty".into()));
            }
            if let Some(prev) = names.insert(name.to_string(), path.clone()) {
                return Err(schema(format!("{path}.name"), format!("duplicate name '{name}' (also at {prev})")));
            }
            Ok(())
        };

        for (i, q) in self.qubits.iter().enumerate() {
            let p = format!("qubits[{i}]");
            claim(&q.name, p.clone())?;
            positive(format!("{p}.shunt_capacitance_ff"), q.shunt_capacitance_ff)?;
            positive(format!("{p}.ic_total_na"), q.ic_total_na)?;
            if let Some(r) = q.width_ratio {
                if q.fixed_frequency {
                    return Err(schema(
                        format!("{p}.width_ratio"),
                        "a fixed-frequency qubit has no SQUID width ratio".into(),
                    ));
                }
                if !(r.is_finite() && r >= 1.0) {
                    return Err(schema(format!("{p}.width_ratio"), format!("must be >= 1, got {r}")));
                }
            }
        }
        for (i, r) in self.resonators.iter().enumerate() {
            let p = format!("resonators[{i}]");
            claim(&r.name, p.clone())?;
            positive(format!("{p}.l_total_nh"), r.l_total_nh)?;
            positive(format!("{p}.c_total_ff"), r.c_total_ff)?;
            if let Some(l) = r.length_um {
                positive(format!("{p}.length_um"), l)?;
            }
        }
        for (i, c) in self.couplings.iter().enumerate() {
            let p = format!("couplings[{i}]");
            claim(&c.name, p.clone())?;
            non_negative(format!("{p}.capacitance_ff"), c.capacitance_ff)?;
        }
        for (i, d) in self.drive_lines.iter().enumerate() {
            let p = format!("drive_lines[{i}]");
            claim(&d.name, p.clone())?;
            non_negative(format!("{p}.capacitance_ff"), d.capacitance_ff)?;
        }

        for (i, c) in self.couplings.iter().enumerate() {
            for (field, target) in [("from", &c.from), ("to", &c.to)] {
                if self.kind_of(target).is_none() {
                    return Err(schema(
                        format!("couplings[{i}].{field}"),
                        format!("dangling reference to undeclared element '{target}'"),
                    ));
                }
            }
            if c.from == c.to {
                return Err(schema(format!("couplings[{i}].to"), "coupling connects an element to itself".into()));
            }
        }
        for (i, d) in self.drive_lines.iter().enumerate() {
            if self.qubit(&d.qubit).is_none() {
                return Err(schema(
                    format!("drive_lines[{i}].qubit"),
                    format!("dangling reference to undeclared qubit '{}'", d.qubit),
                ));
            }
        }
        Ok(())
    }
}

/// Parses and validates a device document.
pub fn parse_device_spec(text: &str) -> Result<DeviceSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: DeviceSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Schema {
            path: if path == "." { "<root>".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })?;
    spec.validate()?;
    Ok(spec)
}
