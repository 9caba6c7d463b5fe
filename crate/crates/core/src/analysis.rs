//! Full-chip pipeline: every element of a [`DeviceSpec`] through the physics
//! modules, then the design rules.

use crate::constants::{charging_energy, josephson_energy, CONSTANTS_VERSION};
use crate::coupling::{coupling_report, CouplingReport};
use crate::device::{parse_device_spec, DeviceSpec, ElementKind, ElementRole, QubitSpec};
use crate::error::{Error, Result};
use crate::resonator::{effective_permittivity, resonant_frequency, ResonatorMode};
use crate::rules::{run_design_rules, DesignRuleReport, RuleThresholds};
use crate::squid::{frequency_extrema, junction_asymmetry, FrequencyExtrema};
use crate::transmon::{perturbative_spectrum, transmon_spectrum, TransmonParams, TransmonSpectrum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Levels kept per transmon in the report.
pub const REPORTED_LEVELS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub tool_version: String,
    pub constants: String,
    /// SHA-256 of the device document, when analyzed from bytes.
    pub input_sha256: Option<String>,
}

impl Provenance {
    fn new(input_sha256: Option<String>) -> Self {
        Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            constants: CONSTANTS_VERSION.to_string(),
            input_sha256,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbativeEstimate {
    pub e01_ghz: f64,
    pub anharmonicity_ghz: f64,
    pub charge_me_01: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QubitAnalysis {
    pub name: String,
    pub role: ElementRole,
    pub tunable: bool,
    pub shunt_capacitance_ff: f64,
    pub ic_total_na: f64,
    pub ec_ghz: f64,
    /// Josephson energy at zero flux.
    pub ej_ghz: f64,
    pub ej_over_ec: f64,
    pub e01_ghz: f64,
    pub e12_ghz: f64,
    /// Signed, negative for a transmon.
    pub anharmonicity_ghz: f64,
    pub anharmonicity_magnitude_ghz: f64,
    pub charge_me_01: f64,
    pub levels_ghz: Vec<f64>,
    pub ncut: usize,
    pub junction_asymmetry: Option<f64>,
    pub extrema: Option<FrequencyExtrema>,
    pub perturbative: Option<PerturbativeEstimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonatorAnalysis {
    pub name: String,
    pub mode: ResonatorMode,
    pub l_total_nh: f64,
    pub c_total_ff: f64,
    pub frequency_ghz: f64,
    pub length_um: Option<f64>,
    pub effective_permittivity: Option<f64>,
    pub analytic_frequency_ghz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingAnalysis {
    pub name: String,
    /// The qubit end for qubit–resonator couplings, else as declared.
    pub from: String,
    pub to: String,
    pub capacitance_ff: f64,
    /// Present for qubit–resonator couplings only.
    pub report: Option<CouplingReport>,
    pub g_over_detuning: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriveLineAnalysis {
    pub name: String,
    pub qubit: String,
    pub capacitance_ff: f64,
}

/// A computed quantity next to an externally reported value for it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deviation {
    pub subject: String,
    pub quantity: String,
    pub computed: f64,
    pub reference: f64,
    /// (computed − reference) / reference.
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisResult {
    pub provenance: Provenance,
    pub qubits: Vec<QubitAnalysis>,
    pub resonators: Vec<ResonatorAnalysis>,
    pub couplings: Vec<CouplingAnalysis>,
    pub drive_lines: Vec<DriveLineAnalysis>,
    pub deviations: Vec<Deviation>,
    pub design_rules: DesignRuleReport,
}

impl AnalysisResult {
    pub fn qubit(&self, name: &str) -> Option<&QubitAnalysis> {
        self.qubits.iter().find(|q| q.name == name)
    }

    pub fn resonator(&self, name: &str) -> Option<&ResonatorAnalysis> {
        self.resonators.iter().find(|r| r.name == name)
    }

    pub fn coupling(&self, name: &str) -> Option<&CouplingAnalysis> {
        self.couplings.iter().find(|c| c.name == name)
    }

    /// Every qubit–resonator coupling carries its report.
    pub fn is_complete(&self) -> bool {
        self.couplings.iter().all(|c| {
            let qr = self.qubit(&c.from).is_some() && self.resonator(&c.to).is_some();
            !qr || c.report.is_some()
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses the device document and analyzes it, recording its digest.
pub fn analyze_document(bytes: &[u8], thresholds: &RuleThresholds) -> Result<AnalysisResult> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::Schema { path: "<root>".into(), message: format!("not UTF-8: {e}") })?;
    let spec = parse_device_spec(text)?;
    let mut result = analyze_device(&spec, thresholds)?;
    result.provenance.input_sha256 = Some(sha256_hex(bytes));
    Ok(result)
}

pub fn qubit_params(q: &QubitSpec) -> Result<TransmonParams> {
    Ok(TransmonParams::new(
        charging_energy(q.shunt_capacitance_ff)?,
        josephson_energy(q.ic_total_na)?,
    ))
}

fn analyze_qubit(q: &QubitSpec) -> Result<(QubitAnalysis, TransmonParams, TransmonSpectrum)> {
    let params = qubit_params(q)?;
    let spectrum = transmon_spectrum(&params, REPORTED_LEVELS)?;
    let (junction_asymmetry, extrema) = match q.squid() {
        Some(sq) => (Some(junction_asymmetry(sq.width_ratio)?), Some(frequency_extrema(&sq)?)),
        None => (None, None),
    };
    let perturbative = perturbative_spectrum(params.ec, params.ej).ok().map(|p| PerturbativeEstimate {
        e01_ghz: p.e01,
        anharmonicity_ghz: p.anharmonicity,
        charge_me_01: p.charge_me_01,
    });
    let analysis = QubitAnalysis {
        name: q.name.clone(),
        role: q.role,
        tunable: q.is_tunable(),
        shunt_capacitance_ff: q.shunt_capacitance_ff,
        ic_total_na: q.ic_total_na,
        ec_ghz: params.ec,
        ej_ghz: params.ej,
        ej_over_ec: spectrum.ej_over_ec,
        e01_ghz: spectrum.e01,
        e12_ghz: spectrum.e12,
        anharmonicity_ghz: spectrum.anharmonicity_signed,
        anharmonicity_magnitude_ghz: spectrum.anharmonicity(),
        charge_me_01: spectrum.charge_me_01,
        levels_ghz: spectrum.levels.clone(),
        ncut: spectrum.ncut,
        junction_asymmetry,
        extrema,
        perturbative,
    };
    Ok((analysis, params, spectrum))
}

/// Runs every element through the physics pipeline. Element order follows
/// the declaration; any element error aborts the whole analysis.
pub fn analyze_device(spec: &DeviceSpec, thresholds: &RuleThresholds) -> Result<AnalysisResult> {
    spec.validate()?;
    thresholds.validate()?;

    let mut qubits = Vec::with_capacity(spec.qubits.len());
    let mut qubit_models = Vec::with_capacity(spec.qubits.len());
    for q in &spec.qubits {
        let (a, params, spectrum) = analyze_qubit(q).map_err(|e| e.in_element(&q.name))?;
        qubits.push(a);
        qubit_models.push((params, spectrum));
    }

    let mut resonators = Vec::with_capacity(spec.resonators.len());
    for r in &spec.resonators {
        let params = r.params(spec.substrate_epsilon);
        let analysis = (|| -> Result<ResonatorAnalysis> {
            Ok(ResonatorAnalysis {
                name: r.name.clone(),
                mode: r.mode,
                l_total_nh: r.l_total_nh,
                c_total_ff: r.c_total_ff,
                frequency_ghz: resonant_frequency(&params)?,
                length_um: r.length_um,
                effective_permittivity: r.length_um.map(|_| effective_permittivity(spec.substrate_epsilon)),
                analytic_frequency_ghz: params.analytic_frequency()?,
            })
        })()
        .map_err(|e| e.in_element(&r.name))?;
        resonators.push(analysis);
    }

    let mut couplings = Vec::with_capacity(spec.couplings.len());
    for c in &spec.couplings {
        let pair = match (spec.kind_of(&c.from), spec.kind_of(&c.to)) {
            (Some(ElementKind::Qubit), Some(ElementKind::Resonator)) => Some((&c.from, &c.to)),
            (Some(ElementKind::Resonator), Some(ElementKind::Qubit)) => Some((&c.to, &c.from)),
            _ => None,
        };
        let analysis = match pair {
            Some((qname, rname)) => {
                let qi = spec.qubits.iter().position(|q| &q.name == qname).expect("validated");
                let q = &spec.qubits[qi];
                let r = spec.resonator(rname).expect("validated");
                let (params, spectrum) = &qubit_models[qi];
                let report = coupling_report(
                    c.capacitance_ff,
                    q.shunt_capacitance_ff,
                    &r.params(spec.substrate_epsilon),
                    params,
                    spectrum,
                    true,
                )
                .map_err(|e| e.in_element(&c.name))?;
                CouplingAnalysis {
                    name: c.name.clone(),
                    from: qname.clone(),
                    to: rname.clone(),
                    capacitance_ff: c.capacitance_ff,
                    g_over_detuning: Some(report.g / report.detuning.abs()),
                    report: Some(report),
                }
            }
            None => CouplingAnalysis {
                name: c.name.clone(),
                from: c.from.clone(),
                to: c.to.clone(),
                capacitance_ff: c.capacitance_ff,
                report: None,
                g_over_detuning: None,
            },
        };
        couplings.push(analysis);
    }

    let drive_lines = spec
        .drive_lines
        .iter()
        .map(|d| DriveLineAnalysis {
            name: d.name.clone(),
            qubit: d.qubit.clone(),
            capacitance_ff: d.capacitance_ff,
        })
        .collect();

    let mut result = AnalysisResult {
        provenance: Provenance::new(None),
        qubits,
        resonators,
        couplings,
        drive_lines,
        deviations: Vec::new(),
        design_rules: DesignRuleReport::default(),
    };
    result.deviations = collect_deviations(spec, &result);
    result.design_rules = run_design_rules(&result, thresholds);
    Ok(result)
}

fn collect_deviations(spec: &DeviceSpec, result: &AnalysisResult) -> Vec<Deviation> {
    let mut out = Vec::new();
    let mut push = |subject: &str, quantity: &str, computed: Option<f64>, reference: Option<f64>| {
        if let (Some(computed), Some(reference)) = (computed, reference) {
            if reference != 0.0 {
                out.push(Deviation {
                    subject: subject.to_string(),
                    quantity: quantity.to_string(),
                    computed,
                    reference,
                    relative_deviation: (computed - reference) / reference,
                });
            }
        }
    };
    for (q, a) in spec.qubits.iter().zip(&result.qubits) {
        let Some(r) = &q.reference else { continue };
        push(&q.name, "e01_ghz", Some(a.e01_ghz), r.e01_ghz);
        push(&q.name, "anharmonicity_ghz", Some(a.anharmonicity_magnitude_ghz), r.anharmonicity_ghz);
        push(&q.name, "ej_over_ec", Some(a.ej_over_ec), r.ej_over_ec);
        push(&q.name, "e01_half_flux_ghz", a.extrema.map(|e| e.f_min), r.e01_half_flux_ghz);
    }
    for (rs, a) in spec.resonators.iter().zip(&result.resonators) {
        let Some(r) = &rs.reference else { continue };
        push(&rs.name, "frequency_ghz", Some(a.frequency_ghz), r.frequency_ghz);
        push(&rs.name, "analytic_frequency_ghz", a.analytic_frequency_ghz, r.analytic_frequency_ghz);
    }
    for (c, a) in spec.couplings.iter().zip(&result.couplings) {
        let (Some(r), Some(rep)) = (&c.reference, &a.report) else { continue };
        push(&c.name, "g_ghz", Some(rep.g), r.g_ghz);
        push(&c.name, "chi_ghz", Some(rep.chi_perturbative.abs()), r.chi_ghz);
        push(&c.name, "chi_exact_ghz", rep.chi_exact.map(f64::abs), r.chi_ghz);
    }
    out
}
