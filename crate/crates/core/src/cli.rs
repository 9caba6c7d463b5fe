//! Command-line front end. Exit codes: 0 success, 1 design-rule failure,
//! 2 input or validation error.

use crate::analysis::{analyze_document, AnalysisResult};
use crate::capmatrix::{extract_circuit_caps, kron_reduce, parse_capacitance_matrix, NetRole};
use crate::device::parse_device_spec;
use crate::error::{Error, Result};
use crate::fit::{fit_resonator, fit_transmon, TransmonTarget};
use crate::report::{analysis_text, circuit_caps_text, matrix_text, rules_text};
use crate::resonator::ResonatorMode;
use crate::rules::{run_design_rules, RuleThresholds};
use crate::squid::{flux_grid, tuning_curve};
use clap::{Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RULE_FAILURE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "chipqed", version, about = "Circuit-QED figures of merit for superconducting qubit chips")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a device file and check design rules.
    Analyze {
        device: PathBuf,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Print the text report to stdout.
        #[arg(long)]
        text: bool,
        #[arg(long)]
        thresholds: Option<PathBuf>,
    },
    /// Validate a capacitance matrix; optionally reduce it and extract circuit capacitances.
    Capmatrix {
        matrix: PathBuf,
        /// Comma-separated nets to keep; the rest are treated as floating.
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
        /// Net shorted to ground; enables shunt/coupling extraction.
        #[arg(long)]
        ground: Option<String>,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Sweep flux through a tunable element and write its tuning curve.
    TuneCurve {
        device: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        to: f64,
        /// Output CSV path; stdout if omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-run design rules on a saved JSON analysis.
    Check {
        result: PathBuf,
        #[arg(long)]
        thresholds: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Solve for components that hit frequency targets.
    FitTargets {
        /// Target qubit frequency, GHz.
        #[arg(long)]
        f01: Option<f64>,
        /// Target anharmonicity magnitude, GHz.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Target resonator frequency, GHz.
        #[arg(long)]
        resonator_f: Option<f64>,
        /// Fixed resonator inductance, nH.
        #[arg(long)]
        inductance: Option<f64>,
        #[arg(long, value_enum, default_value_t = ModeArg::QuarterWave)]
        mode: ModeArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    QuarterWave,
    HalfWave,
    Lumped,
}

impl From<ModeArg> for ResonatorMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::QuarterWave => ResonatorMode::QuarterWave,
            ModeArg::HalfWave => ResonatorMode::HalfWave,
            ModeArg::Lumped => ResonatorMode::Lumped,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn load_thresholds(path: Option<&Path>) -> Result<RuleThresholds> {
    match path {
        Some(p) => RuleThresholds::from_json(&read(p)?),
        None => Ok(RuleThresholds::default()),
    }
}

fn rule_exit(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_RULE_FAILURE
    }
}

/// Runs a parsed command, writing reports to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Analyze {
            device,
            json,
            text,
            thresholds,
        } => {
            let bytes = std::fs::read(device)
                .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", device.display()))))?;
            let t = load_thresholds(thresholds.as_deref())?;
            let result = analyze_document(&bytes, &t)?;
            let report = result.to_json()?;
            if let Some(path) = json {
                std::fs::write(path, &report)?;
            }
            if *text {
                out.write_all(analysis_text(&result)?.as_bytes())?;
            } else if json.is_none() {
                out.write_all(report.as_bytes())?;
            }
            Ok(rule_exit(result.design_rules.overall_pass))
        }
        Command::Capmatrix {
            matrix,
            keep,
            ground,
            json,
        } => {
            let m = parse_capacitance_matrix(&read(matrix)?)?;
            match ground {
                Some(g) => {
                    let mut roles: BTreeMap<String, NetRole> = BTreeMap::new();
                    let elements: Vec<&String> = if keep.is_empty() {
                        m.net_names().iter().filter(|n| *n != g).collect()
                    } else {
                        keep.iter().filter(|n| *n != g).collect()
                    };
                    for n in elements {
                        roles.insert(n.clone(), NetRole::Element);
                    }
                    roles.insert(g.clone(), NetRole::Ground);
                    let caps = extract_circuit_caps(&m, &roles)?;
                    if *json {
                        let couplings: Vec<serde_json::Value> = caps
                            .couplings
                            .iter()
                            .map(|((a, b), c)| serde_json::json!({"a": a, "b": b, "capacitance_ff": c}))
                            .collect();
                        let v = serde_json::json!({"shunt_ff": caps.shunt, "couplings": couplings});
                        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                    } else {
                        out.write_all(circuit_caps_text(&caps).as_bytes())?;
                    }
                }
                None => {
                    let reduced = if keep.is_empty() {
                        m
                    } else {
                        let k: Vec<&str> = keep.iter().map(String::as_str).collect();
                        kron_reduce(&m, &k)?
                    };
                    if *json {
                        let rows: Vec<Vec<f64>> = (0..reduced.len())
                            .map(|i| reduced.values().row(i).iter().copied().collect())
                            .collect();
                        let v = serde_json::json!({"nets": reduced.net_names(), "values_ff": rows});
                        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                    } else {
                        out.write_all(matrix_text(&reduced).as_bytes())?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::TuneCurve {
            device,
            element,
            points,
            from,
            to,
            csv,
        } => {
            let spec = parse_device_spec(&read(device)?)?;
            let q = spec
                .qubit(element)
                .ok_or_else(|| Error::Configuration(format!("no qubit named '{element}'")))?;
            let sq = q
                .squid()
                .ok_or_else(|| Error::Configuration(format!("'{element}' is not flux tunable")))?;
            if *points == 0 {
                return Err(Error::Configuration("--points must be >= 1".into()));
            }
            let curve = tuning_curve(&sq, &flux_grid(*from, *to, *points)).map_err(|e| e.in_element(element))?;
            match csv {
                Some(path) => std::fs::write(path, curve.to_csv())?,
                None => out.write_all(curve.to_csv().as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            result,
            thresholds,
            json,
        } => {
            let analysis = AnalysisResult::from_json(&read(result)?)?;
            if !analysis.is_complete() {
                return Err(Error::Validation(
                    "analysis is incomplete: a qubit-resonator coupling has no report".into(),
                ));
            }
            let t = load_thresholds(thresholds.as_deref())?;
            let report = run_design_rules(&analysis, &t);
            if *json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                out.write_all(rules_text(&report).as_bytes())?;
            }
            Ok(rule_exit(report.overall_pass))
        }
        Command::FitTargets {
            f01,
            alpha,
            tolerance,
            resonator_f,
            inductance,
            mode,
        } => {
            let mut report = serde_json::Map::new();
            match (f01, alpha) {
                (Some(f), Some(a)) => {
                    let fit = fit_transmon(&TransmonTarget {
                        f01_target: *f,
                        alpha_target_magnitude: *a,
                        tolerance: *tolerance,
                    })?;
                    report.insert("transmon".into(), serde_json::to_value(fit)?);
                }
                (None, None) => {}
                _ => return Err(Error::Configuration("--f01 and --alpha must be given together".into())),
            }
            match (resonator_f, inductance) {
                (Some(f), Some(l)) => {
                    let c = fit_resonator(*f, *l, (*mode).into())?;
                    report.insert(
                        "resonator".into(),
                        serde_json::json!({"c_total_ff": c, "l_total_nh": l, "frequency_ghz": f}),
                    );
                }
                (None, None) => {}
                _ => {
                    return Err(Error::Configuration(
                        "--resonator-f and --inductance must be given together".into(),
                    ))
                }
            }
            if report.is_empty() {
                return Err(Error::Configuration("nothing to fit: give --f01/--alpha or --resonator-f/--inductance".into()));
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}
