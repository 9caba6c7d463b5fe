//! Circuit-QED design figures for superconducting qubit chips.
//!
//! Starting from extracted electrical parameters (shunt and coupling
//! capacitances, junction critical currents, resonator L and C) the crate
//! computes transmon spectra by charge-basis diagonalization, asymmetric
//! SQUID tuning curves, resonator frequencies, coupling g-factors and
//! dispersive shifts, checks the result against design rules, and inverts
//! the pipeline to find components for target frequencies.
//!
//! ```
//! use chipqed::constants::{charging_energy, josephson_energy};
//! use chipqed::transmon::{transmon_spectrum, TransmonParams};
//!
//! let p = TransmonParams::new(charging_energy(108.0)?, josephson_energy(30.0)?);
//! let s = transmon_spectrum(&p, 3)?;
//! assert!((s.e01 - 4.44).abs() < 0.01);
//! # Ok::<(), chipqed::Error>(())
//! ```

pub mod analysis;
pub mod capmatrix;
pub mod cli;
pub mod constants;
pub mod coupling;
pub mod device;
pub mod error;
pub mod fit;
pub mod linalg;
pub mod report;
pub mod resonator;
pub mod rules;
pub mod squid;
pub mod transmon;

pub use analysis::{analyze_device, analyze_document, AnalysisResult};
pub use device::{parse_device_spec, DeviceSpec};
pub use error::{Error, Result};
pub use rules::{run_design_rules, DesignRuleReport, RuleThresholds};
