//! Physical constants (exact SI-2019 values) and conversions from circuit
//! parameters to energies in frequency units, E/h in GHz.
//!
//! Inputs use the units layout extraction tools report: fF, nH, nA, µm.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Capacitance in fF.
pub type Capacitance = f64;
/// Inductance in nH.
pub type Inductance = f64;
/// Current in nA.
pub type Current = f64;
/// Frequency in GHz.
pub type Frequency = f64;
/// Energy divided by Planck's constant, in GHz.
pub type EnergyOverH = f64;
/// Length in µm.
pub type Length = f64;
/// Magnetic flux in units of the flux quantum.
pub type Flux = f64;

/// Elementary charge (C).
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
/// Planck constant (J·s).
pub const PLANCK: f64 = 6.62607015e-34;
/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Superconducting flux quantum h/(2e) (Wb).
pub const FLUX_QUANTUM: f64 = PLANCK / (2.0 * ELEMENTARY_CHARGE);

/// Label recorded in report provenance.
pub const CONSTANTS_VERSION: &str = "SI-2019 exact (e, h, c)";

pub const FEMTO: f64 = 1e-15;
pub const NANO: f64 = 1e-9;
pub const MICRO: f64 = 1e-6;
pub const GIGA: f64 = 1e9;

/// The constant set as a value, for callers that want to pass it around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub e: f64,
    pub h: f64,
    pub flux_quantum: f64,
    pub c: f64,
}

impl PhysicalConstants {
    pub const SI_2019: PhysicalConstants = PhysicalConstants {
        e: ELEMENTARY_CHARGE,
        h: PLANCK,
        flux_quantum: FLUX_QUANTUM,
        c: SPEED_OF_LIGHT,
    };
}

pub(crate) fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and > 0, got {value}")))
    }
}

pub(crate) fn require_non_negative(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and >= 0, got {value}")))
    }
}

/// Charging energy Ec/h = e²/(2Ch) of a shunt capacitance, in GHz.
pub fn charging_energy(c_shunt: Capacitance) -> Result<EnergyOverH> {
    require_positive("shunt capacitance", c_shunt)?;
    let joules = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (2.0 * c_shunt * FEMTO);
    Ok(joules / PLANCK / GIGA)
}

/// Josephson energy Ej/h = Φ0·Ic/(2πh) = Ic/(4πe), in GHz.
pub fn josephson_energy(i_c: Current) -> Result<EnergyOverH> {
    require_non_negative("critical current", i_c)?;
    Ok(i_c * NANO / (4.0 * PI * ELEMENTARY_CHARGE) / GIGA)
}

/// Shunt capacitance (fF) giving the requested charging energy.
pub fn capacitance_for_charging_energy(ec: EnergyOverH) -> Result<Capacitance> {
    require_positive("charging energy", ec)?;
    Ok(ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (2.0 * ec * GIGA * PLANCK) / FEMTO)
}

/// Critical current (nA) giving the requested Josephson energy.
pub fn current_for_josephson_energy(ej: EnergyOverH) -> Result<Current> {
    require_non_negative("Josephson energy", ej)?;
    Ok(ej * GIGA * 4.0 * PI * ELEMENTARY_CHARGE / NANO)
}
