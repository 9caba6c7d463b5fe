//! Readout resonator frequencies from extracted totals and the analytic
//! coplanar-waveguide estimate.

use crate::constants::{Capacitance, Frequency, Inductance, Length, FEMTO, GIGA, MICRO, NANO, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DEFAULT_SUBSTRATE_EPSILON: f64 = 11.45;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResonatorMode {
    #[default]
    QuarterWave,
    HalfWave,
    Lumped,
}

impl ResonatorMode {
    /// f·√(LC) for this mode.
    fn prefactor(self) -> f64 {
        match self {
            ResonatorMode::QuarterWave => 0.25,
            ResonatorMode::HalfWave => 0.5,
            ResonatorMode::Lumped => 1.0 / (2.0 * PI),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonatorParams {
    pub l_total: Inductance,
    pub c_total: Capacitance,
    pub mode: ResonatorMode,
    pub length: Option<Length>,
    pub substrate_epsilon: Option<f64>,
}

impl ResonatorParams {
    pub fn new(l_total: Inductance, c_total: Capacitance, mode: ResonatorMode) -> Self {
        ResonatorParams {
            l_total,
            c_total,
            mode,
            length: None,
            substrate_epsilon: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("l_total", self.l_total), ("c_total", self.c_total)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("resonator {name} must be > 0, got {v}")));
            }
        }
        if let Some(l) = self.length {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::Domain(format!("resonator length must be > 0, got {l}")));
            }
        }
        Ok(())
    }

    /// Analytic CPW estimate when a length is known.
    pub fn analytic_frequency(&self) -> Result<Option<Frequency>> {
        match self.length {
            Some(l) => Ok(Some(cpw_analytic_frequency(
                l,
                self.substrate_epsilon.unwrap_or(DEFAULT_SUBSTRATE_EPSILON),
            )?)),
            None => Ok(None),
        }
    }
}

/// Fundamental frequency in GHz from total L (nH) and C (fF).
pub fn resonant_frequency(r: &ResonatorParams) -> Result<Frequency> {
    r.validate()?;
    let sqrt_lc = (r.l_total * NANO * r.c_total * FEMTO).sqrt();
    Ok(r.mode.prefactor() / sqrt_lc / GIGA)
}

/// Thick-substrate effective permittivity ½(ε_substrate + 1).
pub fn effective_permittivity(substrate_epsilon: f64) -> f64 {
    0.5 * (substrate_epsilon + 1.0)
}

/// Quarter-wave CPW estimate c / (4 l √ε_eff), in GHz.
pub fn cpw_analytic_frequency(length: Length, substrate_epsilon: f64) -> Result<Frequency> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::Domain(format!("length must be > 0, got {length}")));
    }
    if !(substrate_epsilon.is_finite() && substrate_epsilon >= 1.0) {
        return Err(Error::Domain(format!(
            "substrate permittivity must be >= 1, got {substrate_epsilon}"
        )));
    }
    let eps_eff = effective_permittivity(substrate_epsilon);
    Ok(SPEED_OF_LIGHT / (4.0 * length * MICRO * eps_eff.sqrt()) / GIGA)
}

/// Total capacitance (fF) that puts the resonator at `f_target` for a fixed
/// inductance.
pub fn fit_resonator(f_target: Frequency, l_fixed: Inductance, mode: ResonatorMode) -> Result<Capacitance> {
    if !(f_target.is_finite() && f_target > 0.0) {
        return Err(Error::Domain(format!("target frequency must be > 0, got {f_target}")));
    }
    if !(l_fixed.is_finite() && l_fixed > 0.0) {
        return Err(Error::Domain(format!("inductance must be > 0, got {l_fixed}")));
    }
    let sqrt_lc = mode.prefactor() / (f_target * GIGA);
    Ok(sqrt_lc * sqrt_lc / (l_fixed * NANO) / FEMTO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn quarter(l: f64, c: f64) -> f64 {
        resonant_frequency(&ResonatorParams::new(l, c, ResonatorMode::QuarterWave)).unwrap()
    }

    #[test]
    fn golden_quarter_wave() {
        assert!((quarter(1.96, 744.0) / 6.55 - 1.0).abs() < 0.002);
        assert!((quarter(1.99, 740.0) / 6.51 - 1.0).abs() < 0.002);
        assert!((quarter(1.95, 722.0) / 6.66 - 1.0).abs() < 0.002);
    }

    #[test]
    fn lumped_closed_form() {
        // 1 nH with 1 pF.
        let f = resonant_frequency(&ResonatorParams::new(1.0, 1000.0, ResonatorMode::Lumped)).unwrap();
        assert_relative_eq!(f, 5.0329, epsilon = 1e-4);
        let f = resonant_frequency(&ResonatorParams::new(1.0, 1.0, ResonatorMode::Lumped)).unwrap();
        assert_relative_eq!(f, 159.1549, epsilon = 1e-4);
        let q = quarter(1.0, 1.0);
        assert_relative_eq!(q, f * PI / 2.0, max_relative = 1e-14);
        let h = resonant_frequency(&ResonatorParams::new(1.0, 1.0, ResonatorMode::HalfWave)).unwrap();
        assert_relative_eq!(h, 2.0 * q, max_relative = 1e-15);
    }

    #[test]
    fn analytic_estimate() {
        let f = cpw_analytic_frequency(4320.0, 11.4).unwrap();
        assert!((f / 6.96 - 1.0).abs() < 0.005);
        assert_relative_eq!(effective_permittivity(11.4), 6.2, epsilon = 1e-12);
        let vac = cpw_analytic_frequency(1000.0, 1.0).unwrap();
        assert_relative_eq!(vac, SPEED_OF_LIGHT / (4.0 * 1000.0e-6) / 1e9, max_relative = 1e-15);
        let double = cpw_analytic_frequency(2000.0, 11.4).unwrap();
        assert_relative_eq!(double, cpw_analytic_frequency(1000.0, 11.4).unwrap() / 2.0, max_relative = 1e-15);
        assert!(cpw_analytic_frequency(0.0, 11.4).is_err());
        assert!(cpw_analytic_frequency(10.0, 0.5).is_err());
    }

    #[test]
    fn fit_inverts_forward() {
        let c = fit_resonator(6.55, 1.96, ResonatorMode::QuarterWave).unwrap();
        assert!((c / 744.0 - 1.0).abs() < 0.005);
        let (f, l) = (7.1, 2.3);
        let c = fit_resonator(f, l, ResonatorMode::Lumped).unwrap();
        let expected = 1.0 / ((2.0 * PI * f * 1e9).powi(2) * l * 1e-9) / 1e-15;
        assert_relative_eq!(c, expected, max_relative = 1e-14);
        for mode in [ResonatorMode::QuarterWave, ResonatorMode::HalfWave, ResonatorMode::Lumped] {
            let c = fit_resonator(f, l, mode).unwrap();
            let back = resonant_frequency(&ResonatorParams::new(l, c, mode)).unwrap();
            assert_relative_eq!(back, f, max_relative = 1e-9);
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(resonant_frequency(&ResonatorParams::new(0.0, 1.0, ResonatorMode::Lumped)).is_err());
        assert!(resonant_frequency(&ResonatorParams::new(1.0, -1.0, ResonatorMode::Lumped)).is_err());
        assert!(fit_resonator(-1.0, 1.0, ResonatorMode::Lumped).is_err());
    }

    #[test]
    fn decreasing_in_l_and_c() {
        let base = quarter(2.0, 700.0);
        assert!(quarter(2.1, 700.0) < base);
        assert!(quarter(2.0, 710.0) < base);
    }
}
