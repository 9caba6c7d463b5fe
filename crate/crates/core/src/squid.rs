//! Asymmetric dc-SQUID: effective Josephson energy versus threaded flux and
//! the resulting transmon tuning curves.

use crate::constants::{charging_energy, josephson_energy, Capacitance, Current, EnergyOverH, Flux};
use crate::error::{Error, Result};
use crate::transmon::{transmon_spectrum, TransmonParams};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquidParams {
    /// Ic1 + Ic2, nA.
    pub ic_total: Current,
    /// Junction width ratio W1/W2, oriented so that it is >= 1.
    pub width_ratio: f64,
    pub shunt_capacitance: Capacitance,
}

impl SquidParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.ic_total.is_finite() && self.ic_total > 0.0) {
            return Err(Error::Domain(format!("SQUID ic_total must be > 0, got {}", self.ic_total)));
        }
        junction_asymmetry(self.width_ratio)?;
        charging_energy(self.shunt_capacitance)?;
        Ok(())
    }

    fn base_params(&self) -> Result<(f64, EnergyOverH, EnergyOverH)> {
        self.validate()?;
        let d = junction_asymmetry(self.width_ratio)?;
        Ok((d, charging_energy(self.shunt_capacitance)?, josephson_energy(self.ic_total)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningCurve {
    pub flux_points: Vec<Flux>,
    pub e01: Vec<f64>,
    pub anharmonicity: Vec<f64>,
}

impl TuningCurve {
    pub fn len(&self) -> usize {
        self.flux_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flux_points.is_empty()
    }

    /// Writes `flux_phi0,e01_ghz,anharmonicity_ghz` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("flux_phi0,e01_ghz,anharmonicity_ghz\n");
        for ((phi, f), a) in self.flux_points.iter().zip(&self.e01).zip(&self.anharmonicity) {
            out.push_str(&format!("{phi},{f},{a}\n"));
        }
        out
    }
}

/// Junction asymmetry d = (r − 1)/(r + 1) for critical currents
/// proportional to junction width.
pub fn junction_asymmetry(width_ratio: f64) -> Result<f64> {
    if !width_ratio.is_finite() || width_ratio < 1.0 {
        return Err(Error::Domain(format!(
            "width ratio must be >= 1 (orient W1 as the wider junction), got {width_ratio}"
        )));
    }
    Ok((width_ratio - 1.0) / (width_ratio + 1.0))
}

/// Ej(Φ) = EjΣ·√(cos²(πΦ/Φ0) + d²·sin²(πΦ/Φ0)).
///
/// Equal to EjΣ·|cos|·√(1 + d²tan²) but without the singularity at Φ0/2.
pub fn effective_josephson_energy(ej_sigma: EnergyOverH, d: f64, flux: Flux) -> EnergyOverH {
    let (s, c) = (PI * flux).sin_cos();
    ej_sigma * (c * c + d * d * s * s).sqrt()
}

fn params_at(ec: f64, ej_sigma: f64, d: f64, flux: Flux) -> TransmonParams {
    TransmonParams::new(ec, effective_josephson_energy(ej_sigma, d, flux))
}

/// Full transmon spectrum at each flux point. Points are evaluated in
/// parallel; output order follows `flux_grid`.
pub fn tuning_curve(sq: &SquidParams, flux_grid: &[Flux]) -> Result<TuningCurve> {
    if flux_grid.is_empty() {
        return Err(Error::Domain("flux grid is empty".into()));
    }
    if flux_grid.iter().any(|f| !f.is_finite()) {
        return Err(Error::Domain("flux grid contains non-finite values".into()));
    }
    let (d, ec, ej_sigma) = sq.base_params()?;
    let points: Vec<(f64, f64)> = flux_grid
        .par_iter()
        .map(|&phi| {
            transmon_spectrum(&params_at(ec, ej_sigma, d, phi), 3)
                .map(|s| (s.e01, s.anharmonicity_signed))
        })
        .collect::<Result<_>>()?;
    let (e01, anharmonicity) = points.into_iter().unzip();
    Ok(TuningCurve {
        flux_points: flux_grid.to_vec(),
        e01,
        anharmonicity,
    })
}

/// Evenly spaced grid of `points` values over [lo, hi].
pub fn flux_grid(lo: Flux, hi: Flux, points: usize) -> Vec<Flux> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyExtrema {
    /// e01 at zero flux (Ej = EjΣ).
    pub f_max: f64,
    /// e01 at half a flux quantum (Ej = d·EjΣ).
    pub f_min: f64,
}

pub fn frequency_extrema(sq: &SquidParams) -> Result<FrequencyExtrema> {
    let (d, ec, ej_sigma) = sq.base_params()?;
    let f_max = transmon_spectrum(&TransmonParams::new(ec, ej_sigma), 3)?.e01;
    let f_min = transmon_spectrum(&TransmonParams::new(ec, d * ej_sigma), 3)?.e01;
    Ok(FrequencyExtrema { f_max, f_min })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const Q2: SquidParams = SquidParams {
        ic_total: 40.0,
        width_ratio: 3.0,
        shunt_capacitance: 108.0,
    };
    const COUPLER: SquidParams = SquidParams {
        ic_total: 35.0,
        width_ratio: 3.0,
        shunt_capacitance: 126.0,
    };

    #[test]
    fn asymmetry_values() {
        assert_eq!(junction_asymmetry(3.0).unwrap(), 0.5);
        assert_eq!(junction_asymmetry(1.0).unwrap(), 0.0);
        assert_eq!(junction_asymmetry(7.0).unwrap(), 0.75);
        assert!(matches!(junction_asymmetry(0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn effective_ej_values() {
        assert_eq!(effective_josephson_energy(10.0, 0.5, 0.0), 10.0);
        assert_relative_eq!(effective_josephson_energy(10.0, 0.5, 0.5), 5.0, epsilon = 1e-14);
        assert_relative_eq!(effective_josephson_energy(1.0, 0.5, 0.25), 0.625_f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(effective_josephson_energy(1.0, 0.0, 0.5), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn q2_tuning_endpoints() {
        let c = tuning_curve(&Q2, &[0.0, 0.5]).unwrap();
        assert!((c.e01[0] / 5.16 - 1.0).abs() < 0.01);
        assert!((c.e01[1] / 3.59 - 1.0).abs() < 0.02);
    }

    #[test]
    fn coupler_extrema() {
        let ext = frequency_extrema(&COUPLER).unwrap();
        assert!((ext.f_max / 4.47 - 1.0).abs() < 0.01);
        // Frozen from an independent dense diagonalization at Ej = 0.5·EjΣ.
        assert!((ext.f_min / 3.1075 - 1.0).abs() < 0.02, "f_min = {}", ext.f_min);
    }

    #[test]
    fn symmetric_squid_bottoms_out_at_charging_gap() {
        let sq = SquidParams {
            width_ratio: 1.0,
            ..COUPLER
        };
        let ext = frequency_extrema(&sq).unwrap();
        let ec = charging_energy(126.0).unwrap();
        assert_relative_eq!(ext.f_min, 4.0 * ec, epsilon = 1e-12);
    }

    #[test]
    fn curve_is_even_and_decreasing() {
        let grid = flux_grid(-0.5, 0.5, 41);
        let c = tuning_curve(&Q2, &grid).unwrap();
        for i in 0..grid.len() {
            assert!((c.e01[i] - c.e01[grid.len() - 1 - i]).abs() < 1e-9);
        }
        let half = &c.e01[20..];
        assert!(half.windows(2).all(|w| w[1] < w[0]));
        assert!(c.anharmonicity.iter().all(|&a| a < 0.0));
    }

    #[test]
    fn csv_layout() {
        let c = tuning_curve(&Q2, &[0.0, 0.25]).unwrap();
        let csv = c.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "flux_phi0,e01_ghz,anharmonicity_ghz");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0,"));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(tuning_curve(&Q2, &[]).is_err());
        let bad = SquidParams { width_ratio: 0.3, ..Q2 };
        assert!(frequency_extrema(&bad).is_err());
        let bad = SquidParams { ic_total: 0.0, ..Q2 };
        assert!(bad.validate().is_err());
    }
}
