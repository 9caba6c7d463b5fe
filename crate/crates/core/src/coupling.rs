//! Capacitive qubit–resonator coupling: participation ratio, vacuum voltage,
//! g-factor and dispersive shift.
//!
//! The dispersive shift has two routes. [`dispersive_shift`] is the closed
//! form χ = g²α/(Δ(Δ + α)); [`chi_exact_oracle`] diagonalizes the joint
//! transmon–resonator Hamiltonian and reads χ off the dressed spectrum.

use crate::constants::{Capacitance, Frequency, ELEMENTARY_CHARGE, FEMTO, GIGA, PLANCK};
use crate::error::{Error, Result};
use crate::linalg::eigh_dense;
use crate::resonator::{resonant_frequency, ResonatorParams};
use crate::transmon::{transmon_spectrum, TransmonParams, TransmonSpectrum};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

pub const DEFAULT_QUBIT_LEVELS: usize = 6;
pub const DEFAULT_PHOTON_LEVELS: usize = 8;
/// Detunings closer than this (GHz) to a resonance are rejected.
pub const DEGENERACY_THRESHOLD: f64 = 1e-6;
/// Minimum bare-state weight for a dressed state to carry its label.
pub const LABEL_MIN_WEIGHT: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingParams {
    pub c_coupling: Capacitance,
    pub c_qubit: Capacitance,
    pub resonator: ResonatorParams,
    pub qubit_spectrum: TransmonSpectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingReport {
    pub beta: f64,
    /// Volts.
    pub v_rms: f64,
    pub g: Frequency,
    /// f_q − f_r.
    pub detuning: Frequency,
    pub chi_perturbative: Frequency,
    pub chi_exact: Option<Frequency>,
}

/// β = Cc / (Cc + Cq).
pub fn participation_beta(c_coupling: Capacitance, c_qubit: Capacitance) -> Result<f64> {
    if !(c_qubit.is_finite() && c_qubit > 0.0) {
        return Err(Error::Domain(format!("qubit capacitance must be > 0, got {c_qubit}")));
    }
    if !(c_coupling.is_finite() && c_coupling >= 0.0) {
        return Err(Error::Domain(format!("coupling capacitance must be >= 0, got {c_coupling}")));
    }
    Ok(c_coupling / (c_coupling + c_qubit))
}

/// Zero-point rms voltage √(h f_r / 2C_r) of a resonator mode, in volts.
pub fn vacuum_rms_voltage(f_r: Frequency, c_r: Capacitance) -> Result<f64> {
    if !(f_r.is_finite() && f_r > 0.0 && c_r.is_finite() && c_r > 0.0) {
        return Err(Error::Domain(format!("need f_r > 0 and C_r > 0, got ({f_r}, {c_r})")));
    }
    Ok((PLANCK * f_r * GIGA / (2.0 * c_r * FEMTO)).sqrt())
}

/// g = 2eβV_rms⟨0|n̂|1⟩ / h, in GHz.
pub fn coupling_g(p: &CouplingParams) -> Result<Frequency> {
    let beta = participation_beta(p.c_coupling, p.c_qubit)?;
    let f_r = resonant_frequency(&p.resonator)?;
    let v_rms = vacuum_rms_voltage(f_r, p.resonator.c_total)?;
    Ok(g_from_parts(beta, v_rms, p.qubit_spectrum.charge_me_01))
}

fn g_from_parts(beta: f64, v_rms: f64, charge_me_01: f64) -> Frequency {
    2.0 * ELEMENTARY_CHARGE * beta * v_rms * charge_me_01 / PLANCK / GIGA
}

/// χ = g²α / (Δ(Δ + α)) with Δ = f_q − f_r and α signed.
pub fn dispersive_shift(g: Frequency, f_q: Frequency, f_r: Frequency, alpha_signed: Frequency) -> Result<Frequency> {
    let delta = f_q - f_r;
    if delta.abs() < DEGENERACY_THRESHOLD {
        return Err(Error::Degeneracy(format!(
            "qubit at {f_q} GHz is resonant with resonator at {f_r} GHz"
        )));
    }
    if (delta + alpha_signed).abs() < DEGENERACY_THRESHOLD {
        return Err(Error::Degeneracy(format!(
            "1-2 transition at {} GHz is resonant with resonator at {f_r} GHz",
            f_q + alpha_signed
        )));
    }
    Ok(g * g * alpha_signed / (delta * (delta + alpha_signed)))
}

/// Dispersive shift from the dressed spectrum of
/// H = H_q ⊗ I + I ⊗ f_r a†a + (g / n01) n̂ ⊗ (a + a†)
/// on `qubit_levels` transmon eigenstates times `photon_levels` Fock states.
///
/// Dressed states are labelled by their largest bare-state overlap, and
/// χ = ½[(E₁₁ − E₁₀) − (E₀₁ − E₀₀)].
pub fn chi_exact_oracle(
    qubit: &TransmonParams,
    f_r: Frequency,
    g: Frequency,
    qubit_levels: usize,
    photon_levels: usize,
) -> Result<Frequency> {
    if qubit_levels < 3 || photon_levels < 3 {
        return Err(Error::Domain(format!(
            "need at least 3 qubit and 3 photon levels, got ({qubit_levels}, {photon_levels})"
        )));
    }
    if !(f_r.is_finite() && f_r > 0.0 && g.is_finite() && g >= 0.0) {
        return Err(Error::Domain(format!("need f_r > 0 and g >= 0, got ({f_r}, {g})")));
    }
    let spectrum = transmon_spectrum(qubit, qubit_levels)?;
    let nq = spectrum.levels.len();
    let np = photon_levels;
    let scale = if g == 0.0 { 0.0 } else { g / spectrum.charge_me_01 };
    let index = |j: usize, k: usize| j * np + k;

    let dim = nq * np;
    let mut h = DMatrix::zeros(dim, dim);
    for j in 0..nq {
        for k in 0..np {
            h[(index(j, k), index(j, k))] = spectrum.levels[j] + k as f64 * f_r;
        }
    }
    if scale != 0.0 {
        for j in 0..nq {
            for jp in 0..nq {
                let n_jjp = spectrum.charge_matrix[j][jp];
                for k in 0..np - 1 {
                    // ⟨k+1| a† |k⟩ = √(k+1)
                    let amp = scale * n_jjp * ((k + 1) as f64).sqrt();
                    h[(index(j, k + 1), index(jp, k))] += amp;
                    h[(index(jp, k), index(j, k + 1))] += amp;
                }
            }
        }
    }
    let eig = eigh_dense(&h, dim)?;

    let dressed = |j: usize, k: usize| -> Result<f64> {
        let bare = index(j, k);
        let (best, weight) = eig
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v[bare] * v[bare]))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if weight < LABEL_MIN_WEIGHT {
            return Err(Error::Labeling {
                qubit: j,
                photons: k,
                overlap: weight,
            });
        }
        Ok(eig.values[best])
    };
    let e00 = dressed(0, 0)?;
    let e01 = dressed(0, 1)?;
    let e10 = dressed(1, 0)?;
    let e11 = dressed(1, 1)?;
    Ok(0.5 * ((e11 - e10) - (e01 - e00)))
}

/// Coupling report for a qubit–resonator pair. The joint diagonalization is
/// only run when `exact` is set.
pub fn coupling_report(
    c_coupling: Capacitance,
    c_qubit: Capacitance,
    resonator: &ResonatorParams,
    qubit: &TransmonParams,
    spectrum: &TransmonSpectrum,
    exact: bool,
) -> Result<CouplingReport> {
    let beta = participation_beta(c_coupling, c_qubit)?;
    let f_r = resonant_frequency(resonator)?;
    let v_rms = vacuum_rms_voltage(f_r, resonator.c_total)?;
    let g = g_from_parts(beta, v_rms, spectrum.charge_me_01);
    let chi_perturbative = dispersive_shift(g, spectrum.e01, f_r, spectrum.anharmonicity_signed)?;
    let chi_exact = if exact {
        Some(chi_exact_oracle(qubit, f_r, g, DEFAULT_QUBIT_LEVELS, DEFAULT_PHOTON_LEVELS)?)
    } else {
        None
    };
    Ok(CouplingReport {
        beta,
        v_rms,
        g,
        detuning: spectrum.e01 - f_r,
        chi_perturbative,
        chi_exact,
    })
}
