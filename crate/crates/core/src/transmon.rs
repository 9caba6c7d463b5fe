//! Charge-basis transmon Hamiltonian and its low-lying spectrum.
//!
//! H = Σₙ 4Ec(n − ng)² |n⟩⟨n| − (Ej/2) Σₙ (|n⟩⟨n+1| + h.c.), with n the
//! Cooper-pair number truncated to [−ncut, ncut]. Energies are in GHz.

use crate::constants::EnergyOverH;
use crate::error::{Error, Result};
use crate::linalg::{eigh_tridiagonal, eigvalsh_tridiagonal, SymTridiagonal};
use serde::{Deserialize, Serialize};

pub const DEFAULT_NCUT: usize = 20;
pub const MAX_NCUT: usize = 80;
pub const MIN_NCUT: usize = 5;
/// Largest e01 change (GHz) tolerated when the cutoff is doubled.
pub const CUTOFF_TOLERANCE: f64 = 1e-9;
/// Below this Ej/Ec the asymptotic expansions are not trusted.
pub const PERTURBATIVE_MIN_RATIO: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmonParams {
    pub ec: EnergyOverH,
    pub ej: EnergyOverH,
    pub ng: f64,
    pub ncut: usize,
}

impl TransmonParams {
    /// Parameters at zero offset charge with the default cutoff.
    pub fn new(ec: EnergyOverH, ej: EnergyOverH) -> Self {
        TransmonParams {
            ec,
            ej,
            ng: 0.0,
            ncut: DEFAULT_NCUT,
        }
    }

    pub fn with_ng(self, ng: f64) -> Self {
        TransmonParams { ng, ..self }
    }

    pub fn with_ncut(self, ncut: usize) -> Self {
        TransmonParams { ncut, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ec.is_finite() && self.ec > 0.0) {
            return Err(Error::Domain(format!("Ec must be > 0, got {}", self.ec)));
        }
        if !(self.ej.is_finite() && self.ej >= 0.0) {
            return Err(Error::Domain(format!("Ej must be >= 0, got {}", self.ej)));
        }
        if !self.ng.is_finite() {
            return Err(Error::Domain("offset charge must be finite".into()));
        }
        if self.ncut < MIN_NCUT {
            return Err(Error::Domain(format!(
                "ncut must be >= {MIN_NCUT}, got {}",
                self.ncut
            )));
        }
        Ok(())
    }

    pub fn ej_over_ec(&self) -> f64 {
        self.ej / self.ec
    }

    fn dim(&self) -> usize {
        2 * self.ncut + 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransmonSpectrum {
    /// Lowest levels relative to the ground state, ascending.
    pub levels: Vec<f64>,
    pub e01: f64,
    pub e12: f64,
    /// e12 − e01; negative for a transmon.
    pub anharmonicity_signed: f64,
    /// |⟨0|n̂|1⟩|.
    pub charge_me_01: f64,
    pub ej_over_ec: f64,
    /// Charge matrix elements ⟨i|n̂|j⟩ among the returned levels, row-major.
    #[serde(skip)]
    pub charge_matrix: Vec<Vec<f64>>,
    /// Cutoff the reported values were computed with.
    pub ncut: usize,
}

impl TransmonSpectrum {
    pub fn anharmonicity(&self) -> f64 {
        self.anharmonicity_signed.abs()
    }
}

/// Charge-basis Hamiltonian of dimension 2·ncut + 1.
pub fn build_charge_hamiltonian(p: &TransmonParams) -> Result<SymTridiagonal> {
    p.validate()?;
    let n = p.dim();
    let diag = (0..n)
        .map(|i| {
            let charge = i as f64 - p.ncut as f64 - p.ng;
            4.0 * p.ec * charge * charge
        })
        .collect();
    SymTridiagonal::new(diag, vec![-p.ej / 2.0; n - 1])
}

fn charge_numbers(ncut: usize) -> Vec<f64> {
    (0..2 * ncut + 1).map(|i| i as f64 - ncut as f64).collect()
}

/// Diagonalizes at a single cutoff with no convergence check.
pub fn spectrum_at_cutoff(p: &TransmonParams, m: usize) -> Result<TransmonSpectrum> {
    if m < 3 {
        return Err(Error::Domain(format!("need at least 3 levels, got {m}")));
    }
    let h = build_charge_hamiltonian(p)?;
    let m = m.min(h.dim());
    let eig = eigh_tridiagonal(&h, m)?;
    let ground = eig.values[0];
    let levels: Vec<f64> = eig.values.iter().map(|e| e - ground).collect();
    let n = charge_numbers(p.ncut);
    let charge_matrix: Vec<Vec<f64>> = eig
        .vectors
        .iter()
        .map(|vi| {
            eig.vectors
                .iter()
                .map(|vj| vi.iter().zip(vj).zip(&n).map(|((a, b), q)| a * q * b).sum())
                .collect()
        })
        .collect();
    let e01 = levels[1];
    let e12 = levels[2] - levels[1];
    Ok(TransmonSpectrum {
        e01,
        e12,
        anharmonicity_signed: e12 - e01,
        charge_me_01: charge_matrix[0][1].abs(),
        ej_over_ec: p.ej_over_ec(),
        levels,
        charge_matrix,
        ncut: p.ncut,
    })
}

/// Lowest `m` levels with the cutoff doubled until e01 is stable.
///
/// Starting from `p.ncut`, the spectrum is accepted once doubling the
/// cutoff moves e01 by less than [`CUTOFF_TOLERANCE`]; the cutoff is
/// capped at [`MAX_NCUT`] (or the starting value, if larger).
pub fn transmon_spectrum(p: &TransmonParams, m: usize) -> Result<TransmonSpectrum> {
    p.validate()?;
    let cap = MAX_NCUT.max(p.ncut);
    let mut current = spectrum_at_cutoff(p, m)?;
    let mut last_change = f64::INFINITY;
    let mut ncut = p.ncut;
    while ncut < cap {
        let next_ncut = (2 * ncut).min(cap);
        let probe = e01_at_cutoff(&p.with_ncut(next_ncut))?;
        last_change = (probe - current.e01).abs();
        if last_change < CUTOFF_TOLERANCE {
            return Ok(current);
        }
        ncut = next_ncut;
        current = spectrum_at_cutoff(&p.with_ncut(ncut), m)?;
    }
    Err(Error::Cutoff {
        max_ncut: cap,
        last_change,
    })
}

fn e01_at_cutoff(p: &TransmonParams) -> Result<f64> {
    let h = build_charge_hamiltonian(p)?;
    let v = eigvalsh_tridiagonal(&h, 2)?;
    Ok(v[1] - v[0])
}

/// e01 and signed anharmonicity without eigenvectors or cutoff adaptation.
/// Used in inner loops where the cutoff is already known to be converged.
pub fn transition_energies(p: &TransmonParams) -> Result<(f64, f64)> {
    let h = build_charge_hamiltonian(p)?;
    let v = eigvalsh_tridiagonal(&h, 3)?;
    let e01 = v[1] - v[0];
    Ok((e01, v[2] - 2.0 * v[1] + v[0]))
}

/// Leading-order transmon asymptotics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeSpectrum {
    /// √(8 Ej Ec) − Ec
    pub e01: f64,
    /// −Ec
    pub anharmonicity: f64,
    /// (Ej / 8Ec)^¼ / √2
    pub charge_me_01: f64,
}

pub fn perturbative_spectrum(ec: EnergyOverH, ej: EnergyOverH) -> Result<PerturbativeSpectrum> {
    if !(ec > 0.0 && ej.is_finite() && ec.is_finite()) {
        return Err(Error::Domain(format!("need Ec > 0 and finite Ej, got ({ec}, {ej})")));
    }
    let ratio = ej / ec;
    if ratio <= PERTURBATIVE_MIN_RATIO {
        return Err(Error::Domain(format!(
            "Ej/Ec = {ratio:.3} is below the transmon regime ({PERTURBATIVE_MIN_RATIO})"
        )));
    }
    Ok(PerturbativeSpectrum {
        e01: (8.0 * ej * ec).sqrt() - ec,
        anharmonicity: -ec,
        charge_me_01: (ratio / 8.0).powf(0.25) / std::f64::consts::SQRT_2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{charging_energy, josephson_energy};
    use approx::assert_relative_eq;

    #[test]
    fn hamiltonian_layout() {
        let h = build_charge_hamiltonian(&TransmonParams::new(1.0, 0.0).with_ncut(5)).unwrap();
        assert_eq!(h.dim(), 11);
        assert_eq!(h.diag()[5], 0.0);
        assert_eq!(h.diag()[4], 4.0);
        assert_eq!(h.diag()[6], 4.0);
        assert_eq!(h.diag()[0], 100.0);
        assert!(h.offdiag().iter().all(|&x| x == 0.0));

        let h = build_charge_hamiltonian(&TransmonParams::new(1.0, 2.0).with_ncut(5)).unwrap();
        assert!(h.offdiag().iter().all(|&x| x == -1.0));

        let h = build_charge_hamiltonian(&TransmonParams::new(1.0, 0.0).with_ncut(5).with_ng(0.25)).unwrap();
        assert_relative_eq!(h.diag()[5], 0.25, epsilon = 1e-15);
        assert_relative_eq!(h.diag()[6], 4.0 * 0.75 * 0.75, epsilon = 1e-15);
    }

    #[test]
    fn small_cutoff_rejected() {
        let p = TransmonParams::new(1.0, 2.0).with_ncut(1);
        assert!(matches!(build_charge_hamiltonian(&p), Err(Error::Domain(_))));
        assert!(TransmonParams::new(0.0, 1.0).validate().is_err());
        assert!(TransmonParams::new(1.0, -1.0).validate().is_err());
    }

    #[test]
    fn charging_only_spectrum() {
        // Ej = 0, ng = 0: levels 0, 4Ec, 4Ec (n = ±1), 16Ec, ...
        let s = transmon_spectrum(&TransmonParams::new(0.5, 0.0), 4).unwrap();
        assert_relative_eq!(s.e01, 2.0, epsilon = 1e-12);
        assert_relative_eq!(s.levels[2], 2.0, epsilon = 1e-12);
        assert_relative_eq!(s.levels[3], 8.0, epsilon = 1e-12);
    }

    #[test]
    fn fixed_qubit_golden() {
        let ec = charging_energy(108.0).unwrap();
        let ej = josephson_energy(30.0).unwrap();
        let s = transmon_spectrum(&TransmonParams::new(ec, ej), 4).unwrap();
        assert!((s.e01 / 4.43 - 1.0).abs() < 0.01, "e01 = {}", s.e01);
        assert!((s.anharmonicity() / 0.198 - 1.0).abs() < 0.15);
        assert!((s.ej_over_ec - 83.1).abs() < 0.3);
        assert!(s.anharmonicity_signed < 0.0);
        assert_eq!(s.levels[0], 0.0);
        assert!(s.levels.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn tunable_golden_at_zero_flux() {
        let s = transmon_spectrum(&TransmonParams::new(0.17936, 19.868), 3).unwrap();
        assert!((s.e01 / 5.16 - 1.0).abs() < 0.01);
        let s = transmon_spectrum(&TransmonParams::new(0.15374, 17.384), 3).unwrap();
        assert!((s.e01 / 4.47 - 1.0).abs() < 0.01);
    }

    #[test]
    fn lowest_gap_at_fixed_cutoff() {
        let p = TransmonParams::new(0.17936, 14.901).with_ncut(20);
        let h = build_charge_hamiltonian(&p).unwrap();
        assert_eq!(h.dim(), 41);
        let v = eigvalsh_tridiagonal(&h, 2).unwrap();
        assert!(((v[1] - v[0]) / 4.43 - 1.0).abs() < 0.01);
    }

    #[test]
    fn perturbative_golden() {
        let est = perturbative_spectrum(0.17936, 14.901).unwrap();
        assert_relative_eq!(est.e01, 4.445, epsilon = 5e-4);
        assert_relative_eq!(est.charge_me_01, 1.2695, epsilon = 5e-4);
        assert_eq!(est.anharmonicity, -0.17936);
        // Ej = 8 Ec t⁴ gives exactly t/√2.
        let (ec, t) = (0.3_f64, 2.0_f64);
        let est = perturbative_spectrum(ec, 8.0 * ec * t.powi(4)).unwrap();
        assert_relative_eq!(est.charge_me_01, t / std::f64::consts::SQRT_2, epsilon = 1e-15);
        assert!(matches!(perturbative_spectrum(1.0, 10.0), Err(Error::Domain(_))));
    }

    #[test]
    fn offset_charge_periodicity() {
        let base = TransmonParams::new(0.2, 16.0);
        for ng in [0.1, 0.25, 0.5] {
            let a = transmon_spectrum(&base.with_ng(ng), 3).unwrap();
            let b = transmon_spectrum(&base.with_ng(ng + 1.0), 3).unwrap();
            assert!((a.e01 - b.e01).abs() < 1e-9);
        }
        // Ej/Ec = 80: charge dispersion is exponentially small.
        let e0 = transmon_spectrum(&base, 3).unwrap().e01;
        let eh = transmon_spectrum(&base.with_ng(0.5), 3).unwrap().e01;
        assert!((eh - e0).abs() < 1e-6);
    }

    #[test]
    fn larger_cutoff_does_not_move_results() {
        let p = TransmonParams::new(0.15374, 17.384);
        let s = transmon_spectrum(&p, 4).unwrap();
        let big = spectrum_at_cutoff(&p.with_ncut(60), 4).unwrap();
        assert!((s.e01 - big.e01).abs() < 1e-9);
        assert!((s.anharmonicity_signed - big.anharmonicity_signed).abs() < 1e-9);
        assert!((s.charge_me_01 - big.charge_me_01).abs() < 1e-9);
        assert_eq!(
            transition_energies(&p).unwrap().0.to_bits(),
            spectrum_at_cutoff(&p, 3).unwrap().e01.to_bits()
        );
    }
}
