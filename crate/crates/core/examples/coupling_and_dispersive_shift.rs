//! Qubit-resonator coupling rate and dispersive shift, checked against a
//! joint diagonalization of the truncated transmon-oscillator system.

use chipqed::constants::{charging_energy, josephson_energy};
use chipqed::coupling::{chi_exact_oracle, coupling_report, DEFAULT_PHOTON_LEVELS, DEFAULT_QUBIT_LEVELS};
use chipqed::resonator::{resonant_frequency, ResonatorMode, ResonatorParams};
use chipqed::transmon::{transmon_spectrum, TransmonParams};

fn main() -> chipqed::Result<()> {
    let (c_q, ic, c_c) = (108.0, 30.0, 7.59);
    let resonator = ResonatorParams::new(1.96, 744.0, ResonatorMode::QuarterWave);

    let qubit = TransmonParams::new(charging_energy(c_q)?, josephson_energy(ic)?);
    let spectrum = transmon_spectrum(&qubit, 3)?;
    let rep = coupling_report(c_c, c_q, &resonator, &qubit, &spectrum, true)?;
    let f_r = resonant_frequency(&resonator)?;

    println!("beta   = {:.5}", rep.beta);
    println!("V_rms  = {:.4} uV", rep.v_rms * 1e6);
    println!("g      = {:.2} MHz", rep.g * 1e3);
    println!("Delta  = {:.4} GHz", rep.detuning);
    println!("chi    = {:.1} kHz (closed form)", rep.chi_perturbative * 1e6);
    println!("chi    = {:.1} kHz (joint diagonalization)", rep.chi_exact.unwrap() * 1e6);

    println!("\n{:>8}  {:>12}  {:>12}", "g scale", "closed kHz", "exact kHz");
    for scale in [2.0, 1.0, 0.5, 0.25] {
        let g = rep.g * scale;
        let closed = chipqed::coupling::dispersive_shift(g, spectrum.e01, f_r, spectrum.anharmonicity_signed)?;
        let exact = chi_exact_oracle(&qubit, f_r, g, DEFAULT_QUBIT_LEVELS, DEFAULT_PHOTON_LEVELS)?;
        println!("{scale:>8}  {:>12.2}  {:>12.2}", closed * 1e6, exact * 1e6);
    }
    Ok(())
}
