//! Components for target frequencies: shunt capacitance and critical
//! current for a transmon, capacitance for a resonator.
//!
//!     cargo run --example inverse_design -- 5.0 0.22

use chipqed::fit::{fit_resonator, fit_transmon, TransmonTarget};
use chipqed::resonator::ResonatorMode;

fn main() -> chipqed::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let f01 = args.next().unwrap_or(4.43);
    let alpha = args.next().unwrap_or(0.198);

    let fit = fit_transmon(&TransmonTarget::new(f01, alpha))?;
    println!("target f01 = {f01} GHz, |alpha| = {} MHz", alpha * 1e3);
    println!("  C_shunt = {:.2} fF", fit.c_shunt);
    println!("  Ic      = {:.3} nA", fit.ic);
    println!("  Ej/Ec   = {:.1}", fit.ej_over_ec);
    println!("  check   f01 = {:.9} GHz, |alpha| = {:.6} MHz", fit.f01, fit.alpha_magnitude * 1e3);

    for f in [6.0, 6.55, 7.0] {
        let c = fit_resonator(f, 1.96, ResonatorMode::QuarterWave)?;
        println!("resonator {f} GHz with 1.96 nH: {c:.1} fF");
    }

    match fit_transmon(&TransmonTarget::new(f01, 10.0)) {
        Ok(_) => println!("unexpected fit for a 10 GHz anharmonicity"),
        Err(e) => println!("10 GHz anharmonicity: {e}"),
    }
    Ok(())
}
