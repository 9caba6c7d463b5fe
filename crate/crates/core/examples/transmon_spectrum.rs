//! Charge-basis spectrum of a fixed-frequency transmon, next to the
//! leading-order asymptotics.
//!
//!     cargo run --example transmon_spectrum -- 108 30

use chipqed::constants::{charging_energy, josephson_energy};
use chipqed::transmon::{perturbative_spectrum, transmon_spectrum, TransmonParams};

fn main() -> chipqed::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let c_ff = args.next().unwrap_or(108.0);
    let ic_na = args.next().unwrap_or(30.0);

    let ec = charging_energy(c_ff)?;
    let ej = josephson_energy(ic_na)?;
    let s = transmon_spectrum(&TransmonParams::new(ec, ej), 5)?;
    let est = perturbative_spectrum(ec, ej)?;

    println!("C = {c_ff} fF, Ic = {ic_na} nA");
    println!("Ec = {ec:.5} GHz, Ej = {ej:.4} GHz, Ej/Ec = {:.2}", s.ej_over_ec);
    println!("converged at ncut = {}", s.ncut);
    for (k, e) in s.levels.iter().enumerate() {
        println!("  E{k} = {e:10.5} GHz");
    }
    println!("e01          {:.5} GHz   (asymptotic {:.5})", s.e01, est.e01);
    println!("alpha        {:.2} MHz   (asymptotic {:.2})", s.anharmonicity_signed * 1e3, est.anharmonicity * 1e3);
    println!("<0|n|1>      {:.4}       (asymptotic {:.4})", s.charge_me_01, est.charge_me_01);

    // Offset-charge sensitivity is exponentially small at this Ej/Ec.
    let half = transmon_spectrum(&TransmonParams::new(ec, ej).with_ng(0.5), 3)?;
    println!("e01(ng=0.5) - e01(ng=0) = {:.3e} GHz", half.e01 - s.e01);
    Ok(())
}
