//! Resonator fundamentals from extracted totals, the thick-substrate CPW
//! estimate, and the inverse (capacitance for a target frequency).

use chipqed::resonator::{cpw_analytic_frequency, fit_resonator, resonant_frequency, ResonatorMode, ResonatorParams};

fn main() -> chipqed::Result<()> {
    let lines = [("r1", 1.96, 744.0), ("rt", 1.99, 740.0), ("r3", 1.95, 722.0)];
    for (name, l, c) in lines {
        let quarter = resonant_frequency(&ResonatorParams::new(l, c, ResonatorMode::QuarterWave))?;
        let lumped = resonant_frequency(&ResonatorParams::new(l, c, ResonatorMode::Lumped))?;
        println!("{name}: L = {l} nH, C = {c} fF -> quarter-wave {quarter:.4} GHz (lumped LC {lumped:.4})");
    }

    for eps in [11.4, 11.45] {
        println!("4320 um on eps = {eps}: {:.4} GHz", cpw_analytic_frequency(4320.0, eps)?);
    }

    let c = fit_resonator(7.0, 1.96, ResonatorMode::QuarterWave)?;
    println!("7 GHz with 1.96 nH needs {c:.1} fF");
    Ok(())
}
