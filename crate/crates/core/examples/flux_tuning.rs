//! Flux sweep of an asymmetric-SQUID transmon. Prints the extrema and a
//! coarse table; `--csv` dumps the full curve.

use chipqed::squid::{flux_grid, frequency_extrema, junction_asymmetry, tuning_curve, SquidParams};

fn main() -> chipqed::Result<()> {
    let csv = std::env::args().any(|a| a == "--csv");
    let sq = SquidParams {
        ic_total: 40.0,
        width_ratio: 3.0,
        shunt_capacitance: 108.0,
    };
    let curve = tuning_curve(&sq, &flux_grid(-0.5, 0.5, 201))?;
    if csv {
        print!("{}", curve.to_csv());
        return Ok(());
    }

    let ext = frequency_extrema(&sq)?;
    println!("d = {:.3}", junction_asymmetry(sq.width_ratio)?);
    println!("f_max = {:.4} GHz at 0, f_min = {:.4} GHz at half flux", ext.f_max, ext.f_min);
    println!("{:>8}  {:>9}  {:>10}", "flux", "e01 GHz", "alpha MHz");
    for i in (100..=200).step_by(10) {
        println!(
            "{:>8.3}  {:>9.4}  {:>10.2}",
            curve.flux_points[i],
            curve.e01[i],
            curve.anharmonicity[i] * 1e3
        );
    }
    Ok(())
}
