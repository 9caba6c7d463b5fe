//! End-to-end analysis of a two-qubit chip with a tunable coupler: the same
//! pipeline as `chipqed analyze`, driven from the library.

use chipqed::analysis::analyze_document;
use chipqed::report::analysis_text;
use chipqed::RuleThresholds;

fn main() -> chipqed::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/two_qubit_chip.json").to_string());
    let bytes = std::fs::read(&path)?;
    let result = analyze_document(&bytes, &RuleThresholds::default())?;

    println!("{:<6} {:>9} {:>10} {:>8}", "qubit", "e01 GHz", "alpha MHz", "Ej/Ec");
    for q in &result.qubits {
        println!("{:<6} {:>9.4} {:>10.1} {:>8.1}", q.name, q.e01_ghz, q.anharmonicity_ghz * 1e3, q.ej_over_ec);
    }
    println!();
    println!("{:<8} {:>8} {:>10} {:>10}", "pair", "g MHz", "chi kHz", "exact kHz");
    for c in &result.couplings {
        if let Some(r) = &c.report {
            println!(
                "{:<8} {:>8.2} {:>10.1} {:>10.1}",
                c.name,
                r.g * 1e3,
                r.chi_perturbative * 1e6,
                r.chi_exact.unwrap_or(f64::NAN) * 1e6
            );
        }
    }
    println!("\nlargest deviations from reference values:");
    let mut devs: Vec<_> = result.deviations.iter().collect();
    devs.sort_by(|a, b| b.relative_deviation.abs().total_cmp(&a.relative_deviation.abs()));
    for d in devs.iter().take(5) {
        println!("  {:<6} {:<22} {:+.1}%", d.subject, d.quantity, d.relative_deviation * 100.0);
    }

    if std::env::args().any(|a| a == "--text") {
        println!();
        print!("{}", analysis_text(&result)?);
    }
    Ok(())
}
