//! Ingest a field-solver capacitance matrix, eliminate floating nets and
//! read off shunt and mutual capacitances.
//!
//!     cargo run --example capacitance_reduction -- path/to/matrix.csv

use std::collections::BTreeMap;

use chipqed::capmatrix::{extract_circuit_caps, kron_reduce, parse_capacitance_matrix, NetRole};
use chipqed::report::{circuit_caps_text, matrix_text};

const HAND: &str = "# units: fF
pad1,pad2,island
120,-10,-20
-10,130,-20
-20,-20,40
";

fn main() -> chipqed::Result<()> {
    let m = parse_capacitance_matrix(HAND)?;
    print!("{}", matrix_text(&m));

    // The island floats: eliminating it folds 20*20/40 fF into the pad-pad coupling.
    let r = kron_reduce(&m, &["pad1", "pad2"])?;
    println!();
    print!("{}", matrix_text(&r));

    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/pads.csv").to_string());
    let pads = parse_capacitance_matrix(&std::fs::read_to_string(&path)?)?;
    let mut roles = BTreeMap::new();
    for net in pads.net_names() {
        let role = if net == "GND" { NetRole::Ground } else { NetRole::Element };
        roles.insert(net.clone(), role);
    }
    println!("\n{path}:");
    print!("{}", circuit_caps_text(&extract_circuit_caps(&pads, &roles)?));
    Ok(())
}
