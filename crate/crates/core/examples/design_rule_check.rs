//! Design-rule registry: default thresholds, a tightened variant, and a
//! custom rule added alongside the built-in set.

use chipqed::analysis::{analyze_device, AnalysisResult};
use chipqed::report::rules_text;
use chipqed::rules::{default_rules, run_rules_with, DesignRule, RuleEntry, RuleThresholds};

/// Flags qubits whose 0-1 transition sits above 5 GHz.
struct BelowFiveGhz;

impl DesignRule for BelowFiveGhz {
    fn id(&self) -> &'static str {
        "qubit_below_5ghz"
    }

    fn evaluate(&self, a: &AnalysisResult, _t: &RuleThresholds) -> Vec<RuleEntry> {
        a.qubits
            .iter()
            .map(|q| RuleEntry {
                rule: self.id().into(),
                subject: q.name.clone(),
                measured: q.e01_ghz,
                threshold: 5.0,
                margin: 5.0 - q.e01_ghz,
                pass: q.e01_ghz <= 5.0,
            })
            .collect()
    }
}

fn main() -> chipqed::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/two_qubit_chip.json"))?;
    let spec = chipqed::parse_device_spec(&text)?;
    let defaults = RuleThresholds::default();
    let analysis = analyze_device(&spec, &defaults)?;
    println!("default thresholds");
    print!("{}", rules_text(&analysis.design_rules));

    let strict = RuleThresholds { g_over_delta_max: 0.01, ..defaults.clone() };
    let mut rules = default_rules();
    rules.push(Box::new(BelowFiveGhz));
    println!("\ng/Delta <= 0.01 plus a custom rule");
    print!("{}", rules_text(&run_rules_with(&rules, &analysis, &strict)));
    Ok(())
}
