//! Maxwell capacitance matrices: CSV ingestion, Kron reduction of floating
//! nets, and extraction of shunt and mutual capacitances.
//!
//! CSV layout:
//!
//! ```text
//! # units: fF
//! Q1,Q2,GND
//! 120,-10,-20
//! -10,130,-20
//! -20,-20,40
//! ```

use crate::error::{Error, Result};
use crate::linalg::eigh_dense;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};

pub const ASYMMETRY_TOLERANCE: f64 = 1e-6;
/// Row sums may dip this far below zero (fF) from solver rounding.
pub const ROW_SUM_TOLERANCE: f64 = 1e-6;
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct CapacitanceMatrix {
    net_names: Vec<String>,
    values: DMatrix<f64>,
}

impl CapacitanceMatrix {
    /// Validates Maxwell form. Asymmetries within [`ASYMMETRY_TOLERANCE`]
    /// (relative) are averaged away; larger ones are errors.
    pub fn new(net_names: Vec<String>, values: DMatrix<f64>) -> Result<Self> {
        let n = net_names.len();
        if n == 0 {
            return Err(Error::Validation("capacitance matrix has no nets".into()));
        }
        if values.nrows() != n || values.ncols() != n {
            return Err(Error::Validation(format!(
                "{} net names but a {}x{} matrix",
                n,
                values.nrows(),
                values.ncols()
            )));
        }
        let mut seen = HashSet::new();
        for name in &net_names {
            if name.is_empty() {
                return Err(Error::Validation("empty net name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Validation(format!("duplicate net name '{name}'")));
            }
        }
        let mut values = values;
        for i in 0..n {
            for j in 0..n {
                if !values[(i, j)].is_finite() {
                    return Err(cell_error(&net_names, i, j, "value is not finite"));
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (values[(i, j)], values[(j, i)]);
                let scale = values[(i, i)].abs().max(values[(j, j)].abs()).max(a.abs()).max(b.abs());
                if (a - b).abs() > ASYMMETRY_TOLERANCE * scale {
                    return Err(cell_error(&net_names, i, j, &format!("asymmetric: {a} vs {b}")));
                }
                let mean = 0.5 * (a + b);
                values[(i, j)] = mean;
                values[(j, i)] = mean;
            }
        }
        for i in 0..n {
            if values[(i, i)] <= 0.0 {
                return Err(cell_error(&net_names, i, i, "diagonal entry must be > 0"));
            }
            for j in 0..n {
                if i != j && values[(i, j)] > 0.0 {
                    return Err(cell_error(
                        &net_names,
                        i,
                        j,
                        "sign convention violated: off-diagonal entries must be <= 0",
                    ));
                }
            }
            let row_sum: f64 = values.row(i).sum();
            if row_sum < -ROW_SUM_TOLERANCE {
                return Err(Error::Validation(format!(
                    "net '{}' has negative capacitance to ground ({row_sum} fF)",
                    net_names[i]
                )));
            }
        }
        Ok(CapacitanceMatrix { net_names, values })
    }

    pub fn net_names(&self) -> &[String] {
        &self.net_names
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.net_names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.net_names.is_empty()
    }

    pub fn index_of(&self, net: &str) -> Option<usize> {
        self.net_names.iter().position(|n| n == net)
    }

    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        Some(self.values[(self.index_of(a)?, self.index_of(b)?)])
    }

    /// Capacitance from `net` to the reference: the row sum.
    pub fn capacitance_to_ground(&self, net: &str) -> Option<f64> {
        Some(self.values.row(self.index_of(net)?).sum())
    }

    /// Writes the CSV form accepted by [`parse_capacitance_matrix`].
    pub fn to_csv(&self) -> String {
        let mut out = String::from("# units: fF\n");
        out.push_str(&self.net_names.join(","));
        out.push('\n');
        for i in 0..self.len() {
            let row: Vec<String> = (0..self.len()).map(|j| format!("{}", self.values[(i, j)])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Copy with nets in the given order (must be a permutation).
    pub fn reordered(&self, order: &[&str]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::Validation("reorder must list every net exactly once".into()));
        }
        let idx = self.indices(order)?;
        let values = DMatrix::from_fn(idx.len(), idx.len(), |i, j| self.values[(idx[i], idx[j])]);
        CapacitanceMatrix::new(order.iter().map(|s| s.to_string()).collect(), values)
    }

    fn indices(&self, nets: &[&str]) -> Result<Vec<usize>> {
        let mut seen = HashSet::new();
        nets.iter()
            .map(|n| {
                if !seen.insert(*n) {
                    return Err(Error::Validation(format!("net '{n}' listed twice")));
                }
                self.index_of(n)
                    .ok_or_else(|| Error::Validation(format!("unknown net '{n}'")))
            })
            .collect()
    }
}

fn cell_error(names: &[String], i: usize, j: usize, msg: &str) -> Error {
    Error::Validation(format!("cell ({}, {}): {msg}", names[i], names[j]))
}

/// Parses the CSV export. Lines are 1-based in errors, columns are 1-based
/// field positions.
pub fn parse_capacitance_matrix(text: &str) -> Result<CapacitanceMatrix> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r')).enumerate();
    let parse_err = |line: usize, column: usize, message: String| Error::Parse {
        line: line + 1,
        column,
        message,
    };

    let (ln, units) = lines
        .next()
        .ok_or_else(|| parse_err(0, 1, "empty input".into()))?;
    let unit = units
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|s| s.strip_prefix("units:"))
        .map(str::trim);
    match unit {
        Some("fF") => {}
        Some(other) => return Err(parse_err(ln, 1, format!("unsupported unit '{other}', expected fF"))),
        None => return Err(parse_err(ln, 1, "first line must be '# units: fF'".into())),
    }

    let (ln, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing net-name header".into()))?;
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let mut seen = HashSet::new();
    for (col, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(parse_err(ln, col + 1, "empty net name".into()));
        }
        if !seen.insert(name.as_str()) {
            return Err(parse_err(ln, col + 1, format!("duplicate net name '{name}'")));
        }
    }
    let n = names.len();

    let mut values = DMatrix::zeros(n, n);
    let mut row = 0;
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if row == n {
            return Err(parse_err(ln, 1, format!("more than {n} data rows")));
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != n {
            return Err(parse_err(ln, cells.len().min(n) + 1, format!("expected {n} values, found {}", cells.len())));
        }
        for (col, cell) in cells.iter().enumerate() {
            let v: f64 = cell
                .trim()
                .parse()
                .map_err(|_| parse_err(ln, col + 1, format!("'{}' is not a number", cell.trim())))?;
            if !v.is_finite() {
                return Err(parse_err(ln, col + 1, "value is not finite".into()));
            }
            values[(row, col)] = v;
        }
        row += 1;
    }
    if row != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            column: 1,
            message: format!("expected {n} data rows, found {row}"),
        });
    }
    CapacitanceMatrix::new(names, values)
}

/// Eliminates every net not in `keep` (floating conductors carrying no net
/// charge) via the Schur complement M' = A − B·D⁻¹·Bᵀ. Kept nets retain
/// their original relative order.
pub fn kron_reduce(m: &CapacitanceMatrix, keep: &[&str]) -> Result<CapacitanceMatrix> {
    if keep.is_empty() {
        return Err(Error::Reduction("keep set is empty".into()));
    }
    let keep_set: HashSet<&str> = m.indices(keep)?.into_iter().map(|i| m.net_names[i].as_str()).collect();
    let kept: Vec<usize> = (0..m.len()).filter(|&i| keep_set.contains(m.net_names[i].as_str())).collect();
    let dropped: Vec<usize> = (0..m.len()).filter(|&i| !keep_set.contains(m.net_names[i].as_str())).collect();
    let names: Vec<String> = kept.iter().map(|&i| m.net_names[i].clone()).collect();
    let a = DMatrix::from_fn(kept.len(), kept.len(), |i, j| m.values[(kept[i], kept[j])]);
    if dropped.is_empty() {
        return CapacitanceMatrix::new(names, a);
    }
    let b = DMatrix::from_fn(kept.len(), dropped.len(), |i, j| m.values[(kept[i], dropped[j])]);
    let d = DMatrix::from_fn(dropped.len(), dropped.len(), |i, j| m.values[(dropped[i], dropped[j])]);

    let spectrum = eigh_dense(&d, d.nrows())?;
    let lo = spectrum.values[0];
    let hi = *spectrum.values.last().unwrap();
    if lo <= 0.0 || hi / lo > MAX_CONDITION || lo * MAX_CONDITION < m.values.amax() {
        return Err(Error::Reduction(format!(
            "eliminated block is singular or ill-conditioned (eigenvalues {lo:e} .. {hi:e})"
        )));
    }
    let chol = d
        .cholesky()
        .ok_or_else(|| Error::Reduction("eliminated block is not positive definite".into()))?;
    let reduced = &a - &b * chol.solve(&b.transpose());
    let reduced = 0.5 * (&reduced + reduced.transpose());
    // Clamp rounding-level positive off-diagonals so the result keeps Maxwell signs.
    let scale = reduced.amax();
    let reduced = DMatrix::from_fn(reduced.nrows(), reduced.ncols(), |i, j| {
        let v = reduced[(i, j)];
        if i != j && v > 0.0 && v <= 1e-12 * scale {
            0.0
        } else {
            v
        }
    });
    CapacitanceMatrix::new(names, reduced)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NetRole {
    /// Shorted to the reference ground.
    Ground,
    /// A circuit element terminal (qubit pad, resonator, drive line).
    Element,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitCaps {
    /// Capacitance to ground per element net, fF.
    pub shunt: BTreeMap<String, f64>,
    /// Mutual capacitance per unordered element pair (`a`, `b` with a < b), fF.
    pub couplings: BTreeMap<(String, String), f64>,
}

impl CircuitCaps {
    pub fn coupling(&self, a: &str, b: &str) -> Option<f64> {
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        self.couplings.get(&key).copied()
    }
}

/// Shunt and mutual capacitances between role-bearing nets.
///
/// Nets without a role float and are Kron-reduced away. Ground nets are
/// shorted to the reference, so each element's shunt is its row sum over
/// the remaining element nets, and couplings are the negated off-diagonals.
pub fn extract_circuit_caps(m: &CapacitanceMatrix, roles: &BTreeMap<String, NetRole>) -> Result<CircuitCaps> {
    for net in roles.keys() {
        if m.index_of(net).is_none() {
            return Err(Error::Configuration(format!("role assigned to unknown net '{net}'")));
        }
    }
    if !roles.values().any(|r| *r == NetRole::Ground) {
        return Err(Error::Configuration("no net has the ground role".into()));
    }
    let keep: Vec<&str> = roles.keys().map(String::as_str).collect();
    let reduced = kron_reduce(m, &keep)?;
    let elements: Vec<usize> = (0..reduced.len())
        .filter(|&i| roles[&reduced.net_names[i]] == NetRole::Element)
        .collect();
    let v = &reduced.values;
    let mut shunt = BTreeMap::new();
    let mut couplings = BTreeMap::new();
    for &i in &elements {
        let row_sum: f64 = elements.iter().map(|&j| v[(i, j)]).sum();
        shunt.insert(reduced.net_names[i].clone(), row_sum);
        for &j in &elements {
            let (a, b) = (&reduced.net_names[i], &reduced.net_names[j]);
            if a < b {
                couplings.insert((a.clone(), b.clone()), -v[(i, j)]);
            }
        }
    }
    Ok(CircuitCaps { shunt, couplings })
}
