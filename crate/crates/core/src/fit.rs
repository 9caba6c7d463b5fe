//! Inverse design: component values that hit frequency and anharmonicity
//! targets.
//!
//! At fixed Ec, f01 rises monotonically with Ej; at fixed f01, |α| rises
//! monotonically with Ec. The transmon fit nests two bracketed 1-D solves
//! over those monotone maps: the outer over shunt capacitance, the inner
//! over critical current.

use crate::constants::{
    charging_energy, current_for_josephson_energy, josephson_energy, Capacitance,
    Current, Frequency,
};
use crate::error::{Error, Result};
use crate::transmon::{transition_energies, transmon_spectrum, TransmonParams};
use serde::{Deserialize, Serialize};

pub use crate::resonator::fit_resonator;

pub const C_BRACKET_FF: (f64, f64) = (20.0, 500.0);
pub const IC_BRACKET_NA: (f64, f64) = (5.0, 200.0);
pub const EJ_EC_BASIN: (f64, f64) = (20.0, 500.0);
const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmonTarget {
    pub f01_target: Frequency,
    pub alpha_target_magnitude: Frequency,
    pub tolerance: Frequency,
}

impl TransmonTarget {
    pub fn new(f01_target: Frequency, alpha_target_magnitude: Frequency) -> Self {
        TransmonTarget {
            f01_target,
            alpha_target_magnitude,
            tolerance: 1e-6,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("f01 target", self.f01_target),
            ("anharmonicity target", self.alpha_target_magnitude),
            ("tolerance", self.tolerance),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmonFit {
    pub c_shunt: Capacitance,
    pub ic: Current,
    /// Values reproduced by the fitted components.
    pub f01: Frequency,
    pub alpha_magnitude: Frequency,
    pub ej_over_ec: f64,
}

/// Outcome of probing a monotone increasing function at a point.
enum Probe {
    Value(f64),
    /// The root lies to the right (function is effectively negative here).
    RootRight,
    /// The root lies to the left.
    RootLeft,
}

/// Bracketed root of an increasing function: bisection, switching to
/// Illinois-modified regula falsi steps when both bracket ends have values.
/// Returns the best point found and its residual, if any.
fn bracketed_root<F>(mut probe: F, mut lo: f64, mut hi: f64, f_tol: f64) -> Result<(f64, Option<f64>)>
where
    F: FnMut(f64) -> Result<Probe>,
{
    let mut f_lo = match probe(lo)? {
        Probe::Value(v) if v >= 0.0 => return Ok((lo, Some(v))),
        Probe::Value(v) => Some(v),
        Probe::RootLeft => return Ok((lo, None)),
        Probe::RootRight => None,
    };
    let mut f_hi = match probe(hi)? {
        Probe::Value(v) if v <= 0.0 => return Ok((hi, Some(v))),
        Probe::Value(v) => Some(v),
        Probe::RootRight => return Ok((hi, None)),
        Probe::RootLeft => None,
    };
    let mut best = (lo, f_lo);
    let mut last_side = 0i8;
    for _ in 0..MAX_ITERATIONS {
        let x = match (f_lo, f_hi) {
            (Some(a), Some(b)) if b > a => {
                let x = lo - a * (hi - lo) / (b - a);
                if x > lo && x < hi {
                    x
                } else {
                    0.5 * (lo + hi)
                }
            }
            _ => 0.5 * (lo + hi),
        };
        if x <= lo || x >= hi {
            break;
        }
        match probe(x)? {
            Probe::Value(v) => {
                best = (x, Some(v));
                if v.abs() <= f_tol {
                    return Ok(best);
                }
                if v < 0.0 {
                    lo = x;
                    f_lo = Some(v);
                    if last_side == -1 {
                        f_hi = f_hi.map(|b| 0.5 * b);
                    }
                    last_side = -1;
                } else {
                    hi = x;
                    f_hi = Some(v);
                    if last_side == 1 {
                        f_lo = f_lo.map(|a| 0.5 * a);
                    }
                    last_side = 1;
                }
            }
            Probe::RootRight => {
                lo = x;
                f_lo = None;
                last_side = 0;
            }
            Probe::RootLeft => {
                hi = x;
                f_hi = None;
                last_side = 0;
            }
        }
        if hi - lo <= 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    Ok(best)
}

/// Josephson energy putting f01 on target at the given Ec, or which side of
/// the current bracket the target falls on.
fn solve_ej(ec: f64, f01_target: f64, f_tol: f64) -> Result<Probe> {
    let ej_lo = josephson_energy(IC_BRACKET_NA.0)?;
    let ej_hi = josephson_energy(IC_BRACKET_NA.1)?;
    let (ej, residual) = bracketed_root(
        |ej| Ok(Probe::Value(transition_energies(&TransmonParams::new(ec, ej))?.0 - f01_target)),
        ej_lo,
        ej_hi,
        f_tol,
    )?;
    Ok(match residual {
        // Target below what the smallest current reaches.
        Some(r) if ej == ej_lo && r > f_tol => Probe::RootRight,
        // Target above what the largest current reaches.
        Some(r) if ej == ej_hi && r < -f_tol => Probe::RootLeft,
        _ => Probe::Value(ej),
    })
}

/// Shunt capacitance and critical current reproducing both targets.
pub fn fit_transmon(t: &TransmonTarget) -> Result<TransmonFit> {
    t.validate()?;
    let inner_tol = 0.1 * t.tolerance;
    let outer_tol = 0.5 * t.tolerance;
    let mut last_ej = None;

    // Outer function of C: α_target − |α(C)|, increasing in C. An
    // unreachable f01 at C maps to the side where C must move.
    let outer = |c: f64, last_ej: &mut Option<(f64, f64)>| -> Result<Probe> {
        let ec = charging_energy(c)?;
        Ok(match solve_ej(ec, t.f01_target, inner_tol)? {
            // f01 below the reachable range at this C: larger C lowers it.
            Probe::RootRight => Probe::RootRight,
            // f01 above the reachable range: smaller C raises it.
            Probe::RootLeft => Probe::RootLeft,
            Probe::Value(ej) => {
                let (_, alpha) = transition_energies(&TransmonParams::new(ec, ej))?;
                *last_ej = Some((c, ej));
                Probe::Value(t.alpha_target_magnitude - alpha.abs())
            }
        })
    };
    let (c, _) = bracketed_root(|c| outer(c, &mut last_ej), C_BRACKET_FF.0, C_BRACKET_FF.1, outer_tol)?;
    let infeasible = || Error::Infeasible {
        quantity: "shunt capacitance (fF)".into(),
        lo: C_BRACKET_FF.0,
        hi: C_BRACKET_FF.1,
    };

    let ec = charging_energy(c)?;
    let ej = match solve_ej(ec, t.f01_target, inner_tol)? {
        Probe::Value(ej) => ej,
        _ => return Err(infeasible()),
    };
    let ratio = ej / ec;
    if !(EJ_EC_BASIN.0..=EJ_EC_BASIN.1).contains(&ratio) {
        return Err(infeasible());
    }
    let check = transmon_spectrum(&TransmonParams::new(ec, ej), 3)?;
    if (check.e01 - t.f01_target).abs() > t.tolerance
        || (check.anharmonicity() - t.alpha_target_magnitude).abs() > t.tolerance
    {
        return Err(infeasible());
    }
    Ok(TransmonFit {
        c_shunt: c,
        ic: current_for_josephson_energy(ej)?,
        f01: check.e01,
        alpha_magnitude: check.anharmonicity(),
        ej_over_ec: ratio,
    })
}
