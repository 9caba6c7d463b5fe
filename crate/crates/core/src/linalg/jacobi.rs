use super::EigenResult;
use crate::error::{Error, Result};
use nalgebra::DMatrix;

const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOLERANCE: f64 = 1e-12;
const OFF_DIAGONAL_TARGET: f64 = 1e-12;

/// Lowest `k` eigenpairs of a dense real symmetric matrix by cyclic Jacobi
/// rotations.
///
/// Each sweep annihilates every off-diagonal element once. Sweeps stop when
/// the off-diagonal Frobenius norm is at rounding level relative to the
/// matrix norm; anything above `1e-12 · ‖m‖` after the sweep cap is a
/// convergence error.
pub fn eigh_dense(m: &DMatrix<f64>, k: usize) -> Result<EigenResult> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(Error::Validation(format!(
            "matrix must be square and non-empty, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if k == 0 || k > n {
        return Err(Error::Validation(format!("eigenpair count must be in 1..={n}, got {k}")));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::Validation("matrix entries must be finite".into()));
    }
    let norm = m.norm();
    for i in 0..n {
        for j in (i + 1)..n {
            if (m[(i, j)] - m[(j, i)]).abs() > SYMMETRY_TOLERANCE * norm {
                return Err(Error::Validation(format!(
                    "matrix is not symmetric at ({i}, {j}): {} vs {}",
                    m[(i, j)],
                    m[(j, i)]
                )));
            }
        }
    }

    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = 0.5 * (m[(i, j)] + m[(j, i)]);
        }
    }
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i][j] * a[i][j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= f64::EPSILON * norm || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            if off <= OFF_DIAGONAL_TARGET * norm {
                break;
            }
            return Err(Error::Convergence { worst_residual: off });
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                if s == 0.0 {
                    continue;
                }
                rotated = true;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let vectors: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| v[i][j]).collect()).collect();
    Ok(EigenResult::from_unsorted(values, vectors, k))
}

/// Applies the similarity transform Jᵀ A J for the (p, q) plane rotation and
/// accumulates J into V.
fn rotate(a: &mut [Vec<f64>], v: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let n = a.len();
    for k in 0..n {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for row in v.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}
