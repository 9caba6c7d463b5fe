use super::EigenResult;
use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Validation("tridiagonal matrix must have N >= 1".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Validation(format!(
                "off-diagonal length {} does not match N - 1 = {}",
                offdiag.len(),
                diag.len() - 1
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::Validation("tridiagonal entries must be finite".into()));
        }
        Ok(SymTridiagonal { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Computes `self * v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for i in 0..n {
            out[i] = self.diag[i] * v[i];
            if i > 0 {
                out[i] += self.offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                out[i] += self.offdiag[i] * v[i + 1];
            }
        }
        out
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let n = self.dim();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for (i, &e) in self.offdiag.iter().enumerate() {
            m[(i, i + 1)] = e;
            m[(i + 1, i)] = e;
        }
        m
    }
}

const MAX_ITERATIONS_PER_VALUE: usize = 60;

/// Lowest `k` eigenpairs of a symmetric tridiagonal matrix.
///
/// Implicit QL with Wilkinson shifts on the full spectrum, accumulating
/// the rotations into the eigenvector matrix, then truncation to `k`.
pub fn eigh_tridiagonal(m: &SymTridiagonal, k: usize) -> Result<EigenResult> {
    check_count(m, k)?;
    let n = m.dim();
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let mut d = m.diag.clone();
    let mut e = m.offdiag.clone();
    e.push(0.0);
    if let Err(()) = ql_implicit(&mut d, &mut e, Some(&mut z)) {
        return Err(Error::Convergence {
            worst_residual: worst_residual(m, &d, &z),
        });
    }
    // z is stored row-major with eigenvectors in columns; transpose.
    let vectors: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| z[i][j]).collect()).collect();
    Ok(EigenResult::from_unsorted(d, vectors, k))
}

/// Lowest `k` eigenvalues only; skips eigenvector accumulation.
pub fn eigvalsh_tridiagonal(m: &SymTridiagonal, k: usize) -> Result<Vec<f64>> {
    check_count(m, k)?;
    let mut d = m.diag.clone();
    let mut e = m.offdiag.clone();
    e.push(0.0);
    if ql_implicit(&mut d, &mut e, None).is_err() {
        return Err(Error::Convergence {
            worst_residual: f64::NAN,
        });
    }
    d.sort_by(f64::total_cmp);
    d.truncate(k);
    Ok(d)
}

fn check_count(m: &SymTridiagonal, k: usize) -> Result<()> {
    if k == 0 || k > m.dim() {
        return Err(Error::Validation(format!(
            "eigenpair count must be in 1..={}, got {k}",
            m.dim()
        )));
    }
    Ok(())
}

fn worst_residual(m: &SymTridiagonal, d: &[f64], z: &[Vec<f64>]) -> f64 {
    let n = m.dim();
    (0..n)
        .map(|j| {
            let v: Vec<f64> = (0..n).map(|i| z[i][j]).collect();
            let hv = m.apply(&v);
            hv.iter()
                .zip(&v)
                .map(|(a, b)| (a - d[j] * b).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

/// In-place implicit QL. `d` holds the diagonal, `e[i]` the coupling
/// between rows `i` and `i + 1` (with `e[n-1] = 0`). On success `d` holds
/// the eigenvalues and column `j` of `z` the eigenvector for `d[j]`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Vec<Vec<f64>>>) -> std::result::Result<(), ()> {
    let n = d.len();
    for l in 0..n {
        let mut iterations = 0;
        loop {
            // Find a negligible off-diagonal element to split the matrix.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_ITERATIONS_PER_VALUE {
                return Err(());
            }

            // Wilkinson shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));

            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for row in z.iter_mut() {
                        let t = row[i + 1];
                        row[i + 1] = s * row[i] + c * t;
                        row[i] = c * row[i] - s * t;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot;
    use approx::assert_relative_eq;

    #[test]
    fn one_by_one() {
        let m = SymTridiagonal::new(vec![3.5], vec![]).unwrap();
        let r = eigh_tridiagonal(&m, 1).unwrap();
        assert_eq!(r.values, vec![3.5]);
        assert_eq!(r.vectors, vec![vec![1.0]]);
    }

    #[test]
    fn two_by_two_analytic() {
        let m = SymTridiagonal::new(vec![0.0, 0.0], vec![-0.5]).unwrap();
        let r = eigh_tridiagonal(&m, 2).unwrap();
        assert_relative_eq!(r.values[0], -0.5, epsilon = 1e-15);
        assert_relative_eq!(r.values[1], 0.5, epsilon = 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(r.vectors[0][0].abs(), s, epsilon = 1e-15);
        assert_relative_eq!(dot(&r.vectors[0], &r.vectors[1]), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn truncates_to_lowest() {
        let m = SymTridiagonal::new(vec![4.0, 1.0, 3.0, 2.0], vec![0.0, 0.0, 0.0]).unwrap();
        let r = eigh_tridiagonal(&m, 2).unwrap();
        assert_eq!(r.values, vec![1.0, 2.0]);
        assert_eq!(eigvalsh_tridiagonal(&m, 3).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![1.0, f64::NAN], vec![0.0]).is_err());
        let m = SymTridiagonal::new(vec![1.0, 2.0], vec![0.1]).unwrap();
        assert!(eigh_tridiagonal(&m, 0).is_err());
        assert!(eigh_tridiagonal(&m, 3).is_err());
    }

    #[test]
    fn wilkinson_matrix_w21() {
        // W21+: diag |i - 10|, offdiag 1. Its top two eigenvalues are a
        // famously close pair near 10.746.
        let diag: Vec<f64> = (0..21).map(|i| (i as f64 - 10.0).abs()).collect();
        let m = SymTridiagonal::new(diag, vec![1.0; 20]).unwrap();
        let r = eigh_tridiagonal(&m, 21).unwrap();
        assert_relative_eq!(r.values[20], 10.746194182903393, epsilon = 1e-12);
        assert_relative_eq!(r.values[19], 10.746194182903322, epsilon = 1e-12);
        for (lam, v) in r.values.iter().zip(&r.vectors) {
            let hv = m.apply(v);
            let res: f64 = hv.iter().zip(v).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt();
            assert!(res <= 1e-10 * lam.abs().max(1.0));
        }
    }
}
