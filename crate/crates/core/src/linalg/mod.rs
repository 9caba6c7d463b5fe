//! Real symmetric eigensolvers.
//!
//! Two independent routes: [`eigh_tridiagonal`] (implicit QL with Wilkinson
//! shifts) for charge-basis Hamiltonians, and [`eigh_dense`] (cyclic Jacobi
//! rotations) for general dense matrices. They share no numerical code, so
//! each can serve as an oracle for the other.

mod jacobi;
mod tridiagonal;

pub use jacobi::eigh_dense;
pub use tridiagonal::{eigh_tridiagonal, eigvalsh_tridiagonal, SymTridiagonal};

/// The lowest `k` eigenpairs of a real symmetric matrix, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
}

impl EigenResult {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sorts eigenpairs ascending and keeps the lowest `k`.
    pub(crate) fn from_unsorted(values: Vec<f64>, vectors: Vec<Vec<f64>>, k: usize) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        order.truncate(k);
        let mut out_values = Vec::with_capacity(k);
        let mut out_vectors = Vec::with_capacity(k);
        for i in order {
            out_values.push(values[i]);
            let mut v = vectors[i].clone();
            normalize_sign(&mut v);
            out_vectors.push(v);
        }
        EigenResult {
            values: out_values,
            vectors: out_vectors,
        }
    }
}

/// Fixes the arbitrary overall sign: the largest-magnitude component is positive.
fn normalize_sign(v: &mut [f64]) {
    let pivot = v
        .iter()
        .copied()
        .fold(0.0_f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

#[cfg(test)]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
