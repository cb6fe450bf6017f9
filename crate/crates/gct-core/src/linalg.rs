//! Small dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use std::ops::Range;

use crate::C64;

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn zeros(r: usize, c: usize) -> CMat {
    CMat::zeros(r, c)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Largest entry modulus; 0 for empty matrices.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Orthonormal basis of the kernel of `m`, as columns of the returned matrix.
///
/// Singular values below `tol * max(1, sigma_max)` count as zero.
pub fn nullspace(m: &CMat, tol: f64) -> CMat {
    let n = m.ncols();
    if n == 0 {
        return zeros(0, 0);
    }
    if m.nrows() == 0 {
        return eye(n);
    }
    // Pad so the thin SVD returns a full set of right singular vectors.
    let padded = if m.nrows() < n {
        let mut p = zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = SVD::new(padded, false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let thresh = tol * smax.max(1.0);
    let cols: Vec<CVec> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= thresh)
        .map(|(i, _)| vt.row(i).adjoint().into_owned())
        .collect();
    if cols.is_empty() {
        return zeros(n, 0);
    }
    CMat::from_columns(&cols)
}

/// Numerical rank with the same thresholding as [`nullspace`].
pub fn rank(m: &CMat, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = SVD::new(m.clone(), false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let thresh = tol * smax.max(1.0);
    svd.singular_values.iter().filter(|s| **s > thresh).count()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (vec![], zeros(0, 0));
    }
    let sym = (m + m.adjoint()) * c(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_columns(
        &order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect::<Vec<_>>(),
    );
    (vals, vecs)
}

/// Splits ascending values into runs whose consecutive gaps are below `gap`.
pub fn cluster(values: &[f64], gap: f64) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Smallest gap between consecutive ascending values that still separates
/// two clusters, and the largest spread inside one cluster.
pub fn cluster_margins(values: &[f64], clusters: &[Range<usize>]) -> (f64, f64) {
    let mut min_sep = f64::INFINITY;
    let mut max_spread: f64 = 0.0;
    for (k, r) in clusters.iter().enumerate() {
        max_spread = max_spread.max(values[r.end - 1] - values[r.start]);
        if k + 1 < clusters.len() {
            min_sep = min_sep.min(values[clusters[k + 1].start] - values[r.end - 1]);
        }
    }
    (min_sep, max_spread)
}

/// Nearest unitary (polar factor) of a square matrix.
pub fn polar_unitary(m: &CMat) -> CMat {
    if m.nrows() == 0 {
        return m.clone();
    }
    let svd = SVD::new(m.clone(), true, true);
    svd.u.unwrap() * svd.v_t.unwrap()
}

/// Residual of `m` being unitary: max(|m*m - 1|, |m m* - 1|), or infinity
/// when `m` is not square.
pub fn unitarity_defect(m: &CMat) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let a = max_abs(&(m.adjoint() * m - eye(n)));
    let b = max_abs(&(m * m.adjoint() - eye(n)));
    a.max(b)
}

/// Kronecker product `a ⊗ b` with `a` as the outer (slow) index.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}
