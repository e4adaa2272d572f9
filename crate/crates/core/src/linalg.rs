//! Dense complex linear algebra on top of nalgebra: SVD-based nullspaces
//! with gap validation, singular values, and subspace angles. Large
//! products go through faer's gemm. Its SVD is not used: on near-bidiagonal
//! Toeplitz sections it stalls on tiny singular values.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

pub type CMatrix = DMatrix<Complex64>;

/// Relative singular-value threshold for numerical kernels.
pub const DEFAULT_KERNEL_THRESHOLD: f64 = 1e-8;
/// Minimum ratio between the smallest retained and largest discarded
/// singular value before a rank cut is trusted.
pub const MIN_GAP_RATIO: f64 = 1e3;

/// Zero-pads rows so the SVD always returns a full set of right singular
/// vectors.
fn padded(m: &CMatrix) -> CMatrix {
    if m.nrows() >= m.ncols() {
        m.clone()
    } else {
        let mut p = CMatrix::zeros(m.ncols(), m.ncols());
        p.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
        p
    }
}

fn to_faer(m: &CMatrix) -> faer::Mat<Complex64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Dense product `a * b`.
pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "matmul shape mismatch");
    if a.nrows() == 0 || b.ncols() == 0 || a.ncols() == 0 {
        return CMatrix::zeros(a.nrows(), b.ncols());
    }
    let c = to_faer(a) * to_faer(b);
    CMatrix::from_fn(c.nrows(), c.ncols(), |i, j| c[(i, j)])
}

/// Singular values in descending order (length `ncols` after padding).
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = padded(m).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

pub fn min_singular_value(m: &CMatrix) -> f64 {
    singular_values(m).last().copied().unwrap_or(f64::INFINITY)
}

#[derive(Clone, Debug, Serialize)]
pub struct NullSpace {
    /// Orthonormal kernel basis, one column per kernel vector.
    #[serde(skip)]
    pub basis: CMatrix,
    /// All singular values, descending.
    pub singular_values: Vec<f64>,
    /// Absolute cut actually applied.
    pub cutoff: f64,
    /// Smallest retained over largest discarded singular value; infinite
    /// when one side of the cut is empty or the discarded values are 0.
    pub gap_ratio: f64,
    pub ambiguous: bool,
}

impl NullSpace {
    pub fn dimension(&self) -> usize {
        self.basis.ncols()
    }
}

/// Nullspace from right singular vectors with `sigma < rel_threshold * sigma_max`.
pub fn nullspace(m: &CMatrix, rel_threshold: f64) -> NullSpace {
    let n = m.ncols();
    if n == 0 {
        return NullSpace {
            basis: CMatrix::zeros(0, 0),
            singular_values: Vec::new(),
            cutoff: 0.0,
            gap_ratio: f64::INFINITY,
            ambiguous: false,
        };
    }
    let svd = padded(m).svd(false, true);
    let values: Vec<f64> = svd.singular_values.iter().copied().collect();
    let v = svd.v_t.expect("right singular vectors requested").adjoint();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let sv: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let smax = sv[0];
    let cutoff = rel_threshold * smax;
    let keep: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&i| !(values[i] >= cutoff) || smax == 0.0)
        .collect();
    let rank = n - keep.len();
    let gap_ratio = if rank == 0 || rank == n || sv[rank] == 0.0 {
        f64::INFINITY
    } else {
        sv[rank - 1] / sv[rank]
    };
    let mut basis = CMatrix::zeros(n, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        for r in 0..n {
            basis[(r, c)] = v[(r, i)];
        }
    }
    NullSpace {
        basis,
        singular_values: sv,
        cutoff,
        gap_ratio,
        ambiguous: gap_ratio < MIN_GAP_RATIO,
    }
}

/// Orthonormal basis of the column span (columns with singular value
/// above `rel_tol * sigma_max`).
pub fn orthonormal_columns(m: &CMatrix, rel_tol: f64) -> CMatrix {
    if m.ncols() == 0 || m.nrows() == 0 {
        return CMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.max();
    let cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] > rel_tol * smax)
        .collect();
    CMatrix::from_fn(m.nrows(), cols.len(), |r, c| u[(r, cols[c])])
}

/// Sine of the largest principal angle between two column spans. Inputs
/// need not be orthonormal; both are orthonormalized first. Returns 1 when
/// the dimensions differ, 0 when both are empty.
pub fn subspace_sin_angle(a: &CMatrix, b: &CMatrix) -> f64 {
    let qa = orthonormal_columns(a, 1e-12);
    let qb = orthonormal_columns(b, 1e-12);
    if qa.ncols() != qb.ncols() {
        return 1.0;
    }
    if qa.ncols() == 0 {
        return 0.0;
    }
    let resid = &qb - &qa * (qa.adjoint() * &qb);
    spectral_norm(&resid).min(1.0)
}

/// Frobenius-norm difference.
pub fn diff_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// Least-squares solution via SVD.
pub fn solve_least_squares(m: &CMatrix, rhs: &CMatrix, eps: f64) -> Option<CMatrix> {
    m.clone().svd(true, true).solve(rhs, eps).ok()
}
