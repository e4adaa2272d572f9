use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{nullspace, singular_values, CMatrix, NullSpace};
use crate::operators::OperatorMatrix;
use crate::spaces::BasisSpec;

/// Basis entries smaller than this are left out of the labelled listing.
const LISTING_CUTOFF: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledEntry {
    pub label: String,
    pub value: [f64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub dimension: usize,
    /// Canonical (reduced echelon, unit-norm) kernel basis, sparse and labelled.
    pub basis: Vec<Vec<LabeledEntry>>,
    /// Singular values of the matrix the kernel was taken from, descending.
    pub singular_values: Vec<f64>,
    /// `None` when one side of the cut is empty.
    pub gap_ratio: Option<f64>,
    pub ambiguous: bool,
    pub threshold: f64,
    /// True when only interior columns entered the SVD.
    pub interior_only: bool,
    pub domain: BasisSpec,
    /// Kernel basis in full domain coordinates, one column per vector.
    #[serde(skip)]
    pub vectors: CMatrix,
}

impl KernelReport {
    pub(crate) fn from_nullspace(
        ns: &NullSpace,
        domain: &BasisSpec,
        embed: &[usize],
        threshold: f64,
        interior_only: bool,
    ) -> Self {
        let mut full = CMatrix::zeros(domain.dim(), ns.dimension());
        for c in 0..ns.dimension() {
            for (r, &row) in embed.iter().enumerate() {
                full[(row, c)] = ns.basis[(r, c)];
            }
        }
        KernelReport::from_vectors(
            canonical_basis(&full),
            domain,
            ns.singular_values.clone(),
            ns.gap_ratio,
            ns.ambiguous,
            threshold,
            interior_only,
        )
    }

    pub(crate) fn from_vectors(
        vectors: CMatrix,
        domain: &BasisSpec,
        singular_values: Vec<f64>,
        gap_ratio: f64,
        ambiguous: bool,
        threshold: f64,
        interior_only: bool,
    ) -> Self {
        let labels = domain.label_strings();
        let basis = (0..vectors.ncols())
            .map(|c| {
                vectors
                    .column(c)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.norm() > LISTING_CUTOFF)
                    .map(|(i, v)| LabeledEntry {
                        label: labels[i].clone(),
                        value: [v.re, v.im],
                    })
                    .collect()
            })
            .collect();
        KernelReport {
            dimension: vectors.ncols(),
            basis,
            singular_values,
            gap_ratio: gap_ratio.is_finite().then_some(gap_ratio),
            ambiguous,
            threshold,
            interior_only,
            domain: domain.clone(),
            vectors,
        }
    }

    /// Report for a kernel that is known to be trivial.
    pub(crate) fn trivial(domain: &BasisSpec, singular_values: Vec<f64>, threshold: f64) -> Self {
        KernelReport::from_vectors(
            CMatrix::zeros(domain.dim(), 0),
            domain,
            singular_values,
            f64::INFINITY,
            false,
            threshold,
            false,
        )
    }

    /// Smallest singular value above the kernel cut, if any.
    pub fn smallest_retained(&self) -> Option<f64> {
        let n = self.singular_values.len();
        (self.dimension < n).then(|| self.singular_values[n - 1 - self.dimension])
    }
}

/// Deterministic basis of the column span: reduced row echelon form of the
/// transposed basis with partial pivoting, then each vector normalized so
/// its pivot entry is real and positive.
pub fn canonical_basis(q: &CMatrix) -> CMatrix {
    let (n, k) = (q.nrows(), q.ncols());
    if k == 0 {
        return q.clone();
    }
    let mut rows = q.transpose();
    let scale = rows.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let tol = 1e-8 * scale;
    let mut r = 0;
    for col in 0..n {
        if r == k {
            break;
        }
        let (best, val) = (r..k)
            .map(|i| (i, rows[(i, col)].norm()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol {
            continue;
        }
        rows.swap_rows(r, best);
        let p = rows[(r, col)];
        for j in 0..n {
            rows[(r, j)] /= p;
        }
        for i in 0..k {
            if i != r {
                let f = rows[(i, col)];
                if f != Complex64::new(0.0, 0.0) {
                    for j in 0..n {
                        let v = rows[(r, j)];
                        rows[(i, j)] -= f * v;
                    }
                }
            }
        }
        r += 1;
    }
    let mut out = rows.transpose();
    out = out.columns(0, r).into_owned();
    for c in 0..r {
        let nrm = out.column(c).norm();
        out.column_mut(c).unscale_mut(nrm);
    }
    out
}

/// Numerical kernel of the full matrix.
pub fn kernel(op: &OperatorMatrix, threshold: f64) -> KernelReport {
    let ns = nullspace(&op.entries, threshold);
    let embed: Vec<usize> = (0..op.ncols()).collect();
    KernelReport::from_nullspace(&ns, &op.domain, &embed, threshold, false)
}

/// Kernel of the compression to interior domain columns, embedded back
/// into full domain coordinates.
pub fn kernel_interior(op: &OperatorMatrix, threshold: f64) -> KernelReport {
    let idx = op.interior_columns();
    let ns = nullspace(&op.columns(&idx), threshold);
    KernelReport::from_nullspace(&ns, &op.domain, &idx, threshold, true)
}

/// Fredholm surrogate from two section sizes: the smallest interior
/// singular value above the kernel cut must stay put when the window doubles.
#[derive(Clone, Debug, Serialize)]
pub struct SectionProfile {
    pub n: usize,
    pub kernel_dimension: usize,
    pub kernel_dimension_doubled: usize,
    pub sigma_min: f64,
    pub sigma_min_doubled: f64,
    pub bounded_below: bool,
}

pub fn section_profile<F>(build: F, n: usize, threshold: f64) -> Result<SectionProfile>
where
    F: Fn(usize) -> Result<OperatorMatrix>,
{
    let (da, sa) = interior_cut(&build(n)?, threshold);
    let (db, sb) = interior_cut(&build(2 * n)?, threshold);
    Ok(SectionProfile {
        n,
        kernel_dimension: da,
        kernel_dimension_doubled: db,
        sigma_min: sa,
        sigma_min_doubled: sb,
        bounded_below: da == db && sa > 0.0 && sb >= 0.9 * sa,
    })
}

/// Kernel dimension and smallest retained singular value of the interior
/// compression, with the same cut as [`kernel_interior`] but no vectors.
fn interior_cut(op: &OperatorMatrix, threshold: f64) -> (usize, f64) {
    let sv = singular_values(&op.interior_matrix());
    let smax = sv.first().copied().unwrap_or(0.0);
    let cutoff = threshold * smax;
    let dim = sv.iter().filter(|&&s| !(s >= cutoff) || smax == 0.0).count();
    let retained = if dim < sv.len() { sv[sv.len() - 1 - dim] } else { 0.0 };
    (dim, retained)
}

/// Smallest singular value of the interior compression.
pub(crate) fn interior_min_singular_value(op: &OperatorMatrix) -> f64 {
    singular_values(&op.interior_matrix()).last().copied().unwrap_or(f64::INFINITY)
}
