//! Kernels, solvability lifts, kernel isomorphisms, the rational kernel
//! solver, spectrum scans, and corona-based invertibility predicates.

mod kernel;
mod predicates;
mod rational;
mod solvability;

pub use kernel::{canonical_basis, kernel, kernel_interior, section_profile, KernelReport, LabeledEntry, SectionProfile};
pub use predicates::{
    analytic_spectrum_predicate, default_h_data, inverse_analytic_predicates, kernel_route_verdict,
    paired_injectivity_predicate, truncated_toeplitz_predicate, CheckStatus, Conclusion, CoronaInvertibilityVerdict,
    HData, HypothesisCheck, InverseKind, KernelRouteVerdict, PredicateName,
};
pub use rational::{
    dual_shift_kernel, rational_kernel_solve, spectrum_scan, PointHit, ScanGrid, ShiftKernelReport, SpectralSymbol,
    SpectrumPoint, SpectrumReport, Verdict,
};
pub use solvability::{element_distance, element_norm, DualSetting, EnergySplit, KERNEL_RESIDUAL_TOLERANCE};

use crate::fourier::FourierVector;
use crate::linalg::CMatrix;
use crate::spaces::{BasisSpec, Element};

/// Coordinates of the given elements in `space`, one column each.
pub fn coordinates(space: &BasisSpec, elems: &[Element]) -> CMatrix {
    let frame = space.frame();
    let mut m = CMatrix::zeros(frame.dim(), elems.len());
    for (j, e) in elems.iter().enumerate() {
        m.column_mut(j).copy_from_slice(&frame.analyze(e));
    }
    m
}

/// Elements synthesized from the columns of a coordinate matrix.
pub fn elements(space: &BasisSpec, coords: &CMatrix, radius: usize) -> Vec<Element> {
    let frame = space.frame();
    (0..coords.ncols())
        .map(|j| frame.synthesize(coords.column(j).as_slice(), radius))
        .collect()
}

/// Single-summand shorthand for [`elements`].
pub fn functions(space: &BasisSpec, coords: &CMatrix, radius: usize) -> Vec<FourierVector> {
    elements(space, coords, radius).into_iter().map(|mut e| e.remove(0)).collect()
}
