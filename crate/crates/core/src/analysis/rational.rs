use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kernel::{interior_min_singular_value, kernel_interior, KernelReport};
use super::solvability::DualSetting;
use super::{canonical_basis, coordinates};
use crate::error::{Error, Result};
use crate::exec;
use crate::fourier::{BoundaryGrid, FourierVector};
use crate::inner_rational::{BlaschkeProduct, RationalFunction};
use crate::linalg::{nullspace, subspace_sin_angle, CMatrix};
use crate::operators::{dual_bases, dual_truncated_matrix, inner_symbol, product};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Points this close to the boundary image count as on the essential curve.
const ON_CURVE: f64 = 1e-9;
/// Boundary samples used for the essential curve.
const ESSENTIAL_SAMPLES: usize = 1024;

fn laurent_of_reciprocal(p: &[Complex64], radius: usize) -> Result<FourierVector> {
    RationalFunction::new(vec![ONE], p.to_vec())?.laurent(radius)
}

/// Kernel of `D_R^theta` from the polynomial parameterization
/// `f_- = P1 / P`, `f~_+ = P2 / P` with `deg P1, deg P2 < max(deg P, deg Q)`.
/// Every membership condition becomes a block of linear constraints on the
/// coefficients of `(P1, P2)`, evaluated on Fourier modes `-n..=n`; the
/// nullspace is mapped to `f = f_- + theta f~_+` in the dual model basis
/// with `n` negative modes and up to `m` shifts.
pub fn rational_kernel_solve(
    r: &RationalFunction,
    theta: &BlaschkeProduct,
    n: usize,
    m: usize,
    threshold: f64,
) -> Result<KernelReport> {
    if r.is_zero() {
        return Err(Error::InvalidInput("the zero symbol has an infinite-dimensional kernel".into()));
    }
    let (domain, _) = dual_bases(theta, theta, n, m)?;
    let d = r.num_degree().max(r.den_degree());
    if d == 0 {
        return Ok(KernelReport::trivial(&domain, Vec::new(), threshold));
    }
    let w = n as i64;
    let reach = n + d;
    let up = laurent_of_reciprocal(r.num(), reach)?;
    let uq = laurent_of_reciprocal(r.den(), reach)?;
    let t = inner_symbol(theta);
    let tq = product(&t, &uq);
    let tcq = product(&t.conj(), &uq);

    let rows = 4 * n + 2;
    let mut c = CMatrix::zeros(rows, 2 * d);
    let mut row = 0;
    let mut block = |range: std::ops::RangeInclusive<i64>, left: Option<&FourierVector>, right: Option<&FourierVector>| {
        for k in range {
            for j in 0..d {
                let shift = k - j as i64;
                if let Some(u) = left {
                    c[(row, j)] = u.coeff(shift);
                }
                if let Some(u) = right {
                    c[(row, d + j)] = u.coeff(shift);
                }
            }
            row += 1;
        }
    };
    // P1/P in H^2_-, P2/P in H^2
    block(0..=w, Some(&up), None);
    block(-w..=-1, None, Some(&up));
    // k = P1/Q + theta P2/Q in K_theta: k in H^2 and conj(theta) k in H^2_-
    block(-w..=-1, Some(&uq), Some(&tq));
    block(0..=w, Some(&tcq), Some(&uq));

    // FFT noise in a structurally zero column must not be blown up to unit size
    let norms: Vec<f64> = (0..2 * d).map(|j| c.column(j).norm()).collect();
    let floor = 1e-12 * norms.iter().copied().fold(0.0, f64::max);
    let mut scales = vec![1.0; 2 * d];
    for j in 0..2 * d {
        if norms[j] > floor {
            scales[j] = norms[j];
            c.column_mut(j).unscale_mut(norms[j]);
        } else {
            c.column_mut(j).fill(ZERO);
        }
    }
    let ns = nullspace(&c, threshold);
    let solutions: Vec<Vec<FourierVector>> = (0..ns.dimension())
        .map(|col| {
            let coef = |j: usize| ns.basis[(j, col)] / scales[j];
            let mut p1 = FourierVector::zeros(reach);
            let mut p2 = FourierVector::zeros(reach);
            for j in 0..d {
                let (s, _) = up.shifted(j as i64);
                p1 = p1.combine(&s, coef(j));
                p2 = p2.combine(&s, coef(d + j));
            }
            vec![p1.add(&product(&t, &p2))]
        })
        .collect();
    let coords = canonical_basis(&coordinates(&domain, &solutions));
    Ok(KernelReport::from_vectors(
        coords,
        &domain,
        ns.singular_values.clone(),
        ns.gap_ratio,
        ns.ambiguous,
        threshold,
        false,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftKernelReport {
    pub lambda: [f64; 2],
    /// The closed-form kernel: `sum_{k>=1} lambda^{k-1} z^{-k}` truncated to
    /// the window when `|lambda| < 1` and `theta(0) = 0`, otherwise trivial.
    pub kernel: KernelReport,
    /// `C_theta` applied to the kernel: the kernel of `D_{conj(z) - conj(lambda)}`.
    pub adjoint_kernel: KernelReport,
    /// `||D_{z-lambda} v|| / ||v||` for the closed-form vector.
    pub residual: Option<f64>,
    pub svd_dimension: usize,
    pub min_interior_singular_value: f64,
    /// Sine of the angle between the closed-form and SVD kernels.
    pub subspace_sin_angle: f64,
    pub near_circle_warning: bool,
}

pub fn dual_shift_kernel(
    theta: &BlaschkeProduct,
    lambda: Complex64,
    n: usize,
    m: usize,
    threshold: f64,
) -> Result<ShiftKernelReport> {
    let modulus = lambda.norm();
    if (modulus - 1.0).abs() < 1e-12 {
        return Err(Error::InvalidInput(format!(
            "lambda = {lambda} lies on the unit circle (essential spectrum)"
        )));
    }
    let phi = FourierVector::from_terms(1, &[(0, -lambda), (1, ONE)])?;
    let op = dual_truncated_matrix(&phi, theta, theta, n, m)?;
    let svd = kernel_interior(&op, threshold);
    let setting = DualSetting::square(phi, theta.clone());
    let domain = op.domain.clone();
    let hit = modulus < 1.0 && theta.at_origin().norm() < 1e-12;

    let (kernel, adjoint_kernel, residual) = if hit {
        let v = FourierVector::from_fn(n, |k| if k < 0 { lambda.powi((-k - 1) as i32) } else { ZERO });
        let residual = setting.relative_residual(&v);
        let c = setting.conjugate(&v);
        let k = KernelReport::from_vectors(
            canonical_basis(&coordinates(&domain, &[vec![v]])),
            &domain,
            svd.singular_values.clone(),
            svd.gap_ratio.unwrap_or(f64::INFINITY),
            svd.ambiguous,
            threshold,
            true,
        );
        let ka = KernelReport::from_vectors(
            canonical_basis(&coordinates(&domain, &[vec![c]])),
            &domain,
            Vec::new(),
            f64::INFINITY,
            false,
            threshold,
            true,
        );
        (k, ka, Some(residual))
    } else {
        (
            KernelReport::trivial(&domain, svd.singular_values.clone(), threshold),
            KernelReport::trivial(&domain, Vec::new(), threshold),
            None,
        )
    };
    Ok(ShiftKernelReport {
        lambda: [lambda.re, lambda.im],
        subspace_sin_angle: subspace_sin_angle(&kernel.vectors, &svd.vectors),
        kernel,
        adjoint_kernel,
        residual,
        svd_dimension: svd.dimension,
        min_interior_singular_value: interior_min_singular_value(&op),
        near_circle_warning: modulus > 0.9 && modulus < 1.1,
    })
}

// ---------------------------------------------------------------------------
// Spectrum scans
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SpectralSymbol {
    Rational(RationalFunction),
    Trig { coeffs: FourierVector },
}

impl SpectralSymbol {
    fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            SpectralSymbol::Rational(r) => r.eval(z),
            SpectralSymbol::Trig { coeffs } => coeffs.eval_boundary(z),
        }
    }

    fn shifted_kernel(
        &self,
        lambda: Complex64,
        theta: &BlaschkeProduct,
        n: usize,
        m: usize,
        threshold: f64,
    ) -> Result<KernelReport> {
        match self {
            SpectralSymbol::Rational(r) => rational_kernel_solve(&r.sub_constant(lambda), theta, n, m, threshold),
            SpectralSymbol::Trig { coeffs } => {
                let shifted = coeffs.sub(&FourierVector::constant(0, lambda));
                Ok(kernel_interior(&dual_truncated_matrix(&shifted, theta, theta, n, m)?, threshold))
            }
        }
    }
}

/// Closed rectangle sampled with a uniform step, row-major with the
/// imaginary part as the outer index.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanGrid {
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub step: f64,
}

impl ScanGrid {
    fn count(lo: f64, hi: f64, step: f64) -> usize {
        ((hi - lo) / step + 1e-9).floor() as usize + 1
    }

    pub fn points(&self) -> Vec<Complex64> {
        let nx = ScanGrid::count(self.re[0], self.re[1], self.step);
        let ny = ScanGrid::count(self.im[0], self.im[1], self.step);
        let mut out = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                out.push(Complex64::new(
                    self.re[0] + i as f64 * self.step,
                    self.im[0] + j as f64 * self.step,
                ));
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if !(self.step >= 0.01) || self.re[1] < self.re[0] || self.im[1] < self.im[0] {
            return Err(Error::InvalidInput(format!(
                "scan grid needs step >= 0.01 and ordered bounds, got {self:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Invertible,
    FredholmNoninvertible,
    NonFredholm,
    /// Too close to the essential curve to classify on a finite section.
    EssentialAdjacent,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Invertible => "invertible",
            Verdict::FredholmNoninvertible => "fredholm_noninvertible",
            Verdict::NonFredholm => "non_fredholm",
            Verdict::EssentialAdjacent => "essential_adjacent",
        }
    }

    /// Whether the verdict is a classification rather than a refusal.
    pub fn is_definite(&self) -> bool {
        !matches!(self, Verdict::EssentialAdjacent)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumPoint {
    pub lambda: [f64; 2],
    pub distance_to_essential: f64,
    pub kernel_dimension: Option<usize>,
    pub ambiguous: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointHit {
    pub lambda: [f64; 2],
    pub kernel_dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub essential_samples: Vec<[f64; 2]>,
    pub point_spectrum_hits: Vec<PointHit>,
    pub grid: ScanGrid,
    pub window: usize,
    pub shifts: usize,
    pub points: Vec<SpectrumPoint>,
    pub ambiguous_points: usize,
}

impl SpectrumReport {
    pub fn summary_line(&self) -> String {
        format!(
            "essential: {} samples; point hits: {}",
            self.essential_samples.len(),
            self.point_spectrum_hits.len()
        )
    }

    /// `lambda_re,lambda_im,kernel_dim,verdict`; the kernel column is empty
    /// where no kernel was computed.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda_re,lambda_im,kernel_dim,verdict\n");
        for p in &self.points {
            let k = p.kernel_dimension.map(|d| d.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{:.16e},{:.16e},{},{}", p.lambda[0], p.lambda[1], k, p.verdict.as_str());
        }
        out
    }
}

/// Distance from `lambda` to the closed boundary curve: nearest samples,
/// then a golden-section refinement of `|symbol(e^{it}) - lambda|`.
fn distance_to_curve(symbol: &SpectralSymbol, samples: &[Complex64], lambda: Complex64) -> f64 {
    let m = samples.len();
    let h = 2.0 * std::f64::consts::PI / m as f64;
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&a, &b| (samples[a] - lambda).norm().total_cmp(&(samples[b] - lambda).norm()));
    let f = |t: f64| (symbol.eval(Complex64::from_polar(1.0, t)) - lambda).norm();
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    idx.iter()
        .take(4)
        .map(|&j| {
            let (mut a, mut b) = ((j as f64 - 1.0) * h, (j as f64 + 1.0) * h);
            let mut c = b - gr * (b - a);
            let mut d = a + gr * (b - a);
            for _ in 0..80 {
                if f(c) < f(d) {
                    b = d;
                } else {
                    a = c;
                }
                c = b - gr * (b - a);
                d = a + gr * (b - a);
            }
            f(0.5 * (a + b)).min((samples[j] - lambda).norm())
        })
        .fold(f64::INFINITY, f64::min)
}

/// Spectrum classification on a grid: `symbol(T)` is the essential
/// spectrum; off it the operator is Fredholm and invertible exactly when
/// its kernel is trivial. Points within two grid steps of the curve are
/// refused.
pub fn spectrum_scan(
    symbol: &SpectralSymbol,
    theta: &BlaschkeProduct,
    grid: &ScanGrid,
    n: usize,
    m: usize,
    threshold: f64,
) -> Result<SpectrumReport> {
    grid.validate()?;
    dual_bases(theta, theta, n, m)?;
    let samples: Vec<Complex64> = BoundaryGrid::from_fn(ESSENTIAL_SAMPLES, |z| symbol.eval(z))?
        .samples()
        .to_vec();
    let lambdas = grid.points();
    let results = exec::map_slice(&lambdas, |&lambda| -> Result<SpectrumPoint> {
        let dist = distance_to_curve(symbol, &samples, lambda);
        let (kernel_dimension, ambiguous, verdict) = if dist < ON_CURVE {
            (None, false, Verdict::NonFredholm)
        } else if dist < 2.0 * grid.step {
            (None, false, Verdict::EssentialAdjacent)
        } else {
            let k = symbol.shifted_kernel(lambda, theta, n, m, threshold)?;
            let v = if k.dimension == 0 {
                Verdict::Invertible
            } else {
                Verdict::FredholmNoninvertible
            };
            (Some(k.dimension), k.ambiguous, v)
        };
        Ok(SpectrumPoint {
            lambda: [lambda.re, lambda.im],
            distance_to_essential: dist,
            kernel_dimension,
            ambiguous,
            verdict,
        })
    });
    let points: Vec<SpectrumPoint> = results.into_iter().collect::<Result<_>>()?;
    let hits = points
        .iter()
        .filter(|p| p.kernel_dimension.is_some_and(|d| d > 0))
        .map(|p| PointHit {
            lambda: p.lambda,
            kernel_dimension: p.kernel_dimension.unwrap_or(0),
        })
        .collect();
    Ok(SpectrumReport {
        essential_samples: samples.iter().map(|z| [z.re, z.im]).collect(),
        point_spectrum_hits: hits,
        grid: *grid,
        window: n,
        shifts: m,
        ambiguous_points: points.iter().filter(|p| p.ambiguous).count(),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::linalg::DEFAULT_KERNEL_THRESHOLD;

    const T: f64 = DEFAULT_KERNEL_THRESHOLD;

    fn poly(c: &[Complex64]) -> RationalFunction {
        RationalFunction::polynomial(c.to_vec())
    }

    fn b_half() -> BlaschkeProduct {
        BlaschkeProduct::factor(c64(0.5, 0.0)).unwrap()
    }

    #[test]
    fn symbol_z_on_z2_has_kernel_conj_z() {
        let theta = BlaschkeProduct::monomial(2);
        let r = poly(&[ZERO, ONE]);
        let k = rational_kernel_solve(&r, &theta, 32, 32, T).unwrap();
        assert_eq!(k.dimension, 1);
        assert!(!k.ambiguous);
        assert_eq!(k.basis[0].len(), 1);
        assert_eq!(k.basis[0][0].label, "[0]z^-1");
        // oracle: interior SVD of the dual matrix
        let phi = r.laurent(1).unwrap();
        let svd = kernel_interior(&dual_truncated_matrix(&phi, &theta, &theta, 32, 32).unwrap(), T);
        assert!(subspace_sin_angle(&k.vectors, &svd.vectors) < 1e-6);
    }

    #[test]
    fn outside_lambda_gives_trivial_kernel() {
        let theta = BlaschkeProduct::monomial(2);
        let r = poly(&[c64(-1.5, 0.5), ONE]);
        assert_eq!(rational_kernel_solve(&r, &theta, 32, 32, T).unwrap().dimension, 0);
        assert_eq!(rational_kernel_solve(&poly(&[ONE]), &theta, 32, 32, T).unwrap().dimension, 0);
    }

    #[test]
    fn rational_solver_matches_svd_on_a_genuine_quotient() {
        // R = (z - 0.3) / (1 - 0.5 z) on theta = z b_{1/2}
        let theta = BlaschkeProduct::monomial(1).mul(&b_half());
        let r = RationalFunction::new(vec![c64(-0.3, 0.0), ONE], vec![ONE, c64(-0.5, 0.0)]).unwrap();
        let k = rational_kernel_solve(&r, &theta, 64, 64, T).unwrap();
        let phi = r.laurent(64).unwrap();
        let svd = kernel_interior(&dual_truncated_matrix(&phi, &theta, &theta, 64, 64).unwrap(), T);
        assert_eq!(k.dimension, svd.dimension);
        assert_eq!(k.dimension, 1);
        assert!(subspace_sin_angle(&k.vectors, &svd.vectors) < 1e-6);
    }

    #[test]
    fn zero_symbol_is_rejected() {
        let r = poly(&[]);
        assert!(rational_kernel_solve(&r, &BlaschkeProduct::monomial(1), 16, 16, T).is_err());
    }

    #[test]
    fn shift_kernel_cases() {
        let z2 = BlaschkeProduct::monomial(2);
        let r = dual_shift_kernel(&z2, ZERO, 64, 64, T).unwrap();
        assert_eq!(r.kernel.dimension, 1);
        assert_eq!(r.svd_dimension, 1);
        assert_eq!(r.kernel.basis[0][0].label, "[0]z^-1");
        assert!(r.residual.unwrap() < 1e-14);
        // adjoint kernel is C_theta(conj z) = theta
        assert_eq!(r.adjoint_kernel.basis[0][0].label, "[0]theta*z^0");

        let r = dual_shift_kernel(&z2, c64(0.3, 0.2), 128, 128, T).unwrap();
        assert!(r.residual.unwrap() <= 1e-6);
        assert!(r.subspace_sin_angle < 1e-6);

        let r = dual_shift_kernel(&b_half(), ZERO, 64, 64, T).unwrap();
        assert_eq!(r.kernel.dimension, 0);
        assert_eq!(r.svd_dimension, 0);
        assert!(r.min_interior_singular_value >= 0.05);
        assert!(!r.near_circle_warning);
        assert!(dual_shift_kernel(&z2, c64(0.95, 0.0), 64, 64, T).unwrap().near_circle_warning);
        assert!(dual_shift_kernel(&z2, c64(0.0, 1.0), 64, 64, T).is_err());
    }

    #[test]
    fn adjoint_shift_kernel_is_annihilated_by_the_adjoint() {
        let z2 = BlaschkeProduct::monomial(2);
        let lam = c64(0.3, 0.2);
        let r = dual_shift_kernel(&z2, lam, 64, 64, T).unwrap();
        let frame = r.adjoint_kernel.domain.frame();
        let g = frame.synthesize(r.adjoint_kernel.vectors.column(0).as_slice(), 64).remove(0);
        let adj = DualSetting::square(FourierVector::from_terms(1, &[(0, -lam.conj()), (-1, ONE)]).unwrap(), z2);
        assert!(adj.relative_residual(&g) < 1e-12);
        // theta / (1 - conj(lambda) z) spans it
        let expect = FourierVector::from_fn(64, |k| if k >= 2 { lam.conj().powi(k as i32 - 2) } else { ZERO });
        let c = coordinates(&r.adjoint_kernel.domain, &[vec![expect]]);
        assert!(subspace_sin_angle(&c, &r.adjoint_kernel.vectors) < 1e-12);
    }

    fn unit_scan(theta: &BlaschkeProduct, step: f64) -> SpectrumReport {
        let grid = ScanGrid {
            re: [-1.5, 1.5],
            im: [-1.5, 1.5],
            step,
        };
        spectrum_scan(&SpectralSymbol::Rational(poly(&[ZERO, ONE])), theta, &grid, 48, 48, T).unwrap()
    }

    #[test]
    fn scan_of_z_on_z3_hits_the_disk() {
        let rep = unit_scan(&BlaschkeProduct::monomial(3), 0.1);
        assert_eq!(rep.points.len(), 31 * 31);
        assert_eq!(rep.ambiguous_points, 0);
        for p in &rep.points {
            let m = Complex64::new(p.lambda[0], p.lambda[1]).norm();
            match p.verdict {
                Verdict::FredholmNoninvertible => assert!(m < 1.0 && p.kernel_dimension == Some(1)),
                Verdict::Invertible => assert!(m > 1.0),
                Verdict::NonFredholm => assert!((m - 1.0).abs() < 1e-9),
                Verdict::EssentialAdjacent => assert!((m - 1.0).abs() < 0.2),
            }
            if (m - 1.0).abs() >= 0.2 {
                assert!(p.verdict.is_definite());
            }
        }
        assert!(rep.point_spectrum_hits.len() > 100);
        assert_eq!(rep.summary_line(), format!("essential: 1024 samples; point hits: {}", rep.point_spectrum_hits.len()));
        assert!(rep.to_csv().starts_with("lambda_re,lambda_im,kernel_dim,verdict\n-1.5"));
    }

    #[test]
    fn scan_of_z_on_nonvanishing_theta_has_no_hits() {
        let rep = unit_scan(&b_half(), 0.25);
        assert!(rep.point_spectrum_hits.is_empty());
    }

    #[test]
    fn outer_symbol_is_invertible_at_zero() {
        let grid = ScanGrid {
            re: [-0.5, 0.5],
            im: [-0.5, 0.5],
            step: 0.5,
        };
        let sym = SpectralSymbol::Rational(poly(&[c64(2.0, 0.0), ONE]));
        let rep = spectrum_scan(&sym, &BlaschkeProduct::monomial(2), &grid, 32, 32, T).unwrap();
        let origin = rep.points.iter().find(|p| p.lambda == [0.0, 0.0]).unwrap();
        assert_eq!(origin.verdict, Verdict::Invertible);
        assert!((origin.distance_to_essential - 1.0).abs() < 1e-9);
    }

    #[test]
    fn trig_symbol_scan_agrees_with_rational() {
        let grid = ScanGrid {
            re: [-0.5, 0.5],
            im: [0.0, 0.0],
            step: 0.5,
        };
        let theta = BlaschkeProduct::monomial(1);
        let a = spectrum_scan(&SpectralSymbol::Rational(poly(&[ZERO, ONE])), &theta, &grid, 32, 32, T).unwrap();
        let b = spectrum_scan(
            &SpectralSymbol::Trig {
                coeffs: FourierVector::monomial(1, 1, ONE).unwrap(),
            },
            &theta,
            &grid,
            32,
            32,
            T,
        )
        .unwrap();
        let va: Vec<Verdict> = a.points.iter().map(|p| p.verdict).collect();
        let vb: Vec<Verdict> = b.points.iter().map(|p| p.verdict).collect();
        assert_eq!(va, vb);
    }

    #[test]
    fn bad_grid_is_rejected() {
        let grid = ScanGrid {
            re: [0.0, 1.0],
            im: [0.0, 1.0],
            step: 0.001,
        };
        let sym = SpectralSymbol::Rational(poly(&[ZERO, ONE]));
        assert!(spectrum_scan(&sym, &BlaschkeProduct::monomial(1), &grid, 16, 16, T).is_err());
    }
}
