//! Functions on the unit circle as windows of Fourier coefficients.
//!
//! A [`FourierVector`] of radius `N` stores the coefficients of `z^k` for
//! `k = -N..=N`. The `k >= 0` part lives in `H^2`, the `k <= -1` part in
//! `H^2_-`. A [`BoundaryGrid`] holds equispaced samples on the circle and is
//! the carrier for sup norms, winding numbers and pointwise inverses.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative size below which a truncated product tail still counts as exact.
pub const EXACT_TOLERANCE: f64 = 1e-14;

/// Relative coefficient size used by [`FourierVector::extent`].
pub const EXTENT_TOLERANCE: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFourierVector", into = "RawFourierVector")]
pub struct FourierVector {
    radius: usize,
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFourierVector {
    window_radius: usize,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<RawFourierVector> for FourierVector {
    type Error = Error;

    fn try_from(raw: RawFourierVector) -> Result<Self> {
        let coeffs = raw
            .coeffs
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        FourierVector::from_coeffs(raw.window_radius, coeffs)
    }
}

impl From<FourierVector> for RawFourierVector {
    fn from(f: FourierVector) -> Self {
        RawFourierVector {
            window_radius: f.radius,
            coeffs: f.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

/// Whether a product must fit its output window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplyMode {
    /// Error with [`Error::WindowOverflow`] when mass falls outside the window.
    Strict,
    /// Drop out-of-window coefficients and report their mass.
    Truncate,
}

/// Result of a windowed product.
#[derive(Clone, Debug)]
pub struct Product {
    pub value: FourierVector,
    /// l2 mass of the coefficients that fell outside the output window.
    pub truncated_mass: f64,
    /// True when the dropped mass is negligible relative to the inputs.
    pub exact: bool,
}

impl FourierVector {
    pub fn zeros(radius: usize) -> Self {
        FourierVector {
            radius,
            coeffs: vec![ZERO; 2 * radius + 1],
        }
    }

    pub fn from_coeffs(radius: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * radius + 1 {
            return Err(Error::InvalidInput(format!(
                "window radius {radius} needs {} coefficients, got {}",
                2 * radius + 1,
                coeffs.len()
            )));
        }
        Ok(FourierVector { radius, coeffs })
    }

    pub fn from_fn(radius: usize, f: impl Fn(i64) -> Complex64) -> Self {
        let r = radius as i64;
        FourierVector {
            radius,
            coeffs: (-r..=r).map(f).collect(),
        }
    }

    /// Sparse constructor from `(k, c_k)` pairs; repeated indices accumulate.
    pub fn from_terms(radius: usize, terms: &[(i64, Complex64)]) -> Result<Self> {
        let mut f = FourierVector::zeros(radius);
        for &(k, c) in terms {
            if k.unsigned_abs() as usize > radius {
                return Err(Error::WindowOverflow {
                    what: format!("term z^{k}"),
                    needed: k.unsigned_abs() as usize,
                    available: radius,
                });
            }
            *f.coeff_mut(k) += c;
        }
        Ok(f)
    }

    pub fn monomial(radius: usize, k: i64, c: Complex64) -> Result<Self> {
        FourierVector::from_terms(radius, &[(k, c)])
    }

    pub fn constant(radius: usize, c: Complex64) -> Self {
        let mut f = FourierVector::zeros(radius);
        f.coeffs[radius] = c;
        f
    }

    /// Coefficients sampled from a function on the circle through an FFT of
    /// `grid` boundary values. Returns the vector and the mass that the FFT
    /// placed outside the window (a decay / aliasing report).
    pub fn from_boundary_fn(
        radius: usize,
        grid: usize,
        f: impl Fn(Complex64) -> Complex64,
    ) -> Result<(Self, f64)> {
        let samples = BoundaryGrid::from_fn(grid, f)?;
        samples.to_fourier_with_tail(radius)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero outside the window.
    #[inline]
    pub fn coeff(&self, k: i64) -> Complex64 {
        let r = self.radius as i64;
        if k < -r || k > r {
            ZERO
        } else {
            self.coeffs[(k + r) as usize]
        }
    }

    /// Mutable coefficient of `z^k`. Panics outside the window.
    #[inline]
    pub fn coeff_mut(&mut self, k: i64) -> &mut Complex64 {
        let r = self.radius as i64;
        assert!(k >= -r && k <= r, "index {k} outside window radius {r}");
        &mut self.coeffs[(k + r) as usize]
    }

    /// Re-windows to `radius`, returning the vector and the dropped l2 mass.
    pub fn resized(&self, radius: usize) -> (Self, f64) {
        let mut out = FourierVector::zeros(radius);
        let r = radius as i64;
        let mut dropped = 0.0;
        for (k, c) in self.iter() {
            if k.abs() <= r {
                *out.coeff_mut(k) = c;
            } else {
                dropped += c.norm_sqr();
            }
        }
        (out, dropped.sqrt())
    }

    /// Re-windows to `radius`, silently dropping anything outside.
    pub fn with_radius(&self, radius: usize) -> Self {
        self.resized(radius).0
    }

    /// `(k, c_k)` pairs in ascending `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let r = self.radius as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - r, c))
    }

    /// Orthogonal projection onto `H^2` (coefficients with `k >= 0`).
    pub fn project_plus(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[..self.radius].iter_mut().for_each(|c| *c = ZERO);
        out
    }

    /// Orthogonal projection onto `H^2_-` (coefficients with `k <= -1`).
    pub fn project_minus(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[self.radius..].iter_mut().for_each(|c| *c = ZERO);
        out
    }

    /// Boundary complex conjugate: `conj(f)` has coefficients `conj(c_{-k})`.
    pub fn conj(&self) -> Self {
        FourierVector {
            radius: self.radius,
            coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect(),
        }
    }

    /// Multiplication by `z^m`, keeping the window; returns dropped mass.
    pub fn shifted(&self, m: i64) -> (Self, f64) {
        let mut out = FourierVector::zeros(self.radius);
        let r = self.radius as i64;
        let mut dropped = 0.0;
        for (k, c) in self.iter() {
            let j = k + m;
            if j.abs() <= r {
                *out.coeff_mut(j) = c;
            } else {
                dropped += c.norm_sqr();
            }
        }
        (out, dropped.sqrt())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        FourierVector {
            radius: self.radius,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Sum of two vectors on the larger of the two windows.
    pub fn add(&self, other: &FourierVector) -> Self {
        self.combine(other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &FourierVector) -> Self {
        self.combine(other, Complex64::new(-1.0, 0.0))
    }

    /// `self + s * other` on the larger window.
    pub fn combine(&self, other: &FourierVector, s: Complex64) -> Self {
        let radius = self.radius.max(other.radius);
        let mut out = self.with_radius(radius);
        for (k, c) in other.iter() {
            *out.coeff_mut(k) += s * c;
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `L^2` norm, equal to the Euclidean norm of the coefficients.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Sum of coefficient moduli; an upper bound for the sup norm.
    pub fn l1_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `<self, other> = sum conj(self_k) other_k` (linear in `other`).
    pub fn inner(&self, other: &FourierVector) -> Complex64 {
        let r = self.radius.min(other.radius) as i64;
        (-r..=r).map(|k| self.coeff(k).conj() * other.coeff(k)).sum()
    }

    /// Smallest and largest `k` with `|c_k| > tol * max|c|`, or `None` for
    /// the zero vector.
    pub fn support(&self, tol: f64) -> Option<(i64, i64)> {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return None;
        }
        let cut = tol * max;
        let mut it = self.iter().filter(|(_, c)| c.norm() > cut).map(|(k, _)| k);
        let lo = it.next()?;
        let hi = it.last().unwrap_or(lo);
        Some((lo, hi))
    }

    /// Largest `|k|` carrying a coefficient above [`EXTENT_TOLERANCE`]
    /// relative to the largest one.
    pub fn extent(&self) -> usize {
        match self.support(EXTENT_TOLERANCE) {
            Some((lo, hi)) => lo.unsigned_abs().max(hi.unsigned_abs()) as usize,
            None => 0,
        }
    }

    /// No coefficient with `k < 0` above `tol` (relative to the largest).
    pub fn is_analytic(&self, tol: f64) -> bool {
        self.support(tol).is_none_or(|(lo, _)| lo >= 0)
    }

    /// No coefficient with `k > 0` above `tol` (relative to the largest).
    pub fn is_coanalytic(&self, tol: f64) -> bool {
        self.support(tol).is_none_or(|(_, hi)| hi <= 0)
    }

    /// Trigonometric sum `sum c_k z^k` at a point of the circle.
    pub fn eval_boundary(&self, z: Complex64) -> Complex64 {
        let zinv = z.inv();
        let mut acc = self.coeff(0);
        let (mut zp, mut zn) = (z, zinv);
        for k in 1..=self.radius as i64 {
            acc += self.coeff(k) * zp + self.coeff(-k) * zn;
            zp *= z;
            zn *= zinv;
        }
        acc
    }

    /// Power series of the analytic part, `sum_{k>=0} c_k z^k`, for `|z| <= 1`.
    pub fn eval_analytic(&self, z: Complex64) -> Complex64 {
        (0..=self.radius as i64)
            .rev()
            .fold(ZERO, |acc, k| acc * z + self.coeff(k))
    }

    /// Samples on the `grid`-point boundary grid. Requires `grid >= 2N + 2`.
    pub fn to_grid(&self, grid: usize) -> Result<BoundaryGrid> {
        BoundaryGrid::check_size(grid)?;
        if grid < 2 * self.radius + 2 {
            return Err(Error::WindowOverflow {
                what: "boundary grid".into(),
                needed: 2 * self.radius + 2,
                available: grid,
            });
        }
        let mut buf = vec![ZERO; grid];
        for (k, c) in self.iter() {
            buf[k.rem_euclid(grid as i64) as usize] += c;
        }
        FftPlanner::new().plan_fft_inverse(grid).process(&mut buf);
        Ok(BoundaryGrid { samples: buf })
    }

    /// Default grid size for this window: next power of two `>= 4N + 4`.
    pub fn default_grid(&self) -> usize {
        (4 * self.radius + 4).next_power_of_two().max(256)
    }

    /// Product `self * other` on a window of radius `out_radius`.
    pub fn multiply(
        &self,
        other: &FourierVector,
        out_radius: usize,
        mode: MultiplyMode,
    ) -> Result<Product> {
        Multiplier::new(self, other.radius).apply(other, out_radius, mode)
    }

    /// Product on the larger of the two windows, truncating.
    pub fn mul_trunc(&self, other: &FourierVector) -> FourierVector {
        let radius = self.radius.max(other.radius);
        self.multiply(other, radius, MultiplyMode::Truncate)
            .expect("truncating multiply does not fail")
            .value
    }

    /// Drops coefficients below `tol * max|c|` and shrinks the window to the
    /// remaining support.
    pub fn trimmed(&self, tol: f64) -> FourierVector {
        match self.support(tol) {
            None => FourierVector::zeros(0),
            Some((lo, hi)) => {
                let r = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
                FourierVector::from_fn(r, |k| {
                    if k >= lo && k <= hi {
                        self.coeff(k)
                    } else {
                        ZERO
                    }
                })
            }
        }
    }
}

/// Repeated multiplication by one fixed symbol with cached FFT plans and
/// symbol samples.
#[derive(Clone)]
pub struct Multiplier {
    symbol: FourierVector,
    constant: Option<Complex64>,
    grid: usize,
    samples: Vec<Complex64>,
    forward: Option<Arc<dyn Fft<f64>>>,
    inverse: Option<Arc<dyn Fft<f64>>>,
    l1: f64,
}

impl std::fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Multiplier")
            .field("symbol_radius", &self.symbol.radius)
            .field("grid", &self.grid)
            .finish()
    }
}

impl Multiplier {
    /// Prepares multiplication by `symbol` for inputs of radius up to
    /// `max_input_radius`.
    pub fn new(symbol: &FourierVector, max_input_radius: usize) -> Self {
        let symbol = symbol.trimmed(1e-17);
        let l1 = symbol.l1_coeff_norm();
        if symbol.radius == 0 {
            return Multiplier {
                constant: Some(symbol.coeff(0)),
                symbol,
                grid: 0,
                samples: Vec::new(),
                forward: None,
                inverse: None,
                l1,
            };
        }
        let grid = (2 * (symbol.radius + max_input_radius) + 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(grid);
        let inverse = planner.plan_fft_inverse(grid);
        let mut samples = vec![ZERO; grid];
        for (k, c) in symbol.iter() {
            samples[k.rem_euclid(grid as i64) as usize] += c;
        }
        inverse.process(&mut samples);
        let norm = 1.0 / grid as f64;
        samples.iter_mut().for_each(|s| *s *= norm);
        Multiplier {
            symbol,
            constant: None,
            grid,
            samples,
            forward: Some(forward),
            inverse: Some(inverse),
            l1,
        }
    }

    pub fn symbol(&self) -> &FourierVector {
        &self.symbol
    }

    /// `symbol * f` on a window of radius `out_radius`.
    pub fn apply(&self, f: &FourierVector, out_radius: usize, mode: MultiplyMode) -> Result<Product> {
        let full = self.full_product(f);
        let (value, truncated_mass) = full.resized(out_radius);
        let scale = self.l1 * f.norm();
        let exact = truncated_mass <= EXACT_TOLERANCE * scale.max(f64::MIN_POSITIVE);
        if mode == MultiplyMode::Strict && !exact {
            return Err(Error::WindowOverflow {
                what: "product".into(),
                needed: full.extent(),
                available: out_radius,
            });
        }
        Ok(Product {
            value,
            truncated_mass,
            exact,
        })
    }

    /// Truncating application.
    pub fn apply_trunc(&self, f: &FourierVector, out_radius: usize) -> FourierVector {
        self.apply(f, out_radius, MultiplyMode::Truncate)
            .expect("truncating multiply does not fail")
            .value
    }

    /// The untruncated product on radius `symbol.radius + f.radius`.
    pub fn apply_exact(&self, f: &FourierVector) -> FourierVector {
        self.full_product(f)
    }

    fn full_product(&self, f: &FourierVector) -> FourierVector {
        if let Some(c) = self.constant {
            return f.scale(c);
        }
        let out_radius = self.symbol.radius + f.radius;
        let (forward, inverse) = (self.forward.as_ref().unwrap(), self.inverse.as_ref().unwrap());
        let needed = 2 * out_radius + 1;
        if needed > self.grid {
            // Input wider than prepared for: fall back to a one-off plan.
            return Multiplier::new(&self.symbol, f.radius).full_product(f);
        }
        let mut buf = vec![ZERO; self.grid];
        let g = self.grid as i64;
        for (k, c) in f.iter() {
            buf[k.rem_euclid(g) as usize] += c;
        }
        inverse.process(&mut buf);
        buf.iter_mut()
            .zip(&self.samples)
            .for_each(|(b, s)| *b *= s);
        forward.process(&mut buf);
        FourierVector::from_fn(out_radius, |k| buf[k.rem_euclid(g) as usize])
    }
}

/// Equispaced samples `f(e^{2 pi i j / M})`, `j = 0..M`, with `M` a power of two.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryGrid {
    samples: Vec<Complex64>,
}

impl BoundaryGrid {
    fn check_size(m: usize) -> Result<()> {
        if m < 2 || !m.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "boundary grid size {m} is not a power of two >= 2"
            )));
        }
        Ok(())
    }

    pub fn from_samples(samples: Vec<Complex64>) -> Result<Self> {
        BoundaryGrid::check_size(samples.len())?;
        Ok(BoundaryGrid { samples })
    }

    pub fn from_fn(m: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        BoundaryGrid::check_size(m)?;
        Ok(BoundaryGrid {
            samples: (0..m).map(|j| f(Self::node(m, j))).collect(),
        })
    }

    /// The `j`-th grid point `e^{2 pi i j / m}`.
    pub fn node(m: usize, j: usize) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> BoundaryGrid {
        BoundaryGrid {
            samples: self.samples.iter().map(|&s| f(s)).collect(),
        }
    }

    /// Pointwise product; grids must have equal size.
    pub fn mul(&self, other: &BoundaryGrid) -> Result<BoundaryGrid> {
        if self.len() != other.len() {
            return Err(Error::InvalidInput("boundary grids differ in size".into()));
        }
        Ok(BoundaryGrid {
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect(),
        })
    }

    /// Largest sample modulus.
    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    pub fn min_modulus(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(f64::INFINITY, f64::min)
    }

    /// Fourier coefficients `-N..=N`; requires `M >= 2N + 2`.
    pub fn to_fourier(&self, radius: usize) -> Result<FourierVector> {
        self.to_fourier_with_tail(radius).map(|(f, _)| f)
    }

    /// Like [`to_fourier`](Self::to_fourier) but also returns the l2 mass of
    /// the FFT coefficients outside the window.
    pub fn to_fourier_with_tail(&self, radius: usize) -> Result<(FourierVector, f64)> {
        let m = self.len();
        if m < 2 * radius + 2 {
            return Err(Error::WindowOverflow {
                what: "boundary grid".into(),
                needed: 2 * radius + 2,
                available: m,
            });
        }
        let mut buf = self.samples.clone();
        FftPlanner::new().plan_fft_forward(m).process(&mut buf);
        let norm = 1.0 / m as f64;
        buf.iter_mut().for_each(|c| *c *= norm);
        let r = radius as i64;
        let mi = m as i64;
        let f = FourierVector::from_fn(radius, |k| buf[k.rem_euclid(mi) as usize]);
        let tail: f64 = (0..mi)
            .filter(|&i| {
                let k = if i > mi / 2 { i - mi } else { i };
                k.abs() > r
            })
            .map(|i| buf[i as usize].norm_sqr())
            .sum();
        Ok((f, tail.sqrt()))
    }

    /// Total argument change divided by `2 pi`, summing principal-branch
    /// increments between consecutive samples.
    pub fn winding_number(&self) -> Result<i64> {
        let scale = self.sup_norm().max(1.0);
        let min = self.min_modulus();
        if !(min > 1e-10 * scale) {
            return Err(Error::NearZeroSample { min_modulus: min });
        }
        let m = self.len();
        let total: f64 = (0..m)
            .map(|j| (self.samples[(j + 1) % m] / self.samples[j]).arg())
            .sum();
        Ok((total / (2.0 * PI)).round() as i64)
    }
}

/// Winding number of a function sampled on an `m`-point grid.
pub fn winding_number_of(m: usize, f: impl Fn(Complex64) -> Complex64) -> Result<i64> {
    BoundaryGrid::from_fn(m, f)?.winding_number()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use proptest::prelude::*;

    fn fv(radius: usize, terms: &[(i64, f64)]) -> FourierVector {
        let t: Vec<_> = terms.iter().map(|&(k, c)| (k, c64(c, 0.0))).collect();
        FourierVector::from_terms(radius, &t).unwrap()
    }

    fn close(a: &FourierVector, b: &FourierVector, tol: f64) -> bool {
        a.sub(b).norm() <= tol
    }

    #[test]
    fn project_plus_examples() {
        let f = fv(4, &[(-1, 1.0), (0, 2.0), (1, 1.0)]);
        assert!(close(&f.project_plus(), &fv(4, &[(0, 2.0), (1, 1.0)]), 0.0));
        assert_eq!(fv(4, &[(-1, 1.0)]).project_plus().norm(), 0.0);
    }

    #[test]
    fn multiply_examples() {
        let z = fv(4, &[(1, 1.0)]);
        let zbar = fv(4, &[(-1, 1.0)]);
        let p = z.multiply(&zbar, 4, MultiplyMode::Strict).unwrap();
        assert!(p.exact);
        assert!(close(&p.value, &fv(4, &[(0, 1.0)]), 1e-15));

        let one = FourierVector::constant(3, c64(1.0, 0.0));
        let f = fv(3, &[(-2, 0.5), (3, -1.0)]);
        assert!(close(&one.mul_trunc(&f), &f, 1e-15));
    }

    #[test]
    fn strict_multiply_rejects_overflow() {
        let z2 = fv(2, &[(2, 1.0)]);
        let err = z2.multiply(&z2, 3, MultiplyMode::Strict).unwrap_err();
        assert!(matches!(err, Error::WindowOverflow { .. }));
        let p = z2.multiply(&z2, 3, MultiplyMode::Truncate).unwrap();
        assert!(!p.exact);
        assert!((p.truncated_mass - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sup_norm_examples() {
        let g = BoundaryGrid::from_fn(256, |z| z + 2.0).unwrap();
        assert!((g.sup_norm() - 3.0).abs() < 1e-14);
        let g = BoundaryGrid::from_fn(256, |z| z).unwrap();
        assert!((g.sup_norm() - 1.0).abs() < 1e-14);
        let g = BoundaryGrid::from_fn(256, |z| (z - 0.5) / (1.0 - z / 2.0)).unwrap();
        assert!((g.sup_norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn winding_examples() {
        assert_eq!(winding_number_of(2048, |z| z * z).unwrap(), 2);
        assert_eq!(winding_number_of(2048, |z| -(z * z * z) * z.conj()).unwrap(), 2);
        assert_eq!(
            winding_number_of(2048, |z| (z - 0.5) / (1.0 - z / 2.0)).unwrap(),
            1
        );
        let err = winding_number_of(2048, |z| z - 1.0).unwrap_err();
        assert!(matches!(err, Error::NearZeroSample { .. }));
    }

    #[test]
    fn grid_round_trip() {
        let f = FourierVector::from_fn(20, |k| c64(k as f64 * 0.1, 1.0 / (1.0 + k.abs() as f64)));
        let g = f.to_grid(128).unwrap();
        let back = g.to_fourier(20).unwrap();
        assert!(close(&f, &back, 1e-12));
        assert!(f.to_grid(32).is_err());
    }

    #[test]
    fn serde_shape() {
        let f = fv(1, &[(1, 2.0)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"window_radius":1,"coeffs":[[0.0,0.0],[0.0,0.0],[2.0,0.0]]}"#);
        let back: FourierVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<FourierVector>(r#"{"window_radius":1,"coeffs":[[0,0]]}"#).is_err());
    }

    fn arb_vector(radius: usize) -> impl Strategy<Value = FourierVector> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2 * radius + 1).prop_map(move |v| {
            FourierVector::from_coeffs(radius, v.into_iter().map(|(a, b)| c64(a, b)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn projections_split_orthogonally(f in arb_vector(12), g in arb_vector(12)) {
            let (p, m) = (f.project_plus(), f.project_minus());
            prop_assert!((p.norm_sqr() + m.norm_sqr() - f.norm_sqr()).abs() < 1e-12);
            prop_assert!(close(&p.add(&m), &f, 0.0));
            prop_assert!(close(&p.project_plus(), &p, 0.0));
            prop_assert!(g.project_plus().inner(&f.project_minus()).norm() == 0.0);
        }

        #[test]
        fn parseval_through_grid(f in arb_vector(10)) {
            let g = f.to_grid(64).unwrap();
            let mean_sq: f64 = g.samples().iter().map(|s| s.norm_sqr()).sum::<f64>() / 64.0;
            prop_assert!((mean_sq - f.norm_sqr()).abs() < 1e-10);
            prop_assert!(close(&g.to_fourier(10).unwrap(), &f, 1e-12));
        }

        #[test]
        fn multiply_commutes_and_fits(f in arb_vector(6), g in arb_vector(6)) {
            let fg = f.multiply(&g, 12, MultiplyMode::Strict).unwrap();
            let gf = g.multiply(&f, 12, MultiplyMode::Strict).unwrap();
            prop_assert!(fg.exact);
            prop_assert!(close(&fg.value, &gf.value, 1e-12));
            let ff = f.multiply(&f.conj(), 12, MultiplyMode::Strict).unwrap().value;
            prop_assert!(ff.coeff(0).im.abs() < 1e-12 && ff.coeff(0).re >= 0.0);
        }

        #[test]
        fn winding_is_additive(a in 0.0..0.8f64, t in 0.0..std::f64::consts::TAU, n in 0usize..4) {
            let zero = Complex64::from_polar(a, t);
            let f = move |z: Complex64| (z - zero) * (2.0 - z);
            let g = move |z: Complex64| z.powu(n as u32);
            let wf = winding_number_of(2048, f).unwrap();
            let wg = winding_number_of(2048, g).unwrap();
            let wfg = winding_number_of(2048, |z| f(z) * g(z)).unwrap();
            prop_assert_eq!(wfg, wf + wg);
            prop_assert_eq!(wf, 1);
        }
    }
}
