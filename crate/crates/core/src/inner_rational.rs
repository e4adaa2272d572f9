//! Finite Blaschke products, rational symbols, inner-outer factorization,
//! inner GCDs and grid-based corona-pair checks.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::fourier::{FourierVector, EXTENT_TOLERANCE};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Zeros closer than this are paired by [`inner_gcd`].
pub const GCD_CLUSTER_TOLERANCE: f64 = 1e-8;
/// Zeros of a rational function within this distance of the circle are rejected.
pub const BOUNDARY_TOLERANCE: f64 = 1e-8;
/// Default corona threshold.
pub const DEFAULT_CORONA_DELTA: f64 = 1e-4;

fn fmt_c(z: Complex64) -> String {
    format!("{:+.6}{:+.6}i", z.re, z.im)
}

// ---------------------------------------------------------------------------
// Polynomials (ascending coefficient order)
// ---------------------------------------------------------------------------

/// Polynomial helpers on ascending coefficient vectors.
pub mod poly {
    use super::*;

    /// Removes trailing exact zeros; the zero polynomial becomes `[]`.
    pub fn trim(mut p: Vec<Complex64>) -> Vec<Complex64> {
        while p.last().is_some_and(|c| *c == ZERO) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[Complex64]) -> Option<usize> {
        p.iter().rposition(|c| *c != ZERO)
    }

    pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
        p.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; a.len().max(b.len())];
        a.iter().enumerate().for_each(|(i, &c)| out[i] += c);
        b.iter().enumerate().for_each(|(i, &c)| out[i] += c);
        trim(out)
    }

    pub fn scale(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
        trim(a.iter().map(|c| c * s).collect())
    }

    /// Divides by `(z - r)`, returning quotient and remainder.
    pub fn deflate(p: &[Complex64], r: Complex64) -> (Vec<Complex64>, Complex64) {
        let n = p.len();
        if n == 0 {
            return (Vec::new(), ZERO);
        }
        let mut q = vec![ZERO; n - 1];
        let mut acc = ZERO;
        for k in (0..n).rev() {
            let next = p[k] + acc * r;
            if k > 0 {
                q[k - 1] = next;
            } else {
                return (q, next);
            }
            acc = next;
        }
        unreachable!()
    }

    /// `c * prod (z - r_i)`.
    pub fn from_roots(roots: &[Complex64], c: Complex64) -> Vec<Complex64> {
        roots
            .iter()
            .fold(vec![c], |acc, &r| mul(&acc, &[-r, ONE]))
    }

    fn derivative(p: &[Complex64]) -> Vec<Complex64> {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect()
    }

    /// Roots from companion-matrix eigenvalues, with exact zero roots split
    /// off, a Newton polish, and near-coincident roots merged to their
    /// centroid (multiple roots are otherwise only accurate to `eps^{1/m}`).
    pub fn roots(p: &[Complex64]) -> Result<Vec<Complex64>> {
        let p = trim(p.to_vec());
        let Some(n) = degree(&p) else {
            return Err(Error::InvalidInput("roots of the zero polynomial".into()));
        };
        let zeros_at_origin = p.iter().position(|c| *c != ZERO).unwrap();
        let q = &p[zeros_at_origin..=n];
        let m = q.len() - 1;
        let mut roots = vec![ZERO; zeros_at_origin];
        if m == 0 {
            return Ok(roots);
        }
        let lead = q[m];
        let companion = DMatrix::from_fn(m, m, |i, j| {
            if j == m - 1 {
                -q[i] / lead
            } else if i == j + 1 {
                ONE
            } else {
                ZERO
            }
        });
        let schur = Schur::try_new(companion, 1e-15, 100_000)
            .ok_or_else(|| Error::Numerical("companion Schur iteration did not converge".into()))?;
        let (_, t) = schur.unpack();
        let dq = derivative(q);
        let mut found: Vec<Complex64> = t
            .diagonal()
            .iter()
            .map(|&r0| {
                let mut r = r0;
                for _ in 0..4 {
                    let d = eval(&dq, r);
                    if d.norm() == 0.0 {
                        break;
                    }
                    let step = eval(q, r) / d;
                    let cand = r - step;
                    if eval(q, cand).norm() < eval(q, r).norm() {
                        r = cand;
                    } else {
                        break;
                    }
                }
                r
            })
            .collect();
        merge_clusters(&mut found, 1e-6);
        roots.extend(found);
        Ok(roots)
    }

    fn merge_clusters(roots: &mut [Complex64], tol: f64) {
        let n = roots.len();
        let mut group = vec![usize::MAX; n];
        for i in 0..n {
            if group[i] != usize::MAX {
                continue;
            }
            group[i] = i;
            for j in i + 1..n {
                if group[j] == usize::MAX && (roots[i] - roots[j]).norm() < tol {
                    group[j] = i;
                }
            }
        }
        for g in 0..n {
            let members: Vec<usize> = (0..n).filter(|&i| group[i] == g).collect();
            if members.len() > 1 {
                let c = members.iter().map(|&i| roots[i]).sum::<Complex64>() / members.len() as f64;
                members.iter().for_each(|&i| roots[i] = c);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Blaschke products
// ---------------------------------------------------------------------------

/// `c * prod (z - a_i) / (1 - conj(a_i) z)` with `|a_i| < 1`, `|c| = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBlaschke", into = "RawBlaschke")]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    constant: Complex64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlaschke {
    zeros: Vec<[f64; 2]>,
    #[serde(default = "unit_pair")]
    constant: [f64; 2],
}

fn unit_pair() -> [f64; 2] {
    [1.0, 0.0]
}

impl TryFrom<RawBlaschke> for BlaschkeProduct {
    type Error = Error;
    fn try_from(raw: RawBlaschke) -> Result<Self> {
        BlaschkeProduct::new(
            raw.zeros.iter().map(|&[a, b]| Complex64::new(a, b)).collect(),
            Complex64::new(raw.constant[0], raw.constant[1]),
        )
    }
}

impl From<BlaschkeProduct> for RawBlaschke {
    fn from(b: BlaschkeProduct) -> Self {
        RawBlaschke {
            zeros: b.zeros.iter().map(|z| [z.re, z.im]).collect(),
            constant: [b.constant.re, b.constant.im],
        }
    }
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<Complex64>, constant: Complex64) -> Result<Self> {
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::InvalidInput(format!(
                "Blaschke zero {} is not inside the open unit disk",
                fmt_c(*a)
            )));
        }
        if (constant.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "Blaschke constant {} is not unimodular",
                fmt_c(constant)
            )));
        }
        Ok(BlaschkeProduct { zeros, constant })
    }

    /// The constant inner function 1.
    pub fn one() -> Self {
        BlaschkeProduct {
            zeros: Vec::new(),
            constant: ONE,
        }
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        BlaschkeProduct {
            zeros: vec![ZERO; n],
            constant: ONE,
        }
    }

    /// The single factor `b_a = (z - a) / (1 - conj(a) z)`.
    pub fn factor(a: Complex64) -> Result<Self> {
        BlaschkeProduct::new(vec![a], ONE)
    }

    /// Unimodular constant `c` (degree 0).
    pub fn unimodular(c: Complex64) -> Result<Self> {
        BlaschkeProduct::new(Vec::new(), c)
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// All zeros at the origin: the product is `c z^n`.
    pub fn is_monomial(&self) -> bool {
        self.zeros.iter().all(|a| *a == ZERO)
    }

    pub fn mul(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        BlaschkeProduct {
            zeros,
            constant: self.constant * other.constant,
        }
    }

    /// `self / other`, which must be inner: every zero of `other` (with
    /// multiplicity) must be a zero of `self` within the clustering tolerance.
    pub fn div(&self, other: &BlaschkeProduct) -> Result<BlaschkeProduct> {
        let mut remaining = self.zeros.clone();
        for &w in &other.zeros {
            let pos = remaining
                .iter()
                .enumerate()
                .filter(|(_, a)| (**a - w).norm() <= GCD_CLUSTER_TOLERANCE)
                .min_by(|x, y| (*x.1 - w).norm().total_cmp(&(*y.1 - w).norm()))
                .map(|(i, _)| i)
                .ok_or_else(|| {
                    Error::InvalidInput(format!("{} is not a zero of the dividend", fmt_c(w)))
                })?;
            remaining.remove(pos);
        }
        Ok(BlaschkeProduct {
            zeros: remaining,
            constant: self.constant / other.constant,
        })
    }

    /// Value at `z`; errors within `1e-14` of a pole `1 / conj(a_i)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = self.constant;
        for &a in &self.zeros {
            let den = ONE - a.conj() * z;
            if den.norm() < 1e-14 {
                return Err(Error::PoleProximity {
                    point: fmt_c(z),
                    distance: den.norm(),
                });
            }
            acc *= (z - a) / den;
        }
        Ok(acc)
    }

    /// Value at `z`, without the pole guard.
    #[inline]
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.constant, |acc, &a| acc * (z - a) / (ONE - a.conj() * z))
    }

    /// `theta(0)`.
    pub fn at_origin(&self) -> Complex64 {
        self.eval_unchecked(ZERO)
    }

    /// Taylor coefficients `0..=n` on a window of radius `n` (negative
    /// coefficients zero).
    pub fn series(&self, n: usize) -> FourierVector {
        let mut s = vec![ZERO; n + 1];
        s[0] = self.constant;
        for &a in &self.zeros {
            // multiply by (z - a)
            for k in (0..=n).rev() {
                let prev = if k > 0 { s[k - 1] } else { ZERO };
                s[k] = prev - a * s[k];
            }
            // divide by (1 - conj(a) z)
            let ac = a.conj();
            for k in 1..=n {
                let prev = s[k - 1];
                s[k] += ac * prev;
            }
        }
        FourierVector::from_fn(n, |k| if k >= 0 { s[k as usize] } else { ZERO })
    }

    /// Largest Taylor index whose coefficient exceeds [`EXTENT_TOLERANCE`].
    /// Equals the degree for monomials; for other zeros it measures how far
    /// the infinite Taylor tail reaches before becoming negligible.
    pub fn effective_degree(&self) -> usize {
        if self.is_monomial() {
            return self.degree();
        }
        let mut len = self.degree() + 64;
        loop {
            let s = self.series(len);
            let tail_max = (len / 2..=len)
                .map(|k| s.coeff(k as i64).norm())
                .fold(0.0, f64::max);
            if tail_max < EXTENT_TOLERANCE * 1e-3 || len > 1 << 16 {
                return (0..=len)
                    .rev()
                    .find(|&k| s.coeff(k as i64).norm() > EXTENT_TOLERANCE)
                    .unwrap_or(0);
            }
            len *= 2;
        }
    }

    /// Numerator `c prod (z - a)` and denominator `prod (1 - conj(a) z)`.
    pub fn to_rational(&self) -> RationalFunction {
        let num = poly::from_roots(&self.zeros, self.constant);
        let den = self
            .zeros
            .iter()
            .fold(vec![ONE], |acc, &a| poly::mul(&acc, &[ONE, -a.conj()]));
        RationalFunction {
            num: poly::trim(num),
            den: poly::trim(den),
        }
    }
}

/// Zero set `Sigma(theta)` of a finite Blaschke product: the zero multiset.
/// It never meets the unit circle.
pub fn sigma_set(b: &BlaschkeProduct) -> Vec<Complex64> {
    b.zeros.clone()
}

/// Greatest common inner divisor: the Blaschke product of the zero-multiset
/// intersection (unimodular constant 1).
pub fn inner_gcd(b1: &BlaschkeProduct, b2: &BlaschkeProduct) -> Result<BlaschkeProduct> {
    let tol = GCD_CLUSTER_TOLERANCE;
    // Two genuinely different zeros of one factor near a single zero of the
    // other cannot be paired unambiguously.
    let ambiguous = |xs: &[Complex64], ys: &[Complex64]| -> Option<Complex64> {
        ys.iter().copied().find(|&w| {
            let near: Vec<Complex64> = xs.iter().copied().filter(|a| (*a - w).norm() <= tol).collect();
            near.iter()
                .any(|a| near.iter().any(|b| (*a - *b).norm() > 1e-12))
        })
    };
    if let Some(w) = ambiguous(&b1.zeros, &b2.zeros).or_else(|| ambiguous(&b2.zeros, &b1.zeros)) {
        return Err(Error::AmbiguousClustering { near: fmt_c(w) });
    }
    let mut unmatched = b2.zeros.clone();
    let mut common = Vec::new();
    for &a in &b1.zeros {
        let best = unmatched
            .iter()
            .enumerate()
            .filter(|(_, w)| (a - **w).norm() <= tol)
            .min_by(|x, y| (a - *x.1).norm().total_cmp(&(a - *y.1).norm()))
            .map(|(i, _)| i);
        if let Some(i) = best {
            unmatched.remove(i);
            common.push(a);
        }
    }
    Ok(BlaschkeProduct {
        zeros: common,
        constant: ONE,
    })
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// `P / Q` with coprime polynomial numerator and denominator (ascending
/// coefficients).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRational", into = "RawRational")]
pub struct RationalFunction {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRational {
    num: Vec<[f64; 2]>,
    #[serde(default = "one_poly")]
    den: Vec<[f64; 2]>,
}

fn one_poly() -> Vec<[f64; 2]> {
    vec![[1.0, 0.0]]
}

impl TryFrom<RawRational> for RationalFunction {
    type Error = Error;
    fn try_from(raw: RawRational) -> Result<Self> {
        let conv = |v: Vec<[f64; 2]>| v.into_iter().map(|[a, b]| Complex64::new(a, b)).collect();
        RationalFunction::new(conv(raw.num), conv(raw.den))
    }
}

impl From<RationalFunction> for RawRational {
    fn from(r: RationalFunction) -> Self {
        let conv = |v: Vec<Complex64>| v.into_iter().map(|c| [c.re, c.im]).collect();
        RawRational {
            num: conv(r.num),
            den: conv(r.den),
        }
    }
}

impl RationalFunction {
    /// Validated constructor: nonzero denominator, no common roots
    /// (to [`GCD_CLUSTER_TOLERANCE`]).
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        let num = poly::trim(num);
        let den = poly::trim(den);
        if den.is_empty() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if !num.is_empty() && poly::degree(&num).unwrap() > 0 && poly::degree(&den).unwrap() > 0 {
            let pr = poly::roots(&num)?;
            let qr = poly::roots(&den)?;
            for &p in &pr {
                if let Some(&q) = qr.iter().find(|q| (p - **q).norm() < GCD_CLUSTER_TOLERANCE) {
                    return Err(Error::CoprimalityViolation { root: fmt_c(q) });
                }
            }
        }
        Ok(RationalFunction { num, den })
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        RationalFunction {
            num: poly::trim(coeffs),
            den: vec![ONE],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        RationalFunction::polynomial(vec![c])
    }

    pub fn num(&self) -> &[Complex64] {
        &self.num
    }

    pub fn den(&self) -> &[Complex64] {
        &self.den
    }

    pub fn num_degree(&self) -> usize {
        poly::degree(&self.num).unwrap_or(0)
    }

    pub fn den_degree(&self) -> usize {
        poly::degree(&self.den).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        poly::eval(&self.num, z) / poly::eval(&self.den, z)
    }

    /// Limit at infinity (infinite when the numerator degree is larger).
    pub fn eval_at_infinity(&self) -> Complex64 {
        let (p, q) = (self.num_degree(), self.den_degree());
        if self.is_zero() || p < q {
            ZERO
        } else if p == q {
            self.num[p] / self.den[q]
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        }
    }

    pub fn zeros(&self) -> Result<Vec<Complex64>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zeros of the zero function".into()));
        }
        poly::roots(&self.num)
    }

    pub fn poles(&self) -> Result<Vec<Complex64>> {
        poly::roots(&self.den)
    }

    /// `self - lambda`, i.e. `(P - lambda Q) / Q`; stays coprime.
    pub fn sub_constant(&self, lambda: Complex64) -> RationalFunction {
        RationalFunction {
            num: poly::add(&self.num, &poly::scale(&self.den, -lambda)),
            den: self.den.clone(),
        }
    }

    /// `Q / P`.
    pub fn reciprocal(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::InvalidInput("reciprocal of zero".into()));
        }
        Ok(RationalFunction {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// The rational function equal to `conj(self)` on the unit circle.
    pub fn conj_on_circle(&self) -> RationalFunction {
        let n = self.num.len().max(self.den.len()).saturating_sub(1);
        let reflect = |p: &[Complex64]| {
            let mut out = vec![ZERO; n + 1];
            for (k, c) in p.iter().enumerate() {
                out[n - k] = c.conj();
            }
            poly::trim(out)
        };
        let num = reflect(&self.num);
        let den = reflect(&self.den);
        // strip common powers of z introduced by the reflection
        let shift = num
            .iter()
            .position(|c| *c != ZERO)
            .unwrap_or(usize::MAX)
            .min(den.iter().position(|c| *c != ZERO).unwrap_or(0));
        let shift = if num.is_empty() { den.iter().position(|c| *c != ZERO).unwrap_or(0) } else { shift };
        RationalFunction {
            num: if num.is_empty() { num } else { num[shift..].to_vec() },
            den: den[shift..].to_vec(),
        }
    }

    /// Distance of the nearest pole to the circle, with its location.
    fn nearest_pole_ratio(&self) -> Result<f64> {
        let mut rho = f64::INFINITY;
        for p in self.poles()? {
            let m = p.norm();
            if (m - 1.0).abs() < BOUNDARY_TOLERANCE {
                return Err(Error::CirclePole { pole: fmt_c(p) });
            }
            rho = rho.min(if m > 1.0 { m } else { 1.0 / m });
        }
        Ok(rho)
    }

    /// Laurent coefficients on the circle, window `-radius..=radius`, via an
    /// FFT of boundary samples on a grid sized from the pole distances.
    /// Returns the vector and the out-of-window tail mass.
    pub fn laurent_with_tail(&self, radius: usize) -> Result<(FourierVector, f64)> {
        let rho = self.nearest_pole_ratio()?;
        let mut grid = (8 * radius + 8).next_power_of_two().max(1024);
        if rho.is_finite() {
            let needed = (2.0 * 40.0 / rho.ln()).ceil() as usize + 2 * radius + 2;
            while grid < needed && grid < 1 << 22 {
                grid *= 2;
            }
        }
        FourierVector::from_boundary_fn(radius, grid, |z| self.eval(z))
    }

    pub fn laurent(&self, radius: usize) -> Result<FourierVector> {
        self.laurent_with_tail(radius).map(|(f, _)| f)
    }

    /// True when no pole lies in the closed unit disk.
    pub fn is_bounded_analytic(&self) -> Result<bool> {
        Ok(self.poles()?.iter().all(|p| p.norm() > 1.0 + 1e-12))
    }
}

/// `r = inner * outer` with `inner` a Blaschke product of the zeros of `r`
/// in the open disk and `outer` zero-free on the closed disk.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InnerOuterFactorization {
    pub inner: BlaschkeProduct,
    pub outer: RationalFunction,
}

/// Inner-outer factorization of a rational `H^infty` function with no zeros
/// on the circle. Each interior zero `a` trades the factor `(z - a)` for
/// `(1 - conj(a) z)` in the outer part.
pub fn factor_inner_outer(r: &RationalFunction) -> Result<InnerOuterFactorization> {
    if r.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero function".into()));
    }
    for p in r.poles()? {
        if p.norm() <= 1.0 + 1e-12 {
            return Err(Error::InvalidInput(format!(
                "pole {} in the closed disk: not in H^infty",
                fmt_c(p)
            )));
        }
    }
    let zeros = r.zeros()?;
    let mut inner = Vec::new();
    let mut num = r.num.clone();
    for &a in &zeros {
        if (a.norm() - 1.0).abs() < BOUNDARY_TOLERANCE {
            return Err(Error::BoundaryZero {
                zero: fmt_c(a),
                distance: (a.norm() - 1.0).abs(),
            });
        }
        if a.norm() < 1.0 {
            let (q, _rem) = poly::deflate(&num, a);
            num = poly::mul(&q, &[ONE, -a.conj()]);
            inner.push(a);
        }
    }
    Ok(InnerOuterFactorization {
        inner: BlaschkeProduct {
            zeros: inner,
            constant: ONE,
        },
        outer: RationalFunction {
            num: poly::trim(num),
            den: r.den.clone(),
        },
    })
}

// ---------------------------------------------------------------------------
// Corona checks
// ---------------------------------------------------------------------------

/// Half of the plane on which a pair is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    /// The open unit disk.
    Interior,
    /// The exterior of the closed disk (including infinity).
    Exterior,
}

/// Functions that can be evaluated on the disk side used by the corona grid.
pub trait DiskFunction: Sync {
    /// Value at `w` in the closed unit disk, for functions analytic in the disk.
    fn eval_interior(&self, w: Complex64) -> Complex64;
    /// `conj(h(1 / conj(w)))` for `w` in the closed disk (`w = 0` maps to
    /// infinity), for functions analytic outside the disk.
    fn eval_reflected(&self, w: Complex64) -> Complex64;
}

impl DiskFunction for FourierVector {
    fn eval_interior(&self, w: Complex64) -> Complex64 {
        self.eval_analytic(w)
    }
    fn eval_reflected(&self, w: Complex64) -> Complex64 {
        // conj(sum_{k<=0} c_k w^{-k}) evaluated through the conjugated window
        let c = self.conj();
        c.eval_analytic(w)
    }
}

impl DiskFunction for BlaschkeProduct {
    fn eval_interior(&self, w: Complex64) -> Complex64 {
        self.eval_unchecked(w)
    }
    fn eval_reflected(&self, w: Complex64) -> Complex64 {
        if w == ZERO {
            let r = self.to_rational();
            return r.eval_at_infinity().conj();
        }
        self.eval_unchecked(ONE / w.conj()).conj()
    }
}

impl DiskFunction for RationalFunction {
    fn eval_interior(&self, w: Complex64) -> Complex64 {
        self.eval(w)
    }
    fn eval_reflected(&self, w: Complex64) -> Complex64 {
        if w == ZERO {
            return self.eval_at_infinity().conj();
        }
        self.eval(ONE / w.conj()).conj()
    }
}

/// Radial-geometric sampling of the closed disk: radii `1 - 2^{-j}` for
/// `j = 0..=levels`, optionally the circle itself, times `angles` directions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoronaGrid {
    pub levels: usize,
    pub angles: usize,
    pub include_boundary: bool,
}

impl Default for CoronaGrid {
    fn default() -> Self {
        CoronaGrid {
            levels: 12,
            angles: 256,
            include_boundary: true,
        }
    }
}

impl CoronaGrid {
    pub fn radii(&self) -> Vec<f64> {
        let mut r: Vec<f64> = (0..=self.levels).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect();
        if self.include_boundary {
            r.push(1.0);
        }
        r
    }

    pub fn point(&self, radius: f64, angle: usize) -> Complex64 {
        Complex64::from_polar(
            radius,
            2.0 * std::f64::consts::PI * angle as f64 / self.angles as f64,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoronaVerdict {
    pub is_corona_pair: bool,
    /// Minimum of `|h1| + |h2|` over the grid.
    pub infimum_estimate: f64,
    /// Grid point (in the disk, after reflection for the exterior case)
    /// where the minimum is attained; ties go to the first grid index.
    pub witness_point: Complex64,
    pub delta: f64,
}

/// Minimum of `|h1(w)| + |h2(w)|` over the grid, compared against `delta`.
pub fn corona_check_fn<F1, F2>(h1: F1, h2: F2, delta: f64, grid: &CoronaGrid) -> CoronaVerdict
where
    F1: Fn(Complex64) -> Complex64 + Sync + Send,
    F2: Fn(Complex64) -> Complex64 + Sync + Send,
{
    let radii = grid.radii();
    let rows = exec::map_slice(&radii, |&r| {
        (0..grid.angles)
            .map(|a| {
                let w = grid.point(r, a);
                let v = h1(w).norm() + h2(w).norm();
                (if v.is_nan() { f64::INFINITY } else { v }, w)
            })
            .fold((f64::INFINITY, ZERO), |best, x| if x.0 < best.0 { x } else { best })
    });
    let (inf, w) = rows
        .into_iter()
        .fold((f64::INFINITY, ZERO), |best, x| if x.0 < best.0 { x } else { best });
    CoronaVerdict {
        is_corona_pair: inf >= delta,
        infimum_estimate: inf,
        witness_point: w,
        delta,
    }
}

/// Corona-pair check in the chosen half; the exterior is mapped to the
/// disk by conjugate reflection, so `h` in `CP^-` iff `conj(h)` in `CP^+`.
pub fn corona_check(
    h1: &dyn DiskFunction,
    h2: &dyn DiskFunction,
    half: Half,
    delta: f64,
    grid: &CoronaGrid,
) -> CoronaVerdict {
    match half {
        Half::Interior => corona_check_fn(|w| h1.eval_interior(w), |w| h2.eval_interior(w), delta, grid),
        Half::Exterior => corona_check_fn(|w| h1.eval_reflected(w), |w| h2.eval_reflected(w), delta, grid),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::fourier::{BoundaryGrid, MultiplyMode};
    use proptest::prelude::*;

    fn b_half() -> BlaschkeProduct {
        BlaschkeProduct::factor(c64(0.5, 0.0)).unwrap()
    }

    fn b(a: f64) -> BlaschkeProduct {
        BlaschkeProduct::factor(c64(a, 0.0)).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert!(b_half().eval(c64(0.5, 0.0)).unwrap().norm() < 1e-15);
        let z = BlaschkeProduct::monomial(1);
        assert!((z.eval(c64(0.0, 1.0)).unwrap() - c64(0.0, 1.0)).norm() < 1e-15);
        assert!((b_half().eval(ZERO).unwrap() - c64(-0.5, 0.0)).norm() < 1e-15);
        assert!(matches!(
            b_half().eval(c64(2.0, 0.0)),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn series_examples() {
        let s = BlaschkeProduct::monomial(2).series(8);
        assert_eq!(s.coeff(2), ONE);
        assert!((s.norm() - 1.0).abs() < 1e-15);

        // Oracle: FFT of 512 boundary samples of b_{1/2}.
        let (oracle, _) = FourierVector::from_boundary_fn(8, 512, |z| b_half().eval_unchecked(z)).unwrap();
        let s = b_half().series(8);
        assert!(s.sub(&oracle).norm() < 1e-12);
        for (k, want) in [(0, -0.5), (1, 0.75), (2, 0.375), (3, 0.1875)] {
            assert!((s.coeff(k) - c64(want, 0.0)).norm() < 1e-15);
        }

        let c = BlaschkeProduct::unimodular(c64(0.0, 1.0)).unwrap();
        assert_eq!(c.series(4).coeff(0), c64(0.0, 1.0));
    }

    #[test]
    fn blaschke_series_times_outer_factor() {
        // b_{1/2} (1 - z/2) = z - 1/2; oracle: FFT of 512 samples of the product.
        let n = 64;
        let s = b_half().series(n);
        let f = FourierVector::from_terms(n, &[(0, ONE), (1, c64(-0.5, 0.0))]).unwrap();
        let p = s.multiply(&f, n, MultiplyMode::Truncate).unwrap();
        let (oracle, _) =
            FourierVector::from_boundary_fn(n, 512, |z| b_half().eval_unchecked(z) * (1.0 - z / 2.0)).unwrap();
        assert!(p.value.sub(&oracle).norm() < 1e-12);
        assert!((p.value.coeff(1) - ONE).norm() < 1e-15);
        assert!((p.value.coeff(0) + 0.5).norm() < 1e-15);
        assert!(p.exact);
    }

    #[test]
    fn effective_degree_of_monomials_is_degree() {
        assert_eq!(BlaschkeProduct::monomial(3).effective_degree(), 3);
        let d = b_half().effective_degree();
        assert!((40..60).contains(&d), "{d}");
    }

    #[test]
    fn gcd_examples() {
        let z = BlaschkeProduct::monomial(1);
        let theta = BlaschkeProduct::monomial(2).mul(&b_half());
        let beta = z.mul(&b_half()).mul(&b(1.0 / 3.0));
        let g = inner_gcd(&theta, &beta).unwrap();
        assert_eq!(g.degree(), 2);
        let mut zs = g.zeros().to_vec();
        zs.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert_eq!(zs, vec![ZERO, c64(0.5, 0.0)]);

        assert_eq!(inner_gcd(&BlaschkeProduct::monomial(3), &b_half()).unwrap().degree(), 0);

        let sq = b_half().mul(&b_half());
        assert_eq!(inner_gcd(&sq, &sq).unwrap().degree(), 2);
    }

    #[test]
    fn gcd_ambiguity_is_reported() {
        let a = BlaschkeProduct::new(vec![c64(0.3, 0.0), c64(0.3 + 5e-9, 0.0)], ONE).unwrap();
        let w = b(0.3 + 2e-9);
        assert!(matches!(inner_gcd(&a, &w), Err(Error::AmbiguousClustering { .. })));
    }

    #[test]
    fn factorization_examples() {
        let r = RationalFunction::polynomial(vec![c64(-0.5, 0.0), ONE]);
        let f = factor_inner_outer(&r).unwrap();
        assert_eq!(f.inner.zeros().len(), 1);
        assert!((f.inner.zeros()[0] - c64(0.5, 0.0)).norm() < 1e-14);
        // oracle: (z - 1/2) / b_{1/2} = 1 - z/2
        let outer = f.outer.num();
        assert!((outer[0] - ONE).norm() < 1e-14 && (outer[1] + 0.5).norm() < 1e-14);

        let r = RationalFunction::polynomial(vec![ONE, c64(-0.5, 0.0)]);
        let f = factor_inner_outer(&r).unwrap();
        assert_eq!(f.inner.degree(), 0);
        assert_eq!(f.outer, r);

        let r = RationalFunction::polynomial(vec![ZERO, ZERO, ONE]);
        let f = factor_inner_outer(&r).unwrap();
        assert_eq!(f.inner, BlaschkeProduct::monomial(2));
        assert_eq!(f.outer.num(), &[ONE]);

        let r = RationalFunction::polynomial(vec![c64(-1.0, 0.0), ONE]);
        assert!(matches!(factor_inner_outer(&r), Err(Error::BoundaryZero { .. })));
    }

    #[test]
    fn factorization_reconstructs_and_outer_is_zero_free() {
        // (z - 0.3i)(z + 0.6)(z - 2) / (z - 3)
        let num = poly::from_roots(&[c64(0.0, 0.3), c64(-0.6, 0.0), c64(2.0, 0.0)], c64(1.5, 0.5));
        let r = RationalFunction::new(num, vec![c64(-3.0, 0.0), ONE]).unwrap();
        let f = factor_inner_outer(&r).unwrap();
        assert_eq!(f.inner.degree(), 2);
        let g = BoundaryGrid::from_fn(512, |z| f.inner.eval_unchecked(z) * f.outer.eval(z) - r.eval(z)).unwrap();
        assert!(g.sup_norm() < 1e-10);
        assert!(f.outer.zeros().unwrap().iter().all(|a| a.norm() > 1.0 + 1e-8));
    }

    #[test]
    fn rational_coprimality_and_circle_poles() {
        let err = RationalFunction::new(vec![c64(-0.5, 0.0), ONE], vec![c64(-0.5, 0.0), ONE]).unwrap_err();
        assert!(matches!(err, Error::CoprimalityViolation { .. }));
        let r = RationalFunction::new(vec![ONE], vec![c64(-1.0, 0.0), ONE]).unwrap();
        assert!(matches!(r.laurent(8), Err(Error::CirclePole { .. })));
    }

    #[test]
    fn laurent_of_simple_pole_inside() {
        // 1/(z - l) = sum_{k>=1} l^{k-1} z^{-k} for |l| < 1
        let l = c64(0.3, 0.2);
        let r = RationalFunction::new(vec![ONE], vec![-l, ONE]).unwrap();
        let f = r.laurent(32).unwrap();
        for k in 1..10 {
            assert!((f.coeff(-k) - l.powi(k as i32 - 1)).norm() < 1e-14);
        }
        assert!(f.project_plus().norm() < 1e-14);
    }

    #[test]
    fn conj_on_circle_matches_boundary_conjugate() {
        let r = RationalFunction::new(vec![c64(1.0, 2.0), c64(0.0, -1.0)], vec![c64(3.0, 0.0), ONE]).unwrap();
        let c = r.conj_on_circle();
        let g = BoundaryGrid::from_fn(256, |z| c.eval(z) - r.eval(z).conj()).unwrap();
        assert!(g.sup_norm() < 1e-13);
    }

    #[test]
    fn sigma_set_examples() {
        assert_eq!(sigma_set(&BlaschkeProduct::monomial(3)), vec![ZERO; 3]);
        let s = sigma_set(&b_half().mul(&BlaschkeProduct::monomial(1)));
        assert_eq!(s, vec![c64(0.5, 0.0), ZERO]);
        assert!(s.iter().all(|w| w.norm() < 1.0));
    }

    #[test]
    fn corona_examples() {
        let grid = CoronaGrid::default();
        let v = corona_check_fn(|z| z * z, |_| c64(0.5, 0.0), 1e-4, &grid);
        assert!(v.is_corona_pair);
        assert!((v.infimum_estimate - 0.5).abs() < 1e-15);
        assert_eq!(v.witness_point, ZERO);

        let v = corona_check_fn(|z| z * z, |z| z, 1e-4, &grid);
        assert!(!v.is_corona_pair);

        // Oracle: dense 200 x 200 radial-angular grid minimum.
        let bh = b_half();
        let z3 = BlaschkeProduct::monomial(3);
        let v = corona_check(&z3, &bh, Half::Interior, 1e-4, &grid);
        let mut oracle = f64::INFINITY;
        for i in 0..200 {
            let r = i as f64 / 199.0;
            for j in 0..200 {
                let w = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / 200.0);
                oracle = oracle.min(w.norm().powi(3) + bh.eval_unchecked(w).norm());
            }
        }
        assert!(v.is_corona_pair);
        assert!(v.infimum_estimate > 0.05);
        assert!((v.infimum_estimate - oracle).abs() < 0.02, "{} vs {oracle}", v.infimum_estimate);
    }

    #[test]
    fn exterior_check_uses_reflection() {
        // conj(z) and 0 on the exterior: |1/z| -> 0 at infinity, not a corona pair.
        let r = 8;
        let zbar = FourierVector::monomial(r, -1, ONE).unwrap();
        let zero = FourierVector::zeros(r);
        let v = corona_check(&zbar, &zero, Half::Exterior, 1e-4, &CoronaGrid::default());
        assert!(!v.is_corona_pair);
        let one = FourierVector::constant(r, ONE);
        let v = corona_check(&zbar, &one, Half::Exterior, 1e-4, &CoronaGrid::default());
        assert!(v.is_corona_pair);
        assert!((v.infimum_estimate - 1.0).abs() < 1e-12);
    }

    fn arb_blaschke(max_deg: usize) -> impl Strategy<Value = BlaschkeProduct> {
        prop::collection::vec((0.0..0.9f64, 0.0..std::f64::consts::TAU), 0..=max_deg).prop_map(|zs| {
            BlaschkeProduct::new(zs.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect(), ONE).unwrap()
        })
    }

    proptest! {
        #[test]
        fn unimodular_on_circle(b in arb_blaschke(6)) {
            let g = BoundaryGrid::from_fn(256, |z| b.eval_unchecked(z)).unwrap();
            prop_assert!(g.samples().iter().all(|s| (s.norm() - 1.0).abs() < 1e-12));
        }

        #[test]
        fn series_resamples_to_values(b in arb_blaschke(4)) {
            let n = 1024;
            let s = b.series(n);
            for j in 0..16 {
                let z = BoundaryGrid::node(16, j);
                prop_assert!((s.eval_boundary(z) - b.eval_unchecked(z)).norm() < 1e-10);
            }
        }

        #[test]
        fn gcd_is_symmetric_multiset_intersection(a in arb_blaschke(4), c in arb_blaschke(3)) {
            let x = a.mul(&c);
            let y = c.mul(&BlaschkeProduct::monomial(1));
            let g1 = inner_gcd(&x, &y).unwrap();
            let g2 = inner_gcd(&y, &x).unwrap();
            prop_assert_eq!(g1.degree(), g2.degree());
            prop_assert!(g1.degree() >= c.degree());
            prop_assert_eq!(inner_gcd(&a, &a).unwrap().degree(), a.degree());
        }

        #[test]
        fn corona_scaling(s in 0.1..5.0f64, a in 0.0..0.9f64) {
            let grid = CoronaGrid { levels: 6, angles: 64, include_boundary: true };
            let h1 = move |z: Complex64| z - a;
            let h2 = |z: Complex64| z * z;
            let v = corona_check_fn(h1, h2, 1e-4, &grid);
            let w = corona_check_fn(h2, h1, 1e-4, &grid);
            prop_assert!((v.infimum_estimate - w.infimum_estimate).abs() < 1e-15);
            let vs = corona_check_fn(move |z| h1(z) * s, move |z| h2(z) * s, 1e-4 * s, &grid);
            prop_assert!((vs.infimum_estimate - s * v.infimum_estimate).abs() < 1e-12);
            prop_assert_eq!(vs.is_corona_pair, v.is_corona_pair);
        }
    }
}
