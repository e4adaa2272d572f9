//! Ordered, labelled orthonormal bases for the subspaces of `L^2` the
//! operators act between, plus the conjugation `C_theta f = theta conj(z f)`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{FourierVector, MultiplyMode};
use crate::inner_rational::BlaschkeProduct;
use crate::operators::OperatorMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One component per direct summand, all on a common working window.
pub type Element = Vec<FourierVector>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SpaceKind {
    FullL2,
    HardyPlus,
    HardyMinus,
    ModelSpace {
        theta: BlaschkeProduct,
    },
    /// `z^{-n}..z^{-1}` followed by `theta z^0..theta z^m`.
    DualModel {
        theta: BlaschkeProduct,
        negative_modes: usize,
        shifts: usize,
    },
    DirectSum {
        summands: Vec<BasisSpec>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementLabel {
    /// `z^k`.
    Monomial(i64),
    /// `k`-th Takenaka-Malmquist function.
    Takenaka(usize),
    /// `theta z^k`.
    InnerShift(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisLabel {
    pub summand: usize,
    pub element: ElementLabel,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.element {
            ElementLabel::Monomial(k) => write!(f, "[{}]z^{}", self.summand, k),
            ElementLabel::Takenaka(k) => write!(f, "[{}]e_{}", self.summand, k),
            ElementLabel::InnerShift(k) => write!(f, "[{}]theta*z^{}", self.summand, k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub kind: SpaceKind,
    pub window_radius: usize,
    pub labels: Vec<BasisLabel>,
}

fn monomial_labels(range: impl Iterator<Item = i64>) -> Vec<BasisLabel> {
    range
        .map(|k| BasisLabel {
            summand: 0,
            element: ElementLabel::Monomial(k),
        })
        .collect()
}

impl BasisSpec {
    /// `z^{-n}..z^n`.
    pub fn full_l2(n: usize) -> Self {
        let n_i = n as i64;
        BasisSpec {
            kind: SpaceKind::FullL2,
            window_radius: n,
            labels: monomial_labels(-n_i..=n_i),
        }
    }

    /// `z^0..z^n`.
    pub fn hardy_plus(n: usize) -> Self {
        BasisSpec {
            kind: SpaceKind::HardyPlus,
            window_radius: n,
            labels: monomial_labels(0..=n as i64),
        }
    }

    /// `z^{-n}..z^{-1}`.
    pub fn hardy_minus(n: usize) -> Self {
        BasisSpec {
            kind: SpaceKind::HardyMinus,
            window_radius: n,
            labels: monomial_labels(-(n as i64)..0),
        }
    }

    /// Takenaka-Malmquist basis of `K_theta`, expanded on window `n`.
    pub fn model_space(theta: &BlaschkeProduct, n: usize) -> Result<Self> {
        if n < theta.degree() + 16 {
            return Err(Error::WindowTooSmall {
                what: "model space window".into(),
                required: theta.degree() + 16,
                got: n,
            });
        }
        Ok(BasisSpec {
            kind: SpaceKind::ModelSpace {
                theta: theta.clone(),
            },
            window_radius: n,
            labels: (0..theta.degree())
                .map(|k| BasisLabel {
                    summand: 0,
                    element: ElementLabel::Takenaka(k),
                })
                .collect(),
        })
    }

    /// Basis of `(K_theta)^perp = H^2_- + theta H^2`: `z^{-n}..z^{-1}` then
    /// `theta z^0..theta z^m`. The window is `n` and must hold every
    /// `theta z^m` up to its effective degree.
    pub fn dual_model(theta: &BlaschkeProduct, n: usize, m: usize) -> Result<Self> {
        let needed = m + theta.effective_degree();
        if needed > n {
            return Err(Error::WindowOverflow {
                what: "dual model basis".into(),
                needed,
                available: n,
            });
        }
        let mut labels = monomial_labels(-(n as i64)..0);
        labels.extend((0..=m).map(|k| BasisLabel {
            summand: 0,
            element: ElementLabel::InnerShift(k),
        }));
        Ok(BasisSpec {
            kind: SpaceKind::DualModel {
                theta: theta.clone(),
                negative_modes: n,
                shifts: m,
            },
            window_radius: n,
            labels,
        })
    }

    /// Dual model basis with the largest shift range the window allows.
    pub fn dual_model_full(theta: &BlaschkeProduct, n: usize) -> Result<Self> {
        let eff = theta.effective_degree();
        if eff > n {
            return Err(Error::WindowOverflow {
                what: "dual model basis".into(),
                needed: eff,
                available: n,
            });
        }
        BasisSpec::dual_model(theta, n, n - eff)
    }

    /// Flat direct sum; nested sums are flattened.
    pub fn direct_sum(parts: Vec<BasisSpec>) -> Self {
        let mut summands = Vec::new();
        for p in parts {
            match p.kind {
                SpaceKind::DirectSum { summands: inner } => summands.extend(inner),
                _ => summands.push(p),
            }
        }
        let mut labels = Vec::new();
        for (s, p) in summands.iter().enumerate() {
            labels.extend(p.labels.iter().map(|l| BasisLabel {
                summand: s,
                element: l.element,
            }));
        }
        BasisSpec {
            window_radius: summands.iter().map(|s| s.window_radius).max().unwrap_or(0),
            kind: SpaceKind::DirectSum { summands },
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn summand_count(&self) -> usize {
        match &self.kind {
            SpaceKind::DirectSum { summands } => summands.len(),
            _ => 1,
        }
    }

    pub fn summands(&self) -> Vec<&BasisSpec> {
        match &self.kind {
            SpaceKind::DirectSum { summands } => summands.iter().collect(),
            _ => vec![self],
        }
    }

    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.to_string()).collect()
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }

    pub fn frame(&self) -> Frame {
        Frame::new(self)
    }
}

// ---------------------------------------------------------------------------
// Prepared frames
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum Part {
    Monomials { lo: i64, hi: i64 },
    Vectors(Vec<FourierVector>),
    Dual { theta: Vec<Complex64>, neg: usize, shifts: usize },
}

impl Part {
    fn dim(&self) -> usize {
        match self {
            Part::Monomials { lo, hi } => (hi - lo + 1).max(0) as usize,
            Part::Vectors(v) => v.len(),
            Part::Dual { neg, shifts, .. } => neg + shifts + 1,
        }
    }
}

/// A [`BasisSpec`] with its basis vectors precomputed, for analysis
/// (coordinates by inner products) and synthesis.
#[derive(Clone, Debug)]
pub struct Frame {
    parts: Vec<Part>,
    offsets: Vec<usize>,
    dim: usize,
}

impl Frame {
    pub fn new(spec: &BasisSpec) -> Self {
        let parts: Vec<Part> = spec.summands().iter().map(|s| Frame::part(s)).collect();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for p in &parts {
            offsets.push(acc);
            acc += p.dim();
        }
        Frame {
            parts,
            offsets,
            dim: acc,
        }
    }

    fn part(spec: &BasisSpec) -> Part {
        let n = spec.window_radius as i64;
        match &spec.kind {
            SpaceKind::FullL2 => Part::Monomials { lo: -n, hi: n },
            SpaceKind::HardyPlus => Part::Monomials { lo: 0, hi: n },
            SpaceKind::HardyMinus => Part::Monomials { lo: -n, hi: -1 },
            SpaceKind::ModelSpace { theta } => Part::Vectors(tm_vectors(theta, spec.window_radius)),
            SpaceKind::DualModel {
                theta,
                negative_modes,
                shifts,
            } => {
                let eff = theta.effective_degree();
                let s = theta.series(eff);
                Part::Dual {
                    theta: (0..=eff as i64).map(|k| s.coeff(k)).collect(),
                    neg: *negative_modes,
                    shifts: *shifts,
                }
            }
            SpaceKind::DirectSum { .. } => unreachable!("direct sums are flattened"),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn summands(&self) -> usize {
        self.parts.len()
    }

    /// Summand index and local index of global coordinate `i`.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let s = self.offsets.partition_point(|&o| o <= i) - 1;
        (s, i - self.offsets[s])
    }

    /// Coordinates of `x` (orthogonal projection onto the span).
    pub fn analyze(&self, x: &[FourierVector]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.parts.len(), "element has the wrong number of summands");
        let mut out = Vec::with_capacity(self.dim);
        for (p, g) in self.parts.iter().zip(x) {
            match p {
                Part::Monomials { lo, hi } => out.extend((*lo..=*hi).map(|k| g.coeff(k))),
                Part::Vectors(vs) => out.extend(vs.iter().map(|v| v.inner(g))),
                Part::Dual { theta, neg, shifts } => {
                    out.extend((-(*neg as i64)..0).map(|k| g.coeff(k)));
                    out.extend((0..=*shifts as i64).map(|j| {
                        theta
                            .iter()
                            .enumerate()
                            .map(|(i, t)| t.conj() * g.coeff(i as i64 + j))
                            .sum::<Complex64>()
                    }));
                }
            }
        }
        out
    }

    /// `sum c_i e_i` on a window of the given radius.
    pub fn synthesize(&self, coords: &[Complex64], radius: usize) -> Element {
        assert_eq!(coords.len(), self.dim, "coordinate vector has the wrong length");
        self.parts
            .iter()
            .zip(&self.offsets)
            .map(|(p, &off)| {
                let c = &coords[off..off + p.dim()];
                let mut v = FourierVector::zeros(radius);
                match p {
                    Part::Monomials { lo, .. } => {
                        for (i, &a) in c.iter().enumerate() {
                            *v.coeff_mut(lo + i as i64) += a;
                        }
                    }
                    Part::Vectors(vs) => {
                        for (e, &a) in vs.iter().zip(c) {
                            for (k, x) in e.iter() {
                                if x != ZERO {
                                    *v.coeff_mut(k) += a * x;
                                }
                            }
                        }
                    }
                    Part::Dual { theta, neg, shifts } => {
                        for (i, &a) in c[..*neg].iter().enumerate() {
                            *v.coeff_mut(i as i64 - *neg as i64) += a;
                        }
                        for (j, &a) in c[*neg..].iter().enumerate().take(shifts + 1) {
                            if a == ZERO {
                                continue;
                            }
                            for (i, t) in theta.iter().enumerate() {
                                *v.coeff_mut((i + j) as i64) += a * t;
                            }
                        }
                    }
                }
                v
            })
            .collect()
    }

    /// Basis element `i` on a window of the given radius.
    pub fn basis_element(&self, i: usize, radius: usize) -> Element {
        let mut c = vec![ZERO; self.dim];
        c[i] = Complex64::new(1.0, 0.0);
        self.synthesize(&c, radius)
    }

    /// Coordinates as a column matrix of the basis vectors on `radius`
    /// (rows: summand-major Fourier coefficients `-radius..=radius`).
    pub fn basis_matrix(&self, radius: usize) -> DMatrix<Complex64> {
        let w = 2 * radius + 1;
        let s = self.parts.len();
        let mut m = DMatrix::zeros(w * s, self.dim);
        for j in 0..self.dim {
            for (si, v) in self.basis_element(j, radius).iter().enumerate() {
                for (r, c) in v.coeffs().iter().enumerate() {
                    m[(si * w + r, j)] = *c;
                }
            }
        }
        m
    }
}

/// Takenaka-Malmquist functions `e_k = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z)
/// prod_{j<k} b_{a_j}` on window `n`.
fn tm_vectors(theta: &BlaschkeProduct, n: usize) -> Vec<FourierVector> {
    let zeros = theta.zeros();
    (0..zeros.len())
        .map(|k| {
            let prefix = BlaschkeProduct::new(zeros[..k].to_vec(), Complex64::new(1.0, 0.0))
                .expect("zeros already validated");
            let s = prefix.series(n);
            let mut y: Vec<Complex64> = (0..=n as i64).map(|i| s.coeff(i)).collect();
            let ac = zeros[k].conj();
            for i in 1..=n {
                let prev = y[i - 1];
                y[i] += ac * prev;
            }
            let norm = (1.0 - zeros[k].norm_sqr()).sqrt();
            FourierVector::from_fn(n, |i| if i >= 0 { y[i as usize] * norm } else { ZERO })
        })
        .collect()
}

/// Takenaka-Malmquist orthonormal basis of `K_theta` on window `n`.
pub fn takenaka_malmquist_basis(theta: &BlaschkeProduct, n: usize) -> Result<(BasisSpec, Vec<FourierVector>)> {
    let spec = BasisSpec::model_space(theta, n)?;
    Ok((spec, tm_vectors(theta, n)))
}

/// Dual model basis `z^{-n}..z^{-1}, theta z^0..theta z^m`.
pub fn dual_model_basis(theta: &BlaschkeProduct, n: usize, m: usize) -> Result<BasisSpec> {
    BasisSpec::dual_model(theta, n, m)
}

/// `P_theta = P^+ - M_theta P^+ M_conj(theta)` on the full window `n`,
/// built from truncated multiplication matrices.
pub fn model_projection_matrix(theta: &BlaschkeProduct, n: usize) -> Result<OperatorMatrix> {
    if n < theta.degree() + 16 {
        return Err(Error::WindowTooSmall {
            what: "model projection window".into(),
            required: theta.degree() + 16,
            got: n,
        });
    }
    let t = theta.series(n);
    let tc = t.conj();
    let space = BasisSpec::full_l2(n);
    OperatorMatrix::assemble_truncated(&space, &space, |x| {
        let f = &x[0];
        let inner = tc.mul_trunc(f).project_plus();
        vec![f.project_plus().sub(&t.mul_trunc(&inner))]
    })
}

/// The antilinear involution `C_theta f = theta * conj(z) * conj(f)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjugationOp {
    pub theta: BlaschkeProduct,
}

impl ConjugationOp {
    pub fn new(theta: BlaschkeProduct) -> Self {
        ConjugationOp { theta }
    }

    /// Applies `C_theta` on the window of `f` (truncating).
    pub fn apply(&self, f: &FourierVector) -> FourierVector {
        let r = f.radius();
        let (g, _) = f.conj().shifted(-1);
        self.theta.series(r).mul_trunc(&g)
    }

    /// Applies `C_theta` on a wider window, exact whenever
    /// `radius >= window(f) + effective degree + 1`.
    pub fn apply_exact(&self, f: &FourierVector, radius: usize) -> Result<FourierVector> {
        let g = f.with_radius(radius);
        let (g, dropped) = g.conj().shifted(-1);
        if dropped > 0.0 {
            return Err(Error::WindowOverflow {
                what: "conjugation".into(),
                needed: f.radius() + 1,
                available: radius,
            });
        }
        Ok(self
            .theta
            .series(radius)
            .multiply(&g, radius, MultiplyMode::Truncate)?
            .value)
    }
}

/// Matrix form of `C_theta` on the full window: `C f = matrix * conj(f)`.
#[derive(Clone, Debug)]
pub struct ConjugationMatrix {
    pub matrix: OperatorMatrix,
    /// Always true: the descriptor conjugates its input first.
    pub conjugate_input: bool,
}

impl ConjugationMatrix {
    pub fn apply(&self, coords: &[Complex64]) -> Vec<Complex64> {
        let v = nalgebra::DVector::from_iterator(coords.len(), coords.iter().map(|c| c.conj()));
        (&self.matrix.entries * v).iter().copied().collect()
    }
}

pub fn conjugation_matrix(theta: &BlaschkeProduct, n: usize) -> Result<ConjugationMatrix> {
    if n < theta.degree() + 16 {
        return Err(Error::WindowTooSmall {
            what: "conjugation window".into(),
            required: theta.degree() + 16,
            got: n,
        });
    }
    let op = ConjugationOp::new(theta.clone());
    let space = BasisSpec::full_l2(n);
    // column k is C(z^k); C(sum c_k z^k) = sum conj(c_k) C(z^k)
    let matrix = OperatorMatrix::assemble_truncated(&space, &space, |x| vec![op.apply(&x[0])])?;
    Ok(ConjugationMatrix {
        matrix,
        conjugate_input: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::linalg::{self, CMatrix};
    use proptest::prelude::*;

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    fn b(a: f64) -> BlaschkeProduct {
        BlaschkeProduct::factor(c64(a, 0.0)).unwrap()
    }

    fn mono(n: usize, k: i64) -> FourierVector {
        FourierVector::monomial(n, k, ONE).unwrap()
    }

    fn apply(m: &OperatorMatrix, f: &FourierVector) -> FourierVector {
        let frame = m.domain.frame();
        let c = frame.analyze(std::slice::from_ref(f));
        let out = &m.entries * nalgebra::DVector::from_vec(c);
        m.codomain.frame().synthesize(out.as_slice(), f.radius()).remove(0)
    }

    #[test]
    fn projection_examples_for_z_squared() {
        let n = 18;
        let p = model_projection_matrix(&BlaschkeProduct::monomial(2), n).unwrap();
        assert!(apply(&p, &mono(n, 3)).norm() < 1e-15);
        assert!(apply(&p, &mono(n, 0)).sub(&mono(n, 0)).norm() < 1e-15);
        assert!(apply(&p, &mono(n, -1)).norm() < 1e-15);
        let sv = linalg::singular_values(&p.entries);
        assert_eq!(sv.iter().filter(|s| **s > 0.5).count(), 2);
    }

    #[test]
    fn projection_fixes_reproducing_kernels() {
        // theta = z b_{1/2}: K_theta = span{1, 1/(1 - z/2)}. Oracle: Gram-Schmidt
        // of the two kernel expansions, each fixed by the projection.
        let theta = BlaschkeProduct::monomial(1).mul(&b(0.5));
        let n = 40;
        let p = model_projection_matrix(&theta, n).unwrap();
        let k0 = mono(n, 0);
        let k1 = FourierVector::from_fn(n, |k| if k >= 0 { c64(0.5f64.powi(k as i32), 0.0) } else { ZERO });
        let u = k1.sub(&k0.scale(k0.inner(&k1)));
        let u = u.scale(c64(1.0 / u.norm(), 0.0));
        for v in [&k0, &u] {
            assert!(apply(&p, v).sub(v).norm() < 1e-10);
        }
        let sv = linalg::singular_values(&p.entries);
        assert_eq!(sv.iter().filter(|s| **s > 0.5).count(), 2);
    }

    #[test]
    fn dual_model_labels() {
        let spec = dual_model_basis(&BlaschkeProduct::monomial(1), 2, 1).unwrap();
        assert_eq!(spec.label_strings(), vec!["[0]z^-2", "[0]z^-1", "[0]theta*z^0", "[0]theta*z^1"]);
        assert!(matches!(
            dual_model_basis(&BlaschkeProduct::monomial(1), 2, 2),
            Err(Error::WindowOverflow { .. })
        ));
    }

    #[test]
    fn dual_model_is_orthonormal_for_b_half() {
        // Oracle: explicit inner products of the expanded series.
        let spec = BasisSpec::dual_model(&b(0.5), 80, 20).unwrap();
        let g = spec.frame().basis_matrix(80);
        let gram = g.adjoint() * &g;
        assert!((gram - CMatrix::identity(spec.dim(), spec.dim())).norm() < 1e-12);
    }

    #[test]
    fn takenaka_examples() {
        let (_, v) = takenaka_malmquist_basis(&BlaschkeProduct::monomial(2), 18).unwrap();
        assert!(v[0].sub(&mono(18, 0)).norm() < 1e-15);
        assert!(v[1].sub(&mono(18, 1)).norm() < 1e-15);

        // Oracle: the normalized Cauchy kernel at 1/2.
        let n = 60;
        let (_, v) = takenaka_malmquist_basis(&b(0.5), n).unwrap();
        let c = (0.75f64).sqrt();
        let k = FourierVector::from_fn(n, |i| if i >= 0 { c64(c * 0.5f64.powi(i as i32), 0.0) } else { ZERO });
        assert!(v[0].sub(&k).norm() < 1e-15);
    }

    #[test]
    fn takenaka_basis_spans_model_space() {
        let theta = b(0.5).mul(&b(-1.0 / 3.0)).mul(&BlaschkeProduct::monomial(1));
        let n = 60;
        let (spec, v) = takenaka_malmquist_basis(&theta, n).unwrap();
        let g = spec.frame().basis_matrix(n);
        assert!((g.adjoint() * &g - CMatrix::identity(3, 3)).norm() < 1e-10);
        let p = model_projection_matrix(&theta, n).unwrap();
        for e in &v {
            assert!(apply(&p, e).sub(e).norm() < 1e-10);
        }
    }

    #[test]
    fn conjugation_examples() {
        let n = 20;
        let c = ConjugationOp::new(BlaschkeProduct::monomial(1));
        assert!(c.apply(&mono(n, -1)).sub(&mono(n, 1)).norm() < 1e-15);
        let c2 = ConjugationOp::new(BlaschkeProduct::monomial(2));
        assert!(c2.apply(&mono(n, 0)).sub(&mono(n, 1)).norm() < 1e-15);
    }

    #[test]
    fn conjugation_matrix_agrees_with_operator() {
        let theta = b(0.5).mul(&BlaschkeProduct::monomial(1));
        let n = 64;
        let cm = conjugation_matrix(&theta, n).unwrap();
        assert!(cm.conjugate_input);
        let f = FourierVector::from_fn(n, |k| if k.abs() <= 8 { c64(k as f64, 1.0 - k as f64) } else { ZERO });
        let direct = ConjugationOp::new(theta).apply(&f);
        let via = cm.apply(f.coeffs());
        let via = FourierVector::from_coeffs(n, via).unwrap();
        assert!(direct.sub(&via).norm() < 1e-13 * f.norm(), "{}", direct.sub(&via).norm());
    }

    #[test]
    fn conjugation_commutes_with_model_projection() {
        let theta = BlaschkeProduct::monomial(1).mul(&b(0.5));
        let n = 80;
        let margin = theta.effective_degree() as i64 + 1;
        let p = model_projection_matrix(&theta, n).unwrap();
        let c = ConjugationOp::new(theta);
        for k in -(n as i64 - margin) / 2..=(n as i64 - margin) / 2 {
            let f = mono(n, k).add(&mono(n, k / 2).scale(c64(0.0, 1.0)));
            let lhs = c.apply(&apply(&p, &f));
            let rhs = apply(&p, &c.apply(&f));
            assert!(lhs.sub(&rhs).norm() < 1e-10, "k = {k}");
        }
    }

    proptest! {
        #[test]
        fn projection_laws(deg in 0usize..5, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let zeros: Vec<Complex64> = (0..deg)
                .map(|_| Complex64::from_polar(rng.random::<f64>() * 0.6, rng.random::<f64>() * std::f64::consts::TAU))
                .collect();
            let theta = BlaschkeProduct::new(zeros, ONE).unwrap();
            let n = deg + 40;
            let p = model_projection_matrix(&theta, n).unwrap().entries;
            prop_assert!((&p * &p - &p).norm() < 1e-10);
            prop_assert!((&p - p.adjoint()).norm() < 1e-12);
            let sv = linalg::singular_values(&p);
            prop_assert_eq!(sv.iter().filter(|s| **s > 0.5).count(), deg);
        }

        #[test]
        fn conjugation_is_isometric_involution(coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 9), a in 0.0..0.6f64) {
            let theta = BlaschkeProduct::monomial(1).mul(&b(a));
            let n = 96;
            let f = FourierVector::from_fn(n, |k| if k.abs() <= 4 { let (x, y) = coeffs[(k + 4) as usize]; c64(x, y) } else { ZERO });
            let c = ConjugationOp::new(theta);
            let cf = c.apply(&f);
            prop_assert!((cf.norm() - f.norm()).abs() < 1e-10);
            prop_assert!(c.apply(&cf).sub(&f).norm() < 1e-10);
            // antilinear
            let l = c64(0.3, -1.2);
            prop_assert!(c.apply(&f.scale(l)).sub(&cf.scale(l.conj())).norm() < 1e-12);
        }
    }
}
