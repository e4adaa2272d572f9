//! Basis-labelled operator matrices and the builders for every operator in
//! the toolkit. Each matrix is assembled column by column: the defining
//! formula is applied exactly (no truncation) to a domain basis vector and
//! the result is analyzed in the codomain basis. A column is *interior* when
//! its exact image lies in the codomain span, so the column is the operator
//! itself rather than a finite-section artifact.

use std::fmt::Write as _;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::fourier::{BoundaryGrid, FourierVector, Multiplier};
use crate::inner_rational::BlaschkeProduct;
use crate::linalg::CMatrix;
use crate::spaces::{BasisSpec, Element, Frame};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative residual below which an image counts as lying in the codomain span.
pub const INTERIOR_TOLERANCE: f64 = 1e-12;

/// A 2x2 matrix of symbols.
pub type SymbolMatrix = [[FourierVector; 2]; 2];

#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub domain: BasisSpec,
    pub codomain: BasisSpec,
    pub entries: CMatrix,
    /// Per domain column: whether the column represents the operator exactly.
    pub interior: Vec<bool>,
}

impl Serialize for OperatorMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.entries.nrows())
            .map(|i| {
                (0..self.entries.ncols())
                    .map(|j| {
                        let c = self.entries[(i, j)];
                        [c.re, c.im]
                    })
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("OperatorMatrix", 5)?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("codomain", &self.codomain)?;
        st.serialize_field("shape", &[self.entries.nrows(), self.entries.ncols()])?;
        st.serialize_field("entries", &rows)?;
        st.serialize_field("interior_columns", &self.interior)?;
        st.end()
    }
}

impl OperatorMatrix {
    /// Column-by-column assembly. `op` maps a domain basis element (given on
    /// `work_radius`) to its exact image; images may live on any window.
    pub fn assemble<F>(domain: &BasisSpec, codomain: &BasisSpec, work_radius: usize, op: F) -> Result<Self>
    where
        F: Fn(&[FourierVector]) -> Result<Element> + Sync,
    {
        let dframe = domain.frame();
        let cframe = codomain.frame();
        let work = work_radius.max(domain.window_radius);
        let cols = exec::map_indexed(dframe.dim(), |j| {
            let e = dframe.basis_element(j, work);
            let img = op(&e)?;
            Ok(column(&cframe, codomain.window_radius, &img))
        });
        let mut entries = CMatrix::zeros(cframe.dim(), dframe.dim());
        let mut interior = Vec::with_capacity(dframe.dim());
        for (j, c) in cols.into_iter().enumerate() {
            let (coords, inside) = c?;
            entries.column_mut(j).copy_from_slice(&coords);
            interior.push(inside);
        }
        Ok(OperatorMatrix {
            domain: domain.clone(),
            codomain: codomain.clone(),
            entries,
            interior,
        })
    }

    /// Assembly of an operator that is defined as a finite section (its
    /// formula truncates to the codomain window); every column is marked
    /// interior.
    pub fn assemble_truncated<F>(domain: &BasisSpec, codomain: &BasisSpec, op: F) -> Result<Self>
    where
        F: Fn(&[FourierVector]) -> Element + Sync,
    {
        let mut m = OperatorMatrix::assemble(domain, codomain, domain.window_radius, |x| Ok(op(x)))?;
        m.interior.iter_mut().for_each(|b| *b = true);
        Ok(m)
    }

    pub fn identity(space: &BasisSpec) -> Self {
        let n = space.dim();
        OperatorMatrix {
            domain: space.clone(),
            codomain: space.clone(),
            entries: CMatrix::identity(n, n),
            interior: vec![true; n],
        }
    }

    pub fn nrows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn interior_columns(&self) -> Vec<usize> {
        (0..self.ncols()).filter(|&j| self.interior[j]).collect()
    }

    /// Columns restricted to the interior domain vectors.
    pub fn interior_matrix(&self) -> CMatrix {
        self.columns(&self.interior_columns())
    }

    pub fn columns(&self, idx: &[usize]) -> CMatrix {
        CMatrix::from_fn(self.nrows(), idx.len(), |i, j| self.entries[(i, idx[j])])
    }

    /// `self * rhs`. Inner bases must be identical. A composite column is
    /// interior when the `rhs` column is interior and only touches interior
    /// columns of `self`.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.domain != rhs.codomain {
            return Err(Error::CompositionMismatch(format!(
                "left domain has {} elements, right codomain {}; bases differ",
                self.domain.dim(),
                rhs.codomain.dim()
            )));
        }
        let entries = crate::linalg::matmul(&self.entries, &rhs.entries);
        let interior = (0..rhs.ncols())
            .map(|j| {
                let col = rhs.entries.column(j);
                let scale = col.norm().max(f64::MIN_POSITIVE);
                rhs.interior[j]
                    && (0..col.len()).all(|i| self.interior[i] || col[i].norm() <= 1e-13 * scale)
            })
            .collect();
        Ok(OperatorMatrix {
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
            interior,
        })
    }

    /// Conjugate transpose with domain and codomain swapped. Every column is
    /// marked interior: this is the adjoint of the matrix, not of the operator.
    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            entries: self.entries.adjoint(),
            interior: vec![true; self.nrows()],
        }
    }

    pub fn apply(&self, coords: &[Complex64]) -> Vec<Complex64> {
        (&self.entries * DVector::from_column_slice(coords)).as_slice().to_vec()
    }

    /// Largest column-norm deviation from the identity over interior columns.
    pub fn interior_identity_defect(&self) -> f64 {
        self.interior_columns()
            .into_iter()
            .map(|j| {
                let mut c = self.entries.column(j).clone_owned();
                c[j] -= ONE;
                c.norm()
            })
            .fold(0.0, f64::max)
    }

    /// Flat row-major CSV: `row,col,re,im` with basis labels.
    pub fn to_csv(&self) -> String {
        let rl = self.codomain.label_strings();
        let cl = self.domain.label_strings();
        let mut out = String::from("row,col,re,im\n");
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let c = self.entries[(i, j)];
                let _ = writeln!(out, "{},{},{:.16e},{:.16e}", rl[i], cl[j], c.re, c.im);
            }
        }
        out
    }
}

fn column(frame: &Frame, window: usize, img: &[FourierVector]) -> (Vec<Complex64>, bool) {
    let coords = frame.analyze(img);
    let r = img.iter().map(|v| v.radius()).max().unwrap_or(0).max(window);
    let back = frame.synthesize(&coords, r);
    let (mut res, mut total) = (0.0, 0.0);
    for (a, b) in img.iter().zip(&back) {
        res += a.sub(b).norm_sqr();
        total += a.norm_sqr();
    }
    let inside = res.sqrt() <= INTERIOR_TOLERANCE * total.sqrt().max(1.0);
    (coords, inside)
}

// ---------------------------------------------------------------------------
// Symbol helpers
// ---------------------------------------------------------------------------

/// Multiplication by a fixed symbol, exact (output window grows).
#[derive(Clone, Debug)]
pub struct Sym(Multiplier);

impl Sym {
    pub fn new(symbol: &FourierVector, max_input_radius: usize) -> Self {
        Sym(Multiplier::new(symbol, max_input_radius))
    }

    pub fn mul(&self, f: &FourierVector) -> FourierVector {
        self.0.apply_exact(f)
    }

    pub fn symbol(&self) -> &FourierVector {
        self.0.symbol()
    }
}

/// Taylor series of an inner function, cut where coefficients fall below
/// the extent tolerance.
pub fn inner_symbol(theta: &BlaschkeProduct) -> FourierVector {
    theta.series(theta.effective_degree().max(1))
}

/// Exact product of two window vectors.
pub fn product(a: &FourierVector, b: &FourierVector) -> FourierVector {
    Multiplier::new(a, b.radius()).apply_exact(b)
}

/// `P_alpha g = P^+ g - alpha P^+(conj(alpha) g)` and `Q_alpha = I - P_alpha`.
#[derive(Clone, Debug)]
pub struct ModelProjector {
    alpha: Sym,
    alpha_conj: Sym,
}

impl ModelProjector {
    pub fn new(alpha: &BlaschkeProduct, max_input_radius: usize) -> Self {
        let s = inner_symbol(alpha);
        ModelProjector {
            alpha_conj: Sym::new(&s.conj(), max_input_radius),
            alpha: Sym::new(&s, max_input_radius + s.radius()),
        }
    }

    /// `P^+(conj(alpha) g)`.
    pub fn coanalytic_part(&self, g: &FourierVector) -> FourierVector {
        self.alpha_conj.mul(g).project_plus()
    }

    pub fn p(&self, g: &FourierVector) -> FourierVector {
        g.project_plus().sub(&self.alpha.mul(&self.coanalytic_part(g)))
    }

    pub fn q(&self, g: &FourierVector) -> FourierVector {
        g.project_minus().add(&self.alpha.mul(&self.coanalytic_part(g)))
    }

    pub fn alpha(&self) -> &Sym {
        &self.alpha
    }

    pub fn alpha_conj(&self) -> &Sym {
        &self.alpha_conj
    }
}

/// `phi^{-1}` re-expanded from boundary samples, with the out-of-window tail.
pub fn invert_symbol(phi: &FourierVector, radius: usize) -> Result<(FourierVector, f64)> {
    let grid_size = (8 * radius.max(phi.radius()) + 8).next_power_of_two().max(1024);
    let grid = phi.to_grid(grid_size)?;
    let min = grid.min_modulus();
    if min < 1e-10 * grid.sup_norm().max(1.0) {
        return Err(Error::NonInvertibleSymbol { min_modulus: min });
    }
    grid.map(|v| ONE / v).to_fourier_with_tail(radius)
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// `T_phi f = P^+(phi f)` on `z^0..z^n`; entry `(j, k) = phi_hat(j - k)`.
pub fn toeplitz_matrix(phi: &FourierVector, n: usize) -> Result<OperatorMatrix> {
    let s = Sym::new(phi, n);
    let space = BasisSpec::hardy_plus(n);
    OperatorMatrix::assemble(&space, &space, n, |x| Ok(vec![s.mul(&x[0]).project_plus()]))
}

/// Block Toeplitz `T_Phi` on `H^2 + H^2`.
pub fn block_toeplitz_matrix(phi: &SymbolMatrix, n: usize) -> Result<OperatorMatrix> {
    let s: Vec<Vec<Sym>> = phi
        .iter()
        .map(|row| row.iter().map(|p| Sym::new(p, n)).collect())
        .collect();
    let space = BasisSpec::direct_sum(vec![BasisSpec::hardy_plus(n), BasisSpec::hardy_plus(n)]);
    OperatorMatrix::assemble(&space, &space, n, |x| {
        Ok((0..2)
            .map(|i| s[i][0].mul(&x[0]).add(&s[i][1].mul(&x[1])).project_plus())
            .collect())
    })
}

/// Window used for model-space expansions so the Takenaka-Malmquist tails
/// are negligible.
fn model_window(n: usize, inner: &[&BlaschkeProduct]) -> usize {
    inner
        .iter()
        .map(|b| b.effective_degree() + b.degree() + 16)
        .fold(n, usize::max)
}

/// `A_phi^{theta,alpha} f = P_alpha(phi f)` between Takenaka-Malmquist bases.
pub fn truncated_toeplitz_matrix(
    phi: &FourierVector,
    theta: &BlaschkeProduct,
    alpha: &BlaschkeProduct,
    n: usize,
) -> Result<OperatorMatrix> {
    let w = model_window(n, &[theta, alpha]);
    let domain = BasisSpec::model_space(theta, w)?;
    let codomain = BasisSpec::model_space(alpha, w)?;
    let s = Sym::new(phi, w);
    let p = ModelProjector::new(alpha, w + phi.radius());
    OperatorMatrix::assemble(&domain, &codomain, w, |x| Ok(vec![p.p(&s.mul(&x[0]))]))
}

/// `D_phi^{theta,alpha} f = Q_alpha(phi f)` from the dual model basis of
/// `theta` to that of `alpha`, both with `n` negative modes and up to `m`
/// inner shifts (clipped to what the window holds).
pub fn dual_truncated_matrix(
    phi: &FourierVector,
    theta: &BlaschkeProduct,
    alpha: &BlaschkeProduct,
    n: usize,
    m: usize,
) -> Result<OperatorMatrix> {
    let (domain, codomain) = dual_bases(theta, alpha, n, m)?;
    let s = Sym::new(phi, n);
    let q = ModelProjector::new(alpha, n + phi.radius());
    OperatorMatrix::assemble(&domain, &codomain, n, |x| Ok(vec![q.q(&s.mul(&x[0]))]))
}

pub fn dual_bases(
    theta: &BlaschkeProduct,
    alpha: &BlaschkeProduct,
    n: usize,
    m: usize,
) -> Result<(BasisSpec, BasisSpec)> {
    let shifts = |b: &BlaschkeProduct| -> Result<usize> {
        let eff = b.effective_degree();
        if eff > n {
            return Err(Error::WindowOverflow {
                what: "dual model basis".into(),
                needed: eff,
                available: n,
            });
        }
        Ok(m.min(n - eff))
    };
    Ok((
        BasisSpec::dual_model(theta, n, shifts(theta)?)?,
        BasisSpec::dual_model(alpha, n, shifts(alpha)?)?,
    ))
}

/// The symbol pair `A = [[phi theta, -1], [phi theta conj(alpha), 0]]`,
/// `B = [[phi, 0], [conj(alpha) phi, -1]]`.
#[derive(Clone, Debug, Serialize)]
pub struct PairedSymbolPair {
    pub a: SymbolMatrix,
    pub b: SymbolMatrix,
}

fn constant(c: Complex64) -> FourierVector {
    FourierVector::constant(0, c)
}

pub fn paired_symbols(phi: &FourierVector, theta: &BlaschkeProduct, alpha: &BlaschkeProduct) -> PairedSymbolPair {
    let t = inner_symbol(theta);
    let ac = inner_symbol(alpha).conj();
    let pt = product(phi, &t);
    PairedSymbolPair {
        a: [
            [pt.clone(), constant(-ONE)],
            [product(&pt, &ac), constant(ZERO)],
        ],
        b: [[phi.clone(), constant(ZERO)], [product(&ac, phi), constant(-ONE)]],
    }
}

/// The reduced pair for `alpha = theta`: `A0 = [[phi theta, -1], [phi, 0]]`,
/// `B0 = [[phi, 0], [conj(theta) phi, -1]]`.
pub fn paired_symbols_reduced(phi: &FourierVector, theta: &BlaschkeProduct) -> PairedSymbolPair {
    let t = inner_symbol(theta);
    PairedSymbolPair {
        a: [[product(phi, &t), constant(-ONE)], [phi.clone(), constant(ZERO)]],
        b: [[phi.clone(), constant(ZERO)], [product(&t.conj(), phi), constant(-ONE)]],
    }
}

impl PairedSymbolPair {
    pub fn identity() -> Self {
        let id = || [[constant(ONE), constant(ZERO)], [constant(ZERO), constant(ONE)]];
        PairedSymbolPair { a: id(), b: id() }
    }

    /// Pointwise determinants of `A` and `B` on an `m`-point grid.
    pub fn determinants(&self, m: usize) -> Result<(BoundaryGrid, BoundaryGrid)> {
        Ok((det_on_grid(&self.a, m)?, det_on_grid(&self.b, m)?))
    }
}

pub fn det_on_grid(m: &SymbolMatrix, size: usize) -> Result<BoundaryGrid> {
    let g = |f: &FourierVector| f.to_grid(size);
    let (a, b, c, d) = (g(&m[0][0])?, g(&m[0][1])?, g(&m[1][0])?, g(&m[1][1])?);
    BoundaryGrid::from_samples(
        (0..size)
            .map(|j| a.samples()[j] * d.samples()[j] - b.samples()[j] * c.samples()[j])
            .collect(),
    )
}

fn sym_matrix(m: &SymbolMatrix, max_in: usize) -> Vec<Vec<Sym>> {
    m.iter()
        .map(|row| row.iter().map(|p| Sym::new(p, max_in)).collect())
        .collect()
}

fn apply_2x2(s: &[Vec<Sym>], x: &[FourierVector]) -> Element {
    (0..2).map(|i| s[i][0].mul(&x[0]).add(&s[i][1].mul(&x[1]))).collect()
}

fn l2_pair(n: usize) -> BasisSpec {
    BasisSpec::direct_sum(vec![BasisSpec::full_l2(n), BasisSpec::full_l2(n)])
}

/// `A P^+ + B P^-` on `L^2 + L^2`.
pub fn paired_operator_matrix(pair: &PairedSymbolPair, n: usize) -> Result<OperatorMatrix> {
    let a = sym_matrix(&pair.a, n);
    let b = sym_matrix(&pair.b, n);
    let space = l2_pair(n);
    OperatorMatrix::assemble(&space, &space, n, |x| {
        let plus: Vec<FourierVector> = x.iter().map(|v| v.project_plus()).collect();
        let minus: Vec<FourierVector> = x.iter().map(|v| v.project_minus()).collect();
        let u = apply_2x2(&a, &plus);
        let v = apply_2x2(&b, &minus);
        Ok(u.iter().zip(&v).map(|(p, q)| p.add(q)).collect())
    })
}

fn conj_transpose(m: &SymbolMatrix) -> SymbolMatrix {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}

/// Adjoint paired operator `P^+ A^* + P^- B^*`.
pub fn paired_adjoint_matrix(pair: &PairedSymbolPair, n: usize) -> Result<OperatorMatrix> {
    let a = sym_matrix(&conj_transpose(&pair.a), n);
    let b = sym_matrix(&conj_transpose(&pair.b), n);
    let space = l2_pair(n);
    OperatorMatrix::assemble(&space, &space, n, |x| {
        let u = apply_2x2(&a, x);
        let v = apply_2x2(&b, x);
        Ok(u.iter()
            .zip(&v)
            .map(|(p, q)| p.project_plus().add(&q.project_minus()))
            .collect())
    })
}

/// `E = [[alpha P^- conj(alpha), alpha P^+], [P^+ conj(alpha), P^-]]`.
pub fn extension_e_matrix(alpha: &BlaschkeProduct, n: usize) -> Result<OperatorMatrix> {
    if n < alpha.degree() + 16 {
        return Err(Error::WindowTooSmall {
            what: "E window".into(),
            required: alpha.degree() + 16,
            got: n,
        });
    }
    let p = ModelProjector::new(alpha, n);
    let space = l2_pair(n);
    OperatorMatrix::assemble(&space, &space, n, |x| {
        let ax = p.alpha_conj().mul(&x[0]);
        let top = p
            .alpha()
            .mul(&ax.project_minus())
            .add(&p.alpha().mul(&x[1].project_plus()));
        let bottom = ax.project_plus().add(&x[1].project_minus());
        Ok(vec![top, bottom])
    })
}

/// Domain of `F`: `(K_theta)^perp + K_alpha + L^2`.
pub fn f_domain(theta: &BlaschkeProduct, alpha: &BlaschkeProduct, n: usize) -> Result<BasisSpec> {
    let eff = theta.effective_degree();
    if eff > n {
        return Err(Error::WindowOverflow {
            what: "F domain".into(),
            needed: eff,
            available: n,
        });
    }
    Ok(BasisSpec::direct_sum(vec![
        BasisSpec::dual_model(theta, n, n - eff)?,
        BasisSpec::model_space(alpha, n)?,
        BasisSpec::full_l2(n),
    ]))
}

/// The extension pair `(F, F^{-1})`:
/// `F(f, g, h) = ((P^- + P^+ conj(theta)) f, (P^+ phi + P^- phi conj(alpha)) f - g - (P^- + alpha P^+) h)`
/// and `F^{-1}(x, y) = (f, P_alpha(phi f) - P_alpha y, phi conj(alpha) f - P^- y - P^+(conj(alpha) y))`
/// with `f = (P^- + theta P^+) x`.
pub fn extension_f_matrix(
    phi: &FourierVector,
    theta: &BlaschkeProduct,
    alpha: &BlaschkeProduct,
    n: usize,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let domain = f_domain(theta, alpha, n)?;
    let codomain = l2_pair(n);
    let t = inner_symbol(theta);
    let theta_s = Sym::new(&t, n);
    let theta_c = Sym::new(&t.conj(), n);
    let big = n + phi.radius() + t.radius();
    let phi_s = Sym::new(phi, big);
    let pa = ModelProjector::new(alpha, 2 * big);

    let f = OperatorMatrix::assemble(&domain, &codomain, n, |x| {
        let (f, g, h) = (&x[0], &x[1], &x[2]);
        let first = f.project_minus().add(&theta_c.mul(f).project_plus());
        let pf = phi_s.mul(f);
        let second = pf
            .project_plus()
            .add(&pa.alpha_conj().mul(&pf).project_minus())
            .sub(g)
            .sub(&h.project_minus())
            .sub(&pa.alpha().mul(&h.project_plus()));
        Ok(vec![first, second])
    })?;

    let f_inv = OperatorMatrix::assemble(&codomain, &domain, n, |v| {
        let (x, y) = (&v[0], &v[1]);
        let f = x.project_minus().add(&theta_s.mul(&x.project_plus()));
        let pf = phi_s.mul(&f);
        let g = pa.p(&pf).sub(&pa.p(y));
        let h = pa
            .alpha_conj()
            .mul(&pf)
            .sub(&y.project_minus())
            .sub(&pa.alpha_conj().mul(y).project_plus());
        Ok(vec![f, g, h])
    })?;
    Ok((f, f_inv))
}

/// `G = [[conj(alpha), 0], [phi^{-1}, theta]]` with `phi^{-1}` from the
/// boundary grid.
#[derive(Clone, Debug, Serialize)]
pub struct GMatrix {
    pub symbol: SymbolMatrix,
    /// Coefficient mass of `phi^{-1}` outside its window.
    pub inverse_tail: f64,
}

pub fn g_matrix(
    phi: &FourierVector,
    theta: &BlaschkeProduct,
    alpha: &BlaschkeProduct,
    radius: usize,
) -> Result<GMatrix> {
    let (inv, tail) = invert_symbol(phi, radius)?;
    Ok(GMatrix {
        symbol: [
            [inner_symbol(alpha).conj(), constant(ZERO)],
            [inv, inner_symbol(theta)],
        ],
        inverse_tail: tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::linalg;

    fn mono(n: usize, k: i64) -> FourierVector {
        FourierVector::monomial(n, k, ONE).unwrap()
    }

    fn z() -> BlaschkeProduct {
        BlaschkeProduct::monomial(1)
    }

    fn b_half() -> BlaschkeProduct {
        BlaschkeProduct::factor(c64(0.5, 0.0)).unwrap()
    }

    fn sym(terms: &[(i64, f64)]) -> FourierVector {
        let r = terms.iter().map(|t| t.0.unsigned_abs() as usize).max().unwrap_or(0);
        FourierVector::from_terms(r, &terms.iter().map(|&(k, c)| (k, c64(c, 0.0))).collect::<Vec<_>>()).unwrap()
    }

    fn entry(m: &OperatorMatrix, row: &str, col: &str) -> Complex64 {
        let r = m.codomain.label_strings().iter().position(|l| l == row).unwrap();
        let c = m.domain.label_strings().iter().position(|l| l == col).unwrap();
        m.entries[(r, c)]
    }

    #[test]
    fn toeplitz_examples() {
        let n = 6;
        let shift = toeplitz_matrix(&sym(&[(1, 1.0)]), n).unwrap();
        for j in 0..=n {
            for k in 0..=n {
                let want = if j == k + 1 { 1.0 } else { 0.0 };
                assert!((shift.entries[(j, k)] - want).norm() < 1e-15);
            }
        }
        assert!(!shift.interior[n]);
        assert!(shift.interior[n - 1]);
        let id = toeplitz_matrix(&sym(&[(0, 1.0)]), n).unwrap();
        assert!((id.entries.clone() - CMatrix::identity(n + 1, n + 1)).norm() < 1e-15);
        let back = toeplitz_matrix(&sym(&[(-1, 1.0)]), n).unwrap();
        assert!((back.entries.clone() - shift.entries.adjoint()).norm() < 1e-15);
    }

    #[test]
    fn block_toeplitz_examples() {
        let n = 24;
        let one = sym(&[(0, 1.0)]);
        let zero = FourierVector::zeros(0);
        let id = block_toeplitz_matrix(&[[one.clone(), zero.clone()], [zero.clone(), one]], n).unwrap();
        assert!((id.entries.clone() - CMatrix::identity(2 * n + 2, 2 * n + 2)).norm() < 1e-15);

        let zz = sym(&[(1, 1.0)]);
        let diag = block_toeplitz_matrix(&[[zz.clone(), zero.clone()], [zero.clone(), zz]], n).unwrap();
        let ns = linalg::nullspace(&diag.interior_matrix(), 1e-8);
        assert_eq!(ns.dimension(), 0);

        // Phi = [[conj(theta), 0], [phi, alpha]], theta = alpha = z^2, phi = z.
        let t = inner_symbol(&BlaschkeProduct::monomial(2));
        let tb = block_toeplitz_matrix(&[[t.conj(), zero], [sym(&[(1, 1.0)]), t]], n).unwrap();
        let ns = linalg::nullspace(&tb.interior_matrix(), 1e-8);
        assert_eq!(ns.dimension(), 1);
        assert!(!ns.ambiguous);
    }

    #[test]
    fn truncated_toeplitz_examples() {
        let z2 = BlaschkeProduct::monomial(2);
        let a = truncated_toeplitz_matrix(&sym(&[(1, 1.0)]), &z2, &z2, 18).unwrap();
        // A(1) = z, A(z) = 0
        let want = CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ONE, ZERO]);
        assert!((a.entries.clone() - want).norm() < 1e-15);
        let ns = linalg::nullspace(&a.entries, 1e-8);
        assert_eq!(ns.dimension(), 1);
        assert!((ns.basis[(1, 0)].norm() - 1.0).abs() < 1e-14);

        let id = truncated_toeplitz_matrix(&sym(&[(0, 1.0)]), &b_half(), &b_half(), 18).unwrap();
        assert!((id.entries.clone() - CMatrix::identity(1, 1)).norm() < 1e-12);

        let adj = truncated_toeplitz_matrix(&sym(&[(-1, 1.0)]), &z2, &z2, 18).unwrap();
        assert!((adj.entries.clone() - a.entries.adjoint()).norm() < 1e-15);
    }

    #[test]
    fn dual_truncated_examples() {
        let n = 8;
        let d = dual_truncated_matrix(&sym(&[(1, 1.0)]), &z(), &z(), n, n).unwrap();
        // D(conj z) = 0, D(conj z^2) = conj z, D(z * 1) = z^2 = theta z
        assert!(d.entries.column(d.domain.labels.iter().position(|l| l.to_string() == "[0]z^-1").unwrap()).norm() < 1e-15);
        assert!((entry(&d, "[0]z^-1", "[0]z^-2") - ONE).norm() < 1e-15);
        assert!((entry(&d, "[0]theta*z^1", "[0]theta*z^0") - ONE).norm() < 1e-15);

        let id = dual_truncated_matrix(&sym(&[(0, 1.0)]), &b_half(), &b_half(), 64, 64).unwrap();
        let k = id.ncols();
        assert!((id.entries.clone() - CMatrix::identity(k, k)).norm() < 1e-12);

        let dbar = dual_truncated_matrix(&sym(&[(-1, 1.0)]), &z(), &z(), n, n).unwrap();
        assert!((dbar.entries.clone() - d.entries.adjoint()).norm() < 1e-15);
    }

    #[test]
    fn dual_adjoint_law_with_distinct_inner_functions() {
        let theta = z().mul(&b_half());
        let alpha = BlaschkeProduct::monomial(2);
        let phi = sym(&[(-1, 0.5), (0, 1.0), (2, -0.25)]);
        let n = 96;
        let d = dual_truncated_matrix(&phi, &theta, &alpha, n, n).unwrap();
        let ds = dual_truncated_matrix(&phi.conj(), &alpha, &theta, n, n).unwrap();
        assert_eq!(ds.domain, d.codomain);
        assert!((ds.entries.clone() - d.entries.adjoint()).norm() < 1e-10);
    }

    #[test]
    fn paired_symbol_examples() {
        let p = paired_symbols(&sym(&[(1, 1.0)]), &z(), &z());
        let check = |f: &FourierVector, terms: &[(i64, f64)]| f.sub(&sym(terms)).norm() < 1e-15;
        assert!(check(&p.a[0][0], &[(2, 1.0)]));
        assert!(check(&p.a[0][1], &[(0, -1.0)]));
        assert!(check(&p.a[1][0], &[(1, 1.0)]));
        assert!(check(&p.b[0][0], &[(1, 1.0)]));
        assert!(check(&p.b[1][0], &[(0, 1.0)]));
        assert!(check(&p.b[1][1], &[(0, -1.0)]));

        let phi = sym(&[(0, 2.0), (1, 0.5)]);
        let theta = z().mul(&b_half());
        let alpha = b_half();
        let p = paired_symbols(&phi, &theta, &alpha);
        let (da, db) = p.determinants(1024).unwrap();
        let g = BoundaryGrid::from_fn(1024, |w| {
            (2.0 + 0.5 * w) * theta.eval_unchecked(w) * alpha.eval_unchecked(w).conj()
        })
        .unwrap();
        assert!(da.samples().iter().zip(g.samples()).all(|(x, y)| (x - y).norm() < 1e-10));
        let phig = phi.to_grid(1024).unwrap();
        assert!(db.samples().iter().zip(phig.samples()).all(|(x, y)| (x + y).norm() < 1e-10));
    }

    #[test]
    fn paired_operator_examples() {
        let n = 16;
        let id = paired_operator_matrix(&PairedSymbolPair::identity(), n).unwrap();
        let k = id.ncols();
        assert!((id.entries.clone() - CMatrix::identity(k, k)).norm() < 1e-15);

        // (z, z, z) annihilates (conj z, 1 + conj z).
        let p = paired_operator_matrix(&paired_symbols(&sym(&[(1, 1.0)]), &z(), &z()), n).unwrap();
        let frame = p.domain.frame();
        let v = frame.analyze(&[mono(n, -1), mono(n, 0).add(&mono(n, -1))]);
        let out = p.apply(&v);
        assert!(out.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() < 1e-15);

        // phi = 1: invertible with interior singular values bounded below.
        let p = paired_operator_matrix(&paired_symbols(&sym(&[(0, 1.0)]), &z(), &z()), 64).unwrap();
        assert!(linalg::min_singular_value(&p.interior_matrix()) >= 0.5);
    }

    #[test]
    fn extension_e_squares_to_identity() {
        for alpha in [BlaschkeProduct::one(), z(), b_half()] {
            let e = extension_e_matrix(&alpha, 64).unwrap();
            let e2 = e.compose(&e).unwrap();
            assert!(!e2.interior_columns().is_empty());
            assert!(e2.interior_identity_defect() < 1e-10);
        }
        let e = extension_e_matrix(&BlaschkeProduct::one(), 20).unwrap();
        let k = e.ncols();
        assert!((e.compose(&e).unwrap().entries - CMatrix::identity(k, k)).norm() < 1e-15);
    }

    #[test]
    fn extension_f_inverts() {
        let n = 32;
        let (f, fi) = extension_f_matrix(&sym(&[(1, 1.0)]), &z(), &z(), n).unwrap();
        let a = f.compose(&fi).unwrap();
        let b = fi.compose(&f).unwrap();
        assert!(a.interior_columns().len() > n);
        assert!(b.interior_columns().len() > n);
        assert!(a.interior_identity_defect() < 1e-10);
        assert!(b.interior_identity_defect() < 1e-10);
    }

    #[test]
    fn extension_f_first_row_for_unit_symbol() {
        let n = 20;
        let (f, _) = extension_f_matrix(&sym(&[(0, 1.0)]), &z(), &z(), n).unwrap();
        let cod = f.codomain.frame();
        for (j, label) in f.domain.labels.iter().enumerate() {
            if label.summand != 0 || !f.interior[j] {
                continue;
            }
            let img = cod.synthesize(f.entries.column(j).as_slice(), n);
            let want = match label.element {
                crate::spaces::ElementLabel::Monomial(k) => mono(n, k),
                crate::spaces::ElementLabel::InnerShift(k) => mono(n, k as i64),
                _ => unreachable!(),
            };
            assert!(img[0].sub(&want).norm() < 1e-15);
        }
    }

    #[test]
    fn g_matrix_examples() {
        let g = g_matrix(&sym(&[(0, 1.0)]), &z(), &z(), 8).unwrap();
        assert!(g.symbol[0][0].sub(&mono(8, -1)).norm() < 1e-15);
        assert!(g.symbol[1][0].sub(&mono(8, 0)).norm() < 1e-14);
        assert!(g.symbol[1][1].sub(&mono(8, 1)).norm() < 1e-15);
        let g2 = g_matrix(&sym(&[(0, 2.0)]), &z(), &z(), 8).unwrap();
        assert!((g2.symbol[1][0].coeff(0) - 0.5).norm() < 1e-14);

        let theta = z().mul(&b_half());
        let alpha = b_half();
        let g = g_matrix(&sym(&[(0, 3.0), (1, 1.0)]), &theta, &alpha, 64).unwrap();
        assert!(g.inverse_tail < 1e-12);
        let d = det_on_grid(&g.symbol, 512).unwrap();
        let want = BoundaryGrid::from_fn(512, |w| alpha.eval_unchecked(w).conj() * theta.eval_unchecked(w)).unwrap();
        assert!(d.samples().iter().zip(want.samples()).all(|(x, y)| (x - y).norm() < 1e-10));

        assert!(matches!(
            g_matrix(&sym(&[(0, 1.0), (1, 1.0)]), &z(), &z(), 8),
            Err(Error::NonInvertibleSymbol { .. })
        ));
    }

    #[test]
    fn compose_checks_bases() {
        let a = toeplitz_matrix(&sym(&[(1, 1.0)]), 4).unwrap();
        let b = toeplitz_matrix(&sym(&[(1, 1.0)]), 5).unwrap();
        assert!(matches!(a.compose(&b), Err(Error::CompositionMismatch(_))));
        assert!(a.compose(&a).is_ok());
    }

    #[test]
    fn csv_is_flat_and_labelled() {
        let a = toeplitz_matrix(&sym(&[(1, 1.0)]), 1).unwrap();
        let csv = a.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "row,col,re,im");
        assert_eq!(lines.len(), 5);
        assert!(lines[3].starts_with("[0]z^1,[0]z^0,1.0000000000000000e0,"), "{}", lines[3]);
    }
}
