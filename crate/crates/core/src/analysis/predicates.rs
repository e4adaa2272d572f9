use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kernel::{kernel, kernel_interior, section_profile, KernelReport, SectionProfile};
use super::solvability::DualSetting;
use super::{canonical_basis, coordinates};
use crate::error::{Error, Result};
use crate::fourier::{winding_number_of, FourierVector};
use crate::inner_rational::{
    corona_check, corona_check_fn, factor_inner_outer, inner_gcd, BlaschkeProduct, CoronaGrid, CoronaVerdict,
    DiskFunction, Half, RationalFunction,
};
use crate::linalg::subspace_sin_angle;
use crate::operators::{
    dual_truncated_matrix, inner_symbol, paired_adjoint_matrix, paired_operator_matrix, product,
    truncated_toeplitz_matrix,
};
use crate::spaces::{takenaka_malmquist_basis, Element};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Residual accepted for the identities the caller's corona data must satisfy.
const HYPOTHESIS_TOLERANCE: f64 = 1e-8;
/// Relative coefficient size below which a function counts as (co-)analytic.
const SUPPORT_TOLERANCE: f64 = 1e-10;
/// Boundary grid for pointwise checks.
const CHECK_GRID: usize = 1024;
/// Subspace angle accepted between predicted and computed kernels.
const ANGLE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PredicateName {
    #[serde(rename = "Thm8.1")]
    Thm8_1,
    #[serde(rename = "Thm8.2")]
    Thm8_2,
    #[serde(rename = "Thm8.3")]
    Thm8_3,
    #[serde(rename = "Thm8.4")]
    Thm8_4,
    #[serde(rename = "Thm9.1")]
    Thm9_1,
    #[serde(rename = "Thm9.2")]
    Thm9_2,
    #[serde(rename = "Thm9.3")]
    Thm9_3,
    #[serde(rename = "Cor9.7")]
    Cor9_7,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    /// Passed at every grid point; not certified between them.
    Sampled,
}

impl CheckStatus {
    pub fn ok(&self) -> bool {
        !matches!(self, CheckStatus::Failed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub status: CheckStatus,
    pub measured: f64,
    pub tolerance: f64,
}

impl HypothesisCheck {
    fn at_most(name: &str, measured: f64, tolerance: f64) -> Self {
        HypothesisCheck {
            name: name.into(),
            status: if measured <= tolerance { CheckStatus::Passed } else { CheckStatus::Failed },
            measured,
            tolerance,
        }
    }

    fn flag(name: &str, ok: bool, measured: f64) -> Self {
        HypothesisCheck {
            name: name.into(),
            status: if ok { CheckStatus::Passed } else { CheckStatus::Failed },
            measured,
            tolerance: 0.0,
        }
    }

    fn corona(name: &str, v: &CoronaVerdict) -> Self {
        HypothesisCheck {
            name: name.into(),
            status: if v.is_corona_pair { CheckStatus::Sampled } else { CheckStatus::Failed },
            measured: v.infimum_estimate,
            tolerance: v.delta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Injective,
    Invertible,
    OnlyInjective,
    OnlySurjective,
    Fredholm,
    NotFredholm,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoronaInvertibilityVerdict {
    pub predicate_name: PredicateName,
    pub hypothesis_report: Vec<HypothesisCheck>,
    pub conclusion: Conclusion,
    pub fredholm: Option<bool>,
    pub invertible: Option<bool>,
    /// Winding number of `det(B^{-1} A)` for the paired predicates.
    pub winding: Option<i64>,
    pub predicted_kernel: Option<KernelReport>,
    /// Largest `||Op v|| / ||v||` over the predicted kernel basis.
    pub forward_residual: Option<f64>,
    pub svd_kernel_dimension: Option<usize>,
    pub svd_cokernel_dimension: Option<usize>,
    pub subspace_sin_angle: Option<f64>,
    /// Whether the numerical cross-check agrees with the conclusion.
    pub agrees: bool,
}

impl CoronaInvertibilityVerdict {
    fn new(name: PredicateName) -> Self {
        CoronaInvertibilityVerdict {
            predicate_name: name,
            hypothesis_report: Vec::new(),
            conclusion: Conclusion::Inconclusive,
            fredholm: None,
            invertible: None,
            winding: None,
            predicted_kernel: None,
            forward_residual: None,
            svd_kernel_dimension: None,
            svd_cokernel_dimension: None,
            subspace_sin_angle: None,
            agrees: false,
        }
    }
}

fn fv_disk(f: &FourierVector) -> &dyn DiskFunction {
    f
}

// ---------------------------------------------------------------------------
// Paired operators
// ---------------------------------------------------------------------------

/// Corona data `(h1+, h2+, h2-)` for the paired operator of `D_phi^{theta,alpha}`:
/// `h_+ = (h2+, h1+)` and `h_- = (h2-, conj(alpha) h1+)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HData {
    pub h1_plus: FourierVector,
    pub h2_plus: FourierVector,
    pub h2_minus: FourierVector,
}

impl HData {
    fn plus(&self) -> [FourierVector; 2] {
        [self.h2_plus.clone(), self.h1_plus.clone()]
    }

    fn minus(&self, alpha: &BlaschkeProduct) -> [FourierVector; 2] {
        [self.h2_minus.clone(), product(&inner_symbol(alpha).conj(), &self.h1_plus)]
    }

    fn corona_ok(&self, alpha: &BlaschkeProduct, delta: f64, grid: &CoronaGrid) -> bool {
        let p = self.plus();
        let m = self.minus(alpha);
        p.iter().all(|h| h.is_analytic(SUPPORT_TOLERANCE))
            && m.iter().all(|h| h.is_coanalytic(SUPPORT_TOLERANCE))
            && corona_check(fv_disk(&p[0]), fv_disk(&p[1]), Half::Interior, delta, grid).is_corona_pair
            && corona_check(fv_disk(&m[0]), fv_disk(&m[1]), Half::Exterior, delta, grid).is_corona_pair
    }
}

/// Corona data for the monomial and Blaschke families: first
/// `h2+ = 1, h2- = 0, h1+ = phi theta`, then `h2+ = 0, h2- = 1, h1+ = phi`.
/// Both satisfy `phi (h2- + theta h2+) = h1+` by construction; the first
/// pair passing the membership checks is returned.
pub fn default_h_data(
    setting: &DualSetting,
    delta: f64,
    grid: &CoronaGrid,
) -> Result<HData> {
    let one = FourierVector::constant(0, ONE);
    let zero = FourierVector::zeros(0);
    let candidates = [
        HData {
            h1_plus: product(&setting.phi, &inner_symbol(&setting.theta)),
            h2_plus: one.clone(),
            h2_minus: zero.clone(),
        },
        HData {
            h1_plus: setting.phi.clone(),
            h2_plus: zero,
            h2_minus: one,
        },
    ];
    candidates
        .into_iter()
        .find(|h| h.corona_ok(&setting.alpha, delta, grid))
        .ok_or_else(|| Error::HypothesisViolation("no corona data of the supported forms".into()))
}

fn apply_rows(m: &[[FourierVector; 2]; 2], x: &[FourierVector; 2]) -> [FourierVector; 2] {
    let row = |i: usize| product(&m[i][0], &x[0]).add(&product(&m[i][1], &x[1]));
    [row(0), row(1)]
}

fn sup_on_grid(v: &[FourierVector; 2]) -> Result<(f64, f64)> {
    let a = v[0].to_grid(CHECK_GRID)?;
    let b = v[1].to_grid(CHECK_GRID)?;
    let norms: Vec<f64> = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| (x.norm_sqr() + y.norm_sqr()).sqrt())
        .collect();
    Ok((
        norms.iter().copied().fold(0.0, f64::max),
        norms.iter().copied().fold(f64::INFINITY, f64::min),
    ))
}

/// Verifies caller-supplied corona data for the paired operator and draws
/// the injectivity / invertibility conclusion from the winding number
/// `k = deg theta - deg alpha` of `det(B^{-1} A) = -theta conj(alpha)`;
/// the paired matrix and its adjoint are checked by interior SVD.
pub fn paired_injectivity_predicate(
    setting: &DualSetting,
    h: &HData,
    n: usize,
    threshold: f64,
    delta: f64,
    grid: &CoronaGrid,
) -> Result<CoronaInvertibilityVerdict> {
    let t = inner_symbol(&setting.theta);
    let w86 = product(&setting.phi, &h.h2_minus.add(&product(&t, &h.h2_plus)))
        .sub(&h.h1_plus)
        .norm();
    if w86 > HYPOTHESIS_TOLERANCE {
        return Err(Error::HypothesisResidual {
            what: "phi (h2- + theta h2+) = h1+".into(),
            residual: w86,
            tolerance: HYPOTHESIS_TOLERANCE,
        });
    }
    let pair = setting.paired_symbols();
    let hp = h.plus();
    let hm = h.minus(&setting.alpha);
    let ah = apply_rows(&pair.a, &hp);
    let bh = apply_rows(&pair.b, &hm);
    let (w83, _) = sup_on_grid(&[ah[0].add(&bh[0]), ah[1].add(&bh[1])])?;
    let (_, ah_min) = sup_on_grid(&ah)?;

    let divides = product(&t, &inner_symbol(&setting.alpha).conj()).is_analytic(SUPPORT_TOLERANCE);
    let cp_plus = corona_check(fv_disk(&hp[0]), fv_disk(&hp[1]), Half::Interior, delta, grid);
    let cp_minus = corona_check(fv_disk(&hm[0]), fv_disk(&hm[1]), Half::Exterior, delta, grid);
    let k = setting.theta.degree() as i64 - setting.alpha.degree() as i64;
    let det_ratio = |z: Complex64| {
        let th = setting.theta.eval_unchecked(z);
        let al = setting.alpha.eval_unchecked(z);
        -th * al.conj()
    };
    let k_grid = winding_number_of(CHECK_GRID, det_ratio)?;

    let mut v = CoronaInvertibilityVerdict::new(if divides {
        PredicateName::Thm8_3
    } else {
        PredicateName::Thm8_2
    });
    v.hypothesis_report = vec![
        HypothesisCheck::at_most("phi (h2- + theta h2+) = h1+", w86, HYPOTHESIS_TOLERANCE),
        HypothesisCheck::at_most("A h+ + B h- = 0 on the grid", w83, HYPOTHESIS_TOLERANCE),
        HypothesisCheck::flag(
            "h+ analytic",
            hp.iter().all(|f| f.is_analytic(SUPPORT_TOLERANCE)),
            0.0,
        ),
        HypothesisCheck::flag(
            "h- co-analytic",
            hm.iter().all(|f| f.is_coanalytic(SUPPORT_TOLERANCE)),
            0.0,
        ),
        HypothesisCheck::corona("h+ in CP+", &cp_plus),
        HypothesisCheck::corona("h- in CP-", &cp_minus),
        HypothesisCheck {
            name: "A h+ nonzero on the circle".into(),
            status: if ah_min > HYPOTHESIS_TOLERANCE { CheckStatus::Sampled } else { CheckStatus::Failed },
            measured: ah_min,
            tolerance: HYPOTHESIS_TOLERANCE,
        },
        HypothesisCheck::flag("alpha divides theta", divides, 0.0),
        HypothesisCheck::flag("winding closed form matches the grid", k == k_grid, k_grid as f64),
    ];
    v.winding = Some(k);
    // every check except divisibility is needed for the trichotomy
    let trichotomy_ok = v
        .hypothesis_report
        .iter()
        .filter(|c| c.name != "alpha divides theta")
        .all(|c| c.status.ok());
    v.conclusion = if !trichotomy_ok {
        Conclusion::Inconclusive
    } else if k == 0 {
        Conclusion::Invertible
    } else if k > 0 {
        Conclusion::OnlyInjective
    } else {
        Conclusion::OnlySurjective
    };
    v.invertible = trichotomy_ok.then_some(k == 0);
    v.fredholm = trichotomy_ok.then_some(true);

    let kd = kernel_interior(&paired_operator_matrix(&pair, n)?, threshold);
    let cd = kernel_interior(&paired_adjoint_matrix(&pair, n)?, threshold);
    v.svd_kernel_dimension = Some(kd.dimension);
    v.svd_cokernel_dimension = Some(cd.dimension);
    let (ek, ec) = if k >= 0 { (0, k as usize) } else { ((-k) as usize, 0) };
    v.agrees = trichotomy_ok && !kd.ambiguous && !cd.ambiguous && kd.dimension == ek && cd.dimension == ec;
    Ok(v)
}

// ---------------------------------------------------------------------------
// Analytic symbols
// ---------------------------------------------------------------------------

fn check_analytic_symbol(phi: &RationalFunction, theta: &BlaschkeProduct, n: usize) -> Result<FourierVector> {
    if !phi.is_bounded_analytic()? {
        return Err(Error::HypothesisViolation("phi has a pole in the closed disk".into()));
    }
    let f = phi.laurent(n)?;
    if !product(&inner_symbol(theta).conj(), &f).is_coanalytic(SUPPORT_TOLERANCE) {
        return Err(Error::HypothesisViolation(
            "conj(theta) phi is not co-analytic on the window".into(),
        ));
    }
    Ok(f)
}

/// `D_phi^theta - lambda` is invertible iff `inf_D |phi - lambda| > 0`, for
/// `phi` bounded analytic with `conj(theta) phi` co-analytic.
pub fn analytic_spectrum_predicate(
    phi: &RationalFunction,
    theta: &BlaschkeProduct,
    lambda: Complex64,
    n: usize,
    delta: f64,
    grid: &CoronaGrid,
) -> Result<CoronaInvertibilityVerdict> {
    check_analytic_symbol(phi, theta, n)?;
    let c = corona_check_fn(|w| phi.eval(w) - lambda, |_| Complex64::new(0.0, 0.0), delta, grid);
    let on_curve = winding_number_of(CHECK_GRID, |z| phi.eval(z) - lambda).is_err()
        || (0..CHECK_GRID)
            .map(|j| (phi.eval(crate::fourier::BoundaryGrid::node(CHECK_GRID, j)) - lambda).norm())
            .fold(f64::INFINITY, f64::min)
            < 1e-9;
    let mut v = CoronaInvertibilityVerdict::new(PredicateName::Thm9_1);
    v.hypothesis_report = vec![
        HypothesisCheck::flag("phi in H-infinity", true, 0.0),
        HypothesisCheck::flag("conj(theta) phi co-analytic", true, 0.0),
        HypothesisCheck::corona("phi - lambda bounded below on the disk", &c),
    ];
    v.invertible = Some(c.is_corona_pair);
    v.fredholm = Some(!on_curve);
    v.conclusion = if c.is_corona_pair {
        Conclusion::Invertible
    } else if on_curve {
        Conclusion::NotFredholm
    } else {
        Conclusion::Fredholm
    };
    v.agrees = true;
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelRouteVerdict {
    pub profile: SectionProfile,
    pub fredholm: bool,
    pub invertible: bool,
}

/// Invertibility of `D_{phi - lambda}^theta` from sections: Fredholm when
/// the smallest nonzero interior singular value survives doubling the
/// window, invertible when additionally the kernel is trivial.
pub fn kernel_route_verdict(
    phi: &FourierVector,
    theta: &BlaschkeProduct,
    lambda: Complex64,
    n: usize,
    threshold: f64,
) -> Result<KernelRouteVerdict> {
    let shifted = phi.sub(&FourierVector::constant(0, lambda));
    let profile = section_profile(|k| dual_truncated_matrix(&shifted, theta, theta, k, k), n, threshold)?;
    Ok(KernelRouteVerdict {
        fredholm: profile.bounded_below,
        invertible: profile.bounded_below && profile.kernel_dimension == 0,
        profile,
    })
}

// ---------------------------------------------------------------------------
// Symbols with analytic or co-analytic inverse
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseKind {
    /// `phi^{-1}` is bounded analytic.
    Analytic,
    /// `phi^{-1}` is bounded co-analytic.
    CoAnalytic,
}

fn truncate(f: FourierVector, n: usize) -> FourierVector {
    f.with_radius(n)
}

/// Fredholmness, invertibility and the kernel of `D_phi^theta` when
/// `phi^{-1}` (or its conjugate) is bounded analytic: with
/// `beta a+` the inner-outer factorization and `gamma = gcd(theta, beta)`,
/// the kernel is `beta a+ (theta/gamma) K_gamma` (conjugated with a factor
/// `conj(z)` in the co-analytic case) and invertibility holds iff
/// `(theta, beta)` is a corona pair. The prediction is checked against the
/// SVD kernel of the dual matrix and by applying the operator.
pub fn inverse_analytic_predicates(
    inverse: &RationalFunction,
    theta: &BlaschkeProduct,
    kind: InverseKind,
    n: usize,
    threshold: f64,
    delta: f64,
    grid: &CoronaGrid,
) -> Result<CoronaInvertibilityVerdict> {
    let h = match kind {
        InverseKind::Analytic => inverse.clone(),
        InverseKind::CoAnalytic => inverse.conj_on_circle(),
    };
    let fac = factor_inner_outer(&h)?;
    let beta = fac.inner;
    let gamma = inner_gcd(theta, &beta)?;
    let pair = corona_check(theta, &beta, Half::Interior, delta, grid);

    let w = n + 2 * (theta.effective_degree() + beta.effective_degree()) + 32;
    let outer = fac.outer.laurent(w)?;
    let quotient = beta.div(&gamma)?;
    let preds: Vec<FourierVector> = if gamma.degree() == 0 {
        Vec::new()
    } else {
        let (_, tm) = takenaka_malmquist_basis(&gamma, w)?;
        tm.iter()
            .map(|e| match kind {
                InverseKind::Analytic => {
                    let q = theta.div(&gamma).expect("gcd divides theta").series(w);
                    product(&product(&product(&beta.series(w), &outer), &q), e)
                }
                InverseKind::CoAnalytic => {
                    let (ze, _) = e.with_radius(w + 1).shifted(1);
                    product(&product(&quotient.series(w), &outer), &ze).conj()
                }
            })
            .map(|f| truncate(f, w))
            .collect()
    };

    let phi = inverse.reciprocal()?.laurent(w)?;
    let setting = DualSetting::square(phi.clone(), theta.clone());
    let d = dual_truncated_matrix(&phi.with_radius(n), theta, theta, n, n)?;
    let svd = kernel_interior(&d, threshold);
    let elems: Vec<Element> = preds.iter().map(|p| vec![p.clone()]).collect();
    let coords = canonical_basis(&coordinates(&d.domain, &elems));
    let forward = preds
        .iter()
        .map(|p| setting.relative_residual(p))
        .fold(0.0, f64::max);
    let predicted = KernelReport::from_vectors(
        coords,
        &d.domain,
        Vec::new(),
        f64::INFINITY,
        false,
        threshold,
        true,
    );
    let angle = subspace_sin_angle(&predicted.vectors, &svd.vectors);

    let mut v = CoronaInvertibilityVerdict::new(match kind {
        InverseKind::Analytic => PredicateName::Thm9_3,
        InverseKind::CoAnalytic => PredicateName::Cor9_7,
    });
    v.hypothesis_report = vec![
        HypothesisCheck::flag("inverse bounded and zero-free on the circle", true, 0.0),
        HypothesisCheck::flag("gcd(theta, beta) is a finite Blaschke product", true, gamma.degree() as f64),
        HypothesisCheck::corona("(theta, beta) in CP+", &pair),
    ];
    v.fredholm = Some(true);
    v.invertible = Some(pair.is_corona_pair);
    v.conclusion = if pair.is_corona_pair {
        Conclusion::Invertible
    } else {
        Conclusion::Fredholm
    };
    v.forward_residual = Some(forward);
    v.svd_kernel_dimension = Some(svd.dimension);
    v.subspace_sin_angle = Some(angle);
    v.agrees = !svd.ambiguous
        && predicted.dimension == svd.dimension
        && angle <= ANGLE_TOLERANCE
        && forward <= HYPOTHESIS_TOLERANCE
        && pair.is_corona_pair == (svd.dimension == 0);
    v.predicted_kernel = Some(predicted);
    Ok(v)
}

/// Truncated Toeplitz `A_{g+}^theta` with bounded analytic `g+`: with
/// `gamma = gcd(theta, inner(g+))`, Fredholm iff `conj(gamma) (theta, g+)`
/// is a corona pair, invertible iff `(theta, g+)` is, and the kernel is
/// `(theta / gamma) K_gamma`.
pub fn truncated_toeplitz_predicate(
    g: &RationalFunction,
    theta: &BlaschkeProduct,
    n: usize,
    threshold: f64,
    delta: f64,
    grid: &CoronaGrid,
) -> Result<CoronaInvertibilityVerdict> {
    if !g.is_bounded_analytic()? {
        return Err(Error::HypothesisViolation("symbol has a pole in the closed disk".into()));
    }
    let fac = factor_inner_outer(g)?;
    let gamma = inner_gcd(theta, &fac.inner)?;
    let reduced_theta = theta.div(&gamma)?;
    let reduced_inner = fac.inner.div(&gamma)?;
    let outer = fac.outer.clone();
    let fredholm_pair = corona_check_fn(
        |w| reduced_theta.eval_unchecked(w),
        |w| reduced_inner.eval_unchecked(w) * outer.eval(w),
        delta,
        grid,
    );
    let invertible_pair = corona_check(theta, g, Half::Interior, delta, grid);

    let w = n.max(theta.effective_degree() + theta.degree() + 16);
    let symbol = g.laurent(w)?;
    let a = truncated_toeplitz_matrix(&symbol, theta, theta, n)?;
    let svd = kernel(&a, threshold);
    let preds: Vec<Element> = if gamma.degree() == 0 {
        Vec::new()
    } else {
        let (_, tm) = takenaka_malmquist_basis(&gamma, a.domain.window_radius)?;
        let q = reduced_theta.series(a.domain.window_radius);
        tm.iter().map(|e| vec![product(&q, e)]).collect()
    };
    let coords = canonical_basis(&coordinates(&a.domain, &preds));
    let forward = if preds.is_empty() {
        0.0
    } else {
        (&a.entries * &coords).norm()
    };
    let predicted = KernelReport::from_vectors(coords, &a.domain, Vec::new(), f64::INFINITY, false, threshold, false);
    let angle = subspace_sin_angle(&predicted.vectors, &svd.vectors);

    let mut v = CoronaInvertibilityVerdict::new(PredicateName::Thm9_2);
    v.hypothesis_report = vec![
        HypothesisCheck::flag("g+ bounded analytic", true, 0.0),
        HypothesisCheck::corona("conj(gamma) (theta, g+) in CP+", &fredholm_pair),
        HypothesisCheck::corona("(theta, g+) in CP+", &invertible_pair),
    ];
    v.fredholm = Some(fredholm_pair.is_corona_pair);
    v.invertible = Some(invertible_pair.is_corona_pair);
    v.conclusion = if invertible_pair.is_corona_pair {
        Conclusion::Invertible
    } else if fredholm_pair.is_corona_pair {
        Conclusion::Fredholm
    } else {
        Conclusion::NotFredholm
    };
    v.forward_residual = Some(forward);
    v.svd_kernel_dimension = Some(svd.dimension);
    v.subspace_sin_angle = Some(angle);
    v.agrees = !svd.ambiguous
        && predicted.dimension == svd.dimension
        && angle <= ANGLE_TOLERANCE
        && invertible_pair.is_corona_pair == (svd.dimension == 0);
    v.predicted_kernel = Some(predicted);
    Ok(v)
}
