//! The theorem-verification suite behind `dtto verify`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::path::Path;
use std::time::Instant;

use dtto_core::analysis::{
    analytic_spectrum_predicate, coordinates, default_h_data, dual_shift_kernel, element_norm, functions,
    inverse_analytic_predicates, kernel, kernel_interior, kernel_route_verdict, paired_injectivity_predicate,
    rational_kernel_solve, section_profile, spectrum_scan, truncated_toeplitz_predicate, Conclusion, DualSetting,
    InverseKind, KernelReport, PredicateName, ScanGrid, SpectralSymbol, SpectrumReport, Verdict,
};
use dtto_core::fourier::FourierVector;
use dtto_core::inner_rational::{BlaschkeProduct, CoronaGrid, RationalFunction};
use dtto_core::linalg::{singular_values, subspace_sin_angle};
use dtto_core::operators::{
    block_toeplitz_matrix, dual_truncated_matrix, extension_e_matrix, extension_f_matrix, g_matrix, inner_symbol,
    invert_symbol, paired_adjoint_matrix, paired_operator_matrix, paired_symbols, product, truncated_toeplitz_matrix,
    ModelProjector, OperatorMatrix,
};
use dtto_core::spaces::Element;
use dtto_core::{c64, Complex64, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::Outcome;
use crate::config::ResolvedConfig;
use crate::error::{CliError, CliResult};
use crate::report::{write_json, RunReport};

pub const TAGS: [&str; 22] = [
    "Prop1.1",
    "L4.3",
    "L4.4",
    "T3.1",
    "T4.2",
    "T5.1",
    "T6.1",
    "T6.2",
    "T6.3",
    "T6.6",
    "C6.4",
    "T8.2",
    "T8.3",
    "T9.1",
    "T9.2",
    "T9.3",
    "C9.6",
    "T9.8-sample",
    "T9.10",
    "T9.11",
    "T9.12",
    "C9.13",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TagStatus {
    Pass,
    Fail,
    /// The configured window is below what the tag needs.
    WindowPrecondition,
    /// A numeric precondition failed inside the computation.
    Precondition,
    Ambiguous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "==")]
    Equal,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub relation: Relation,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TagReport {
    pub tag: &'static str,
    pub status: TagStatus,
    pub checks: Vec<Check>,
    pub message: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub tags: Vec<TagReport>,
    pub passed: usize,
    pub failed: usize,
    pub preconditions: usize,
    pub ambiguous: usize,
}

impl VerifySummary {
    pub fn lines(&self) -> Vec<String> {
        self.tags
            .iter()
            .map(|t| {
                let worst = t.checks.iter().find(|c| !c.passed).map(|c| c.name.as_str());
                let status = match t.status {
                    TagStatus::Pass => "pass",
                    TagStatus::Fail => "FAIL",
                    TagStatus::WindowPrecondition => "window-precondition",
                    TagStatus::Precondition => "precondition",
                    TagStatus::Ambiguous => "ambiguous",
                };
                let detail = t.message.as_deref().or(worst).unwrap_or("");
                format!("{:<12} {:<20} {}", t.tag, status, detail).trim_end().to_string()
            })
            .collect()
    }
}

#[derive(Debug)]
enum TagError {
    Core(Error),
    Ambiguous(String),
}

impl From<Error> for TagError {
    fn from(e: Error) -> Self {
        TagError::Core(e)
    }
}

type TagResult = Result<(), TagError>;

struct Ctx {
    /// Kernels shared between tags, keyed by operator, case and symbol.
    cache: RefCell<BTreeMap<String, KernelReport>>,
    n: usize,
    m: usize,
    threshold: f64,
    delta: f64,
    residual: f64,
    grid: CoronaGrid,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, measured: f64, relation: Relation, bound: f64) {
        let passed = match relation {
            Relation::AtMost => measured <= bound,
            Relation::AtLeast => measured >= bound,
            Relation::Equal => measured == bound,
        };
        self.0.push(Check {
            name: name.into(),
            measured,
            relation,
            bound,
            passed,
        });
    }

    fn at_most(&mut self, name: impl Into<String>, measured: f64, bound: f64) {
        self.push(name, measured, Relation::AtMost, bound);
    }

    fn at_least(&mut self, name: impl Into<String>, measured: f64, bound: f64) {
        self.push(name, measured, Relation::AtLeast, bound);
    }

    fn equal(&mut self, name: impl Into<String>, measured: usize, expected: usize) {
        self.push(name, measured as f64, Relation::Equal, expected as f64);
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool) {
        self.push(name, ok as u8 as f64, Relation::Equal, 1.0);
    }
}

struct Tag {
    name: &'static str,
    min_window: usize,
    run: fn(&Ctx, &mut Checks) -> TagResult,
}

const SUITE: [Tag; 22] = [
    Tag { name: "Prop1.1", min_window: 64, run: prop_1_1 },
    Tag { name: "L4.3", min_window: 64, run: lemma_4_3 },
    Tag { name: "L4.4", min_window: 64, run: lemma_4_4 },
    Tag { name: "T3.1", min_window: 64, run: thm_3_1 },
    Tag { name: "T4.2", min_window: 64, run: thm_4_2 },
    Tag { name: "T5.1", min_window: 64, run: thm_5_1 },
    Tag { name: "T6.1", min_window: 64, run: thm_6_1 },
    Tag { name: "T6.2", min_window: 64, run: thm_6_2 },
    Tag { name: "T6.3", min_window: 64, run: thm_6_3 },
    Tag { name: "T6.6", min_window: 64, run: thm_6_6 },
    Tag { name: "C6.4", min_window: 128, run: cor_6_4 },
    Tag { name: "T8.2", min_window: 16, run: thm_8_2 },
    Tag { name: "T8.3", min_window: 16, run: thm_8_3 },
    Tag { name: "T9.1", min_window: 16, run: thm_9_1 },
    Tag { name: "T9.2", min_window: 16, run: thm_9_2 },
    Tag { name: "T9.3", min_window: 64, run: thm_9_3 },
    Tag { name: "C9.6", min_window: 64, run: cor_9_6 },
    Tag { name: "T9.8-sample", min_window: 64, run: thm_9_8_sample },
    Tag { name: "T9.10", min_window: 64, run: thm_9_10 },
    Tag { name: "T9.11", min_window: 32, run: thm_9_11 },
    Tag { name: "T9.12", min_window: 64, run: thm_9_12 },
    Tag { name: "C9.13", min_window: 64, run: cor_9_13 },
];

/// Runs the suite (or the single tag `only`) and returns the summary and
/// per-tag wall times.
pub fn run_suite(cfg: &ResolvedConfig, only: Option<&str>) -> (VerifySummary, BTreeMap<String, f64>) {
    let ctx = Ctx {
        cache: RefCell::new(BTreeMap::new()),
        n: cfg.window,
        m: cfg.dual,
        threshold: cfg.tolerances.kernel_threshold,
        delta: cfg.tolerances.corona_delta,
        residual: cfg.tolerances.residual,
        grid: CoronaGrid::default(),
    };
    let mut tags = Vec::new();
    let mut times = BTreeMap::new();
    for t in SUITE.iter().filter(|t| only.is_none_or(|o| o == t.name)) {
        let start = Instant::now();
        let report = run_tag(t, &ctx);
        times.insert(t.name.to_string(), start.elapsed().as_secs_f64());
        tags.push(report);
    }
    let count = |s: TagStatus| tags.iter().filter(|t: &&TagReport| t.status == s).count();
    let summary = VerifySummary {
        passed: count(TagStatus::Pass),
        failed: count(TagStatus::Fail),
        preconditions: count(TagStatus::WindowPrecondition) + count(TagStatus::Precondition),
        ambiguous: count(TagStatus::Ambiguous),
        tags,
    };
    (summary, times)
}

/// `dtto verify`: writes `verify.json` and `report.json`. The inner result
/// maps the worst tag status to an error (fail, then precondition, then
/// ambiguity); the outer one is for config and i/o problems.
pub fn cmd_verify(
    cfg: ResolvedConfig,
    out: &Path,
    only: Option<&str>,
    sections: &mut BTreeMap<String, f64>,
) -> CliResult<(Outcome, CliResult<()>)> {
    if let Some(tag) = only {
        if !TAGS.contains(&tag) {
            return Err(CliError::Config(format!("unknown tag {tag:?}; known tags: {}", TAGS.join(", "))));
        }
    }
    let (summary, times) = run_suite(&cfg, only);
    sections.extend(times);
    write_json(out, "verify.json", &summary)?;
    let mut stdout = summary.lines().join("\n");
    stdout.push_str(&format!(
        "\n{} passed, {} failed, {} precondition, {} ambiguous",
        summary.passed, summary.failed, summary.preconditions, summary.ambiguous
    ));
    let names = |s: &[TagStatus]| {
        summary
            .tags
            .iter()
            .filter(|t| s.contains(&t.status))
            .map(|t| t.tag)
            .collect::<Vec<_>>()
            .join(", ")
    };
    let verdict = if summary.failed > 0 {
        Err(CliError::Theorem(names(&[TagStatus::Fail])))
    } else if summary.preconditions > 0 {
        Err(CliError::Precondition(names(&[TagStatus::Precondition, TagStatus::WindowPrecondition])))
    } else if summary.ambiguous > 0 {
        Err(CliError::Ambiguous(names(&[TagStatus::Ambiguous])))
    } else {
        Ok(())
    };
    write_json(out, "report.json", &RunReport::new("verify", cfg, &summary))?;
    Ok((Outcome { stdout }, verdict))
}

fn run_tag(t: &Tag, ctx: &Ctx) -> TagReport {
    if ctx.n < t.min_window {
        return TagReport {
            tag: t.name,
            status: TagStatus::WindowPrecondition,
            checks: Vec::new(),
            message: Some(format!("window N = {} is below the {} this tag needs", ctx.n, t.min_window)),
        };
    }
    let mut checks = Checks::default();
    let outcome = (t.run)(ctx, &mut checks);
    let (status, message) = match outcome {
        Ok(()) if checks.0.iter().all(|c| c.passed) => (TagStatus::Pass, None),
        Ok(()) => (TagStatus::Fail, None),
        Err(TagError::Ambiguous(m)) => (TagStatus::Ambiguous, Some(m)),
        Err(TagError::Core(e)) if e.is_precondition() => (TagStatus::Precondition, Some(e.to_string())),
        Err(TagError::Core(e)) => (TagStatus::Fail, Some(e.to_string())),
    };
    TagReport {
        tag: t.name,
        status,
        checks: checks.0,
        message,
    }
}

// ---------------------------------------------------------------------------
// Shared data
// ---------------------------------------------------------------------------

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn z(k: usize) -> BlaschkeProduct {
    BlaschkeProduct::monomial(k)
}

fn b(a: f64) -> BlaschkeProduct {
    BlaschkeProduct::factor(c64(a, 0.0)).expect("zero inside the disk")
}

fn sym(terms: &[(i64, f64)]) -> FourierVector {
    let r = terms.iter().map(|t| t.0.unsigned_abs() as usize).max().unwrap_or(0);
    let t: Vec<(i64, Complex64)> = terms.iter().map(|&(k, c)| (k, c64(c, 0.0))).collect();
    FourierVector::from_terms(r, &t).expect("terms fit their own radius")
}

fn poly(c: &[f64]) -> RationalFunction {
    RationalFunction::polynomial(c.iter().map(|&x| c64(x, 0.0)).collect())
}

/// `(label, phi, theta)` with `alpha = theta`, one-dimensional kernels.
fn extension_cases() -> Vec<(&'static str, FourierVector, BlaschkeProduct)> {
    vec![
        ("conj z on z^2", sym(&[(-1, 1.0)]), z(2)),
        ("conj z on z", sym(&[(-1, 1.0)]), z(1)),
        ("conj z^2 on z b_1/2", sym(&[(-2, 1.0)]), z(1).mul(&b(0.5))),
    ]
}

/// `phi = conj(theta)`, kernel `theta K_theta`.
fn conjugate_inner_cases() -> Vec<(&'static str, FourierVector, BlaschkeProduct)> {
    [("z^2", z(2)), ("z^3", z(3)), ("z b_1/2", z(1).mul(&b(0.5)))]
        .into_iter()
        .map(|(l, t)| (l, inner_symbol(&t).conj(), t))
        .collect()
}

fn gap_checked(r: KernelReport, what: &str) -> Result<KernelReport, TagError> {
    if r.ambiguous {
        return Err(TagError::Ambiguous(format!("{what}: gap ratio {:?}", r.gap_ratio)));
    }
    Ok(r)
}

fn kern(op: &OperatorMatrix, ctx: &Ctx, what: &str) -> Result<KernelReport, TagError> {
    gap_checked(kernel_interior(op, ctx.threshold), what)
}

impl Ctx {
    fn cached<F>(&self, key: String, compute: F) -> Result<KernelReport, TagError>
    where
        F: FnOnce() -> Result<KernelReport, TagError>,
    {
        if let Some(r) = self.cache.borrow().get(&key) {
            return Ok(r.clone());
        }
        let r = compute()?;
        self.cache.borrow_mut().insert(key, r.clone());
        Ok(r)
    }
}

fn symbol_key(kind: &str, phi: &FourierVector, theta: &BlaschkeProduct, what: &str) -> String {
    let mut h = DefaultHasher::new();
    for c in phi.coeffs() {
        c.re.to_bits().hash(&mut h);
        c.im.to_bits().hash(&mut h);
    }
    format!("{kind} {what} {} {:016x}", theta.degree(), h.finish())
}

fn dual_kernel(phi: &FourierVector, theta: &BlaschkeProduct, ctx: &Ctx, what: &str) -> Result<KernelReport, TagError> {
    ctx.cached(symbol_key("dual", phi, theta, what), || {
        kern(&dual_truncated_matrix(phi, theta, theta, ctx.n, ctx.m)?, ctx, what)
    })
}

/// Kernel of the paired operator (or of its adjoint) with `alpha = theta`.
fn paired_kernel(
    phi: &FourierVector,
    theta: &BlaschkeProduct,
    adjoint: bool,
    ctx: &Ctx,
    what: &str,
) -> Result<KernelReport, TagError> {
    let kind = if adjoint { "paired*" } else { "paired" };
    ctx.cached(symbol_key(kind, phi, theta, what), || {
        let pair = paired_symbols(phi, theta, theta);
        let m = if adjoint {
            paired_adjoint_matrix(&pair, ctx.n)?
        } else {
            paired_operator_matrix(&pair, ctx.n)?
        };
        kern(&m, ctx, what)
    })
}

fn kernel_vectors(r: &KernelReport, radius: usize) -> Vec<FourierVector> {
    functions(&r.domain, &r.vectors, radius)
}

fn relative(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a
    } else {
        a / b
    }
}

// ---------------------------------------------------------------------------
// Tags
// ---------------------------------------------------------------------------

fn prop_1_1(ctx: &Ctx, c: &mut Checks) -> TagResult {
    let theta = z(2);
    for (label, phi) in [
        ("z", sym(&[(1, 1.0)])),
        ("z+2", sym(&[(0, 2.0), (1, 1.0)])),
        ("b_1/2", inner_symbol(&b(0.5))),
    ] {
        let d = dual_truncated_matrix(&phi, &theta, &theta, ctx.n, ctx.m)?;
        let norm = singular_values(&d.interior_matrix())[0];
        let sup = phi.to_grid(4096)?.sup_norm();
        c.at_least(format!("{label}: ||D|| / ||phi||_inf"), norm / sup, 0.98);
        c.at_most(format!("{label}: ||D|| - ||phi||_inf"), norm - sup, 1e-8);
        let s = DualSetting::square(phi, theta.clone());
        let f = FourierVector::from_terms(3, &[(0, ONE), (1, c64(0.0, -0.5)), (3, c64(0.25, 0.0))])?;
        c.at_most(format!("{label}: energy split defect"), s.energy_split(&f)?.defect(), 1e-10);
    }
    Ok(())
}

fn lemma_4_3(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, phi, theta, alpha) in [
        ("(z, z, z)", sym(&[(1, 1.0)]), z(1), z(1)),
        ("(1+z/2, z^2, z)", sym(&[(0, 1.0), (1, 0.5)]), z(2), z(1)),
        ("(b_1/2, z^2, z^2)", inner_symbol(&b(0.5)), z(2), z(2)),
    ] {
        let (f, fi) = extension_f_matrix(&phi, &theta, &alpha, ctx.n)?;
        c.at_most(format!("{label}: F F^-1 - I"), f.compose(&fi)?.interior_identity_defect(), 1e-9);
        c.at_most(format!("{label}: F^-1 F - I"), fi.compose(&f)?.interior_identity_defect(), 1e-9);
    }
    Ok(())
}

fn lemma_4_4(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, alpha) in [("1", BlaschkeProduct::one()), ("z", z(1)), ("b_1/2", b(0.5))] {
        let e = extension_e_matrix(&alpha, ctx.n)?;
        c.at_most(format!("alpha = {label}: E^2 - I"), e.compose(&e)?.interior_identity_defect(), 1e-10);
    }
    Ok(())
}

fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect()
}

fn thm_3_1(_ctx: &Ctx, c: &mut Checks) -> TagResult {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let theta = z(2);
    let s = DualSetting::new(sym(&[(0, 1.0), (1, 0.5)]), theta.clone(), z(1));
    let (mut lift, mut round) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let k = 6usize;
        let a = random_coeffs(&mut rng, k);
        let p = random_coeffs(&mut rng, k);
        let minus = FourierVector::from_fn(k, |i| if i < 0 { a[(-i - 1) as usize] } else { Complex64::new(0.0, 0.0) });
        let plus = FourierVector::from_fn(k, |i| if i >= 0 && (i as usize) < k { p[i as usize] } else { Complex64::new(0.0, 0.0) });
        let f = minus.add(&product(&inner_symbol(&theta), &plus));
        let g = s.apply(&f);
        let (phi, psi) = s.lift(&f, &g);
        let resid: Element = s
            .apply_paired(&phi)
            .iter()
            .zip(&psi)
            .map(|(x, y)| x.sub(y))
            .collect();
        lift = lift.max(relative(element_norm(&resid), f.norm()));
        let (f2, g2) = s.project(&phi, &psi);
        round = round.max(relative(f2.sub(&f).norm(), f.norm())).max(relative(g2.sub(&g).norm(), g.norm()));
    }
    c.at_most("lift residual over 20 samples", lift, 1e-8);
    c.at_most("project(lift) - identity over 20 samples", round, 1e-10);

    let s = DualSetting::new(inner_symbol(&b(0.5)), z(2), z(2));
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let phi = vec![
            FourierVector::from_coeffs(5, random_coeffs(&mut rng, 11))?,
            FourierVector::from_coeffs(5, random_coeffs(&mut rng, 11))?,
        ];
        let psi = s.apply_paired(&phi);
        let (f, g) = s.project(&phi, &psi);
        worst = worst.max(relative(s.apply(&f).sub(&g).norm(), g.norm().max(1.0)));
    }
    c.at_most("projected paired solutions solve D f = g", worst, 1e-8);
    Ok(())
}

fn thm_4_2(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, phi, theta) in extension_cases() {
        let kd = dual_kernel(&phi, &theta, ctx, label)?;
        let kp = paired_kernel(&phi, &theta, false, ctx, label)?;
        c.equal(format!("{label}: dim ker D"), kd.dimension, 1);
        c.equal(format!("{label}: dim ker paired"), kp.dimension, kd.dimension);
    }
    Ok(())
}

fn thm_5_1(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, phi, theta) in extension_cases() {
        let kd = dual_kernel(&phi, &theta, ctx, label)?;
        let (inv, _) = invert_symbol(&phi, ctx.n)?;
        let ka = gap_checked(kernel(&truncated_toeplitz_matrix(&inv, &theta, &theta, ctx.n)?, ctx.threshold), label)?;
        let g = g_matrix(&phi, &theta, &theta, ctx.n)?;
        let kg = kern(&block_toeplitz_matrix(&g.symbol, ctx.n)?, ctx, label)?;
        c.equal(format!("{label}: dim ker A_(phi^-1)"), ka.dimension, kd.dimension);
        c.equal(format!("{label}: dim ker T_G"), kg.dimension, kd.dimension);
    }
    Ok(())
}

fn thm_6_1(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, phi, theta) in extension_cases() {
        let s = DualSetting::square(phi.clone(), theta.clone());
        let kd = dual_kernel(&phi, &theta, ctx, label)?;
        let kp = paired_kernel(&phi, &theta, false, ctx, label)?;
        let fs = kernel_vectors(&kd, ctx.n);
        let images: Vec<Element> = fs.iter().map(|f| s.kernel_iso_n(f)).collect::<Result<_, _>>()?;
        let resid = images
            .iter()
            .map(|x| relative(element_norm(&s.apply_paired(x)), element_norm(x)))
            .fold(0.0, f64::max);
        c.at_most(format!("{label}: N(f) in ker paired"), resid, 1e-7);
        let coords = coordinates(&kp.domain, &images);
        let sv = singular_values(&coords);
        let spread = sv.last().copied().unwrap_or(1.0) / sv.first().copied().unwrap_or(1.0);
        c.at_least(format!("{label}: images independent"), spread, 1e-6);
        c.equal(format!("{label}: dim ker paired"), kp.dimension, kd.dimension);
        c.at_most(format!("{label}: angle N(ker D) vs ker paired"), subspace_sin_angle(&coords, &kp.vectors), 1e-6);
        let t = inner_symbol(&theta);
        let recovery = fs
            .iter()
            .zip(&images)
            .map(|(f, x)| relative(x[0].project_minus().add(&product(&t, &x[0].project_plus())).sub(f).norm(), f.norm()))
            .fold(0.0, f64::max);
        c.at_most(format!("{label}: (P- + theta P+) P1 N f = f"), recovery, 1e-10);
    }
    Ok(())
}

fn thm_6_2(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, phi, theta) in extension_cases() {
        let s = DualSetting::square(phi.clone(), theta.clone());
        let ks = dual_kernel(&phi.conj(), &theta, ctx, label)?;
        let kpa = paired_kernel(&phi, &theta, true, ctx, label)?;
        c.equal(format!("{label}: dim ker paired* = dim ker D*"), kpa.dimension, ks.dimension);
        let images: Vec<Element> = kernel_vectors(&ks, ctx.n)
            .iter()
            .map(|g| s.kernel_iso_nstar(g))
            .collect::<Result<_, _>>()?;
        let resid = images
            .iter()
            .map(|x| relative(element_norm(&s.apply_paired_adjoint(x)), element_norm(x)))
            .fold(0.0, f64::max);
        c.at_most(format!("{label}: N_*(g) in ker paired*"), resid, 1e-7);
        let coords = coordinates(&kpa.domain, &images);
        c.at_most(format!("{label}: angle N_*(ker D*) vs ker paired*"), subspace_sin_angle(&coords, &kpa.vectors), 1e-6);
    }
    Ok(())
}

fn thm_6_3(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, phi, theta) in extension_cases().into_iter().chain(conjugate_inner_cases()) {
        let s = DualSetting::square(phi.clone(), theta.clone());
        let kd = dual_kernel(&phi, &theta, ctx, label)?;
        let ks = dual_kernel(&phi.conj(), &theta, ctx, label)?;
        c.equal(format!("{label}: dim ker D* = dim ker D"), ks.dimension, kd.dimension);
        let fs = kernel_vectors(&kd, ctx.n);
        let images: Vec<FourierVector> = fs.iter().map(|f| s.kernel_iso_nd(f)).collect::<Result<_, _>>()?;
        let iso = fs
            .iter()
            .zip(&images)
            .map(|(f, g)| (g.norm() - f.norm()).abs())
            .fold(0.0, f64::max);
        c.at_most(format!("{label}: | ||C f|| - ||f|| |"), iso, 1e-10);
        let elems: Vec<Element> = images.into_iter().map(|g| vec![g]).collect();
        let coords = coordinates(&ks.domain, &elems);
        c.at_most(format!("{label}: angle C(ker D) vs ker D*"), subspace_sin_angle(&coords, &ks.vectors), 1e-6);
    }
    Ok(())
}

fn thm_6_6(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, phi, theta) in extension_cases() {
        let s = DualSetting::square(phi.clone(), theta.clone());
        let kd = dual_kernel(&phi, &theta, ctx, label)?;
        let (inv, _) = invert_symbol(&phi, ctx.n)?;
        let a = truncated_toeplitz_matrix(&inv, &theta, &theta, ctx.n)?;
        let ka = gap_checked(kernel(&a, ctx.threshold), label)?;
        c.equal(format!("{label}: dim ker A_(phi^-1) = dim ker D"), ka.dimension, kd.dimension);
        let fs = kernel_vectors(&kd, ctx.n);
        let images: Vec<FourierVector> = fs.iter().map(|f| s.kernel_iso_nda(f)).collect::<Result<_, _>>()?;
        let p = ModelProjector::new(&theta, 2 * ctx.n + inv.radius());
        let (mut in_kernel, mut back) = (0.0f64, 0.0f64);
        for (f, g) in fs.iter().zip(&images) {
            let h = product(&inv, g);
            in_kernel = in_kernel.max(relative(p.p(&h).norm(), g.norm()));
            back = back.max(relative(h.sub(f).norm(), f.norm()));
        }
        c.at_most(format!("{label}: phi f in ker A_(phi^-1)"), in_kernel, 1e-7);
        c.at_most(format!("{label}: phi^-1 (phi f) = f"), back, 1e-7);
        let elems: Vec<Element> = images.into_iter().map(|g| vec![g]).collect();
        let coords = coordinates(&a.domain, &elems);
        c.at_most(format!("{label}: angle phi ker D vs ker A"), subspace_sin_angle(&coords, &ka.vectors), 1e-6);
    }
    Ok(())
}

fn cor_6_4(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, phi, theta) in extension_cases().into_iter().chain(conjugate_inner_cases()) {
        let profile = section_profile(|k| dual_truncated_matrix(&phi, &theta, &theta, k, k), ctx.n, ctx.threshold)?;
        c.holds(format!("{label}: Fredholm surrogate (sigma_min stable under doubling)"), profile.bounded_below);
        let kd = dual_kernel(&phi, &theta, ctx, label)?;
        let ks = dual_kernel(&phi.conj(), &theta, ctx, label)?;
        c.equal(format!("{label}: index 0 (dim ker D* = dim ker D)"), ks.dimension, kd.dimension);
    }
    Ok(())
}

fn thm_8_2(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (t, a, k, ker, coker, concl) in [
        (1usize, 1usize, 0i64, 0usize, 0usize, Conclusion::Invertible),
        (3, 1, 2, 0, 2, Conclusion::OnlyInjective),
        (1, 3, -2, 2, 0, Conclusion::OnlySurjective),
    ] {
        let label = format!("(theta, alpha) = (z^{t}, z^{a})");
        let s = DualSetting::new(sym(&[(0, 1.0)]), z(t), z(a));
        let h = default_h_data(&s, ctx.delta, &ctx.grid)?;
        let v = paired_injectivity_predicate(&s, &h, ctx.n.min(64), ctx.threshold, ctx.delta, &ctx.grid)?;
        c.holds(format!("{label}: hypotheses"), v.hypothesis_report.iter().filter(|h| h.name != "alpha divides theta").all(|h| h.status.ok()));
        c.push(format!("{label}: winding"), v.winding.unwrap_or(i64::MIN) as f64, Relation::Equal, k as f64);
        c.holds(format!("{label}: conclusion {concl:?}"), v.conclusion == concl);
        c.equal(format!("{label}: SVD ker"), v.svd_kernel_dimension.unwrap_or(usize::MAX), ker);
        c.equal(format!("{label}: SVD coker"), v.svd_cokernel_dimension.unwrap_or(usize::MAX), coker);
    }
    Ok(())
}

fn thm_8_3(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (t, a) in [(1usize, 1usize), (3, 1), (2, 2)] {
        let label = format!("(theta, alpha) = (z^{t}, z^{a})");
        let s = DualSetting::new(sym(&[(0, 1.0)]), z(t), z(a));
        let h = default_h_data(&s, ctx.delta, &ctx.grid)?;
        let v = paired_injectivity_predicate(&s, &h, ctx.n.min(64), ctx.threshold, ctx.delta, &ctx.grid)?;
        c.holds(format!("{label}: alpha | theta selects the injectivity result"), v.predicate_name == PredicateName::Thm8_3);
        let d = dual_truncated_matrix(&s.phi, &s.theta, &s.alpha, ctx.n, ctx.m)?;
        let kd = kern(&d, ctx, &label)?;
        c.equal(format!("{label}: ker D = 0"), kd.dimension, 0);
        c.holds(format!("{label}: invertible iff alpha = c theta"), v.invertible == Some(t == a));
    }
    Ok(())
}

fn thm_9_1(ctx: &Ctx, c: &mut Checks) -> TagResult {
    let phi = poly(&[0.0, 1.0]);
    let theta = z(3);
    for (l, expect) in [(0.5, false), (1.0, false), (2.0, true)] {
        let lambda = c64(l, 0.0);
        let v = analytic_spectrum_predicate(&phi, &theta, lambda, ctx.n, ctx.delta, &ctx.grid)?;
        let r = kernel_route_verdict(&phi.laurent(1)?, &theta, lambda, ctx.n / 2, ctx.threshold)?;
        c.holds(format!("lambda = {l}: corona verdict invertible = {expect}"), v.invertible == Some(expect));
        c.holds(format!("lambda = {l}: kernel route invertible = {expect}"), r.invertible == expect);
    }
    Ok(())
}

fn thm_9_2(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, g, fredholm, invertible, dim) in [
        ("A_z on z^2", poly(&[0.0, 1.0]), true, false, 1usize),
        ("A_(z+2) on z^2", poly(&[2.0, 1.0]), true, true, 0),
    ] {
        let v = truncated_toeplitz_predicate(&g, &z(2), ctx.n.min(64), ctx.threshold, ctx.delta, &ctx.grid)?;
        c.holds(format!("{label}: Fredholm = {fredholm}"), v.fredholm == Some(fredholm));
        c.holds(format!("{label}: invertible = {invertible}"), v.invertible == Some(invertible));
        c.equal(format!("{label}: SVD kernel"), v.svd_kernel_dimension.unwrap_or(usize::MAX), dim);
        c.at_most(format!("{label}: predicted vs SVD kernel angle"), v.subspace_sin_angle.unwrap_or(f64::INFINITY), 1e-6);
        c.holds(format!("{label}: agrees"), v.agrees);
    }
    Ok(())
}

fn thm_9_3(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, inv, theta, invertible, dim) in [
        ("phi^-1 = 1 - z/2, theta = z^2", poly(&[1.0, -0.5]), z(2), true, 0usize),
        ("phi^-1 = z, theta = z b_1/2", poly(&[0.0, 1.0]), z(1).mul(&b(0.5)), false, 1),
    ] {
        let v = inverse_analytic_predicates(&inv, &theta, InverseKind::Analytic, ctx.n, ctx.threshold, ctx.delta, &ctx.grid)?;
        c.holds(format!("{label}: invertible = {invertible}"), v.invertible == Some(invertible));
        c.equal(format!("{label}: SVD kernel"), v.svd_kernel_dimension.unwrap_or(usize::MAX), dim);
        c.at_most(format!("{label}: forward residual"), v.forward_residual.unwrap_or(f64::INFINITY), 1e-8);
        c.at_most(format!("{label}: predicted vs SVD kernel angle"), v.subspace_sin_angle.unwrap_or(f64::INFINITY), 1e-6);
        c.holds(format!("{label}: agrees"), v.agrees);
    }
    Ok(())
}

fn cor_9_6(ctx: &Ctx, c: &mut Checks) -> TagResult {
    for (label, _, theta) in conjugate_inner_cases() {
        let v = inverse_analytic_predicates(
            &theta.to_rational(),
            &theta,
            InverseKind::Analytic,
            ctx.n,
            ctx.threshold,
            ctx.delta,
            &ctx.grid,
        )?;
        c.equal(format!("theta = {label}: dim ker = deg theta"), v.svd_kernel_dimension.unwrap_or(usize::MAX), theta.degree());
        c.at_most(format!("theta = {label}: angle theta K_theta vs ker"), v.subspace_sin_angle.unwrap_or(f64::INFINITY), 1e-6);
    }
    for (label, theta) in [("z b_1/2", z(1).mul(&b(0.5))), ("b_1/2", b(0.5))] {
        let t = inner_symbol(&theta);
        let s = DualSetting::square(t.conj(), theta.clone());
        let r = s.relative_residual(&t);
        let member = r <= ctx.residual;
        let vanishes = theta.at_origin().norm() < 1e-12;
        c.push(format!("theta = {label}: ||D theta|| / ||theta||"), r, if vanishes { Relation::AtMost } else { Relation::AtLeast }, ctx.residual);
        c.holds(format!("theta = {label}: theta in ker iff theta(0) = 0"), member == vanishes);
    }
    Ok(())
}

fn thm_9_8_sample(ctx: &Ctx, c: &mut Checks) -> TagResult {
    // phi(T) is the ellipse 1.5 cos t + 0.5 i sin t
    let phi = sym(&[(-1, 0.5), (1, 1.0)]);
    let theta = z(2);
    for (label, lambda, on_curve) in [
        ("lambda = 1.5 (on phi(T))", c64(1.5, 0.0), true),
        ("lambda = 0.5i (on phi(T))", c64(0.0, 0.5), true),
        ("lambda = 0 (inside)", c64(0.0, 0.0), false),
        ("lambda = 3 (outside)", c64(3.0, 0.0), false),
    ] {
        let r = kernel_route_verdict(&phi, &theta, lambda, ctx.n / 2, ctx.threshold)?;
        c.holds(format!("{label}: Fredholm surrogate = {}", !on_curve), r.fredholm != on_curve);
    }
    Ok(())
}

fn thm_9_10(ctx: &Ctx, c: &mut Checks) -> TagResult {
    let n = ctx.n;
    let k = rational_kernel_solve(&poly(&[0.0, 1.0]), &z(2), n, ctx.m, ctx.threshold)?;
    c.equal("R = z, theta = z^2: dim", k.dimension, 1);
    c.holds(
        "R = z, theta = z^2: basis conj(z)",
        k.basis.len() == 1 && k.basis[0].len() == 1 && k.basis[0][0].label == "[0]z^-1",
    );
    for (label, r) in [("R = z - 1.5", poly(&[-1.5, 1.0])), ("R = 1", poly(&[1.0]))] {
        let k = rational_kernel_solve(&r, &z(2), n, ctx.m, ctx.threshold)?;
        c.equal(format!("{label}, theta = z^2: dim"), k.dimension, 0);
    }
    let quotient = RationalFunction::new(vec![c64(-0.3, 0.0), ONE], vec![ONE, c64(-0.5, 0.0)])?;
    for (label, r, theta) in [
        ("R = z, theta = z^2", poly(&[0.0, 1.0]), z(2)),
        ("R = (z - 0.3)/(1 - z/2), theta = z b_1/2", quotient, z(1).mul(&b(0.5))),
    ] {
        let k = gap_checked(rational_kernel_solve(&r, &theta, n, ctx.m, ctx.threshold)?, label)?;
        let svd = dual_kernel(&r.laurent(n)?, &theta, ctx, label)?;
        c.equal(format!("{label}: solver dim = SVD dim"), k.dimension, svd.dimension);
        c.at_most(format!("{label}: solver vs SVD angle"), subspace_sin_angle(&k.vectors, &svd.vectors), 1e-6);
    }
    Ok(())
}

fn scan(symbol: &RationalFunction, theta: &BlaschkeProduct, grid: ScanGrid, ctx: &Ctx) -> Result<SpectrumReport, TagError> {
    let rep = spectrum_scan(&SpectralSymbol::Rational(symbol.clone()), theta, &grid, ctx.n, ctx.m, ctx.threshold)?;
    if rep.ambiguous_points > 0 {
        return Err(TagError::Ambiguous(format!("{} ambiguous grid points", rep.ambiguous_points)));
    }
    Ok(rep)
}

fn lam(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// Point-spectrum classification against the disk `|lambda - center| < 1`:
/// the number of definite grid points classified against that rule.
fn disk_mismatches(rep: &SpectrumReport, center: Complex64, disk_is_point_spectrum: bool) -> usize {
    rep.points
        .iter()
        .filter(|p| p.verdict.is_definite() && p.verdict != Verdict::NonFredholm)
        .filter(|p| {
            let inside = (lam(p.lambda) - center).norm() < 1.0;
            let hit = p.kernel_dimension.is_some_and(|d| d > 0);
            hit != (inside && disk_is_point_spectrum)
        })
        .count()
}

fn thm_9_11(ctx: &Ctx, c: &mut Checks) -> TagResult {
    let grid = ScanGrid {
        re: [-0.5, 3.5],
        im: [-1.5, 1.5],
        step: 0.25,
    };
    let rep = scan(&poly(&[2.0, 1.0]), &z(2), grid, ctx)?;
    let at = |x: f64, y: f64| rep.points.iter().find(|p| (lam(p.lambda) - c64(x, y)).norm() < 1e-12);
    c.holds("z + 2: lambda = 0 invertible", at(0.0, 0.0).is_some_and(|p| p.verdict == Verdict::Invertible));
    c.holds("z + 2: lambda = 3 on R(T) is not Fredholm", at(3.0, 0.0).is_some_and(|p| p.verdict == Verdict::NonFredholm));
    c.equal("z + 2: hits exactly inside |lambda - 2| < 1", disk_mismatches(&rep, c64(2.0, 0.0), true), 0);
    let off = rep
        .points
        .iter()
        .filter(|p| p.verdict == Verdict::NonFredholm)
        .filter(|p| ((lam(p.lambda) - c64(2.0, 0.0)).norm() - 1.0).abs() > 1e-9)
        .count();
    c.equal("z + 2: non-Fredholm only on R(T)", off, 0);
    Ok(())
}

fn thm_9_12(ctx: &Ctx, c: &mut Checks) -> TagResult {
    let lambdas = [c64(0.0, 0.0), c64(0.3, 0.2), c64(0.6, 0.0)];
    for l in lambdas {
        let r = dual_shift_kernel(&z(2), l, ctx.n, ctx.m, ctx.threshold)?;
        let label = format!("theta = z^2, lambda = {l}");
        c.equal(format!("{label}: dim"), r.kernel.dimension, 1);
        c.equal(format!("{label}: SVD dim"), r.svd_dimension, 1);
        c.at_most(format!("{label}: residual"), r.residual.unwrap_or(f64::INFINITY), 1e-6);
        c.at_most(format!("{label}: closed form vs SVD angle"), r.subspace_sin_angle, 1e-6);
    }
    for l in lambdas {
        let r = dual_shift_kernel(&b(0.5), l, ctx.n, ctx.m, ctx.threshold)?;
        let label = format!("theta = b_1/2, lambda = {l}");
        c.equal(format!("{label}: SVD dim"), r.svd_dimension, 0);
        c.at_least(format!("{label}: min interior singular value"), r.min_interior_singular_value, 0.05);
    }
    Ok(())
}

/// Definite verdicts that differ between two scans at shared grid points.
pub fn verdict_flips(coarse: &SpectrumReport, fine: &SpectrumReport) -> usize {
    let key = |p: [f64; 2]| ((p[0] * 1e6).round() as i64, (p[1] * 1e6).round() as i64);
    let fine: BTreeMap<(i64, i64), Verdict> = fine.points.iter().map(|p| (key(p.lambda), p.verdict)).collect();
    coarse
        .points
        .iter()
        .filter(|p| p.verdict.is_definite())
        .filter(|p| fine.get(&key(p.lambda)).is_some_and(|v| v.is_definite() && *v != p.verdict))
        .count()
}

fn cor_9_13(ctx: &Ctx, c: &mut Checks) -> TagResult {
    let square = |step: f64| ScanGrid {
        re: [-1.5, 1.5],
        im: [-1.5, 1.5],
        step,
    };
    let zsym = poly(&[0.0, 1.0]);
    for (label, theta, disk) in [("theta = z^3", z(3), true), ("theta = b_1/2", b(0.5), false)] {
        let coarse = scan(&zsym, &theta, square(0.1), ctx)?;
        let fine = scan(&zsym, &theta, square(0.05), ctx)?;
        c.equal(format!("{label}: misclassified grid points"), disk_mismatches(&coarse, c64(0.0, 0.0), disk), 0);
        if !disk {
            c.equal(format!("{label}: point hits"), coarse.point_spectrum_hits.len(), 0);
        }
        c.equal(format!("{label}: verdict flips 0.1 -> 0.05"), verdict_flips(&coarse, &fine), 0);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use dtto_core::analysis::SpectrumPoint;

    #[test]
    fn suite_covers_every_tag_in_order() {
        let names: Vec<&str> = SUITE.iter().map(|t| t.name).collect();
        assert_eq!(names, TAGS);
    }

    fn point(re: f64, verdict: Verdict) -> SpectrumPoint {
        SpectrumPoint {
            lambda: [re, 0.0],
            distance_to_essential: 1.0,
            kernel_dimension: None,
            ambiguous: false,
            verdict,
        }
    }

    fn report(points: Vec<SpectrumPoint>) -> SpectrumReport {
        SpectrumReport {
            essential_samples: Vec::new(),
            point_spectrum_hits: Vec::new(),
            grid: ScanGrid {
                re: [0.0, 0.2],
                im: [0.0, 0.0],
                step: 0.05,
            },
            window: 16,
            shifts: 16,
            points,
            ambiguous_points: 0,
        }
    }

    #[test]
    fn flips_count_only_definite_disagreements() {
        let coarse = report(vec![
            point(0.0, Verdict::Invertible),
            point(0.1, Verdict::FredholmNoninvertible),
            point(0.2, Verdict::EssentialAdjacent),
        ]);
        let fine = report(vec![
            point(0.0, Verdict::FredholmNoninvertible),
            point(0.05, Verdict::Invertible),
            point(0.1, Verdict::EssentialAdjacent),
            point(0.2, Verdict::Invertible),
        ]);
        assert_eq!(verdict_flips(&coarse, &fine), 1);
    }

    #[test]
    fn window_gate_is_a_precondition() {
        let cfg = crate::config::ProblemConfig::default().resolve(Some("16")).unwrap();
        let (summary, _) = run_suite(&cfg, Some("T6.3"));
        assert_eq!(summary.tags[0].status, TagStatus::WindowPrecondition);
        assert_eq!(summary.failed, 0);
    }
}
