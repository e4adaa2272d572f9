use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::FourierVector;
use crate::inner_rational::BlaschkeProduct;
use crate::operators::{inner_symbol, paired_symbols, product, ModelProjector, PairedSymbolPair, SymbolMatrix};
use crate::spaces::Element;

/// Relative residual `||D f|| / ||f||` accepted as "f is in the kernel".
pub const KERNEL_RESIDUAL_TOLERANCE: f64 = 1e-8;

/// The data `(phi, theta, alpha)` of `D_phi^{theta,alpha}`, with exact
/// function-level actions of the operator and of the maps around it.
#[derive(Clone, Debug)]
pub struct DualSetting {
    pub phi: FourierVector,
    pub theta: BlaschkeProduct,
    pub alpha: BlaschkeProduct,
}

/// Terms of `||D(theta f)||^2 = ||P^- phi theta f||^2 + ||P^+ conj(alpha) phi theta f||^2`
/// together with the lower bound `||T_{conj(alpha) theta phi} f||^2`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnergySplit {
    pub lhs: f64,
    pub minus_part: f64,
    pub plus_part: f64,
    pub toeplitz_lower: f64,
}

impl EnergySplit {
    pub fn defect(&self) -> f64 {
        (self.lhs - self.minus_part - self.plus_part).abs()
    }
}

fn with_headroom(f: &FourierVector, extra: usize) -> FourierVector {
    f.with_radius(f.radius() + extra)
}

impl DualSetting {
    pub fn new(phi: FourierVector, theta: BlaschkeProduct, alpha: BlaschkeProduct) -> Self {
        DualSetting { phi, theta, alpha }
    }

    /// `alpha = theta`.
    pub fn square(phi: FourierVector, theta: BlaschkeProduct) -> Self {
        DualSetting {
            phi,
            alpha: theta.clone(),
            theta,
        }
    }

    /// The adjoint data `(conj(phi), alpha, theta)`.
    pub fn adjoint(&self) -> DualSetting {
        DualSetting {
            phi: self.phi.conj(),
            theta: self.alpha.clone(),
            alpha: self.theta.clone(),
        }
    }

    fn theta_symbol(&self) -> FourierVector {
        inner_symbol(&self.theta)
    }

    fn alpha_symbol(&self) -> FourierVector {
        inner_symbol(&self.alpha)
    }

    fn projector(&self, g: &FourierVector) -> ModelProjector {
        ModelProjector::new(&self.alpha, g.radius())
    }

    /// `Q_alpha(phi f)`, exact.
    pub fn apply(&self, f: &FourierVector) -> FourierVector {
        let pf = product(&self.phi, f);
        self.projector(&pf).q(&pf)
    }

    /// `||D f|| / ||f||` (0 for `f = 0`).
    pub fn relative_residual(&self, f: &FourierVector) -> f64 {
        let n = f.norm();
        if n == 0.0 {
            0.0
        } else {
            self.apply(f).norm() / n
        }
    }

    fn require_kernel(&self, f: &FourierVector) -> Result<()> {
        let r = self.relative_residual(f);
        if r > KERNEL_RESIDUAL_TOLERANCE {
            return Err(Error::NotInKernel {
                residual: r,
                tolerance: KERNEL_RESIDUAL_TOLERANCE,
            });
        }
        Ok(())
    }

    /// `f = f_- + theta f~_+` split as `(P^- f, P^+(conj(theta) f))`.
    pub fn split(&self, f: &FourierVector) -> (FourierVector, FourierVector) {
        (f.project_minus(), product(&self.theta_symbol().conj(), f).project_plus())
    }

    /// `g = g_- + alpha g~_+` split as `(P^- g, P^+(conj(alpha) g))`.
    pub fn split_codomain(&self, g: &FourierVector) -> (FourierVector, FourierVector) {
        (g.project_minus(), product(&self.alpha_symbol().conj(), g).project_plus())
    }

    pub fn paired_symbols(&self) -> PairedSymbolPair {
        paired_symbols(&self.phi, &self.theta, &self.alpha)
    }

    /// `(A P^+ + B P^-) x`, exact.
    pub fn apply_paired(&self, x: &[FourierVector]) -> Element {
        let pair = self.paired_symbols();
        let plus: Vec<FourierVector> = x.iter().map(|v| v.project_plus()).collect();
        let minus: Vec<FourierVector> = x.iter().map(|v| v.project_minus()).collect();
        let u = apply_symbol(&pair.a, &plus);
        let v = apply_symbol(&pair.b, &minus);
        u.iter().zip(&v).map(|(p, q)| p.add(q)).collect()
    }

    /// `(P^+ A^* + P^- B^*) x`, exact.
    pub fn apply_paired_adjoint(&self, x: &[FourierVector]) -> Element {
        let pair = self.paired_symbols();
        let u = apply_symbol(&conj_transpose(&pair.a), x);
        let v = apply_symbol(&conj_transpose(&pair.b), x);
        u.iter()
            .zip(&v)
            .map(|(p, q)| p.project_plus().add(&q.project_minus()))
            .collect()
    }

    /// Lift of a pair `(f, g)` to `(Phi, Psi)` with
    /// `Phi = (f_- + f~_+, (1 + conj(alpha)) P_alpha(phi f))` and
    /// `Psi = (g_- + alpha g~_+, conj(alpha) g_- + g~_+)`.
    pub fn lift(&self, f: &FourierVector, g: &FourierVector) -> (Element, Element) {
        let (fm, fp) = self.split(f);
        let pf = product(&self.phi, f);
        let pa = self.projector(&pf).p(&pf);
        let ac = self.alpha_symbol().conj();
        let phi = vec![fm.add(&fp), pa.add(&product(&ac, &pa))];
        let (gm, gp) = self.split_codomain(g);
        let psi = vec![
            gm.add(&product(&self.alpha_symbol(), &gp)),
            product(&ac, &gm).add(&gp),
        ];
        (phi, psi)
    }

    /// `f = P^- phi_1 + theta P^+ phi_1`, `g = P^- psi_1 + alpha P^+ psi_2`.
    pub fn project(&self, phi: &[FourierVector], psi: &[FourierVector]) -> (FourierVector, FourierVector) {
        let f = phi[0]
            .project_minus()
            .add(&product(&self.theta_symbol(), &phi[0].project_plus()));
        let g = psi[0]
            .project_minus()
            .add(&product(&self.alpha_symbol(), &psi[1].project_plus()));
        (f, g)
    }

    /// `N(f) = (f_- + f~_+, phi (1 + conj(alpha)) f)` on the kernel of `D`.
    pub fn kernel_iso_n(&self, f: &FourierVector) -> Result<Element> {
        self.require_kernel(f)?;
        let (fm, fp) = self.split(f);
        let pf = product(&self.phi, f);
        let second = pf.add(&product(&self.alpha_symbol().conj(), &pf));
        Ok(vec![fm.add(&fp), second])
    }

    /// `N_*(g_- + alpha g~_+) = (g_-, g~_+)` on the kernel of `D^*`.
    pub fn kernel_iso_nstar(&self, g: &FourierVector) -> Result<Element> {
        self.adjoint().require_kernel(g)?;
        let (gm, gp) = self.split_codomain(g);
        Ok(vec![gm, gp])
    }

    /// `N_D(f_- + theta f~_+) = conj(z f~_+) + theta conj(z f_-)`, which is
    /// `C_theta f`. Needs `alpha = theta`.
    pub fn kernel_iso_nd(&self, f: &FourierVector) -> Result<FourierVector> {
        if self.alpha != self.theta {
            return Err(Error::InvalidInput("N_D needs alpha = theta".into()));
        }
        self.require_kernel(f)?;
        Ok(self.conjugate(f))
    }

    /// `C_theta f = conj(z f~_+) + theta conj(z f_-)` without the kernel check.
    pub fn conjugate(&self, f: &FourierVector) -> FourierVector {
        let (fm, fp) = self.split(f);
        let zc = |v: &FourierVector| with_headroom(v, 1).shifted(1).0.conj();
        zc(&fp).add(&product(&self.theta_symbol(), &zc(&fm)))
    }

    /// `N_DA(f) = phi f`, landing in the kernel of `A^{alpha,theta}_{phi^{-1}}`.
    pub fn kernel_iso_nda(&self, f: &FourierVector) -> Result<FourierVector> {
        let grid = self.phi.to_grid((8 * self.phi.radius() + 64).next_power_of_two())?;
        let min = grid.min_modulus();
        if min < 1e-10 * grid.sup_norm().max(1.0) {
            return Err(Error::NonInvertibleSymbol { min_modulus: min });
        }
        self.require_kernel(f)?;
        Ok(product(&self.phi, f))
    }

    /// The energy identity on `theta f` for analytic `f`.
    pub fn energy_split(&self, f: &FourierVector) -> Result<EnergySplit> {
        if !f.is_analytic(0.0) {
            return Err(Error::InvalidInput("energy split needs an analytic vector".into()));
        }
        let tf = product(&self.theta_symbol(), f);
        let ptf = product(&self.phi, &tf);
        let minus = ptf.project_minus().norm_sqr();
        let plus = product(&self.alpha_symbol().conj(), &ptf).project_plus().norm_sqr();
        let lhs = self.apply(&tf).norm_sqr();
        let sym = product(&product(&self.alpha_symbol().conj(), &self.theta_symbol()), &self.phi);
        let toeplitz = product(&sym, f).project_plus().norm_sqr();
        Ok(EnergySplit {
            lhs,
            minus_part: minus,
            plus_part: plus,
            toeplitz_lower: toeplitz,
        })
    }
}

fn apply_symbol(m: &SymbolMatrix, x: &[FourierVector]) -> Element {
    (0..2)
        .map(|i| product(&m[i][0], &x[0]).add(&product(&m[i][1], &x[1])))
        .collect()
}

fn conj_transpose(m: &SymbolMatrix) -> SymbolMatrix {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}

/// L2 distance between two elements over all summands.
pub fn element_distance(x: &[FourierVector], y: &[FourierVector]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a.sub(b).norm_sqr()).sum::<f64>().sqrt()
}

pub fn element_norm(x: &[FourierVector]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}
