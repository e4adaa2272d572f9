//! Problem descriptions read from JSON.

use std::path::Path;

use dtto_core::analysis::{ScanGrid, SpectralSymbol};
use dtto_core::fourier::FourierVector;
use dtto_core::inner_rational::{BlaschkeProduct, RationalFunction};
use dtto_core::{Complex64, Error};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Environment variable that overrides the default window size.
pub const WINDOW_ENV: &str = "DTTO_WINDOW";
pub const DEFAULT_WINDOW: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_kernel_threshold")]
    pub kernel_threshold: f64,
    #[serde(default = "default_corona_delta")]
    pub corona_delta: f64,
    #[serde(default = "default_residual")]
    pub residual: f64,
}

fn default_kernel_threshold() -> f64 {
    1e-8
}

fn default_corona_delta() -> f64 {
    1e-4
}

fn default_residual() -> f64 {
    1e-8
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            kernel_threshold: default_kernel_threshold(),
            corona_delta: default_corona_delta(),
            residual: default_residual(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigTerm {
    pub k: i64,
    pub c: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SymbolConfig {
    Rational(RationalFunction),
    TrigPoly { coeffs: Vec<TrigTerm> },
}

impl SymbolConfig {
    /// Fourier coefficients: rational symbols are expanded on the circle to
    /// `-radius..=radius`, trigonometric polynomials keep their own degree.
    pub fn fourier(&self, radius: usize) -> dtto_core::Result<FourierVector> {
        match self {
            SymbolConfig::Rational(r) => r.laurent(radius),
            SymbolConfig::TrigPoly { coeffs } => {
                let reach = coeffs.iter().map(|t| t.k.unsigned_abs() as usize).max().unwrap_or(0);
                let terms: Vec<(i64, Complex64)> =
                    coeffs.iter().map(|t| (t.k, Complex64::new(t.c[0], t.c[1]))).collect();
                FourierVector::from_terms(reach, &terms)
            }
        }
    }

    pub fn spectral(&self) -> dtto_core::Result<SpectralSymbol> {
        Ok(match self {
            SymbolConfig::Rational(r) => SpectralSymbol::Rational(r.clone()),
            SymbolConfig::TrigPoly { .. } => SpectralSymbol::Trig {
                coeffs: self.fourier(0)?,
            },
        })
    }

    pub fn as_rational(&self) -> Option<&RationalFunction> {
        match self {
            SymbolConfig::Rational(r) => Some(r),
            SymbolConfig::TrigPoly { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorKind {
    #[serde(rename = "toeplitz")]
    Toeplitz,
    #[serde(rename = "truncated")]
    Truncated,
    #[serde(rename = "dual")]
    Dual,
    #[serde(rename = "paired")]
    Paired,
    #[serde(rename = "block")]
    Block,
    E,
    F,
    G,
}

/// The config file as written by the user.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub symbol: Option<SymbolConfig>,
    pub theta: Option<BlaschkeProduct>,
    pub alpha: Option<BlaschkeProduct>,
    pub window: Option<usize>,
    pub dual: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub operator: Option<OperatorKind>,
    pub grid: Option<ScanGrid>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowSource {
    Config,
    Environment,
    Default,
}

/// The config with every default filled in; echoed into each report.
#[derive(Clone, Debug, Serialize)]
pub struct ResolvedConfig {
    pub symbol: Option<SymbolConfig>,
    pub theta: Option<BlaschkeProduct>,
    pub alpha: Option<BlaschkeProduct>,
    pub window: usize,
    pub window_source: WindowSource,
    pub dual: usize,
    pub tolerances: Tolerances,
    pub operator: OperatorKind,
    pub grid: Option<ScanGrid>,
}

impl ProblemConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        ProblemConfig::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Fills defaults; `env_window` is the value of [`WINDOW_ENV`], if set.
    pub fn resolve(self, env_window: Option<&str>) -> CliResult<ResolvedConfig> {
        let (window, window_source) = match (self.window, env_window) {
            (Some(n), _) => (n, WindowSource::Config),
            (None, Some(s)) => (
                s.trim()
                    .parse()
                    .map_err(|_| CliError::Config(format!("{WINDOW_ENV}={s:?} is not a window size")))?,
                WindowSource::Environment,
            ),
            (None, None) => (DEFAULT_WINDOW, WindowSource::Default),
        };
        if window == 0 {
            return Err(CliError::Config("window must be positive".into()));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("kernel_threshold", t.kernel_threshold),
            ("corona_delta", t.corona_delta),
            ("residual", t.residual),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(CliError::Config(format!("tolerance {name} = {v} must lie in (0, 1)")));
            }
        }
        let alpha = self.alpha.or_else(|| self.theta.clone());
        Ok(ResolvedConfig {
            symbol: self.symbol,
            theta: self.theta,
            alpha,
            window,
            window_source,
            dual: self.dual.unwrap_or(window),
            tolerances: self.tolerances,
            operator: self.operator.unwrap_or(OperatorKind::Dual),
            grid: self.grid,
        })
    }
}

impl ResolvedConfig {
    pub fn symbol(&self) -> CliResult<&SymbolConfig> {
        self.symbol.as_ref().ok_or_else(|| CliError::Config("missing field `symbol`".into()))
    }

    pub fn theta(&self) -> CliResult<&BlaschkeProduct> {
        self.theta.as_ref().ok_or_else(|| CliError::Config("missing field `theta`".into()))
    }

    pub fn alpha(&self) -> CliResult<&BlaschkeProduct> {
        self.alpha.as_ref().ok_or_else(|| CliError::Config("missing field `alpha` (or `theta`)".into()))
    }

    /// Symbol coefficients on the working window.
    pub fn symbol_fourier(&self) -> CliResult<FourierVector> {
        self.symbol()?.fourier(self.window).map_err(symbol_error)
    }
}

fn symbol_error(e: Error) -> CliError {
    CliError::Precondition(format!("symbol: {e}"))
}
