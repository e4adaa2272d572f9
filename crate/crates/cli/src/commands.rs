//! The `build`, `kernel` and `spectrum` subcommands.

use std::path::Path;

use dtto_core::analysis::{kernel_interior, rational_kernel_solve, spectrum_scan, KernelReport, SpectrumReport};
use dtto_core::fourier::FourierVector;
use dtto_core::linalg::subspace_sin_angle;
use dtto_core::operators::{
    block_toeplitz_matrix, dual_truncated_matrix, extension_e_matrix, extension_f_matrix, g_matrix, inner_symbol,
    paired_operator_matrix, paired_symbols, toeplitz_matrix, truncated_toeplitz_matrix, OperatorMatrix,
};
use serde::Serialize;

use crate::config::{OperatorKind, ResolvedConfig};
use crate::error::{CliError, CliResult};
use crate::report::{write_json, write_text, RunReport};

/// What a command hands back to `main` for stdout; files are already written.
pub struct Outcome {
    pub stdout: String,
}

#[derive(Debug, Serialize)]
pub struct MatrixSummary {
    pub name: String,
    pub shape: [usize; 2],
    pub interior_columns: usize,
    pub json: String,
    pub csv: String,
}

#[derive(Debug, Serialize)]
pub struct BuildResults {
    pub operator: OperatorKind,
    pub matrices: Vec<MatrixSummary>,
}

/// Matrices for the requested operator, with their file stems.
pub fn build_matrices(cfg: &ResolvedConfig) -> CliResult<Vec<(String, OperatorMatrix)>> {
    let n = cfg.window;
    let out = match cfg.operator {
        OperatorKind::Toeplitz => vec![("toeplitz".into(), toeplitz_matrix(&cfg.symbol_fourier()?, n)?)],
        OperatorKind::Truncated => vec![(
            "truncated".into(),
            truncated_toeplitz_matrix(&cfg.symbol_fourier()?, cfg.theta()?, cfg.alpha()?, n)?,
        )],
        OperatorKind::Dual => vec![(
            "dual".into(),
            dual_truncated_matrix(&cfg.symbol_fourier()?, cfg.theta()?, cfg.alpha()?, n, cfg.dual)?,
        )],
        OperatorKind::Paired => {
            let pair = paired_symbols(&cfg.symbol_fourier()?, cfg.theta()?, cfg.alpha()?);
            vec![("paired".into(), paired_operator_matrix(&pair, n)?)]
        }
        OperatorKind::Block => {
            // the block symbol [[conj(theta), 0], [phi, alpha]] of A_phi^{theta,alpha}
            let zero = FourierVector::zeros(0);
            let sym = [
                [inner_symbol(cfg.theta()?).conj(), zero],
                [cfg.symbol_fourier()?, inner_symbol(cfg.alpha()?)],
            ];
            vec![("block".into(), block_toeplitz_matrix(&sym, n)?)]
        }
        OperatorKind::E => vec![("E".into(), extension_e_matrix(cfg.alpha()?, n)?)],
        OperatorKind::F => {
            let (f, fi) = extension_f_matrix(&cfg.symbol_fourier()?, cfg.theta()?, cfg.alpha()?, n)?;
            vec![("F".into(), f), ("F_inverse".into(), fi)]
        }
        OperatorKind::G => {
            let g = g_matrix(&cfg.symbol_fourier()?, cfg.theta()?, cfg.alpha()?, n)?;
            vec![("G".into(), block_toeplitz_matrix(&g.symbol, n)?)]
        }
    };
    Ok(out)
}

pub fn cmd_build(cfg: ResolvedConfig, out: &Path) -> CliResult<Outcome> {
    let mats = build_matrices(&cfg)?;
    let mut summaries = Vec::new();
    for (stem, m) in &mats {
        let json = format!("{stem}.json");
        let csv = format!("{stem}.csv");
        write_json(out, &json, m)?;
        write_text(out, &csv, &m.to_csv())?;
        summaries.push(MatrixSummary {
            name: stem.clone(),
            shape: [m.nrows(), m.ncols()],
            interior_columns: m.interior_columns().len(),
            json,
            csv,
        });
    }
    let stdout = summaries
        .iter()
        .map(|s| format!("{}: {}x{} ({} interior columns)", s.name, s.shape[0], s.shape[1], s.interior_columns))
        .collect::<Vec<_>>()
        .join("\n");
    let results = BuildResults {
        operator: cfg.operator,
        matrices: summaries,
    };
    write_json(out, "report.json", &RunReport::new("build", cfg, results))?;
    Ok(Outcome { stdout })
}

#[derive(Debug, Serialize)]
pub struct RationalCrossCheck {
    pub dimension: usize,
    pub ambiguous: bool,
    pub subspace_sin_angle: f64,
}

#[derive(Debug, Serialize)]
pub struct KernelResults {
    pub kernel: KernelReport,
    /// Present for rational symbols with `alpha = theta`.
    pub rational_solver: Option<RationalCrossCheck>,
}

/// Interior-SVD kernel of `D_phi^{theta,alpha}`, cross-checked by the
/// polynomial solver when the symbol is rational and `alpha = theta`.
pub fn compute_kernel(cfg: &ResolvedConfig) -> CliResult<KernelResults> {
    let (theta, alpha) = (cfg.theta()?, cfg.alpha()?);
    let phi = cfg.symbol_fourier()?;
    let thr = cfg.tolerances.kernel_threshold;
    let op = dual_truncated_matrix(&phi, theta, alpha, cfg.window, cfg.dual)?;
    let kernel = kernel_interior(&op, thr);
    let rational_solver = match cfg.symbol()?.as_rational() {
        Some(r) if theta == alpha => {
            let k = rational_kernel_solve(r, theta, cfg.window, cfg.dual, thr)?;
            Some(RationalCrossCheck {
                dimension: k.dimension,
                ambiguous: k.ambiguous,
                subspace_sin_angle: subspace_sin_angle(&k.vectors, &kernel.vectors),
            })
        }
        _ => None,
    };
    Ok(KernelResults { kernel, rational_solver })
}

pub fn cmd_kernel(cfg: ResolvedConfig, out: &Path) -> CliResult<Outcome> {
    let results = compute_kernel(&cfg)?;
    let ambiguous = results.kernel.ambiguous || results.rational_solver.as_ref().is_some_and(|r| r.ambiguous);
    let dim = results.kernel.dimension;
    write_json(out, "kernel.json", &results.kernel)?;
    write_json(out, "report.json", &RunReport::new("kernel", cfg, &results))?;
    if ambiguous {
        return Err(CliError::Ambiguous(format!(
            "no clear singular-value gap at the kernel cut (gap ratio {:?})",
            results.kernel.gap_ratio
        )));
    }
    Ok(Outcome {
        stdout: format!("kernel dimension: {dim}"),
    })
}

#[derive(Debug, Serialize)]
pub struct SpectrumResults {
    pub summary: String,
    pub point_hits: usize,
    pub ambiguous_points: usize,
    pub json: &'static str,
    pub csv: &'static str,
}

pub fn compute_spectrum(cfg: &ResolvedConfig) -> CliResult<SpectrumReport> {
    let grid = cfg
        .grid
        .ok_or_else(|| CliError::Config("spectrum needs a `grid` block".into()))?;
    if !(grid.step >= 0.01) {
        return Err(CliError::Config(format!("grid step {} is below 0.01", grid.step)));
    }
    let symbol = cfg.symbol()?.spectral()?;
    Ok(spectrum_scan(
        &symbol,
        cfg.theta()?,
        &grid,
        cfg.window,
        cfg.dual,
        cfg.tolerances.kernel_threshold,
    )?)
}

pub fn cmd_spectrum(cfg: ResolvedConfig, out: &Path) -> CliResult<Outcome> {
    let rep = compute_spectrum(&cfg)?;
    write_json(out, "spectrum.json", &rep)?;
    write_text(out, "spectrum.csv", &rep.to_csv())?;
    let results = SpectrumResults {
        summary: rep.summary_line(),
        point_hits: rep.point_spectrum_hits.len(),
        ambiguous_points: rep.ambiguous_points,
        json: "spectrum.json",
        csv: "spectrum.csv",
    };
    let stdout = results.summary.clone();
    write_json(out, "report.json", &RunReport::new("spectrum", cfg, results))?;
    Ok(Outcome { stdout })
}
