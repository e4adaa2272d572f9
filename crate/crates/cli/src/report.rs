//! Report envelopes and deterministic file output.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;

use crate::config::ResolvedConfig;
use crate::error::CliResult;

pub const TOOL: &str = "dtto";

/// Envelope written as `report.json`. Wall-clock timings go to a separate
/// file so identical inputs give byte-identical reports.
#[derive(Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub parallel: bool,
    pub config: ResolvedConfig,
    /// Every numeric tolerance that can influence the results.
    pub tolerances: BTreeMap<&'static str, f64>,
    pub results: T,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(command: &'static str, config: ResolvedConfig, results: T) -> Self {
        RunReport {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command,
            parallel: dtto_core::exec::is_parallel(),
            tolerances: tolerance_echo(&config),
            config,
            results,
        }
    }
}

/// Configured tolerances plus the fixed ones used inside the library.
pub fn tolerance_echo(config: &ResolvedConfig) -> BTreeMap<&'static str, f64> {
    let t = config.tolerances;
    BTreeMap::from([
        ("kernel_threshold", t.kernel_threshold),
        ("corona_delta", t.corona_delta),
        ("residual", t.residual),
        ("kernel_gap_ratio_min", dtto_core::linalg::MIN_GAP_RATIO),
        ("interior_column_tolerance", dtto_core::operators::INTERIOR_TOLERANCE),
        ("kernel_membership_tolerance", dtto_core::analysis::KERNEL_RESIDUAL_TOLERANCE),
        ("essential_curve_distance", 1e-9),
        ("essential_samples", 1024.0),
        ("subspace_angle", 1e-6),
        ("fredholm_surrogate_ratio", 0.9),
    ])
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub command: &'static str,
    pub total_seconds: f64,
    pub sections: BTreeMap<String, f64>,
}

impl Timings {
    pub fn new(command: &'static str, total: Duration) -> Self {
        Timings {
            command,
            total_seconds: total.as_secs_f64(),
            sections: BTreeMap::new(),
        }
    }
}

pub fn write_json<T: Serialize + ?Sized>(dir: &Path, name: &str, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    write_text(dir, name, &text)
}

pub fn write_text(dir: &Path, name: &str, text: &str) -> CliResult<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), text)?;
    Ok(())
}
