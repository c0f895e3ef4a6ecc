//! Machine-readable report rows shared by the library and the CLI.

use serde::{Deserialize, Serialize};

/// One time step of an overlap run. `simulated`/`abs_diff` are `null` in
/// analytic-only mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapRow {
    pub n: usize,
    pub t: usize,
    pub analytic: Option<f64>,
    pub simulated: Option<f64>,
    pub abs_diff: Option<f64>,
    /// The asymptotic envelope `n^20 β^{2n}/n!`.
    pub bound_rhs: f64,
    /// Classical uniform mass on a class of full cycles: `1/n`.
    pub classical_uniform: f64,
}

/// Outcome of one named invariant check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Free-form context: sizes, horizons, measured side values.
    pub detail: String,
}

impl CheckResult {
    pub fn new(
        name: impl Into<String>,
        max_error: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        CheckResult {
            name: name.into(),
            max_error,
            tolerance,
            pass: max_error <= tolerance,
            detail: detail.into(),
        }
    }
}

/// Summary of a `verify` run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub extended: bool,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}
