//! Dry-run parameter validation: truncation sizes from the tail-mass
//! rule, and crude memory/time forecasts. No experiment computation.

use kerr_core::specfun::{laguerre_f, ln_factorial};

/// Truncation cutoff forecast by the tail-mass rule used in state
/// construction: first index past the distribution mode whose probability
/// drops below `tol * 1e-3`.
pub fn truncation_forecast(nu: f64, m: u32, tol: f64) -> usize {
    if nu == 0.0 {
        return m as usize;
    }
    let ln_nu = nu.ln();
    let ln_norm = ln_factorial(m) + laguerre_f(m, 0, -nu).ln();
    let ln_cut = tol.ln() - 3.0 * core::f64::consts::LN_10;
    let mut mode_ln_p = f64::NEG_INFINITY;
    let mut mode_n = m as usize;
    for n in m..65_536 {
        let k = n - m;
        let ln_p = -nu + k as f64 * ln_nu + ln_factorial(n) - 2.0 * ln_factorial(k) - ln_norm;
        if ln_p > mode_ln_p {
            mode_ln_p = ln_p;
            mode_n = n as usize;
        }
        if n as usize > mode_n && ln_p < ln_cut {
            return n as usize;
        }
    }
    65_536
}

/// A validation report for one resolved recipe.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub warnings: Vec<String>,
    pub rejections: Vec<String>,
}

impl Report {
    pub fn reject(&mut self, field: &str, why: &str) {
        self.rejections.push(format!("{field}: {why}"));
    }

    pub fn note(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn ok(&self) -> bool {
        self.rejections.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        for w in &self.warnings {
            out.push_str("  warning: ");
            out.push_str(w);
            out.push('\n');
        }
        for r in &self.rejections {
            out.push_str("  rejected ");
            out.push_str(r);
            out.push('\n');
        }
        out
    }
}

/// Rough wall-time forecast from a flop count at 1 Gflop/s.
pub fn seconds_from_flops(flops: f64) -> f64 {
    flops / 1e9
}

/// Smallest `N_tot` cutoff keeping the initial-state weight beyond it
/// under 1e-10 (the block-retention rule of the two-mode evolution).
pub fn n_tot_forecast(field: &kerr_core::states::ModeSpec) -> anyhow::Result<usize> {
    let initial = kerr_core::twomode::ProductInitialState::new(*field);
    Ok(kerr_core::twomode::required_n_tot(&initial, 1e-10)?)
}
