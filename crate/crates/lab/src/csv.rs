//! CSV output with round-trip float formatting, and series input.

use anyhow::{bail, Context, Result};
use kerr_core::states::FockVector;
use kerr_core::tsa::TimeSeries;
use std::fmt::Write as _;
use std::path::Path;

/// A CSV table under construction: fixed column order, formatted rows.
pub struct Table {
    header: Vec<String>,
    rows: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            header: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_columns(columns: Vec<String>) -> Self {
        Table {
            header: columns,
            rows: Vec::new(),
        }
    }

    /// Push one row of floats; `{}` formatting round-trips f64 exactly.
    pub fn push(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.header.len());
        let mut line = String::new();
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            write!(line, "{v}").unwrap();
        }
        self.rows.push(line);
    }

    /// Push a row with leading text fields followed by floats.
    pub fn push_mixed(&mut self, text: &[&str], values: &[f64]) {
        assert_eq!(text.len() + values.len(), self.header.len());
        let mut line = String::new();
        for (i, t) in text.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(t);
        }
        for v in values {
            line.push(',');
            write!(line, "{v}").unwrap();
        }
        self.rows.push(line);
    }

    pub fn to_string(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_string())
            .with_context(|| format!("writing {}", path.display()))
    }
}

/// Debug dump of a Fock vector as `n, re, im`.
pub fn write_fock_csv(state: &FockVector, path: &Path) -> Result<()> {
    let mut table = Table::new(&["n", "re", "im"]);
    for (n, amp) in state.amps().iter().enumerate() {
        table.push(&[n as f64, amp.re, amp.im]);
    }
    table.write(path)
}

/// Read a series from CSV: either a single value column or `(t, value)`
/// rows (uniform `t` sets the step). A non-numeric first line is treated
/// as a header.
pub fn read_series_csv(path: &Path, label: &str) -> Result<TimeSeries> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut times: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
        let Some(nums) = parsed else {
            if lineno == 0 {
                continue; // header
            }
            bail!("{}:{}: non-numeric row", path.display(), lineno + 1);
        };
        match nums.len() {
            1 => values.push(nums[0]),
            2 => {
                times.push(nums[0]);
                values.push(nums[1]);
            }
            n => bail!(
                "{}:{}: expected 1 or 2 columns, found {n}",
                path.display(),
                lineno + 1
            ),
        }
    }
    let dt = if times.len() >= 2 {
        let dt = times[1] - times[0];
        for w in times.windows(2) {
            if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.abs() {
                bail!("{}: non-uniform time column", path.display());
            }
        }
        dt
    } else {
        1.0
    };
    Ok(TimeSeries::new(values, dt, label)?)
}
