//! On-disk cache of block eigensystems, keyed by the Hamiltonian
//! parameters and the block cutoff.
//!
//! The file is plain text: one `lambda` line and one `vector` line per
//! eigenpair, with round-trip float formatting, so a reload reproduces
//! the in-memory eigensystem bit for bit.

use anyhow::{bail, Context, Result};
use kerr_core::twomode::{diagonalize_blocks, BlockEigensystem, TwoModeParams};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

fn key(params: &TwoModeParams, n_tot_max: usize) -> String {
    // exact decimal renderings keep distinct parameter sets distinct
    format!(
        "eig_w{}_w0{}_gam{}_g{}_N{}",
        params.omega, params.omega0, params.gamma, params.g, n_tot_max
    )
    .replace(['.', '-'], "_")
}

pub fn cache_path(dir: &Path, params: &TwoModeParams, n_tot_max: usize) -> PathBuf {
    dir.join(format!("{}.csv", key(params, n_tot_max)))
}

pub fn save(path: &Path, eig: &BlockEigensystem) -> Result<()> {
    let mut out = String::new();
    let n_tot_max = eig.n_tot_max();
    writeln!(
        out,
        "# omega,omega0,gamma,g,n_tot_max\n{},{},{},{},{}",
        eig.params.omega, eig.params.omega0, eig.params.gamma, eig.params.g, n_tot_max
    )?;
    for n in 0..=n_tot_max {
        let block = eig.block(n);
        for (s, lam) in block.values.iter().enumerate() {
            write!(out, "{n},{s},{lam}")?;
            for d in &block.vectors[s] {
                write!(out, ",{d}")?;
            }
            out.push('\n');
        }
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

pub fn load(path: &Path) -> Result<BlockEigensystem> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut lines = text.lines();
    let _comment = lines.next();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    if header.len() != 5 {
        bail!("{}: malformed header", path.display());
    }
    let params = TwoModeParams::new(
        header[0].parse()?,
        header[1].parse()?,
        header[2].parse()?,
        header[3].parse()?,
    );
    let n_tot_max: usize = header[4].parse()?;
    // rebuild by direct insertion
    let mut values: Vec<Vec<f64>> = (0..=n_tot_max).map(|n| vec![0.0; n + 1]).collect();
    let mut vectors: Vec<Vec<Vec<f64>>> =
        (0..=n_tot_max).map(|n| vec![vec![0.0; n + 1]; n + 1]).collect();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 3 {
            continue;
        }
        let n: usize = fields[0].parse()?;
        let s: usize = fields[1].parse()?;
        if n > n_tot_max || s > n || fields.len() != 3 + n + 1 {
            bail!("{}: malformed eigenpair row", path.display());
        }
        values[n][s] = fields[2].parse()?;
        for (k, f) in fields[3..].iter().enumerate() {
            vectors[n][s][k] = f.parse()?;
        }
    }
    Ok(BlockEigensystem::from_parts(params, values, vectors))
}

/// Load the eigensystem from `cache_dir` or compute and store it.
pub fn load_or_compute(
    cache_dir: Option<&Path>,
    params: &TwoModeParams,
    n_tot_max: usize,
) -> Result<BlockEigensystem> {
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, params, n_tot_max);
        if path.exists() {
            if let Ok(eig) = load(&path) {
                return Ok(eig);
            }
        }
        let eig = diagonalize_blocks(params, n_tot_max)?;
        std::fs::create_dir_all(dir)?;
        save(&path, &eig)?;
        Ok(eig)
    } else {
        Ok(diagonalize_blocks(params, n_tot_max)?)
    }
}
