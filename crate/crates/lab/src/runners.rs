//! Runner implementations: each turns a resolved parameter set into CSV
//! files under the output directory plus manifest entries.

use crate::cache;
use crate::csv::Table;
use crate::manifest::ManifestBuilder;
use crate::params::Params;
use anyhow::{bail, Context, Result};
use kerr_core::kerr::{
    autocorrelation_from_distribution, brute_force_evolve, ladder_moment, moment,
    moment_cs_closed_form, quadrature_cumulants, KerrParams, MomentRequest,
};
use kerr_core::squeezing::{d_q_pacs, squeeze_report};
use kerr_core::states::{make_state, phase_distribution, single_photon_probability, ModeSpec};
use kerr_core::tsa;
use kerr_core::twomode::{
    entropies, evolve, mean_photon_series, quadrature_stats, reduced_density, required_n_tot,
    ProductInitialState, Side, TwoModeParams,
};
use kerr_core::wigner::{density_matrix, nonclassicality_delta, wigner_evaluate};
use kerr_core::classical;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Runner {
    KerrSweep,
    MomentsVsNu,
    P1VsNu,
    PhaseDist,
    DqVsNu,
    DqVsTheta,
    SqueezeSweep,
    WignerGrid,
    DeltaSweep,
    TwoModeSweep,
    Spectrum,
    Lyapunov,
    Table61,
    Analyze,
    Classical,
    OracleCompare,
    TsaOracles,
}

impl Runner {
    pub fn run(&self, p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
        match self {
            Runner::KerrSweep => kerr_sweep(p, out, manifest),
            Runner::MomentsVsNu => moments_vs_nu(p, out, manifest),
            Runner::P1VsNu => p1_vs_nu(p, out, manifest),
            Runner::PhaseDist => phase_dist(p, out, manifest),
            Runner::DqVsNu => dq_vs_nu(p, out, manifest),
            Runner::DqVsTheta => dq_vs_theta(p, out, manifest),
            Runner::SqueezeSweep => squeeze_sweep(p, out, manifest),
            Runner::WignerGrid => wigner_grid(p, out, manifest),
            Runner::DeltaSweep => delta_sweep(p, out, manifest),
            Runner::TwoModeSweep => two_mode_sweep(p, out, manifest),
            Runner::Spectrum => spectrum(p, out, manifest),
            Runner::Lyapunov => lyapunov(p, out, manifest),
            Runner::Table61 => table_6_1(p, out, manifest),
            Runner::Analyze => analyze(p, out, manifest),
            Runner::Classical => classical_run(p, out, manifest),
            Runner::OracleCompare => oracle_compare(p, out, manifest),
            Runner::TsaOracles => tsa_oracles(p, out, manifest),
        }
    }
}

fn packet_spec(p: &Params) -> Result<ModeSpec> {
    let nu = p.f64("nu")?;
    if nu < 0.0 {
        bail!("nu: must be non-negative, got {nu}");
    }
    Ok(ModeSpec::photon_added(nu, p.f64("theta")?, p.u32("m")?))
}

/// Initial field mode of a two-mode run.
fn field_spec(p: &Params) -> Result<ModeSpec> {
    match p.text("field")? {
        "fock" => Ok(ModeSpec::fock(p.u32("n")?)),
        "cs" => {
            let nu = p.f64("nu")?;
            if nu < 0.0 {
                bail!("nu: must be non-negative, got {nu}");
            }
            Ok(ModeSpec::coherent(nu, p.f64("theta")?))
        }
        "pacs" => packet_spec(p),
        other => bail!("field: expected fock|cs|pacs, got `{other}`"),
    }
}

fn write_table(table: &Table, out: &Path, name: &str, manifest: &mut ManifestBuilder) -> Result<()> {
    let path = out.join(name);
    table.write(&path)?;
    manifest.record_output(&path)
}

fn kerr_sweep(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let spec = packet_spec(p)?;
    let params = KerrParams::new(p.f64("chi")?);
    let periods = p.f64("periods")?;
    let per = p.usize("samples_per_period")?;
    let n = (periods * per as f64).round() as usize;
    let probs = make_state(&spec, kerr_core::states::DEFAULT_TOL)?.photon_distribution();
    let rows: Vec<Result<[f64; 11]>> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let frac = k as f64 / per as f64;
            let t = frac * params.t_rev();
            let rec = quadrature_cumulants(&spec, &params, t)?;
            let c_t = autocorrelation_from_distribution(&probs, params.chi(), t);
            Ok([
                frac,
                rec.mean_x,
                rec.mean_p,
                rec.var_x,
                rec.var_p,
                rec.skew2_x,
                rec.skew2_p,
                rec.kurt_x - 3.0,
                rec.kurt_p - 3.0,
                rec.uncertainty_product,
                c_t,
            ])
        })
        .collect();
    let mut table = Table::new(&[
        "t_over_Trev",
        "mean_x",
        "mean_p",
        "var_x",
        "var_p",
        "beta1_x",
        "beta1_p",
        "beta2_x_minus3",
        "beta2_p_minus3",
        "uncertainty_product",
        "C_t",
    ]);
    for row in rows {
        table.push(&row?);
    }
    write_table(&table, out, "sweep.csv", manifest)
}

fn moments_vs_nu(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let ms = p.u32_list("m_list")?;
    let nu_max = p.f64("nu_max")?;
    let samples = p.usize("samples")?;
    let mut cols = vec!["nu".to_string()];
    cols.extend(ms.iter().map(|m| format!("excess_m{m}")));
    let mut table = Table::with_columns(cols);
    for i in 1..=samples {
        let nu = nu_max * i as f64 / samples as f64;
        let mut row = vec![nu];
        for &m in &ms {
            let spec = ModeSpec::photon_added(nu, 0.0, m);
            row.push(kerr_core::states::mean_photon_number(&spec) - nu);
        }
        table.push(&row);
    }
    write_table(&table, out, "mean_photon_excess.csv", manifest)
}

fn p1_vs_nu(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let nu_max = p.f64("nu_max")?;
    let samples = p.usize("samples")?;
    let mut table = Table::new(&["nu", "p1_m0", "p1_m1"]);
    for i in 0..=samples {
        let nu = nu_max * i as f64 / samples as f64;
        table.push(&[
            nu,
            single_photon_probability(&ModeSpec::coherent(nu, 0.0)),
            single_photon_probability(&ModeSpec::photon_added(nu, 0.0, 1)),
        ]);
    }
    write_table(&table, out, "single_photon_probability.csv", manifest)
}

fn phase_dist(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let ms = p.u32_list("m_list")?;
    let nu = p.f64("nu")?;
    let theta = p.f64("theta")?;
    let params = KerrParams::new(p.f64("chi")?);
    let t = p.f64("t_frac")? * params.t_rev();
    let grid_n = p.usize("grid")?;
    let grid: Vec<f64> = (0..grid_n)
        .map(|i| i as f64 * std::f64::consts::TAU / grid_n as f64)
        .collect();
    let mut cols = vec!["phi_over_pi".to_string()];
    cols.extend(ms.iter().map(|m| format!("p_m{m}")));
    let mut table = Table::with_columns(cols);
    let dists: Vec<Vec<f64>> = ms
        .iter()
        .map(|&m| {
            let st = make_state(
                &ModeSpec::photon_added(nu, theta, m),
                kerr_core::states::DEFAULT_TOL,
            )?;
            let evolved = brute_force_evolve(&st, &params, t);
            Ok(phase_distribution(&evolved, &grid)?)
        })
        .collect::<Result<_>>()?;
    for (i, &phi) in grid.iter().enumerate() {
        let mut row = vec![phi / std::f64::consts::PI];
        for d in &dists {
            row.push(d[i]);
        }
        table.push(&row);
    }
    write_table(&table, out, "phase_distribution.csv", manifest)
}

fn dq_vs_nu(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let qs = p.u32_list("q_list")?;
    let m = p.u32("m")?;
    let theta = p.f64("theta")?;
    let params = KerrParams::new(p.f64("chi")?);
    let t_half = params.t_rev() / 2.0;
    let nu_max = p.f64("nu_max")?;
    let samples = p.usize("samples")?;
    let mut cols = vec!["nu".to_string()];
    cols.extend(qs.iter().map(|q| format!("d_q{q}")));
    let mut table = Table::with_columns(cols);
    for i in 1..=samples {
        let nu = nu_max * i as f64 / samples as f64;
        let spec = ModeSpec::photon_added(nu, theta, m);
        let mut row = vec![nu];
        for &q in &qs {
            row.push(d_q_pacs(&spec, &params, q, t_half));
        }
        table.push(&row);
    }
    write_table(&table, out, "dq_vs_nu.csv", manifest)
}

fn dq_vs_theta(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let qs = p.u32_list("q_list")?;
    let m = p.u32("m")?;
    let nu = p.f64("nu")?;
    let params = KerrParams::new(p.f64("chi")?);
    let t_half = params.t_rev() / 2.0;
    let samples = p.usize("samples")?;
    let mut cols = vec!["theta_over_pi".to_string()];
    cols.extend(qs.iter().map(|q| format!("d_q{q}")));
    let mut table = Table::with_columns(cols);
    for i in 0..=samples {
        let theta = std::f64::consts::PI * i as f64 / samples as f64;
        let spec = ModeSpec::photon_added(nu, theta, m);
        let mut row = vec![theta / std::f64::consts::PI];
        for &q in &qs {
            row.push(d_q_pacs(&spec, &params, q, t_half));
        }
        table.push(&row);
    }
    write_table(&table, out, "dq_vs_theta.csv", manifest)
}

fn squeeze_sweep(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let qs = p.u32_list("q_list")?;
    let spec = packet_spec(p)?;
    let params = KerrParams::new(p.f64("chi")?);
    let samples = p.usize("samples")?;
    let rows: Vec<[f64; 8]> = (0..=samples)
        .into_par_iter()
        .flat_map_iter(|k| {
            let frac = k as f64 / samples as f64;
            let t = frac * params.t_rev();
            let qs = qs.clone();
            qs.into_iter().map(move |q| {
                let rep = squeeze_report(&spec, &params, q, t);
                [
                    frac,
                    q as f64,
                    spec.m() as f64,
                    spec.nu(),
                    spec.theta(),
                    rep.d_q,
                    rep.hm_moment,
                    rep.hm_threshold,
                ]
            })
        })
        .collect();
    let mut table = Table::new(&[
        "t_over_Trev",
        "q",
        "m",
        "nu",
        "theta",
        "D_q",
        "hm_moment",
        "hm_threshold",
    ]);
    for row in rows {
        table.push(&row);
    }
    write_table(&table, out, "squeezing.csv", manifest)
}

fn wigner_grid(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let spec = packet_spec(p)?;
    let params = KerrParams::new(p.f64("chi")?);
    let t = p.f64("t_frac")? * params.t_rev();
    let rho = density_matrix(&spec, &params, t)?;
    let grid = wigner_evaluate(&rho, (p.f64("extent")?, p.f64("spacing")?))?;
    let axis = grid.axis();
    let mut table = Table::new(&["re_beta", "im_beta", "W"]);
    for (iy, &by) in axis.iter().enumerate() {
        for (ix, &bx) in axis.iter().enumerate() {
            table.push(&[bx, by, grid.value(ix, iy)]);
        }
    }
    let (min_w, (at_x, at_y)) = grid.min_value();
    manifest.record_result("delta", nonclassicality_delta(&grid));
    manifest.record_result("integral", grid.integral());
    manifest.record_result("min_W", min_w);
    manifest.record_result("min_W_re_beta", at_x);
    manifest.record_result("min_W_im_beta", at_y);
    write_table(&table, out, "wigner.csv", manifest)
}

fn delta_sweep(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let ms = p.u32_list("m_list")?;
    let nu = p.f64("nu")?;
    let theta = p.f64("theta")?;
    let params = KerrParams::new(p.f64("chi")?);
    let samples = p.usize("samples")?;
    let gs = (p.f64("extent")?, p.f64("spacing")?);
    for &m in &ms {
        let spec = ModeSpec::photon_added(nu, theta, m);
        let rows: Vec<Result<[f64; 3]>> = (0..=samples)
            .into_par_iter()
            .map(|k| {
                let frac = k as f64 / samples as f64;
                let rho = density_matrix(&spec, &params, frac * params.t_rev())?;
                let grid = wigner_evaluate(&rho, gs)?;
                Ok([frac, nonclassicality_delta(&grid), grid.min_value().0])
            })
            .collect();
        let mut table = Table::new(&["t_over_Trev", "delta", "min_W"]);
        for row in rows {
            table.push(&row?);
        }
        write_table(&table, out, &format!("delta_m{m}.csv"), manifest)?;
    }
    Ok(())
}

fn two_mode_params(p: &Params) -> Result<TwoModeParams> {
    Ok(TwoModeParams::new(
        p.f64("omega")?,
        p.f64("omega0")?,
        p.f64("gamma")?,
        p.f64("g")?,
    ))
}

fn eigensystem_for(
    p: &Params,
    out: &Path,
    params: &TwoModeParams,
    initial: &ProductInitialState,
) -> Result<kerr_core::twomode::BlockEigensystem> {
    let n_tot = required_n_tot(initial, 1e-10)?;
    let cache_dir = if p.text("cache")? == "on" {
        Some(out.join("cache"))
    } else {
        None
    };
    cache::load_or_compute(cache_dir.as_deref(), params, n_tot)
}

fn two_mode_sweep(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let params = two_mode_params(p)?;
    let initial = ProductInitialState::new(field_spec(p)?);
    let q = p.u32("q")?;
    let gt_max = p.f64("gt_max")?;
    let samples = p.usize("samples")?;
    let eig = eigensystem_for(p, out, &params, &initial)?;
    let rows: Vec<Result<[f64; 9]>> = (0..=samples)
        .into_par_iter()
        .map(|k| {
            let gt = gt_max * k as f64 / samples as f64;
            let state = evolve(&initial, &eig, gt / params.g)?;
            let stats = quadrature_stats(&state, q)?;
            let rho = reduced_density(&state, Side::FieldA);
            let (svne, sle) = entropies(&rho)?;
            Ok([
                gt,
                state.number_expectation(|na, _| na as f64),
                state.number_expectation(|_, nb| nb as f64),
                svne,
                sle,
                stats.mean_xi,
                stats.var_xi,
                stats.skew3_xi,
                stats.d_q,
            ])
        })
        .collect();
    let mut table = Table::new(&[
        "gt", "mean_na", "mean_nb", "svne", "sle", "mean_xi", "var_xi", "skew3_xi", "d_q",
    ]);
    for row in rows {
        table.push(&row?);
    }
    manifest.record_result("n_tot_max", eig.n_tot_max() as f64);
    write_table(&table, out, "twomode.csv", manifest)
}

/// Generate the mean-photon-number series of a two-mode run.
fn photon_series(
    p: &Params,
    out: &Path,
    params: &TwoModeParams,
    initial: &ProductInitialState,
) -> Result<kerr_core::twomode::PhotonNumberSeries> {
    let dt = p.f64("dt")?;
    let samples = p.usize("samples")?;
    let eig = eigensystem_for(p, out, params, initial)?;
    let t_grid: Vec<f64> = (0..samples).map(|i| i as f64 * dt).collect();
    Ok(mean_photon_series(initial, &eig, &t_grid)?)
}

fn write_series(
    series: &tsa::TimeSeries,
    out: &Path,
    name: &str,
    manifest: &mut ManifestBuilder,
) -> Result<()> {
    let mut table = Table::new(&["t", "value"]);
    for (i, &v) in series.samples().iter().enumerate() {
        table.push(&[i as f64 * series.dt(), v]);
    }
    write_table(&table, out, name, manifest)
}

fn spectrum(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let params = two_mode_params(p)?;
    let initial = ProductInitialState::new(field_spec(p)?);
    let series = photon_series(p, out, &params, &initial)?;
    write_series(&series.field, out, "series.csv", manifest)?;
    let (freqs, power) = tsa::power_spectrum(&series.field)?;
    let mut table = Table::new(&["f_over_g", "S"]);
    for (f, s) in freqs.iter().zip(&power) {
        table.push(&[f / params.g, *s]);
    }
    write_table(&table, out, "spectrum.csv", manifest)
}

/// Delay, embedding dimension and Lyapunov estimate of one series;
/// the embedding falls back to `d_max` (recorded as NaN) when the
/// correlation exponent does not saturate.
pub fn estimate_pipeline(
    series: &tsa::TimeSeries,
    d_max: usize,
    k_max: usize,
) -> Result<(usize, f64, Vec<f64>, tsa::LyapunovEstimate)> {
    let sel = tsa::delay_from_series(series, (series.len() / 8).clamp(3, 200))?;
    let (dim, d_emb, profile) = match tsa::embedding_dimension(series, sel.delay, d_max) {
        Ok(res) => (res.dim, res.dim as f64, res.zeta_profile),
        Err(kerr_core::Error::NoConvergence(_)) => (d_max, f64::NAN, Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let cfg = tsa::EmbeddingConfig {
        delay: sel.delay,
        dim,
        theiler: sel.delay,
    };
    let est = tsa::lyapunov_rosenstein(series, &cfg, k_max)?;
    let _ = d_emb;
    Ok((sel.delay, d_emb, profile, est))
}

fn lyapunov(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let params = two_mode_params(p)?;
    let initial = ProductInitialState::new(field_spec(p)?);
    let series = photon_series(p, out, &params, &initial)?;
    write_series(&series.field, out, "series.csv", manifest)?;
    let (delay, d_emb, profile, est) =
        estimate_pipeline(&series.field, p.usize("d_max")?, p.usize("k_max")?)?;
    let mut table = Table::new(&["k_dt", "mean_ln_d"]);
    for (k, v) in est.curve.iter().enumerate() {
        table.push(&[k as f64 * series.field.dt(), *v]);
    }
    write_table(&table, out, "divergence.csv", manifest)?;
    if !profile.is_empty() {
        let mut zeta = Table::new(&["d", "zeta"]);
        for (i, z) in profile.iter().enumerate() {
            zeta.push(&[(i + 1) as f64, *z]);
        }
        write_table(&zeta, out, "zeta_profile.csv", manifest)?;
    }
    manifest.record_result("delay", delay as f64);
    manifest.record_result("d_emb", d_emb);
    manifest.record_result("lambda_max", est.lambda_max);
    Ok(())
}

/// A regime-table row: initial state, regime parameters, sampling.
pub struct RegimeCase {
    pub label: &'static str,
    pub field: ModeSpec,
    pub gamma: f64,
    pub g: f64,
    pub dt: f64,
    pub samples: usize,
}

pub fn regime_cases(weak_samples: usize, strong_samples: usize) -> Vec<RegimeCase> {
    let weak = |field, label| RegimeCase {
        label,
        field,
        gamma: 1.0,
        g: 100.0,
        dt: 1e-2,
        samples: weak_samples,
    };
    let strong = |field, label| RegimeCase {
        label,
        field,
        gamma: 5.0,
        g: 1.0,
        dt: 1e-1,
        samples: strong_samples,
    };
    vec![
        weak(ModeSpec::coherent(1.0, 0.0), "weak"),
        weak(ModeSpec::photon_added(1.0, 0.0, 5), "weak"),
        weak(ModeSpec::photon_added(5.0, 0.0, 5), "weak"),
        strong(ModeSpec::coherent(1.0, 0.0), "strong"),
        strong(ModeSpec::coherent(5.0, 0.0), "strong"),
        strong(ModeSpec::coherent(10.0, 0.0), "strong"),
        strong(ModeSpec::photon_added(5.0, 0.0, 1), "strong"),
        strong(ModeSpec::photon_added(1.0, 0.0, 5), "strong"),
        strong(ModeSpec::photon_added(5.0, 0.0, 5), "strong"),
    ]
}

/// Series for one regime case (shared by the table runner and the
/// acceptance suite).
pub fn regime_series(
    case: &RegimeCase,
    cache_dir: Option<&Path>,
) -> Result<kerr_core::twomode::PhotonNumberSeries> {
    let params = TwoModeParams::new(1.0, 1.0, case.gamma, case.g);
    let initial = ProductInitialState::new(case.field);
    let n_tot = required_n_tot(&initial, 1e-10)?;
    let eig = cache::load_or_compute(cache_dir, &params, n_tot)?;
    let t_grid: Vec<f64> = (0..case.samples).map(|i| i as f64 * case.dt).collect();
    Ok(mean_photon_series(&initial, &eig, &t_grid)?)
}

fn table_6_1(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let cases = regime_cases(p.usize("weak_samples")?, p.usize("strong_samples")?);
    let d_max = p.usize("d_max")?;
    let k_max = p.usize("k_max")?;
    let cache_dir = if p.text("cache")? == "on" {
        Some(out.join("cache"))
    } else {
        None
    };
    let rows: Vec<Result<(String, [f64; 5])>> = cases
        .par_iter()
        .map(|case| {
            let series = regime_series(case, cache_dir.as_deref())?;
            let (delay, d_emb, _, est) = estimate_pipeline(&series.field, d_max, k_max)?;
            let behavior = if est.lambda_max >= 0.25 { 1.0 } else { 0.0 };
            Ok((
                format!("{},{}", case.label, state_label(&case.field)),
                [
                    case.field.nu(),
                    delay as f64,
                    d_emb,
                    est.lambda_max,
                    behavior,
                ],
            ))
        })
        .collect();
    let mut table = Table::with_columns(
        ["regime", "field", "nu", "delay", "d_emb", "lambda_max", "chaotic"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    for row in rows {
        let (label, vals) = row?;
        let parts: Vec<&str> = label.split(',').collect();
        table.push_mixed(&parts, &vals);
    }
    write_table(&table, out, "regimes.csv", manifest)
}

fn state_label(spec: &ModeSpec) -> String {
    match spec {
        ModeSpec::Fock(n) => format!("fock{n}"),
        ModeSpec::Coherent { .. } => "cs".to_string(),
        ModeSpec::PhotonAdded { m, .. } => format!("pacs{m}"),
    }
}

fn analyze(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let input = p.text("input")?;
    if input.is_empty() {
        bail!("input: path to a series CSV is required");
    }
    let series = crate::csv::read_series_csv(Path::new(input), "input")?;
    let t_max = p.usize("t_max")?.min(series.len() / 2 - 1);
    let ami = tsa::average_mutual_information(&series, t_max, p.usize("bins")?)?;
    let mut ami_table = Table::new(&["T", "I_T"]);
    for (i, v) in ami.iter().enumerate() {
        ami_table.push(&[(i + 1) as f64, *v]);
    }
    write_table(&ami_table, out, "ami.csv", manifest)?;

    let (delay, d_emb, _, est) = estimate_pipeline(&series, p.usize("d_max")?, p.usize("k_max")?)?;
    let dim = if d_emb.is_nan() { p.usize("d_max")? } else { d_emb as usize };
    let cloud = tsa::embed(
        &series,
        &tsa::EmbeddingConfig {
            delay,
            dim,
            theiler: delay,
        },
    )?;
    let scaling = tsa::correlation_exponent(&cloud, &tsa::default_radius_grid(&cloud), delay)?;
    let mut corr = Table::new(&["ln_r", "ln_C"]);
    for (x, y) in &scaling.curve {
        corr.push(&[*x, *y]);
    }
    write_table(&corr, out, "correlation.csv", manifest)?;

    let mut div = Table::new(&["k_dt", "mean_ln_d"]);
    for (k, v) in est.curve.iter().enumerate() {
        div.push(&[k as f64 * series.dt(), *v]);
    }
    write_table(&div, out, "divergence.csv", manifest)?;

    let g = p.f64("g")?;
    let (freqs, power) = tsa::power_spectrum(&series)?;
    let mut spec_table = Table::new(&["f_over_g", "S"]);
    for (f, s) in freqs.iter().zip(&power) {
        spec_table.push(&[f / g, *s]);
    }
    write_table(&spec_table, out, "spectrum.csv", manifest)?;

    manifest.record_result("delay", delay as f64);
    manifest.record_result("d_emb", d_emb);
    manifest.record_result("zeta", scaling.zeta);
    manifest.record_result("lambda_max", est.lambda_max);
    Ok(())
}

fn classical_run(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let params = classical::ClassicalParams {
        omega: p.f64("omega")?,
        omega0: p.f64("omega0")?,
        g: p.f64("g")?,
        lambda: p.f64("gamma")?,
        mass_m: 1.0,
        mass_big_m: 1.0,
    };
    let start = [p.f64("x")?, p.f64("px")?, p.f64("y")?, p.f64("py")?];
    let t_span = p.f64("t_span")?;
    let samples = p.usize("samples")?;
    let traj = classical::classical_reference(&params, start, t_span, t_span / samples as f64)?;
    let mut table = Table::new(&["t", "x", "px", "y", "py"]);
    for (t, s) in traj.times.iter().zip(&traj.states) {
        table.push(&[*t, s[0], s[1], s[2], s[3]]);
    }
    manifest.record_result("h_drift", traj.h_drift);
    manifest.record_result("n_drift", traj.n_drift);
    write_table(&table, out, "trajectory.csv", manifest)
}

fn oracle_compare(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let count = p.usize("count")?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.u32("seed")? as u64);
    let params = KerrParams::new(p.f64("chi")?);
    let mut table = Table::new(&[
        "nu", "theta", "m", "r", "s", "t", "analytic_re", "analytic_im", "oracle_re",
        "oracle_im", "rel_err",
    ]);
    let mut worst = 0.0f64;
    let mut worst_reduction = 0.0f64;
    for _ in 0..count {
        let nu = rng.gen_range(0.05..10.0);
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let m = rng.gen_range(0..=10u32);
        let r = rng.gen_range(0..=2u32);
        let s = rng.gen_range(0..=4u32);
        let t = rng.gen_range(0.0..params.t_rev());
        let spec = ModeSpec::photon_added(nu, theta, m);
        let analytic = moment(&spec, &params, MomentRequest { r, s, t });
        let st = make_state(&spec, 1e-16)?;
        let evolved = brute_force_evolve(&st, &params, t);
        let oracle = ladder_moment(&evolved, r, r + s);
        let rel = (analytic - oracle).norm() / oracle.norm().max(1.0);
        worst = worst.max(rel);
        if m == 0 {
            let closed = moment_cs_closed_form(nu, theta, params.chi(), r, s, t);
            worst_reduction = worst_reduction
                .max((analytic - closed).norm() / closed.norm().max(1.0));
        }
        table.push(&[
            nu,
            theta,
            m as f64,
            r as f64,
            s as f64,
            t,
            analytic.re,
            analytic.im,
            oracle.re,
            oracle.im,
            rel,
        ]);
    }
    manifest.record_result("max_rel_err", worst);
    manifest.record_result("max_cs_reduction_err", worst_reduction);
    write_table(&table, out, "moment_oracle.csv", manifest)
}

/// Synthetic estimator oracles: logistic-map and sine-wave Lyapunov
/// exponents, line and square correlation exponents.
pub struct EstimatorOracles {
    pub logistic_lambda: f64,
    pub sine_lambda: f64,
    pub line_zeta: f64,
    pub square_zeta: f64,
}

pub fn run_estimator_oracles(seed: u64) -> Result<EstimatorOracles> {
    // logistic map x -> 4x(1-x): lambda = ln 2
    let mut x = 0.37;
    let mut v = Vec::with_capacity(50_000);
    for _ in 0..50_000 {
        v.push(x);
        x = 4.0 * x * (1.0 - x);
    }
    let logistic = tsa::TimeSeries::new(v, 1.0, "logistic")?;
    let est = tsa::lyapunov_rosenstein(
        &logistic,
        &tsa::EmbeddingConfig {
            delay: 1,
            dim: 2,
            theiler: 1,
        },
        12,
    )?;
    let logistic_lambda = est.lambda_max;

    let sine = tsa::TimeSeries::new(
        (0..20_000).map(|i| (0.07 * i as f64).sin()).collect(),
        1.0,
        "sine",
    )?;
    let est = tsa::lyapunov_rosenstein(
        &sine,
        &tsa::EmbeddingConfig {
            delay: 22,
            dim: 2,
            theiler: 22,
        },
        200,
    )?;
    let sine_lambda = est.lambda_max;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let line: Vec<Vec<f64>> = (0..3000)
        .map(|_| {
            let u: f64 = rng.gen_range(0.0..1.0);
            vec![u, 2.0 * u, -u]
        })
        .collect();
    let line_zeta = tsa::correlation_exponent(&line, &tsa::default_radius_grid(&line), 0)?.zeta;
    let square: Vec<Vec<f64>> = (0..4000)
        .map(|_| vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)])
        .collect();
    let square_zeta =
        tsa::correlation_exponent(&square, &tsa::default_radius_grid(&square), 0)?.zeta;
    Ok(EstimatorOracles {
        logistic_lambda,
        sine_lambda,
        line_zeta,
        square_zeta,
    })
}

fn tsa_oracles(p: &Params, out: &Path, manifest: &mut ManifestBuilder) -> Result<()> {
    let oracles = run_estimator_oracles(p.u32("seed")? as u64)?;
    let mut table = Table::with_columns(
        ["case", "estimate", "expected"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    table.push_mixed(
        &["logistic_lambda"],
        &[oracles.logistic_lambda, std::f64::consts::LN_2],
    );
    table.push_mixed(&["sine_lambda"], &[oracles.sine_lambda, 0.0]);
    table.push_mixed(&["line_zeta"], &[oracles.line_zeta, 1.0]);
    table.push_mixed(&["square_zeta"], &[oracles.square_zeta, 2.0]);
    manifest.record_result("logistic_lambda", oracles.logistic_lambda);
    manifest.record_result("sine_lambda", oracles.sine_lambda);
    manifest.record_result("line_zeta", oracles.line_zeta);
    manifest.record_result("square_zeta", oracles.square_zeta);
    write_table(&table, out, "estimator_oracles.csv", manifest)
}

/// Resolve a recipe and execute it into `out`.
pub fn execute(recipe: &crate::recipes::Recipe, params: &Params, out: &Path) -> Result<()> {
    std::fs::create_dir_all(out)
        .with_context(|| format!("creating output directory {}", out.display()))?;
    let mut manifest = ManifestBuilder::new(recipe.id, params);
    recipe.runner.run(params, out, &mut manifest)?;
    manifest.write(out)?;
    Ok(())
}
