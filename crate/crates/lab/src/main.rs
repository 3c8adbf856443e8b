//! Command-line experiment runner.
//!
//! ```text
//! kerr-lab run <recipe> [--set key=value ...] [--out DIR]
//! kerr-lab list
//! kerr-lab validate <recipe> [--set key=value ...]
//! ```
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage error.
//! `KERR_LAB_THREADS` caps the worker pool.

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};
use kerr_lab::forecast::{self, Report};
use kerr_lab::params::Params;
use kerr_lab::{recipes, runners};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kerr-lab", version, about = "wave-packet dynamics experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a recipe, writing CSV outputs and a manifest.
    Run {
        recipe: String,
        /// Parameter overrides, `key=value`; may repeat.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Output directory (default: ./out/<recipe>).
        #[arg(long = "out")]
        out: Option<PathBuf>,
    },
    /// List every recipe.
    List,
    /// Dry-run a recipe: resolve parameters and forecast sizes.
    Validate {
        recipe: String,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
}

fn parse_overrides(set: &[String]) -> Result<Vec<(String, String)>> {
    set.iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| anyhow!("override `{kv}` is not of the form key=value"))
        })
        .collect()
}

fn resolve(recipe_id: &str, set: &[String]) -> Result<(recipes::Recipe, Params)> {
    let recipe = recipes::find(recipe_id)
        .ok_or_else(|| anyhow!("unknown recipe `{recipe_id}` (see `kerr-lab list`)"))?;
    let overrides = parse_overrides(set)?;
    let params = Params::resolve(&recipe.defaults, &overrides)?;
    Ok((recipe, params))
}

fn validate_report(recipe: &recipes::Recipe, params: &Params) -> Report {
    let mut report = Report::default();
    for (key, value) in params.iter() {
        report.note(format!("{key} = {}", value.render()));
    }
    if let Ok(nu) = params.f64("nu") {
        if nu < 0.0 {
            report.reject("nu", "must be non-negative");
        } else {
            let m = params.u32("m").unwrap_or(0);
            let n_max = forecast::truncation_forecast(nu, m, 1e-12);
            report.note(format!("single-mode truncation N_max ~ {n_max}"));
            if n_max >= kerr_core::states::HARD_CAP {
                report.reject("nu", "truncation would exceed the hard cap");
            }
            match recipe.runner {
                runners::Runner::TwoModeSweep
                | runners::Runner::Spectrum
                | runners::Runner::Lyapunov => {
                    if let Ok(field) = params.text("field") {
                        let spec = match field {
                            "fock" => {
                                Some(kerr_core::states::ModeSpec::fock(
                                    params.u32("n").unwrap_or(0),
                                ))
                            }
                            "cs" => Some(kerr_core::states::ModeSpec::coherent(nu, 0.0)),
                            "pacs" => Some(kerr_core::states::ModeSpec::photon_added(nu, 0.0, m)),
                            _ => {
                                report.reject("field", "expected fock|cs|pacs");
                                None
                            }
                        };
                        if let Some(spec) = spec {
                            if let Ok(n_tot) = forecast::n_tot_forecast(&spec) {
                                report.note(format!("two-mode block cutoff n_tot_max ~ {n_tot}"));
                                let mem = (n_tot + 1).pow(2) * 16 / 1024;
                                report.note(format!("eigensystem memory ~ {mem} KiB"));
                            }
                        }
                    }
                }
                runners::Runner::WignerGrid | runners::Runner::DeltaSweep => {
                    let side = (2.0 * params.f64("extent").unwrap_or(5.0)
                        / params.f64("spacing").unwrap_or(0.04))
                        as usize
                        + 1;
                    let frames = params.usize("samples").map(|s| s + 1).unwrap_or(1);
                    let flops =
                        frames as f64 * (side * side) as f64 * (n_max * n_max) as f64;
                    report.note(format!(
                        "grid {side}x{side}, ~{:.1} s estimated",
                        forecast::seconds_from_flops(flops)
                    ));
                }
                _ => {}
            }
        }
    }
    if let Ok(g) = params.f64("g") {
        if g <= 0.0 {
            report.reject("g", "coupling must be positive");
        }
    }
    if let Ok(gamma) = params.f64("gamma") {
        if gamma < 0.0 {
            report.reject("gamma", "anharmonicity must be non-negative");
        }
    }
    report
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("KERR_LAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            print!("{}", recipes::listing());
            ExitCode::SUCCESS
        }
        Command::Validate { recipe, set } => match resolve(&recipe, &set) {
            Ok((recipe, params)) => {
                let report = validate_report(&recipe, &params);
                println!("{}:", recipe.id);
                print!("{}", report.render());
                if report.ok() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(2)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Run { recipe, set, out } => {
            let (recipe, params) = match resolve(&recipe, &set) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let report = validate_report(&recipe, &params);
            if !report.ok() {
                eprint!("{}", report.render());
                return ExitCode::from(2);
            }
            let out = out.unwrap_or_else(|| PathBuf::from("out").join(recipe.id));
            match runners::execute(&recipe, &params, &out) {
                Ok(()) => {
                    println!("wrote {}", out.display());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
