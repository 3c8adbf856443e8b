//! The recipe table: every reference figure and acceptance check as a
//! named parameter set over a small family of runners.

use crate::params::Value;
use crate::runners::Runner;

pub struct Recipe {
    pub id: &'static str,
    pub description: &'static str,
    /// Which figure or check the recipe reproduces.
    pub figure: &'static str,
    pub runner: Runner,
    pub defaults: Vec<(&'static str, Value)>,
}

const F: fn(f64) -> Value = Value::Float;
const I: fn(u64) -> Value = Value::Int;
fn t(s: &str) -> Value {
    Value::Text(s.to_string())
}

macro_rules! defaults {
    ($($key:literal => $val:expr),* $(,)?) => {
        vec![$(($key, $val)),*]
    };
}

/// Single-mode sweep defaults: chi = 5, theta = pi/4 mirrors the
/// symmetric x0 = p0 choice.
macro_rules! kerr_defaults {
    ($nu:expr, $m:expr) => {
        defaults![
            "nu" => F($nu),
            "theta" => F(core::f64::consts::FRAC_PI_4),
            "m" => I($m),
            "chi" => F(5.0),
            "periods" => F(1.0),
            "samples_per_period" => I(4000),
        ]
    };
}

macro_rules! twomode_defaults {
    ($field:literal, $nu:expr, $m:expr, $n:expr, $gamma:expr, $g:expr, $gt_max:expr, $samples:expr) => {
        defaults![
            "field" => t($field),
            "nu" => F($nu),
            "theta" => F(0.0),
            "m" => I($m),
            "n" => I($n),
            "omega" => F(1.0),
            "omega0" => F(1.0),
            "gamma" => F($gamma),
            "g" => F($g),
            "q" => I(2),
            "gt_max" => F($gt_max),
            "samples" => I($samples),
            "cache" => t("on"),
        ]
    };
}

macro_rules! series_defaults {
    ($field:literal, $nu:expr, $m:expr, $gamma:expr, $g:expr, $dt:expr, $samples:expr) => {
        defaults![
            "field" => t($field),
            "nu" => F($nu),
            "theta" => F(0.0),
            "m" => I($m),
            "n" => I(10),
            "omega" => F(1.0),
            "omega0" => F(1.0),
            "gamma" => F($gamma),
            "g" => F($g),
            "dt" => F($dt),
            "samples" => I($samples),
            "d_max" => I(10),
            "k_max" => I(150),
            "cache" => t("on"),
        ]
    };
}

pub fn all() -> Vec<Recipe> {
    vec![
        // ----- single-mode moment sweeps -----
        Recipe {
            id: "ch2.fig.xmean",
            description: "mean quadrature <x(t)> over one revival period (initial CS)",
            figure: "<x> versus time",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(1.0, 0),
        },
        Recipe {
            id: "ch2.fig.phase_xp",
            description: "phase plot data <p> versus <x> (initial CS)",
            figure: "phase plot of <p> versus <x>",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(1.0, 0),
        },
        Recipe {
            id: "ch2.fig.uncertainty",
            description: "uncertainty product Dx Dp over one period (initial CS)",
            figure: "uncertainty product versus time",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(1.0, 0),
        },
        Recipe {
            id: "ch2.fig.phase_deltas",
            description: "phase plot data Dp versus Dx (initial CS)",
            figure: "phase plot of Dp versus Dx",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(10.0, 0),
        },
        Recipe {
            id: "ch2.fig.skewness",
            description: "squared skewness of x over one period (initial CS)",
            figure: "squared skewness versus time",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(10.0, 0),
        },
        Recipe {
            id: "ch2.fig.phase_beta1",
            description: "phase plot data beta1(p) versus beta1(x)",
            figure: "phase plot of the squared skewnesses",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(10.0, 0),
        },
        Recipe {
            id: "ch2.fig.kurtosis",
            description: "excess kurtosis of x over one period (initial CS)",
            figure: "excess kurtosis versus time",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(100.0, 0),
        },
        Recipe {
            id: "ch2.fig.phase_beta2",
            description: "phase plot data (beta2 - 3) in p versus x",
            figure: "phase plot of the excess kurtoses",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(100.0, 0),
        },
        // ----- photon-added initial states -----
        Recipe {
            id: "ch3.fig.mean_photon_excess",
            description: "<N>_m - nu versus nu, saturating at 2m",
            figure: "mean photon excess versus nu",
            runner: Runner::MomentsVsNu,
            defaults: defaults![
                "m_list" => t("1,3,5"),
                "nu_max" => F(100.0),
                "samples" => I(400),
            ],
        },
        Recipe {
            id: "ch3.fig.single_photon_probability",
            description: "single-photon probability of a CS versus a 1-photon-added CS",
            figure: "p1 versus nu",
            runner: Runner::P1VsNu,
            defaults: defaults![
                "nu_max" => F(2.0),
                "samples" => I(400),
            ],
        },
        Recipe {
            id: "ch3.fig.xmean_pacs",
            description: "mean quadrature <x(t)> for an initial PACS",
            figure: "<x> versus time for photon-added states",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(1.0, 1),
        },
        Recipe {
            id: "ch3.fig.phase_xp_pacs",
            description: "phase plot data <p> versus <x> for an initial PACS",
            figure: "phase plot for photon-added states",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(1.0, 1),
        },
        Recipe {
            id: "ch3.fig.uncertainty_pacs",
            description: "uncertainty product for an initial PACS",
            figure: "uncertainty product, photon-added states",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(1.0, 10),
        },
        Recipe {
            id: "ch3.fig.phase_distribution",
            description: "phase distribution P(phi) at the two-packet instant",
            figure: "P(phi) at half the revival time",
            runner: Runner::PhaseDist,
            defaults: defaults![
                "nu" => F(0.3),
                "theta" => F(0.0),
                "m_list" => t("0,1,10"),
                "chi" => F(5.0),
                "t_frac" => F(0.5),
                "grid" => I(1024),
            ],
        },
        // ----- squeezing -----
        Recipe {
            id: "ch4.fig.dq_vs_nu",
            description: "D_q at the half revival versus nu (initial CS, theta = 0)",
            figure: "D_q(T/2) versus nu",
            runner: Runner::DqVsNu,
            defaults: defaults![
                "m" => I(0),
                "theta" => F(0.0),
                "q_list" => t("1,3"),
                "chi" => F(5.0),
                "nu_max" => F(3.0),
                "samples" => I(300),
            ],
        },
        Recipe {
            id: "ch4.fig.dq_vs_theta",
            description: "D_q at the half revival versus theta (initial CS)",
            figure: "D_q(T/2) versus theta",
            runner: Runner::DqVsTheta,
            defaults: defaults![
                "m" => I(0),
                "nu" => F(0.1),
                "q_list" => t("1,3"),
                "chi" => F(5.0),
                "samples" => I(400),
            ],
        },
        Recipe {
            id: "ch4.fig.dq_vs_time",
            description: "D_q versus t/T for an initial CS with nu = 10",
            figure: "D_q versus time, q = 1..4",
            runner: Runner::SqueezeSweep,
            defaults: defaults![
                "nu" => F(10.0),
                "theta" => F(0.0),
                "m" => I(0),
                "q_list" => t("1,2,3,4"),
                "chi" => F(5.0),
                "samples" => I(2000),
            ],
        },
        Recipe {
            id: "ch4.fig.d2m_vs_nu",
            description: "amplitude-squared squeezing of a PACS versus nu",
            figure: "D_2 at T/2 versus nu, photon-added states",
            runner: Runner::DqVsNu,
            defaults: defaults![
                "m" => I(1),
                "theta" => F(0.0),
                "q_list" => t("2"),
                "chi" => F(5.0),
                "nu_max" => F(20.0),
                "samples" => I(400),
            ],
        },
        Recipe {
            id: "ch4.fig.d2m_vs_theta",
            description: "amplitude-squared squeezing of a PACS versus theta",
            figure: "D_2 at T/2 versus theta, photon-added states",
            runner: Runner::DqVsTheta,
            defaults: defaults![
                "m" => I(1),
                "nu" => F(2.0),
                "q_list" => t("2"),
                "chi" => F(5.0),
                "samples" => I(400),
            ],
        },
        Recipe {
            id: "ch4.fig.deltax_vs_time",
            description: "Dx versus time for x0 = sqrt(2), p0 = 0",
            figure: "Dx versus time",
            runner: Runner::KerrSweep,
            defaults: defaults![
                "nu" => F(1.0),
                "theta" => F(0.0),
                "m" => I(0),
                "chi" => F(5.0),
                "periods" => F(1.0),
                "samples_per_period" => I(4000),
            ],
        },
        Recipe {
            id: "ch4.fig.dqm_vs_time",
            description: "D_q versus t/T for an initial PACS with nu = 10",
            figure: "D_q versus time, photon-added states",
            runner: Runner::SqueezeSweep,
            defaults: defaults![
                "nu" => F(10.0),
                "theta" => F(0.0),
                "m" => I(1),
                "q_list" => t("1,2,3,4"),
                "chi" => F(5.0),
                "samples" => I(2000),
            ],
        },
        Recipe {
            id: "ch4.fig.hong_mandel",
            description: "fourth central moment of x against the Hong-Mandel bound",
            figure: "<(dx)^4> versus time",
            runner: Runner::SqueezeSweep,
            defaults: defaults![
                "nu" => F(1.0),
                "theta" => F(0.0),
                "m" => I(0),
                "q_list" => t("2"),
                "chi" => F(5.0),
                "samples" => I(2000),
            ],
        },
        // ----- Wigner functions -----
        Recipe {
            id: "ch4.fig.wigner",
            description: "Wigner function on a phase-space grid",
            figure: "Wigner surfaces at fractional revivals",
            runner: Runner::WignerGrid,
            defaults: defaults![
                "nu" => F(1.0),
                "theta" => F(0.0),
                "m" => I(0),
                "chi" => F(5.0),
                "t_frac" => F(0.5),
                "extent" => F(5.0),
                "spacing" => F(0.04),
            ],
        },
        Recipe {
            id: "ch4.fig.delta",
            description: "non-classicality indicator delta versus time",
            figure: "delta versus time for m = 0, 1, 10",
            runner: Runner::DeltaSweep,
            defaults: defaults![
                "nu" => F(1.0),
                "theta" => F(0.0),
                "m_list" => t("0,1,10"),
                "chi" => F(5.0),
                "samples" => I(96),
                "extent" => F(5.0),
                "spacing" => F(0.04),
            ],
        },
        // ----- two-mode dynamics -----
        Recipe {
            id: "ch5.fig.entropies_fock",
            description: "entanglement entropies for an initial Fock product state",
            figure: "SVNE and SLE versus gt, |10; 0>",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("fock", 1.0, 0, 10, 1.0, 100.0, 700.0, 2800),
        },
        Recipe {
            id: "ch5.fig.entropies_cs",
            description: "entanglement entropies for an initial coherent product state",
            figure: "SVNE and SLE versus gt, |alpha; 0>",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("cs", 1.0, 0, 10, 1.0, 100.0, 1400.0, 2800),
        },
        Recipe {
            id: "ch5.fig.entropies_pacs",
            description: "entanglement entropies for an initial photon-added product state",
            figure: "SVNE and SLE versus gt, |(alpha,5); 0>",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("pacs", 1.0, 5, 10, 1.0, 100.0, 1400.0, 2800),
        },
        Recipe {
            id: "ch5.fig.xi_mean",
            description: "<xi> versus gt for an initial coherent product state",
            figure: "<xi> versus gt",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("cs", 1.0, 0, 10, 1.0, 100.0, 1400.0, 2800),
        },
        Recipe {
            id: "ch5.fig.xi_mean_pacs",
            description: "<xi> versus gt for an initial photon-added product state",
            figure: "<xi> versus gt, photon-added",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("pacs", 1.0, 1, 10, 1.0, 100.0, 1400.0, 2800),
        },
        Recipe {
            id: "ch5.fig.delta_xi",
            description: "Dxi versus gt; squeezing near half the revival",
            figure: "Dxi versus gt",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("fock", 1.0, 0, 10, 1.0, 100.0, 700.0, 2800),
        },
        Recipe {
            id: "ch5.fig.d2",
            description: "two-mode amplitude-squared squeezing indicator",
            figure: "D_2 versus gt",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("fock", 1.0, 0, 10, 1.0, 100.0, 700.0, 2800),
        },
        Recipe {
            id: "ch5.fig.xi_skew",
            description: "third central moment of xi versus gt",
            figure: "<(d xi)^3> versus gt",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("cs", 1.0, 0, 10, 1.0, 100.0, 1400.0, 2800),
        },
        // ----- mean photon number: spectra, embedding, Lyapunov -----
        Recipe {
            id: "ch6.fig.spectrum",
            description: "power spectrum of <a†a> in the weak-nonlinearity regime",
            figure: "power spectrum of the mean photon number",
            runner: Runner::Spectrum,
            defaults: series_defaults!("cs", 1.0, 0, 1.0, 100.0, 1e-2, 20000),
        },
        Recipe {
            id: "ch6.fig.lyapunov",
            description: "nearest-neighbor divergence and the maximal Lyapunov exponent",
            figure: "<ln d_j(k)> versus time, strong nonlinearity",
            runner: Runner::Lyapunov,
            defaults: series_defaults!("pacs", 1.0, 5, 5.0, 1.0, 1e-1, 50000),
        },
        Recipe {
            id: "ch6.table.6_1",
            description: "qualitative dynamics of the mean photon number across regimes",
            figure: "summary table of regimes",
            runner: Runner::Table61,
            defaults: defaults![
                "weak_samples" => I(20000),
                "strong_samples" => I(50000),
                "d_max" => I(10),
                "k_max" => I(150),
                "cache" => t("on"),
            ],
        },
        Recipe {
            id: "ch6.analyze",
            description: "full estimator pipeline over a series read from CSV",
            figure: "(input data)",
            runner: Runner::Analyze,
            defaults: defaults![
                "input" => t(""),
                "t_max" => I(200),
                "bins" => I(64),
                "d_max" => I(10),
                "k_max" => I(150),
                "g" => F(1.0),
            ],
        },
        Recipe {
            id: "ch6.classical",
            description: "classical-limit trajectory with conservation diagnostics",
            figure: "classical reference dynamics",
            runner: Runner::Classical,
            defaults: defaults![
                "omega" => F(1.0),
                "omega0" => F(1.0),
                "gamma" => F(1.0),
                "g" => F(100.0),
                "x" => F(1.0),
                "px" => F(0.3),
                "y" => F(-0.4),
                "py" => F(0.8),
                "t_span" => F(1.0),
                "samples" => I(400),
            ],
        },
        // ----- acceptance-criterion data -----
        Recipe {
            id: "accept.1.revival",
            description: "cumulant sweep through a full revival (exactness check data)",
            figure: "acceptance: revival exactness",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(1.0, 0),
        },
        Recipe {
            id: "accept.2.oracle",
            description: "analytic moments against brute-force evolution",
            figure: "acceptance: analytic-vs-oracle",
            runner: Runner::OracleCompare,
            defaults: defaults![
                "count" => I(200),
                "seed" => I(7),
                "chi" => F(5.0),
            ],
        },
        Recipe {
            id: "accept.3.collapse",
            description: "collapse-plateau cumulants at nu = 100",
            figure: "acceptance: collapse plateaus",
            runner: Runner::KerrSweep,
            defaults: kerr_defaults!(100.0, 0),
        },
        Recipe {
            id: "accept.4.squeezing",
            description: "squeezing boundary scan in theta",
            figure: "acceptance: squeezing boundary",
            runner: Runner::DqVsTheta,
            defaults: defaults![
                "m" => I(0),
                "nu" => F(1.0),
                "q_list" => t("1,2"),
                "chi" => F(5.0),
                "samples" => I(400),
            ],
        },
        Recipe {
            id: "accept.5.wigner",
            description: "delta sweep with grid minima",
            figure: "acceptance: Wigner checks",
            runner: Runner::DeltaSweep,
            defaults: defaults![
                "nu" => F(1.0),
                "theta" => F(0.0),
                "m_list" => t("0,1,10"),
                "chi" => F(5.0),
                "samples" => I(48),
                "extent" => F(5.0),
                "spacing" => F(0.04),
            ],
        },
        Recipe {
            id: "accept.6.invariants",
            description: "two-mode structural sweep (entropies equal, N_tot constant)",
            figure: "acceptance: structural invariants",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("fock", 1.0, 0, 10, 1.0, 100.0, 700.0, 1400),
        },
        Recipe {
            id: "accept.7.revivals",
            description: "two-mode entropy revivals in the weak regime",
            figure: "acceptance: two-mode revivals",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("cs", 1.0, 0, 10, 1.0, 100.0, 1400.0, 2800),
        },
        Recipe {
            id: "accept.8.beamsplitter",
            description: "linear-coupling energy exchange N cos^2(gt)",
            figure: "acceptance: linear-coupling oracle",
            runner: Runner::TwoModeSweep,
            defaults: twomode_defaults!("fock", 1.0, 0, 7, 0.0, 100.0, 20.0, 800),
        },
        Recipe {
            id: "accept.9.estimators",
            description: "estimator oracles: logistic map, sine wave, synthetic clouds",
            figure: "acceptance: estimator oracles",
            runner: Runner::TsaOracles,
            defaults: defaults![
                "seed" => I(11),
            ],
        },
        Recipe {
            id: "accept.10.regimes",
            description: "regime table reproduction",
            figure: "acceptance: summary-table reproduction",
            runner: Runner::Table61,
            defaults: defaults![
                "weak_samples" => I(20000),
                "strong_samples" => I(50000),
                "d_max" => I(10),
                "k_max" => I(150),
                "cache" => t("on"),
            ],
        },
        Recipe {
            id: "accept.11.classical",
            description: "classical conservation and regular separation",
            figure: "acceptance: classical reference",
            runner: Runner::Classical,
            defaults: defaults![
                "omega" => F(1.0),
                "omega0" => F(1.0),
                "gamma" => F(1.0),
                "g" => F(100.0),
                "x" => F(1.0),
                "px" => F(0.3),
                "y" => F(-0.4),
                "py" => F(0.8),
                "t_span" => F(1.0),
                "samples" => I(400),
            ],
        },
        Recipe {
            id: "accept.12.determinism",
            description: "small deterministic sweep for byte-identity checks",
            figure: "acceptance: determinism",
            runner: Runner::KerrSweep,
            defaults: defaults![
                "nu" => F(1.0),
                "theta" => F(0.5),
                "m" => I(1),
                "chi" => F(5.0),
                "periods" => F(0.25),
                "samples_per_period" => I(256),
            ],
        },
    ]
}

pub fn find(id: &str) -> Option<Recipe> {
    all().into_iter().find(|r| r.id == id)
}

/// Plain-text recipe listing: id, description, figure.
pub fn listing() -> String {
    let recipes = all();
    let width = recipes.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in recipes {
        out.push_str(&format!(
            "{:width$}  {}  [{}]\n",
            r.id,
            r.description,
            r.figure,
            width = width
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = all().iter().map(|r| r.id).collect();
        let len = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), len);
    }

    #[test]
    fn listing_is_stable_and_complete() {
        let a = listing();
        let b = listing();
        assert_eq!(a, b);
        assert!(a.contains("ch4.fig.delta"));
        assert!(a.contains("ch6.table.6_1"));
    }
}
