//! Classical limit of the coupled field–atom system.
//!
//! With oscillator masses `m`, `M` and `lambda = lim gamma/hbar`, the
//! classical Hamiltonian is
//!
//! ```text
//! H_cl = p_x^2/2m + m w^2 x^2/2 + p_y^2/2M + M w0^2 y^2/2
//!        + (lambda/w0^2) (p_y^2/2M + M w0^2 y^2/2)^2
//!        + (g/sqrt(w w0)) (sqrt(m M) w w0 x y + p_x p_y / sqrt(m M)),
//! ```
//!
//! and `N_cl = E_x/w + E_y/w0` is a second constant of the motion, so the
//! dynamics is integrable and all Lyapunov exponents vanish.

use crate::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Parameters of the classical reference system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalParams {
    pub omega: f64,
    pub omega0: f64,
    pub g: f64,
    /// `lambda = lim gamma / hbar`.
    pub lambda: f64,
    pub mass_m: f64,
    pub mass_big_m: f64,
}

impl ClassicalParams {
    /// Classical counterpart of the quantum parameters with unit masses
    /// and `lambda = gamma`.
    pub fn from_two_mode(params: &crate::twomode::TwoModeParams) -> Self {
        ClassicalParams {
            omega: params.omega,
            omega0: params.omega0,
            g: params.g,
            lambda: params.gamma,
            mass_m: 1.0,
            mass_big_m: 1.0,
        }
    }
}

/// Phase-space point `(x, p_x, y, p_y)`.
pub type PhasePoint = [f64; 4];

fn energy_y(p: &ClassicalParams, s: &PhasePoint) -> f64 {
    s[3] * s[3] / (2.0 * p.mass_big_m)
        + 0.5 * p.mass_big_m * p.omega0 * p.omega0 * s[2] * s[2]
}

/// The Hamiltonian `H_cl`.
pub fn h_cl(p: &ClassicalParams, s: &PhasePoint) -> f64 {
    let ex = s[1] * s[1] / (2.0 * p.mass_m) + 0.5 * p.mass_m * p.omega * p.omega * s[0] * s[0];
    let ey = energy_y(p, s);
    let mm = (p.mass_m * p.mass_big_m).sqrt();
    ex + ey
        + p.lambda / (p.omega0 * p.omega0) * ey * ey
        + p.g / (p.omega * p.omega0).sqrt()
            * (mm * p.omega * p.omega0 * s[0] * s[2] + s[1] * s[3] / mm)
}

/// The second constant of the motion `N_cl = E_x/omega + E_y/omega0`.
pub fn n_cl(p: &ClassicalParams, s: &PhasePoint) -> f64 {
    let ex = s[1] * s[1] / (2.0 * p.mass_m) + 0.5 * p.mass_m * p.omega * p.omega * s[0] * s[0];
    ex / p.omega + energy_y(p, s) / p.omega0
}

fn derivative(p: &ClassicalParams, s: &PhasePoint) -> PhasePoint {
    let mm = (p.mass_m * p.mass_big_m).sqrt();
    let cg = p.g / (p.omega * p.omega0).sqrt();
    let ey = energy_y(p, s);
    let quart = 2.0 * p.lambda / (p.omega0 * p.omega0) * ey;
    [
        s[1] / p.mass_m + cg * s[3] / mm,
        -p.mass_m * p.omega * p.omega * s[0] - cg * mm * p.omega * p.omega0 * s[2],
        (1.0 + quart) * s[3] / p.mass_big_m + cg * s[1] / mm,
        -(1.0 + quart) * p.mass_big_m * p.omega0 * p.omega0 * s[2] - cg * mm * p.omega * p.omega0 * s[0],
    ]
}

/// Sampled classical trajectory with conservation diagnostics.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhasePoint>,
    /// Largest relative drift of `H_cl` over the samples.
    pub h_drift: f64,
    /// Largest relative drift of `N_cl` over the samples.
    pub n_drift: f64,
}

const RK_SAFETY: f64 = 0.9;
const RK_TOL: f64 = 1e-12;

/// Integrate Hamilton's equations from `start` over `t_span`, sampling
/// every `sample_dt`, with an adaptive embedded Runge–Kutta (Cash–Karp 4/5)
/// stepper.
pub fn classical_reference(
    params: &ClassicalParams,
    start: PhasePoint,
    t_span: f64,
    sample_dt: f64,
) -> Result<Trajectory> {
    assert!(t_span > 0.0 && sample_dt > 0.0);
    let n_samples = (t_span / sample_dt).round() as usize;
    let h0 = h_cl(params, &start);
    let n0 = n_cl(params, &start);
    let scale_h = h0.abs().max(1.0);
    let scale_n = n0.abs().max(1.0);

    let mut times = Vec::with_capacity(n_samples + 1);
    let mut states = Vec::with_capacity(n_samples + 1);
    times.push(0.0);
    states.push(start);
    let mut s = start;
    let mut h = sample_dt / 8.0;
    let mut h_drift = 0.0f64;
    let mut n_drift = 0.0f64;
    for k in 1..=n_samples {
        let target = k as f64 * sample_dt;
        let mut t = times[k - 1];
        while t < target {
            let step = h.min(target - t);
            let (next, err) = cash_karp_step(params, &s, step);
            let tol = RK_TOL * (1.0 + norm(&s));
            if err <= tol || step < 1e-14 * target.max(1.0) {
                if step < 1e-14 * target.max(1.0) && err > tol {
                    return Err(Error::Stiffness(format!(
                        "step size underflow at t = {t} (err = {err:.3e})"
                    )));
                }
                s = next;
                t += step;
                // grow cautiously
                if err > 0.0 {
                    h = (step * RK_SAFETY * (tol / err).powf(0.2)).min(sample_dt);
                } else {
                    h = (step * 2.0).min(sample_dt);
                }
            } else {
                h = step * RK_SAFETY * (tol / err).powf(0.25);
            }
        }
        times.push(target);
        states.push(s);
        h_drift = h_drift.max(((h_cl(params, &s) - h0) / scale_h).abs());
        n_drift = n_drift.max(((n_cl(params, &s) - n0) / scale_n).abs());
    }
    Ok(Trajectory {
        times,
        states,
        h_drift,
        n_drift,
    })
}

fn norm(s: &PhasePoint) -> f64 {
    s.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn cash_karp_step(p: &ClassicalParams, s: &PhasePoint, h: f64) -> (PhasePoint, f64) {
    const B: [[f64; 5]; 5] = [
        [0.2, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
        [0.3, -0.9, 1.2, 0.0, 0.0],
        [-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0, 0.0],
        [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ];
    const C5: [f64; 6] = [
        37.0 / 378.0,
        0.0,
        250.0 / 621.0,
        125.0 / 594.0,
        0.0,
        512.0 / 1771.0,
    ];
    const C4: [f64; 6] = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        0.25,
    ];
    let mut k = [[0.0f64; 4]; 6];
    k[0] = derivative(p, s);
    for stage in 1..6 {
        let mut arg = *s;
        for (j, kj) in k.iter().enumerate().take(stage) {
            let w = B[stage - 1][j] * h;
            for d in 0..4 {
                arg[d] += w * kj[d];
            }
        }
        k[stage] = derivative(p, &arg);
    }
    let mut out = *s;
    let mut err = 0.0f64;
    for d in 0..4 {
        let mut acc5 = 0.0;
        let mut acc4 = 0.0;
        for stage in 0..6 {
            acc5 += C5[stage] * k[stage][d];
            acc4 += C4[stage] * k[stage][d];
        }
        out[d] += h * acc5;
        err = err.max((h * (acc5 - acc4)).abs());
    }
    (out, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twomode::TwoModeParams;

    fn weak() -> ClassicalParams {
        ClassicalParams::from_two_mode(&TwoModeParams::new(1.0, 1.0, 1.0, 100.0))
    }

    #[test]
    fn decoupled_harmonic_limit_is_exact() {
        // lambda = 0 and negligible g: plain oscillator motion
        let p = ClassicalParams {
            omega: 2.0,
            omega0: 1.0,
            g: 1e-12,
            lambda: 0.0,
            mass_m: 1.0,
            mass_big_m: 1.0,
        };
        let traj = classical_reference(&p, [1.0, 0.0, 0.0, 0.5], 5.0, 0.05).unwrap();
        for (t, s) in traj.times.iter().zip(&traj.states) {
            assert!((s[0] - (2.0 * t).cos()).abs() < 1e-8, "x at t={t}");
            assert!((s[3] - 0.5 * t.cos()).abs() < 1e-8, "p_y at t={t}");
        }
    }

    #[test]
    fn conserves_both_invariants() {
        for p in [
            weak(),
            ClassicalParams::from_two_mode(&TwoModeParams::new(1.0, 1.0, 5.0, 1.0)),
        ] {
            let span = 100.0 / p.g;
            let traj = classical_reference(&p, [1.0, 0.3, -0.4, 0.8], span, span / 400.0).unwrap();
            assert!(traj.h_drift < 1e-8, "H drift {}", traj.h_drift);
            assert!(traj.n_drift < 1e-8, "N drift {}", traj.n_drift);
        }
    }

    #[test]
    fn nearby_trajectories_separate_subexponentially() {
        // regular motion: neighboring tori drift apart only polynomially,
        // so ln(separation) flattens; the fit past the transient has
        // near-zero slope (an exponential instability would keep it at
        // the Lyapunov rate)
        let slope = log_separation_slope(&weak(), 2000.0);
        assert!(slope.abs() < 0.01, "log-separation slope {slope}");
    }

    pub(super) fn log_separation_slope(p: &ClassicalParams, span: f64) -> f64 {
        let dt = span / 2000.0;
        let a = classical_reference(p, [1.0, 0.0, 0.5, 0.0], span, dt).unwrap();
        let b = classical_reference(p, [1.0 + 1e-8, 0.0, 0.5, 0.0], span, dt).unwrap();
        let log_sep: Vec<f64> = a
            .states
            .iter()
            .zip(&b.states)
            .skip(1)
            .map(|(x, y)| {
                let d2: f64 = x.iter().zip(y).map(|(u, v)| (u - v) * (u - v)).sum();
                0.5 * d2.ln()
            })
            .collect();
        // fit the second half, past the initial algebraic growth
        let times: Vec<f64> = a.times.iter().skip(1).cloned().collect();
        let half = times.len() / 2;
        let times = &times[half..];
        let log_sep = &log_sep[half..];
        let n = times.len() as f64;
        let mt = times.iter().sum::<f64>() / n;
        let ms = log_sep.iter().sum::<f64>() / n;
        times
            .iter()
            .zip(log_sep)
            .map(|(t, s)| (t - mt) * (s - ms))
            .sum::<f64>()
            / times.iter().map(|t| (t - mt) * (t - mt)).sum::<f64>()
    }
}
