//! Initial single-mode states: coherent states (CS), m-photon-added
//! coherent states (PACS), and Fock states, together with their photon
//! statistics and phase distribution.
//!
//! A PACS is the normalized `(a†)^m |alpha>`; its Fock amplitudes are
//!
//! ```text
//! c_n = e^{-nu/2} alpha^{n-m} sqrt(n!) / [(n-m)! sqrt(m! L_m(-nu))],  n >= m,
//! ```
//!
//! with `nu = |alpha|^2`. Setting `m = 0` recovers the CS.

use crate::specfun::{laguerre_f, ln_factorial};
use crate::{C64, Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Hard cap on the Fock-space truncation size.
pub const HARD_CAP: usize = 4096;

/// Default truncation tolerance: discarded tail mass stays below this.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Parameters of an initial single-mode state.
///
/// The packet states are parameterized by `nu = |alpha|^2` and
/// `theta = arg alpha`, mirroring `alpha = nu^{1/2} e^{i theta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeSpec {
    Coherent { nu: f64, theta: f64 },
    PhotonAdded { nu: f64, theta: f64, m: u32 },
    Fock(u32),
}

impl ModeSpec {
    pub fn coherent(nu: f64, theta: f64) -> Self {
        assert!(nu >= 0.0, "nu must be non-negative");
        ModeSpec::Coherent { nu, theta }
    }

    /// `m`-photon-added coherent state; `m = 0` is exactly the CS.
    pub fn photon_added(nu: f64, theta: f64, m: u32) -> Self {
        assert!(nu >= 0.0, "nu must be non-negative");
        if m == 0 {
            ModeSpec::Coherent { nu, theta }
        } else {
            ModeSpec::PhotonAdded { nu, theta, m }
        }
    }

    pub fn fock(n: u32) -> Self {
        ModeSpec::Fock(n)
    }

    pub fn nu(&self) -> f64 {
        match *self {
            ModeSpec::Coherent { nu, .. } | ModeSpec::PhotonAdded { nu, .. } => nu,
            ModeSpec::Fock(_) => 0.0,
        }
    }

    pub fn theta(&self) -> f64 {
        match *self {
            ModeSpec::Coherent { theta, .. } | ModeSpec::PhotonAdded { theta, .. } => theta,
            ModeSpec::Fock(_) => 0.0,
        }
    }

    /// Photon-addition count (0 for a CS, `n` for a Fock state).
    pub fn m(&self) -> u32 {
        match *self {
            ModeSpec::Coherent { .. } => 0,
            ModeSpec::PhotonAdded { m, .. } => m,
            ModeSpec::Fock(n) => n,
        }
    }

    pub fn is_fock(&self) -> bool {
        matches!(self, ModeSpec::Fock(_))
    }

    pub fn alpha(&self) -> C64 {
        let nu = self.nu();
        let theta = self.theta();
        C64::from_polar(nu.sqrt(), theta)
    }

    /// Center of the initial packet, `x0 + i p0 = alpha sqrt(2)`.
    pub fn x0_p0(&self) -> (f64, f64) {
        let a = self.alpha() * core::f64::consts::SQRT_2;
        (a.re, a.im)
    }
}

/// Truncated Fock-basis amplitude vector, `amps[n] = <n|psi>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<C64>,
}

impl FockVector {
    pub fn from_amps(amps: Vec<C64>) -> Self {
        assert!(!amps.is_empty());
        FockVector { amps }
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn n_max(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &FockVector) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Photon-number probabilities `|c_n|^2`.
    pub fn photon_distribution(&self) -> Vec<f64> {
        self.amps.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn mean_n(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }
}

/// Build the truncated, normalized Fock expansion of `spec`.
///
/// The cutoff is the smallest `n` past the distribution mode whose
/// discarded tail mass is below `tol`; exceeding [`HARD_CAP`] is a
/// capacity error.
pub fn make_state(spec: &ModeSpec, tol: f64) -> Result<FockVector> {
    assert!(tol > 0.0 && tol <= 1e-6, "tol must lie in (0, 1e-6]");
    match *spec {
        ModeSpec::Fock(n) => {
            if n as usize >= HARD_CAP {
                return Err(Error::Capacity {
                    what: format!("Fock state |{n}>"),
                    needed: n as usize + 1,
                    cap: HARD_CAP,
                });
            }
            let mut amps = vec![C64::new(0.0, 0.0); n as usize + 1];
            amps[n as usize] = C64::new(1.0, 0.0);
            Ok(FockVector { amps })
        }
        ModeSpec::Coherent { nu, theta } | ModeSpec::PhotonAdded { nu, theta, .. } => {
            let m = spec.m();
            if nu == 0.0 {
                // alpha = 0: the PACS collapses to the number state |m>
                let mut amps = vec![C64::new(0.0, 0.0); m as usize + 1];
                amps[m as usize] = C64::new(1.0, 0.0);
                return Ok(FockVector { amps });
            }
            let ln_nu = nu.ln();
            let ln_norm = 0.5 * (ln_factorial(m) + laguerre_f(m, 0, -nu).ln());
            let ln_cut = tol.ln() - 3.0 * core::f64::consts::LN_10;
            let mut amps: Vec<C64> = vec![C64::new(0.0, 0.0); m as usize];
            let mut mode_ln_p = f64::NEG_INFINITY;
            let mut mode_n = m as usize;
            let mut cutoff = None;
            for n in m..HARD_CAP as u32 {
                let k = n - m; // powers of alpha
                let ln_amp = -0.5 * nu + 0.5 * k as f64 * ln_nu + 0.5 * ln_factorial(n)
                    - ln_factorial(k)
                    - ln_norm;
                amps.push(C64::from_polar(ln_amp.exp(), k as f64 * theta));
                // mode and cutoff tracked in log space: amplitudes below the
                // mode may underflow to zero for large nu
                let ln_p = 2.0 * ln_amp;
                if ln_p > mode_ln_p {
                    mode_ln_p = ln_p;
                    mode_n = n as usize;
                }
                if n as usize > mode_n && ln_p < ln_cut {
                    cutoff = Some(n);
                    break;
                }
            }
            if cutoff.is_none() {
                return Err(Error::Capacity {
                    what: format!("state truncation at nu={nu}, m={m}"),
                    needed: HARD_CAP + 1,
                    cap: HARD_CAP,
                });
            }
            // renormalize over the kept range
            let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in &mut amps {
                *c /= norm;
            }
            Ok(FockVector { amps })
        }
    }
}

/// Mean photon number `<N>_m = (m+1) L_{m+1}(-nu) / L_m(-nu) - 1`.
pub fn mean_photon_number(spec: &ModeSpec) -> f64 {
    match *spec {
        ModeSpec::Fock(n) => n as f64,
        _ => {
            let nu = spec.nu();
            let m = spec.m();
            (m as f64 + 1.0) * laguerre_f(m + 1, 0, -nu) / laguerre_f(m, 0, -nu) - 1.0
        }
    }
}

/// Probability `|c_1|^2` of single-photon content.
pub fn single_photon_probability(spec: &ModeSpec) -> f64 {
    let m = spec.m();
    if spec.is_fock() {
        return if m == 1 { 1.0 } else { 0.0 };
    }
    let nu = spec.nu();
    match m {
        0 => nu * (-nu).exp(),
        1 => (-nu).exp() / laguerre_f(1, 0, -nu),
        _ => 0.0,
    }
}

/// Phase distribution `P(phi) = |sum_n e^{-i n phi} c_n|^2 / (2 pi)`.
pub fn phase_distribution(state: &FockVector, phi_grid: &[f64]) -> Result<Vec<f64>> {
    if phi_grid.is_empty() {
        return Err(Error::Domain("phase_distribution: empty grid".into()));
    }
    Ok(phi_grid
        .iter()
        .map(|&phi| {
            let overlap: C64 = state
                .amps
                .iter()
                .enumerate()
                .map(|(n, c)| C64::from_polar(1.0, -(n as f64) * phi) * c)
                .sum();
            overlap.norm_sqr() / (2.0 * core::f64::consts::PI)
        })
        .collect())
}

/// Residual of the nonlinear-annihilation eigenrelation
/// `(1 - m/(1 + a†a)) a |alpha, m> = alpha |alpha, m>`
/// on the truncated basis.
pub fn nonlinear_eigenrelation_residual(state: &FockVector, spec: &ModeSpec) -> f64 {
    let m = spec.m() as f64;
    let alpha = spec.alpha();
    let n_max = state.n_max();
    let mut acc = 0.0;
    for n in 0..=n_max {
        let lowered = if n < n_max {
            ((n as f64 + 1.0).sqrt()) * state.amps[n + 1]
        } else {
            C64::new(0.0, 0.0)
        };
        let op = (1.0 - m / (1.0 + n as f64)) * lowered;
        acc += (op - alpha * state.amps[n]).norm_sqr();
    }
    acc.sqrt()
}
