//! Single-mode dynamics under `H = chi N(N-1)`.
//!
//! For an initial PACS `|alpha, m>` every normal-ordered moment has the
//! closed form
//!
//! ```text
//! <a†^r a^{r+s}> = alpha^s exp[-nu - i chi (s-1+2m) s t + nu w]
//!                  * sum_{n=max(0,r-m)}^{r} C(r,n) m! (nu w)^n / (m-r+n)!
//!                    * L_m^{s+n}(-nu w) / L_m(-nu),     w = e^{-2 i s chi t},
//! ```
//!
//! which [`moment`] evaluates directly; [`brute_force_evolve`] plus
//! [`ladder_moment`] provide the independent Fock-space route used to
//! cross-check it.

use crate::specfun::{laguerre_c, laguerre_f, ln_factorial};
use crate::states::{make_state, FockVector, ModeSpec, DEFAULT_TOL};
use crate::{C64, Error, Result};
use alloc::vec::Vec;
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Kerr-medium parameters (`hbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrParams {
    chi: f64,
}

impl KerrParams {
    pub fn new(chi: f64) -> Self {
        assert!(chi > 0.0, "chi must be positive");
        KerrParams { chi }
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    /// Revival time `T_rev = pi / chi`.
    pub fn t_rev(&self) -> f64 {
        core::f64::consts::PI / self.chi
    }
}

/// A request for the normal-ordered moment `<a†^r a^{r+s}>` at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRequest {
    pub r: u32,
    pub s: u32,
    pub t: f64,
}

/// Means, variances, skewness and kurtosis of the quadratures at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CumulantRecord {
    pub t: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    /// Square of the skewness, `beta_1 = <(dx)^3>^2 / (Var x)^3`.
    pub skew2_x: f64,
    pub skew2_p: f64,
    /// Kurtosis `beta_2 = <(dx)^4> / (Var x)^2`.
    pub kurt_x: f64,
    pub kurt_p: f64,
    /// Uncertainty product `Delta x * Delta p`.
    pub uncertainty_product: f64,
}

fn cis(phase: f64) -> C64 {
    let (s, c) = phase.sin_cos();
    C64::new(c, s)
}

/// Exact normal-ordered moment `<a†^r a^{r+s}>` of the evolved PACS.
pub fn moment(spec: &ModeSpec, params: &KerrParams, req: MomentRequest) -> C64 {
    assert!(
        !spec.is_fock(),
        "moment: initial state must be a CS or PACS"
    );
    let (r, s, t) = (req.r, req.s, req.t);
    let m = spec.m();
    let nu = spec.nu();
    let theta = spec.theta();
    let chi = params.chi();

    let w = cis(-2.0 * s as f64 * chi * t);
    let z = nu * w; // nu e^{-2 i s chi t}
    let alpha_s = C64::from_polar(nu.powf(s as f64 / 2.0), s as f64 * theta);
    // Re(-nu + z) <= 0, so the exponential never overflows
    let pre = alpha_s
        * (C64::new(-nu, 0.0) + z).exp()
        * cis(-chi * (s as f64 - 1.0 + 2.0 * m as f64) * s as f64 * t);

    let n_min = r.saturating_sub(m);
    let mut sum = C64::new(0.0, 0.0);
    for n in n_min..=r {
        // m! / (m - r + n)! as a falling-factorial product
        let lo = m + n - r; // >= 0 by construction
        let mut fact_ratio = 1.0;
        for j in (lo + 1)..=m {
            fact_ratio *= j as f64;
        }
        let binom = crate::specfun::binomial(r, n as i64);
        sum += binom * fact_ratio * z.powu(n) * laguerre_c(m, s + n, -z);
    }
    pre * sum / laguerre_f(m, 0, -nu)
}

/// The `m = 0` closed form
/// `<a†^r a^{r+s}> = alpha^s nu^r e^{-nu (1 - cos 2 s chi t)}
///  exp[-i chi (s(s-1) + 2 r s) t - i nu sin 2 s chi t]`.
pub fn moment_cs_closed_form(nu: f64, theta: f64, chi: f64, r: u32, s: u32, t: f64) -> C64 {
    let (sn, cs) = (2.0 * s as f64 * chi * t).sin_cos();
    let alpha_s = C64::from_polar(nu.powf(s as f64 / 2.0), s as f64 * theta);
    alpha_s
        * nu.powi(r as i32)
        * (-nu * (1.0 - cs)).exp()
        * cis(-chi * (s as f64 * (s as f64 - 1.0) + 2.0 * (r * s) as f64) * t - nu * sn)
}

/// `<a†^r a^p>` by direct contraction of ladder operators on a Fock vector.
pub fn ladder_moment(state: &FockVector, r: u32, p: u32) -> C64 {
    let amps = state.amps();
    let n = amps.len();
    let (r, p) = (r as usize, p as usize);
    let mut acc = C64::new(0.0, 0.0);
    for u in 0..n.saturating_sub(r.max(p)) {
        let lhs = amps[u + r].conj();
        let rhs = amps[u + p];
        if lhs == C64::new(0.0, 0.0) || rhs == C64::new(0.0, 0.0) {
            continue;
        }
        let ln_w = 0.5 * (ln_factorial((u + r) as u32) - ln_factorial(u as u32))
            + 0.5 * (ln_factorial((u + p) as u32) - ln_factorial(u as u32));
        acc += lhs * rhs * ln_w.exp();
    }
    acc
}

/// Moments of the rotated quadrature `A_phi = (a e^{i phi} + a† e^{-i phi}) / sqrt 2`
/// up to fourth order, from the analytic normal-ordered moments.
fn quadrature_raw_moments(spec: &ModeSpec, params: &KerrParams, t: f64, phi: f64) -> [f64; 4] {
    let g = |r: u32, s: u32| -> C64 {
        cis(s as f64 * phi) * moment(spec, params, MomentRequest { r, s, t })
    };
    let m01 = g(0, 1);
    let m02 = g(0, 2);
    let m11 = g(1, 0); // <a†a>, phi-independent
    let m03 = g(0, 3);
    let m12 = g(1, 1);
    let m04 = g(0, 4);
    let m13 = g(1, 2);
    let m22 = g(2, 0);
    let x1 = core::f64::consts::SQRT_2 * m01.re;
    let x2 = m02.re + m11.re + 0.5;
    let x3 = (m03.re + 3.0 * m12.re + 3.0 * m01.re) / core::f64::consts::SQRT_2;
    let x4 = (2.0 * m04.re
        + 8.0 * m13.re
        + 6.0 * m22.re
        + 6.0 * (2.0 * m02.re + 2.0 * m11.re)
        + 3.0)
        / 4.0;
    [x1, x2, x3, x4]
}

fn central_moments(raw: &[f64; 4]) -> (f64, f64, f64) {
    let [m1, m2, m3, m4] = *raw;
    let mu2 = m2 - m1 * m1;
    let mu3 = m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1;
    let mu4 = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
    (mu2, mu3, mu4)
}

/// Means, variances, squared skewness and kurtosis of `x` and `p` at `t`.
pub fn quadrature_cumulants(
    spec: &ModeSpec,
    params: &KerrParams,
    t: f64,
) -> Result<CumulantRecord> {
    let raw_x = quadrature_raw_moments(spec, params, t, 0.0);
    let raw_p = quadrature_raw_moments(spec, params, t, -core::f64::consts::FRAC_PI_2);
    let (var_x, mu3_x, mu4_x) = central_moments(&raw_x);
    let (var_p, mu3_p, mu4_p) = central_moments(&raw_p);
    if var_x <= 0.0 || var_p <= 0.0 {
        return Err(Error::Consistency(alloc::format!(
            "non-positive variance at t={t}: var_x={var_x}, var_p={var_p}"
        )));
    }
    Ok(CumulantRecord {
        t,
        mean_x: raw_x[0],
        mean_p: raw_p[0],
        var_x,
        var_p,
        skew2_x: mu3_x * mu3_x / (var_x * var_x * var_x),
        skew2_p: mu3_p * mu3_p / (var_p * var_p * var_p),
        kurt_x: mu4_x / (var_x * var_x),
        kurt_p: mu4_p / (var_p * var_p),
        uncertainty_product: (var_x * var_p).sqrt(),
    })
}

/// Return probability `C(t) = |<psi(0)|psi(t)>|^2` from a photon-number
/// distribution.
pub fn autocorrelation_from_distribution(probs: &[f64], chi: f64, t: f64) -> f64 {
    let overlap: C64 = probs
        .iter()
        .enumerate()
        .map(|(n, &p)| p * cis(-chi * (n * n.saturating_sub(1)) as f64 * t))
        .sum();
    overlap.norm_sqr()
}

/// Return probability of the initial state `spec` at time `t`.
pub fn autocorrelation(spec: &ModeSpec, params: &KerrParams, t: f64) -> Result<f64> {
    let st = make_state(spec, DEFAULT_TOL)?;
    Ok(autocorrelation_from_distribution(
        &st.photon_distribution(),
        params.chi(),
        t,
    ))
}

/// Fourier coefficients of `U(pi / k chi)` over `exp(-2 pi i j N / k)`:
/// `f_j` for odd `k` (expansion of `exp[-i pi N(N-1)/k]`), `g_j` for even
/// `k` (expansion of `exp[-i pi N^2 / k]`).
///
/// For odd `k` the evolved CS is `sum_j f_j |alpha e^{-2 pi i j / k}>`;
/// for even `k` the rotated amplitudes `alpha e^{i pi / k} e^{-2 pi i j / k}`
/// carry the coefficients `g_j`.
pub fn fractional_revival_coefficients(k: u32) -> Result<Vec<C64>> {
    if k == 0 {
        return Err(Error::Domain("fractional revival order k must be >= 1".into()));
    }
    let kf = k as f64;
    let pi = core::f64::consts::PI;
    Ok((0..k)
        .map(|j| {
            (0..k)
                .map(|n| {
                    let nf = n as f64;
                    let spectrum_phase = if k % 2 == 1 {
                        -pi * nf * (nf - 1.0) / kf
                    } else {
                        -pi * nf * nf / kf
                    };
                    cis(spectrum_phase + 2.0 * pi * (j as f64) * nf / kf)
                })
                .sum::<C64>()
                / kf
        })
        .collect())
}

/// The classical pair `(X, P)` and re-parametrized time `tau = sin 2 chi t`
/// for an initial CS: `X = <x> e^{nu (1 - cos 2 chi t)}`, likewise `P`.
pub fn classical_map(spec: &ModeSpec, params: &KerrParams, t: f64) -> (f64, f64, f64) {
    assert!(
        spec.m() == 0 && !spec.is_fock(),
        "classical_map applies to an initial CS only"
    );
    let nu = spec.nu();
    let chi = params.chi();
    let m01 = moment(spec, params, MomentRequest { r: 0, s: 1, t });
    let blowup = (nu * (1.0 - (2.0 * chi * t).cos())).exp();
    let x = core::f64::consts::SQRT_2 * m01.re * blowup;
    let p = core::f64::consts::SQRT_2 * m01.im * blowup;
    (x, p, (2.0 * chi * t).sin())
}

/// Evolve a Fock vector by multiplying in the Kerr phases
/// `c_n -> e^{-i chi n (n-1) t} c_n`.
pub fn brute_force_evolve(state: &FockVector, params: &KerrParams, t: f64) -> FockVector {
    let chi = params.chi();
    let amps = state
        .amps()
        .iter()
        .enumerate()
        .map(|(n, c)| c * cis(-chi * (n * n.saturating_sub(1)) as f64 * t))
        .collect();
    FockVector::from_amps(amps)
}

/// The complex rotation factor `z_m(t)` steering the first moments:
/// `z_m = L_m^1(-nu e^{2 i chi t}) / L_m(-nu) * e^{i (2 m chi t + nu sin 2 chi t)}`.
pub fn z_m(spec: &ModeSpec, params: &KerrParams, t: f64) -> C64 {
    let nu = spec.nu();
    let m = spec.m();
    let chi = params.chi();
    let zeta = cis(2.0 * chi * t);
    laguerre_c(m, 1, -nu * zeta) / laguerre_f(m, 0, -nu)
        * cis(2.0 * m as f64 * chi * t + nu * (2.0 * chi * t).sin())
}
