//! qth-power amplitude squeezing and Hong–Mandel higher-order squeezing
//! under the Kerr evolution.
//!
//! For `Z_1 = (a^q + a†^q)/sqrt 2` the commutator `[a^q, a†^q] = F_q(N)`
//! is a polynomial in the number operator, and
//!
//! ```text
//! D_q(t) = [(dZ_1)^2 - <F_q(N)>/2] / (<F_q(N)>/2)
//!        = 2 [Re<a^{2q}> - 2 (Re<a^q>)^2 + <a†^q a^q>] / <F_q(N)>
//! ```
//!
//! is negative exactly when the state is qth-power amplitude-squeezed.
//! `<F_q(N)>` commutes with the Hamiltonian and is evaluated once in the
//! initial state.

use crate::kerr::{moment, KerrParams, MomentRequest};
use crate::specfun::{binomial, laguerre_f, ln_factorial};
use crate::states::ModeSpec;
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Squeezing indicators of one `(q, t)` sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeReport {
    pub q: u32,
    pub t: f64,
    pub d_q: f64,
    /// `d_q < 0`: qth-power amplitude-squeezed in `Z_1`.
    pub squeezed: bool,
    /// Hong–Mandel moment `<(dx)^{2q}>`.
    pub hm_moment: f64,
    /// Coherent-state value `(2q-1)!!/2^q`; squeezing to order `2q` means
    /// dropping below it.
    pub hm_threshold: f64,
}

/// `(2q - 1)!!`
fn odd_double_factorial(q: u32) -> f64 {
    (1..=q).map(|i| (2 * i - 1) as f64).product()
}

/// The commutator polynomial `F_q(n)`,
/// `q! [1 + sum_{k=1}^{q-1} C(q,k) n(n-1)...(n-k+1) / k!]`.
pub fn f_q_polynomial(q: u32, n: u32) -> f64 {
    assert!(q >= 1);
    let mut bracket = 1.0;
    for k in 1..q {
        let mut falling = 1.0;
        for j in 0..k {
            falling *= n as f64 - j as f64;
        }
        bracket += binomial(q, k as i64) / (ln_factorial(k)).exp() * falling;
    }
    ln_factorial(q).exp() * bracket
}

/// `<a†^k a^k>` in the initial PACS (conserved by the Kerr evolution):
/// `sum_n C(k,n) m!/(m-k+n)! nu^n L_m^n(-nu) / L_m(-nu)`.
fn conserved_ladder_moment(spec: &ModeSpec, k: u32) -> f64 {
    let m = spec.m();
    let nu = spec.nu();
    let n_min = k.saturating_sub(m);
    let mut acc = 0.0;
    for n in n_min..=k {
        let lo = m + n - k;
        let mut fact_ratio = 1.0;
        for j in (lo + 1)..=m {
            fact_ratio *= j as f64;
        }
        acc += binomial(k, n as i64) * fact_ratio * nu.powi(n as i32) * laguerre_f(m, n, -nu);
    }
    acc / laguerre_f(m, 0, -nu)
}

/// Conserved expectation value `<F_q(N)>` for the initial state `spec`.
pub fn mean_f_q(spec: &ModeSpec, q: u32) -> f64 {
    assert!(q >= 1);
    let mut bracket = 1.0;
    for k in 1..q {
        bracket += binomial(q, k as i64) / ln_factorial(k).exp() * conserved_ladder_moment(spec, k);
    }
    ln_factorial(q).exp() * bracket
}

/// `D_q(t)` for an initial CS, by the closed form
///
/// ```text
/// (2 nu^q / <F_q>) { 1 + e^{-2 nu sin^2 2q chi t} cos(2 chi q (2q-1) t + nu sin 4 chi q t - 2 q theta)
///                      - 2 e^{-4 nu sin^2 q chi t} cos^2(chi q (q-1) t + nu sin 2 chi q t - q theta) }
/// ```
pub fn d_q_cs(spec: &ModeSpec, params: &KerrParams, q: u32, t: f64) -> f64 {
    assert!(q >= 1);
    assert!(
        spec.m() == 0 && !spec.is_fock(),
        "d_q_cs applies to an initial CS"
    );
    let nu = spec.nu();
    let theta = spec.theta();
    let chi = params.chi();
    let qf = q as f64;
    let outer = (-2.0 * nu * (2.0 * qf * chi * t).sin().powi(2)).exp()
        * (2.0 * chi * qf * (2.0 * qf - 1.0) * t + nu * (4.0 * chi * qf * t).sin()
            - 2.0 * qf * theta)
            .cos();
    let inner = (-4.0 * nu * (qf * chi * t).sin().powi(2)).exp()
        * (chi * qf * (qf - 1.0) * t + nu * (2.0 * chi * qf * t).sin() - qf * theta)
            .cos()
            .powi(2);
    2.0 * nu.powi(q as i32) / mean_f_q(spec, q) * (1.0 + outer - 2.0 * inner)
}

/// `D_q^(m)(t)` for an initial PACS by the general double-sum closed form;
/// reduces to [`d_q_cs`] at `m = 0`.
pub fn d_q_pacs(spec: &ModeSpec, params: &KerrParams, q: u32, t: f64) -> f64 {
    assert!(q >= 1);
    assert!(!spec.is_fock(), "d_q_pacs applies to a CS or PACS");
    let m = spec.m();
    let nu = spec.nu();
    let theta = spec.theta();
    let chi = params.chi();
    let qf = q as f64;
    let lm = laguerre_f(m, 0, -nu);

    // L_m Re<a^{2q}>
    let damp1 = (-nu * (1.0 - (4.0 * chi * qf * t).cos())).exp();
    let drift1 = nu * (4.0 * chi * qf * t).sin();
    let mut t1 = 0.0;
    for n in 0..=m {
        let phase =
            2.0 * (2.0 * m as f64 + 2.0 * n as f64 + 2.0 * qf - 1.0) * chi * qf * t + drift1
                - 2.0 * qf * theta;
        t1 += binomial(m + 2 * q, (n + 2 * q) as i64) * nu.powi((n + q) as i32)
            / ln_factorial(n).exp()
            * phase.cos();
    }
    t1 *= damp1;

    // -2 L_m (Re<a^q>)^2
    let damp2 = (-2.0 * nu * (1.0 - (2.0 * chi * qf * t).cos())).exp();
    let drift2 = nu * (2.0 * chi * qf * t).sin();
    let mut inner = 0.0;
    for n in 0..=m {
        let phase = (qf - 1.0 + 2.0 * m as f64 + 2.0 * n as f64) * chi * qf * t + drift2
            - qf * theta;
        inner += binomial(m + q, (n + q) as i64) * nu.powf(n as f64 + qf / 2.0)
            / ln_factorial(n).exp()
            * phase.cos();
    }
    let t2 = 2.0 * damp2 / lm * inner * inner;

    // L_m <a†^q a^q>
    let t3 = conserved_ladder_moment(spec, q) * lm;

    2.0 * (t1 - t2 + t3) / (lm * mean_f_q(spec, q))
}

/// Raw moment `<A_phi^j>` of the rotated quadrature
/// `A_phi = (a e^{i phi} + a† e^{-i phi})/sqrt 2`, assembled by Wick's
/// theorem from the normal-ordered ladder moments.
pub fn quadrature_power_moment(
    spec: &ModeSpec,
    params: &KerrParams,
    t: f64,
    j: u32,
    phi: f64,
) -> f64 {
    let ladder = |r: u32, p: u32| -> crate::C64 {
        // <a†^r a^p> with the phase e^{i (p - r) phi}
        let raw = if p >= r {
            moment(spec, params, MomentRequest { r, s: p - r, t })
        } else {
            moment(spec, params, MomentRequest { r: p, s: r - p, t }).conj()
        };
        let rot = (p as f64 - r as f64) * phi;
        crate::C64::from_polar(1.0, rot) * raw
    };
    let mut acc = 0.0;
    for k in 0..=j / 2 {
        let pairings = (ln_factorial(j)
            - ln_factorial(k)
            - ln_factorial(j - 2 * k)
            - k as f64 * core::f64::consts::LN_2)
            .exp();
        let p = j - 2 * k;
        let mut normal_ordered = 0.0;
        for i in 0..=p {
            normal_ordered += binomial(p, i as i64) * ladder(i, p - i).re;
        }
        acc += pairings * normal_ordered;
    }
    acc / 2f64.powf(j as f64 / 2.0)
}

/// Hong–Mandel pair: the centered moment `<(dx)^{2q}>` and the
/// coherent-state threshold `(2q-1)!!/2^q`.
pub fn hong_mandel(spec: &ModeSpec, params: &KerrParams, q: u32, t: f64) -> (f64, f64) {
    assert!(q >= 1);
    let order = 2 * q;
    let raw: alloc::vec::Vec<f64> = (0..=order)
        .map(|j| quadrature_power_moment(spec, params, t, j, 0.0))
        .collect();
    let mean = raw[1];
    let mut centered = 0.0;
    for j in 0..=order {
        centered += binomial(order, j as i64) * raw[j as usize] * (-mean).powi((order - j) as i32);
    }
    (centered, odd_double_factorial(q) / 2f64.powi(q as i32))
}

/// All squeezing indicators of one `(q, t)` sample.
pub fn squeeze_report(spec: &ModeSpec, params: &KerrParams, q: u32, t: f64) -> SqueezeReport {
    let d_q = d_q_pacs(spec, params, q, t);
    let (hm_moment, hm_threshold) = hong_mandel(spec, params, q, t);
    SqueezeReport {
        q,
        t,
        d_q,
        squeezed: d_q < 0.0,
        hm_moment,
        hm_threshold,
    }
}

/// Static (t = 0) variance of `A_phi` in the PACS:
///
/// ```text
/// (dA_phi)^2 = { 2 nu (L_m^2 L_m - (L_m^1)^2) cos 2(theta + phi)
///                - 2 nu (L_m^1)^2 - L_m^2 + 2 (m+1) L_{m+1} L_m } / (2 L_m^2),
/// ```
///
/// all Laguerres at `-nu`; reduces to 1/2 for a CS.
pub fn var_a_phi_initial(spec: &ModeSpec, phi: f64) -> f64 {
    assert!(!spec.is_fock());
    let nu = spec.nu();
    let theta = spec.theta();
    let m = spec.m();
    let l0 = laguerre_f(m, 0, -nu);
    let l1 = laguerre_f(m, 1, -nu);
    let l2 = laguerre_f(m, 2, -nu);
    let lp = laguerre_f(m + 1, 0, -nu);
    (2.0 * nu * (l2 * l0 - l1 * l1) * (2.0 * (theta + phi)).cos() - 2.0 * nu * l1 * l1
        - l0 * l0
        + 2.0 * (m as f64 + 1.0) * lp * l0)
        / (2.0 * l0 * l0)
}
