//! Time-dependent density matrices, Wigner functions on a phase-space
//! grid, and the non-classicality indicator `delta = int |W| - 1`.
//!
//! The Wigner function is evaluated from the Fock-basis density matrix as
//!
//! ```text
//! W(beta; t) = (2/pi) e^{-2|beta|^2} Re sum_{l} sum_{n >= l} (-1)^l (2 - delta_ln)
//!              sqrt(l!/n!) (2 beta)^{n-l} rho_ln(t) L_l^{n-l}(4 |beta|^2).
//! ```

use crate::linalg::CMat;
use crate::specfun::{laguerre_f, ln_factorial};
use crate::states::{make_state, ModeSpec, DEFAULT_TOL};
use crate::kerr::KerrParams;
use crate::{C64, Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Fock-basis density matrix of the evolved single-mode state.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub rho: CMat,
    pub t: f64,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.rho.dim()
    }
}

/// Real Wigner values on the square `Re beta, Im beta in [-L, L]`.
#[derive(Debug, Clone)]
pub struct WignerGrid {
    extent: f64,
    spacing: f64,
    /// row-major over (Im beta, Re beta), both ascending
    values: Vec<f64>,
    side: usize,
    /// largest |Im| of the summed series before the Re projection
    max_im_residue: f64,
}

impl WignerGrid {
    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Points per axis.
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn axis(&self) -> Vec<f64> {
        (0..self.side)
            .map(|i| -self.extent + i as f64 * self.spacing)
            .collect()
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.side + ix]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_im_residue(&self) -> f64 {
        self.max_im_residue
    }

    /// Trapezoid weight of node `i` along one axis.
    fn w(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.side {
            0.5
        } else {
            1.0
        }
    }

    /// `int W d^2 beta` by the 2-D trapezoid rule.
    pub fn integral(&self) -> f64 {
        self.quadrature(|v| v)
    }

    /// `int |W| d^2 beta` by the 2-D trapezoid rule.
    pub fn abs_integral(&self) -> f64 {
        self.quadrature(f64::abs)
    }

    fn quadrature(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for iy in 0..self.side {
            let wy = self.w(iy);
            for ix in 0..self.side {
                acc += wy * self.w(ix) * f(self.value(ix, iy));
            }
        }
        acc * self.spacing * self.spacing
    }

    /// Grid minimum and its location `(re beta, im beta)`.
    pub fn min_value(&self) -> (f64, (f64, f64)) {
        let mut best = (f64::INFINITY, (0.0, 0.0));
        for iy in 0..self.side {
            for ix in 0..self.side {
                let v = self.value(ix, iy);
                if v < best.0 {
                    best = (
                        v,
                        (
                            -self.extent + ix as f64 * self.spacing,
                            -self.extent + iy as f64 * self.spacing,
                        ),
                    );
                }
            }
        }
        best
    }
}

/// Grid defaults: the packet structures live within radius `sqrt(nu)` and
/// have O(1) width, so `L = sqrt(nu) + 4` with `h = 0.04`.
pub fn default_grid(spec: &ModeSpec) -> (f64, f64) {
    (spec.nu().sqrt() + 4.0, 0.04)
}

/// Density matrix `rho_ln(t)` of the evolved CS/PACS, by the closed form
/// with the Kerr phases `e^{-i chi [l(l-1) - n(n-1)] t}`.
///
/// Entries with `l < m` or `n < m` vanish identically for a PACS.
pub fn density_matrix(spec: &ModeSpec, params: &KerrParams, t: f64) -> Result<DensityMatrix> {
    assert!(
        !spec.is_fock(),
        "density_matrix: initial state must be a CS or PACS"
    );
    let m = spec.m();
    let nu = spec.nu();
    let theta = spec.theta();
    let chi = params.chi();
    // reuse the state-construction truncation rule
    let n_max = make_state(spec, DEFAULT_TOL)?.n_max();
    let dim = n_max + 1;
    let mut rho = CMat::zeros(dim);
    if nu == 0.0 {
        rho[(m as usize, m as usize)] = C64::new(1.0, 0.0);
        return Ok(DensityMatrix { rho, t });
    }
    let ln_nu = nu.ln();
    let ln_norm = ln_factorial(m) + laguerre_f(m, 0, -nu).ln();
    let ln_mag = |n: u32| -> f64 {
        // ln |c_n|
        -0.5 * nu + 0.5 * (n - m) as f64 * ln_nu + 0.5 * ln_factorial(n)
            - ln_factorial(n - m)
            - 0.5 * ln_norm
    };
    for l in m..=n_max as u32 {
        for n in m..=n_max as u32 {
            let kerr_phase = -chi * ((l * l) as f64 - l as f64 - (n * n) as f64 + n as f64) * t;
            let phase = (l as f64 - n as f64) * theta + kerr_phase;
            rho[(l as usize, n as usize)] =
                C64::from_polar((ln_mag(l) + ln_mag(n)).exp(), phase);
        }
    }
    // normalize away the truncated tail so the trace is exactly one
    let tr = rho.trace().re;
    for l in 0..dim {
        for n in 0..dim {
            rho[(l, n)] /= tr;
        }
    }
    Ok(DensityMatrix { rho, t })
}

/// Evaluate the Wigner function of `rho` on the square grid `(L, h)`.
pub fn wigner_evaluate(rho: &DensityMatrix, grid_spec: (f64, f64)) -> Result<WignerGrid> {
    let (extent, spacing) = grid_spec;
    if extent <= 0.0 || spacing <= 0.0 {
        return Err(Error::Domain(format!(
            "wigner grid needs positive extent and spacing, got ({extent}, {spacing})"
        )));
    }
    let side = (2.0 * extent / spacing).floor() as usize + 1;
    let dim = rho.dim();
    let mut values = vec![0.0f64; side * side];
    let mut max_im = 0.0f64;
    // scratch for L_l^s(4 |beta|^2), recomputed per node, recurrence in l
    let mut lag = vec![0.0f64; dim];
    for iy in 0..side {
        let by = -extent + iy as f64 * spacing;
        for ix in 0..side {
            let bx = -extent + ix as f64 * spacing;
            let r2 = bx * bx + by * by;
            let x4 = 4.0 * r2;
            let two_beta = 2.0 * C64::new(bx, by);
            let mag2b = two_beta.norm();
            let arg2b = two_beta.arg();
            let mut acc = C64::new(0.0, 0.0);
            for s in 0..dim {
                // fill lag[l] = L_l^s(x4) for l = 0..dim-s by the degree
                // recurrence
                let cols = dim - s;
                lag[0] = 1.0;
                if cols > 1 {
                    lag[1] = 1.0 + s as f64 - x4;
                    for l in 1..cols - 1 {
                        let lf = l as f64;
                        lag[l + 1] = ((2.0 * lf + 1.0 + s as f64 - x4) * lag[l]
                            - (lf + s as f64) * lag[l - 1])
                            / (lf + 1.0);
                    }
                }
                // off-diagonal prefactor sqrt(l!/n!) (2 beta)^s
                for l in 0..cols {
                    let n = l + s;
                    let entry = rho.rho[(l, n)];
                    if entry == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                    let term = if s == 0 {
                        sign * entry * lag[l]
                    } else {
                        if mag2b == 0.0 {
                            continue;
                        }
                        let ln_pref = 0.5
                            * (ln_factorial(l as u32) - ln_factorial(n as u32))
                            + s as f64 * mag2b.ln();
                        let pref = C64::from_polar(ln_pref.exp(), s as f64 * arg2b);
                        sign * pref * entry * lag[l]
                    };
                    if !term.re.is_finite() || !term.im.is_finite() {
                        return Err(Error::Numerical(format!(
                            "wigner series term ({l}, {n}) is not finite at beta = {bx}+{by}i"
                        )));
                    }
                    if s == 0 {
                        acc += term;
                    } else {
                        // the n < l half of the series is the conjugate
                        acc += term + term.conj();
                    }
                }
            }
            let pref = 2.0 / core::f64::consts::PI * (-2.0 * r2).exp();
            max_im = max_im.max((acc.im * pref).abs());
            values[iy * side + ix] = acc.re * pref;
        }
    }
    Ok(WignerGrid {
        extent,
        spacing,
        values,
        side,
        max_im_residue: max_im,
    })
}

/// Non-classicality indicator `delta = int |W| d^2 beta - 1`.
pub fn nonclassicality_delta(grid: &WignerGrid) -> f64 {
    grid.abs_integral() - 1.0
}

/// `delta(t)` over a time grid, with the default grid for `spec`.
pub fn delta_time_sweep(
    spec: &ModeSpec,
    params: &KerrParams,
    t_grid: &[f64],
) -> Result<Vec<f64>> {
    let gs = default_grid(spec);
    t_grid
        .iter()
        .map(|&t| {
            let rho = density_matrix(spec, params, t)?;
            Ok(nonclassicality_delta(&wigner_evaluate(&rho, gs)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kerr::brute_force_evolve;

    const CHI: f64 = 5.0;

    fn params() -> KerrParams {
        KerrParams::new(CHI)
    }

    #[test]
    fn cs_density_matrix_at_rest() {
        // rho_ln = alpha^l alpha*^n e^{-nu} / sqrt(l! n!)
        let spec = ModeSpec::coherent(1.0, 0.4);
        let dm = density_matrix(&spec, &params(), 0.0).unwrap();
        let alpha = spec.alpha();
        for l in 0..dm.dim().min(8) {
            for n in 0..dm.dim().min(8) {
                let expect = alpha.powu(l as u32)
                    * alpha.conj().powu(n as u32)
                    * (-spec.nu()).exp()
                    / (0.5 * (ln_factorial(l as u32) + ln_factorial(n as u32))).exp();
                let got = dm.rho[(l, n)];
                assert!((got - expect).norm() < 1e-12, "l={l} n={n}");
            }
        }
    }

    #[test]
    fn density_matrix_structure() {
        let p = params();
        for &(nu, m) in &[(1.0, 0u32), (1.0, 3), (4.0, 1)] {
            let spec = ModeSpec::photon_added(nu, 0.7, m);
            let dm = density_matrix(&spec, &p, 0.23).unwrap();
            assert!(dm.rho.hermiticity_residual() < 1e-12);
            assert!((dm.rho.trace().re - 1.0).abs() < 1e-10);
            assert!((dm.rho.trace_of_square() - 1.0).abs() < 1e-8);
            // PACS entries vanish identically below m
            for l in 0..m as usize {
                for n in 0..dm.dim() {
                    assert_eq!(dm.rho[(l, n)], C64::new(0.0, 0.0));
                    assert_eq!(dm.rho[(n, l)], C64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn density_matrix_is_outer_product_of_evolved_state() {
        let p = params();
        let spec = ModeSpec::photon_added(1.5, 0.2, 2);
        let t = 0.3 * p.t_rev();
        let dm = density_matrix(&spec, &p, t).unwrap();
        let st = make_state(&spec, DEFAULT_TOL).unwrap();
        let evolved = brute_force_evolve(&st, &p, t);
        let amps = evolved.amps();
        for l in 0..dm.dim() {
            for n in 0..dm.dim() {
                let expect = amps[l] * amps[n].conj();
                assert!(
                    (dm.rho[(l, n)] - expect).norm() < 1e-10,
                    "l={l} n={n}: {} vs {expect}",
                    dm.rho[(l, n)]
                );
            }
        }
    }

    #[test]
    fn wigner_cs_matches_displaced_gaussian() {
        let spec = ModeSpec::coherent(1.0, 0.4);
        let dm = density_matrix(&spec, &params(), 0.0).unwrap();
        let grid = wigner_evaluate(&dm, (3.0, 0.2)).unwrap();
        let alpha = spec.alpha();
        let axis = grid.axis();
        for (iy, &by) in axis.iter().enumerate() {
            for (ix, &bx) in axis.iter().enumerate() {
                let beta = C64::new(bx, by);
                let expect =
                    2.0 / core::f64::consts::PI * (-2.0 * (alpha - beta).norm_sqr()).exp();
                assert!(
                    (grid.value(ix, iy) - expect).abs() < 1e-8,
                    "beta = {beta}: {} vs {expect}",
                    grid.value(ix, iy)
                );
            }
        }
        assert!(grid.max_im_residue() < 1e-10);
    }

    #[test]
    fn wigner_value_at_alpha_is_two_over_pi() {
        // center the grid so a node lands exactly on beta = alpha
        let spec = ModeSpec::coherent(1.0, 0.0); // alpha = 1
        let dm = density_matrix(&spec, &params(), 0.0).unwrap();
        let grid = wigner_evaluate(&dm, (2.0, 0.5)).unwrap();
        let ix = grid.axis().iter().position(|&x| (x - 1.0).abs() < 1e-12).unwrap();
        let iy = grid.axis().iter().position(|&y| y.abs() < 1e-12).unwrap();
        assert!((grid.value(ix, iy) - 2.0 / core::f64::consts::PI).abs() < 1e-8);
    }

    #[test]
    fn wigner_pacs_matches_closed_form() {
        for &m in &[1u32, 3] {
            let spec = ModeSpec::photon_added(1.0, 0.3, m);
            let dm = density_matrix(&spec, &params(), 0.0).unwrap();
            let grid = wigner_evaluate(&dm, (3.0, 0.25)).unwrap();
            let alpha = spec.alpha();
            let nu = spec.nu();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let axis = grid.axis();
            for (iy, &by) in axis.iter().enumerate() {
                for (ix, &bx) in axis.iter().enumerate() {
                    let beta = C64::new(bx, by);
                    let expect = 2.0 * sign
                        / (core::f64::consts::PI * laguerre_f(m, 0, -nu))
                        * laguerre_f(m, 0, (2.0 * beta - alpha).norm_sqr())
                        * (-2.0 * (alpha - beta).norm_sqr()).exp();
                    assert!(
                        (grid.value(ix, iy) - expect).abs() < 1e-8,
                        "m={m} beta={beta}: {} vs {expect}",
                        grid.value(ix, iy)
                    );
                }
            }
        }
    }

    #[test]
    fn wigner_normalization_and_delta() {
        let p = params();
        // CS at rest: W >= 0, delta ~ 0
        let cs = density_matrix(&ModeSpec::coherent(1.0, 0.0), &p, 0.0).unwrap();
        let grid = wigner_evaluate(&cs, (5.0, 0.05)).unwrap();
        assert!((grid.integral() - 1.0).abs() < 2e-3);
        assert!(nonclassicality_delta(&grid) < 2e-3);
        // PACS m=1: negative lobe, delta > 0.01
        let pacs = density_matrix(&ModeSpec::photon_added(1.0, 0.0, 1), &p, 0.0).unwrap();
        let grid1 = wigner_evaluate(&pacs, (5.0, 0.05)).unwrap();
        assert!((grid1.integral() - 1.0).abs() < 2e-3);
        assert!(nonclassicality_delta(&grid1) > 0.01);
        assert!(grid1.min_value().0 < 0.0);
        // evolved state stays normalized
        let mid = density_matrix(&ModeSpec::coherent(1.0, 0.0), &p, p.t_rev() / 3.0).unwrap();
        let grid2 = wigner_evaluate(&mid, (5.0, 0.05)).unwrap();
        assert!((grid2.integral() - 1.0).abs() < 2e-3);
    }

    #[test]
    fn delta_grows_with_photon_addition() {
        let p = params();
        for &t_frac in &[0.0, 0.5, 1.0 / 3.0] {
            let t = t_frac * p.t_rev();
            let mut deltas = Vec::new();
            for &m in &[0u32, 1, 10] {
                let dm = density_matrix(&ModeSpec::photon_added(1.0, 0.0, m), &p, t).unwrap();
                let grid = wigner_evaluate(&dm, (5.0, 0.08)).unwrap();
                deltas.push(nonclassicality_delta(&grid));
            }
            assert!(
                deltas[2] > deltas[1] && deltas[1] > deltas[0],
                "t/T={t_frac}: {deltas:?}"
            );
        }
    }

    #[test]
    fn delta_sweep_minima_and_symmetry() {
        let p = params();
        let spec = ModeSpec::coherent(1.0, 0.0);
        let steps = 48usize;
        let t_grid: Vec<f64> = (0..=steps)
            .map(|i| i as f64 / steps as f64 * p.t_rev())
            .collect();
        // coarser grid than default keeps the sweep fast; delta ordering is
        // insensitive to it
        let deltas: Vec<f64> = t_grid
            .iter()
            .map(|&t| {
                let dm = density_matrix(&spec, &p, t).unwrap();
                nonclassicality_delta(&wigner_evaluate(&dm, (5.0, 0.1)).unwrap())
            })
            .collect();
        // revival: delta returns to its initial value
        assert!((deltas[steps] - deltas[0]).abs() < 3e-3);
        // time-reversal symmetry about T/2
        for i in 0..=steps {
            assert!(
                (deltas[i] - deltas[steps - i]).abs() < 3e-3,
                "asymmetry at index {i}"
            );
        }
        // deepest local minimum at T/2 (within one grid step), with a
        // shallower dip at T/3
        let local_minima = local_minima(&deltas);
        let deepest = *local_minima
            .iter()
            .min_by(|&&a, &&b| deltas[a].partial_cmp(&deltas[b]).unwrap())
            .unwrap();
        assert!(
            (deepest as i64 - (steps / 2) as i64).unsigned_abs() <= 1,
            "deepest local minimum at index {deepest} of {steps}: {local_minima:?}"
        );
        let third = steps / 3;
        assert!(
            local_minima
                .iter()
                .any(|&i| (i as i64 - third as i64).unsigned_abs() <= 1),
            "no local minimum near T/3"
        );
        assert!(deltas[deepest] < deltas[third]);
    }

    fn local_minima(curve: &[f64]) -> Vec<usize> {
        (1..curve.len() - 1)
            .filter(|&i| curve[i] < curve[i - 1] && curve[i] < curve[i + 1])
            .collect()
    }

    #[test]
    fn delta_sweep_pacs_resolves_quarter_revival() {
        // the 4-sub-packet dip is prominent for large m; minima order as
        // T/2 deepest, then T/3, then T/4
        let p = params();
        let spec = ModeSpec::photon_added(1.0, 0.0, 10);
        let steps = 48usize;
        let deltas: Vec<f64> = (0..=steps)
            .map(|i| {
                let t = i as f64 / steps as f64 * p.t_rev();
                let dm = density_matrix(&spec, &p, t).unwrap();
                nonclassicality_delta(&wigner_evaluate(&dm, (5.0, 0.1)).unwrap())
            })
            .collect();
        let minima = local_minima(&deltas);
        for frac in [2usize, 3, 4] {
            let near = steps / frac;
            assert!(
                minima.iter().any(|&i| (i as i64 - near as i64).unsigned_abs() <= 1),
                "no local minimum near T/{frac}: {minima:?}"
            );
        }
        assert!(deltas[steps / 2] < deltas[steps / 3]);
        assert!(deltas[steps / 3] < deltas[steps / 4]);
    }

    #[test]
    fn wigner_overflow_is_reported() {
        let spec = ModeSpec::photon_added(1.0, 0.0, 5);
        let dm = density_matrix(&spec, &params(), 0.0).unwrap();
        let err = wigner_evaluate(&dm, (1e9, 1e9)).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)));
    }

    #[test]
    fn wigner_rejects_bad_grid() {
        let dm = density_matrix(&ModeSpec::coherent(0.5, 0.0), &params(), 0.0).unwrap();
        assert!(wigner_evaluate(&dm, (0.0, 0.1)).is_err());
        assert!(wigner_evaluate(&dm, (1.0, -0.1)).is_err());
    }
}
