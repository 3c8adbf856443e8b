//! Field mode coupled to an anharmonic atomic oscillator:
//! `H = omega a†a + omega0 b†b + gamma b†^2 b^2 + g (a†b + b†a)`.
//!
//! `N_tot = a†a + b†b` commutes with `H`, so `H` block-diagonalizes over
//! the ladders `|N-n; n>`, `n = 0..N`; each block is a real symmetric
//! tridiagonal matrix. Evolution, reduced density matrices, entropies and
//! quadrature statistics are all assembled from the per-block eigensystems
//! `lambda_Ns`, `d_n^{Ns}`.

use crate::linalg::{hermitian_eigenvalues, tridiagonal_eigen, CMat};
use crate::states::{make_state, ModeSpec};
use crate::tsa::TimeSeries;
use crate::{C64, Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Parameters of the coupled field–atom Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeParams {
    pub omega: f64,
    pub omega0: f64,
    pub gamma: f64,
    pub g: f64,
}

impl TwoModeParams {
    pub fn new(omega: f64, omega0: f64, gamma: f64, g: f64) -> Self {
        assert!(g > 0.0, "coupling g must be positive");
        assert!(gamma >= 0.0, "anharmonicity gamma must be non-negative");
        TwoModeParams {
            omega,
            omega0,
            gamma,
            g,
        }
    }

    /// Nonlinearity-to-coupling ratio `gamma / g`.
    pub fn ratio(&self) -> f64 {
        self.gamma / self.g
    }
}

/// Per-block eigensystem of one `N_tot = N` sector.
#[derive(Debug, Clone)]
pub struct BlockEigen {
    /// `lambda_Ns`, ascending in `s`.
    pub values: Vec<f64>,
    /// `vectors[s][n] = d_n^{Ns}`.
    pub vectors: Vec<Vec<f64>>,
}

/// Eigensystems of every block `N = 0..=n_tot_max`.
#[derive(Debug, Clone)]
pub struct BlockEigensystem {
    pub params: TwoModeParams,
    blocks: Vec<BlockEigen>,
}

impl BlockEigensystem {
    pub fn n_tot_max(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, n: usize) -> &BlockEigen {
        &self.blocks[n]
    }

    /// Reassemble an eigensystem (e.g. from a cache file); `values[n]` and
    /// `vectors[n]` hold the block-`n` eigenvalues and eigenvectors.
    pub fn from_parts(
        params: TwoModeParams,
        values: Vec<Vec<f64>>,
        vectors: Vec<Vec<Vec<f64>>>,
    ) -> Self {
        assert_eq!(values.len(), vectors.len());
        let blocks = values
            .into_iter()
            .zip(vectors)
            .map(|(values, vectors)| BlockEigen { values, vectors })
            .collect();
        BlockEigensystem { params, blocks }
    }
}

/// Tridiagonal representation of the block `N`: diagonal
/// `omega (N-n) + omega0 n + gamma n(n-1)`, off-diagonal
/// `g sqrt((N-n)(n+1))`.
pub fn block_tridiagonal(params: &TwoModeParams, n_tot: usize) -> (Vec<f64>, Vec<f64>) {
    let diag: Vec<f64> = (0..=n_tot)
        .map(|n| {
            params.omega * (n_tot - n) as f64
                + params.omega0 * n as f64
                + params.gamma * (n * n.saturating_sub(1)) as f64
        })
        .collect();
    let off: Vec<f64> = (0..n_tot)
        .map(|n| params.g * (((n_tot - n) * (n + 1)) as f64).sqrt())
        .collect();
    (diag, off)
}

/// Dense block Hamiltonian from the angular-momentum form
/// `H = (omega+omega0-gamma)/2 N + (omega-omega0+gamma) J_z
///      + gamma/4 (N - 2 J_z)^2 + 2 g J_x`,
/// with `J_z = (a†a - b†b)/2` and `J_x = (a†b + a b†)/2`.
pub fn block_from_angular_momentum_form(params: &TwoModeParams, n_tot: usize) -> Vec<Vec<f64>> {
    let dim = n_tot + 1;
    let mut h = vec![vec![0.0; dim]; dim];
    let nf = n_tot as f64;
    for n in 0..dim {
        let jz = 0.5 * (nf - 2.0 * n as f64);
        h[n][n] = 0.5 * (params.omega + params.omega0 - params.gamma) * nf
            + (params.omega - params.omega0 + params.gamma) * jz
            + 0.25 * params.gamma * (nf - 2.0 * jz) * (nf - 2.0 * jz);
    }
    for n in 0..n_tot {
        // 2g J_x couples |N-n; n> and |N-n-1; n+1>
        let v = params.g * (((n_tot - n) * (n + 1)) as f64).sqrt();
        h[n][n + 1] = v;
        h[n + 1][n] = v;
    }
    h
}

/// Diagonalize every `N_tot` block up to `n_tot_max`.
pub fn diagonalize_blocks(params: &TwoModeParams, n_tot_max: usize) -> Result<BlockEigensystem> {
    let mut blocks = Vec::with_capacity(n_tot_max + 1);
    for n_tot in 0..=n_tot_max {
        let (diag, off) = block_tridiagonal(params, n_tot);
        let eig = tridiagonal_eigen(&diag, &off).map_err(|e| {
            Error::Numerical(format!("block N={n_tot}: {e}"))
        })?;
        let mut vectors = eig.vectors;
        // re-orthonormalize if the QL output drifted
        let mut worst = 0.0f64;
        for i in 0..vectors.len() {
            for j in (i + 1)..vectors.len() {
                let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum();
                worst = worst.max(dot.abs());
            }
        }
        if worst > 1e-12 {
            gram_schmidt(&mut vectors);
        }
        blocks.push(BlockEigen {
            values: eig.values,
            vectors,
        });
    }
    Ok(BlockEigensystem {
        params: *params,
        blocks,
    })
}

fn gram_schmidt(vectors: &mut [Vec<f64>]) {
    for i in 0..vectors.len() {
        for j in 0..i {
            let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum();
            let prev = vectors[j].clone();
            for (vi, pj) in vectors[i].iter_mut().zip(&prev) {
                *vi -= dot * pj;
            }
        }
        let norm: f64 = vectors[i].iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in vectors[i].iter_mut() {
            *v /= norm;
        }
    }
}

/// Initial product state: the field in `spec`, the atom in its ground
/// state `|0>_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductInitialState {
    pub field: ModeSpec,
}

impl ProductInitialState {
    pub fn new(field: ModeSpec) -> Self {
        ProductInitialState { field }
    }

    /// Field amplitudes `c_N` over the retained blocks; errors if the
    /// discarded weight beyond `n_tot_max` exceeds `tol`.
    pub fn field_amplitudes(&self, n_tot_max: usize, tol: f64) -> Result<Vec<C64>> {
        let st = make_state(&self.field, 1e-12)?;
        let mut amps: Vec<C64> = st.amps().to_vec();
        if amps.len() > n_tot_max + 1 {
            let tail: f64 = amps[n_tot_max + 1..].iter().map(|c| c.norm_sqr()).sum();
            if tail >= tol {
                return Err(Error::Capacity {
                    what: format!(
                        "initial-state weight {tail:.3e} beyond N_tot = {n_tot_max} exceeds {tol:.1e}"
                    ),
                    needed: amps.len() - 1,
                    cap: n_tot_max,
                });
            }
            amps.truncate(n_tot_max + 1);
        } else {
            amps.resize(n_tot_max + 1, C64::new(0.0, 0.0));
        }
        Ok(amps)
    }
}

/// Smallest `n_tot_max` for which the initial-state weight beyond it is
/// below `tol`.
pub fn required_n_tot(initial: &ProductInitialState, tol: f64) -> Result<usize> {
    let st = make_state(&initial.field, 1e-12)?;
    let probs = st.photon_distribution();
    let mut tail = 0.0;
    let mut cut = probs.len() - 1;
    for n in (0..probs.len()).rev() {
        tail += probs[n];
        if tail >= tol {
            cut = n;
            break;
        }
    }
    Ok(cut)
}

/// The evolved two-mode state.
#[derive(Debug, Clone)]
pub struct TwoModeState {
    /// Coefficients over the eigenstates, `u[N][s] = c_N d_0^{Ns} e^{-i lambda_Ns t}`.
    eigen_coeffs: Vec<Vec<C64>>,
    /// Product-basis amplitudes `psi[N][n] = <N-n; n|psi(t)>`.
    amps: Vec<Vec<C64>>,
    pub t: f64,
}

/// Which sub-system a reduced density matrix describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    FieldA,
    AtomB,
}

/// Reduced density matrix of one mode in its Fock basis.
#[derive(Debug, Clone)]
pub struct ReducedDensityMatrix {
    pub side: Side,
    pub rho: CMat,
    pub t: f64,
}

impl TwoModeState {
    pub fn norm_sqr(&self) -> f64 {
        self.eigen_coeffs
            .iter()
            .flat_map(|u| u.iter())
            .map(|c| c.norm_sqr())
            .sum()
    }

    pub fn n_tot_max(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn eigen_coeffs(&self) -> &[Vec<C64>] {
        &self.eigen_coeffs
    }

    pub fn amps(&self) -> &[Vec<C64>] {
        &self.amps
    }

    /// `<N_tot>`, conserved by construction.
    pub fn mean_n_tot(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, row)| n as f64 * row.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum()
    }

    /// Amplitudes after lowering the field `ka` times and the atom `kb`
    /// times: `phi[N][nb] = sqrt(...) psi[N+ka+kb][nb+kb]`.
    fn lowered(&self, ka: u32, kb: u32) -> Vec<Vec<C64>> {
        let shift = (ka + kb) as usize;
        let n_max = self.amps.len() - 1;
        let mut out = Vec::with_capacity(n_max + 1);
        for n_tot in 0..=n_max {
            let src_tot = n_tot + shift;
            let mut row = vec![C64::new(0.0, 0.0); n_tot + 1];
            if src_tot <= n_max {
                for nb in 0..=n_tot {
                    let na = n_tot - nb;
                    let src = &self.amps[src_tot][nb + kb as usize];
                    if *src == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let mut w = 1.0;
                    for j in (na + 1)..=(na + ka as usize) {
                        w *= j as f64;
                    }
                    for j in (nb + 1)..=(nb + kb as usize) {
                        w *= j as f64;
                    }
                    row[nb] = w.sqrt() * src;
                }
            }
            out.push(row);
        }
        out
    }

    /// `<a†^ra b†^rb a^sa b^sb>`.
    pub fn monomial(&self, ra: u32, rb: u32, sa: u32, sb: u32) -> C64 {
        let lhs = self.lowered(ra, rb);
        let rhs = self.lowered(sa, sb);
        let mut acc = C64::new(0.0, 0.0);
        for (l_row, r_row) in lhs.iter().zip(&rhs) {
            for (l, r) in l_row.iter().zip(r_row) {
                acc += l.conj() * r;
            }
        }
        acc
    }

    /// Expectation of a function of the photon numbers, `<f(n_a, n_b)>`.
    pub fn number_expectation(&self, f: impl Fn(usize, usize) -> f64) -> f64 {
        let mut acc = 0.0;
        for (n_tot, row) in self.amps.iter().enumerate() {
            for (nb, c) in row.iter().enumerate() {
                acc += c.norm_sqr() * f(n_tot - nb, nb);
            }
        }
        acc
    }
}

/// Evolve the product initial state to time `t` through the eigensystem.
pub fn evolve(
    initial: &ProductInitialState,
    eig: &BlockEigensystem,
    t: f64,
) -> Result<TwoModeState> {
    let n_tot_max = eig.n_tot_max();
    let c = initial.field_amplitudes(n_tot_max, 1e-10)?;
    let mut eigen_coeffs = Vec::with_capacity(n_tot_max + 1);
    let mut amps = Vec::with_capacity(n_tot_max + 1);
    for n_tot in 0..=n_tot_max {
        let block = eig.block(n_tot);
        let dim = n_tot + 1;
        let mut u = vec![C64::new(0.0, 0.0); dim];
        for s in 0..dim {
            let (sin, cos) = (-block.values[s] * t).sin_cos();
            u[s] = c[n_tot] * block.vectors[s][0] * C64::new(cos, sin);
        }
        let mut row = vec![C64::new(0.0, 0.0); dim];
        for (s, us) in u.iter().enumerate() {
            if *us == C64::new(0.0, 0.0) {
                continue;
            }
            for (n, d) in block.vectors[s].iter().enumerate() {
                row[n] += us * d;
            }
        }
        eigen_coeffs.push(u);
        amps.push(row);
    }
    let state = TwoModeState {
        eigen_coeffs,
        amps,
        t,
    };
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Consistency(format!(
            "evolved-state norm^2 = {norm} departs from 1"
        )));
    }
    Ok(state)
}

/// Partial trace over the complementary mode.
pub fn reduced_density(state: &TwoModeState, side: Side) -> ReducedDensityMatrix {
    let n_max = state.n_tot_max();
    let dim = n_max + 1;
    let mut rho = CMat::zeros(dim);
    match side {
        Side::FieldA => {
            // <l| rho_a |l'> = sum_nb psi[l+nb][nb] conj(psi[l'+nb][nb])
            for l in 0..dim {
                for lp in l..dim {
                    let mut acc = C64::new(0.0, 0.0);
                    for nb in 0..dim {
                        if l + nb > n_max || lp + nb > n_max {
                            break;
                        }
                        acc += state.amps[l + nb][nb] * state.amps[lp + nb][nb].conj();
                    }
                    rho[(l, lp)] = acc;
                    rho[(lp, l)] = acc.conj();
                }
            }
        }
        Side::AtomB => {
            for n in 0..dim {
                for np in n..dim {
                    let mut acc = C64::new(0.0, 0.0);
                    for la in 0..dim {
                        if la + n > n_max || la + np > n_max {
                            break;
                        }
                        acc += state.amps[la + n][n] * state.amps[la + np][np].conj();
                    }
                    rho[(n, np)] = acc;
                    rho[(np, n)] = acc.conj();
                }
            }
        }
    }
    ReducedDensityMatrix {
        side,
        rho,
        t: state.t,
    }
}

/// Sub-system von Neumann entropy and linear entropy `(SVNE, SLE)`.
pub fn entropies(rho: &ReducedDensityMatrix) -> Result<(f64, f64)> {
    let eig = hermitian_eigenvalues(&rho.rho)?;
    let mut svne = 0.0;
    let mut purity = 0.0;
    for &lam in &eig {
        if lam < -1e-6 {
            return Err(Error::Consistency(format!(
                "reduced density matrix eigenvalue {lam} < -1e-6"
            )));
        }
        // clamp rounding noise; 0 ln 0 = 0
        if lam < 1e-14 {
            continue;
        }
        svne -= lam * lam.ln();
        purity += lam * lam;
    }
    Ok((svne, 1.0 - purity))
}

/// Quadrature statistics of the coupled system at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureStats {
    pub mean_xi: f64,
    pub mean_eta: f64,
    pub var_xi: f64,
    /// Third central moment `<(d xi)^3>`.
    pub skew3_xi: f64,
    /// Two-mode qth-power amplitude-squeezing indicator.
    pub d_q: f64,
}

/// Statistics of `xi = (x_a + x_b)/2`, `eta = (p_a + p_b)/2`, and the
/// two-mode `D_q` built on `Z_1 = (a^q + a†^q + b^q + b†^q)/(2 sqrt 2)`.
pub fn quadrature_stats(state: &TwoModeState, q: u32) -> Result<QuadratureStats> {
    assert!(q >= 1);
    // A = a + b has [A, A†] = 2
    let a1 = state.monomial(0, 0, 1, 0) + state.monomial(0, 0, 0, 1);
    let a2 = state.monomial(0, 0, 2, 0)
        + 2.0 * state.monomial(0, 0, 1, 1)
        + state.monomial(0, 0, 0, 2);
    let a3 = state.monomial(0, 0, 3, 0)
        + 3.0 * state.monomial(0, 0, 2, 1)
        + 3.0 * state.monomial(0, 0, 1, 2)
        + state.monomial(0, 0, 0, 3);
    let ada = state.monomial(1, 0, 1, 0)
        + state.monomial(1, 0, 0, 1)
        + state.monomial(0, 1, 1, 0)
        + state.monomial(0, 1, 0, 1);
    let ada2 = state.monomial(1, 0, 2, 0)
        + 2.0 * state.monomial(1, 0, 1, 1)
        + state.monomial(1, 0, 0, 2)
        + state.monomial(0, 1, 2, 0)
        + 2.0 * state.monomial(0, 1, 1, 1)
        + state.monomial(0, 1, 0, 2);

    let s8 = 2.0 * core::f64::consts::SQRT_2; // (2 sqrt 2)
    let mean_xi = 2.0 * a1.re / s8;
    let mean_eta = 2.0 * a1.im / s8;
    let xi2 = (2.0 * a2.re + 2.0 * ada.re + 2.0) / 8.0;
    let xi3 = (2.0 * a3.re + 6.0 * ada2.re + 12.0 * a1.re) / (s8 * s8 * s8);
    let var_xi = xi2 - mean_xi * mean_xi;
    let skew3_xi = xi3 - 3.0 * xi2 * mean_xi + 2.0 * mean_xi.powi(3);

    // Z_1 = (A_q + A_q†)/(2 sqrt 2), A_q = a^q + b^q,
    // [A_q, A_q†] = F_q(N_a) + F_q(N_b)
    let aq = state.monomial(0, 0, q, 0) + state.monomial(0, 0, 0, q);
    let aq2 = state.monomial(0, 0, 2 * q, 0)
        + 2.0 * state.monomial(0, 0, q, q)
        + state.monomial(0, 0, 0, 2 * q);
    let adq_aq = state.monomial(q, 0, q, 0)
        + state.monomial(q, 0, 0, q)
        + state.monomial(0, q, q, 0)
        + state.monomial(0, q, 0, q);
    let comm = state.number_expectation(|na, nb| {
        crate::squeezing::f_q_polynomial(q, na as u32)
            + crate::squeezing::f_q_polynomial(q, nb as u32)
    });
    // |<[Z_1, Z_2]>| = comm / 4
    if comm.abs() / 4.0 < 1e-12 {
        return Err(Error::DegenerateData(String::from(
            "two-mode D_q: |<[Z1, Z2]>| below 1e-12",
        )));
    }
    let z1_mean = 2.0 * aq.re / s8;
    let z1_sq = (2.0 * aq2.re + 2.0 * adq_aq.re + comm) / 8.0;
    let var_z1 = z1_sq - z1_mean * z1_mean;
    let half_comm = comm / 8.0;
    let d_q = (var_z1 - half_comm) / half_comm;

    Ok(QuadratureStats {
        mean_xi,
        mean_eta,
        var_xi,
        skew3_xi,
        d_q,
    })
}

/// `<a†a>` and `<b†b>` over a uniform time grid.
pub struct PhotonNumberSeries {
    pub field: TimeSeries,
    pub atom: TimeSeries,
}

/// Sample the mean photon numbers over `t_grid` (uniform spacing).
///
/// Per block, `<a†a>` reduces to a quadratic form in the phase-rotated
/// eigen-coefficients with the time-independent matrices
/// `A_N[s][s'] = sum_n (N - n) d_n^{Ns} d_n^{Ns'}` (likewise `B_N` with `n`).
pub fn mean_photon_series(
    initial: &ProductInitialState,
    eig: &BlockEigensystem,
    t_grid: &[f64],
) -> Result<PhotonNumberSeries> {
    if t_grid.len() < 2 {
        return Err(Error::Domain("mean_photon_series: need >= 2 samples".into()));
    }
    let dt = t_grid[1] - t_grid[0];
    for w in t_grid.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.abs().max(1e-300) {
            return Err(Error::Domain("mean_photon_series: non-uniform grid".into()));
        }
    }
    let n_tot_max = eig.n_tot_max();
    let c = initial.field_amplitudes(n_tot_max, 1e-10)?;

    // base coefficients and per-block quadratic forms
    let mut base: Vec<Vec<f64>> = Vec::with_capacity(n_tot_max + 1);
    let mut mat_a: Vec<Vec<f64>> = Vec::with_capacity(n_tot_max + 1);
    let mut mat_b: Vec<Vec<f64>> = Vec::with_capacity(n_tot_max + 1);
    for n_tot in 0..=n_tot_max {
        let block = eig.block(n_tot);
        let dim = n_tot + 1;
        base.push((0..dim).map(|s| block.vectors[s][0]).collect());
        let mut a = vec![0.0; dim * dim];
        let mut b = vec![0.0; dim * dim];
        for s in 0..dim {
            for sp in s..dim {
                let mut acc_a = 0.0;
                let mut acc_b = 0.0;
                for n in 0..dim {
                    let w = block.vectors[s][n] * block.vectors[sp][n];
                    acc_a += (n_tot - n) as f64 * w;
                    acc_b += n as f64 * w;
                }
                a[s * dim + sp] = acc_a;
                a[sp * dim + s] = acc_a;
                b[s * dim + sp] = acc_b;
                b[sp * dim + s] = acc_b;
            }
        }
        mat_a.push(a);
        mat_b.push(b);
    }

    let mut na = Vec::with_capacity(t_grid.len());
    let mut nb = Vec::with_capacity(t_grid.len());
    let mut phases: Vec<C64> = Vec::new();
    for &t in t_grid {
        let mut acc_a = 0.0;
        let mut acc_b = 0.0;
        for n_tot in 0..=n_tot_max {
            let w = c[n_tot].norm_sqr();
            if w < 1e-300 {
                continue;
            }
            let block = eig.block(n_tot);
            let dim = n_tot + 1;
            phases.clear();
            phases.extend((0..dim).map(|s| {
                let (sin, cos) = (-block.values[s] * t).sin_cos();
                base[n_tot][s] * C64::new(cos, sin)
            }));
            let a = &mat_a[n_tot];
            let b = &mat_b[n_tot];
            let mut qa = 0.0;
            let mut qb = 0.0;
            for s in 0..dim {
                let vs = phases[s];
                // diagonal
                qa += a[s * dim + s] * vs.norm_sqr();
                qb += b[s * dim + s] * vs.norm_sqr();
                for sp in (s + 1)..dim {
                    let cross = 2.0 * (vs.conj() * phases[sp]).re;
                    qa += a[s * dim + sp] * cross;
                    qb += b[s * dim + sp] * cross;
                }
            }
            acc_a += w * qa;
            acc_b += w * qb;
        }
        na.push(acc_a);
        nb.push(acc_b);
    }
    Ok(PhotonNumberSeries {
        field: TimeSeries::new(na, dt, "mean_na")?,
        atom: TimeSeries::new(nb, dt, "mean_nb")?,
    })
}

/// `<J_y> = Im <a† b>`; the photon-number flow obeys `d<a†a>/dt = 2 g <J_y>`.
pub fn mean_j_y(state: &TwoModeState) -> f64 {
    state.monomial(1, 0, 0, 1).im
}
