//! Numerical engine for single- and two-mode wave packet dynamics in
//! Kerr-like media.
//!
//! The crate is organized around the physics it computes:
//!
//! - [`specfun`]: Laguerre polynomials, log-factorials, binomials.
//! - [`states`]: coherent, photon-added coherent, and Fock states.
//! - [`kerr`]: single-mode evolution under `H = chi N(N-1)` — analytic
//!   moments, cumulants, revivals and fractional revivals.
//! - [`squeezing`]: qth-power amplitude squeezing and Hong–Mandel moments.
//! - [`wigner`]: density matrices, Wigner functions, non-classicality.
//! - [`twomode`]: field–atom coupling, block diagonalization, entropies.
//! - [`classical`]: the classical-limit Hamiltonian reference integrator.
//! - [`tsa`]: delay embedding, correlation exponent, Lyapunov estimation.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion
//! `kerr-lab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classical;
pub mod error;
pub mod fft;
pub mod kerr;
pub mod linalg;
pub mod specfun;
pub mod squeezing;
pub mod states;
pub mod tsa;
pub mod twomode;
pub mod wigner;

pub use error::{Error, Result};

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex<f64>;
