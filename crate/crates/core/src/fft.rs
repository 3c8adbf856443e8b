//! Radix-2 FFT for power-of-two lengths; enough for periodograms.

use crate::C64;
use alloc::vec::Vec;
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Smallest power of two >= `n` (and >= 1).
pub fn next_pow2(n: usize) -> usize {
    let mut p = 1;
    while p < n {
        p <<= 1;
    }
    p
}

/// In-place forward DFT, `X_k = sum_j x_j e^{-2 pi i j k / n}`.
///
/// *Panics* if the length is not a power of two.
pub fn fft_in_place(x: &mut [C64]) {
    let n = x.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two");
    if n <= 1 {
        return;
    }
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 0..n - 1 {
        if i < j {
            x.swap(i, j);
        }
        let mut mask = n >> 1;
        while j & mask != 0 {
            j &= !mask;
            mask >>= 1;
        }
        j |= mask;
    }
    // butterflies
    let mut len = 2;
    while len <= n {
        let ang = -2.0 * core::f64::consts::PI / len as f64;
        let half = len / 2;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let (s, c) = (ang * k as f64).sin_cos();
                let w = C64::new(c, s);
                let u = x[start + k];
                let v = x[start + k + half] * w;
                x[start + k] = u + v;
                x[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }
}

/// Forward DFT of a real signal, zero-padded to the next power of two.
pub fn fft_real_padded(signal: &[f64]) -> Vec<C64> {
    let n = next_pow2(signal.len());
    let mut buf: Vec<C64> = signal.iter().map(|&v| C64::new(v, 0.0)).collect();
    buf.resize(n, C64::new(0.0, 0.0));
    fft_in_place(&mut buf);
    buf
}
