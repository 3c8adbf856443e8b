//! Special functions shared by the physics modules: associated Laguerre
//! polynomials, log-factorials, and binomial coefficients.
//!
//! Conventions follow the generating-series definitions
//!
//! ```text
//! L_m(x)   = sum_{n=0}^{m} C(m, n)   (-x)^n / n!
//! L_m^s(x) = sum_{n=0}^{m} C(m+s, n+s) (-x)^n / n!
//! ```
//!
//! so that `L_m = L_m^0`, `L_m^s(0) = C(m+s, s)`, and all values are real
//! analytic in the argument.

use crate::{C64, Error, Result};
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Arguments of an associated Laguerre evaluation.
///
/// Bundles the order `m`, superscript `s`, and (complex) argument; both
/// indices are non-negative by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreArgs {
    pub m: u32,
    pub s: u32,
    pub x: C64,
}

/// Associated Laguerre polynomial `L_m^s(x)` at complex argument.
///
/// Evaluated by the three-term recurrence in the degree,
///
/// ```text
/// (k+1) L_{k+1}^s = (2k+1+s-x) L_k^s - (k+s) L_{k-1}^s,
/// ```
///
/// which is well-conditioned over the degrees (`m <~ 40`) and arguments
/// used here, in contrast to the alternating explicit series. All
/// coefficients are real, so `L_m^s(x*) = [L_m^s(x)]*` holds bit for bit.
pub fn laguerre(m: u32, s: u32, x: C64) -> Result<C64> {
    if !x.re.is_finite() || !x.im.is_finite() {
        return Err(Error::Domain(alloc::format!(
            "laguerre: non-finite argument {x}"
        )));
    }
    Ok(laguerre_c(m, s, x))
}

pub(crate) fn laguerre_c(m: u32, s: u32, x: C64) -> C64 {
    let s = s as f64;
    let mut prev = C64::new(1.0, 0.0);
    if m == 0 {
        return prev;
    }
    let mut cur = C64::new(1.0 + s, 0.0) - x;
    for k in 1..m as u64 {
        let k = k as f64;
        let next = ((C64::new(2.0 * k + 1.0 + s, 0.0) - x) * cur - (k + s) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Associated Laguerre polynomial at real argument.
pub fn laguerre_f(m: u32, s: u32, x: f64) -> f64 {
    let s = s as f64;
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 1.0 + s - x;
    for k in 1..m as u64 {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + s - x) * cur - (k + s) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

// ln(n!) for n = 0..=29, to full f64 precision.
const LN_FACTORIAL_TABLE: [f64; 30] = [
    0.0,
    0.0,
    0.6931471805599453,
    1.791759469228055,
    3.1780538303479458,
    4.787491742782046,
    6.579251212010101,
    8.525161361065415,
    10.60460290274525,
    12.801827480081469,
    15.104412573075516,
    17.502307845873887,
    19.987214495661885,
    22.552163853123425,
    25.19122118273868,
    27.89927138384089,
    30.671860106080672,
    33.50507345013689,
    36.39544520803305,
    39.339884187199495,
    42.335616460753485,
    45.38013889847691,
    48.47118135183523,
    51.60667556776438,
    54.78472939811232,
    58.00360522298052,
    61.261701761002,
    64.55753862700633,
    67.88974313718154,
    71.25703896716801,
];

/// `ln(n!)`, exact to a part in 1e13 or better over the whole range.
///
/// Table lookup for `n < 30`, Stirling's series beyond.
pub fn ln_factorial(n: u32) -> f64 {
    if (n as usize) < LN_FACTORIAL_TABLE.len() {
        return LN_FACTORIAL_TABLE[n as usize];
    }
    // ln Gamma(z) at z = n + 1 via Stirling:
    //   (z - 1/2) ln z - z + ln(2 pi)/2 + 1/(12 z) - 1/(360 z^3) + ...
    let z = n as f64 + 1.0;
    let zi = 1.0 / z;
    let zi2 = zi * zi;
    let series = zi * (1.0 / 12.0 + zi2 * (-1.0 / 360.0 + zi2 * (1.0 / 1260.0 - zi2 / 1680.0)));
    const HALF_LN_TWO_PI: f64 = 0.9189385332046727;
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

/// Binomial coefficient `C(n, k)` as a float.
///
/// Returns 0 for `k < 0` or `k > n`; this encodes the convention that
/// `1/(-n)!` terms vanish, so sums over shifted binomials need no edge
/// guards at the call site.
pub fn binomial(n: u32, k: i64) -> f64 {
    if k < 0 || k > n as i64 {
        return 0.0;
    }
    let k = (k as u32).min(n - k as u32);
    if k == 0 {
        return 1.0;
    }
    let ln_c = ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
    // The running product C(n-k+i, i) * (n-k+i+1) stays an exact integer;
    // keep the integer path while it fits u128 comfortably.
    if ln_c < 82.0 {
        let mut res: u128 = 1;
        for i in 1..=k as u128 {
            res = res * (n as u128 - k as u128 + i) / i;
        }
        res as f64
    } else {
        ln_c.exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::{BigInt, BigUint};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exact-rational series oracle for L_m^s at an argument that is an
    /// exact binary rational (any f64 qualifies).
    fn laguerre_rational_oracle(m: u32, s: u32, x: f64) -> f64 {
        // x = xn / xd exactly
        let (mant, exp2, sign) = {
            let bits = x.abs().to_bits();
            let exp = ((bits >> 52) & 0x7ff) as i64;
            let frac = bits & ((1u64 << 52) - 1);
            let (mant, exp) = if exp == 0 {
                (frac, -1074i64)
            } else {
                (frac | (1 << 52), exp - 1075)
            };
            (mant, exp, x.signum())
        };
        let xn = BigInt::from(mant) * BigInt::from(sign as i64)
            * if exp2 >= 0 {
                BigInt::from(2u8).pow(exp2 as u32)
            } else {
                BigInt::from(1u8)
            };
        let xd = if exp2 < 0 {
            BigInt::from(2u8).pow((-exp2) as u32)
        } else {
            BigInt::from(1u8)
        };

        // sum_n C(m+s, n+s) (-x)^n / n! as a single fraction
        let mut num = BigInt::from(0u8);
        let mut den = BigInt::from(1u8);
        let mut neg_x_pow_n = BigInt::from(1u8); // (-xn)^n
        let mut xd_pow_n = BigInt::from(1u8);
        let mut n_fact = BigInt::from(1u8);
        for n in 0..=m {
            if n > 0 {
                neg_x_pow_n *= -&xn;
                xd_pow_n *= &xd;
                n_fact *= BigInt::from(n);
            }
            let c = big_binomial(m + s, n + s);
            // term = c * neg_x_pow_n / (xd_pow_n * n_fact)
            let term_num = c * &neg_x_pow_n;
            let term_den = &xd_pow_n * &n_fact;
            num = num * &term_den + &term_num * &den;
            den *= term_den;
        }
        big_ratio_to_f64(&num, &den)
    }

    fn big_binomial(n: u32, k: u32) -> BigInt {
        let mut res = BigInt::from(1u8);
        for i in 1..=k.min(n - k) {
            res = res * BigInt::from(n - k.min(n - k) + i) / BigInt::from(i);
        }
        res
    }

    fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
        // Scale so the integer quotient carries >= 96 significant bits.
        let mut shift: u64 = 96;
        loop {
            let q = (num << shift) / den;
            let bits = q.magnitude().bits();
            if bits >= 96 || shift > 4096 {
                let q_f = big_to_f64(&q);
                return q_f * 2f64.powi(-(shift as i32));
            }
            shift += 96 - bits.min(96) + 1;
        }
    }

    fn big_to_f64(x: &BigInt) -> f64 {
        let bits = x.magnitude().bits();
        if bits <= 53 {
            x.to_string().parse::<f64>().unwrap()
        } else {
            let shifted: BigInt = x >> (bits - 53);
            let top = shifted.to_string().parse::<f64>().unwrap();
            top * 2f64.powi((bits - 53) as i32)
        }
    }

    fn ln_big(x: &BigUint) -> f64 {
        let bits = x.bits();
        if bits <= 53 {
            let mut v = 0f64;
            for d in x.to_u64_digits() {
                v = d as f64; // single digit when bits <= 53... fits u64
            }
            v.ln()
        } else {
            let shifted = x >> (bits - 53);
            let top = shifted.to_u64_digits()[0] as f64;
            top.ln() + (bits - 53) as f64 * core::f64::consts::LN_2
        }
    }

    #[test]
    fn laguerre_order_zero_is_one() {
        assert_eq!(laguerre(0, 0, C64::new(3.7, 0.0)).unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn laguerre_order_one() {
        // L_1(x) = 1 - x
        assert_eq!(laguerre(1, 0, C64::new(-1.0, 0.0)).unwrap(), C64::new(2.0, 0.0));
    }

    #[test]
    fn laguerre_rejects_non_finite() {
        assert!(laguerre(3, 0, C64::new(f64::NAN, 0.0)).is_err());
        assert!(laguerre(3, 0, C64::new(0.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn laguerre_matches_exact_rational_series() {
        // (m, s, x, relative tolerance)
        let cases = [
            (5, 2, -0.7, 1e-12),
            (12, 0, 3.25, 1e-12),
            (25, 1, 33.3, 1e-10),
            (40, 3, 50.0, 1e-10),
            (40, 0, -50.0, 1e-12),
            (33, 7, 17.0, 1e-10),
        ];
        for (m, s, x, tol) in cases {
            let exact = laguerre_rational_oracle(m, s, x);
            let got = laguerre(m, s, C64::new(x, 0.0)).unwrap();
            assert!(
                (got.re - exact).abs() <= tol * exact.abs().max(1.0),
                "L_{m}^{s}({x}): got {}, exact {exact}",
                got.re
            );
            assert_eq!(got.im, 0.0);
        }
    }

    #[test]
    fn laguerre_three_term_recurrence() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1a9);
        for _ in 0..400 {
            let m = rng.gen_range(1..=39u32);
            let s = rng.gen_range(0..=5u32);
            let x = C64::new(rng.gen_range(-50.0..50.0), 0.0);
            let lm1 = laguerre_c(m - 1, s, x);
            let lm = laguerre_c(m, s, x);
            let lp1 = laguerre_c(m + 1, s, x);
            let lhs = (m as f64 + 1.0) * lp1;
            let rhs = (C64::new(2.0 * m as f64 + 1.0 + s as f64, 0.0) - x) * lm
                - (m as f64 + s as f64) * lm1;
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            assert!(
                (lhs - rhs).norm() <= 1e-10 * scale,
                "recurrence failed at m={m} s={s} x={x}"
            );
        }
    }

    #[test]
    fn laguerre_derivative_identity() {
        // L_m^1(-nu) = d L_{m+1}(-nu) / d nu, checked by central differences
        for m in [0u32, 1, 3, 7, 15] {
            for nu in [0.3, 1.0, 5.0] {
                let h = 1e-5;
                let fd = (laguerre_f(m + 1, 0, -(nu + h)) - laguerre_f(m + 1, 0, -(nu - h)))
                    / (2.0 * h);
                let lhs = laguerre_f(m, 1, -nu);
                assert!(
                    (lhs - fd).abs() <= 1e-6 * lhs.abs().max(1.0),
                    "m={m} nu={nu}: L^1={lhs} fd={fd}"
                );
            }
        }
    }

    #[test]
    fn laguerre_at_zero_is_binomial_exactly() {
        for s in 0..=8u32 {
            for m in 0..=32u32 {
                let expect = binomial(m + s, s as i64);
                if expect < 9e15 {
                    assert_eq!(laguerre_f(m, s, 0.0), expect, "m={m} s={s}");
                }
            }
        }
    }

    #[test]
    fn laguerre_real_analytic_bit_for_bit() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(0..=30u32);
            let s = rng.gen_range(0..=4u32);
            let x = C64::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            let a = laguerre_c(m, s, x.conj());
            let b = laguerre_c(m, s, x).conj();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ln_factorial_small_values() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        // 20! = 2432902008176640000 exactly
        let exact = ln_big(&(1u32..=20).map(BigUint::from).product());
        assert!((ln_factorial(20) - exact).abs() <= 1e-12 * exact);
    }

    #[test]
    fn ln_factorial_against_bigint() {
        for n in [5u32, 29, 30, 31, 100, 170, 1000, 4096] {
            let exact = ln_big(&(1u32..=n).map(BigUint::from).product());
            let got = ln_factorial(n);
            assert!(
                (got - exact).abs() <= 1e-12 * exact.max(1.0),
                "n={n}: got {got}, exact {exact}"
            );
        }
    }

    #[test]
    fn ln_factorial_monotone() {
        let mut prev = -1.0;
        for n in 0..2000 {
            let v = ln_factorial(n);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(5, 7), 0.0);
        assert_eq!(binomial(5, -1), 0.0);
        assert_eq!(binomial(0, 0), 1.0);
    }

    #[test]
    fn binomial_pascal_triangle() {
        // Pascal-triangle oracle, exact in u64 for n <= 60
        let mut row = vec![1u64];
        for n in 1..=60u32 {
            let mut next = vec![1u64];
            for k in 1..n as usize {
                next.push(row[k - 1] + row[k]);
            }
            next.push(1);
            row = next;
            for (k, &expect) in row.iter().enumerate() {
                if expect < (1 << 53) {
                    assert_eq!(binomial(n, k as i64), expect as f64, "C({n},{k})");
                }
            }
        }
        assert_eq!(binomial(12, 5), 792.0);
    }

    #[test]
    fn binomial_log_path() {
        // C(300, 150) overflows the exact loop; check the log fallback
        let exact = {
            let mut res = BigUint::from(1u8);
            for i in 1..=150u32 {
                res = res * BigUint::from(150 + i) / BigUint::from(i);
            }
            ln_big(&res)
        };
        let got = binomial(300, 150).ln();
        assert!((got - exact).abs() <= 1e-12 * exact);
    }
}
