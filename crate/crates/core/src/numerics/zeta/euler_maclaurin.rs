//! Euler–Maclaurin evaluation of ζ(s) with an explicit remainder bound.
//!
//! ζ(s) = Σ_{n<N} n^{−s} + N^{1−s}/(s−1) + N^{−s}/2
//!        + Σ_{k=1}^{K} B_{2k}/(2k)! · s(s+1)⋯(s+2k−2) · N^{−s−2k+1} + R_K,
//!
//! |R_K| ≤ |s(s+1)⋯(s+2K) B_{2K+2}/(2K+2)! · N^{−s−2K−1}| · |s+2K+1| / (σ+2K+1).

use num_complex::Complex;

use crate::numerics::summation::ComplexSum;
use crate::Scalar;

/// Number of Bernoulli correction terms (B₂ … B₁₂).
pub(crate) const CORRECTION_TERMS: usize = 6;

const BERNOULLI_EVEN: [f64; 14] = [
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `B_{2k} / (2k)!`
fn bernoulli_ratio(k: usize) -> f64 {
    BERNOULLI_EVEN[k] / factorial(2 * k)
}

/// Remainder bound after `CORRECTION_TERMS` corrections at truncation `n`.
pub(crate) fn remainder_bound(sigma: f64, t: f64, n: usize) -> f64 {
    let k = CORRECTION_TERMS;
    let s = Complex::new(sigma, t);
    let mut log_bound = bernoulli_ratio(k + 1).abs().ln() - (sigma + (2 * k + 1) as f64) * (n as f64).ln();
    for j in 0..=(2 * k) {
        log_bound += (s + j as f64).norm().ln();
    }
    let tail = (s + (2 * k + 1) as f64).norm() / (sigma + (2 * k + 1) as f64);
    log_bound.exp() * tail
}

/// Smallest truncation point (on a geometric grid) meeting `tol`.
pub(crate) fn choose_truncation(sigma: f64, t: f64, tol: f64) -> usize {
    let mut n = 20usize.max((t.abs() / (2.0 * std::f64::consts::PI)).ceil() as usize + 1);
    while remainder_bound(sigma, t, n) > tol {
        n = n + n / 4 + 1;
    }
    n
}

/// Evaluates the formula at truncation `n`; returns the value and the
/// remainder bound.
pub(crate) fn evaluate<T: Scalar>(s: Complex<T>, n: usize) -> (Complex<T>, f64) {
    let mut acc = ComplexSum::new();
    for m in 1..n {
        acc.add(power_term(s, m));
    }
    let nn = T::from_usize_lossy(n);
    let n_pow = (-s * nn.ln()).exp();
    let one = T::one();
    let mut tail = n_pow * (Complex::new(nn, T::zero()) / (s - one) + T::lit(0.5));
    // P_k = s(s+1)…(s+2k−2) N^{−s−2k+1}
    let mut pk = s * n_pow / nn;
    let inv_n2 = (nn * nn).recip();
    for k in 1..=CORRECTION_TERMS {
        tail = tail + pk * T::lit(bernoulli_ratio(k));
        let a = T::from_usize_lossy(2 * k - 1);
        let b = T::from_usize_lossy(2 * k);
        pk = pk * (s + a) * (s + b) * inv_n2;
    }
    acc.add(tail);
    let bound = remainder_bound(
        s.re.to_f64().unwrap_or(f64::NAN),
        s.im.to_f64().unwrap_or(f64::NAN),
        n,
    );
    (acc.value(), bound)
}

/// `m^{−s}` via `exp(−s log m)`.
#[inline]
pub(crate) fn power_term<T: Scalar>(s: Complex<T>, m: usize) -> Complex<T> {
    let lm = T::from_usize_lossy(m).ln();
    let mag = (-s.re * lm).exp();
    let (sin, cos) = (s.im * lm).sin_cos();
    Complex::new(mag * cos, -mag * sin)
}
