//! Riemann–Siegel expansion valid off the critical line.
//!
//! ζ(s) = R(s) + χ(s)·conj(R(1 − s̄)),
//! R(s) = Σ_{n≤N} n^{−s} + (−1)^{N−1} U a^{−σ} Σ_{k<L} C_k(p) a^{−k},
//!
//! with a = √(t/2π), N = ⌊a⌋, p = 1 − 2(a − N) and
//! U = exp(−i(t/2·log(t/2π) − t/2 − π/8)). The correction coefficients
//! `C_k(p)` are combinations of derivatives of the kernel
//! `F(z) = (e^{πi(z²/2+3/8)} − i√2 cos(πz/2)) / (2 cos πz)` whose weights
//! depend on σ through a three-term recurrence. Term counts and the
//! truncation bound follow Arias de Reyna's analysis of this expansion.

use num_complex::Complex;

use super::gamma::chi;
use super::kernel_taylor::KERNEL_TAYLOR;
use crate::numerics::summation::ComplexSum;
use crate::Scalar;

/// Terms `L` needed in the correction series for abscissa `sigma` at
/// `a = √(t/2π)` so that the corrected `R` is within `target`; `None` when
/// the expansion cannot reach it at this height.
pub(crate) fn correction_terms(sigma: f64, a: f64, target: f64) -> Option<usize> {
    let (b, c) = if sigma > 0.0 {
        (2.0, 9f64.powf(sigma) / 4.44288)
    } else {
        (2.25158, 2f64.powf(-sigma) / 4.44288)
    };
    let scale = a.powf(-sigma);
    let mut l = 1usize;
    while 3.0 * c * libm::tgamma(l as f64 * 0.5) * (b * a).powf(-(l as f64)) * scale >= target {
        l += 1;
        if l > 40 {
            return None;
        }
    }
    let l = l.max(2);
    let lf = l as f64;
    if 3.0 * lf >= 2.0 * a * a / 25.0 || 3.0 * lf + 2.0 + sigma < 0.0 || sigma.abs() > a / 2.0 {
        return None;
    }
    Some(l)
}

/// Truncation bound actually achieved with `l` terms (same expression as above).
fn truncation_bound(sigma: f64, a: f64, l: usize) -> f64 {
    let (b, c) = if sigma > 0.0 {
        (2.0, 9f64.powf(sigma) / 4.44288)
    } else {
        (2.25158, 2f64.powf(-sigma) / 4.44288)
    };
    3.0 * c * libm::tgamma(l as f64 * 0.5) * (b * a).powf(-(l as f64)) * a.powf(-sigma)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Plan {
    pub terms_x: usize,
    pub terms_y: usize,
    pub bound: f64,
}

/// Decides whether the expansion reaches `tol` at `s` (with `t > 0`).
pub(crate) fn plan(sigma: f64, t: f64, tol: f64) -> Option<Plan> {
    let a = (t / (2.0 * std::f64::consts::PI)).sqrt();
    // |χ(s)| ≈ a^{1−2σ} multiplies the reflected part
    let chi_mag = a.powf(1.0 - 2.0 * sigma);
    let terms_x = correction_terms(sigma, a, tol / 4.0)?;
    let terms_y = correction_terms(1.0 - sigma, a, tol / (4.0 * chi_mag))?;
    let bound = truncation_bound(sigma, a, terms_x) + chi_mag * truncation_bound(1.0 - sigma, a, terms_y);
    Some(Plan {
        terms_x,
        terms_y,
        bound,
    })
}

/// Weights `d[n][k]`, `0 ≤ n < terms`, `0 ≤ k ≤ ⌊3n/2⌋`, for abscissa `sigma`.
fn correction_weights<T: Scalar>(sigma: T, terms: usize) -> Vec<Vec<T>> {
    let mut d: Vec<Vec<T>> = Vec::with_capacity(terms);
    d.push(vec![T::one()]);
    let psigma = T::one() - sigma - sigma;
    let prev_at = |row: &Vec<T>, k: isize| -> T {
        if k < 0 || k as usize >= row.len() {
            T::zero()
        } else {
            row[k as usize]
        }
    };
    for n in 1..terms {
        let width = 3 * n / 2 + 1;
        let mut row = vec![T::zero(); width];
        for k in 0..width {
            let m = 3 * n as isize - 2 * k as isize;
            if m != 0 {
                let mf = T::from_isize(m).unwrap();
                let prev = &d[n - 1];
                let ki = k as isize;
                row[k] = -(mf + T::one()) * prev_at(prev, ki - 2)
                    + prev_at(prev, ki) / (T::lit(4.0) * mf)
                    + psigma * prev_at(prev, ki - 1) / (T::lit(2.0) * mf);
            } else {
                let mut acc = T::zero();
                for r in 0..k {
                    let j = k - r;
                    // (2j)! / j!
                    let ratio: f64 = ((j + 1)..=(2 * j)).map(|x| x as f64).product();
                    let sign = if j % 2 == 0 { T::one() } else { -T::one() };
                    acc -= sign * row[r] * T::lit(ratio);
                }
                row[k] = acc;
            }
        }
        d.push(row);
    }
    d
}

/// Derivatives `F^{(m)}(p)` for `0 ≤ m ≤ max_order`.
fn kernel_derivatives<T: Scalar>(p: T, max_order: usize) -> Vec<Complex<T>> {
    let len = 2 * KERNEL_TAYLOR.len();
    let mut cc: Vec<Complex<T>> = (0..len)
        .map(|k| {
            if k % 2 == 0 {
                let (re, im) = KERNEL_TAYLOR[k / 2];
                Complex::new(T::lit(re), T::lit(im))
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
        .collect();
    let mut out = Vec::with_capacity(max_order + 1);
    for m in 0..=max_order {
        let top = len - m;
        let mut acc = Complex::new(T::zero(), T::zero());
        for k in (0..top).rev() {
            acc = acc * p + cc[k];
        }
        out.push(acc);
        for k in 0..top.saturating_sub(1) {
            cc[k] = cc[k + 1] * T::from_usize_lossy(k + 1);
        }
    }
    out
}

/// `Σ_{k<terms} C_k(p) a^{−k}` for abscissa `sigma`.
fn correction_sum<T: Scalar>(sigma: T, terms: usize, a: T, fp: &[Complex<T>]) -> Complex<T> {
    let d = correction_weights(sigma, terms);
    let pi = T::PI();
    let mut total = Complex::new(T::zero(), T::zero());
    let mut a_pow = T::one();
    for (k, row) in d.iter().enumerate() {
        let mut term = Complex::new(T::zero(), T::zero());
        for (l, &w) in row.iter().enumerate() {
            // divide by π^{2k−l} (2i)^l
            let denom = pi.powi((2 * k - l) as i32) * T::lit(2.0).powi(l as i32);
            let rot = match l % 4 {
                0 => Complex::new(T::one(), T::zero()),
                1 => Complex::new(T::zero(), -T::one()),
                2 => Complex::new(-T::one(), T::zero()),
                _ => Complex::new(T::zero(), T::one()),
            };
            term = term + fp[3 * k - 2 * l] * rot * (w / denom);
        }
        total = total + term * a_pow;
        a_pow = a_pow / a;
    }
    total
}

/// Evaluates ζ(σ + it) for `t > 0` with the given plan.
pub(crate) fn evaluate<T: Scalar>(s: Complex<T>, plan: &Plan) -> Complex<T> {
    let sigma = s.re;
    let t = s.im;
    let two_pi = T::lit(2.0 * std::f64::consts::PI);
    let tpi = t / two_pi;
    let a = tpi.sqrt();
    let n = a.floor();
    let n_usize = n.to_usize().unwrap_or(0).max(1);
    let p = T::one() - (a - n) * T::lit(2.0);

    // main sums Σ n^{−σ−it} and Σ n^{−(1−σ)−it}, sharing the phases
    let mut sx = ComplexSum::new();
    let mut sy = ComplexSum::new();
    let one_minus_sigma = T::one() - sigma;
    for m in 1..=n_usize {
        let lm = T::from_usize_lossy(m).ln();
        let (sin, cos) = (t * lm).sin_cos();
        let phase = Complex::new(cos, -sin);
        sx.add(phase * (-sigma * lm).exp());
        sy.add(phase * (-one_minus_sigma * lm).exp());
    }

    let max_terms = plan.terms_x.max(plan.terms_y);
    let fp = kernel_derivatives(p, 3 * (max_terms - 1));
    let rs_x = correction_sum(sigma, plan.terms_x, a, &fp);
    let rs_y = correction_sum(one_minus_sigma, plan.terms_y, a, &fp);

    let theta = t / T::lit(2.0) * (tpi.ln() - T::one()) - T::PI() / T::lit(8.0);
    let (sin_u, cos_u) = theta.sin_cos();
    let u = Complex::new(cos_u, -sin_u);
    let sign = if n_usize % 2 == 1 { T::one() } else { -T::one() };
    let s3x = u * (sign * a.powf(-sigma));
    let s3y = u * (sign * a.powf(-one_minus_sigma));

    let rx = sx.value() + rs_x * s3x;
    let ry = (sy.value() + rs_y * s3y).conj();
    rx + chi(s) * ry
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_series_matches_closed_form() {
        use std::f64::consts::PI;
        for &z in &[0.0f64, 0.3, -0.77, 0.999] {
            let i = Complex::new(0.0, 1.0);
            let num = (i * PI * (z * z / 2.0 + 3.0 / 8.0)).exp() - i * 2f64.sqrt() * (PI * z / 2.0).cos();
            let exact = num / (2.0 * (PI * z).cos());
            let series = kernel_derivatives(z, 0)[0];
            assert!((series - exact).norm() < 1e-14, "z={z}");
        }
    }

    #[test]
    fn kernel_derivative_matches_finite_difference() {
        let h = 1e-5;
        let p = 0.37;
        let d = kernel_derivatives(p, 3);
        let up = kernel_derivatives(p + h, 2);
        let down = kernel_derivatives(p - h, 2);
        for m in 0..3 {
            let fd = (up[m] - down[m]) / (2.0 * h);
            assert!((fd - d[m + 1]).norm() < 1e-7 * (1.0 + d[m + 1].norm()), "m={m}");
        }
    }

    #[test]
    fn weights_on_critical_line_match_classical_first_terms() {
        // σ = 1/2: d[1] = (0, 0?, ...) reproduce C_1 = −F'''(p)/(96π²)
        let d = correction_weights(0.5f64, 3);
        assert_eq!(d[0], vec![1.0]);
        // k = 0 entry of row 1 is 1/(4·3) = 1/12 → C_1 contains F'''/(12π²)·…
        assert!((d[1][0] - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(d[1][1], 0.0);
    }

    #[test]
    fn plan_refuses_low_heights() {
        assert!(plan(0.5, 50.0, 1e-10).is_none());
        assert!(plan(0.5, 1.0e5, 1e-10).is_some());
    }
}
