//! Twisted second moment `∫ (h/k)^{it} |ζ(σ+it)|² dt`.

use std::f64::consts::PI;

use num_complex::Complex;

use super::{evaluator_for, panel_width, CheckOptions, CheckReport};
use crate::dirichlet::ParamSet;
use crate::numerics::{integrate_panels, zeta_real, ComplexPoint, Integrator};
use crate::{Error, Result};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `∫_T^{2T} (t/2π)^{1−2σ} dt`.
fn power_integral(t: f64, sigma: f64) -> f64 {
    let e = 2.0 - 2.0 * sigma;
    let (lo, hi) = (t / (2.0 * PI), 2.0 * t / (2.0 * PI));
    if e == 0.0 {
        2.0 * PI * 2f64.ln()
    } else {
        2.0 * PI * (hi.powf(e) - lo.powf(e)) / e
    }
}

/// The predicted main term
/// `∫_T^{2T} [ζ(2σ) g^σ + (t/2π)^{1−2σ} ζ(2−2σ) g^{1−σ}] dt`, `g = (h,k)²/(hk)`,
/// in closed form. Returns `(first, second)`.
pub fn lemma4_main_term(h: u64, k: u64, sigma: f64, t: f64) -> Result<(f64, f64)> {
    if sigma == 0.5 {
        return Err(Error::domain(
            "sigma = 1/2 puts ζ(2 − 2σ) at its pole; use σ₀ > 1/2",
        ));
    }
    if !(sigma > 0.5 && sigma <= 1.0) {
        return Err(Error::domain(format!("sigma must lie in (1/2, 1], got {sigma}")));
    }
    if h == 0 || k == 0 {
        return Err(Error::domain("h and k must be positive"));
    }
    let d = gcd(h, k) as f64;
    let g = d * d / (h as f64 * k as f64);
    let first = t * zeta_real(2.0 * sigma, 1e-14)? * g.powf(sigma);
    let second = power_integral(t, sigma) * zeta_real(2.0 - 2.0 * sigma, 1e-14)? * g.powf(1.0 - sigma);
    Ok((first, second))
}

/// [`check_lemma4_with`] with default options.
pub fn check_lemma4(params: &ParamSet, h: u64, k: u64, sigma: f64, t_quad: f64) -> Result<CheckReport> {
    check_lemma4_with(params, h, k, sigma, t_quad, &CheckOptions::default())
}

/// Both sides are normalised by `T = t_quad`: `lhs` is the real part of the
/// twisted moment over `[T, 2T]` divided by `T`, and `rhs` the main term
/// divided by `T`.
pub fn check_lemma4_with(
    params: &ParamSet,
    h: u64,
    k: u64,
    sigma: f64,
    t_quad: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let (first, second) = lemma4_main_term(h, k, sigma, t_quad)?;
    if !(t_quad.is_finite() && t_quad > 0.0) {
        return Err(Error::domain(format!("integration height must be positive, got {t_quad}")));
    }
    if h as f64 > t_quad || k as f64 > t_quad {
        return Err(Error::Precondition("h and k must not exceed the integration height".into()));
    }
    let rhs = (first + second) / t_quad;
    let zeta = evaluator_for(2.0 * t_quad);
    let tol = opts.zeta_tol;
    let twist = (h as f64 / k as f64).ln();
    let integrand = |t: f64| -> Complex<f64> {
        match zeta.eval(ComplexPoint::new(sigma, t), tol) {
            Ok(z) => Complex::from_polar(z.value.norm_sqr(), twist * t),
            Err(_) => Complex::new(f64::NAN, f64::NAN),
        }
    };
    let omega = (2.0 * t_quad / (2.0 * PI)).ln().max(1.0) + twist.abs();
    let width = panel_width(omega, t_quad);
    let integrator = Integrator::new()
        .rel_tol(opts.panel_rel_tol)
        .abs_tol(opts.panel_abs_tol * width * rhs.abs().max(1.0))
        .max_evaluations(opts.panel_max_evaluations);
    let (q, summary) = integrate_panels(integrand, t_quad, 2.0 * t_quad, width, &integrator)?;
    let lhs = q.value / t_quad;
    Ok(CheckReport::new("lemma4", params.clone(), lhs.re, rhs)
        .detail("h", h)
        .detail("k", k)
        .detail("sigma", sigma)
        .detail("T_quad", t_quad)
        .detail("lhs_imag", lhs.im)
        .detail("main_term_first", first / t_quad)
        .detail("main_term_second", second / t_quad)
        .detail("error_scale", t_quad.powf(-sigma))
        .with_panels(&summary))
}
