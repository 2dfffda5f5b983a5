//! Mean values of `P₀(σ₀+it)^k · P₀(σ₀−it)^l`.

use num_complex::Complex;

use super::{panel_width, CheckOptions, CheckReport};
use crate::dirichlet::{ParamSet, PreparedPoly, SparseDirichletCoeffs};
use crate::numerics::{integrate_panels, ComplexPoint, Integrator};
use crate::primes::sieve_primes;
use crate::{Error, Result};

/// Largest power accepted by the check.
const MAX_POWER: u32 = 4;

/// Coefficients `a_k(n)` of `(Σ_{p∈primes} p^{−s})^k`: the number of ordered
/// `k`-tuples of the given primes with product `n`.
pub fn power_coefficients(primes: &[u64], k: u32) -> Result<SparseDirichletCoeffs> {
    let base = SparseDirichletCoeffs::new(primes.iter().map(|&p| (p as u128, 1.0)).collect())?;
    let mut acc = SparseDirichletCoeffs::one();
    for _ in 0..k {
        acc = acc.mul(&base)?;
    }
    Ok(acc)
}

/// `Σ_n a_k(n)·a_l(n)·n^{−2σ₀}` over the primes `p ≤ X`.
pub fn diagonal_sum(params: &ParamSet, k: u32, l: u32) -> Result<f64> {
    let primes = primes_up_to(params.x)?;
    let a = power_coefficients(&primes, k)?;
    let b = power_coefficients(&primes, l)?;
    let mut acc = crate::numerics::CompensatedSum::new();
    let (mut i, mut j) = (0, 0);
    let (ea, eb) = (a.entries(), b.entries());
    while i < ea.len() && j < eb.len() {
        match ea[i].0.cmp(&eb[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let n = ea[i].0 as f64;
                acc.add(ea[i].1 * eb[j].1 * n.powf(-2.0 * params.sigma0));
                i += 1;
                j += 1;
            }
        }
    }
    Ok(acc.value())
}

fn primes_up_to(x: f64) -> Result<Vec<u64>> {
    if x < 2.0 {
        return Ok(Vec::new());
    }
    Ok(sieve_primes(x.floor() as u64)?.primes().to_vec())
}

/// [`check_lemma1_with`] with default options.
pub fn check_lemma1(params: &ParamSet, k: u32, l: u32, t_quad: f64) -> Result<CheckReport> {
    check_lemma1_with(params, k, l, t_quad, &CheckOptions::default())
}

/// `lhs = (1/T)·∫_T^{2T} P₀(σ₀+it)^k P₀(σ₀−it)^l dt` with `T = t_quad`, against
/// the exact diagonal sum. Requires `X^{k+l} ≤ t_quad`.
pub fn check_lemma1_with(params: &ParamSet, k: u32, l: u32, t_quad: f64, opts: &CheckOptions) -> Result<CheckReport> {
    params.validate()?;
    if k > MAX_POWER || l > MAX_POWER {
        return Err(Error::Precondition(format!("k, l must be at most {MAX_POWER}")));
    }
    if !(t_quad.is_finite() && t_quad > 0.0) {
        return Err(Error::domain(format!("integration height must be positive, got {t_quad}")));
    }
    if params.x.powi((k + l) as i32) > t_quad {
        return Err(Error::Precondition(format!(
            "X^(k+l) = {:e} exceeds the integration height {t_quad:e}",
            params.x.powi((k + l) as i32)
        )));
    }
    let primes = primes_up_to(params.x)?;
    let sum_p: f64 = primes.iter().map(|&p| (p as f64).powf(-2.0 * params.sigma0)).sum();
    let rhs = diagonal_sum(params, k, l)?;
    let leading = if k == l {
        (1..=k).product::<u32>() as f64 * sum_p.powi(k as i32)
    } else {
        0.0
    };
    let base = |r: CheckReport| {
        r.detail("k", k)
            .detail("l", l)
            .detail("T_quad", t_quad)
            .detail("leading_term", leading)
            .detail("sum_p_minus_2sigma0", sum_p)
            .detail("offdiagonal_scale", params.x.powi((k + l) as i32) / t_quad)
    };
    if k + l == 0 || primes.is_empty() {
        // the integrand is the constant [k = l = 0]
        let v = if k + l == 0 { 1.0 } else { 0.0 };
        return Ok(base(CheckReport::new("lemma1", params.clone(), v, rhs)).detail("lhs_imag", 0.0));
    }
    let poly = PreparedPoly::from_parts(primes.iter().map(|&p| (p as f64).ln()).collect(), vec![1.0; primes.len()]);
    let sigma0 = params.sigma0;
    let integrand = |t: f64| -> Complex<f64> {
        let p = poly.eval(ComplexPoint::new(sigma0, t));
        p.powu(k) * p.conj().powu(l)
    };
    let omega = (k + l) as f64 * params.x.ln();
    let width = panel_width(omega, t_quad);
    let scale = rhs.abs().max(1.0);
    let integrator = Integrator::new()
        .rel_tol(opts.panel_rel_tol)
        .abs_tol(opts.panel_abs_tol * width * scale)
        .max_evaluations(opts.panel_max_evaluations);
    let (q, summary) = integrate_panels(integrand, t_quad, 2.0 * t_quad, width, &integrator)?;
    let lhs = q.value / t_quad;
    Ok(base(CheckReport::new("lemma1", params.clone(), lhs.re, rhs))
        .detail("lhs_imag", lhs.im)
        .with_panels(&summary))
}
