//! Mean square of `1 − ζM` on `σ₀ + i[T, 2T]`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{evaluator_for, panel_width, CheckOptions, CheckReport};
use crate::dirichlet::{MollifierEvaluator, ParamSet};
use crate::numerics::{integrate_panels, zeta_real, ComplexPoint, Integrator, QuadArray};
use crate::primes::sieve_primes;
use crate::{Error, Result};

/// Main-term predictions for `(1/T)∫|ζM|²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MainTerms {
    /// `ζ(2σ₀) Σ_{h,k} μ(h)μ(k)a(h)a(k) (h,k)^{2σ₀}/(hk)^{2σ₀}`
    pub first: f64,
    /// `ζ(2−2σ₀)·(1/T)∫(t/2π)^{1−2σ₀}dt·Σ_{h,k} μ(h)μ(k)a(h)a(k) (h,k)^{2−2σ₀}/(hk)`
    pub second: f64,
    /// `ζ(2σ₀) ∏_{p≤X}(1 − p^{−2σ₀})`: the first term without prime caps.
    pub euler_first: f64,
    /// `ζ(2−2σ₀)·(1/T)∫(t/2π)^{1−2σ₀}dt·∏_{p≤X}(1 − 2/p + p^{−2σ₀})`
    pub euler_second: f64,
    /// `∏_{p≤Y}(1 − p^{−2σ₀})`
    pub euler_y: f64,
}

/// `Σ_{h,k}` over squarefree `h, k` built from `primes`, each with at most `cap`
/// prime factors, of the multiplicative weight taking the value `single` when
/// `p` divides exactly one of `h, k` and `both` when it divides both.
fn capped_pair_sum(primes: &[u64], cap: usize, single: impl Fn(f64) -> f64, both: impl Fn(f64) -> f64) -> f64 {
    if cap >= primes.len() {
        return primes
            .iter()
            .map(|&p| 1.0 + 2.0 * single(p as f64) + both(p as f64))
            .product();
    }
    let w = cap + 1;
    let mut dp = vec![0.0f64; w * w];
    dp[0] = 1.0;
    for &p in primes {
        let (s, b) = (single(p as f64), both(p as f64));
        for i in (0..w).rev() {
            for j in (0..w).rev() {
                let mut v = dp[i * w + j];
                if i > 0 {
                    v += s * dp[(i - 1) * w + j];
                }
                if j > 0 {
                    v += s * dp[i * w + j - 1];
                }
                if i > 0 && j > 0 {
                    v += b * dp[(i - 1) * w + j - 1];
                }
                dp[i * w + j] = v;
            }
        }
    }
    dp.iter().sum()
}

/// Main terms of the mollified second moment, normalised by `T`.
pub fn prop4_main_terms(params: &ParamSet) -> Result<MainTerms> {
    params.validate()?;
    let sigma0 = params.sigma0;
    let primes: Vec<u64> = if params.x < 2.0 {
        Vec::new()
    } else {
        sieve_primes(params.x.floor() as u64)?.primes().to_vec()
    };
    let split = primes.partition_point(|&p| p as f64 <= params.y);
    let (small, large) = primes.split_at(split);
    let x2 = move |p: f64| p.powf(-2.0 * sigma0);
    let neg_x2 = move |p: f64| -p.powf(-2.0 * sigma0);
    let neg_inv = |p: f64| -1.0 / p;
    let l1 = params.l1 as usize;
    let l2 = params.l2 as usize;
    let a = capped_pair_sum(small, l1, neg_x2, x2) * capped_pair_sum(large, l2, neg_x2, x2);
    let b = capped_pair_sum(small, l1, neg_inv, x2) * capped_pair_sum(large, l2, neg_inv, x2);
    let z1 = zeta_real(2.0 * sigma0, 1e-14)?;
    let z2 = zeta_real(2.0 - 2.0 * sigma0, 1e-14)?;
    let t = params.t;
    let e = 2.0 - 2.0 * sigma0;
    let power = 2.0 * PI * ((t / PI).powf(e) - (t / (2.0 * PI)).powf(e)) / e / t;
    let euler = |f: &dyn Fn(f64) -> f64, ps: &[u64]| ps.iter().map(|&p| f(p as f64)).product::<f64>();
    Ok(MainTerms {
        first: z1 * a,
        second: z2 * power * b,
        euler_first: z1 * euler(&|p| 1.0 - p.powf(-2.0 * sigma0), &primes),
        euler_second: z2 * power * euler(&|p| 1.0 - 2.0 / p + p.powf(-2.0 * sigma0), &primes),
        euler_y: euler(&|p| 1.0 - p.powf(-2.0 * sigma0), small),
    })
}

/// [`check_prop4_with`] with panel relative tolerance `tol`.
pub fn check_prop4(params: &ParamSet, tol: f64) -> Result<CheckReport> {
    check_prop4_with(
        params,
        &CheckOptions {
            panel_rel_tol: tol,
            ..CheckOptions::default()
        },
    )
}

/// `lhs = (1/T)∫_T^{2T} |1 − ζ(σ₀+it)M(σ₀+it)|² dt`; `rhs` is the main-term
/// prediction `first + second − 1` for the same quantity. The directly
/// integrated `(1/T)∫|ζM|²` and `(1/T)∫ζM` are reported alongside.
pub fn check_prop4_with(params: &ParamSet, opts: &CheckOptions) -> Result<CheckReport> {
    if !(opts.panel_rel_tol > 0.0) {
        return Err(Error::domain("quadrature tolerance must be positive"));
    }
    let terms = prop4_main_terms(params)?;
    let table = sieve_primes((params.x.floor() as u64).max(2))?;
    let mollifier = MollifierEvaluator::new(params, &table)?;
    let zeta = evaluator_for(2.0 * params.t);
    let (sigma0, tol) = (params.sigma0, opts.zeta_tol);
    let integrand = |t: f64| -> QuadArray<f64, 4> {
        let s = ComplexPoint::new(sigma0, t);
        match zeta.eval(s, tol) {
            Ok(z) => {
                let zm = z.value * mollifier.eval(s).m();
                let d = 1.0 - zm;
                QuadArray([d.norm_sqr(), zm.re, zm.im, zm.norm_sqr()])
            }
            Err(_) => QuadArray([f64::NAN; 4]),
        }
    };
    let t = params.t;
    let omega = (2.0 * t / (2.0 * PI)).ln().max(1.0) + params.x.max(1.0).ln();
    let width = panel_width(omega, t);
    let integrator = Integrator::new()
        .rel_tol(opts.panel_rel_tol)
        .abs_tol(opts.panel_abs_tol * width)
        .max_evaluations(opts.panel_max_evaluations);
    let (q, summary) = integrate_panels(integrand, t, 2.0 * t, width, &integrator)?;
    let [lhs, re_mean, im_mean, second_moment] = q.value.0.map(|v| v / t);
    let predicted = terms.first + terms.second;
    Ok(
        CheckReport::new("prop4", params.clone(), lhs, predicted - 1.0)
            .detail("second_moment", second_moment)
            .detail("predicted_second_moment", predicted)
            .detail("second_moment_rel_error", (second_moment - predicted).abs() / predicted.abs().max(1e-300))
            .detail("mean_re_zeta_m", re_mean)
            .detail("mean_im_zeta_m", im_mean)
            .detail("main_term_first", terms.first)
            .detail("main_term_second", terms.second)
            .detail("euler_product_first", terms.euler_first)
            .detail("euler_product_second", terms.euler_second)
            .detail("euler_product_y", terms.euler_y)
            .with_panels(&summary),
    )
}
