//! Seeded sampling of `t ∈ [T, 2T]` and the checks built on it.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use super::{evaluator_for, CheckOptions, CheckReport};
use crate::dirichlet::{exp_series, MollifierEvaluator, ParamSet};
use crate::numerics::{CompensatedSum, ComplexPoint, ZetaEvaluator};
use crate::primes::{sieve_primes, PrimeTable};
use crate::statistics::{ks_critical_value, ks_statistic_unsorted, EmpiricalSummary, SampleRecord, SampleSet};
use crate::{Error, Result};

/// Largest `n` in the truncated variance sum of [`desk_variance`].
const DESK_VARIANCE_CUTOFF: f64 = 1e6;

struct PointEvaluator {
    zeta: ZetaEvaluator,
    mollifier: MollifierEvaluator,
    sigma0: f64,
    l1: usize,
    l2: usize,
    tol: f64,
}

impl PointEvaluator {
    fn new(params: &ParamSet, table: &PrimeTable, tol: f64) -> Result<Self> {
        Ok(Self {
            zeta: evaluator_for(2.0 * params.t),
            mollifier: MollifierEvaluator::new(params, table)?,
            sigma0: params.sigma0,
            l1: params.l1 as usize,
            l2: params.l2 as usize,
            tol,
        })
    }

    /// `None` when `|ζ|` underflows at `t`.
    fn record(&self, t: f64) -> Result<Option<SampleRecord>> {
        let s = ComplexPoint::new(self.sigma0, t);
        let Some(log_abs_zeta) = self.zeta.log_abs(s, self.tol)? else {
            return Ok(None);
        };
        let v = self.mollifier.eval(s);
        let p = v.p();
        Ok(Some(SampleRecord {
            t,
            log_abs_zeta,
            p0: v.p0,
            m_value: v.m(),
            exp_neg_p: (-p).exp(),
            p1: v.p1,
            p2: v.p2,
            m1: v.m1,
            m2: v.m2,
            trunc_exp1: exp_series(-v.p1, self.l1),
            trunc_exp2: exp_series(-v.p2, self.l2),
        }))
    }
}

/// Sieve large enough for the mollifier primes.
fn table_for(params: &ParamSet) -> Result<PrimeTable> {
    sieve_primes((params.x.floor() as u64).max(2))
}

/// [`run_clt_sample_with`] with default options.
pub fn run_clt_sample(params: &ParamSet, n: usize, seed: u64) -> Result<SampleSet> {
    run_clt_sample_with(params, n, seed, &CheckOptions::default())
}

/// Draws `n` heights uniformly from `[T, 2T]` with a ChaCha20 stream seeded by
/// `seed` and evaluates every quantity at `σ₀ + it`. Heights where `|ζ|`
/// underflows are replaced by further draws from the same stream. The heights
/// are fixed before any parallel work, so output does not depend on threads.
pub fn run_clt_sample_with(params: &ParamSet, n: usize, seed: u64, opts: &CheckOptions) -> Result<SampleSet> {
    params.validate()?;
    let mut set = SampleSet {
        params: params.clone(),
        seed,
        records: Vec::with_capacity(n),
        rejected: Vec::new(),
    };
    if n == 0 {
        return Ok(set);
    }
    let table = table_for(params)?;
    let eval = PointEvaluator::new(params, &table, opts.zeta_tol)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let max_rejected = (opts.max_rejection_rate * n as f64).floor() as usize;
    let mut pending = n;
    while pending > 0 {
        let heights: Vec<f64> = (0..pending)
            .map(|_| params.t + params.t * rng.gen::<f64>())
            .collect();
        let results: Vec<Result<Option<SampleRecord>>> = heights.par_iter().map(|&t| eval.record(t)).collect();
        for (t, r) in heights.into_iter().zip(results) {
            match r? {
                Some(rec) => set.records.push(rec),
                None => set.rejected.push(t),
            }
        }
        if set.rejected.len() > max_rejected {
            return Err(Error::NumericalAnomaly(format!(
                "{} of {} draws had |ζ| < 1e-300",
                set.rejected.len(),
                set.records.len() + set.rejected.len()
            )));
        }
        pending = n - set.records.len();
    }
    Ok(set)
}

/// `½ Σ_{2≤n≤min(T,10⁶)} Λ(n)²/(n^{2σ₀} log² n)`: the variance of
/// `log|ζ(σ₀+it)|` predicted by its Dirichlet series truncated at `T`.
pub fn desk_variance(params: &ParamSet) -> Result<f64> {
    let cutoff = params.t.min(DESK_VARIANCE_CUTOFF);
    let table = sieve_primes(cutoff.floor() as u64)?;
    let mut acc = CompensatedSum::new();
    for (n, p) in table.prime_powers_in(1.0, cutoff) {
        let m = ((n as f64).ln() / (p as f64).ln()).round();
        acc.add((n as f64).powf(-2.0 * params.sigma0) / (m * m));
    }
    Ok(0.5 * acc.value())
}

fn sum_p_minus_2sigma(params: &ParamSet) -> Result<f64> {
    let table = table_for(params)?;
    Ok(table
        .primes_in(0.0, params.x)
        .iter()
        .map(|&p| (p as f64).powf(-2.0 * params.sigma0))
        .collect::<CompensatedSum<f64>>()
        .value())
}

fn require_samples(samples: &SampleSet) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::Precondition("check needs at least one sample".into()));
    }
    Ok(())
}

fn sample_details(r: CheckReport, samples: &SampleSet) -> CheckReport {
    r.detail("N", samples.len() as u64)
        .detail("seed", samples.seed)
        .detail("rejections", samples.rejected.len() as u64)
}

/// Gaussianity of `log|ζ(σ₀+it)|`: KS distance after normalising by the
/// desk variance ([`desk_variance`]). The distance under the asymptotic
/// variance `½ log log T` is reported as `ks_loglog_variance`.
pub fn check_clt(params: &ParamSet, n: usize, seed: u64) -> Result<CheckReport> {
    check_clt_from(&run_clt_sample(params, n, seed)?)
}

pub fn check_clt_from(samples: &SampleSet) -> Result<CheckReport> {
    require_samples(samples)?;
    let params = &samples.params;
    let values = samples.log_abs_zeta();
    let summary = EmpiricalSummary::from_values(&values, 4)?;
    let v_desk = desk_variance(params)?;
    let v_asym = 0.5 * params.loglog_t();
    let normalize = |v: f64| -> Vec<f64> { values.iter().map(|x| x / v.sqrt()).collect() };
    let ks = ks_statistic_unsorted(&normalize(v_desk))?;
    let ks_asym = ks_statistic_unsorted(&normalize(v_asym))?;
    let r = CheckReport::new("clt", params.clone(), ks, 0.0)
        .detail("ks_loglog_variance", ks_asym)
        .detail("desk_variance", v_desk)
        .detail("loglog_variance", v_asym)
        .detail("empirical_mean", summary.mean)
        .detail("empirical_variance", summary.variance)
        .detail("ks_critical_1pct", ks_critical_value(0.01, samples.len()).unwrap_or(f64::NAN))
        .detail("ks_noise_band", 1.63 / (samples.len() as f64).sqrt())
        .detail("ks_tolerance_engineering", 0.1);
    Ok(sample_details(r, samples))
}

/// Moments of `Re P₀(σ₀+it)`: variance against `½ Σ_{p≤X} p^{−2σ₀}`, the
/// mean square `|P₀|²` against the full sum, and the fourth moment against
/// the Gaussian value `3·var²`.
pub fn check_prop2(params: &ParamSet, n: usize, seed: u64) -> Result<CheckReport> {
    check_prop2_from(&run_clt_sample(params, n, seed)?)
}

pub fn check_prop2_from(samples: &SampleSet) -> Result<CheckReport> {
    require_samples(samples)?;
    let params = &samples.params;
    let re = samples.re_p0();
    let summary = EmpiricalSummary::from_values(&re, 4)?;
    let sum = sum_p_minus_2sigma(params)?;
    let abs_sq: Vec<f64> = samples.records.iter().map(|r| r.p0.norm_sqr()).collect();
    let mean_abs_sq = abs_sq.iter().copied().collect::<CompensatedSum<f64>>().value() / abs_sq.len() as f64;
    let centered: Vec<f64> = re.iter().map(|x| x - summary.mean).collect();
    let m4 = crate::statistics::empirical_moment(&centered, 4)?;
    let var_norm: Vec<f64> = if summary.variance > 0.0 {
        centered.iter().map(|x| x / summary.variance.sqrt()).collect()
    } else {
        Vec::new()
    };
    let ks = if var_norm.is_empty() {
        f64::NAN
    } else {
        ks_statistic_unsorted(&var_norm)?
    };
    let r = CheckReport::new("prop2", params.clone(), summary.variance, 0.5 * sum)
        .detail("sum_p_minus_2sigma0", sum)
        .detail("mean_abs_p0_sq", mean_abs_sq)
        .detail("mean_abs_p0_sq_rel_error", (mean_abs_sq - sum).abs() / sum.max(1e-300))
        .detail("empirical_mean", summary.mean)
        .detail("fourth_moment", m4)
        .detail("gaussian_fourth_moment", 3.0 * summary.variance * summary.variance)
        .detail("fourth_moment_rel_error", (m4 / (3.0 * summary.variance * summary.variance) - 1.0).abs())
        .detail("ks_standardized", ks);
    Ok(sample_details(r, samples))
}

/// Closeness of the mollifier to `exp(−P)`: `lhs` is the share of samples with
/// `|M·e^P − 1| > eps`.
pub fn check_prop3(params: &ParamSet, n: usize, seed: u64, eps: f64) -> Result<CheckReport> {
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    check_prop3_from(&run_clt_sample(params, n, seed)?, eps)
}

pub fn check_prop3_from(samples: &SampleSet, eps: f64) -> Result<CheckReport> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Precondition(format!("eps must lie in (0, 1), got {eps}")));
    }
    require_samples(samples)?;
    let params = &samples.params;
    let n = samples.len() as f64;
    let cap1 = params.loglog_t();
    let cap2 = params.logloglog_t();
    let mut violations = 0usize;
    let mut over1 = 0usize;
    let mut over2 = 0usize;
    let mut d1 = CompensatedSum::new();
    let mut d2 = CompensatedSum::new();
    let mut p1_sq = CompensatedSum::new();
    let mut p2_sq = CompensatedSum::new();
    let mut max_dev = 0.0f64;
    for r in &samples.records {
        let dev = (r.m_value * r.exp_neg_p.inv() - Complex::new(1.0, 0.0)).norm();
        max_dev = max_dev.max(dev);
        violations += (dev > eps) as usize;
        over1 += (r.p1.norm() > cap1) as usize;
        over2 += (r.p2.norm() > cap2) as usize;
        d1.add((r.trunc_exp1 - r.m1).norm_sqr());
        d2.add((r.trunc_exp2 - r.m2).norm_sqr());
        p1_sq.add(r.p1.norm_sqr());
        p2_sq.add(r.p2.norm_sqr());
    }
    let mean_p1_sq = p1_sq.value() / n;
    let mean_p2_sq = p2_sq.value() / n;
    let r = CheckReport::new("prop3", params.clone(), violations as f64 / n, 0.0)
        .detail("eps", eps)
        .detail("max_deviation", max_dev)
        .detail("mean_sq_trunc_exp1_minus_m1", d1.value() / n)
        .detail("mean_sq_trunc_exp2_minus_m2", d2.value() / n)
        .detail("p1_cap", cap1)
        .detail("p2_cap", cap2)
        .detail("p1_cap_violation_fraction", over1 as f64 / n)
        .detail("p2_cap_violation_fraction", over2 as f64 / n)
        .detail("mean_abs_p1_sq", mean_p1_sq)
        .detail("mean_abs_p2_sq", mean_p2_sq)
        .detail("p1_chebyshev_bound", mean_p1_sq / (cap1 * cap1))
        .detail("p2_chebyshev_bound", mean_p2_sq / (cap2 * cap2));
    Ok(sample_details(r, samples))
}
