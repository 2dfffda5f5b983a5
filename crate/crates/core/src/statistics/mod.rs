//! Gaussian reference quantities, moments and the Kolmogorov–Smirnov distance.

mod samples;

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::numerics::summation::CompensatedSum;
use crate::{Error, Result, Scalar};

pub use samples::{SampleRecord, SampleSet};

/// Chunk length for moment accumulation; partial sums are merged in chunk
/// order so results do not depend on how work is scheduled.
const CHUNK: usize = 4096;

/// Standard normal CDF, `½·erfc(−x/√2)`.
pub fn gaussian_cdf<T: Scalar>(x: T) -> T {
    T::lit(0.5) * (-x * T::FRAC_1_SQRT_2()).erfc()
}

/// Standard normal density.
pub fn gaussian_pdf<T: Scalar>(x: T) -> T {
    (-(x * x) * T::lit(0.5)).exp() / (T::TAU()).sqrt()
}

/// `E[Z^k]` for `Z ~ N(0, variance)`: zero for odd `k`, `(k−1)!!·v^{k/2}` for even.
pub fn gaussian_moment(k: u32, variance: f64) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let double_factorial: f64 = (1..k).step_by(2).map(f64::from).product();
    double_factorial * variance.powi((k / 2) as i32)
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::domain("empty sample"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("sample contains non-finite values"));
    }
    Ok(())
}

/// `sup_x |F_n(x) − Φ(x)|` for sorted `values`, checking both one-sided jumps
/// at every sample point.
pub fn ks_statistic(values: &[f64]) -> Result<f64> {
    check_values(values)?;
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain("ks_statistic expects sorted values"));
    }
    let n = values.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in values.iter().enumerate() {
        let phi = gaussian_cdf(x);
        d = d.max((i as f64 + 1.0) / n - phi).max(phi - i as f64 / n);
    }
    Ok(d)
}

/// Sorts a copy of `values` and applies [`ks_statistic`].
pub fn ks_statistic_unsorted(values: &[f64]) -> Result<f64> {
    check_values(values)?;
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    ks_statistic(&v)
}

/// Significance levels with tabulated asymptotic KS coefficients `c(α)`.
pub const KS_LEVELS: [(f64, f64); 3] = [(0.10, 1.224), (0.05, 1.358), (0.01, 1.628)];

/// Asymptotic critical value `c(α)/√n`; `None` for untabulated `α`.
pub fn ks_critical_value(alpha: f64, n: usize) -> Option<f64> {
    KS_LEVELS
        .iter()
        .find(|&&(a, _)| (a - alpha).abs() < 1e-12)
        .map(|&(_, c)| c / (n as f64).sqrt())
}

/// Arithmetic mean of `x^k`, compensated and chunk-merged.
pub fn empirical_moment(values: &[f64], k: u32) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::domain("empty sample"));
    }
    Ok(power_sum(values, k) / values.len() as f64)
}

fn power_sum(values: &[f64], k: u32) -> f64 {
    let mut total = CompensatedSum::new();
    for chunk in values.chunks(CHUNK) {
        let part: CompensatedSum<f64> = chunk.iter().map(|x| x.powi(k as i32)).collect();
        total.merge(&part);
    }
    total.value()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSummary {
    pub n: usize,
    pub mean: f64,
    /// Population convention: second raw moment minus squared mean.
    pub variance: f64,
    /// Raw moments `k → mean(x^k)`.
    pub moments: BTreeMap<u32, f64>,
    /// KS distance of the values, as given, to the standard normal.
    pub ks_distance: f64,
}

impl EmpiricalSummary {
    /// Summarises `values` with raw moments `1..=max_moment` (at least 2).
    pub fn from_values(values: &[f64], max_moment: u32) -> Result<Self> {
        check_values(values)?;
        let moments: BTreeMap<u32, f64> = (1..=max_moment.max(2))
            .map(|k| (k, power_sum(values, k) / values.len() as f64))
            .collect();
        let mean = moments[&1];
        let variance = (moments[&2] - mean * mean).max(0.0);
        Ok(Self {
            n: values.len(),
            mean,
            variance,
            moments,
            ks_distance: ks_statistic_unsorted(values)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn csv_header(&self) -> String {
        let mut cols = vec!["n".to_string(), "mean".into(), "variance".into()];
        cols.extend(self.moments.keys().map(|k| format!("moment_{k}")));
        cols.push("ks_distance".into());
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut cols = vec![self.n.to_string(), fmt17(self.mean), fmt17(self.variance)];
        cols.extend(self.moments.values().map(|&v| fmt17(v)));
        cols.push(fmt17(self.ks_distance));
        cols.join(",")
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", self.csv_header())?;
        writeln!(w, "{}", self.csv_row())
    }
}

/// Fixed 17-significant-digit scientific format used in every CSV output.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
