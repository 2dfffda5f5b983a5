//! Prime sums `Σ Λ(n)/(n^s log n)` and `Σ p^{−s}` over a size range.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::poly::{n_pow_minus_s, PreparedPoly};
use crate::numerics::summation::ComplexSum;
use crate::numerics::zeta::ComplexPoint;
use crate::primes::PrimeTable;
use crate::{Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeSumMode {
    /// `Σ Λ(n)/(n^s log n)` over prime powers.
    FullLambda,
    /// `Σ p^{−s}` over primes.
    PrimesOnly,
}

/// A prime sum over `n ∈ (range_lo, range_hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeSumSpec {
    pub mode: PrimeSumMode,
    pub range_lo: f64,
    pub range_hi: f64,
}

impl PrimeSumSpec {
    pub fn new(mode: PrimeSumMode, range_lo: f64, range_hi: f64) -> Result<Self> {
        if !(range_hi >= 2.0 && range_lo < range_hi) {
            return Err(Error::InvalidParams(format!(
                "prime sum range ({range_lo}, {range_hi}] must satisfy lo < hi and hi ≥ 2"
            )));
        }
        Ok(Self {
            mode,
            range_lo,
            range_hi,
        })
    }

    /// All `n` in `[2, hi]`.
    pub fn up_to(mode: PrimeSumMode, hi: f64) -> Result<Self> {
        Self::new(mode, 1.0, hi)
    }

    /// All `n` in `(lo, hi]`.
    pub fn between(mode: PrimeSumMode, lo: f64, hi: f64) -> Result<Self> {
        Self::new(mode, lo, hi)
    }

    /// `(log n, coefficient)` for every term in ascending `n`.
    fn terms(&self, table: &PrimeTable) -> Result<Vec<(f64, f64)>> {
        if (table.limit() as f64) < self.range_hi.floor() {
            return Err(Error::domain(format!(
                "prime table sieved to {} but the sum reaches {}",
                table.limit(),
                self.range_hi
            )));
        }
        Ok(match self.mode {
            PrimeSumMode::PrimesOnly => table
                .primes_in(self.range_lo, self.range_hi)
                .iter()
                .map(|&p| ((p as f64).ln(), 1.0))
                .collect(),
            PrimeSumMode::FullLambda => table
                .prime_powers_in(self.range_lo, self.range_hi)
                .into_iter()
                .map(|(n, p)| {
                    let m = (n as f64).ln() / (p as f64).ln();
                    let m = m.round();
                    // Λ(n)/log n = 1/m for n = p^m
                    (m * (p as f64).ln(), 1.0 / m)
                })
                .collect(),
        })
    }

    /// The sum as a polynomial with cached logarithms.
    pub fn prepare(&self, table: &PrimeTable) -> Result<PreparedPoly> {
        let (logs, coeffs) = self.terms(table)?.into_iter().unzip();
        Ok(PreparedPoly::from_parts(logs, coeffs))
    }
}

/// Evaluates the prime sum described by `spec` at `s`.
pub fn prime_sum<T: Scalar>(s: ComplexPoint<T>, spec: &PrimeSumSpec, table: &PrimeTable) -> Result<Complex<T>> {
    let mut acc = ComplexSum::new();
    for (l, c) in spec.terms(table)? {
        acc.add(n_pow_minus_s(T::lit(l), s) * T::lit(c));
    }
    Ok(acc.value())
}
