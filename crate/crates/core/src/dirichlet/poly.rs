//! Sparse Dirichlet polynomials `Σ cₙ n^{−s}`.

use std::io::Write;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::numerics::summation::ComplexSum;
use crate::numerics::zeta::ComplexPoint;
use crate::{Error, Result, Scalar};

/// Coefficients sorted by `n` with no repeats and no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SparseDirichletCoeffs {
    entries: Vec<(u128, f64)>,
}

impl SparseDirichletCoeffs {
    /// Sorts `entries`, drops zero coefficients and rejects repeated `n` or
    /// `n = 0`.
    pub fn new(mut entries: Vec<(u128, f64)>) -> Result<Self> {
        entries.retain(|&(_, c)| c != 0.0);
        entries.sort_unstable_by_key(|&(n, _)| n);
        if entries.first().is_some_and(|&(n, _)| n == 0) {
            return Err(Error::domain("Dirichlet coefficient index must be positive"));
        }
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::domain(format!("repeated Dirichlet index {}", w[0].0)));
        }
        Ok(Self { entries })
    }

    /// The polynomial `1`.
    pub fn one() -> Self {
        Self {
            entries: vec![(1, 1.0)],
        }
    }

    pub(crate) fn from_sorted(entries: Vec<(u128, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Self { entries }
    }

    pub fn entries(&self) -> &[(u128, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_n(&self) -> u128 {
        self.entries.last().map_or(0, |&(n, _)| n)
    }

    pub fn coeff(&self, n: u128) -> f64 {
        self.entries
            .binary_search_by_key(&n, |&(m, _)| m)
            .map_or(0.0, |i| self.entries[i].1)
    }

    /// Dirichlet convolution. Fails on index overflow.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for &(a, ca) in &self.entries {
            for &(b, cb) in &other.entries {
                let n = a
                    .checked_mul(b)
                    .ok_or_else(|| Error::Resource("Dirichlet index overflows 128 bits".into()))?;
                out.push((n, ca * cb));
            }
        }
        out.sort_unstable_by_key(|&(n, _)| n);
        let mut merged: Vec<(u128, f64)> = Vec::with_capacity(out.len());
        for (n, c) in out {
            match merged.last_mut() {
                Some(last) if last.0 == n => last.1 += c,
                _ => merged.push((n, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0.0);
        Ok(Self { entries: merged })
    }

    /// Writes `n,c` rows under a header line.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,c")?;
        for &(n, c) in &self.entries {
            writeln!(w, "{n},{c}")?;
        }
        Ok(())
    }

    /// Precomputes `log n` for repeated evaluation.
    pub fn prepare(&self) -> PreparedPoly {
        PreparedPoly {
            logs: self.entries.iter().map(|&(n, _)| (n as f64).ln()).collect(),
            coeffs: self.entries.iter().map(|&(_, c)| c).collect(),
        }
    }
}

/// `Σ c·n^{−s}` in ascending `n` with compensated accumulation.
pub fn eval_dirichlet_poly<T: Scalar>(coeffs: &SparseDirichletCoeffs, s: ComplexPoint<T>) -> Complex<T> {
    let mut acc = ComplexSum::new();
    for &(n, c) in coeffs.entries() {
        acc.add(n_pow_minus_s(T::lit((n as f64).ln()), s) * T::lit(c));
    }
    acc.value()
}

#[inline]
pub(crate) fn n_pow_minus_s<T: Scalar>(log_n: T, s: ComplexPoint<T>) -> Complex<T> {
    let mag = (-s.re * log_n).exp();
    let (sin, cos) = (s.im * log_n).sin_cos();
    Complex::new(mag * cos, -mag * sin)
}

/// A polynomial with its logarithms cached, for evaluation at many points.
#[derive(Clone, Debug)]
pub struct PreparedPoly {
    logs: Vec<f64>,
    coeffs: Vec<f64>,
}

impl PreparedPoly {
    pub(crate) fn from_parts(logs: Vec<f64>, coeffs: Vec<f64>) -> Self {
        Self { logs, coeffs }
    }

    pub fn eval<T: Scalar>(&self, s: ComplexPoint<T>) -> Complex<T> {
        let mut acc = ComplexSum::new();
        for (&l, &c) in self.logs.iter().zip(&self.coeffs) {
            acc.add(n_pow_minus_s(T::lit(l), s) * T::lit(c));
        }
        acc.value()
    }

    /// Evaluates at every point; parallel over points, each sum in fixed order.
    pub fn eval_batch<T: Scalar>(&self, points: &[ComplexPoint<T>]) -> Vec<Complex<T>> {
        use rayon::prelude::*;
        points.par_iter().map(|&s| self.eval(s)).collect()
    }
}
