//! The mollifier `M = M₁·M₂` with coefficients `μ(n)a(n)`.
//!
//! `a(n) = 1` when `n` is squarefree, every prime factor is at most `X`, at
//! most `L1` of them lie in `[2, Y]` and at most `L2` in `(Y, X]`. Since the
//! constraints factor over the two ranges, `M₁` and `M₂` are truncated
//! elementary symmetric sums:
//!
//! `M_i(s) = Σ_{j≤L_i} (−1)^j e_j({p^{−s}})`.
//!
//! Explicit coefficient lists are produced by depth-first enumeration; for
//! evaluation at parameters where the lists are astronomically long the
//! symmetric-sum recurrence gives the same values in `O(#primes·L)`.

use num_complex::Complex;

use super::params::ParamSet;
use super::poly::SparseDirichletCoeffs;
use crate::numerics::summation::ComplexSum;
use crate::numerics::zeta::ComplexPoint;
use crate::primes::PrimeTable;
use crate::{Error, Result, Scalar};

/// Default bound on the total number of enumerated coefficients.
pub const DEFAULT_COEFF_CAP: usize = 20_000_000;

/// `M` together with its factors over `[2, Y]` and `(Y, X]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mollifier {
    pub m: SparseDirichletCoeffs,
    pub m1: SparseDirichletCoeffs,
    pub m2: SparseDirichletCoeffs,
}

/// Σ_{j≤l} C(n, j), saturating.
fn truncated_binomial_sum(n: usize, l: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for j in 0..=l.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - j) as u128) / (j as u128 + 1);
    }
    total
}

/// Signed squarefree products of at most `cap` distinct primes from `primes`.
fn enumerate(primes: &[u64], cap: usize, limit: usize) -> Result<Vec<(u128, f64)>> {
    let mut out = vec![(1u128, 1.0)];
    // stack of (next prime index, product, factor count)
    let mut stack = vec![(0usize, 1u128, 0usize)];
    while let Some((start, n, k)) = stack.pop() {
        if k == cap {
            continue;
        }
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let m = n
                .checked_mul(p as u128)
                .ok_or_else(|| Error::Resource("mollifier index overflows 128 bits".into()))?;
            let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
            out.push((m, sign));
            if out.len() > limit {
                return Err(Error::Resource(format!(
                    "mollifier enumeration exceeds {limit} coefficients"
                )));
            }
            stack.push((i + 1, m, k + 1));
        }
    }
    out.sort_unstable_by_key(|&(n, _)| n);
    Ok(out)
}

/// Enumerates `M`, `M₁`, `M₂` under the default coefficient cap.
pub fn mollifier_coeffs(params: &ParamSet, table: &PrimeTable) -> Result<Mollifier> {
    mollifier_coeffs_with_cap(params, table, DEFAULT_COEFF_CAP)
}

pub fn mollifier_coeffs_with_cap(params: &ParamSet, table: &PrimeTable, cap: usize) -> Result<Mollifier> {
    if (table.limit() as f64) < params.x.floor() {
        return Err(Error::domain(format!(
            "prime table sieved to {} but X = {}",
            table.limit(),
            params.x
        )));
    }
    let small = table.primes_in(0.0, params.y);
    let large = table.primes_in(params.y, params.x);
    let c1 = truncated_binomial_sum(small.len(), params.l1 as usize);
    let c2 = truncated_binomial_sum(large.len(), params.l2 as usize);
    let total = c1.saturating_mul(c2).saturating_add(c1).saturating_add(c2);
    if total > cap as u128 {
        return Err(Error::Resource(format!(
            "mollifier would have {total} coefficients (cap {cap}); reduce X, Y, L1 or L2"
        )));
    }
    let m1 = SparseDirichletCoeffs::from_sorted(enumerate(small, params.l1 as usize, cap)?);
    let m2 = SparseDirichletCoeffs::from_sorted(enumerate(large, params.l2 as usize, cap)?);
    let m = m1.mul(&m2)?;
    Ok(Mollifier { m, m1, m2 })
}

/// `Σ_{j≤l} (−1)^j e_j(z_1, …)`, exact product `Π(1 − z_i)` when the
/// truncation cannot matter at working precision.
pub fn truncated_product<T: Scalar>(z: &[Complex<T>], l: usize) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    if l >= z.len() || truncation_negligible(z, l) {
        return z.iter().fold(one, |acc, &w| acc * (one - w));
    }
    let mut e = vec![Complex::new(T::zero(), T::zero()); l + 1];
    e[0] = one;
    for (i, &w) in z.iter().enumerate() {
        for j in (1..=l.min(i + 1)).rev() {
            let prev = e[j - 1];
            e[j] = e[j] - prev * w;
        }
    }
    e.into_iter().collect::<ComplexSum<T>>().value()
}

/// Whether `Σ_{j>l} |e_j| ≤ Σ_{j>l} S^j/j!` (with `S = Σ|z_i|`) is below 10⁻¹⁸.
fn truncation_negligible<T: Scalar>(z: &[Complex<T>], l: usize) -> bool {
    let s: f64 = z.iter().map(|w| w.norm().to_f64().unwrap_or(f64::INFINITY)).sum();
    let next = (l + 1) as f64;
    if s >= next {
        return false;
    }
    // S^{l+1}/(l+1)! · 1/(1 − S/(l+2)) bounds the whole tail
    let log_first = next * s.ln() - libm::lgamma(next + 1.0);
    let tail = log_first.exp() / (1.0 - s / (next + 1.0));
    tail < 1e-18
}

/// Evaluates `M₁`, `M₂` and the prime sums that share `p^{−s}`.
#[derive(Clone, Debug)]
pub struct MollifierEvaluator {
    log_p: Vec<f64>,
    /// primes `≤ Y` come first
    split: usize,
    /// `(m, n = p^m)` ranges: powers with `p^m ≤ Y` and with `Y < p^m ≤ X`
    max_pow_y: Vec<u32>,
    max_pow_x: Vec<u32>,
    l1: usize,
    l2: usize,
}

/// Per-point values of the prime sums and mollifier factors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointValues<T> {
    /// `Σ_{p≤X} p^{−s}`
    pub p0: Complex<T>,
    /// `Σ_{2≤n≤Y} Λ(n)/(n^s log n)`
    pub p1: Complex<T>,
    /// `Σ_{Y<n≤X} Λ(n)/(n^s log n)`
    pub p2: Complex<T>,
    pub m1: Complex<T>,
    pub m2: Complex<T>,
}

impl<T: Scalar> PointValues<T> {
    pub fn p(&self) -> Complex<T> {
        self.p1 + self.p2
    }

    pub fn m(&self) -> Complex<T> {
        self.m1 * self.m2
    }
}

impl MollifierEvaluator {
    pub fn new(params: &ParamSet, table: &PrimeTable) -> Result<Self> {
        if (table.limit() as f64) < params.x.floor() {
            return Err(Error::domain(format!(
                "prime table sieved to {} but X = {}",
                table.limit(),
                params.x
            )));
        }
        let primes = table.primes_in(0.0, params.x);
        let split = table.primes_in(0.0, params.y).len();
        let max_pow = |p: u64, bound: f64| {
            let mut m = 0;
            let mut q = p as f64;
            while q <= bound {
                m += 1;
                q *= p as f64;
            }
            m
        };
        Ok(Self {
            log_p: primes.iter().map(|&p| (p as f64).ln()).collect(),
            split,
            max_pow_y: primes.iter().map(|&p| max_pow(p, params.y)).collect(),
            max_pow_x: primes.iter().map(|&p| max_pow(p, params.x)).collect(),
            l1: params.l1 as usize,
            l2: params.l2 as usize,
        })
    }

    pub fn prime_count(&self) -> usize {
        self.log_p.len()
    }

    pub fn eval<T: Scalar>(&self, s: ComplexPoint<T>) -> PointValues<T> {
        let z: Vec<Complex<T>> = self
            .log_p
            .iter()
            .map(|&l| super::poly::n_pow_minus_s(T::lit(l), s))
            .collect();
        let mut p0 = ComplexSum::new();
        let mut p1 = ComplexSum::new();
        let mut p2 = ComplexSum::new();
        for (i, &w) in z.iter().enumerate() {
            p0.add(w);
            let mut power = w;
            for m in 1..=self.max_pow_x[i] {
                let term = power / T::from_usize_lossy(m as usize);
                if m <= self.max_pow_y[i] {
                    p1.add(term);
                } else {
                    p2.add(term);
                }
                power = power * w;
            }
        }
        PointValues {
            p0: p0.value(),
            p1: p1.value(),
            p2: p2.value(),
            m1: truncated_product(&z[..self.split], self.l1),
            m2: truncated_product(&z[self.split..], self.l2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::params::ParamOverrides;
    use crate::dirichlet::poly::eval_dirichlet_poly;
    use crate::dirichlet::prime_sum::{prime_sum, PrimeSumMode, PrimeSumSpec};
    use crate::primes::sieve_primes;

    fn params(x: f64, y: f64, l1: u32, l2: u32) -> ParamSet {
        ParamSet::resolve(
            1e6,
            &ParamOverrides {
                x: Some(x),
                y: Some(y),
                l1: Some(l1),
                l2: Some(l2),
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn six_entry_example() {
        let t = sieve_primes(100).unwrap();
        let m = mollifier_coeffs(&params(5.0, 2.0, 1, 1), &t).unwrap();
        assert_eq!(
            m.m.entries(),
            &[(1, 1.0), (2, -1.0), (3, -1.0), (5, -1.0), (6, 1.0), (10, 1.0)]
        );
        assert_eq!(m.m1.entries(), &[(1, 1.0), (2, -1.0)]);
        assert_eq!(m.m2.entries(), &[(1, 1.0), (3, -1.0), (5, -1.0)]);
    }

    #[test]
    fn trivial_caps() {
        let t = sieve_primes(100).unwrap();
        let m = mollifier_coeffs(&params(5.0, 2.0, 0, 0), &t).unwrap();
        assert_eq!(m.m.entries(), &[(1, 1.0)]);
        let m = mollifier_coeffs(&params(4.0, 4.0, 2, 0), &t).unwrap();
        assert_eq!(m.m.entries(), &[(1, 1.0), (2, -1.0), (3, -1.0), (6, 1.0)]);
    }

    #[test]
    fn coefficient_cap() {
        let t = sieve_primes(10_000).unwrap();
        let err = mollifier_coeffs(&params(1e4, 1e2, 20, 5), &t).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        let err = mollifier_coeffs_with_cap(&params(100.0, 10.0, 2, 2), &t, 10).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn evaluator_matches_explicit_lists() {
        let t = sieve_primes(1000).unwrap();
        for (x, y, l1, l2) in [(5.0, 2.0, 1, 1), (60.0, 7.0, 3, 2), (200.0, 10.0, 4, 1), (30.0, 30.0, 3, 0)] {
            let p = params(x, y, l1, l2);
            let explicit = mollifier_coeffs(&p, &t).unwrap();
            let ev = MollifierEvaluator::new(&p, &t).unwrap();
            for &(sigma, tt) in &[(0.6, 50.0), (0.717, 1234.5), (1.3, -77.0)] {
                let s = ComplexPoint::new(sigma, tt);
                let v = ev.eval(s);
                assert!((v.m1 - eval_dirichlet_poly(&explicit.m1, s)).norm() < 1e-12);
                assert!((v.m2 - eval_dirichlet_poly(&explicit.m2, s)).norm() < 1e-12);
                assert!((v.m() - eval_dirichlet_poly(&explicit.m, s)).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn evaluator_prime_sums_match_direct() {
        let t = sieve_primes(10_000).unwrap();
        let p = params(1e4, 1e2, 20, 5);
        let ev = MollifierEvaluator::new(&p, &t).unwrap();
        let s = ComplexPoint::new(p.sigma0, 1_234_567.0);
        let v = ev.eval(s);
        let p0 = PrimeSumSpec::up_to(PrimeSumMode::PrimesOnly, 1e4).unwrap();
        let p1 = PrimeSumSpec::up_to(PrimeSumMode::FullLambda, 1e2).unwrap();
        let p2 = PrimeSumSpec::between(PrimeSumMode::FullLambda, 1e2, 1e4).unwrap();
        assert!((v.p0 - prime_sum(s, &p0, &t).unwrap()).norm() < 1e-11);
        assert!((v.p1 - prime_sum(s, &p1, &t).unwrap()).norm() < 1e-11);
        assert!((v.p2 - prime_sum(s, &p2, &t).unwrap()).norm() < 1e-11);
    }

    #[test]
    fn full_product_shortcut_agrees_with_recurrence() {
        let z: Vec<Complex<f64>> = (0..30).map(|k| Complex::from_polar(0.05, k as f64)).collect();
        let exact = z.iter().fold(Complex::new(1.0, 0.0), |a, &w| a * (1.0 - w));
        assert!(truncation_negligible(&z, 25));
        let mut e = vec![Complex::new(0.0, 0.0); 26];
        e[0] = Complex::new(1.0, 0.0);
        for (i, &w) in z.iter().enumerate() {
            for j in (1..=25usize.min(i + 1)).rev() {
                let prev = e[j - 1];
                e[j] -= prev * w;
            }
        }
        let dp: Complex<f64> = e.iter().sum();
        assert!((dp - exact).norm() < 1e-15);
        assert!(!truncation_negligible(&z, 2));
    }

    #[test]
    fn degenerate_range_gives_one() {
        let t = sieve_primes(10).unwrap();
        let p = params(1.5, 1.5, 3, 3);
        let v = MollifierEvaluator::new(&p, &t).unwrap().eval(ComplexPoint::new(0.7, 10.0));
        assert_eq!(v.m(), Complex::new(1.0, 0.0));
        assert_eq!(v.p(), Complex::new(0.0, 0.0));
    }
}
