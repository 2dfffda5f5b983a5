//! Neumaier-compensated accumulators.
//!
//! Every long sum in the crate (Dirichlet polynomials, zeta partial sums,
//! moments, quadrature panels) goes through these so that results do not
//! depend on how many terms were accumulated in plain floating point.

use std::ops::AddAssign;

use num_complex::Complex;

use crate::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator into this one. The result depends only on
    /// the order of merges, never on how the terms were partitioned in time.
    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.comp += other.comp;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Scalar> AddAssign<T> for CompensatedSum<T> {
    #[inline]
    fn add_assign(&mut self, rhs: T) {
        self.add(rhs);
    }
}

impl<T: Scalar> Extend<T> for CompensatedSum<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl<T: Scalar> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// Compensated sum of complex terms, real and imaginary parts tracked separately.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexSum<T> {
    re: CompensatedSum<T>,
    im: CompensatedSum<T>,
}

impl<T: Scalar> ComplexSum<T> {
    pub fn new() -> Self {
        Self {
            re: CompensatedSum::new(),
            im: CompensatedSum::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &Self) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    #[inline]
    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }
}

impl<T: Scalar> AddAssign<Complex<T>> for ComplexSum<T> {
    #[inline]
    fn add_assign(&mut self, rhs: Complex<T>) {
        self.add(rhs);
    }
}

impl<T: Scalar> FromIterator<Complex<T>> for ComplexSum<T> {
    fn from_iter<I: IntoIterator<Item = Complex<T>>>(iter: I) -> Self {
        let mut acc = Self::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Sums a slice with compensation.
pub fn compensated_sum<T: Scalar>(xs: &[T]) -> T {
    xs.iter().copied().collect::<CompensatedSum<T>>().value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(&xs), 2.0);
        let naive: f64 = xs.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn long_harmonic_sum_matches_reference() {
        // H_n computed in reverse order is accurate to a few ulps
        let n = 1_000_000;
        let forward: CompensatedSum<f64> = (1..=n).map(|k| 1.0 / k as f64).collect();
        let reverse: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        assert!((forward.value() - reverse).abs() < 1e-13);
    }

    #[test]
    fn f32_accumulator_beats_naive() {
        let mut acc = CompensatedSum::<f32>::new();
        let mut naive = 0.0f32;
        for _ in 0..1_000_000 {
            acc += 0.1;
            naive += 0.1;
        }
        // 1e6 copies of the f32 nearest to 0.1, summed exactly in f64.
        let exact = 1e6 * f64::from(0.1f32);
        let compensated_err = (f64::from(acc.value()) - exact).abs();
        let naive_err = (f64::from(naive) - exact).abs();
        assert!(naive_err > 100.0, "naive error {naive_err}");
        assert!(compensated_err < naive_err / 100.0, "{compensated_err} vs {naive_err}");
    }

    proptest! {
        #[test]
        fn merge_matches_single_pass_closely(xs in proptest::collection::vec(-1e6f64..1e6, 1..200), split in 0usize..200) {
            let split = split.min(xs.len());
            let whole: CompensatedSum<f64> = xs.iter().copied().collect();
            let mut left: CompensatedSum<f64> = xs[..split].iter().copied().collect();
            let right: CompensatedSum<f64> = xs[split..].iter().copied().collect();
            left.merge(&right);
            let scale: f64 = xs.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
            prop_assert!((left.value() - whole.value()).abs() <= 1e-15 * scale);
        }
    }
}
