//! Truncated exponential series.

use num_complex::Complex;

use crate::numerics::summation::ComplexSum;
use crate::{Error, Result, Scalar};

/// Number of terms `⌊100K⌋ + 1` used by [`truncated_exp`].
pub fn truncated_exp_terms(k: f64) -> usize {
    (100.0 * k).floor() as usize + 1
}

/// `Σ_{0≤j≤100K} z^j/j!` by the ascending recurrence `term_j = term_{j−1}·z/j`.
///
/// Requires `K > 0` (the series with cap `100K` is used with `K` slightly
/// below 1 at desk heights).
pub fn truncated_exp<T: Scalar>(z: Complex<T>, k: f64) -> Result<Complex<T>> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain(format!("truncated exponential needs K > 0, got {k}")));
    }
    Ok(exp_series(z, truncated_exp_terms(k) - 1))
}

/// `Σ_{0≤j≤max_power} z^j/j!`.
pub fn exp_series<T: Scalar>(z: Complex<T>, max_power: usize) -> Complex<T> {
    let mut acc = ComplexSum::new();
    let mut term = Complex::new(T::one(), T::zero());
    acc.add(term);
    for j in 1..=max_power {
        term = term * z / T::from_usize_lossy(j);
        if term.re == T::zero() && term.im == T::zero() {
            break;
        }
        acc.add(term);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(truncated_exp(Complex::new(0.0, 0.0), 5.0).unwrap(), Complex::new(1.0, 0.0));
        let e = truncated_exp(Complex::new(1.0, 0.0), 2.0).unwrap();
        assert!((e.re - std::f64::consts::E).abs() <= 4.0 * f64::EPSILON);
        // e^{2+i} = e²(cos 1 + i sin 1), reference from a 40-digit evaluation
        let v = truncated_exp(Complex::new(2.0, 1.0), 3.0).unwrap();
        let want = Complex::new(3.992_324_048_441_271, 6.217_676_312_367_968);
        assert!((v - want).norm() < 1e-13, "{v}");
        assert!(truncated_exp(Complex::new(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn term_count() {
        assert_eq!(truncated_exp_terms(2.0), 201);
        assert_eq!(truncated_exp_terms(0.965), 97);
    }

    #[test]
    fn short_series_differs_from_exp() {
        let z = Complex::new(1.0f64, 0.0);
        assert_eq!(exp_series(z, 1), Complex::new(2.0, 0.0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn tail_bound(k in prop::sample::select(vec![2.0f64, 3.0, 5.0]), r in 0.0f64..1.0, theta in 0.0f64..6.283) {
            let z = Complex::from_polar(r * k, theta);
            let got = truncated_exp(z, k).unwrap();
            let bound = (-99.0 * k).exp() + 1e-12;
            prop_assert!((got - z.exp()).norm() <= bound);
        }
    }
}
