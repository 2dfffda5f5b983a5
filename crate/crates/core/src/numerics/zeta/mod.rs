//! Riemann zeta function in the strip `0.4 ≤ Re s ≤ 3`.
//!
//! Low heights use Euler–Maclaurin summation with a certified remainder.
//! Above a few thousand the Riemann–Siegel expansion takes over: its cost
//! grows like `√t` instead of `t`, which is what makes quadrature over
//! `[T, 2T]` with `T = 10⁵` and sampling at `T = 10⁸` affordable.

mod euler_maclaurin;
mod gamma;
mod kernel_taylor;
mod riemann_siegel;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::numerics::summation::ComplexSum;
use crate::{Error, Result, Scalar};

/// A point `s = re + i·im`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> ComplexPoint<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl<T: Scalar> From<ComplexPoint<T>> for Complex<T> {
    fn from(p: ComplexPoint<T>) -> Self {
        Complex::new(p.re, p.im)
    }
}

impl<T: Scalar> From<Complex<T>> for ComplexPoint<T> {
    fn from(z: Complex<T>) -> Self {
        Self::new(z.re, z.im)
    }
}

pub const MIN_SIGMA: f64 = 0.4;
pub const MAX_SIGMA: f64 = 3.0;
pub const DEFAULT_HEIGHT_CAP: f64 = 1.0e8;
pub const MIN_TOL: f64 = 1.0e-14;
pub const MAX_TOL: f64 = 1.0e-6;

/// Below this height Euler–Maclaurin is always used.
const RS_MIN_HEIGHT: f64 = 1000.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZetaMethod {
    /// Riemann–Siegel whenever it reaches the tolerance, else Euler–Maclaurin.
    Auto,
    EulerMaclaurin,
    RiemannSiegel,
}

#[derive(Clone, Copy, Debug)]
pub struct ZetaValue<T> {
    pub value: Complex<T>,
    /// Truncation bound of the method plus an estimate of the rounding
    /// floor. The floor grows like `ε·t` because the phases `t·log n` carry
    /// absolute error proportional to `t`; above `t ≈ 10⁵` it exceeds 10⁻¹⁰.
    pub error_bound: f64,
    pub method: ZetaMethod,
}

#[derive(Clone, Debug)]
pub struct ZetaEvaluator {
    height_cap: f64,
    method: ZetaMethod,
}

impl Default for ZetaEvaluator {
    fn default() -> Self {
        Self {
            height_cap: DEFAULT_HEIGHT_CAP,
            method: ZetaMethod::Auto,
        }
    }
}

impl ZetaEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_height_cap(mut self, cap: f64) -> Self {
        self.height_cap = cap;
        self
    }

    pub fn with_method(mut self, method: ZetaMethod) -> Self {
        self.method = method;
        self
    }

    pub fn height_cap(&self) -> f64 {
        self.height_cap
    }

    fn check_point<T: Scalar>(&self, s: ComplexPoint<T>, tol: T) -> Result<(f64, f64, f64)> {
        if !s.is_finite() {
            return Err(Error::domain("zeta argument must be finite"));
        }
        let sigma = s.re.to_f64().unwrap_or(f64::NAN);
        let t = s.im.to_f64().unwrap_or(f64::NAN);
        let tol = tol.to_f64().unwrap_or(f64::NAN);
        if !(MIN_SIGMA..=MAX_SIGMA).contains(&sigma) {
            return Err(Error::domain(format!(
                "Re s = {sigma} outside the supported strip [{MIN_SIGMA}, {MAX_SIGMA}]"
            )));
        }
        if t.abs() > self.height_cap {
            return Err(Error::domain(format!(
                "|Im s| = {} exceeds the height cap {}",
                t.abs(),
                self.height_cap
            )));
        }
        if sigma == 1.0 && t == 0.0 {
            return Err(Error::domain("s = 1 is the pole of zeta"));
        }
        if !(MIN_TOL..=MAX_TOL).contains(&tol) {
            return Err(Error::domain(format!(
                "tolerance {tol:e} outside [{MIN_TOL:e}, {MAX_TOL:e}]"
            )));
        }
        Ok((sigma, t, tol))
    }

    pub fn eval<T: Scalar>(&self, s: ComplexPoint<T>, tol: T) -> Result<ZetaValue<T>> {
        let (sigma, t, tol) = self.check_point(s, tol)?;
        if t < 0.0 {
            let mut v = self.eval(s.conj(), T::lit(tol))?;
            v.value = v.value.conj();
            return Ok(v);
        }
        let use_rs = match self.method {
            ZetaMethod::EulerMaclaurin => None,
            ZetaMethod::RiemannSiegel => Some(riemann_siegel::plan(sigma, t, tol).ok_or_else(|| {
                Error::domain(format!(
                    "Riemann–Siegel cannot reach tolerance {tol:e} at height {t}"
                ))
            })?),
            ZetaMethod::Auto if t >= RS_MIN_HEIGHT => riemann_siegel::plan(sigma, t, tol),
            ZetaMethod::Auto => None,
        };
        let z: Complex<T> = s.into();
        let mut v = match use_rs {
            Some(plan) => ZetaValue {
                value: riemann_siegel::evaluate(z, &plan),
                error_bound: plan.bound,
                method: ZetaMethod::RiemannSiegel,
            },
            None => {
                let n = euler_maclaurin::choose_truncation(sigma, t, tol);
                let (value, bound) = euler_maclaurin::evaluate(z, n);
                ZetaValue {
                    value,
                    error_bound: bound,
                    method: ZetaMethod::EulerMaclaurin,
                }
            }
        };
        v.error_bound += rounding_floor::<T>(t, v.value.norm().to_f64().unwrap_or(0.0));
        Ok(v)
    }

    /// `log|ζ(s)|`, or `None` when `|ζ(s)| < 10⁻³⁰⁰` (the point sits on a zero
    /// for all numerical purposes).
    pub fn log_abs<T: Scalar>(&self, s: ComplexPoint<T>, tol: T) -> Result<Option<T>> {
        let v = self.eval(s, tol)?.value;
        let mag = v.norm();
        if mag.to_f64().unwrap_or(0.0) < 1.0e-300 {
            Ok(None)
        } else {
            Ok(Some(mag.ln()))
        }
    }
}

fn rounding_floor<T: Scalar>(t: f64, magnitude: f64) -> f64 {
    let eps = T::epsilon().to_f64().unwrap_or(f64::EPSILON);
    16.0 * eps * (1.0 + t.abs()) * (1.0 + magnitude)
}

/// ζ(s) within absolute error `tol` using the default evaluator. Below the
/// rounding floor (see [`ZetaValue::error_bound`]) the floor applies instead.
pub fn zeta_eval<T: Scalar>(s: ComplexPoint<T>, tol: T) -> Result<Complex<T>> {
    ZetaEvaluator::default().eval(s, tol).map(|v| v.value)
}

/// `Σ_{n≤N} n^{−s}` with compensated accumulation.
pub fn zeta_partial_sum<T: Scalar>(s: ComplexPoint<T>, n: usize) -> Complex<T> {
    let z: Complex<T> = s.into();
    let mut acc = ComplexSum::new();
    for m in 1..=n {
        acc.add(euler_maclaurin::power_term(z, m));
    }
    acc.value()
}

/// ζ(x) for real `x ≥ −5`, `x ≠ 1`; used for the closed-form main terms,
/// which need ζ on `[0, 1)` as well as `(1, 2]`.
pub fn zeta_real<T: Scalar>(x: T, tol: T) -> Result<T> {
    let xf = x.to_f64().unwrap_or(f64::NAN);
    if !xf.is_finite() || xf < -5.0 {
        return Err(Error::domain(format!("real zeta argument {xf} out of range")));
    }
    if xf == 1.0 {
        return Err(Error::domain("s = 1 is the pole of zeta"));
    }
    let tol = tol.to_f64().unwrap_or(MIN_TOL).max(MIN_TOL);
    let n = euler_maclaurin::choose_truncation(xf, 0.0, tol);
    let (v, _) = euler_maclaurin::evaluate(Complex::new(x, T::zero()), n);
    Ok(v.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zeta_two() {
        let z = zeta_eval(ComplexPoint::new(2.0f64, 0.0), 1e-12).unwrap();
        assert!((z.re - 1.6449340668482264).abs() < 1e-12);
        assert_eq!(z.im, 0.0);
    }

    #[test]
    fn first_zero_is_small() {
        let z = zeta_eval(ComplexPoint::new(0.5, 14.134725141734693), 1e-12).unwrap();
        assert!(z.norm() < 1e-8, "|ζ| = {}", z.norm());
    }

    #[test]
    fn pole_and_domain_errors() {
        assert!(matches!(zeta_eval(ComplexPoint::new(1.0, 0.0), 1e-10), Err(Error::Domain(_))));
        assert!(matches!(zeta_eval(ComplexPoint::new(0.3, 10.0), 1e-10), Err(Error::Domain(_))));
        assert!(matches!(zeta_eval(ComplexPoint::new(0.5, 2e8), 1e-10), Err(Error::Domain(_))));
        assert!(matches!(zeta_eval(ComplexPoint::new(0.5, 10.0), 1e-3), Err(Error::Domain(_))));
        let raised = ZetaEvaluator::new().with_height_cap(3e8);
        assert!(raised.eval(ComplexPoint::new(0.5, 2e8), 1e-8).is_ok());
    }

    #[test]
    fn partial_sums() {
        let z = zeta_partial_sum(ComplexPoint::new(0.0, 0.0), 5);
        assert_eq!(z, Complex::new(5.0, 0.0));
        let z2 = zeta_partial_sum(ComplexPoint::new(2.0, 0.0), 1000);
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!(exact - z2.re > 0.0 && exact - z2.re < 1e-3);
    }

    #[test]
    fn real_zeta_left_of_one() {
        // ζ(1/2) = −1.4603545088095868…
        assert!((zeta_real(0.5f64, 1e-14).unwrap() + 1.4603545088095868).abs() < 1e-13);
        assert!((zeta_real(0.0f64, 1e-14).unwrap() + 0.5).abs() < 1e-14);
        assert!(zeta_real(1.0, 1e-12).is_err());
    }

    #[test]
    fn methods_agree_in_overlap() {
        let em = ZetaEvaluator::new().with_method(ZetaMethod::EulerMaclaurin);
        let rs = ZetaEvaluator::new().with_method(ZetaMethod::RiemannSiegel);
        for &(sigma, t) in &[(0.5, 5000.0), (0.6, 7777.7), (0.9, 12000.0), (2.0, 9000.0), (0.4, 20000.0)] {
            let s = ComplexPoint::new(sigma, t);
            let a = em.eval(s, 1e-12).unwrap().value;
            let b = rs.eval(s, 1e-12).unwrap().value;
            assert!((a - b).norm() < 5e-10, "sigma={sigma} t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn single_precision_instantiation() {
        let z = zeta_eval(ComplexPoint::new(2.0f32, 0.0), 1e-6).unwrap();
        assert!((z.re - 1.644934).abs() < 1e-5);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn conjugate_symmetry(sigma in 0.4f64..3.0, t in 0.5f64..20000.0) {
            let s = ComplexPoint::new(sigma, t);
            let a = zeta_eval(s, 1e-11).unwrap();
            let b = zeta_eval(s.conj(), 1e-11).unwrap();
            prop_assert!((a - b.conj()).norm() <= 1e-11);
        }

        #[test]
        fn dirichlet_series_agreement(sigma in 2.0f64..3.0, t in -50.0f64..50.0) {
            let s = ComplexPoint::new(sigma, t);
            let a = zeta_eval(s, 1e-12).unwrap();
            let b = zeta_partial_sum(s, 1_000_000);
            prop_assert!((a - b).norm() <= 2e-6);
        }
    }
}
