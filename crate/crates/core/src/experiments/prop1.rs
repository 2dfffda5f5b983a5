//! Distance between `log|ζ|` on the critical line and slightly to its right.

use super::{evaluator_for, CheckOptions, CheckReport};
use crate::dirichlet::ParamSet;
use crate::numerics::{ComplexPoint, Integrator};
use crate::{Error, Result};

/// [`check_prop1_with`] with default options.
pub fn check_prop1(params: &ParamSet, t: f64, sigma: f64) -> Result<CheckReport> {
    check_prop1_with(params, t, sigma, &CheckOptions::default())
}

/// `lhs = ∫_{t−1}^{t+1} |log|ζ(½+iy)| − log|ζ(σ+iy)|| dy` against
/// `rhs = (σ − ½)·log T`. Zeros on the critical line make the integrand
/// logarithmically singular; the adaptive rule refines around them.
pub fn check_prop1_with(params: &ParamSet, t: f64, sigma: f64, opts: &CheckOptions) -> Result<CheckReport> {
    params.validate()?;
    if !(0.5..=0.6).contains(&sigma) {
        return Err(Error::Precondition(format!("sigma must lie in [0.5, 0.6], got {sigma}")));
    }
    if !(params.t..=2.0 * params.t).contains(&t) {
        return Err(Error::Precondition(format!(
            "t = {t} outside [T, 2T] = [{}, {}]",
            params.t,
            2.0 * params.t
        )));
    }
    let rhs = (sigma - 0.5) * params.log_t();
    if sigma == 0.5 {
        return Ok(CheckReport::new("prop1", params.clone(), 0.0, rhs)
            .detail("t", t)
            .detail("sigma", sigma)
            .detail("ratio", 0.0));
    }
    let zeta = evaluator_for(2.0 * params.t + 1.0);
    let tol = opts.zeta_tol;
    let log_abs = |re: f64, y: f64| -> f64 {
        match zeta.log_abs(ComplexPoint::new(re, y), tol) {
            Ok(Some(v)) => v,
            _ => f64::NEG_INFINITY,
        }
    };
    let integrand = |y: f64| (log_abs(0.5, y) - log_abs(sigma, y)).abs();
    let q = Integrator::new()
        .abs_tol(1e-8)
        .rel_tol(1e-8)
        .max_evaluations(400_000)
        .integrate(integrand, t - 1.0, t + 1.0)?;
    Ok(CheckReport::new("prop1", params.clone(), q.value, rhs)
        .detail("t", t)
        .detail("sigma", sigma)
        .detail("ratio", q.value / rhs)
        .detail("quad_error", q.abs_error_estimate)
        .detail("quad_evaluations", q.evaluations))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_line_is_zero() {
        let p = ParamSet::from_height(1e4).unwrap();
        let r = check_prop1(&p, 1.5e4, 0.5).unwrap();
        assert_eq!(r.lhs, 0.0);
    }

    #[test]
    fn preconditions() {
        let p = ParamSet::from_height(1e4).unwrap();
        assert!(matches!(check_prop1(&p, 1.5e4, 0.7), Err(Error::Precondition(_))));
        assert!(matches!(check_prop1(&p, 5e3, 0.55), Err(Error::Precondition(_))));
    }

    #[test]
    fn finite_across_a_zero() {
        // the third zero sits at 25.0108575801...
        let p = ParamSet::from_height(16.0).unwrap();
        let r = check_prop1(&p, 25.0, 0.52).unwrap();
        assert!(r.lhs.is_finite() && r.lhs > 0.0);
        assert!(r.detail_f64("ratio").unwrap().is_finite());
    }
}
