use num_complex::Complex;

use crate::Scalar;

// B_{2k} / (2k(2k-1)) for the Stirling series.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Principal-branch-free `log Γ(z)`: the imaginary part is only meaningful
/// modulo 2π, which is all the callers need since they exponentiate.
pub(crate) fn ln_gamma<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let mut z = z;
    let mut shift = Complex::new(T::zero(), T::zero());
    let fifteen = T::lit(15.0);
    while z.norm() < fifteen || z.re < -z.im.abs() * T::lit(0.5) {
        shift = shift + z.ln();
        z = z + T::one();
    }
    let half = T::lit(0.5);
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex::new(T::zero(), T::zero());
    let mut pow = inv;
    for &c in STIRLING.iter() {
        series = series + pow * T::lit(c);
        pow = pow * inv2;
    }
    (z - half) * z.ln() - z + T::lit(0.5 * (2.0 * std::f64::consts::PI).ln()) + series - shift
}

/// `χ(s) = π^{s−1/2} Γ((1−s)/2) / Γ(s/2)`, so that `ζ(s) = χ(s) ζ(1−s)`.
pub(crate) fn chi<T: Scalar>(s: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let one = Complex::new(T::one(), T::zero());
    let log = (s - half) * T::PI().ln() + ln_gamma((one - s) * half) - ln_gamma(s * half);
    log.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_values_match_factorials() {
        for n in 1..15usize {
            let expect: f64 = (1..n).map(|k| (k as f64).ln()).sum();
            let got = ln_gamma(Complex::new(n as f64, 0.0));
            assert!((got.re - expect).abs() < 1e-12, "n={n}");
        }
        let half = ln_gamma(Complex::new(0.5f64, 0.0));
        assert!((half.re - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-13);
    }

    #[test]
    fn reflection_on_critical_line_gives_unit_chi() {
        for &t in &[3.0f64, 50.0, 1234.5, 1.0e6] {
            let c = chi(Complex::new(0.5, t));
            assert!((c.norm() - 1.0).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn chi_satisfies_inversion() {
        let s = Complex::new(0.7f64, 321.0);
        let one = Complex::new(1.0, 0.0);
        let prod = chi(s) * chi(one - s);
        assert!((prod - one).norm() < 1e-11);
    }
}
