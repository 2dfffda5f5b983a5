mod common;

use zetaclt::statistics::{gaussian_cdf, ks_statistic};

#[test]
fn gaussian_cdf_matches_oracle() {
    for row in common::read_rows("gaussian_cdf_oracle.csv") {
        let got = gaussian_cdf(row[0]);
        assert!((got - row[1]).abs() <= 1e-10, "x = {}: {got} vs {}", row[0], row[1]);
    }
}

#[test]
fn gaussian_cdf_single_precision() {
    for row in common::read_rows("gaussian_cdf_oracle.csv") {
        let got = gaussian_cdf(row[0] as f32) as f64;
        assert!((got - row[1]).abs() <= 1e-6, "x = {}", row[0]);
    }
}

#[test]
fn ks_at_oracle_quantiles() {
    // Φ(x_i) taken from the oracle: the KS distance of a single point is
    // max(Φ, 1 − Φ)
    for row in common::read_rows("gaussian_cdf_oracle.csv") {
        let d = ks_statistic(&[row[0]]).unwrap();
        assert!((d - row[1].max(1.0 - row[1])).abs() <= 1e-10);
    }
}
