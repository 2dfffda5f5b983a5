mod common;

use proptest::prelude::*;

#[test]
fn enumeration_matches_exhaustive_scan() {
    for row in common::read_rows("mollifier_cases.csv") {
        let n = common::check_mollifier_case(row[0], row[1], row[2] as u32, row[3] as u32).unwrap();
        assert!(n >= 1);
    }
}

#[test]
fn factoring_oracle_examples() {
    use common::mollifier_coeff_by_factoring as c;
    assert_eq!(c(1, 5.0, 2.0, 1, 1), 1);
    assert_eq!(c(10, 5.0, 2.0, 1, 1), 1);
    assert_eq!(c(15, 5.0, 2.0, 1, 1), 0);
    assert_eq!(c(4, 5.0, 2.0, 1, 1), 0);
    assert_eq!(c(7, 5.0, 2.0, 1, 1), 0);
    assert_eq!(c(30, 5.0, 2.0, 1, 2), -1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_small_cases(x in 2.0f64..60.0, frac in 0.0f64..1.0, l1 in 1u32..4, l2 in 1u32..3) {
        let y = (2.0 + frac * (x - 2.0)).min(x);
        prop_assume!(y.powi(l1 as i32) * x.powi(l2 as i32) <= 2e5);
        prop_assert!(common::check_mollifier_case(x, y, l1, l2).is_ok());
    }
}
