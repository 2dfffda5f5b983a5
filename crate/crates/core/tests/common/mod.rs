#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Rows of a comma-separated fixture, skipping `#` comment lines.
pub fn read_rows(name: &str) -> Vec<Vec<f64>> {
    std::fs::read_to_string(fixture(name))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split(',').map(|x| x.trim().parse().unwrap()).collect())
        .collect()
}

/// `μ(n)a(n)` by trial division: squarefree, all prime factors `≤ x`, at most
/// `l1` of them `≤ y` and at most `l2` in `(y, x]`.
pub fn mollifier_coeff_by_factoring(n: u64, x: f64, y: f64, l1: u32, l2: u32) -> i32 {
    let (mut m, mut p) = (n, 2u64);
    let (mut small, mut large) = (0u32, 0u32);
    while m > 1 {
        if p * p > m {
            p = m;
        }
        if m % p == 0 {
            m /= p;
            if m % p == 0 || p as f64 > x {
                return 0;
            }
            if p as f64 <= y {
                small += 1;
            } else {
                large += 1;
            }
        }
        p += 1;
    }
    if small > l1 || large > l2 {
        0
    } else if (small + large) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Compares `mollifier_coeffs` with an exhaustive scan of `n ≤ Y^L1·X^L2`.
/// Returns the number of nonzero coefficients, or a description of the first
/// disagreement.
pub fn check_mollifier_case(x: f64, y: f64, l1: u32, l2: u32) -> Result<usize, String> {
    use zetaclt::dirichlet::{mollifier_coeffs, ParamOverrides, ParamSet};
    let params = ParamSet::resolve(
        1e6,
        &ParamOverrides {
            x: Some(x),
            y: Some(y),
            l1: Some(l1),
            l2: Some(l2),
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let table = zetaclt::primes::sieve_primes((x.floor() as u64).max(2)).map_err(|e| e.to_string())?;
    let m = mollifier_coeffs(&params, &table).map_err(|e| e.to_string())?;
    let bound = params.support_bound();
    if let Some(&(n, _)) = m.m.entries().iter().find(|&&(n, _)| n as f64 > bound) {
        return Err(format!("n = {n} exceeds the support bound {bound}"));
    }
    let scan: Vec<(u128, f64)> = (1..=bound.floor() as u64)
        .filter_map(|n| match mollifier_coeff_by_factoring(n, x, y, l1, l2) {
            0 => None,
            c => Some((n as u128, c as f64)),
        })
        .collect();
    if scan != m.m.entries() {
        return Err(format!(
            "X={x} Y={y} L1={l1} L2={l2}: enumeration has {} entries, scan {}",
            m.m.len(),
            scan.len()
        ));
    }
    Ok(scan.len())
}
