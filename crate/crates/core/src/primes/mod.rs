//! Primes, prime powers and the von Mangoldt function up to a sieve bound.

mod cache;
mod sieve;

use std::collections::BTreeMap;

use crate::{Error, Result};

pub use cache::{load_cache, save_cache};

/// Plain sieve up to this bound; segmented beyond it.
pub const PLAIN_SIEVE_LIMIT: u64 = 10_000_000;

/// Default memory budget for a table (bytes).
pub const DEFAULT_MEMORY_CAP: u64 = 512 << 20;

/// Sieved primes up to `limit`, with Λ on prime powers.
///
/// Primes are kept in a sorted vector; prime powers `p^m` with `m ≥ 2` live in
/// a sparse map keyed by `n` with value `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    higher_powers: BTreeMap<u64, u64>,
}

/// Sieves all primes `≤ limit` under the default memory cap.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    PrimeTable::with_memory_cap(limit, DEFAULT_MEMORY_CAP)
}

impl PrimeTable {
    pub fn new(limit: u64) -> Result<Self> {
        sieve_primes(limit)
    }

    pub fn with_memory_cap(limit: u64, cap_bytes: u64) -> Result<Self> {
        let need = estimated_bytes(limit);
        if need > cap_bytes {
            return Err(Error::Resource(format!(
                "sieving to {limit} needs about {need} bytes, cap is {cap_bytes}"
            )));
        }
        let primes = if limit <= PLAIN_SIEVE_LIMIT {
            sieve::plain(limit)
        } else {
            sieve::segmented(limit)
        };
        Ok(Self::from_primes(limit, primes))
    }

    pub(crate) fn from_primes(limit: u64, primes: Vec<u64>) -> Self {
        let mut higher_powers = BTreeMap::new();
        for &p in &primes {
            let Some(mut q) = p.checked_mul(p) else { break };
            if q > limit {
                break;
            }
            while q <= limit {
                higher_powers.insert(q, p);
                match q.checked_mul(p) {
                    Some(next) => q = next,
                    None => break,
                }
            }
        }
        Self {
            limit,
            primes,
            higher_powers,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// The prime `p` when `n = p^m` with `m ≥ 1`.
    pub fn prime_power_base(&self, n: u64) -> Option<u64> {
        if self.is_prime(n) {
            Some(n)
        } else {
            self.higher_powers.get(&n).copied()
        }
    }

    pub fn is_prime_power(&self, n: u64) -> bool {
        self.prime_power_base(n).is_some()
    }

    /// Λ(n) for `1 ≤ n ≤ limit`.
    pub fn von_mangoldt(&self, n: u64) -> Result<f64> {
        if n == 0 || n > self.limit {
            return Err(Error::domain(format!(
                "von Mangoldt argument {n} outside [1, {}]",
                self.limit
            )));
        }
        Ok(self.prime_power_base(n).map_or(0.0, |p| (p as f64).ln()))
    }

    /// Primes in `(lo, hi]`.
    pub fn primes_in(&self, lo: f64, hi: f64) -> &[u64] {
        let start = self.primes.partition_point(|&p| (p as f64) <= lo);
        let end = self.primes.partition_point(|&p| (p as f64) <= hi);
        &self.primes[start..end.max(start)]
    }

    /// All prime powers `n ∈ (lo, hi]` in ascending order as `(n, p)`.
    pub fn prime_powers_in(&self, lo: f64, hi: f64) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self.primes_in(lo, hi).iter().map(|&p| (p, p)).collect();
        out.extend(
            self.higher_powers
                .iter()
                .filter(|(&n, _)| (n as f64) > lo && (n as f64) <= hi)
                .map(|(&n, &p)| (n, p)),
        );
        out.sort_unstable();
        out
    }

    /// Chebyshev's ψ(N) = Σ_{n≤N} Λ(n), compensated.
    pub fn chebyshev_psi(&self, n: u64) -> Result<f64> {
        if n > self.limit {
            return Err(Error::domain(format!("ψ({n}) beyond sieve limit {}", self.limit)));
        }
        let mut acc = crate::numerics::CompensatedSum::new();
        for (_, p) in self.prime_powers_in(0.0, n as f64) {
            acc.add((p as f64).ln());
        }
        Ok(acc.value())
    }
}

fn estimated_bytes(limit: u64) -> u64 {
    if limit < 100 {
        return 1024;
    }
    let x = limit as f64;
    let prime_count = 1.3 * x / x.ln();
    let sieve_bytes = if limit <= PLAIN_SIEVE_LIMIT {
        x
    } else {
        (1u64 << 20) as f64 + x.sqrt()
    };
    (prime_count * 8.0 + sieve_bytes) as u64
}

/// Number of prime factors of `n`, with multiplicity, whose prime lies in
/// `(lo, hi]`.
pub fn omega_in_range(n: u64, lo: f64, hi: f64) -> u32 {
    let mut count = 0;
    let mut rest = n;
    let mut tally = |p: u64, rest: &mut u64| {
        while *rest % p == 0 {
            *rest /= p;
            if (p as f64) > lo && (p as f64) <= hi {
                count += 1;
            }
        }
    };
    if rest > 1 {
        tally(2, &mut rest);
        let mut d = 3;
        while d * d <= rest {
            tally(d, &mut rest);
            d += 2;
        }
    }
    if rest > 1 && (rest as f64) > lo && (rest as f64) <= hi {
        count += 1;
    }
    count
}
