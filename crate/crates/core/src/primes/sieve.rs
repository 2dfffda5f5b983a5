/// Sieve of Eratosthenes over odd numbers.
pub(super) fn plain(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    // index i represents 2i + 1
    let mut composite = vec![false; n / 2 + 1];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < composite.len() {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = vec![2];
    primes.extend(
        (1..composite.len())
            .filter(|&i| !composite[i] && 2 * i + 1 <= n)
            .map(|i| (2 * i + 1) as u64),
    );
    primes
}

const SEGMENT: u64 = 1 << 20;

/// Segmented sieve: memory is `O(√limit + segment)` besides the output.
pub(super) fn segmented(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = plain(root);
    let mut primes: Vec<u64> = base.iter().copied().filter(|&p| p <= limit).collect();
    let mut lo = root + 1;
    let mut flags = vec![false; SEGMENT as usize];
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        flags[..len].fill(false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut m = (lo.div_ceil(p) * p).max(p * p);
            while m <= hi {
                flags[(m - lo) as usize] = true;
                m += p;
            }
        }
        primes.extend((0..len).filter(|&i| !flags[i]).map(|i| lo + i as u64));
        lo = hi + 1;
    }
    primes
}
