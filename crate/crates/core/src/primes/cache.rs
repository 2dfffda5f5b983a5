//! Binary cache for sieved tables.
//!
//! Layout: 8 magic bytes, `limit` and prime count as little-endian `u64`,
//! LEB128-encoded gaps between consecutive primes, then the SHA-256 digest of
//! everything before it.

use std::fs;
use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::PrimeTable;
use crate::{Error, Result};

const MAGIC: &[u8; 8] = b"ZCLTPRM1";

fn encode(table: &PrimeTable) -> Vec<u8> {
    let mut buf = Vec::with_capacity(24 + table.len() * 2 + 32);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&table.limit().to_le_bytes());
    buf.extend_from_slice(&(table.len() as u64).to_le_bytes());
    let mut prev = 0u64;
    for &p in table.primes() {
        let mut gap = p - prev;
        prev = p;
        loop {
            let byte = (gap & 0x7f) as u8;
            gap >>= 7;
            if gap == 0 {
                buf.push(byte);
                break;
            }
            buf.push(byte | 0x80);
        }
    }
    let digest = Sha256::digest(&buf);
    buf.extend_from_slice(&digest);
    buf
}

fn decode(bytes: &[u8], expected_limit: u64) -> Result<PrimeTable> {
    let corrupt = |what: &str| Error::Cache(what.to_string());
    if bytes.len() < 24 + 32 || &bytes[..8] != MAGIC {
        return Err(corrupt("bad magic or truncated header"));
    }
    let (body, digest) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body).as_slice() != digest {
        return Err(corrupt("checksum mismatch"));
    }
    let limit = u64::from_le_bytes(body[8..16].try_into().unwrap());
    let count = u64::from_le_bytes(body[16..24].try_into().unwrap()) as usize;
    if limit != expected_limit {
        return Err(Error::Cache(format!(
            "cache holds primes up to {limit}, expected {expected_limit}"
        )));
    }
    let mut primes = Vec::with_capacity(count);
    let mut prev = 0u64;
    let mut gap = 0u64;
    let mut shift = 0;
    for &b in &body[24..] {
        if shift >= 64 {
            return Err(corrupt("overlong gap encoding"));
        }
        gap |= u64::from(b & 0x7f) << shift;
        if b & 0x80 == 0 {
            prev += gap;
            primes.push(prev);
            gap = 0;
            shift = 0;
        } else {
            shift += 7;
        }
    }
    if shift != 0 || primes.len() != count || primes.last().is_some_and(|&p| p > limit) {
        return Err(corrupt("prime list inconsistent with header"));
    }
    Ok(PrimeTable::from_primes(limit, primes))
}

/// Writes `table` to `path` (via a temporary file and rename).
pub fn save_cache(table: &PrimeTable, path: &Path) -> Result<()> {
    let bytes = encode(table);
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("primes")
    ));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(&bytes)?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Loads a cached table, checking the digest and that it was sieved to
/// `expected_limit`.
pub fn load_cache(path: &Path, expected_limit: u64) -> Result<PrimeTable> {
    decode(&fs::read(path)?, expected_limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve_primes;

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.bin");
        let t = sieve_primes(200_000).unwrap();
        save_cache(&t, &path).unwrap();
        assert_eq!(load_cache(&path, 200_000).unwrap(), t);
    }

    #[test]
    fn detects_wrong_limit_and_corruption() {
        let t = sieve_primes(1000).unwrap();
        let mut bytes = encode(&t);
        assert!(matches!(decode(&bytes, 999), Err(Error::Cache(_))));
        let mid = bytes.len() / 2;
        bytes[mid] ^= 1;
        assert!(matches!(decode(&bytes, 1000), Err(Error::Cache(_))));
        assert!(matches!(decode(&bytes[..10], 1000), Err(Error::Cache(_))));
    }

    #[test]
    fn empty_table_roundtrips() {
        let t = sieve_primes(1).unwrap();
        assert_eq!(decode(&encode(&t), 1).unwrap(), t);
    }
}
