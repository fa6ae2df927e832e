//! Segmented, odd-only sieve of Eratosthenes and the [`PrimeTable`] it builds.
//!
//! Segments are sieved independently (in parallel on the current rayon pool)
//! and concatenated in segment order, so the table is identical whatever the
//! thread count.

use rayon::prelude::*;

use crate::sum::CompensatedSum;
use crate::{Error, LogBase, Result};

/// Integers covered by one sieve segment.
pub const DEFAULT_SEGMENT_SPAN: u64 = 1 << 18;

pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

/// Environment variable overriding the memory budget, in bytes.
pub const MEMORY_BUDGET_ENV: &str = "PRIMEINFO_MEMORY_BUDGET";

/// Primes are stored as `u32`, which bounds the sieve limit.
pub const MAX_LIMIT: u64 = u32::MAX as u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    /// Integers per segment; rounded up to an even number.
    pub segment_span: u64,
    /// Hard cap on the estimated peak allocation.
    pub memory_budget: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_span: DEFAULT_SEGMENT_SPAN,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

impl SieveConfig {
    /// Default configuration with the memory budget taken from
    /// [`MEMORY_BUDGET_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = SieveConfig::default();
        if let Ok(raw) = std::env::var(MEMORY_BUDGET_ENV) {
            cfg.memory_budget = raw.trim().parse().map_err(|_| {
                Error::invalid(format!("{MEMORY_BUDGET_ENV}={raw:?} is not a byte count"))
            })?;
        }
        Ok(cfg)
    }

    /// Upper estimate of the peak number of bytes needed to sieve to `limit`.
    pub fn estimated_bytes(&self, limit: u64) -> u64 {
        // Rosser–Schoenfeld: pi(x) < 1.25506 x / ln x for x > 1.
        let pi_bound = if limit < 17 {
            7.0
        } else {
            1.25506 * limit as f64 / (limit as f64).ln()
        };
        // Per-segment vectors and the final table coexist during the merge.
        let table = 2.0 * 4.0 * pi_bound;
        let segments = rayon::current_num_threads() as f64 * (self.span() / 2) as f64;
        let base = 4.0 * (limit as f64).sqrt();
        (table + segments + base).ceil() as u64
    }

    fn span(&self) -> u64 {
        (self.segment_span.max(2) + 1) & !1
    }
}

/// Every prime up to `limit`, in increasing order.
///
/// Immutable once built; share it freely across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
}

impl PrimeTable {
    /// Sieves with the default configuration (and any budget override from the environment).
    pub fn sieve(limit: u64) -> Result<Self> {
        Self::sieve_with(limit, &SieveConfig::from_env()?)
    }

    pub fn sieve_with(limit: u64, cfg: &SieveConfig) -> Result<Self> {
        check_capacity(limit, cfg)?;
        let span = cfg.span();
        let base = simple_sieve(isqrt(limit));
        let segments = (limit + 1).div_ceil(span);

        let chunks: Vec<Vec<u32>> = (0..segments)
            .into_par_iter()
            .map_init(
                || vec![false; (span / 2) as usize],
                |buf, seg| {
                    let lo = seg * span;
                    let hi = (lo + span).min(limit + 1);
                    sieve_segment(lo, hi, &base, buf)
                },
            )
            .collect();

        let total = chunks.iter().map(Vec::len).sum::<usize>() + usize::from(limit >= 2);
        let mut primes = Vec::with_capacity(total);
        if limit >= 2 {
            primes.push(2);
        }
        for chunk in chunks {
            primes.extend_from_slice(&chunk);
        }
        Ok(PrimeTable { limit, primes })
    }

    /// Single-pass odd-only sieve over the whole range, without segmentation.
    pub fn sieve_unsegmented(limit: u64, cfg: &SieveConfig) -> Result<Self> {
        check_capacity(limit, cfg)?;
        Ok(PrimeTable {
            limit,
            primes: simple_sieve(limit),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.primes
    }

    /// Primes in increasing order, each exactly once.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + ExactSizeIterator + '_ {
        self.primes.iter().map(|&p| u64::from(p))
    }

    /// The primes `p <= n`.
    pub fn primes_up_to(&self, n: u64) -> Result<&[u32]> {
        self.check(n)?;
        let end = self.primes.partition_point(|&p| u64::from(p) <= n);
        Ok(&self.primes[..end])
    }

    /// π(n).
    pub fn prime_count(&self, n: u64) -> Result<u64> {
        Ok(self.primes_up_to(n)?.len() as u64)
    }

    /// θ(n) = Σ_{p ≤ n} log p, compensated.
    pub fn chebyshev_theta(&self, n: u64, base: LogBase) -> Result<f64> {
        let mut acc = CompensatedSum::new();
        for &p in self.primes_up_to(n)? {
            acc.add(f64::from(p).ln());
        }
        Ok(base.from_nats(acc.value()))
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        self.check(n)?;
        Ok(u32::try_from(n).is_ok_and(|n| self.primes.binary_search(&n).is_ok()))
    }

    fn check(&self, n: u64) -> Result<()> {
        if n > self.limit {
            return Err(Error::OutOfRange {
                what: "N",
                value: n,
                max: self.limit,
            });
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a PrimeTable {
    type Item = u64;
    type IntoIter = std::iter::Map<std::slice::Iter<'a, u32>, fn(&u32) -> u64>;

    fn into_iter(self) -> Self::IntoIter {
        self.primes.iter().map(|&p| u64::from(p))
    }
}

/// Convenience wrapper for [`PrimeTable::sieve`].
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    PrimeTable::sieve(limit)
}

fn check_capacity(limit: u64, cfg: &SieveConfig) -> Result<()> {
    if limit > MAX_LIMIT {
        return Err(Error::LimitTooLarge {
            limit,
            max: MAX_LIMIT,
        });
    }
    let required = cfg.estimated_bytes(limit);
    if required > cfg.memory_budget {
        return Err(Error::Capacity {
            limit,
            required,
            budget: cfg.memory_budget,
        });
    }
    Ok(())
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Odd-only sieve of the whole range `[0, limit]`; index `i` stands for `2i + 1`.
fn simple_sieve(limit: u64) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let len = (limit as usize - 1) / 2 + 1;
    let mut composite = vec![false; len];
    composite[0] = true; // 1
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < len {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = vec![2u32];
    primes.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| (2 * i + 1) as u32),
    );
    primes
}

/// Odd primes in `[lo, hi)`, where `lo` is even. Slot `i` of `buf` is `lo + 2i + 1`.
fn sieve_segment(lo: u64, hi: u64, base: &[u32], buf: &mut [bool]) -> Vec<u32> {
    let slots = ((hi - lo) / 2) as usize;
    let buf = &mut buf[..slots];
    buf.fill(false);
    for &q in base.iter().skip(1) {
        let q = u64::from(q);
        if q * q >= hi {
            break;
        }
        let mut m = (lo + 1).div_ceil(q) * q;
        if m % 2 == 0 {
            m += q;
        }
        let start = m.max(q * q);
        let mut j = ((start - lo - 1) / 2) as usize;
        let step = q as usize;
        while j < slots {
            buf[j] = true;
            j += step;
        }
    }
    if lo == 0 && slots > 0 {
        buf[0] = true; // 1
    }
    buf.iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| (lo + 2 * i as u64 + 1) as u32)
        .collect()
}
