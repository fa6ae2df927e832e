//! Exact law of the p-adic valuation of a uniform random integer.
//!
//! For `Z` uniform on `[1, N]` and a prime `p`, `P(X_p >= k) = floor(N / p^k) / N`.
//! A [`ValuationDist`] keeps the integer numerators `floor(N / p^k)` over the
//! common denominator `N`, which makes every probability an exact rational.

use num_bigint::BigInt;
use num_traits::One;

use crate::sampling::UniformSampler;
use crate::{Error, LogBase, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationDist {
    p: u64,
    n: u64,
    /// `floor(n / p^k)` for `k = 0..=kmax`; entry 0 is `n`.
    tail_counts: Vec<u64>,
}

impl ValuationDist {
    /// Distribution of the exponent of `p` in a uniform integer on `[1, n]`.
    ///
    /// Primality of `p` is the caller's responsibility.
    pub fn exact(p: u64, n: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::invalid(format!(
                "valuation base p = {p} must be at least 2"
            )));
        }
        if n == 0 {
            return Err(Error::invalid("N must be at least 1"));
        }
        // p^k <= n is decided by checked repeated multiplication.
        let tail_counts = TailCounts::new(p, n).collect();
        Ok(ValuationDist { p, n, tail_counts })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Largest `k` with `p^k <= N`.
    pub fn kmax(&self) -> usize {
        self.tail_counts.len() - 1
    }

    /// `N · P(X_p >= k) = floor(N / p^k)`.
    pub fn tail_count(&self, k: usize) -> u64 {
        self.tail_counts.get(k).copied().unwrap_or(0)
    }

    /// `N · P(X_p = k)`: how many integers in `[1, N]` have valuation exactly `k`.
    pub fn count(&self, k: usize) -> u64 {
        self.tail_count(k) - self.tail_count(k + 1)
    }

    /// `N · pmf[k]` for `k = 0..=kmax`.
    pub fn counts(&self) -> impl Iterator<Item = u64> + '_ {
        (0..=self.kmax()).map(|k| self.count(k))
    }

    pub fn tail(&self, k: usize) -> Rational {
        ratio(self.tail_count(k), self.n)
    }

    pub fn pmf(&self, k: usize) -> Rational {
        ratio(self.count(k), self.n)
    }

    pub fn pmf_vec(&self) -> Vec<Rational> {
        (0..=self.kmax()).map(|k| self.pmf(k)).collect()
    }

    /// `Σ_{k >= 1} floor(N / p^k)`, the exponent of `p` in `N!`.
    pub fn legendre_count(&self) -> u64 {
        self.tail_counts[1..].iter().sum()
    }

    /// `E[X_p] = Σ_{k >= 1} P(X_p >= k)`, exactly.
    pub fn mean(&self) -> Rational {
        ratio(self.legendre_count(), self.n)
    }

    pub fn mean_f64(&self) -> f64 {
        self.legendre_count() as f64 / self.n as f64
    }

    /// Whether the exact counts sum to `N`.
    pub fn is_normalized(&self) -> bool {
        self.counts().map(u128::from).sum::<u128>() == u128::from(self.n)
    }

    /// Shannon entropy of the distribution.
    pub fn entropy(&self, base: LogBase) -> f64 {
        base.from_nats(self.entropy_nats())
    }

    fn entropy_nats(&self) -> f64 {
        counts_entropy_nats(self.n, self.tail_counts.iter().copied())
    }
}

/// Entropy in nats of `X_p` for `Z ~ U([1, n])`, without allocating.
pub(crate) fn valuation_entropy_nats(p: u64, n: u64) -> f64 {
    counts_entropy_nats(n, TailCounts::new(p, n))
}

/// `floor(n / p^k)` for `k = 0, 1, ...` while `p^k <= n`.
struct TailCounts {
    p: u64,
    n: u64,
    power: Option<u64>,
}

impl TailCounts {
    fn new(p: u64, n: u64) -> Self {
        TailCounts {
            p,
            n,
            power: Some(1),
        }
    }
}

impl Iterator for TailCounts {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let power = self.power.filter(|&pw| pw <= self.n)?;
        self.power = power.checked_mul(self.p);
        Some(self.n / power)
    }
}

/// `-Σ (c_k/n) ln(c_k/n)` from the tail counts `floor(n/p^k)`, `k = 0, 1, ...`.
fn counts_entropy_nats(n: u64, tails: impl Iterator<Item = u64>) -> f64 {
    let nf = n as f64;
    let mut tails = tails.peekable();
    let mut h = 0.0;
    let mut k = 0;
    while let Some(t) = tails.next() {
        let next = tails.peek().copied().unwrap_or(0);
        let c = t - next;
        if c > 0 {
            let prob = c as f64 / nf;
            // P(X=0) is close to 1 for large p; log1p of the complement keeps precision.
            let ln_prob = if k == 0 {
                (-(next as f64) / nf).ln_1p()
            } else {
                prob.ln()
            };
            h -= prob * ln_prob;
        }
        k += 1;
    }
    h
}

fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Wrapper for [`ValuationDist::exact`].
pub fn exact_valuation_dist(p: u64, n: u64) -> Result<ValuationDist> {
    ValuationDist::exact(p, n)
}

pub fn mean_valuation(dist: &ValuationDist) -> Rational {
    dist.mean()
}

/// `P(p | Z)` and its complement, which sum to exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub divisible: Rational,
    pub not_divisible: Rational,
}

pub fn divisibility_prob(p: u64, n: u64) -> Result<Divisibility> {
    if p < 2 {
        return Err(Error::invalid(format!("p = {p} must be at least 2")));
    }
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let divisible = ratio(n / p, n);
    let not_divisible = Rational::one() - &divisible;
    Ok(Divisibility {
        divisible,
        not_divisible,
    })
}

/// Empirical exponent counts from seeded Monte Carlo draws of `Z ~ U([1, N])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationCounts {
    pub n: u64,
    pub sample_count: u64,
    pub seed: u64,
    /// One entry per requested prime, in request order. `counts[k]` is the
    /// number of draws whose exponent of `prime` was exactly `k`.
    pub per_prime: Vec<PrimeCounts>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCounts {
    pub prime: u64,
    pub counts: Vec<u64>,
}

impl PrimeCounts {
    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    /// Draws with exponent at least `k`.
    pub fn at_least(&self, k: usize) -> u64 {
        self.counts.iter().skip(k).sum()
    }
}

pub fn sample_uniform_valuations(
    n: u64,
    primes: &[u64],
    sample_count: u64,
    seed: u64,
) -> Result<ValuationCounts> {
    if sample_count == 0 {
        return Err(Error::invalid("sample count must be at least 1"));
    }
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    if let Some(&p) = primes.iter().find(|&&p| p < 2) {
        return Err(Error::invalid(format!("p = {p} must be at least 2")));
    }
    let mut per_prime: Vec<PrimeCounts> = primes
        .iter()
        .map(|&prime| PrimeCounts {
            prime,
            counts: vec![0],
        })
        .collect();
    for z in UniformSampler::new(n, seed).take(sample_count as usize) {
        for pc in &mut per_prime {
            let k = valuation(z, pc.prime) as usize;
            if pc.counts.len() <= k {
                pc.counts.resize(k + 1, 0);
            }
            pc.counts[k] += 1;
        }
    }
    Ok(ValuationCounts {
        n,
        sample_count,
        seed,
        per_prime,
    })
}

/// Exponent of `p` in `z >= 1`.
pub fn valuation(mut z: u64, p: u64) -> u32 {
    debug_assert!(z >= 1 && p >= 2);
    let mut k = 0;
    while z.is_multiple_of(p) {
        z /= p;
        k += 1;
    }
    k
}
