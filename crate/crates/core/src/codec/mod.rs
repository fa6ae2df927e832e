//! A uniquely decodable code for the integers `1..=N` built on their prime
//! factorizations.
//!
//! An integer is sent as its exponent vector. Encoder and decoder walk the
//! primes in increasing order with a running product `R` (initially 1) and
//! visit `p` only while `p · R <= N`; after the exponent `e` of `p` is coded,
//! `R` becomes `R · p^e`. Termination is therefore implied by `N` and the
//! decoded history, and no length header is needed.
//!
//! Each visited exponent is coded under a geometric model whose mean is the
//! exact `E[X_p]` at this `N`. [`CodecModel::ideal_codelength`] is the model
//! cross-entropy along the same walk; the arithmetic coder comes within a few
//! bits of it.

mod arith;
mod bits;
mod model;

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

pub use bits::BitString;

use crate::sampling::UniformSampler;
use crate::sum::{compensated_sum, pairwise_sum};
use crate::{Error, LogBase, PrimeTable, Result};
use arith::{Decoder, Encoder};
use model::GeometricModel;

/// Sparse prime factorization: `(prime, exponent)` pairs with strictly
/// increasing primes and exponents `>= 1`. The empty vector is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    entries: Vec<(u64, u32)>,
}

impl ExponentVector {
    /// Validates ordering and exponents; primality of the bases is not checked.
    pub fn new(entries: Vec<(u64, u32)>) -> Result<Self> {
        if let Some(&(p, _)) = entries.iter().find(|&&(p, _)| p < 2) {
            return Err(Error::invalid(format!("{p} cannot be a prime factor")));
        }
        if let Some(&(p, _)) = entries.iter().find(|&&(_, e)| e == 0) {
            return Err(Error::invalid(format!("zero exponent stored for {p}")));
        }
        if let Some(w) = entries.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::invalid(format!(
                "primes must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
        Ok(ExponentVector { entries })
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.entries
            .binary_search_by_key(&p, |&(q, _)| q)
            .map_or(0, |i| self.entries[i].1)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes `z` by trial division over the table.
///
/// Needs `table.limit() >= z` or `table.limit()^2 >= z`, so that a cofactor
/// left after dividing out every tabulated prime `<= sqrt(z)` is itself prime.
pub fn factorize(z: u64, table: &PrimeTable) -> Result<ExponentVector> {
    if z == 0 {
        return Err(Error::invalid("cannot factorize 0"));
    }
    let limit = table.limit();
    if limit < z && u128::from(limit) * u128::from(limit) < u128::from(z) {
        return Err(Error::OutOfRange {
            what: "Z",
            value: z,
            max: limit.saturating_mul(limit),
        });
    }
    let mut entries = Vec::new();
    let mut rest = z;
    for p in table.iter() {
        if p.saturating_mul(p) > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            entries.push((p, e));
        }
    }
    if rest > 1 {
        entries.push((rest, 1));
    }
    Ok(ExponentVector { entries })
}

/// `Π p^e`, in arbitrary precision.
pub fn compose(v: &ExponentVector) -> BigUint {
    v.entries
        .iter()
        .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
}

/// Per-`N` state shared by encoding, decoding and ideal codelengths.
#[derive(Clone, Debug)]
pub struct CodecModel<'t> {
    n: u64,
    table: &'t PrimeTable,
    primes: &'t [u32],
    /// `Σ_k floor(N / p^k)` per prime, i.e. `N · E[X_p]`.
    legendre: Vec<u64>,
}

/// A visited prime and the exponent coded for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub prime: u64,
    pub exponent: u32,
}

impl<'t> CodecModel<'t> {
    pub fn new(n: u64, table: &'t PrimeTable) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("N must be at least 1"));
        }
        let primes = table.primes_up_to(n)?;
        let legendre = primes
            .iter()
            .map(|&p| {
                let p = u64::from(p);
                let mut total = 0;
                let mut q = n / p;
                while q > 0 {
                    total += q;
                    q /= p;
                }
                total
            })
            .collect();
        Ok(CodecModel {
            n,
            table,
            primes,
            legendre,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    fn check(&self, z: u64) -> Result<()> {
        if z == 0 || z > self.n {
            return Err(Error::OutOfRange {
                what: "Z",
                value: z,
                max: self.n,
            });
        }
        Ok(())
    }

    fn model(&self, index: usize) -> GeometricModel {
        GeometricModel::new(self.legendre[index], self.n)
    }

    /// The primes the code visits for `z`, with their exponents (zeros included).
    pub fn trace(&self, z: u64) -> Result<Vec<Visit>> {
        Ok(self.walk(z)?.into_iter().map(|(_, v)| v).collect())
    }

    fn walk(&self, z: u64) -> Result<Vec<(usize, Visit)>> {
        self.check(z)?;
        let factors = factorize(z, self.table)?;
        let mut factors = factors.entries().iter().peekable();
        let mut visits = Vec::new();
        let mut running = 1u64;
        for (i, &p) in self.primes.iter().enumerate() {
            let p = u64::from(p);
            if p > self.n / running {
                break;
            }
            let exponent = match factors.peek() {
                Some(&&(q, e)) if q == p => {
                    factors.next();
                    e
                }
                _ => 0,
            };
            running *= p.pow(exponent);
            visits.push((i, Visit { prime: p, exponent }));
        }
        debug_assert_eq!(running, z);
        Ok(visits)
    }

    /// `-Σ log Q_p(x_p)` over the visited primes.
    pub fn ideal_codelength(&self, z: u64, base: LogBase) -> Result<f64> {
        let nf = self.n as f64;
        let nats = compensated_sum(self.walk(z)?.into_iter().map(|(i, v)| {
            let mu = self.legendre[i] as f64 / nf;
            let l1 = mu.ln_1p();
            // -ln[(1 - q) q^e] with q = mu / (1 + mu)
            l1 - f64::from(v.exponent) * (mu.ln() - l1)
        }));
        Ok(base.from_nats(nats))
    }

    pub fn encode(&self, z: u64) -> Result<BitString> {
        let mut enc = Encoder::new();
        for (i, v) in self.walk(z)? {
            self.model(i).encode(&mut enc, u64::from(v.exponent));
        }
        Ok(enc.finish())
    }

    pub fn decode(&self, bytes: &[u8]) -> Result<u64> {
        self.decode_traced(bytes).map(|(z, _)| z)
    }

    /// Decodes and also returns the primes visited, for schedule checks.
    pub fn decode_traced(&self, bytes: &[u8]) -> Result<(u64, Vec<Visit>)> {
        let mut dec = Decoder::new(bytes);
        let mut visits = Vec::new();
        let mut running = 1u64;
        for (i, &p) in self.primes.iter().enumerate() {
            let p = u64::from(p);
            if p > self.n / running {
                break;
            }
            let e = self.model(i).decode(&mut dec)?;
            for _ in 0..e {
                running = running
                    .checked_mul(p)
                    .filter(|&r| r <= self.n)
                    .ok_or_else(|| {
                        Error::Corrupt(format!(
                            "exponent {e} of {p} drives the product past N = {}",
                            self.n
                        ))
                    })?;
            }
            visits.push(Visit {
                prime: p,
                exponent: e as u32,
            });
        }
        Ok((running, visits))
    }
}

/// `ideal_codelength` without a prebuilt model.
pub fn ideal_codelength(z: u64, n: u64, table: &PrimeTable, base: LogBase) -> Result<f64> {
    let model = CodecModel::new(n, table)?;
    model.check(z)?;
    model.ideal_codelength(z, base)
}

pub fn encode(z: u64, n: u64, table: &PrimeTable) -> Result<BitString> {
    let model = CodecModel::new(n, table)?;
    model.check(z)?;
    model.encode(z)
}

pub fn decode(bytes: &[u8], n: u64, table: &PrimeTable) -> Result<u64> {
    CodecModel::new(n, table)?.decode(bytes)
}

/// Largest `N` accepted by exhaustive averaging.
pub const EXHAUSTIVE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodecMode {
    /// Every `Z` in `[1, N]`.
    Exhaustive,
    /// `samples` seeded uniform draws from `[1, N]`.
    MonteCarlo { seed: u64, samples: u64 },
}

impl fmt::Display for CodecMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecMode::Exhaustive => f.write_str("exhaustive"),
            CodecMode::MonteCarlo { .. } => f.write_str("monte-carlo"),
        }
    }
}

/// Average codelengths of the factorization code against the `log2 N` floor.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeLengthReport {
    pub n: u64,
    pub message_count: u64,
    pub mean_actual_bits: f64,
    pub mean_ideal_bits: f64,
    /// `log2 N`, the entropy of the uniform source.
    pub entropy_floor_bits: f64,
    pub redundancy_ideal: f64,
    pub redundancy_actual: f64,
    /// Largest per-message `actual - ideal`.
    pub max_excess_bits: f64,
    pub mode: CodecMode,
}

pub fn average_codelength(n: u64, table: &PrimeTable, mode: CodecMode) -> Result<CodeLengthReport> {
    let model = CodecModel::new(n, table)?;
    let messages: Vec<u64> = match mode {
        CodecMode::Exhaustive => {
            if n > EXHAUSTIVE_BUDGET {
                return Err(Error::Budget {
                    what: "exhaustive N",
                    value: n,
                    budget: EXHAUSTIVE_BUDGET,
                });
            }
            (1..=n).collect()
        }
        CodecMode::MonteCarlo { seed, samples } => {
            if samples == 0 {
                return Err(Error::invalid("sample count must be at least 1"));
            }
            UniformSampler::new(n, seed)
                .take(samples as usize)
                .collect()
        }
    };
    let lengths: Vec<(f64, f64)> = messages
        .par_iter()
        .map(|&z| {
            let actual = model.encode(z)?.len() as f64;
            let ideal = model.ideal_codelength(z, LogBase::Two)?;
            Ok((actual, ideal))
        })
        .collect::<Result<_>>()?;
    let count = lengths.len() as f64;
    let actual: Vec<f64> = lengths.iter().map(|l| l.0).collect();
    let ideal: Vec<f64> = lengths.iter().map(|l| l.1).collect();
    let mean_actual_bits = pairwise_sum(&actual) / count;
    let mean_ideal_bits = pairwise_sum(&ideal) / count;
    let entropy_floor_bits = (n as f64).log2();
    let max_excess_bits = lengths
        .iter()
        .map(|(a, i)| a - i)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(CodeLengthReport {
        n,
        message_count: messages.len() as u64,
        mean_actual_bits,
        mean_ideal_bits,
        entropy_floor_bits,
        redundancy_ideal: mean_ideal_bits - entropy_floor_bits,
        redundancy_actual: mean_actual_bits - entropy_floor_bits,
        max_excess_bits,
        mode,
    })
}
