//! Weighted prime sums, their gaps to `log N`, and sweeps over `N`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::info::entropy_decomposition_sum;
use crate::sum::CompensatedSum;
use crate::{Error, LogBase, PrimeTable, Rational, Result};

/// Weight attached to `log p` in the Mertens-type sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum WeightMode {
    /// `1/p`.
    #[default]
    Ideal,
    /// `floor(N/p)/N`, the exact probability that `p` divides `Z ~ U([1, N])`.
    Empirical,
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::Ideal => "ideal",
            WeightMode::Empirical => "empirical",
        })
    }
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ideal" => Ok(WeightMode::Ideal),
            "empirical" => Ok(WeightMode::Empirical),
            other => Err(Error::invalid(format!(
                "unknown weight mode {other:?} (expected ideal or empirical)"
            ))),
        }
    }
}

/// `Σ_{p ≤ N} w(p) log p`.
pub fn mertens_sum(n: u64, table: &PrimeTable, base: LogBase, mode: WeightMode) -> Result<f64> {
    let primes = table.primes_up_to(n)?;
    let mut acc = CompensatedSum::new();
    let nats = match mode {
        WeightMode::Ideal => {
            for &p in primes {
                let p = f64::from(p);
                acc.add(p.ln() / p);
            }
            acc.value()
        }
        WeightMode::Empirical => {
            // Σ floor(N/p) ln p, divided by N once at the end.
            for &p in primes {
                acc.add((n / u64::from(p)) as f64 * f64::from(p).ln());
            }
            acc.value() / n as f64
        }
    };
    Ok(base.from_nats(nats))
}

/// `log N - Σ_{p ≤ N} (log p)/p`.
pub fn chebyshev_gap(n: u64, table: &PrimeTable, base: LogBase) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid(format!("N = {n} must be at least 2")));
    }
    Ok(base.log(n as f64) - mertens_sum(n, table, base, WeightMode::Ideal)?)
}

/// Average information per prime, `N / π(N)`, and its ratio to `log N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfoPerPrime {
    pub value: f64,
    /// `value / ln N`.
    pub ratio: f64,
    /// `value / log2 N`.
    pub ratio_bits: f64,
}

pub fn info_per_prime(n: u64, table: &PrimeTable) -> Result<InfoPerPrime> {
    if n < 2 {
        return Err(Error::invalid(format!("N = {n} must be at least 2")));
    }
    let pi = table.prime_count(n)?;
    let value = n as f64 / pi as f64;
    let ln_n = (n as f64).ln();
    Ok(InfoPerPrime {
        value,
        ratio: value / ln_n,
        ratio_bits: value / LogBase::Two.from_nats(ln_n),
    })
}

/// `1/p`, standing in for the universal a priori probability `m(p) ≈ 2^{-log2 p}`.
///
/// This is a proxy only: the universal distribution is not computable.
pub fn algorithmic_probability_proxy(p: u64) -> Result<Rational> {
    if p < 2 {
        return Err(Error::invalid(format!("p = {p} must be at least 2")));
    }
    Ok(Rational::new(BigInt::one(), BigInt::from(p)))
}

/// One row of a sweep. Logarithmic fields use the sweep's base.
#[derive(Clone, Debug, PartialEq)]
pub struct InfoSummary {
    pub n: u64,
    pub log_n: f64,
    pub pi_n: u64,
    pub theta_n: f64,
    pub mertens_sum: f64,
    /// `log_n - mertens_sum`.
    pub chebyshev_gap: f64,
    pub entropy_decomp_sum: f64,
    pub entropy_decomp_gap: f64,
    /// `N / π(N)`.
    pub info_per_prime: f64,
    pub info_per_prime_ratio_nats: f64,
    pub info_per_prime_ratio_bits: f64,
}

pub fn summarize(
    n: u64,
    table: &PrimeTable,
    base: LogBase,
    mode: WeightMode,
) -> Result<InfoSummary> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "sweep point N = {n} must be at least 2"
        )));
    }
    let log_n = base.log(n as f64);
    let mertens = mertens_sum(n, table, base, mode)?;
    let decomposition = entropy_decomposition_sum(n, table, base)?;
    let ipp = info_per_prime(n, table)?;
    Ok(InfoSummary {
        n,
        log_n,
        pi_n: table.prime_count(n)?,
        theta_n: table.chebyshev_theta(n, base)?,
        mertens_sum: mertens,
        chebyshev_gap: log_n - mertens,
        entropy_decomp_sum: decomposition.sum,
        entropy_decomp_gap: decomposition.gap,
        info_per_prime: ipp.value,
        info_per_prime_ratio_nats: ipp.ratio,
        info_per_prime_ratio_bits: ipp.ratio_bits,
    })
}

/// One [`InfoSummary`] per schedule point, in schedule order.
pub fn run_sweep(
    schedule: &[u64],
    table: &PrimeTable,
    base: LogBase,
    mode: WeightMode,
) -> Result<Vec<InfoSummary>> {
    if schedule.is_empty() {
        return Err(Error::invalid("sweep schedule is empty"));
    }
    if let Some(w) = schedule.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!(
            "sweep schedule must be strictly increasing ({} is followed by {})",
            w[0], w[1]
        )));
    }
    schedule
        .par_iter()
        .map(|&n| summarize(n, table, base, mode))
        .collect()
}

/// Geometrically spaced points from `n_min` to `n_max`.
///
/// Point `i` is `round(n_min · 10^(i / points_per_decade))`; duplicates after
/// rounding are dropped and `n_max` closes the schedule.
pub fn geometric_schedule(n_min: u64, n_max: u64, points_per_decade: u32) -> Result<Vec<u64>> {
    if n_min < 2 {
        return Err(Error::invalid(format!("--min {n_min} must be at least 2")));
    }
    if n_max < n_min {
        return Err(Error::invalid(format!(
            "--max {n_max} is below --min {n_min}"
        )));
    }
    if points_per_decade == 0 {
        return Err(Error::invalid("--points-per-decade must be at least 1"));
    }
    let mut points = Vec::new();
    for i in 0.. {
        let x = (n_min as f64 * 10f64.powf(f64::from(i) / f64::from(points_per_decade))).round();
        if x > n_max as f64 {
            break;
        }
        let x = x as u64;
        if points.last() != Some(&x) {
            points.push(x);
        }
    }
    if points.last() != Some(&n_max) {
        points.push(n_max);
    }
    Ok(points)
}
