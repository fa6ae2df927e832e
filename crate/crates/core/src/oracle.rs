//! Brute-force cross-check of the valuation laws and Legendre's identity.
//!
//! Every integer up to `n_max` is factorized by plain trial division (no
//! prime table involved) and the tallies are compared with the exact
//! distributions from [`ValuationDist`].

use std::collections::BTreeMap;
use std::fmt;

use crate::sum::CompensatedSum;
use crate::{Error, PrimeTable, Result, ValuationDist};

pub const ORACLE_BUDGET: u64 = 10_000;

const LEGENDRE_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub n_max: u64,
    pub primes_checked: usize,
    /// `Σ_{Z ≤ N} ln Z`.
    pub log_factorial: f64,
    /// `Σ_p (Σ_k floor(N/p^k)) ln p`.
    pub legendre_sum: f64,
    pub legendre_rel_err: f64,
    /// First mismatch found, if any.
    pub discrepancy: Option<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.discrepancy.is_none()
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.discrepancy {
            None => write!(
                f,
                "PASS oracle n_max={} primes={} legendre_rel_err={:.3e}",
                self.n_max, self.primes_checked, self.legendre_rel_err
            ),
            Some(d) => write!(f, "FAIL oracle n_max={}: {d}", self.n_max),
        }
    }
}

fn trial_factor(mut z: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= z {
        let mut e = 0;
        while z.is_multiple_of(d) {
            z /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if z > 1 {
        out.push((z, 1));
    }
    out
}

pub fn oracle_check(n_max: u64, table: &PrimeTable) -> Result<OracleReport> {
    if n_max > ORACLE_BUDGET {
        return Err(Error::Budget {
            what: "oracle n_max",
            value: n_max,
            budget: ORACLE_BUDGET,
        });
    }
    if n_max == 0 {
        return Err(Error::invalid("oracle n_max must be at least 1"));
    }
    let primes = table.primes_up_to(n_max)?;

    // exponent_counts[p][k] = #{Z : v_p(Z) = k}, for k >= 1
    let mut exponent_counts: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let mut log_factorial = CompensatedSum::new();
    for z in 1..=n_max {
        log_factorial.add((z as f64).ln());
        for (p, e) in trial_factor(z) {
            let counts = exponent_counts.entry(p).or_default();
            if counts.len() <= e as usize {
                counts.resize(e as usize + 1, 0);
            }
            counts[e as usize] += 1;
        }
    }

    let mut discrepancy = None;
    let found: Vec<u64> = exponent_counts.keys().copied().collect();
    let tabulated: Vec<u64> = primes.iter().map(|&p| u64::from(p)).collect();
    if found != tabulated {
        discrepancy = Some(format!(
            "prime divisors seen by trial division ({}) differ from the table ({})",
            found.len(),
            tabulated.len()
        ));
    }

    let mut legendre = CompensatedSum::new();
    for &p in &tabulated {
        let dist = ValuationDist::exact(p, n_max)?;
        legendre.add(dist.legendre_count() as f64 * (p as f64).ln());
        if discrepancy.is_some() {
            continue;
        }
        let mut brute = exponent_counts.get(&p).cloned().unwrap_or_default();
        let divisible: u64 = brute.iter().sum();
        if brute.is_empty() {
            brute.push(0);
        }
        brute[0] = n_max - divisible;
        let exact: Vec<u64> = dist.counts().collect();
        if brute != exact {
            discrepancy = Some(format!(
                "p={p}: brute-force exponent counts {brute:?} != N*pmf {exact:?}"
            ));
        } else if divisible != n_max / p {
            discrepancy = Some(format!(
                "p={p}: {divisible} multiples counted, floor(N/p) = {}",
                n_max / p
            ));
        }
    }

    let log_factorial = log_factorial.value();
    let legendre_sum = legendre.value();
    let legendre_rel_err = if log_factorial == 0.0 {
        legendre_sum.abs()
    } else {
        ((log_factorial - legendre_sum) / log_factorial).abs()
    };
    if discrepancy.is_none() && legendre_rel_err > LEGENDRE_TOLERANCE {
        discrepancy = Some(format!(
            "Legendre identity off by {legendre_rel_err:.3e} relative (ln N! = {log_factorial}, valuation sum = {legendre_sum})"
        ));
    }
    Ok(OracleReport {
        n_max,
        primes_checked: tabulated.len(),
        log_factorial,
        legendre_sum,
        legendre_rel_err,
        discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_factor_small() {
        assert_eq!(trial_factor(1), vec![]);
        assert_eq!(trial_factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(trial_factor(97), vec![(97, 1)]);
    }

    #[test]
    fn vacuous_and_small() {
        let t = PrimeTable::sieve(10_000).unwrap();
        let r = oracle_check(1, &t).unwrap();
        assert!(r.passed());
        assert_eq!(r.primes_checked, 0);
        let r = oracle_check(10, &t).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(
            ValuationDist::exact(3, 10)
                .unwrap()
                .counts()
                .collect::<Vec<_>>(),
            vec![7, 2, 1]
        );
    }

    #[test]
    fn budget_and_range() {
        let t = PrimeTable::sieve(100).unwrap();
        assert!(matches!(
            oracle_check(10_001, &t),
            Err(Error::Budget { .. })
        ));
        assert!(oracle_check(101, &t).is_err());
        assert!(oracle_check(0, &t).is_err());
    }

    #[test]
    fn detects_a_broken_table() {
        // A table that is missing primes makes the oracle fail rather than pass.
        let cfg = crate::SieveConfig::default();
        let full = PrimeTable::sieve_with(50, &cfg).unwrap();
        let r = oracle_check(50, &full).unwrap();
        assert!(r.passed());
        let short = PrimeTable::sieve_with(40, &cfg).unwrap();
        assert!(oracle_check(50, &short).is_err());
    }
}
