//! Entropy, KL divergence and the maximum-entropy geometric comparator.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::sum::{compensated_sum, CompensatedSum};
use crate::valuation::{valuation_entropy_nats, ValuationDist};
use crate::{Error, LogBase, PrimeTable, Rational, Result};

/// Geometric law on `{0, 1, 2, ...}` with pmf `(1 - q) q^k`, `0 <= q < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometric {
    q: Rational,
    mean: Rational,
}

impl Geometric {
    pub fn new(q: Rational) -> Result<Self> {
        if q.is_negative() || q >= Rational::one() {
            return Err(Error::invalid(format!(
                "geometric parameter q = {q} must lie in [0, 1)"
            )));
        }
        let mean = &q / (Rational::one() - &q);
        Ok(Geometric { q, mean })
    }

    /// The maximum-entropy law on the nonnegative integers with the given
    /// mean: `q = mean / (1 + mean)`.
    pub fn from_mean(mean: &Rational) -> Result<Self> {
        if mean.is_negative() {
            return Err(Error::invalid(format!("mean {mean} must be nonnegative")));
        }
        let q = mean / (Rational::one() + mean);
        Ok(Geometric {
            q,
            mean: mean.clone(),
        })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn mean(&self) -> &Rational {
        &self.mean
    }

    pub fn pmf(&self, k: u32) -> Rational {
        (Rational::one() - &self.q) * num_traits::pow(self.q.clone(), k as usize)
    }

    /// `ln Q(k)`, or `-inf` where the pmf vanishes.
    pub fn ln_pmf(&self, k: u64) -> f64 {
        let mu = to_f64(&self.mean);
        if mu == 0.0 {
            return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
        }
        // ln(1 - q) = -ln(1 + mu), ln q = ln mu - ln(1 + mu)
        let l1 = mu.ln_1p();
        if k == 0 {
            -l1
        } else {
            -l1 + k as f64 * (mu.ln() - l1)
        }
    }

    /// Closed form `(1 + mu) ln(1 + mu) - mu ln mu`, in nats.
    fn entropy_nats(&self) -> f64 {
        let mu = to_f64(&self.mean);
        if mu == 0.0 {
            return 0.0;
        }
        (1.0 + mu) * mu.ln_1p() - mu * mu.ln()
    }
}

/// A distribution on the nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscreteDist {
    /// `pmf[k] = P(k)` for `k < pmf.len()`, zero beyond.
    Finite(Vec<Rational>),
    Geometric(Geometric),
}

impl DiscreteDist {
    /// Checks that the entries are nonnegative and sum to exactly one.
    pub fn finite(pmf: Vec<Rational>) -> Result<Self> {
        if pmf.iter().any(Signed::is_negative) {
            return Err(Error::invalid("probabilities must be nonnegative"));
        }
        let total: Rational = pmf.iter().sum();
        if !total.is_one() {
            return Err(Error::invalid(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(DiscreteDist::Finite(pmf))
    }
}

impl From<&ValuationDist> for DiscreteDist {
    fn from(d: &ValuationDist) -> Self {
        DiscreteDist::Finite(d.pmf_vec())
    }
}

impl From<Geometric> for DiscreteDist {
    fn from(g: Geometric) -> Self {
        DiscreteDist::Geometric(g)
    }
}

/// Shannon entropy; zero-probability terms contribute nothing.
pub fn entropy(dist: &DiscreteDist, base: LogBase) -> f64 {
    let nats = match dist {
        DiscreteDist::Finite(pmf) => compensated_sum(
            pmf.iter()
                .filter(|p| !p.is_zero())
                .map(|p| -to_f64(p) * ln_ratio(p)),
        ),
        DiscreteDist::Geometric(g) => g.entropy_nats(),
    };
    base.from_nats(nats)
}

/// Moment-matched geometric comparator.
pub fn geometric_from_mean(mean: &Rational) -> Result<DiscreteDist> {
    Geometric::from_mean(mean).map(DiscreteDist::Geometric)
}

/// `D(exact ‖ model) = Σ P(k) log(P(k) / Q(k))`.
pub fn kl_divergence(exact: &DiscreteDist, model: &Geometric, base: LogBase) -> Result<f64> {
    let nats = match exact {
        DiscreteDist::Finite(pmf) => {
            let mut acc = CompensatedSum::new();
            for (k, p) in pmf.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let lq = model.ln_pmf(k as u64);
                if lq == f64::NEG_INFINITY {
                    return Err(model_excludes(k));
                }
                acc.add(to_f64(p) * (ln_ratio(p) - lq));
            }
            // Rounding can leave a near-identical pair marginally below zero.
            acc.value().max(0.0)
        }
        DiscreteDist::Geometric(g) => geometric_kl_nats(g, model)?,
    };
    Ok(base.from_nats(nats))
}

/// `-Σ P(k) log Q(k)`.
pub fn cross_entropy(exact: &DiscreteDist, model: &Geometric, base: LogBase) -> Result<f64> {
    let nats = match exact {
        DiscreteDist::Finite(pmf) => {
            let mut acc = CompensatedSum::new();
            for (k, p) in pmf.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let lq = model.ln_pmf(k as u64);
                if lq == f64::NEG_INFINITY {
                    return Err(model_excludes(k));
                }
                acc.add(-to_f64(p) * lq);
            }
            acc.value()
        }
        DiscreteDist::Geometric(g) => g.entropy_nats() + geometric_kl_nats(g, model)?,
    };
    Ok(base.from_nats(nats))
}

fn geometric_kl_nats(p: &Geometric, model: &Geometric) -> Result<f64> {
    if p.q == model.q {
        return Ok(0.0);
    }
    if model.q.is_zero() {
        return Err(model_excludes(1));
    }
    // ln((1 - q1)/(1 - q2)) + mu1 ln(q1/q2), written with mu = q/(1 - q).
    let (m1, m2) = (to_f64(&p.mean), to_f64(&model.mean));
    let l1 = m1.ln_1p();
    let l2 = m2.ln_1p();
    let mut kl = l2 - l1;
    if m1 > 0.0 {
        kl += m1 * ((m1.ln() - l1) - (m2.ln() - l2));
    }
    Ok(kl.max(0.0))
}

fn model_excludes(k: usize) -> Error {
    Error::invalid(format!(
        "model assigns zero probability to k = {k}, which has positive probability"
    ))
}

/// `Σ_{p ≤ N} H(X_p)` together with its excess over `log N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decomposition {
    pub sum: f64,
    /// `sum - log N`; nonnegative because `Z` is a function of its exponents.
    pub gap: f64,
}

/// Sum of the marginal valuation entropies of `Z ~ U([1, N])`.
///
/// Terms are evaluated in parallel but summed sequentially in increasing
/// prime order, so the result does not depend on the thread count.
pub fn entropy_decomposition_sum(
    n: u64,
    table: &PrimeTable,
    base: LogBase,
) -> Result<Decomposition> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let primes = table.primes_up_to(n)?;
    let terms: Vec<f64> = primes
        .par_iter()
        .map(|&p| valuation_entropy_nats(u64::from(p), n))
        .collect();
    let sum = compensated_sum(terms);
    let log_n = (n as f64).ln();
    Ok(Decomposition {
        sum: base.from_nats(sum),
        gap: base.from_nats(sum - log_n),
    })
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `ln r` for `0 < r <= 1`, via `ln_1p` of the complement when `r` is near one.
fn ln_ratio(r: &Rational) -> f64 {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if *r > half {
        (-to_f64(&(Rational::one() - r))).ln_1p()
    } else {
        to_f64(r).ln()
    }
}
