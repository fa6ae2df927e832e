//! Information-theoretic measurements on the prime numbers.
//!
//! The crate computes, for a uniform random integer `Z` on `[1, N]`, the exact
//! law of every p-adic valuation `X_p`, the entropy of each of those laws and
//! of their maximum-entropy geometric surrogates, Chebyshev/Mertens weighted
//! prime sums, and the codelength of an arithmetic code that transmits `Z`
//! as its exponent vector.
//!
//! Everything hangs off a [`PrimeTable`] produced by a segmented sieve:
//!
//! ```
//! use primeinfo::{LogBase, PrimeTable, WeightMode, asymptotics};
//!
//! let table = PrimeTable::sieve(100).unwrap();
//! assert_eq!(table.prime_count(100).unwrap(), 25);
//! let s = asymptotics::mertens_sum(10, &table, LogBase::E, WeightMode::Ideal).unwrap();
//! assert!((s - 1.312652).abs() < 1e-6);
//! ```

pub mod asymptotics;
pub mod codec;
mod error;
pub mod info;
mod log_base;
pub mod oracle;
pub mod report;
pub mod sampling;
pub mod sieve;
pub mod sum;
pub mod valuation;

pub use asymptotics::{InfoSummary, WeightMode};
pub use codec::{CodeLengthReport, CodecMode, ExponentVector};
pub use error::{Error, Result};
pub use info::{DiscreteDist, Geometric};
pub use log_base::LogBase;
pub use sieve::{PrimeTable, SieveConfig};
pub use valuation::ValuationDist;

/// Arbitrary-precision rational used for every exact probability.
pub type Rational = num_rational::BigRational;
