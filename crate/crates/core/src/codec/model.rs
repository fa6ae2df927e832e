//! Integer frequency tables for a geometric exponent model.
//!
//! For `q = M / (N + M)` (so the mean is `M / N`), the tail masses are
//! `t_0 = 2^32`, `t_{k+1} = floor(t_k · M / (N + M))`, and exponent `k` owns
//! `[2^32 - t_k, 2^32 - t_{k+1})`. Once a tail mass reaches `2^32 · 2^-31`
//! the remaining exponents share one escape bucket, followed by an
//! Elias-gamma remainder coded as raw bits. Everything is integer arithmetic,
//! so encoder and decoder tables agree bit for bit on every platform.

use super::arith::{Decoder, Encoder, MAX_TOTAL};
use crate::{Error, Result};

const TOTAL: u64 = MAX_TOTAL;
/// Tail mass at or below which exponents fold into the escape bucket.
const ESCAPE_MASS: u64 = TOTAL >> 31;

#[derive(Clone, Copy, Debug)]
pub(crate) struct GeometricModel {
    num: u128,
    den: u128,
}

enum Slot {
    Exponent {
        lo: u64,
        hi: u64,
    },
    /// Escape bucket; `first` is the smallest folded exponent.
    Escape {
        lo: u64,
        first: u64,
    },
}

impl GeometricModel {
    /// Model with mean `legendre / n`; requires `legendre <= n`, so `q <= 1/2`.
    pub(crate) fn new(legendre: u64, n: u64) -> Self {
        debug_assert!(legendre >= 1 && legendre <= n);
        GeometricModel {
            num: u128::from(legendre),
            den: u128::from(n) + u128::from(legendre),
        }
    }

    #[inline]
    fn step(&self, t: u64) -> u64 {
        (u128::from(t) * self.num / self.den) as u64
    }

    /// Walks the table until `stop(j, lo, hi)` accepts exponent `j`, or the
    /// escape bucket is reached.
    fn walk(&self, mut stop: impl FnMut(u64, u64, u64) -> bool) -> (u64, Slot) {
        let mut t = TOTAL;
        let mut j = 0;
        loop {
            let next = self.step(t);
            if next <= ESCAPE_MASS {
                let esc = next.max(1);
                let slot = Slot::Exponent {
                    lo: TOTAL - t,
                    hi: TOTAL - esc,
                };
                if stop(j, TOTAL - t, TOTAL - esc) {
                    return (j, slot);
                }
                return (
                    j + 1,
                    Slot::Escape {
                        lo: TOTAL - esc,
                        first: j + 1,
                    },
                );
            }
            if stop(j, TOTAL - t, TOTAL - next) {
                return (
                    j,
                    Slot::Exponent {
                        lo: TOTAL - t,
                        hi: TOTAL - next,
                    },
                );
            }
            t = next;
            j += 1;
        }
    }

    pub(crate) fn encode(&self, enc: &mut Encoder, exponent: u64) {
        match self.walk(|j, _, _| j == exponent).1 {
            Slot::Exponent { lo, hi } => enc.encode(lo, hi, TOTAL),
            Slot::Escape { lo, first } => {
                enc.encode(lo, TOTAL, TOTAL);
                encode_gamma(enc, exponent - first + 1);
            }
        }
    }

    pub(crate) fn decode(&self, dec: &mut Decoder<'_>) -> Result<u64> {
        let target = dec.target(TOTAL);
        match self.walk(|_, _, hi| target < hi) {
            (j, Slot::Exponent { lo, hi }) => {
                dec.consume(lo, hi, TOTAL);
                Ok(j)
            }
            (_, Slot::Escape { lo, first }) => {
                dec.consume(lo, TOTAL, TOTAL);
                Ok(first + decode_gamma(dec)? - 1)
            }
        }
    }
}

/// Elias gamma code of `v >= 1` as equiprobable bits.
fn encode_gamma(enc: &mut Encoder, v: u64) {
    debug_assert!(v >= 1);
    let width = 64 - v.leading_zeros();
    for _ in 1..width {
        enc.encode_bit(false);
    }
    for i in (0..width).rev() {
        enc.encode_bit((v >> i) & 1 == 1);
    }
}

fn decode_gamma(dec: &mut Decoder<'_>) -> Result<u64> {
    let mut zeros = 0;
    while !dec.decode_bit() {
        zeros += 1;
        if zeros >= 64 {
            return Err(Error::Corrupt(
                "escape remainder longer than 64 bits".into(),
            ));
        }
    }
    let mut v = 1u64;
    for _ in 0..zeros {
        v = (v << 1) | u64::from(dec.decode_bit());
    }
    Ok(v)
}
