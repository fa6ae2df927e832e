//! Binary-output arithmetic coder on 62-bit integer registers.
//!
//! Intervals are `[low, high]` with `high - low + 1 > 2^60` after every
//! renormalization, so a symbol of frequency `f` out of `total <= 2^32` always
//! receives a nonempty subinterval. Straddles of the midpoint are deferred as
//! pending bits and resolved when the next decided bit is emitted.

use super::bits::{BitReader, BitString};

const PRECISION: u32 = 62;
const TOP: u64 = (1 << PRECISION) - 1;
const HALF: u64 = 1 << (PRECISION - 1);
const QUARTER: u64 = 1 << (PRECISION - 2);

/// Largest frequency total the coder accepts.
pub(crate) const MAX_TOTAL: u64 = 1 << 32;

#[inline]
fn narrow(low: u64, high: u64, cum_lo: u64, cum_hi: u64, total: u64) -> (u64, u64) {
    debug_assert!(cum_lo < cum_hi && cum_hi <= total && total <= MAX_TOTAL);
    let range = u128::from(high - low) + 1;
    let scale = |c: u64| (range * u128::from(c) / u128::from(total)) as u64;
    (low + scale(cum_lo), low + scale(cum_hi) - 1)
}

pub(crate) struct Encoder {
    low: u64,
    high: u64,
    pending: u64,
    symbols: u64,
    out: BitString,
}

impl Encoder {
    pub(crate) fn new() -> Self {
        Encoder {
            low: 0,
            high: TOP,
            pending: 0,
            symbols: 0,
            out: BitString::new(),
        }
    }

    pub(crate) fn encode(&mut self, cum_lo: u64, cum_hi: u64, total: u64) {
        (self.low, self.high) = narrow(self.low, self.high, cum_lo, cum_hi, total);
        self.symbols += 1;
        loop {
            if self.high < HALF {
                self.emit(false);
            } else if self.low >= HALF {
                self.emit(true);
                self.low -= HALF;
                self.high -= HALF;
            } else if self.low >= QUARTER && self.high < HALF + QUARTER {
                self.pending += 1;
                self.low -= QUARTER;
                self.high -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
        }
    }

    /// One equiprobable bit.
    pub(crate) fn encode_bit(&mut self, bit: bool) {
        let b = u64::from(bit);
        self.encode(b, b + 1, 2);
    }

    /// Terminates the stream with the shortest tail that pins a point inside
    /// the final interval. The decoder reads zeros past the end, so the point
    /// with the most trailing zeros is chosen and those zeros are not sent.
    /// The point is at least 1, so a stream with symbols always contains a
    /// one bit; a stream with no symbols stays empty.
    pub(crate) fn finish(mut self) -> BitString {
        if self.symbols == 0 {
            return self.out;
        }
        // Shortest aligned block inside [low, high]; any continuation of its
        // prefix decodes identically, so codewords stay prefix-free.
        let (shift, point) = (0..PRECISION)
            .rev()
            .find_map(|s| {
                let v = self.low.div_ceil(1 << s) << s;
                (v + ((1 << s) - 1) <= self.high).then_some((s, v))
            })
            .expect("interval is never empty");
        self.emit(point >> (PRECISION - 1) & 1 == 1);
        for i in (shift..PRECISION - 1).rev() {
            self.out.push(point >> i & 1 == 1);
        }
        self.out
    }

    fn emit(&mut self, bit: bool) {
        self.out.push(bit);
        for _ in 0..self.pending {
            self.out.push(!bit);
        }
        self.pending = 0;
    }
}

pub(crate) struct Decoder<'a> {
    low: u64,
    high: u64,
    value: u64,
    input: BitReader<'a>,
}

impl<'a> Decoder<'a> {
    pub(crate) fn new(bytes: &'a [u8]) -> Self {
        let mut input = BitReader::new(bytes);
        let mut value = 0;
        for _ in 0..PRECISION {
            value = (value << 1) | input.next_bit();
        }
        Decoder {
            low: 0,
            high: TOP,
            value,
            input,
        }
    }

    /// Cumulative frequency the next symbol falls on, in `[0, total)`.
    pub(crate) fn target(&self, total: u64) -> u64 {
        let range = u128::from(self.high - self.low) + 1;
        let offset = u128::from(self.value - self.low) + 1;
        ((offset * u128::from(total) - 1) / range) as u64
    }

    /// Removes the symbol `[cum_lo, cum_hi)` that [`target`](Self::target) located.
    pub(crate) fn consume(&mut self, cum_lo: u64, cum_hi: u64, total: u64) {
        (self.low, self.high) = narrow(self.low, self.high, cum_lo, cum_hi, total);
        loop {
            if self.high >= HALF {
                let shift = if self.low >= HALF {
                    HALF
                } else if self.low >= QUARTER && self.high < HALF + QUARTER {
                    QUARTER
                } else {
                    break;
                };
                self.low -= shift;
                self.high -= shift;
                self.value -= shift;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
            self.value = (self.value << 1) | self.input.next_bit();
        }
    }

    pub(crate) fn decode_bit(&mut self) -> bool {
        let b = self.target(2);
        self.consume(b, b + 1, 2);
        b == 1
    }
}
