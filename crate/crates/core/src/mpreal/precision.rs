use std::fmt;

use crate::error::{domain, Result};

/// log2(10), used to convert decimal digits to bits.
pub(crate) const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Smallest guard allowance accepted by [`Precision::with_guard_bits`].
pub const MIN_GUARD_BITS: u64 = 64;

/// Working precision policy.
///
/// `bits` is the target precision, `guard_bits` extra precision that absorbs
/// rounding noise. Arithmetic runs at `bits + guard_bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    decimal_digits: u64,
    bits: u64,
    guard_bits: u64,
}

fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

/// Bits needed to hold `digits` decimal digits.
pub fn digits_to_bits(digits: u64) -> u64 {
    (digits as f64 * LOG2_10).ceil() as u64
}

impl Precision {
    /// Default guard allowance for a target of `bits` bits: `64 + 4·ceil(log2(bits))`.
    pub fn default_guard_bits(bits: u64) -> u64 {
        MIN_GUARD_BITS + 4 * ceil_log2(bits)
    }

    pub fn from_digits(decimal_digits: u64) -> Result<Self> {
        if decimal_digits == 0 {
            return domain("precision needs at least one decimal digit");
        }
        let bits = digits_to_bits(decimal_digits);
        Ok(Precision {
            decimal_digits,
            bits,
            guard_bits: Self::default_guard_bits(bits),
        })
    }

    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits == 0 {
            return domain("precision needs at least one bit");
        }
        let decimal_digits = ((bits as f64) / LOG2_10).floor().max(1.0) as u64;
        let bits = bits.max(digits_to_bits(decimal_digits));
        Ok(Precision {
            decimal_digits,
            bits,
            guard_bits: Self::default_guard_bits(bits),
        })
    }

    /// Replaces the guard allowance. Values below [`MIN_GUARD_BITS`] are rejected.
    pub fn with_guard_bits(self, guard_bits: u64) -> Result<Self> {
        if guard_bits < MIN_GUARD_BITS {
            return domain(format!(
                "guard bits must be at least {MIN_GUARD_BITS} (got {guard_bits})"
            ));
        }
        Ok(Precision { guard_bits, ..self })
    }

    /// Same target, with `extra` more guard bits.
    pub fn extended(self, extra: u64) -> Self {
        Precision {
            guard_bits: self.guard_bits + extra,
            ..self
        }
    }

    pub fn decimal_digits(&self) -> u64 {
        self.decimal_digits
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn guard_bits(&self) -> u64 {
        self.guard_bits
    }

    pub fn working_bits(&self) -> u64 {
        self.bits + self.guard_bits
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} digits ({} bits + {} guard)",
            self.decimal_digits, self.bits, self.guard_bits
        )
    }
}
