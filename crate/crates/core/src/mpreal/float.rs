//! Binary floating-point kernel: `mant · 2^exp` with an explicit bit budget
//! passed to every operation. [`super::Real`] wraps this with a [`super::Precision`].

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Bits of accuracy in a hardware-precision Newton seed.
const SEED_BITS: u64 = 48;

#[derive(Clone, Debug, Default)]
pub(crate) struct Float {
    pub(crate) mant: BigInt,
    pub(crate) exp: i64,
}

/// Precision sequence for a Newton iteration that doubles its accuracy at each
/// step, ending at `target`.
pub(crate) fn newton_schedule(target: u64) -> Vec<u64> {
    let mut steps = vec![target];
    let mut p = target;
    while p > SEED_BITS {
        p = p / 2 + 2;
        steps.push(p);
    }
    if steps.len() > 1 {
        steps.pop();
    }
    steps.reverse();
    steps
}

impl Float {
    pub(crate) fn zero() -> Self {
        Float {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub(crate) fn one() -> Self {
        Float::from_i64(1)
    }

    pub(crate) fn from_i64(v: i64) -> Self {
        Float {
            mant: BigInt::from(v),
            exp: 0,
        }
    }

    pub(crate) fn from_bigint(v: BigInt) -> Self {
        Float { mant: v, exp: 0 }
    }

    /// Exact conversion of a finite double.
    pub(crate) fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Float::zero());
        }
        let bits = v.to_bits();
        let negative = bits >> 63 == 1;
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let mut mant = BigInt::from(m);
        if negative {
            mant = -mant;
        }
        Some(Float { mant, exp: e })
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub(crate) fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub(crate) fn sign(&self) -> Sign {
        self.mant.sign()
    }

    /// Magnitude lies in `[2^(top-1), 2^top)`. Undefined for zero.
    pub(crate) fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Round to nearest (ties away from zero) so that the mantissa has at most `prec` bits.
    pub(crate) fn round(self, prec: u64) -> Float {
        let bits = self.mant.bits();
        if bits <= prec {
            return self;
        }
        let shift = bits - prec;
        let (sign, mag) = self.mant.into_parts();
        let round_up = mag.bit(shift - 1);
        let mut mag: BigUint = mag >> shift;
        let mut exp = self.exp + shift as i64;
        if round_up {
            mag += 1u32;
            if mag.bits() > prec {
                mag >>= 1;
                exp += 1;
            }
        }
        Float {
            mant: BigInt::from_biguint(sign, mag),
            exp,
        }
    }

    pub(crate) fn rounded(&self, prec: u64) -> Float {
        if self.mant.bits() <= prec {
            self.clone()
        } else {
            self.clone().round(prec)
        }
    }

    pub(crate) fn neg(&self) -> Float {
        Float {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub(crate) fn abs(&self) -> Float {
        Float {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub(crate) fn mul_pow2(&self, k: i64) -> Float {
        Float {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub(crate) fn add(&self, other: &Float, prec: u64) -> Float {
        if self.is_zero() {
            return other.rounded(prec);
        }
        if other.is_zero() {
            return self.rounded(prec);
        }
        let (ta, tb) = (self.top(), other.top());
        let gap = prec as i64 + 2;
        if ta > tb + gap {
            return self.rounded(prec);
        }
        if tb > ta + gap {
            return other.rounded(prec);
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as usize;
        let b = &other.mant << (other.exp - exp) as usize;
        Float { mant: a + b, exp }.round(prec)
    }

    pub(crate) fn sub(&self, other: &Float, prec: u64) -> Float {
        self.add(&other.neg(), prec)
    }

    pub(crate) fn mul(&self, other: &Float, prec: u64) -> Float {
        if self.is_zero() || other.is_zero() {
            return Float::zero();
        }
        Float {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
        .round(prec)
    }

    pub(crate) fn mul_small(&self, k: u64, prec: u64) -> Float {
        Float {
            mant: &self.mant * k,
            exp: self.exp,
        }
        .round(prec)
    }

    /// Division by a small positive integer (single-limb divisor, linear time).
    pub(crate) fn div_small(&self, d: u64, prec: u64) -> Float {
        assert!(d != 0, "division by zero");
        if self.is_zero() {
            return Float::zero();
        }
        let want = prec + 2 + (64 - d.leading_zeros() as u64);
        let have = self.mant.bits();
        let shift = want.saturating_sub(have);
        let num = &self.mant << shift as usize;
        Float {
            mant: num / d,
            exp: self.exp - shift as i64,
        }
        .round(prec)
    }

    /// Exact quotient of two integers rounded to `prec` bits (schoolbook division).
    pub(crate) fn from_ratio(num: &BigInt, den: &BigInt, prec: u64) -> Float {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Float::zero();
        }
        let want = prec + 2 + den.bits();
        let shift = want.saturating_sub(num.bits());
        let n: BigUint = num.magnitude() << shift as usize;
        let (q, r) = n.div_rem(den.magnitude());
        // A sticky bit keeps ties from being misrounded.
        let mut mag = q << 1usize;
        if !r.is_zero() {
            mag += 1u32;
        }
        let sign = if num.is_negative() != den.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        Float {
            mant: BigInt::from_biguint(sign, mag),
            exp: -(shift as i64) - 1,
        }
        .round(prec)
    }

    /// `(m, e)` with `self ≈ m · 2^e`, `0.5 ≤ |m| < 1`.
    pub(crate) fn frexp(&self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let bits = self.mant.bits();
        let keep = bits.min(60);
        let head = (self.mant.magnitude() >> (bits - keep) as usize)
            .to_f64()
            .unwrap_or(0.0);
        let mut m = head / 2f64.powi(keep as i32);
        if self.is_negative() {
            m = -m;
        }
        (m, self.top())
    }

    pub(crate) fn to_f64(&self) -> f64 {
        let (m, e) = self.frexp();
        if e > 1100 {
            return if m < 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        if e < -1100 {
            return 0.0 * m.signum();
        }
        m * 2f64.powi(e as i32)
    }

    /// log2 |self| as a double; `-inf` for zero.
    pub(crate) fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.frexp();
        m.abs().log2() + e as f64
    }

    pub(crate) fn cmp_value(&self, other: &Float) -> Ordering {
        let (sa, sb) = (self.sign(), other.sign());
        let rank = |s: Sign| match s {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        match rank(sa).cmp(&rank(sb)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let exp = self.exp.min(other.exp);
                let a = self.mant.magnitude() << (self.exp - exp) as usize;
                let b = other.mant.magnitude() << (other.exp - exp) as usize;
                a.cmp(&b)
            }
            ord => ord,
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }

    /// Reciprocal by Newton's iteration `x ← x + x(1 − a·x)`, doubling the
    /// precision at each step from a hardware seed.
    pub(crate) fn recip(&self, prec: u64) -> Float {
        assert!(!self.is_zero(), "reciprocal of zero");
        let (m, e) = self.frexp();
        let mut x = Float::from_f64(1.0 / m)
            .unwrap()
            .round(SEED_BITS + 4)
            .mul_pow2(-e);
        let one = Float::one();
        for p in newton_schedule(prec + 8) {
            let wp = p + 8;
            let a = self.rounded(wp);
            let residual = one.sub(&a.mul(&x, wp), wp);
            let corr = x.mul(&residual, p / 2 + 8);
            x = x.add(&corr, wp);
        }
        x.round(prec)
    }

    /// `1/sqrt(self)` by Newton's iteration `y ← y + y(1 − a·y²)/2`.
    pub(crate) fn inv_sqrt(&self, prec: u64) -> Float {
        assert!(
            !self.is_zero() && !self.is_negative(),
            "inv_sqrt of non-positive value"
        );
        let (mut m, mut e) = self.frexp();
        if e % 2 != 0 {
            m *= 2.0;
            e -= 1;
        }
        let mut y = Float::from_f64(1.0 / m.sqrt())
            .unwrap()
            .round(SEED_BITS + 4)
            .mul_pow2(-e / 2);
        let one = Float::one();
        for p in newton_schedule(prec + 8) {
            let wp = p + 8;
            let a = self.rounded(wp);
            let y2 = y.mul(&y, wp);
            let residual = one.sub(&a.mul(&y2, wp), wp);
            let corr = y.mul(&residual, p / 2 + 8).mul_pow2(-1);
            y = y.add(&corr, wp);
        }
        y.round(prec)
    }

    /// `sqrt(self) = self · (1/sqrt(self))`.
    pub(crate) fn sqrt(&self, prec: u64) -> Float {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return Float::zero();
        }
        let y = self.inv_sqrt(prec + 8);
        self.mul(&y, prec + 8).round(prec)
    }

    pub(crate) fn is_one(&self) -> bool {
        if self.mant.is_negative() || self.is_zero() {
            return false;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        (&self.mant >> tz as usize).is_one() && self.exp + tz as i64 == 0
    }
}
