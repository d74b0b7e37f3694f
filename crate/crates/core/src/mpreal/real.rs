use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::float::Float;
use super::precision::Precision;
use crate::error::{domain, Result};

/// Arbitrary-precision real carrying its working precision.
///
/// Every arithmetic result is rounded to nearest at `precision().working_bits()`
/// bits. When two operands disagree on precision the wider one wins.
#[derive(Clone, Debug)]
pub struct Real {
    pub(crate) f: Float,
    prec: Precision,
}

fn wider(a: Precision, b: Precision) -> Precision {
    if b.working_bits() > a.working_bits() {
        b
    } else {
        a
    }
}

impl Real {
    pub(crate) fn from_float(f: Float, prec: Precision) -> Self {
        Real {
            f: f.round(prec.working_bits()),
            prec,
        }
    }

    pub fn zero(prec: Precision) -> Self {
        Real {
            f: Float::zero(),
            prec,
        }
    }

    pub fn one(prec: Precision) -> Self {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        Real::from_float(Float::from_i64(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: Precision) -> Self {
        Real::from_float(Float::from_bigint(v.clone()), prec)
    }

    /// Exact conversion of a finite double (then rounded to the working precision).
    pub fn from_f64(v: f64, prec: Precision) -> Result<Self> {
        match Float::from_f64(v) {
            Some(f) => Ok(Real::from_float(f, prec)),
            None => domain(format!("cannot convert non-finite value {v}")),
        }
    }

    /// `num / den` rounded once.
    pub fn from_ratio(num: i64, den: i64, prec: Precision) -> Result<Self> {
        Real::from_bigint_ratio(&BigInt::from(num), &BigInt::from(den), prec)
    }

    pub fn from_bigint_ratio(num: &BigInt, den: &BigInt, prec: Precision) -> Result<Self> {
        if den == &BigInt::from(0) {
            return domain("division by zero");
        }
        Ok(Real::from_float(
            Float::from_ratio(num, den, prec.working_bits()),
            prec,
        ))
    }

    /// `2^k`, exact.
    pub fn pow2(k: i64, prec: Precision) -> Self {
        Real::one(prec).mul_pow2(k)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn working_bits(&self) -> u64 {
        self.prec.working_bits()
    }

    /// The same value re-rounded (or padded) to another precision.
    pub fn with_precision(&self, prec: Precision) -> Real {
        Real::from_float(self.f.clone(), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.f.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.f.is_zero() && !self.f.is_negative()
    }

    /// True when the value is exactly one.
    pub fn is_one(&self) -> bool {
        self.f.is_one()
    }

    pub fn abs(&self) -> Real {
        Real {
            f: self.f.abs(),
            prec: self.prec,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Real {
        Real {
            f: self.f.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn mul_u64(&self, k: u64) -> Real {
        Real {
            f: self.f.mul_small(k, self.working_bits()),
            prec: self.prec,
        }
    }

    /// Division by a small positive integer. Panics when `d == 0`.
    pub fn div_u64(&self, d: u64) -> Real {
        Real {
            f: self.f.div_small(d, self.working_bits()),
            prec: self.prec,
        }
    }

    pub fn square(&self) -> Real {
        self * self
    }

    /// `self^n` by binary powering.
    pub fn powi(&self, mut n: u64) -> Real {
        let mut base = self.clone();
        let mut acc = Real::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Reciprocal by self-correcting Newton iteration.
    pub fn recip(&self) -> Result<Real> {
        if self.is_zero() {
            return domain("reciprocal of zero");
        }
        Ok(Real::from_float(
            self.f.recip(self.working_bits()),
            self.prec,
        ))
    }

    /// `self / other`, computed as `self · recip(other)`.
    pub fn checked_div(&self, other: &Real) -> Result<Real> {
        if other.is_zero() {
            return domain("division by zero");
        }
        let prec = wider(self.prec, other.prec);
        let wb = prec.working_bits();
        let r = other.f.recip(wb + 8);
        Ok(Real::from_float(self.f.mul(&r, wb + 8), prec))
    }

    pub fn sqrt(&self) -> Result<Real> {
        if self.is_negative() {
            return domain("square root of a negative number");
        }
        Ok(Real::from_float(
            self.f.sqrt(self.working_bits()),
            self.prec,
        ))
    }

    pub fn inv_sqrt(&self) -> Result<Real> {
        if !self.is_positive() {
            return domain("inverse square root needs a positive argument");
        }
        Ok(Real::from_float(
            self.f.inv_sqrt(self.working_bits()),
            self.prec,
        ))
    }

    /// `self^(1/4)` as two inverse square roots.
    pub fn fourth_root(&self) -> Result<Real> {
        if !self.is_positive() {
            return domain("fourth root needs a positive argument");
        }
        let wb = self.working_bits();
        let y = self.f.inv_sqrt(wb + 8);
        Ok(Real::from_float(y.inv_sqrt(wb + 8), self.prec))
    }

    /// Heron's iteration `x ← (x + s/x)/2` at fixed precision, returning every iterate.
    pub fn sqrt_newton_trace(&self, x0: &Real, steps: usize) -> Result<Vec<Real>> {
        if !self.is_positive() || !x0.is_positive() {
            return domain("Heron iteration needs positive S and x0");
        }
        let mut xs = vec![x0.clone()];
        for _ in 0..steps {
            let x = xs.last().unwrap();
            let next = (x + &self.checked_div(x)?).mul_pow2(-1);
            xs.push(next);
        }
        Ok(xs)
    }

    pub fn to_f64(&self) -> f64 {
        self.f.to_f64()
    }

    /// log2|self| as a double, `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        self.f.log2_abs()
    }

    /// Unit in the last place at the working precision (zero maps to `2^-working_bits`).
    pub fn ulp(&self) -> Real {
        let wb = self.working_bits() as i64;
        if self.is_zero() {
            return Real::pow2(-wb, self.prec);
        }
        Real::pow2(self.f.top() - wb, self.prec)
    }

    /// Three-way comparison by value, ignoring precision.
    pub fn cmp_value(&self, other: &Real) -> Ordering {
        self.f.cmp_value(&other.f)
    }

    pub fn max<'a>(&'a self, other: &'a Real) -> &'a Real {
        if self.cmp_value(other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        let prec = wider(self.prec, rhs.prec);
        Real {
            f: self.f.add(&rhs.f, prec.working_bits()),
            prec,
        }
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        let prec = wider(self.prec, rhs.prec);
        Real {
            f: self.f.sub(&rhs.f, prec.working_bits()),
            prec,
        }
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        let prec = wider(self.prec, rhs.prec);
        Real {
            f: self.f.mul(&rhs.f, prec.working_bits()),
            prec,
        }
    }
}

/// Panics on division by zero, like integer division; use [`Real::checked_div`]
/// to get a domain error instead.
impl<'a> Div<&'a Real> for &'a Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            f: self.f.neg(),
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .map(|d| d as u64)
            .unwrap_or(self.prec.decimal_digits())
            .max(1);
        f.write_str(&self.to_decimal(digits, super::Rounding::Nearest))
    }
}
