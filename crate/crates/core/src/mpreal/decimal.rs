//! Decimal conversion.
//!
//! Output is `[-]int.frac` with a fixed number of significant digits, or
//! `d.ddde[-]x` in scientific form. Input accepts an optional sign, digits with
//! an optional point, and an optional `e`/`E` exponent.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::float::Float;
use super::precision::Precision;
use super::real::Real;
use crate::error::{Error, Result};

/// How the last printed digit is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Nearest,
    Truncate,
}

/// Largest decimal exponent accepted by the parser.
const MAX_DECIMAL_EXPONENT: i64 = 100_000_000;

fn pow10(n: u64) -> BigUint {
    BigUint::from(10u32).pow(n)
}

/// Significant digits of |x| and the decimal exponent of the first one:
/// `|x| ≈ 0.d₁d₂…d_D × 10^(e+1)`.
fn significant_digits(x: &Float, digits: u64, rounding: Rounding) -> (String, i64) {
    debug_assert!(!x.is_zero());
    let mut e10 = (x.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
    loop {
        let n = digits as i64 - 1 - e10;
        let mut num: BigUint = x.mant.magnitude().clone();
        let mut den = BigUint::one();
        if x.exp >= 0 {
            num <<= x.exp as usize;
        } else {
            den <<= (-x.exp) as usize;
        }
        if n >= 0 {
            num *= pow10(n as u64);
        } else {
            den *= pow10((-n) as u64);
        }
        let (mut q, r) = num.div_rem(&den);
        if rounding == Rounding::Nearest && (r << 1usize) >= den {
            q += 1u32;
        }
        if q >= pow10(digits) {
            e10 += 1;
            continue;
        }
        if q < pow10(digits - 1) {
            e10 -= 1;
            continue;
        }
        return (q.to_string(), e10);
    }
}

impl Real {
    /// `digits` significant digits in positional notation.
    pub fn to_decimal(&self, digits: u64, rounding: Rounding) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return if digits == 1 {
                "0".to_string()
            } else {
                format!("0.{}", "0".repeat(digits as usize - 1))
            };
        }
        let (s, e10) = significant_digits(&self.f, digits, rounding);
        let sign = if self.is_negative() { "-" } else { "" };
        let body = if e10 >= 0 {
            let int_len = e10 as usize + 1;
            if int_len >= s.len() {
                format!("{}{}", s, "0".repeat(int_len - s.len()))
            } else {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e10 - 1) as usize), s)
        };
        format!("{sign}{body}")
    }

    /// `digits` significant digits as `d.ddd…e±x`.
    pub fn to_scientific(&self, digits: u64, rounding: Rounding) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let (s, e10) = significant_digits(&self.f, digits, rounding);
        let sign = if self.is_negative() { "-" } else { "" };
        if s.len() == 1 {
            format!("{sign}{s}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        }
    }

    /// Fixed-point notation with `decimals` digits after the point, rounded to nearest.
    pub fn to_fixed(&self, decimals: u64) -> String {
        let x = &self.f;
        let mut num: BigUint = x.mant.magnitude().clone() * pow10(decimals);
        let mut den = BigUint::one();
        if x.exp >= 0 {
            num <<= x.exp as usize;
        } else {
            den <<= (-x.exp) as usize;
        }
        let (mut q, r) = num.div_rem(&den);
        if (r << 1usize) >= den {
            q += 1u32;
        }
        let mut s = q.to_string();
        let d = decimals as usize;
        if s.len() <= d {
            s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
        }
        let sign = if self.is_negative() && !q.is_zero() {
            "-"
        } else {
            ""
        };
        if d == 0 {
            return format!("{sign}{s}");
        }
        let (int, frac) = s.split_at(s.len() - d);
        format!("{sign}{int}.{frac}")
    }

    /// Parses `[+-]digits[.digits][e[+-]digits]`.
    pub fn from_decimal(s: &str, prec: Precision) -> Result<Real> {
        let bad = || Error::Parse(format!("malformed decimal string {s:?}"));
        let t = s.trim();
        let (negative, t) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (mantissa, exponent) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], Some(&t[i + 1..])),
            None => (t, None),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
            None => (mantissa, ""),
        };
        let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if int_part.is_empty() && frac_part.is_empty()
            || !all_digits(int_part)
            || !all_digits(frac_part)
        {
            return Err(bad());
        }
        let mut exp10: i64 = match exponent {
            Some(e) => {
                let (eneg, digits) = match e.as_bytes().first() {
                    Some(b'-') => (true, &e[1..]),
                    Some(b'+') => (false, &e[1..]),
                    _ => (false, e),
                };
                if digits.is_empty() || !all_digits(digits) || digits.len() > 12 {
                    return Err(bad());
                }
                let v: i64 = digits.parse().map_err(|_| bad())?;
                if eneg {
                    -v
                } else {
                    v
                }
            }
            None => 0,
        };
        exp10 -= frac_part.len() as i64;
        if exp10.abs() > MAX_DECIMAL_EXPONENT {
            return Err(Error::Range(format!(
                "decimal exponent out of range in {s:?}"
            )));
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: BigInt = digits.parse::<BigInt>().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        if num.is_zero() {
            return Ok(Real::zero(prec));
        }
        let real = if exp10 >= 0 {
            Real::from_bigint(&(num * BigInt::from(pow10(exp10 as u64))), prec)
        } else {
            Real::from_bigint_ratio(&num, &BigInt::from(pow10((-exp10) as u64)), prec)?
        };
        Ok(real)
    }
}
