use std::ops::{Add, Mul, Sub};

use super::precision::Precision;
use super::real::Real;
use crate::error::{domain, Result};

/// Complex number as a pair of [`Real`]s sharing one precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        let prec = if im.working_bits() > re.working_bits() {
            im.precision()
        } else {
            re.precision()
        };
        Complex {
            re: re.with_precision(prec),
            im: im.with_precision(prec),
        }
    }

    pub fn from_real(re: Real) -> Self {
        let im = Real::zero(re.precision());
        Complex { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Complex::from_real(Real::zero(prec))
    }

    pub fn one(prec: Precision) -> Self {
        Complex::from_real(Real::one(prec))
    }

    pub fn precision(&self) -> Precision {
        self.re.precision()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Complex {
        Complex {
            re: self.re.mul_pow2(k),
            im: self.im.mul_pow2(k),
        }
    }

    pub fn scale(&self, r: &Real) -> Complex {
        Complex {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt().expect("norm is non-negative")
    }

    pub fn square(&self) -> Complex {
        self * self
    }

    pub fn checked_div(&self, other: &Complex) -> Result<Complex> {
        if other.is_zero() {
            return domain("complex division by zero");
        }
        let inv = other.norm_sqr().recip()?;
        Ok((self * &other.conj()).scale(&inv))
    }

    /// Principal square root: `Re ≥ 0`, and `Im ≥ 0` when `Re = 0`.
    pub fn sqrt(&self) -> Complex {
        let prec = self.precision();
        if self.is_zero() {
            return Complex::zero(prec);
        }
        let r = self.abs();
        if !self.re.is_negative() {
            let u = (&r + &self.re).mul_pow2(-1).sqrt().expect("r + re >= 0");
            let v = &self.im / &u.mul_pow2(1);
            Complex { re: u, im: v }
        } else {
            let mut v = (&r - &self.re).mul_pow2(-1).sqrt().expect("r - re >= 0");
            if self.im.is_negative() {
                v = -v;
            }
            let u = &self.im / &v.mul_pow2(1);
            Complex { re: u, im: v }
        }
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: i64, im: i64, prec: Precision) -> Complex {
        Complex::new(Real::from_i64(re, prec), Real::from_i64(im, prec))
    }

    #[test]
    fn sqrt_branch_on_negative_axis() {
        let prec = Precision::from_digits(30).unwrap();
        let r = c(-4, 0, prec).sqrt();
        assert!(r.re.is_zero());
        assert_eq!(r.im, Real::from_i64(2, prec));
    }

    #[test]
    fn sqrt_squares_back() {
        let prec = Precision::from_digits(50).unwrap();
        for (re, im) in [(3, 4), (-3, 4), (-3, -4), (0, -9), (5, 0)] {
            let z = c(re, im, prec);
            let r = z.sqrt();
            assert!(!r.re.is_negative());
            let back = r.square();
            let err = (&back - &z).abs();
            assert!(err.log2_abs() < -(prec.working_bits() as f64) + 6.0);
        }
    }

    #[test]
    fn division() {
        let prec = Precision::from_digits(40).unwrap();
        let q = c(1, 1, prec).checked_div(&c(1, -1, prec)).unwrap();
        assert!(q.re.abs().log2_abs() < -(prec.working_bits() as f64) + 2.0);
        assert_eq!(q.im, Real::one(prec));
        assert!(c(1, 1, prec).checked_div(&Complex::zero(prec)).is_err());
    }
}
