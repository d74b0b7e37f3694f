//! Reference values computed without the AGM: fixed-point integer series for
//! π, e and logarithms, and trapezoidal quadrature for the elliptic integrals.
#![allow(dead_code)]

use agmpi::{Precision, Real};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A value `v / 10^scale` held as an integer.
#[derive(Clone, Debug)]
pub struct Fixed {
    pub v: BigInt,
    pub scale: u32,
}

impl Fixed {
    pub fn to_real(&self, prec: Precision) -> Real {
        Real::from_bigint_ratio(&self.v, &BigInt::from(10u32).pow(self.scale), prec).unwrap()
    }
}

fn unit(scale: u32) -> BigInt {
    BigInt::from(10u32).pow(scale)
}

/// `atan(1/x)` by its Taylor series.
pub fn atan_inv(x: u64, scale: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = unit(scale) / x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `atanh(1/x)` by its Taylor series.
pub fn atanh_inv(x: u64, scale: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = unit(scale) / x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        sum += &power / (2 * k + 1);
        power /= &x2;
        k += 1;
    }
    sum
}

const SLACK: u32 = 20;

fn fixed(v: BigInt, digits: u32) -> Fixed {
    Fixed {
        v,
        scale: digits + SLACK,
    }
}

/// Machin: `π = 16·atan(1/5) − 4·atan(1/239)`.
pub fn machin_pi(digits: u32) -> Fixed {
    let s = digits + SLACK;
    fixed(atan_inv(5, s) * 16 - atan_inv(239, s) * 4, digits)
}

/// `e = Σ 1/k!`.
pub fn taylor_e(digits: u32) -> Fixed {
    let s = digits + SLACK;
    let mut term = unit(s);
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        sum += &term;
        term /= k;
        k += 1;
    }
    fixed(sum, digits)
}

/// `log 2 = 2·atanh(1/3)`.
pub fn log2(digits: u32) -> Fixed {
    fixed(atanh_inv(3, digits + SLACK) * 2, digits)
}

/// `log 10 = 3·log 2 + 2·atanh(1/9)`, since `10 = 2³·(5/4)` and `5/4 = (1 + 1/9)/(1 − 1/9)`.
pub fn log10(digits: u32) -> Fixed {
    let s = digits + SLACK;
    fixed(atanh_inv(3, s) * 6 + atanh_inv(9, s) * 2, digits)
}

/// `sin x` and `cos x` by Taylor series, for small `|x|`.
fn sin_cos(x: &Real) -> (Real, Real) {
    let prec = x.precision();
    let x2 = x.square();
    let floor = -(prec.working_bits() as f64) - 8.0;
    let mut s = x.clone();
    let mut c = Real::one(prec);
    let mut ts = x.clone();
    let mut tc = Real::one(prec);
    let mut k = 1u64;
    loop {
        tc = -(&(&tc * &x2).div_u64((2 * k - 1) * (2 * k)));
        ts = -(&(&ts * &x2).div_u64((2 * k) * (2 * k + 1)));
        c = &c + &tc;
        s = &s + &ts;
        if ts.is_zero() || ts.log2_abs() < floor {
            break;
        }
        k += 1;
    }
    (s, c)
}

/// `K(k)` and `E(k)` by the trapezoidal rule on `[0, π/2]` with `n` panels.
/// The integrands are smooth and periodic, so the rule converges geometrically.
pub fn elliptic_quadrature(k: &Real, n: u64) -> (Real, Real) {
    let prec = k.precision();
    let pi = machin_pi(prec.decimal_digits() as u32 + 10).to_real(prec);
    let h = pi.mul_pow2(-1).div_u64(n);
    let k2 = k.square();
    let one = Real::one(prec);
    let mut sk = Real::zero(prec);
    let mut se = Real::zero(prec);
    for i in 0..=n {
        let (s, _) = sin_cos(&h.mul_u64(i));
        let w = (&one - &(&k2 * &s.square())).sqrt().unwrap();
        let (fk, fe) = (w.recip().unwrap(), w);
        let (fk, fe) = if i == 0 || i == n {
            (fk.mul_pow2(-1), fe.mul_pow2(-1))
        } else {
            (fk, fe)
        };
        sk = &sk + &fk;
        se = &se + &fe;
    }
    (&sk * &h, &se * &h)
}

/// Chudnovsky partial sum `Σ_{n<terms} a(n)·Π_{j≤n} p(j)/q(j)` as an exact
/// fraction `(num, den)`, summed term by term.
pub fn chudnovsky_rational(terms: u64) -> (BigInt, BigInt) {
    let c3 = BigInt::from(640_320u64).pow(3) / 24u32;
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    let mut pp = BigInt::one();
    let mut qq = BigInt::one();
    for n in 0..terms {
        if n > 0 {
            pp *= -(BigInt::from(6 * n - 5) * (2 * n - 1) * (6 * n - 1));
            qq *= BigInt::from(n).pow(3) * &c3;
        }
        let a = BigInt::from(13_591_409u64) + BigInt::from(545_140_134u64) * n;
        // num/den + a·pp/qq
        num = &num * &qq + &a * &pp * &den;
        den *= &qq;
    }
    (num, den)
}

/// `|a − b|` in units of `2^-bits` of the target precision.
pub fn err_ulps(a: &Real, b: &Real) -> f64 {
    let prec = a.precision();
    let d = (a - b).abs();
    if d.is_zero() {
        return 0.0;
    }
    let scale = b.abs().log2_abs().max(0.0);
    (d.log2_abs() - scale + prec.bits() as f64).exp2()
}

pub fn prec(digits: u64) -> Precision {
    Precision::from_digits(digits).unwrap()
}
