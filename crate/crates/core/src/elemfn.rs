//! Elementary functions from the AGM: logarithms (Salamin and Sasaki–Kanada,
//! with argument reduction and a Taylor branch near 1), exp by Newton
//! inversion, the complex AGM, arctan and arccos.

use std::f64::consts::LN_2;

use crate::agm::{self, AgmTrace};
use crate::constants;
use crate::error::{domain, Error, Result};
use crate::mpreal::{Complex, Precision, Real};
use crate::theta;

/// Largest |x| accepted by [`exp`].
pub const EXP_LIMIT: f64 = 1_048_576.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogMethod {
    Salamin,
    SasakiKanada,
    TaylorNearOne,
    Auto,
}

impl std::str::FromStr for LogMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "salamin" => Ok(LogMethod::Salamin),
            "sasaki_kanada" | "sasaki-kanada" | "sk" => Ok(LogMethod::SasakiKanada),
            "taylor_near_one" | "taylor" => Ok(LogMethod::TaylorNearOne),
            "auto" => Ok(LogMethod::Auto),
            _ => Err(Error::Usage(format!("unknown log method {s:?}"))),
        }
    }
}

fn ceil_log2_f(x: f64) -> u64 {
    if x <= 1.0 {
        0
    } else {
        x.log2().ceil() as u64
    }
}

/// `log2` of the Sasaki–Kanada threshold `2^(wb/36)`.
fn sk_threshold(wb: u64) -> f64 {
    wb as f64 / 36.0
}

/// `log2` of the Taylor threshold `2^(−wb/log2 wb)`.
fn taylor_threshold(wb: u64) -> f64 {
    -(wb as f64) / (wb as f64).log2()
}

/// Salamin's approximation `log x ≈ π/(2·AGM(1, 4/x))`, for `x ≥ 16`.
///
/// No correction term is applied; the relative error is `O((4/x)²)`.
pub fn log_salamin(x: &Real) -> Result<Real> {
    log_salamin_traced(x).map(|(v, _)| v)
}

pub fn log_salamin_traced(x: &Real) -> Result<(Real, AgmTrace)> {
    if x < &Real::from_i64(16, x.precision()) {
        return domain("Salamin's method needs x >= 16; reduce the argument with log()");
    }
    let prec = x.precision();
    let k = Real::from_i64(4, prec).checked_div(x)?;
    let (m, trace) = agm::agm(&Real::one(prec), &k)?;
    let v = constants::pi(prec).checked_div(&m.mul_pow2(1))?;
    Ok((v, trace))
}

/// `log x = (π/4)/AGM(θ₂²(q⁴), θ₃²(q⁴))` with `q = 1/x`, for `x > 1`.
///
/// Above `x = 2^(wb/36)` the theta series are cut to `θ₂(q⁴) = 2(q + q⁹ + q²⁵)`
/// and `θ₃(q⁴) = 1 + 2(q⁴ + q¹⁶)`.
pub fn log_sasaki_kanada(x: &Real) -> Result<Real> {
    log_sasaki_kanada_traced(x).map(|(v, _)| v)
}

pub fn log_sasaki_kanada_traced(x: &Real) -> Result<(Real, AgmTrace)> {
    let prec = x.precision();
    let one = Real::one(prec);
    if x <= &one {
        return domain("Sasaki-Kanada needs x > 1");
    }
    let q = x.recip()?;
    let (t2, t3) = if x.log2_abs() > sk_threshold(prec.working_bits()) {
        let q4 = q.square().square();
        let q8 = q4.square();
        let q9 = &q8 * &q;
        let q16 = q8.square();
        let q25 = &(&q16 * &q8) * &q;
        let t2 = (&(&q + &q9) + &q25).mul_pow2(1);
        let t3 = &one + &(&q4 + &q16).mul_pow2(1);
        (t2, t3)
    } else {
        let q4 = q.square().square();
        (theta::theta2(&q4)?, theta::theta3(&q4)?)
    };
    let (m, trace) = agm::agm(&t2.square(), &t3.square())?;
    let v = constants::pi(prec).mul_pow2(-2).checked_div(&m)?;
    Ok((v, trace))
}

/// `log(1 + z) = Σ (−1)^(k+1) zᵏ/k` for `|z| < 1/2`.
fn log_taylor(x: &Real) -> Result<Real> {
    let prec = x.precision();
    let z = x - &Real::one(prec);
    if z.is_zero() {
        return Ok(Real::zero(prec));
    }
    if z.log2_abs() >= -1.0 {
        return domain("Taylor branch needs |x - 1| < 1/2");
    }
    let cutoff = z.log2_abs() - prec.working_bits() as f64;
    let mut sum = Real::zero(prec);
    let mut power = z.clone();
    let mut k = 1u64;
    loop {
        let term = power.div_u64(k);
        if term.log2_abs() < cutoff {
            break;
        }
        sum = if k % 2 == 1 {
            &sum + &term
        } else {
            &sum - &term
        };
        power = &power * &z;
        k += 1;
    }
    Ok(sum)
}

/// `log(2^p·x) − p·log 2` for the smallest `p ≥ 0` putting `2^p·x` above
/// `2^threshold`, with precision raised to cover the cancellation.
fn log_reduced(
    x: &Real,
    threshold: impl Fn(u64) -> f64,
    core: fn(&Real) -> Result<Real>,
) -> Result<Real> {
    let prec = x.precision();
    let wb = prec.working_bits();
    let lx = x.log2_abs();
    let p = if lx > threshold(wb) {
        0
    } else {
        (threshold(wb) - lx).floor() as u64 + 1
    };
    if p == 0 {
        return core(x).map(|v| v.with_precision(prec));
    }
    // |log x| estimate, for the cancellation allowance
    let mag = if lx.abs() < 1e-3 {
        (x - &Real::one(prec)).abs().log2_abs()
    } else {
        (lx.abs() * LN_2).log2()
    };
    let cancel = ((p as f64 * LN_2).log2() - mag).max(0.0).ceil() as u64;
    let extra = ceil_log2_f(p as f64) + 4 + cancel;
    let inner = prec.extended(extra);
    let xi = x.with_precision(inner).mul_pow2(p as i64);
    let v = &core(&xi)? - &constants::ln2(inner).mul_u64(p);
    Ok(v.with_precision(prec))
}

/// Natural logarithm of `x > 0` by the chosen method.
pub fn log(x: &Real, method: LogMethod) -> Result<Real> {
    if !x.is_positive() {
        return domain("log needs x > 0");
    }
    let prec = x.precision();
    if x.is_one() {
        return Ok(Real::zero(prec));
    }
    let wb = prec.working_bits();
    match method {
        LogMethod::TaylorNearOne => log_taylor(x),
        LogMethod::Salamin => log_reduced(x, |wb| wb as f64 / 2.0 + 4.0, log_salamin),
        LogMethod::SasakiKanada => log_reduced(x, sk_threshold, log_sasaki_kanada),
        LogMethod::Auto => {
            let z = x - &Real::one(prec);
            if z.log2_abs() < taylor_threshold(wb) {
                log_taylor(x)
            } else {
                log_reduced(x, sk_threshold, log_sasaki_kanada)
            }
        }
    }
}

/// `log x` with [`LogMethod::Auto`].
pub fn ln(x: &Real) -> Result<Real> {
    log(x, LogMethod::Auto)
}

/// `log 2 = SK(2^m)/m` with `m = ceil(wb/36) + 1`; see [`constants::ln2`].
pub(crate) fn ln2_uncached(prec: Precision) -> Real {
    let m = prec.working_bits().div_ceil(36) + 1;
    let x = Real::pow2(m as i64, prec);
    log_sasaki_kanada(&x).expect("2^m > 1").div_u64(m)
}

/// `eˣ` for `|x| ≤ 2^20`, by Newton's iteration `y ← y(1 + x − log y)`
/// with the precision doubling at each step.
pub fn exp(x: &Real) -> Result<Real> {
    let prec = x.precision();
    if x.is_zero() {
        return Ok(Real::one(prec));
    }
    let xf = x.to_f64();
    if !(xf.abs() <= EXP_LIMIT) {
        return Err(Error::Range(format!(
            "exp argument exceeds 2^20 in magnitude (got {xf:e})"
        )));
    }
    let extra = 8 + ceil_log2_f(xf.abs());
    let target = prec.extended(extra);
    let twb = target.working_bits();
    let k = (xf / LN_2).round();
    let seed = (xf - k * LN_2).exp();
    let mut y = Real::from_f64(seed, target)?.mul_pow2(k as i64);
    // the f64 seed may carry as few as ~30 correct bits when |x| is large
    let mut stages = vec![twb];
    while *stages.last().unwrap() > 40 {
        let b = *stages.last().unwrap();
        stages.push(b / 2 + 8);
    }
    for &bits in stages.iter().rev() {
        let stage = if bits == twb {
            target
        } else {
            Precision::from_bits(bits)?.with_guard_bits(64)?
        };
        let ys = y.with_precision(stage);
        let xs = x.with_precision(stage);
        let delta = &xs - &ln(&ys)?;
        y = &ys + &(&ys * &delta);
    }
    Ok(y.with_precision(prec))
}

/// Geometric mean with the principal branch (`Re ≥ 0`, and `Im ≥ 0` on `Re = 0`).
pub fn gm_complex(a: &Complex, b: &Complex) -> Complex {
    (a * b).sqrt()
}

fn check_half_plane(z: &Complex, name: &str) -> Result<()> {
    if z.is_zero() {
        return domain(format!("complex AGM needs {name} != 0"));
    }
    if !z.re.is_positive() {
        return domain(format!("complex AGM needs Re({name}) > 0"));
    }
    Ok(())
}

/// Complex AGM for starting values in the right half-plane.
pub fn agm_complex(a0: &Complex, b0: &Complex) -> Result<Complex> {
    agm_complex_traced(a0, b0).map(|(v, _)| v)
}

/// Complex AGM returning every `(aₙ, bₙ)` pair.
pub fn agm_complex_traced(
    a0: &Complex,
    b0: &Complex,
) -> Result<(Complex, Vec<(Complex, Complex)>)> {
    check_half_plane(a0, "a0")?;
    check_half_plane(b0, "b0")?;
    let wb = a0
        .precision()
        .working_bits()
        .max(b0.precision().working_bits());
    let cap = agm::max_iterations(wb) + 4;
    let mut trace = vec![(a0.clone(), b0.clone())];
    let mut final_step = false;
    while trace.len() <= cap {
        let (a, b) = trace.last().unwrap();
        let gap = (a - b).abs();
        if gap.is_zero() {
            break;
        }
        let rel = gap.log2_abs() - a.abs().log2_abs();
        if rel <= -(wb as f64) {
            break;
        }
        let next_a = (a + b).mul_pow2(-1);
        let next_b = gm_complex(a, b);
        if !next_a.re.is_positive() || !next_b.re.is_positive() {
            return Err(Error::Precision(
                "complex AGM left the right half-plane".into(),
            ));
        }
        trace.push((next_a, next_b));
        if final_step {
            break;
        }
        final_step = rel <= -(wb as f64) / 2.0 + 1.0;
    }
    Ok((trace.last().unwrap().0.clone(), trace))
}

/// Principal logarithm of `z` with `Re z > 0`.
///
/// Two principal square roots bring `|arg|` under `π/8`; scaling by `2^p` then
/// makes `q = 1/(2^p·z^(1/4))` small enough for the truncated theta series,
/// whose squares stay in the right half-plane.
pub fn log_complex(z: &Complex) -> Result<Complex> {
    if !z.re.is_positive() {
        return domain("complex log needs Re(z) > 0");
    }
    let prec = z.precision();
    let wb = prec.working_bits();
    let mag = z.abs().log2_abs() / 4.0;
    let threshold = sk_threshold(wb);
    let p = if mag > threshold {
        0
    } else {
        (threshold - mag).floor() as u64 + 1
    };
    let inner = prec.extended(ceil_log2_f(p as f64) + 8);
    let zi = Complex::new(z.re.with_precision(inner), z.im.with_precision(inner));
    let w = zi.sqrt().sqrt().mul_pow2(p as i64);
    let one = Complex::one(inner);
    let q = one.checked_div(&w)?;
    let q2 = q.square();
    let q4 = q2.square();
    let q8 = q4.square();
    let q9 = &q8 * &q;
    let q16 = q8.square();
    let q25 = &(&q16 * &q8) * &q;
    let t2 = (&(&q + &q9) + &q25).mul_pow2(1);
    let t3 = &one + &(&q4 + &q16).mul_pow2(1);
    let m = agm_complex(&t2.square(), &t3.square())?;
    let pi4 = Complex::from_real(constants::pi(inner).mul_pow2(-2));
    let log_w = &pi4.checked_div(&m)? - &Complex::from_real(constants::ln2(inner).mul_u64(p));
    let v = log_w.mul_pow2(2);
    Ok(Complex::new(
        v.re.with_precision(prec),
        v.im.with_precision(prec),
    ))
}

/// `arctan x = Im log(1 + ix)`, odd by construction.
pub fn arctan(x: &Real) -> Result<Real> {
    let prec = x.precision();
    if x.is_zero() {
        return Ok(Real::zero(prec));
    }
    let wb = prec.working_bits() as f64;
    let lx = x.log2_abs();
    if lx < -wb / 2.0 - 2.0 {
        // x³/3 is below half an ulp of x
        return Ok(x.clone());
    }
    let extra = if lx < 0.0 { (-lx).ceil() as u64 } else { 0 };
    let inner = prec.extended(extra);
    let ax = x.abs().with_precision(inner);
    let z = Complex::new(Real::one(inner), ax);
    let v = log_complex(&z)?.im.with_precision(prec);
    Ok(if x.is_negative() { -v } else { v })
}

/// `arccos x` on `[−1, 1]`, via `arctan(√(1−x²)/x)`.
pub fn arccos(x: &Real) -> Result<Real> {
    let prec = x.precision();
    let one = Real::one(prec);
    if x.abs() > one {
        return domain("arccos needs -1 <= x <= 1");
    }
    if x.is_zero() {
        return Ok(constants::pi(prec).mul_pow2(-1));
    }
    if x.is_negative() {
        return Ok(&constants::pi(prec) - &arccos(&-x)?);
    }
    if x.is_one() {
        return Ok(Real::zero(prec));
    }
    let s = (&(&one - x) * &(&one + x)).sqrt()?;
    arctan(&s.checked_div(x)?)
}
