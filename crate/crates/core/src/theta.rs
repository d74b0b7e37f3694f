//! Jacobi theta functions θ₂, θ₃, θ₄ of the nome, and the theta
//! parameterisation of the AGM.

use crate::agm::agm_steps;
use crate::error::{domain, Result};
use crate::mpreal::Real;

/// Extra bits carried while summing a series.
const SERIES_GUARD: u64 = 16;

/// A theta value together with the number of series terms it took.
#[derive(Clone, Debug)]
pub struct ThetaValue {
    pub value: Real,
    pub q: Real,
    pub terms_used: usize,
}

fn check_nome(q: &Real) -> Result<()> {
    if q.is_negative() || q >= &Real::one(q.precision()) {
        return domain("nome q must satisfy 0 <= q < 1");
    }
    Ok(())
}

/// Sums `Σ_{n≥0} sign(n)·t(n)` where `t(0) = first`, `t(n+1) = t(n)·f(n)`,
/// `f(0) = step`, `f(n+1) = f(n)·q²`. With `alternate`, terms are taken in
/// pairs `t(2m)·(1 − f(2m))`.
fn sum_gaussian(first: Real, step: Real, q2: &Real, alternate: bool) -> (Real, usize) {
    let prec = first.precision();
    let cutoff = -(prec.working_bits() as f64);
    let one = Real::one(prec);
    let mut sum = Real::zero(prec);
    let mut term = first;
    let mut factor = step;
    let mut terms = 0;
    loop {
        if term.is_zero() || term.log2_abs() < cutoff {
            break;
        }
        if alternate {
            let pair = &term * &(&one - &factor);
            sum = &sum + &pair;
            term = &term * &factor;
            factor = &factor * q2;
            term = &term * &factor;
            factor = &factor * q2;
            terms += 2;
        } else {
            sum = &sum + &term;
            term = &term * &factor;
            factor = &factor * q2;
            terms += 1;
        }
    }
    (sum, terms)
}

/// `θ₂(q) = 2q^{1/4}·Σ_{n≥0} q^{n(n+1)}`.
pub fn theta2_value(q: &Real) -> Result<ThetaValue> {
    check_nome(q)?;
    let prec = q.precision();
    if q.is_zero() {
        return Ok(ThetaValue {
            value: Real::zero(prec),
            q: q.clone(),
            terms_used: 0,
        });
    }
    let inner = prec.extended(SERIES_GUARD);
    let qi = q.with_precision(inner);
    let q2 = qi.square();
    let (sum, terms) = sum_gaussian(Real::one(inner), q2.clone(), &q2, false);
    let value = (&sum * &qi.fourth_root()?).mul_pow2(1);
    Ok(ThetaValue {
        value: value.with_precision(prec),
        q: q.clone(),
        terms_used: terms,
    })
}

fn theta34_value(q: &Real, alternate: bool) -> Result<ThetaValue> {
    check_nome(q)?;
    let prec = q.precision();
    let inner = prec.extended(SERIES_GUARD);
    let qi = q.with_precision(inner);
    let q2 = qi.square();
    let step = &qi * &q2;
    let (sum, terms) = sum_gaussian(qi, step, &q2, alternate);
    let one = Real::one(inner);
    let value = if alternate {
        &one - &sum.mul_pow2(1)
    } else {
        &one + &sum.mul_pow2(1)
    };
    Ok(ThetaValue {
        value: value.with_precision(prec),
        q: q.clone(),
        terms_used: terms,
    })
}

/// `θ₃(q) = 1 + 2Σ_{n≥1} q^{n²}`.
pub fn theta3_value(q: &Real) -> Result<ThetaValue> {
    theta34_value(q, false)
}

/// `θ₄(q) = 1 + 2Σ_{n≥1} (−1)ⁿq^{n²}`, summed in pairs.
pub fn theta4_value(q: &Real) -> Result<ThetaValue> {
    theta34_value(q, true)
}

pub fn theta2(q: &Real) -> Result<Real> {
    theta2_value(q).map(|t| t.value)
}

pub fn theta3(q: &Real) -> Result<Real> {
    theta3_value(q).map(|t| t.value)
}

pub fn theta4(q: &Real) -> Result<Real> {
    theta4_value(q).map(|t| t.value)
}

/// Jacobi's identities as residuals:
/// `θ₃²(q) − θ₂²(q²) − θ₃²(q²)` and `θ₃⁴(q) − θ₂⁴(q) − θ₄⁴(q)`.
pub fn jacobi_residuals(q: &Real) -> Result<(Real, Real)> {
    check_nome(q)?;
    let t2 = theta2(q)?.square();
    let t3 = theta3(q)?.square();
    let t4 = theta4(q)?.square();
    let q2 = q.square();
    let r1 = &(&t3 - &theta2(&q2)?.square()) - &theta3(&q2)?.square();
    let r2 = &(&t3.square() - &t2.square()) - &t4.square();
    Ok((r1, r2))
}

/// Largest deviation of the AGM started at `(1, θ₄²(q)/θ₃²(q))` from its
/// theta parameterisation `aₘ = θ₃²(q^{2^m})/θ₃²(q)`, `bₘ = θ₄²(q^{2^m})/θ₃²(q)`,
/// `cₘ = θ₂²(q^{2^m})/θ₃²(q)`, over `m ≤ n`.
pub fn agm_theta_check(q: &Real, n: usize) -> Result<Real> {
    check_nome(q)?;
    let prec = q.precision();
    if q.is_zero() {
        return domain("nome q must be positive");
    }
    let t3 = theta3(q)?.square();
    let b0 = theta4(q)?.square().checked_div(&t3)?;
    let trace = agm_steps(&Real::one(prec), &b0, n)?;
    let mut worst = Real::zero(prec);
    let mut qm = q.clone();
    for m in 0..=n {
        if m > 0 {
            qm = qm.square();
        }
        let a = theta3(&qm)?.square().checked_div(&t3)?;
        let b = theta4(&qm)?.square().checked_div(&t3)?;
        let mut devs = vec![(&trace.a[m] - &a).abs(), (&trace.b[m] - &b).abs()];
        if let Some(c_m) = trace.c_at(m) {
            let c = theta2(&qm)?.square().checked_div(&t3)?;
            devs.push((c_m - &c).abs());
        }
        for d in devs {
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(worst)
}
