//! Real arithmetic-geometric mean with trace, complete elliptic integrals,
//! the nome, and the Legendre-relation residual.

use crate::constants;
use crate::elemfn;
use crate::error::{domain, Result};
use crate::mpreal::Real;

/// Extra bits carried inside the elliptic-integral routines.
const ELLIPTIC_GUARD: u64 = 24;

/// Per-iteration record of an AGM run.
///
/// `a[n]`, `b[n]` for `n = 0..=iterations`; `c[n-1]` holds `cₙ = aₙ₋₁ − aₙ`
/// for `n ≥ 1` (there is no `c₀`).
#[derive(Clone, Debug)]
pub struct AgmTrace {
    pub a: Vec<Real>,
    pub b: Vec<Real>,
    pub c: Vec<Real>,
    pub iterations: usize,
}

impl AgmTrace {
    fn start(a0: &Real, b0: &Real) -> Self {
        AgmTrace {
            a: vec![a0.clone()],
            b: vec![b0.clone()],
            c: Vec::new(),
            iterations: 0,
        }
    }

    fn step(&mut self) {
        let a = self.a.last().unwrap();
        let b = self.b.last().unwrap();
        let next_a = (a + b).mul_pow2(-1);
        let next_b = (a * b).sqrt().expect("AGM iterates stay positive");
        self.c.push(a - &next_a);
        self.a.push(next_a);
        self.b.push(next_b);
        self.iterations += 1;
    }

    /// `cₙ` for `n ≥ 1`.
    pub fn c_at(&self, n: usize) -> Option<&Real> {
        n.checked_sub(1).and_then(|i| self.c.get(i))
    }

    pub fn limit(&self) -> &Real {
        self.a.last().unwrap()
    }
}

/// Iteration cap: `3·ceil(log2(working_bits))`.
pub fn max_iterations(working_bits: u64) -> usize {
    3 * (64 - (working_bits.max(2) - 1).leading_zeros()) as usize
}

fn check_positive(x: &Real, name: &str) -> Result<()> {
    if !x.is_positive() {
        return domain(format!("AGM needs {name} > 0"));
    }
    Ok(())
}

/// AGM of two positive reals.
///
/// Iterates until `|aₙ − bₙ| ≤ 2^(−working_bits)·aₙ`. Once the gap is below
/// `2^(−working_bits/2)` one more step reaches that bound in exact arithmetic,
/// so the run stops there rather than chasing rounding noise.
pub fn agm(a0: &Real, b0: &Real) -> Result<(Real, AgmTrace)> {
    check_positive(a0, "a0")?;
    check_positive(b0, "b0")?;
    let wb = a0.working_bits().max(b0.working_bits());
    let cap = max_iterations(wb);
    let mut trace = AgmTrace::start(a0, b0);
    let mut final_step = false;
    while trace.iterations < cap {
        let a = trace.a.last().unwrap();
        let b = trace.b.last().unwrap();
        let gap = (a - b).abs();
        if gap.is_zero() {
            break;
        }
        let rel = gap.log2_abs() - a.log2_abs();
        if rel <= -(wb as f64) {
            break;
        }
        trace.step();
        if final_step {
            break;
        }
        final_step = rel <= -(wb as f64) / 2.0 + 1.0;
    }
    Ok((trace.limit().clone(), trace))
}

/// Exactly `steps` AGM iterations, with no stopping rule.
pub fn agm_steps(a0: &Real, b0: &Real, steps: usize) -> Result<AgmTrace> {
    check_positive(a0, "a0")?;
    check_positive(b0, "b0")?;
    let mut trace = AgmTrace::start(a0, b0);
    for _ in 0..steps {
        trace.step();
    }
    Ok(trace)
}

fn check_modulus(k: &Real) -> Result<()> {
    let one = Real::one(k.precision());
    if !k.is_positive() || k >= &one {
        return domain("modulus k must satisfy 0 < k < 1");
    }
    Ok(())
}

fn complementary(k: &Real) -> Result<Real> {
    (&Real::one(k.precision()) - &k.square()).sqrt()
}

/// `(K(k), E(k))` at the precision of `k` from a single AGM run.
fn elliptic_pair(k: &Real) -> Result<(Real, Real)> {
    check_modulus(k)?;
    let prec = k.precision();
    let inner = prec.extended(ELLIPTIC_GUARD);
    let k = k.with_precision(inner);
    let one = Real::one(inner);
    let kp = complementary(&k)?;
    let (limit, trace) = agm(&one, &kp)?;
    let pi = constants::pi(inner);
    let big_k = pi.checked_div(&limit.mul_pow2(1))?;
    let mut sum = Real::zero(inner);
    for (n, c) in trace.c.iter().enumerate() {
        let term = c.square().mul_pow2(n as i64);
        if term.log2_abs() < -(inner.working_bits() as f64) {
            break;
        }
        sum = &sum + &term;
    }
    let ratio = &(&one - &k.square().mul_pow2(-1)) - &sum;
    let big_e = &big_k * &ratio;
    Ok((big_k.with_precision(prec), big_e.with_precision(prec)))
}

/// Complete elliptic integral of the first kind, `K(k) = π / (2·AGM(1, k′))`.
pub fn elliptic_k(k: &Real) -> Result<Real> {
    elliptic_pair(k).map(|(big_k, _)| big_k)
}

/// Complete elliptic integral of the second kind via the AGM `c` sequence.
pub fn elliptic_e(k: &Real) -> Result<Real> {
    elliptic_pair(k).map(|(_, big_e)| big_e)
}

/// `E·K′ + E′·K − K·K′ − π/2`, zero in exact arithmetic.
pub fn legendre_residual(k: &Real) -> Result<Real> {
    check_modulus(k)?;
    let kp = complementary(k)?;
    let (big_k, big_e) = elliptic_pair(k)?;
    let (big_kp, big_ep) = elliptic_pair(&kp)?;
    let half_pi = constants::pi(k.precision()).mul_pow2(-1);
    let lhs = &(&(&big_e * &big_kp) + &(&big_ep * &big_k)) - &(&big_k * &big_kp);
    Ok(&lhs - &half_pi)
}

/// The nome `q = exp(−π·K′(k)/K(k))`.
pub fn nome(k: &Real) -> Result<Real> {
    check_modulus(k)?;
    let prec = k.precision();
    let inner = prec.extended(ELLIPTIC_GUARD);
    let k = k.with_precision(inner);
    let big_k = elliptic_k(&k)?;
    let big_kp = elliptic_k(&complementary(&k)?)?;
    let pi = constants::pi(inner);
    let arg = -(&pi * &big_kp.checked_div(&big_k)?);
    Ok(elemfn::exp(&arg)?.with_precision(prec))
}

/// Terms `cₙ zⁿ` of `F(½,½;1;z)` for `n < terms`, `cₙ = ((½)ₙ/n!)²`.
pub fn hyper_f_half_terms(z: &Real, terms: usize) -> Vec<Real> {
    let mut out = Vec::with_capacity(terms);
    let mut term = Real::one(z.precision());
    for n in 0..terms as u64 {
        out.push(term.clone());
        // ((n + ½)/(n + 1))² = ((2n + 1)/(2n + 2))²
        term = (&term * z)
            .mul_u64((2 * n + 1) * (2 * n + 1))
            .div_u64((2 * n + 2) * (2 * n + 2));
    }
    out
}

/// Truncated Gaussian hypergeometric series `F(½,½;1;z)`; an independent check on [`elliptic_k`].
pub fn hyper_f_half(z: &Real, terms: usize) -> Real {
    hyper_f_half_terms(z, terms)
        .iter()
        .fold(Real::zero(z.precision()), |acc, t| &acc + t)
}
