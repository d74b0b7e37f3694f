//! AGM-based iterations for π: Gauss–Legendre (GL and its lower-bound
//! variant GL1), the quadratic BB1 and BB2 and the quartic BB4, their
//! error bounds, and cross-checks between them.

use num_bigint::BigInt;

use crate::constants;
use crate::error::{domain, Error, Result};
use crate::mpreal::{Precision, Real};

/// One output of a π iteration.
#[derive(Clone, Debug)]
pub struct PiIterate {
    pub n: usize,
    pub lower: Option<Real>,
    pub upper: Option<Real>,
    pub point: Option<Real>,
}

impl PiIterate {
    /// The single best approximation this iterate carries.
    pub fn value(&self) -> &Real {
        self.point
            .as_ref()
            .or(self.lower.as_ref())
            .or(self.upper.as_ref())
            .expect("iterate carries a value")
    }
}

/// Full-precision square roots and divisions performed by a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub sqrt: usize,
    pub div: usize,
}

#[derive(Clone, Debug)]
pub struct GlState {
    pub a: Vec<Real>,
    pub b: Vec<Real>,
    /// `c[i]` is `c_{i+1}`.
    pub c: Vec<Real>,
    pub s: Vec<Real>,
}

#[derive(Clone, Debug)]
pub struct Bb2State {
    pub k: Vec<Real>,
    pub alpha: Vec<Real>,
}

#[derive(Clone, Debug)]
pub struct Bb4State {
    pub y: Vec<Real>,
    pub z: Vec<Real>,
}

#[derive(Clone, Debug)]
pub struct PiRun<S> {
    pub iterates: Vec<PiIterate>,
    pub state: S,
    pub ops: OpCounts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Gl,
    Gl1,
    Bb1,
    Bb2,
    Bb4,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Gl,
        Algorithm::Gl1,
        Algorithm::Bb1,
        Algorithm::Bb2,
        Algorithm::Bb4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gl => "gl",
            Algorithm::Gl1 => "gl1",
            Algorithm::Bb1 => "bb1",
            Algorithm::Bb2 => "bb2",
            Algorithm::Bb4 => "bb4",
        }
    }

    /// `ceil(log2 bits)` iterations, halved for the quartic algorithm.
    pub fn default_iterations(self, bits: u64) -> usize {
        let n = ceil_log2(bits).max(1);
        match self {
            Algorithm::Bb4 => n.div_ceil(2),
            _ => n,
        }
    }

    /// Runs the algorithm, returning its iterates and operation counts.
    pub fn run(self, n_max: usize, prec: Precision) -> Result<(Vec<PiIterate>, OpCounts)> {
        Ok(match self {
            Algorithm::Gl => {
                let r = gl_run(n_max, prec, Emit::Both)?;
                (r.iterates, r.ops)
            }
            Algorithm::Gl1 => {
                let r = gl_run(n_max, prec, Emit::Lower)?;
                (r.iterates, r.ops)
            }
            Algorithm::Bb1 => {
                let r = bb1_run(n_max, prec)?;
                (r.iterates, r.ops)
            }
            Algorithm::Bb2 => {
                let r = bb2_run(n_max, prec)?;
                (r.iterates, r.ops)
            }
            Algorithm::Bb4 => {
                let r = bb4_run(n_max, prec)?;
                (r.iterates, r.ops)
            }
        })
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown algorithm {s:?}")))
    }
}

fn ceil_log2(x: u64) -> usize {
    (64 - x.max(2).saturating_sub(1).leading_zeros()) as usize
}

fn check_iterations(n_max: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::Usage("need at least one iteration".into()));
    }
    Ok(())
}

fn exhausted(what: &str, n: usize) -> Error {
    Error::Precision(format!(
        "{what} lost positivity at n = {n}; raise the precision"
    ))
}

fn recip_positive(x: &Real, what: &str, n: usize) -> Result<Real> {
    if !x.is_positive() {
        return Err(exhausted(what, n));
    }
    x.recip()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Emit {
    Both,
    Lower,
    /// Only the lower bound of the final iteration.
    FinalLower,
}

fn gl_run(n_max: usize, prec: Precision, emit: Emit) -> Result<PiRun<GlState>> {
    check_iterations(n_max)?;
    let mut ops = OpCounts::default();
    let b0 = Real::from_ratio(1, 2, prec)?.sqrt()?;
    ops.sqrt += 1;
    let mut st = GlState {
        a: vec![Real::one(prec)],
        b: vec![b0],
        c: Vec::with_capacity(n_max),
        s: vec![Real::from_ratio(1, 4, prec)?],
    };
    let mut iterates = Vec::new();
    for n in 0..n_max {
        let a = &st.a[n];
        let b = &st.b[n];
        let s = &st.s[n];
        let a_next = (a + b).mul_pow2(-1);
        let c_next = a - &a_next;
        let wanted = match emit {
            Emit::FinalLower => n == n_max - 1,
            _ => true,
        };
        if wanted {
            let inv = recip_positive(s, "s", n)?;
            ops.div += 1;
            let lower = &a_next.square() * &inv;
            let (upper, point) = match emit {
                Emit::Both => (Some(&a.square() * &inv), None),
                _ => (None, Some(lower.clone())),
            };
            iterates.push(PiIterate {
                n,
                lower: Some(lower),
                upper,
                point,
            });
        }
        if n < n_max - 1 {
            let b_next = (a * b).sqrt()?;
            ops.sqrt += 1;
            let s_next = s - &c_next.square().mul_pow2(n as i64);
            st.b.push(b_next);
            st.s.push(s_next);
        }
        st.a.push(a_next);
        st.c.push(c_next);
    }
    Ok(PiRun {
        iterates,
        state: st,
        ops,
    })
}

/// Algorithm GL: intervals `(a_{n+1}²/sₙ, aₙ²/sₙ)` for `n < n_max`.
pub fn gl_iterate(n_max: usize, prec: Precision) -> Result<Vec<PiIterate>> {
    Ok(gl_run(n_max, prec, Emit::Both)?.iterates)
}

/// Algorithm GL1: lower bounds `a_{n+1}²/sₙ` only.
pub fn gl1_iterate(n_max: usize, prec: Precision) -> Result<Vec<PiIterate>> {
    Ok(gl_run(n_max, prec, Emit::Lower)?.iterates)
}

/// GL with full state, one reciprocal per emitted output.
pub fn gl_trace(n_max: usize, prec: Precision) -> Result<PiRun<GlState>> {
    gl_run(n_max, prec, Emit::Both)
}

/// Fewest GL iterations whose lower-bound error falls below `2^(−bits)`.
pub fn gl_iterations_needed(bits: u64) -> usize {
    let log2_q = -std::f64::consts::PI * std::f64::consts::LOG2_E;
    let mut n = 0usize;
    loop {
        // log2 of (2^(n+4)π² − 8π)·q^(2^(n+1)), slightly overestimated
        let log2_err = (n + 4) as f64 + 3.31 + log2_q * 2f64.powi(n as i32 + 1);
        if log2_err < -(bits as f64) - 2.0 {
            return n + 1;
        }
        n += 1;
    }
}

/// π at the working precision of `prec`, running GL1 and dividing once.
pub fn gl_pi(prec: Precision) -> Real {
    let n_max = gl_iterations_needed(prec.working_bits());
    let run = gl_run(n_max, prec, Emit::FinalLower).expect("GL at working precision");
    run.iterates[0].value().clone()
}

/// `q^(2^m)` for `q = e^(−π)`.
fn q_pow2(m: u32, prec: Precision) -> Real {
    let mut q = constants::exp_minus_pi(prec);
    for _ in 0..m {
        q = q.square();
    }
    q
}

/// GL error bounds `U(n) = 8π·q^(2ⁿ)` and `L(n) = (2^(n+4)π² − 8π)·q^(2^(n+1))`.
pub fn gl_bounds(n: u32, prec: Precision) -> (Real, Real) {
    let pi = constants::pi(prec);
    let qn = q_pow2(n, prec);
    let qn1 = qn.square();
    let u = pi.mul_u64(8) * qn;
    let l = &(&pi.square().mul_pow2(n as i64 + 4) - &pi.mul_u64(8)) * &qn1;
    (u, l)
}

fn bb1_run(n_max: usize, prec: Precision) -> Result<PiRun<Vec<(Real, Real)>>> {
    check_iterations(n_max)?;
    let mut ops = OpCounts::default();
    let one = Real::one(prec);
    let x0 = Real::from_i64(2, prec).sqrt()?;
    ops.sqrt += 1;
    let mut iterates = vec![PiIterate {
        n: 0,
        lower: Some(x0.clone()),
        upper: Some(&x0 + &Real::from_i64(2, prec)),
        point: None,
    }];
    // (x_n, y_n) pairs, starting at n = 1
    let mut xy = Vec::new();
    if n_max > 1 {
        let isx = x0.inv_sqrt()?;
        let sx = &x0 * &isx;
        ops.sqrt += 1;
        xy.push(((&sx + &isx).mul_pow2(-1), sx));
    }
    for n in 1..n_max {
        let (x, y) = xy[n - 1].clone();
        let prev_upper = iterates[n - 1].upper.clone().unwrap();
        let lower = prev_upper.mul_pow2(1).checked_div(&(&y + &one))?;
        ops.div += 1;
        let upper = (&lower * &(&x + &one)).mul_pow2(-1);
        if !lower.is_positive() {
            return Err(exhausted("lower bound", n));
        }
        iterates.push(PiIterate {
            n,
            lower: Some(lower),
            upper: Some(upper),
            point: None,
        });
        if n < n_max - 1 {
            let isx = x.inv_sqrt()?;
            let sx = &x * &isx;
            ops.sqrt += 1;
            let x_next = (&sx + &isx).mul_pow2(-1);
            let y_next = (&(&y * &sx) + &isx).checked_div(&(&y + &one))?;
            ops.div += 1;
            xy.push((x_next, y_next));
        }
    }
    Ok(PiRun {
        iterates,
        state: xy,
        ops,
    })
}

/// Algorithm BB1: intervals `(π̲ₙ, π̄ₙ)` for `n < n_max`.
pub fn bb1_iterate(n_max: usize, prec: Precision) -> Result<Vec<PiIterate>> {
    Ok(bb1_run(n_max, prec)?.iterates)
}

/// BB1 together with its `(xₙ, yₙ)` sequence from `n = 1`.
pub fn bb1_trace(n_max: usize, prec: Precision) -> Result<PiRun<Vec<(Real, Real)>>> {
    bb1_run(n_max, prec)
}

/// BB1 error bounds `U(n) = 2^(n+4)π²·q^(2^(n+1))` on `π̄ₙ − π` and
/// `L(n) = 4π·q^(2ⁿ)` on `π − π̲ₙ`, for `n ≥ 1`.
pub fn bb1_bounds(n: u32, prec: Precision) -> Result<(Real, Real)> {
    if n == 0 {
        return domain("BB1 bounds hold for n >= 1");
    }
    let pi = constants::pi(prec);
    let qn = q_pow2(n, prec);
    let qn1 = qn.square();
    let u = &pi.square().mul_pow2(n as i64 + 4) * &qn1;
    let l = &pi.mul_u64(4) * &qn;
    Ok((u, l))
}

fn bb2_run(n_max: usize, prec: Precision) -> Result<PiRun<Bb2State>> {
    check_iterations(n_max)?;
    let mut ops = OpCounts::default();
    let one = Real::one(prec);
    let r2 = Real::from_i64(2, prec).sqrt()?;
    ops.sqrt += 1;
    let mut st = Bb2State {
        k: vec![&Real::from_i64(3, prec) - &r2.mul_pow2(1)],
        alpha: vec![&Real::from_i64(6, prec) - &r2.mul_pow2(2)],
    };
    let mut iterates = Vec::new();
    for n in 0..n_max {
        let alpha = &st.alpha[n];
        let point = recip_positive(alpha, "alpha", n)?;
        ops.div += 1;
        iterates.push(PiIterate {
            n,
            lower: None,
            upper: None,
            point: Some(point),
        });
        if n < n_max - 1 {
            let k = &st.k[n];
            let k2 = k.square();
            let kp = (&one - &k2).sqrt()?;
            ops.sqrt += 1;
            // (1 − k′)/(1 + k′) = k²/(1 + k′)², free of cancellation
            let k_next = k2.checked_div(&(&one + &kp).square())?;
            ops.div += 1;
            let alpha_next = &(&(&one + &k_next).square() * alpha) - &k_next.mul_pow2(n as i64 + 2);
            st.k.push(k_next);
            st.alpha.push(alpha_next);
        }
    }
    Ok(PiRun {
        iterates,
        state: st,
        ops,
    })
}

/// Algorithm BB2: `π̂ₙ = 1/αₙ` for `n < n_max`.
pub fn bb2_iterate(n_max: usize, prec: Precision) -> Result<Vec<PiIterate>> {
    Ok(bb2_run(n_max, prec)?.iterates)
}

pub fn bb2_trace(n_max: usize, prec: Precision) -> Result<PiRun<Bb2State>> {
    bb2_run(n_max, prec)
}

fn bb4_run(n_max: usize, prec: Precision) -> Result<PiRun<Bb4State>> {
    check_iterations(n_max)?;
    let mut ops = OpCounts::default();
    let one = Real::one(prec);
    let y0 = &Real::from_i64(2, prec).sqrt()? - &one;
    ops.sqrt += 1;
    let z0 = y0.square().mul_pow2(1);
    let mut st = Bb4State {
        y: vec![y0],
        z: vec![z0],
    };
    let mut iterates = Vec::new();
    for n in 0..n_max {
        let z = &st.z[n];
        let point = recip_positive(z, "z", n)?;
        ops.div += 1;
        iterates.push(PiIterate {
            n,
            lower: None,
            upper: None,
            point: Some(point),
        });
        if n < n_max - 1 {
            let y4 = st.y[n].square().square();
            let r = (&one - &y4).fourth_root()?;
            ops.sqrt += 2;
            // (1 − r)/(1 + r) = y⁴/((1 + r)²(1 + r²)), free of cancellation
            let den = &(&one + &r).square() * &(&one + &r.square());
            let y = y4.checked_div(&den)?;
            ops.div += 1;
            let y1 = &one + &y;
            let poly = &y1 + &y.square();
            let z_next = &(z * &y1.square().square()) - &(&y * &poly).mul_pow2(2 * n as i64 + 3);
            st.y.push(y);
            st.z.push(z_next);
        }
    }
    Ok(PiRun {
        iterates,
        state: st,
        ops,
    })
}

/// Algorithm BB4: `πₙ = 1/zₙ` for `n < n_max`.
pub fn bb4_iterate(n_max: usize, prec: Precision) -> Result<Vec<PiIterate>> {
    Ok(bb4_run(n_max, prec)?.iterates)
}

pub fn bb4_trace(n_max: usize, prec: Precision) -> Result<PiRun<Bb4State>> {
    bb4_run(n_max, prec)
}

/// BB4 error bound `π²·4^(n+2)·exp(−2π·4ⁿ)`.
pub fn bb4_bound(n: u32, prec: Precision) -> Real {
    let pi = constants::pi(prec);
    &pi.square().mul_pow2(2 * n as i64 + 4) * &q_pow2(2 * n + 1, prec)
}

/// Result of comparing BB2 with GL1.
#[derive(Clone, Debug)]
pub struct Bb2Equivalence {
    /// `max |π̂ₙ − a_{n+1}²/sₙ|`.
    pub max_deviation: Real,
    /// `max |kₙ − c_{n+1}/a_{n+1}|`.
    pub k_residual: Real,
    /// `max |sₙ − a_{n+1}²αₙ|`.
    pub s_residual: Real,
    /// `a₁²α₀`, which equals `s₀ = 1/4`.
    pub beta0: Real,
}

fn max_abs(values: impl IntoIterator<Item = Real>, prec: Precision) -> Real {
    values
        .into_iter()
        .map(|v| v.abs())
        .fold(Real::zero(prec), |m, v| if v > m { v } else { m })
}

/// Checks `π̂ₙ = a_{n+1}²/sₙ` for `n < n_max` together with the intermediate
/// identities `kₙ = c_{n+1}/a_{n+1}` and `sₙ = a_{n+1}²αₙ`.
pub fn check_equiv_bb2_gl1(n_max: usize, prec: Precision) -> Result<Bb2Equivalence> {
    let gl = gl_run(n_max, prec, Emit::Lower)?;
    let bb2 = bb2_run(n_max, prec)?;
    let gs = &gl.state;
    let bs = &bb2.state;
    let max_deviation = max_abs(
        (0..n_max).map(|n| bb2.iterates[n].value() - gl.iterates[n].value()),
        prec,
    );
    let k_residual = max_abs(
        (0..bs.k.len().min(n_max)).map(|n| &bs.k[n] - &gs.c[n].checked_div(&gs.a[n + 1]).unwrap()),
        prec,
    );
    let s_residual = max_abs(
        (0..gs.s.len().min(n_max)).map(|n| &gs.s[n] - &(&gs.a[n + 1].square() * &bs.alpha[n])),
        prec,
    );
    let beta0 = &gs.a[1].square() * &bs.alpha[0];
    Ok(Bb2Equivalence {
        max_deviation,
        k_residual,
        s_residual,
        beta0,
    })
}

/// Result of comparing BB4 with GL1 doubled.
#[derive(Clone, Debug)]
pub struct Bb4Equivalence {
    /// `max |πₙ − a_{2n+1}²/s_{2n}|`.
    pub max_deviation: Real,
    /// `max |πₙ − π̂_{2n}|`.
    pub bb2_doubled_deviation: Real,
}

/// Checks `πₙ = a_{2n+1}²/s_{2n}` and `πₙ = π̂_{2n}` for `n < n_max`.
pub fn check_equiv_bb4_gl1_doubled(n_max: usize, prec: Precision) -> Result<Bb4Equivalence> {
    check_iterations(n_max)?;
    let inner = 2 * n_max - 1;
    let gl = gl1_iterate(inner, prec)?;
    let bb2 = bb2_iterate(inner, prec)?;
    let bb4 = bb4_iterate(n_max, prec)?;
    let max_deviation = max_abs((0..n_max).map(|n| bb4[n].value() - gl[2 * n].value()), prec);
    let bb2_doubled_deviation = max_abs(
        (0..n_max).map(|n| bb4[n].value() - bb2[2 * n].value()),
        prec,
    );
    Ok(Bb4Equivalence {
        max_deviation,
        bb2_doubled_deviation,
    })
}

/// Coefficients of the degree-8 minimal polynomial shared by `a₃²/s₂` and `π₁`,
/// constant term first.
pub const MINPOLY: [i64; 9] = [
    1,
    -1_635_840_576,
    -343_853_312,
    60_576_043_008,
    1_865_242_664_960,
    -16_779_556_159_488,
    37_529_045_696_512,
    -29_726_424_956_928,
    6_181_548_457_984,
];

/// Evaluates the minimal polynomial at a real point by Horner's rule.
pub fn minpoly_eval(x: &Real) -> Real {
    MINPOLY
        .iter()
        .rev()
        .fold(Real::zero(x.precision()), |acc, &c| {
            &(&acc * x) + &Real::from_i64(c, x.precision())
        })
}

/// Evaluates the minimal polynomial exactly at an integer.
pub fn minpoly_eval_int(x: i64) -> BigInt {
    let x = BigInt::from(x);
    MINPOLY
        .iter()
        .rev()
        .fold(BigInt::from(0), |acc, &c| acc * &x + BigInt::from(c))
}

/// Whether the polynomial changes sign on `[lo, hi]`, evaluated exactly.
pub fn minpoly_sign_change(lo: i64, hi: i64) -> bool {
    let a = minpoly_eval_int(lo);
    let b = minpoly_eval_int(hi);
    a.sign() != b.sign() && a.sign() != num_bigint::Sign::NoSign
}

/// `a₃²/s₂` from its closed form in `t = 2^(−1/4)`.
pub fn a3_squared_over_s2(prec: Precision) -> Result<Real> {
    let one = Real::one(prec);
    let t = Real::from_ratio(1, 2, prec)?.fourth_root()?;
    let t2 = t.square();
    let t3 = &t2 * &t;
    let root = (&t3.mul_pow2(1) + &t.mul_pow2(1)).sqrt()?;
    let num = &(&(&(&t2 + &t.mul_pow2(1)) + &one) + &root.mul_pow2(1));
    let den = &(&(&t3.mul_u64(8) - &t2.mul_u64(4)) + &t.mul_u64(8)) - &Real::from_i64(5, prec);
    num.square().checked_div(&den.mul_pow2(2))
}

/// `π₁` from its closed form via `y₁`.
pub fn pi1_closed_form(prec: Precision) -> Result<Real> {
    let one = Real::one(prec);
    let r2 = Real::from_i64(2, prec).sqrt()?;
    let w = (&r2.mul_u64(12) - &Real::from_i64(16, prec)).fourth_root()?;
    let y = (&one - &w).checked_div(&(&one + &w))?;
    let y2 = y.square();
    let alpha0 = &Real::from_i64(6, prec) - &r2.mul_pow2(2);
    let den = &(&alpha0 * &(&one + &y).square().square()) - &(&(&y + &y2) + &(&y2 * &y)).mul_u64(8);
    den.recip()
}

#[derive(Clone, Debug)]
pub struct MinpolyReport {
    pub a3_s2: Real,
    pub pi1: Real,
    /// `P(a₃²/s₂)`.
    pub r1: Real,
    /// `P(π₁)`.
    pub r2: Real,
    /// `|a₃²/s₂ − π₁|`.
    pub gap: Real,
}

pub fn minpoly_residual(prec: Precision) -> Result<MinpolyReport> {
    let a3_s2 = a3_squared_over_s2(prec)?;
    let pi1 = pi1_closed_form(prec)?;
    Ok(MinpolyReport {
        r1: minpoly_eval(&a3_s2),
        r2: minpoly_eval(&pi1),
        gap: (&a3_s2 - &pi1).abs(),
        a3_s2,
        pi1,
    })
}

/// Order estimate `log|e_{n+1}|/log|eₙ|` from the last two errors.
pub fn empirical_order(errors: &[Real]) -> Result<f64> {
    if errors.len() < 3 {
        return domain("need at least three errors");
    }
    if errors.iter().any(|e| !e.is_positive()) {
        return domain("errors must be positive");
    }
    if errors.windows(2).any(|w| w[1] >= w[0]) {
        return domain("errors must be strictly decreasing");
    }
    let n = errors.len();
    Ok(errors[n - 1].log2_abs() / errors[n - 2].log2_abs())
}

/// Ostrowski's efficiency index `log(order)/work`.
pub fn efficiency_index(order: f64, work: f64) -> Result<f64> {
    if !(order > 1.0) || !(work > 0.0) {
        return domain("efficiency index needs order > 1 and work > 0");
    }
    Ok(order.ln() / work)
}
