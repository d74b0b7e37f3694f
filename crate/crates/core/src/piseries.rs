//! Linearly convergent series for π: Madhava's arctan series, Ramanujan's
//! 99⁴ series, and the Chudnovsky series by binary splitting.

use num_bigint::BigInt;
use num_traits::One;

use crate::constants;
use crate::error::{domain, Error, Result};
use crate::mpreal::{Precision, Real};

/// Ranges shorter than this are split on the current thread.
const PARALLEL_CUTOFF: u64 = 256;

/// `640320³/24`.
fn chudnovsky_q_factor() -> BigInt {
    BigInt::from(640_320u64).pow(3) / 24u32
}

/// Binary-splitting node for `Σ a(n)·Π_{k≤n} p(k)/q(k)` over `lo..hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitNode {
    pub p: BigInt,
    pub q: BigInt,
    pub t: BigInt,
    pub range: (u64, u64),
}

impl SplitNode {
    /// Identity element for the empty range `at..at`.
    pub fn empty(at: u64) -> Self {
        SplitNode {
            p: BigInt::one(),
            q: BigInt::one(),
            t: BigInt::from(0),
            range: (at, at),
        }
    }
}

fn chudnovsky_a(n: u64) -> BigInt {
    BigInt::from(13_591_409u64) + BigInt::from(545_140_134u64) * n
}

/// Leaf for Chudnovsky term `n`: `p = −(6n−5)(2n−1)(6n−1)`, `q = n³·640320³/24`,
/// `t = a(n)·p`; term 0 is `(1, 1, a(0))`.
pub fn split_leaf(n: u64) -> SplitNode {
    if n == 0 {
        return SplitNode {
            p: BigInt::one(),
            q: BigInt::one(),
            t: chudnovsky_a(0),
            range: (0, 1),
        };
    }
    let p = -(BigInt::from(6 * n - 5) * (2 * n - 1) * (6 * n - 1));
    let q = BigInt::from(n).pow(3) * chudnovsky_q_factor();
    let t = &p * chudnovsky_a(n);
    SplitNode {
        p,
        q,
        t,
        range: (n, n + 1),
    }
}

/// Joins adjacent nodes: `P = PₗPᵣ`, `Q = QₗQᵣ`, `T = TₗQᵣ + PₗTᵣ`.
pub fn split_combine(l: &SplitNode, r: &SplitNode) -> Result<SplitNode> {
    if l.range.1 != r.range.0 {
        return Err(Error::Usage(format!(
            "cannot combine non-adjacent ranges {:?} and {:?}",
            l.range, r.range
        )));
    }
    Ok(SplitNode {
        p: &l.p * &r.p,
        q: &l.q * &r.q,
        t: &l.t * &r.q + &l.p * &r.t,
        range: (l.range.0, r.range.1),
    })
}

/// Node for terms `lo..hi`, halving recursively and forking large halves.
pub fn split_range(lo: u64, hi: u64) -> SplitNode {
    match hi.saturating_sub(lo) {
        0 => SplitNode::empty(lo),
        1 => split_leaf(lo),
        len => {
            let mid = lo + len / 2;
            let (l, r) = if len >= PARALLEL_CUTOFF {
                rayon::join(|| split_range(lo, mid), || split_range(mid, hi))
            } else {
                (split_range(lo, mid), split_range(mid, hi))
            };
            split_combine(&l, &r).expect("halves are adjacent")
        }
    }
}

/// Madhava's series `2√3·Σ_{j<terms} (−1)ʲ/((2j+1)3ʲ)`.
pub fn madhava_pi(terms: usize, prec: Precision) -> Result<Real> {
    if terms == 0 {
        return domain("need at least one term");
    }
    let mut sum = Real::zero(prec);
    let mut power = Real::one(prec);
    for j in 0..terms as u64 {
        let term = power.div_u64(2 * j + 1);
        sum = if j % 2 == 0 {
            &sum + &term
        } else {
            &sum - &term
        };
        power = power.div_u64(3);
    }
    Ok(&Real::from_i64(12, prec).sqrt()? * &sum)
}

/// Ramanujan's series `1/π = 2√2/99²·Σ ((¼)ₙ(½)ₙ(¾)ₙ/(n!)³)(1103 + 26390n)/99⁴ⁿ`,
/// truncated to `terms` terms and inverted.
pub fn ramanujan_pi(terms: usize, prec: Precision) -> Result<Real> {
    if terms == 0 {
        return domain("need at least one term");
    }
    let mut coeff = Real::one(prec);
    let mut sum = Real::zero(prec);
    for n in 0..terms as u64 {
        if n > 0 {
            coeff = coeff
                .mul_u64((4 * n - 3) * (2 * n - 1) * (4 * n - 1))
                .div_u64(32 * n * n * n)
                .div_u64(96_059_601);
        }
        sum = &sum + &coeff.mul_u64(1103 + 26390 * n);
    }
    let scale = Real::from_i64(8, prec).sqrt()?.div_u64(9801);
    (&scale * &sum).recip()
}

/// Chudnovsky partial sum over `terms` terms. With `use_splitting` the rational
/// part is exact until the final division; otherwise terms are accumulated in
/// floating point.
pub fn chudnovsky_terms(terms: usize, prec: Precision, use_splitting: bool) -> Result<Real> {
    if terms == 0 {
        return domain("need at least one term");
    }
    let scale = &Real::from_i64(10005, prec).sqrt()? * &Real::from_i64(426_880, prec);
    if use_splitting {
        let node = split_range(0, terms as u64);
        let q = Real::from_bigint(&node.q, prec);
        let t = Real::from_bigint(&node.t, prec);
        return (&scale * &q).checked_div(&t);
    }
    let qf = chudnovsky_q_factor();
    let mut ratio = Real::one(prec);
    let mut sum = Real::from_bigint(&chudnovsky_a(0), prec);
    for n in 1..terms as u64 {
        let leaf = split_leaf(n);
        let num = Real::from_bigint(&leaf.p, prec);
        let den = Real::from_bigint(&(BigInt::from(n).pow(3) * &qf), prec);
        ratio = (&ratio * &num).checked_div(&den)?;
        sum = &sum + &(&ratio * &Real::from_bigint(&chudnovsky_a(n), prec));
    }
    scale.checked_div(&sum)
}

/// Terms used for `digits` digits: `ceil(digits/14) + 2`.
pub fn chudnovsky_term_count(digits: u64) -> usize {
    digits.div_ceil(14) as usize + 2
}

/// π from the Chudnovsky series with enough terms for `digits` digits.
pub fn chudnovsky_pi(digits: u64, prec: Precision, use_splitting: bool) -> Result<Real> {
    if digits == 0 {
        return domain("need at least one digit");
    }
    chudnovsky_terms(chudnovsky_term_count(digits), prec, use_splitting)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    Madhava,
    Ramanujan,
    Chudnovsky,
}

impl Series {
    /// Nominal decimal digits gained per term.
    pub fn nominal_rate(self) -> f64 {
        match self {
            Series::Madhava => 3f64.log10(),
            Series::Ramanujan => 8.0,
            Series::Chudnovsky => 14.2,
        }
    }

    pub fn partial_sum(self, terms: usize, prec: Precision) -> Result<Real> {
        match self {
            Series::Madhava => madhava_pi(terms, prec),
            Series::Ramanujan => ramanujan_pi(terms, prec),
            Series::Chudnovsky => chudnovsky_terms(terms, prec, true),
        }
    }
}

/// Decimal digits per term, `(log10 e_{N/2} − log10 e_N)/(N − N/2)` where
/// `eₙ = |xₙ − π|` is the error after `n` terms.
pub fn digits_per_term(series: Series, terms: usize) -> Result<f64> {
    if terms < 2 {
        return domain("need at least two terms");
    }
    let digits = (series.nominal_rate() * terms as f64 * 1.2) as u64 + 40;
    let prec = Precision::from_digits(digits)?;
    let pi = constants::pi(prec);
    let half = terms / 2;
    let err = |n| -> Result<f64> {
        let e = (&series.partial_sum(n, prec)? - &pi).abs();
        Ok(e.log2_abs() * std::f64::consts::LOG10_2)
    };
    Ok((err(half)? - err(terms)?) / (terms - half) as f64)
}
