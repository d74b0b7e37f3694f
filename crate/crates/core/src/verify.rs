//! Self-check suites run by `agm-pi verify`. Each check compares a measured
//! residual against a tolerance; a suite passes when every check does.

use std::fmt::Write as _;

use crate::agm;
use crate::constants;
use crate::elemfn;
use crate::error::{Error, Result};
use crate::mpreal::{Precision, Real, Rounding};
use crate::piagm;
use crate::theta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Equivalence,
    Bounds,
    Legendre,
    Theta,
    Minpoly,
    Roundtrip,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Equivalence,
        Suite::Bounds,
        Suite::Legendre,
        Suite::Theta,
        Suite::Minpoly,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Equivalence => "equivalence",
            Suite::Bounds => "bounds",
            Suite::Legendre => "legendre",
            Suite::Theta => "theta",
            Suite::Minpoly => "minpoly",
            Suite::Roundtrip => "roundtrip",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}")))
    }
}

/// One measured residual against its tolerance.
#[derive(Clone, Debug)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub residual: Real,
    pub tolerance: Real,
    pub passed: bool,
}

impl Check {
    fn at_most(suite: Suite, name: impl Into<String>, residual: Real, tolerance: Real) -> Check {
        let residual = residual.abs();
        let passed = residual <= tolerance;
        Check {
            suite,
            name: name.into(),
            residual,
            tolerance,
            passed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub digits: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {:<11} {:<width$}  residual {:>10}  tol {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite.name(),
                c.name,
                c.residual.to_scientific(3, Rounding::Nearest),
                c.tolerance.to_scientific(3, Rounding::Nearest),
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed ({} digits)",
            if failed == 0 { "ok" } else { "FAILED" },
            self.checks.len(),
            failed,
            self.digits
        );
        out
    }
}

fn pow10(k: i64, prec: Precision) -> Real {
    Real::from_decimal(&format!("1e{k}"), prec).expect("well-formed literal")
}

/// Deterministic points in `(0, 1)` from the golden-ratio sequence.
fn spread(count: usize) -> impl Iterator<Item = f64> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    (1..=count).map(move |i| (i as f64 * phi).fract())
}

pub fn run(suite: Suite, digits: u64) -> Result<Report> {
    run_at(suite, Precision::from_digits(digits)?)
}

/// As [`run`], with an explicit precision (e.g. a non-default guard allowance).
pub fn run_at(suite: Suite, prec: Precision) -> Result<Report> {
    let digits = prec.decimal_digits();
    if digits < 10 {
        return Err(Error::Usage("digits must be at least 10".into()));
    }
    let mut checks = Vec::new();
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    for s in suites {
        checks.extend(match s {
            Suite::Equivalence => equivalence(prec)?,
            Suite::Bounds => bounds(prec)?,
            Suite::Legendre => legendre(prec)?,
            Suite::Theta => theta_suite(prec)?,
            Suite::Minpoly => minpoly(prec)?,
            Suite::Roundtrip => roundtrip(prec)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(Report {
        suite,
        digits,
        checks,
    })
}

fn equivalence(prec: Precision) -> Result<Vec<Check>> {
    let s = Suite::Equivalence;
    let tol = pow10(10 - prec.decimal_digits() as i64, prec);
    let bb2 = piagm::check_equiv_bb2_gl1(9, prec)?;
    let bb4 = piagm::check_equiv_bb4_gl1_doubled(5, prec)?;
    let quarter = Real::from_ratio(1, 4, prec)?;
    Ok(vec![
        Check::at_most(s, "bb2 vs gl1 lower, n<=8", bb2.max_deviation, tol.clone()),
        Check::at_most(s, "bb2 k_n = c_n+1/a_n+1", bb2.k_residual, tol.clone()),
        Check::at_most(s, "bb2 s_n = a_n+1^2 alpha_n", bb2.s_residual, tol.clone()),
        Check::at_most(s, "a_1^2 alpha_0 = 1/4", &bb2.beta0 - &quarter, tol.clone()),
        Check::at_most(s, "bb4 vs gl1 at 2n, n<=4", bb4.max_deviation, tol.clone()),
        Check::at_most(s, "bb4 vs bb2 at 2n, n<=4", bb4.bb2_doubled_deviation, tol),
    ])
}

/// Checks `0 < error ≤ bound` for every row whose bound is resolvable at
/// this precision; the residual reported is the error-to-bound ratio.
fn bounds(prec: Precision) -> Result<Vec<Check>> {
    let s = Suite::Bounds;
    let pi = constants::pi(prec);
    let one = Real::one(prec);
    let floor = pow10(20 - prec.decimal_digits() as i64, prec);
    let mut checks = Vec::new();
    let mut ratio_check = |name: String, err: Real, bound: Real| -> Result<()> {
        if bound < floor {
            return Ok(());
        }
        let ratio = err.checked_div(&bound)?;
        // rounding at the absolute precision floor may push a sharp ratio past 1
        let tol = &one + &floor.checked_div(&bound)?;
        let mut c = Check::at_most(s, name, ratio.clone(), tol);
        c.passed &= ratio.is_positive();
        checks.push(c);
        Ok(())
    };
    for it in piagm::gl_iterate(12, prec)? {
        let n = it.n as u32;
        let (u, l) = piagm::gl_bounds(n, prec);
        ratio_check(
            format!("gl upper n={n}"),
            it.upper.as_ref().unwrap() - &pi,
            u,
        )?;
        ratio_check(
            format!("gl lower n={n}"),
            &pi - it.lower.as_ref().unwrap(),
            l,
        )?;
    }
    for it in piagm::bb1_iterate(12, prec)?.into_iter().skip(1) {
        let n = it.n as u32;
        let (u, l) = piagm::bb1_bounds(n, prec)?;
        ratio_check(
            format!("bb1 upper n={n}"),
            it.upper.as_ref().unwrap() - &pi,
            u,
        )?;
        ratio_check(
            format!("bb1 lower n={n}"),
            &pi - it.lower.as_ref().unwrap(),
            l,
        )?;
    }
    for it in piagm::bb4_iterate(6, prec)? {
        let n = it.n as u32;
        ratio_check(
            format!("bb4 n={n}"),
            &pi - it.value(),
            piagm::bb4_bound(n, prec),
        )?;
    }
    Ok(checks)
}

fn legendre(prec: Precision) -> Result<Vec<Check>> {
    let tol = Real::pow2(8 - prec.bits() as i64, prec);
    let mut worst = Real::zero(prec);
    for k in spread(100) {
        let r = agm::legendre_residual(&Real::from_f64(k, prec)?)?.abs();
        if r > worst {
            worst = r;
        }
    }
    let sqrt_half = Real::from_ratio(1, 2, prec)?.sqrt()?;
    Ok(vec![
        Check::at_most(Suite::Legendre, "max over 100 moduli", worst, tol.clone()),
        Check::at_most(
            Suite::Legendre,
            "k = 1/sqrt 2",
            agm::legendre_residual(&sqrt_half)?,
            tol,
        ),
    ])
}

fn theta_suite(prec: Precision) -> Result<Vec<Check>> {
    let s = Suite::Theta;
    let tol = Real::pow2(6 - prec.bits() as i64, prec);
    let (mut w1, mut w2) = (Real::zero(prec), Real::zero(prec));
    for q in spread(50) {
        let (r1, r2) = theta::jacobi_residuals(&Real::from_f64(q * 0.95, prec)?)?;
        w1 = w1.max(&r1.abs()).clone();
        w2 = w2.max(&r2.abs()).clone();
    }
    let q = constants::exp_minus_pi(prec);
    let param = theta::agm_theta_check(&q, 8)?;
    let t3 = theta::theta3(&q)?.square();
    let one = Real::one(prec);
    let (a_inf, _) = agm::agm(&one, &Real::from_ratio(1, 2, prec)?.sqrt()?)?;
    Ok(vec![
        Check::at_most(
            s,
            "theta3^2(q) = theta2^2(q^2) + theta3^2(q^2)",
            w1,
            tol.clone(),
        ),
        Check::at_most(s, "theta3^4 = theta2^4 + theta4^4", w2, tol.clone()),
        Check::at_most(
            s,
            "theta3^2(e^-pi) = 1/agm(1, 1/sqrt 2)",
            &t3 - &a_inf.recip()?,
            tol,
        ),
        Check::at_most(
            s,
            "agm theta parameterisation, n<=8",
            param,
            Real::pow2(10 - prec.bits() as i64, prec),
        ),
    ])
}

fn minpoly(prec: Precision) -> Result<Vec<Check>> {
    let s = Suite::Minpoly;
    let d = prec.decimal_digits() as f64;
    let tol = pow10(-(0.95 * d).floor() as i64, prec);
    let report = piagm::minpoly_residual(prec)?;
    let zero = Real::zero(prec);
    let sign = |lo, hi| {
        let ok = piagm::minpoly_sign_change(lo, hi);
        Check {
            suite: s,
            name: format!("sign change on [{lo}, {hi}]"),
            residual: zero.clone(),
            tolerance: zero.clone(),
            passed: ok,
        }
    };
    Ok(vec![
        Check::at_most(s, "P(a_3^2/s_2)", report.r1, tol.clone()),
        Check::at_most(s, "P(pi_1)", report.r2, tol.clone()),
        Check::at_most(s, "a_3^2/s_2 = pi_1", report.gap, tol),
        sign(0, 1),
        sign(3, 4),
    ])
}

/// Unit in the last place of `x` at the requested (not working) precision.
fn target_ulp(x: &Real) -> Real {
    let prec = x.precision();
    let top = x.log2_abs().floor() as i64 + 1;
    Real::pow2(top - prec.bits() as i64, prec)
}

/// Worst error over 100 points, in ulps of the requested precision.
fn roundtrip(prec: Precision) -> Result<Vec<Check>> {
    let s = Suite::Roundtrip;
    let mut worst_el = Real::zero(prec);
    let mut worst_le = Real::zero(prec);
    for u in spread(100) {
        // x spans 2^-20 .. 2^20, y spans -40 .. 40
        let x = Real::from_f64((40.0 * u - 20.0).exp2(), prec)?;
        let back = elemfn::exp(&elemfn::ln(&x)?)?;
        worst_el = worst_el
            .max(&(&back - &x).abs().checked_div(&target_ulp(&x))?)
            .clone();
        let y = Real::from_f64(80.0 * u - 40.0, prec)?;
        let back = elemfn::ln(&elemfn::exp(&y)?)?;
        let scale = if y.abs() > Real::one(prec) {
            target_ulp(&y)
        } else {
            target_ulp(&Real::one(prec))
        };
        worst_le = worst_le
            .max(&(&back - &y).abs().checked_div(&scale)?)
            .clone();
    }
    let eight = Real::from_i64(8, prec);
    Ok(vec![
        Check::at_most(s, "exp(log x) = x, ulps", worst_el, eight.clone()),
        Check::at_most(s, "log(exp y) = y, ulps", worst_le, eight),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_modest_precision() {
        for s in Suite::EACH {
            let r = run(s, 60).unwrap();
            assert!(r.passed(), "{}", r.render());
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn parse_and_reject() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
        assert!(run(Suite::Theta, 5).is_err());
    }

    #[test]
    fn render_marks_failures() {
        let prec = Precision::from_digits(20).unwrap();
        let bad = Check::at_most(Suite::Theta, "x", Real::one(prec), Real::zero(prec));
        let r = Report {
            suite: Suite::Theta,
            digits: 20,
            checks: vec![bad],
        };
        assert!(!r.passed());
        assert!(r.render().starts_with("FAIL theta"));
    }
}
