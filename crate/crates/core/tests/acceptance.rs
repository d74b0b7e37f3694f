//! Acceptance report: one PASS/FAIL line per criterion, plus INFO lines for
//! measurements that are reported but not gated. Always exits 0; read the
//! report for the outcome.

mod common;

use std::time::Instant;

use agmpi::elemfn;
use agmpi::piagm::{self, Algorithm};
use agmpi::piseries::{self, Series};
use agmpi::tables::{build, Table, TableId, TableSpec};
use agmpi::{agm, theta, Precision, Real};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE1: [(&str, &str); 5] = [
    ("2.914213562373095048801689", "4.000000000000000000000000"),
    ("3.140579250522168248311331", "3.187672642712108627201930"),
    ("3.141592646213542282149344", "3.141680293297653293918070"),
    ("3.141592653589793238279513", "3.141592653895446496002915"),
    ("3.141592653589793238462643", "3.141592653589793238466361"),
];

/// n, upper error, lower error, upper ratio, lower ratio.
const TABLE2: [[&str; 4]; 9] = [
    ["8.58e-1", "2.27e-1", "0.790369040", "0.916996189"],
    ["4.61e-2", "1.01e-3", "0.981804947", "0.999656206"],
    ["8.76e-5", "7.38e-9", "0.999922813", "0.999999998"],
    ["3.06e-10", "1.83e-19", "0.999999999", "1.000000000"],
    ["3.72e-21", "5.47e-41", "1.000000000", "1.000000000"],
    ["5.50e-43", "2.41e-84", "1.000000000", "1.000000000"],
    ["1.20e-86", "2.31e-171", "1.000000000", "1.000000000"],
    ["5.76e-174", "1.06e-345", "1.000000000", "1.000000000"],
    ["1.32e-348", "1.11e-694", "1.000000000", "1.000000000"],
];

const TABLE3: [(&str, &str); 5] = [
    ("1.414213562373095048801689", "3.414213562373095048801689"),
    ("3.119132528827772757303373", "3.142606753941622600790720"),
    ("3.141548837729436193482357", "3.141592660966044230497752"),
    ("3.141592653436966609787790", "3.141592653589793238645774"),
    ("3.141592653589793238460785", "3.141592653589793238462643"),
];

/// Rows n = 1..8: upper error, upper ratio, lower error, lower ratio.
const TABLE4: [[&str; 4]; 8] = [
    ["1.01e-3", "0.9896487063", "2.25e-2", "0.9570949132"],
    ["7.38e-9", "0.9948470082", "4.38e-5", "0.9998316841"],
    ["1.83e-19", "0.9974691480", "1.53e-10", "0.9999999988"],
    ["5.47e-41", "0.9987456847", "1.86e-21", "1.0000000000"],
    ["2.41e-84", "0.9993755837", "2.75e-43", "1.0000000000"],
    ["2.31e-171", "0.9996884727", "6.01e-87", "1.0000000000"],
    ["1.06e-345", "0.9998444059", "2.88e-174", "1.0000000000"],
    ["1.11e-694", "0.9999222453", "6.59e-349", "1.0000000000"],
];

/// Rows n = 0..8: error, ratio.
const TABLE5: [(&str, &str); 9] = [
    ("2.273790912e-1", "0.7710517124"),
    ("7.376250956e-9", "0.9602112619"),
    ("5.472109145e-41", "0.9900528160"),
    ("2.308580715e-171", "0.9975132040"),
    ("1.110954934e-694", "0.9993783010"),
    ("9.244416653e-2790", "0.9998445753"),
    ("6.913088685e-11172", "0.9999611438"),
    ("3.376546688e-44702", "0.9999902860"),
    ("3.002256862e-178825", "0.9999975715"),
];

const TABLE6: [&str; 5] = [
    "2.2737909121669818966095465906980480562749752399816e-1",
    "7.3762509563132989512968071098827321760295030264154e-9",
    "5.4721091456899418327485331789641785565936917028248e-41",
    "2.3085807149343902668213207343869568303303472423996e-171",
    "1.1109549335576998257002904117322306941479378545140e-694",
];

struct Report {
    passed: usize,
    total: usize,
}

impl Report {
    fn criterion(
        &mut self,
        id: u32,
        name: &str,
        limit_s: Option<f64>,
        f: impl FnOnce() -> (bool, String),
    ) {
        let t = Instant::now();
        let (ok, detail) = f();
        let secs = t.elapsed().as_secs_f64();
        let in_time = limit_s.is_none_or(|l| secs < l);
        let pass = ok && in_time;
        let timing = match limit_s {
            Some(l) => format!("{secs:.2} s, limit {l} s"),
            None => format!("{secs:.2} s"),
        };
        println!(
            "{} {id:>2}. {name} [{timing}]: {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
        self.total += 1;
        self.passed += pass as usize;
    }
}

fn info(name: &str, detail: String) {
    println!("INFO     {name}: {detail}");
}

fn p(digits: u64) -> Precision {
    prec(digits)
}

/// Compares cells, returning the number matched and a description of misses.
fn compare(
    cells: impl IntoIterator<Item = (String, String, String)>,
) -> (usize, usize, Vec<String>) {
    let mut matched = 0;
    let mut total = 0;
    let mut misses = Vec::new();
    for (label, got, want) in cells {
        total += 1;
        if got == want {
            matched += 1;
        } else {
            misses.push(format!("{label}: got {got}, reference {want}"));
        }
    }
    (matched, total, misses)
}

fn summarize(matched: usize, total: usize, misses: &[String]) -> (bool, String) {
    let mut s = format!("{matched}/{total} values match");
    if !misses.is_empty() {
        s += &format!("; mismatches: {}", misses.join("; "));
    }
    (misses.is_empty(), s)
}

fn cell(t: &Table, n: usize, col: &str) -> String {
    t.cell(n, col).unwrap_or("<missing>").to_string()
}

/// Splits `d.ddddde-k` into its digit string and exponent.
fn sci_parts(s: &str) -> (u64, i64) {
    let (m, e) = s.split_once('e').unwrap();
    (m.replace('.', "").parse().unwrap(), e.parse().unwrap())
}

fn main() {
    let mut r = Report {
        passed: 0,
        total: 0,
    };
    println!("acceptance report");

    r.criterion(
        1,
        "GL convergence table, 10 values of 25 digits",
        Some(1.0),
        || {
            let t = build(&TableSpec::new(TableId::Gl, 5, 30)).unwrap();
            let cells = TABLE1.iter().enumerate().flat_map(|(n, (lo, up))| {
                [
                    (format!("n={n} lower"), cell(&t, n, "lower"), lo.to_string()),
                    (format!("n={n} upper"), cell(&t, n, "upper"), up.to_string()),
                ]
            });
            let (m, tot, miss) = compare(cells.collect::<Vec<_>>());
            summarize(m, tot, &miss)
        },
    );

    r.criterion(
        2,
        "GL bounds table at 800 digits, n = 0..8",
        Some(5.0),
        || {
            let t = build(&TableSpec::new(TableId::GlBounds, 9, 800)).unwrap();
            let cols = ["upper_error", "lower_error", "upper_ratio", "lower_ratio"];
            let cells: Vec<_> = TABLE2
                .iter()
                .enumerate()
                .flat_map(|(n, row)| {
                    let t = &t;
                    cols.iter().zip(row).map(move |(c, want)| {
                        (format!("n={n} {c}"), cell(t, n, c), want.to_string())
                    })
                })
                .collect();
            let (m, tot, miss) = compare(cells);
            summarize(m, tot, &miss)
        },
    );

    r.criterion(3, "BB1 convergence and bounds tables", Some(5.0), || {
        let t3 = build(&TableSpec::new(TableId::Bb1, 5, 30)).unwrap();
        let t4 = build(&TableSpec::new(TableId::Bb1Bounds, 8, 30)).unwrap();
        let mut cells = Vec::new();
        for (n, (lo, up)) in TABLE3.iter().enumerate() {
            cells.push((
                format!("n={n} lower"),
                cell(&t3, n, "lower"),
                lo.to_string(),
            ));
            cells.push((
                format!("n={n} upper"),
                cell(&t3, n, "upper"),
                up.to_string(),
            ));
        }
        let cols = ["upper_error", "upper_ratio", "lower_error", "lower_ratio"];
        for (i, row) in TABLE4.iter().enumerate() {
            let n = i + 1;
            for (c, want) in cols.iter().zip(row) {
                cells.push((format!("n={n} {c}"), cell(&t4, n, c), want.to_string()));
            }
        }
        let (m, tot, miss) = compare(cells);
        summarize(m, tot, &miss)
    });

    {
        // can (2^(n+4)π² − cπ)·q^(2^(n+1)) replace the BB1 upper bound?
        let prec = p(800);
        let pi = agmpi::constants::pi(prec);
        let its = piagm::bb1_iterate(9, prec).unwrap();
        let holds = |c: u64| {
            its[1..].iter().all(|it| {
                let n = it.n as i64;
                let (u, _) = piagm::bb1_bounds(n as u32, prec).unwrap();
                let lead = pi.square().mul_pow2(n + 4);
                let q = u.checked_div(&lead).unwrap();
                let bound = &(&lead - &pi.mul_u64(c)) * &q;
                &(it.upper.as_ref().unwrap() - &pi) <= &bound
            })
        };
        info(
            "BB1 upper error <= (2^(n+4)pi^2 - c*pi)q^(2^(n+1)), n = 1..8",
            format!("holds with c = 8: {}, with c = 7: {}", holds(8), holds(7)),
        );
    }

    r.criterion(
        4,
        "BB4 errors (10 figures) and GL1/BB4 errors (50 digits) at 800+ digits",
        Some(5.0),
        || {
            // rows whose errors are resolvable at 800 digits
            let t5 = build(&TableSpec::new(TableId::Bb4, 5, 800)).unwrap();
            let t6 = build(&TableSpec::new(TableId::Equiv, 5, 800)).unwrap();
            let mut ok = true;
            let mut exact = 0;
            let mut notes = Vec::new();
            for (n, (want, _)) in TABLE5.iter().enumerate().take(5) {
                let got = cell(&t5, n, "error");
                let (gm, ge) = sci_parts(&got);
                let (wm, we) = sci_parts(want);
                if got == *want {
                    exact += 1;
                } else if ge == we && gm.abs_diff(wm) <= 1 {
                    notes.push(format!(
                        "n={n} got {got}, reference {want} (one unit in the 10th figure)"
                    ));
                } else {
                    ok = false;
                    notes.push(format!("n={n} got {got}, reference {want}"));
                }
            }
            let cells: Vec<_> = TABLE6
                .iter()
                .enumerate()
                .flat_map(|(n, want)| {
                    [
                        (
                            format!("gl_n={} gl1", 2 * n),
                            cell(&t6, n, "gl1_error"),
                            want.to_string(),
                        ),
                        (
                            format!("n={n} bb4"),
                            cell(&t6, n, "bb4_error"),
                            want.to_string(),
                        ),
                    ]
                })
                .collect();
            let (m, tot, miss) = compare(cells);
            ok &= miss.is_empty();
            notes.extend(miss);
            let mut s =
                format!("BB4 errors n=0..4: {exact}/5 exact; 50-digit errors: {m}/{tot} exact");
            if !notes.is_empty() {
                s += &format!("; {}", notes.join("; "));
            }
            (ok, s)
        },
    );

    {
        let t = Instant::now();
        let full = build(&TableSpec::new(TableId::Bb4, 9, 800)).unwrap();
        let secs = t.elapsed().as_secs_f64();
        let mut same = 0;
        for (n, (e, ratio)) in TABLE5.iter().enumerate().skip(5) {
            same += (cell(&full, n, "error") == *e) as usize;
            same += (cell(&full, n, "ratio") == *ratio) as usize;
        }
        info(
            "BB4 table rows n=5..8",
            format!(
                "{same}/8 values match exactly at {} digits of working precision, {secs:.1} s",
                full.precision.decimal_digits()
            ),
        );
    }

    r.criterion(
        5,
        "BB2 equals GL1 lower bound, n <= 8, 1000 digits",
        Some(5.0),
        || {
            let e = piagm::check_equiv_bb2_gl1(9, p(1000)).unwrap();
            let tol = Real::from_decimal("1e-990", p(1000)).unwrap();
            (
                e.max_deviation <= tol,
                format!("max deviation {}", sci(&e.max_deviation)),
            )
        },
    );

    r.criterion(
        6,
        "BB4 equals GL1 doubled, n <= 4, 1000 digits",
        Some(5.0),
        || {
            let e = piagm::check_equiv_bb4_gl1_doubled(5, p(1000)).unwrap();
            let tol = Real::from_decimal("1e-990", p(1000)).unwrap();
            (
                e.max_deviation <= tol,
                format!("max deviation {}", sci(&e.max_deviation)),
            )
        },
    );

    r.criterion(
        7,
        "Minimal polynomial residuals and root brackets, 1000 digits",
        Some(2.0),
        || {
            let m = piagm::minpoly_residual(p(1000)).unwrap();
            let tol = Real::from_decimal("1e-950", p(1000)).unwrap();
            let signs = piagm::minpoly_sign_change(0, 1) && piagm::minpoly_sign_change(3, 4);
            let ok = m.r1.abs() <= tol && m.r2.abs() <= tol && signs;
            (
                ok,
                format!(
                    "|P(a3^2/s2)| = {}, |P(pi1)| = {}, sign changes on [0,1] and [3,4]: {signs}",
                    sci(&m.r1.abs()),
                    sci(&m.r2.abs())
                ),
            )
        },
    );

    r.criterion(8, "Bound sharpness", None, || {
        let t = build(&TableSpec::new(TableId::GlBounds, 9, 800)).unwrap();
        let prec = t.precision;
        let pi = agmpi::constants::pi(prec);
        let its = piagm::gl_iterate(9, prec).unwrap();
        let mut worst = f64::INFINITY;
        for it in &its[3..] {
            let (u, l) = piagm::gl_bounds(it.n as u32, prec);
            let ru = (it.upper.as_ref().unwrap() - &pi)
                .checked_div(&u)
                .unwrap()
                .to_f64();
            let rl = (&pi - it.lower.as_ref().unwrap())
                .checked_div(&l)
                .unwrap()
                .to_f64();
            worst = worst.min(ru).min(rl);
        }
        let prec4 = p(100);
        let pi4 = agmpi::constants::pi(prec4);
        let b = piagm::bb4_iterate(2, prec4).unwrap();
        let r1 = (&pi4 - b[1].value())
            .checked_div(&piagm::bb4_bound(1, prec4))
            .unwrap()
            .to_f64();
        let ok = worst >= 0.9999 && (0.96..1.0).contains(&r1) && (r1 - 0.9602112619).abs() <= 1e-6;
        (
            ok,
            format!("min GL ratio for n >= 3: {worst:.10}; BB4 ratio at n=1: {r1:.10}"),
        )
    });

    r.criterion(9, "Series digits per term", None, || {
        let m = piseries::digits_per_term(Series::Madhava, 100).unwrap();
        let ra = piseries::digits_per_term(Series::Ramanujan, 10).unwrap();
        let c = piseries::digits_per_term(Series::Chudnovsky, 20).unwrap();
        let ok = (m - 0.4771).abs() <= 0.01 && (ra - 8.0).abs() <= 0.5 && (c - 14.0).abs() <= 0.5;
        (
            ok,
            format!("Madhava {m:.4}, Ramanujan {ra:.4}, Chudnovsky {c:.4}"),
        )
    });

    r.criterion(
        10,
        "Elementary functions against series oracles, 200 digits",
        Some(10.0),
        || {
            let prec = p(200);
            let tol = Real::from_decimal("1e-200", prec).unwrap();
            let rel =
                |got: &Real, want: &Real| (got - want).abs().checked_div(&want.abs()).unwrap();
            let one = Real::one(prec);
            let checks = [
                (
                    "log 2",
                    elemfn::ln(&Real::from_i64(2, prec)).unwrap(),
                    log2(200).to_real(prec),
                ),
                (
                    "log 10",
                    elemfn::ln(&Real::from_i64(10, prec)).unwrap(),
                    log10(200).to_real(prec),
                ),
                (
                    "exp 1",
                    elemfn::exp(&one).unwrap(),
                    taylor_e(200).to_real(prec),
                ),
                (
                    "atan 1",
                    elemfn::arctan(&one).unwrap(),
                    machin_pi(200).to_real(prec).mul_pow2(-2),
                ),
            ];
            let mut ok = true;
            let mut parts = Vec::new();
            for (name, got, want) in &checks {
                let e = rel(got, want);
                ok &= e <= tol;
                parts.push(format!("{name} rel err {}", sci(&e)));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(10);
            let mut worst = 0f64;
            for _ in 0..100 {
                let x = Real::from_f64(10f64.powf(rng.gen_range(-3.0..3.0)), prec).unwrap();
                let back = elemfn::exp(&elemfn::ln(&x).unwrap()).unwrap();
                worst = worst.max(err_ulps(&back, &x));
            }
            ok &= worst <= 8.0;
            parts.push(format!("exp(log x) worst {worst:.3e} ulps over 100 points"));
            (ok, parts.join(", "))
        },
    );

    r.criterion(
        11,
        "Legendre relation and Jacobi identities, 100 digits",
        None,
        || {
            let prec = p(100);
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let tol_l = Real::pow2(8 - prec.bits() as i64, prec);
            let tol_j = Real::pow2(6 - prec.bits() as i64, prec);
            let mut worst_l = Real::zero(prec);
            for _ in 0..100 {
                let k = Real::from_f64(rng.gen_range(0.01..0.99), prec).unwrap();
                worst_l = worst_l
                    .max(&agm::legendre_residual(&k).unwrap().abs())
                    .clone();
            }
            let mut worst_j = Real::zero(prec);
            for _ in 0..50 {
                let q = Real::from_f64(rng.gen_range(0.0..0.9), prec).unwrap();
                let (a, b) = theta::jacobi_residuals(&q).unwrap();
                worst_j = worst_j.max(&a.abs()).max(&b.abs()).clone();
            }
            let ok = worst_l <= tol_l && worst_j <= tol_j;
            (
                ok,
                format!(
                    "Legendre worst {} (tol {}), Jacobi worst {} (tol {})",
                    sci(&worst_l),
                    sci(&tol_l),
                    sci(&worst_j),
                    sci(&tol_j)
                ),
            )
        },
    );

    let mut ratio = None;
    r.criterion(12, "pi to 100000 digits via GL", Some(60.0), || {
        let prec = p(100_000);
        let t = Instant::now();
        let alg = Algorithm::Gl;
        let (its, _) = alg.run(alg.default_iterations(prec.bits()), prec).unwrap();
        let gl = its.last().unwrap().value().clone();
        let gl_s = t.elapsed().as_secs_f64();
        let t = Instant::now();
        let ch = piseries::chudnovsky_pi(100_000, prec, true).unwrap();
        let ch_s = t.elapsed().as_secs_f64();
        let tol = Real::from_decimal("1e-99990", prec).unwrap();
        let agree = (&gl - &ch).abs() <= tol;
        ratio = Some((gl_s, ch_s));
        (
            agree,
            format!("GL {gl_s:.2} s, agrees with Chudnovsky to 99990 digits: {agree}"),
        )
    });
    if let Some((gl_s, ch_s)) = ratio {
        let within = (0.1..=10.0).contains(&(ch_s / gl_s));
        info(
            "Chudnovsky/GL time ratio at 100000 digits",
            format!(
                "{:.3} (Chudnovsky {ch_s:.3} s); within 10x either way: {within}",
                ch_s / gl_s
            ),
        );
    }

    {
        let mut parts = Vec::new();
        for bits in [1000u64, 10_000, 100_000] {
            let prec = Precision::from_bits(bits).unwrap();
            let wb = prec.working_bits() as i64;
            let (_, s) = elemfn::log_salamin_traced(&Real::pow2(wb / 2 + 5, prec)).unwrap();
            let (_, k) = elemfn::log_sasaki_kanada_traced(&Real::pow2(wb / 36 + 1, prec)).unwrap();
            parts.push(format!(
                "{bits} bits: Salamin {} vs truncated theta {}",
                s.iterations, k.iterations
            ));
        }
        info(
            "AGM iterations at each method's reduction threshold",
            parts.join(", "),
        );
    }

    println!("{}/{} criteria passed", r.passed, r.total);
}

fn sci(x: &Real) -> String {
    x.to_scientific(3, agmpi::Rounding::Nearest)
}
