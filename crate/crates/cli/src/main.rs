use std::process::ExitCode;
use std::time::{Duration, Instant};

use agmpi::elemfn::{self, LogMethod};
use agmpi::piagm::{Algorithm, OpCounts, PiIterate};
use agmpi::piseries::{self, Series};
use agmpi::tables::{self, TableFormat, TableId, TableSpec};
use agmpi::verify::{self, Suite};
use agmpi::{agm, theta, Error, Precision, Real, Rounding};
use clap::{Parser, Subcommand, ValueEnum};

const GUARD_ENV: &str = "AGMPI_GUARD_BITS";

/// High-precision π and elementary functions via the arithmetic-geometric mean.
#[derive(Parser)]
#[command(name = "agm-pi", version)]
#[command(
    after_help = "Exit status: 0 success, 2 usage or domain error, 3 verification failure.\n\
AGMPI_GUARD_BITS overrides the default guard allowance (at least 64)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute π. The printed value is truncated, not rounded, at the last digit.
    Pi {
        #[arg(long, value_enum, default_value_t = Algo::Gl)]
        algo: Algo,
        /// Significant digits to print.
        #[arg(long, default_value_t = 50)]
        digits: u64,
        /// Iterations (terms, for the series) instead of the default for `digits`.
        #[arg(long)]
        iters: Option<usize>,
        /// Print every iterate with its lower and upper bounds where defined.
        #[arg(long)]
        bounds: bool,
    },
    /// Evaluate a function. The printed value is truncated, not rounded.
    Fn {
        #[arg(value_enum)]
        func: Func,
        /// Argument (modulus k for K, E and nome; nome q for the theta functions).
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Second argument, for agm.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, default_value_t = 30)]
        digits: u64,
        /// Logarithm method: salamin, sasaki_kanada, taylor_near_one or auto.
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Print a convergence table. Values are rounded at the last displayed digit.
    Table {
        #[arg(value_enum)]
        table: TableArg,
        #[arg(long, default_value_t = 5)]
        rows: usize,
        /// Minimum working precision; raised automatically when the rows need more.
        #[arg(long, default_value_t = 30)]
        digits: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Run self-check suites and report residuals against tolerances.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100)]
        digits: u64,
    },
    /// Time π computations.
    Bench {
        /// Algorithms to run; all when omitted.
        #[arg(long, value_enum)]
        algo: Vec<Algo>,
        #[arg(long, default_value_t = 1000)]
        digits: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        repeat: u32,
        /// Emit CSV instead of a table.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Gl,
    Gl1,
    Bb1,
    Bb2,
    Bb4,
    Madhava,
    Ramanujan,
    Chudnovsky,
}

impl Algo {
    fn iteration(self) -> Option<Algorithm> {
        match self {
            Algo::Gl => Some(Algorithm::Gl),
            Algo::Gl1 => Some(Algorithm::Gl1),
            Algo::Bb1 => Some(Algorithm::Bb1),
            Algo::Bb2 => Some(Algorithm::Bb2),
            Algo::Bb4 => Some(Algorithm::Bb4),
            _ => None,
        }
    }

    fn series(self) -> Option<Series> {
        match self {
            Algo::Madhava => Some(Series::Madhava),
            Algo::Ramanujan => Some(Series::Ramanujan),
            Algo::Chudnovsky => Some(Series::Chudnovsky),
            _ => None,
        }
    }

    fn name(self) -> String {
        self.to_possible_value().unwrap().get_name().to_string()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Func {
    Log,
    Exp,
    Atan,
    Acos,
    #[value(name = "K")]
    K,
    #[value(name = "E")]
    E,
    Agm,
    Nome,
    Theta2,
    Theta3,
    Theta4,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Gl,
    GlBounds,
    Bb1,
    Bb1Bounds,
    Bb4,
    Equiv,
}

impl From<TableArg> for TableId {
    fn from(t: TableArg) -> Self {
        match t {
            TableArg::Gl => TableId::Gl,
            TableArg::GlBounds => TableId::GlBounds,
            TableArg::Bb1 => TableId::Bb1,
            TableArg::Bb1Bounds => TableId::Bb1Bounds,
            TableArg::Bb4 => TableId::Bb4,
            TableArg::Equiv => TableId::Equiv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Equivalence,
    Bounds,
    Legendre,
    Theta,
    Minpoly,
    Roundtrip,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Equivalence => Suite::Equivalence,
            SuiteArg::Bounds => Suite::Bounds,
            SuiteArg::Legendre => Suite::Legendre,
            SuiteArg::Theta => Suite::Theta,
            SuiteArg::Minpoly => Suite::Minpoly,
            SuiteArg::Roundtrip => Suite::Roundtrip,
            SuiteArg::All => Suite::All,
        }
    }
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn guard_override() -> CliResult<Option<u64>> {
    match std::env::var(GUARD_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v.trim().parse::<u64>().map(Some).map_err(|_| {
            Failure::Usage(format!(
                "{GUARD_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
    }
}

fn precision(digits: u64, guard: Option<u64>) -> CliResult<Precision> {
    let p = Precision::from_digits(digits)?;
    Ok(match guard {
        Some(g) => p.with_guard_bits(g)?,
        None => p,
    })
}

fn parse_real(s: &str, prec: Precision) -> CliResult<Real> {
    Ok(Real::from_decimal(s, prec)?)
}

fn series_terms(series: Series, digits: u64) -> usize {
    match series {
        Series::Chudnovsky => piseries::chudnovsky_term_count(digits),
        s => (digits as f64 / s.nominal_rate()).ceil() as usize + 2,
    }
}

/// Computes π with one algorithm; returns the iterates (one per series run),
/// the iteration or term count, and the full-precision operation counts.
fn compute_pi(
    algo: Algo,
    prec: Precision,
    iters: Option<usize>,
) -> CliResult<(Vec<PiIterate>, usize, OpCounts)> {
    if let Some(a) = algo.iteration() {
        let n = iters.unwrap_or_else(|| a.default_iterations(prec.bits()));
        let (its, ops) = a.run(n, prec)?;
        return Ok((its, n, ops));
    }
    let series = algo.series().expect("algorithm is a series");
    let terms = iters.unwrap_or_else(|| series_terms(series, prec.decimal_digits()));
    let value = series.partial_sum(terms, prec)?;
    let ops = match series {
        Series::Madhava => OpCounts { sqrt: 1, div: 0 },
        _ => OpCounts { sqrt: 1, div: 1 },
    };
    let it = PiIterate {
        n: terms,
        lower: None,
        upper: None,
        point: Some(value),
    };
    Ok((vec![it], terms, ops))
}

fn cmd_pi(
    algo: Algo,
    digits: u64,
    iters: Option<usize>,
    bounds: bool,
    guard: Option<u64>,
) -> CliResult<()> {
    let prec = precision(digits, guard)?;
    let (its, _, _) = compute_pi(algo, prec, iters)?;
    let show = |x: &Real| x.to_decimal(digits, Rounding::Truncate);
    if bounds {
        for it in &its {
            let cell = |x: &Option<Real>| x.as_ref().map_or("-".to_string(), show);
            match (&it.lower, &it.upper) {
                (None, None) => println!("{} {}", it.n, show(it.value())),
                (l, u) => println!("{} {} {}", it.n, cell(l), cell(u)),
            }
        }
    } else {
        let last = its
            .last()
            .ok_or_else(|| Failure::Usage("no iterations requested".into()))?;
        println!("{}", show(last.value()));
    }
    Ok(())
}

fn cmd_fn(
    func: Func,
    x: &str,
    y: Option<&str>,
    digits: u64,
    method: &str,
    guard: Option<u64>,
) -> CliResult<()> {
    let prec = precision(digits, guard)?;
    let x = parse_real(x, prec)?;
    let method: LogMethod = method.parse()?;
    let value = match func {
        Func::Log => elemfn::log(&x, method)?,
        Func::Exp => elemfn::exp(&x)?,
        Func::Atan => elemfn::arctan(&x)?,
        Func::Acos => elemfn::arccos(&x)?,
        Func::K => agm::elliptic_k(&x)?,
        Func::E => agm::elliptic_e(&x)?,
        Func::Agm => {
            let y = y.ok_or_else(|| Failure::Usage("agm needs --y".into()))?;
            agm::agm(&x, &parse_real(y, prec)?)?.0
        }
        Func::Nome => agm::nome(&x)?,
        Func::Theta2 => theta::theta2(&x)?,
        Func::Theta3 => theta::theta3(&x)?,
        Func::Theta4 => theta::theta4(&x)?,
    };
    println!("{}", value.to_decimal(digits, Rounding::Truncate));
    Ok(())
}

fn cmd_table(
    table: TableArg,
    rows: usize,
    digits: u64,
    format: FormatArg,
    guard: Option<u64>,
) -> CliResult<()> {
    let format = match format {
        FormatArg::Text => TableFormat::Text,
        FormatArg::Csv => TableFormat::Csv,
    };
    let spec = TableSpec {
        table_id: table.into(),
        rows,
        digits,
        format,
        guard_bits: guard,
    };
    let t = tables::build(&spec)?;
    eprintln!("working precision: {} digits", t.precision.decimal_digits());
    print!("{}", t.render(format));
    Ok(())
}

fn cmd_verify(suite: SuiteArg, digits: u64, guard: Option<u64>) -> CliResult<()> {
    let report = verify::run_at(suite.into(), precision(digits, guard)?)?;
    print!("{}", report.render());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn median(mut times: Vec<Duration>) -> Duration {
    times.sort();
    times[times.len() / 2]
}

fn cmd_bench(
    algos: Vec<Algo>,
    digits: u64,
    repeat: u32,
    csv: bool,
    guard: Option<u64>,
) -> CliResult<()> {
    let algos = if algos.is_empty() {
        Algo::value_variants().to_vec()
    } else {
        algos
    };
    let prec = precision(digits, guard)?;
    if csv {
        println!("algo,digits,median_s,iterations,sqrt,div");
    } else {
        println!(
            "{:<11} {:>9} {:>12} {:>10} {:>6} {:>6}",
            "algo", "digits", "median_s", "iterations", "sqrt", "div"
        );
    }
    for algo in algos {
        let mut times = Vec::new();
        let mut last = None;
        for _ in 0..repeat {
            let t = Instant::now();
            let (_, n, ops) = compute_pi(algo, prec, None)?;
            times.push(t.elapsed());
            last = Some((n, ops));
        }
        let (n, ops) = last.expect("repeat is at least 1");
        let m = median(times).as_secs_f64();
        if csv {
            println!(
                "{},{},{:.6},{},{},{}",
                algo.name(),
                digits,
                m,
                n,
                ops.sqrt,
                ops.div
            );
        } else {
            println!(
                "{:<11} {:>9} {:>12.6} {:>10} {:>6} {:>6}",
                algo.name(),
                digits,
                m,
                n,
                ops.sqrt,
                ops.div
            );
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let guard = guard_override()?;
    match cli.command {
        Command::Pi {
            algo,
            digits,
            iters,
            bounds,
        } => cmd_pi(algo, digits, iters, bounds, guard),
        Command::Fn {
            func,
            x,
            y,
            digits,
            method,
        } => cmd_fn(func, &x, y.as_deref(), digits, &method, guard),
        Command::Table {
            table,
            rows,
            digits,
            format,
        } => cmd_table(table, rows, digits, format, guard),
        Command::Verify { suite, digits } => cmd_verify(suite, digits, guard),
        Command::Bench {
            algo,
            digits,
            repeat,
            csv,
        } => cmd_bench(algo, digits, repeat, csv, guard),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("agm-pi: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(3),
    }
}
