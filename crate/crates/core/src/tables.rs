//! Convergence tables for the π iterations, as text or CSV.
//!
//! Working precision is raised automatically to whatever the requested rows
//! need: the error columns of the later rows are far below the display
//! precision of the approximations themselves.

use std::fmt::Write as _;

use crate::constants;
use crate::error::{Error, Result};
use crate::mpreal::{Precision, Real, Rounding};
use crate::piagm::{self, bb1_bounds, bb4_bound, gl_bounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    Gl,
    GlBounds,
    Bb1,
    Bb1Bounds,
    Bb4,
    Equiv,
}

impl TableId {
    pub const ALL: [TableId; 6] = [
        TableId::Gl,
        TableId::GlBounds,
        TableId::Bb1,
        TableId::Bb1Bounds,
        TableId::Bb4,
        TableId::Equiv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::Gl => "gl",
            TableId::GlBounds => "gl_bounds",
            TableId::Bb1 => "bb1",
            TableId::Bb1Bounds => "bb1_bounds",
            TableId::Bb4 => "bb4",
            TableId::Equiv => "equiv",
        }
    }

    /// Index of the first row.
    pub fn first_row(self) -> usize {
        match self {
            TableId::Bb1Bounds => 1,
            _ => 0,
        }
    }

    /// Decimal digits of working precision needed so the last row's
    /// displayed digits are all meaningful.
    pub fn digits_needed(self, last_row: usize) -> u64 {
        // −log10 q for q = e^(−π)
        let lq = std::f64::consts::PI * std::f64::consts::LOG10_E;
        let n = last_row as i32;
        let d = match self {
            TableId::Gl | TableId::Bb1 => 35.0,
            TableId::GlBounds | TableId::Bb1Bounds => lq * 2f64.powi(n + 1) + 25.0,
            TableId::Bb4 => 2.0 * lq * 4f64.powi(n) + 30.0,
            TableId::Equiv => 2.0 * lq * 4f64.powi(n) + 70.0,
        };
        d.ceil() as u64
    }
}

impl std::str::FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown table {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableFormat {
    Text,
    Csv,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            _ => Err(Error::Usage(format!("unknown table format {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub table_id: TableId,
    pub rows: usize,
    /// Minimum working precision in decimal digits.
    pub digits: u64,
    pub format: TableFormat,
    /// Overrides the default guard allowance.
    pub guard_bits: Option<u64>,
}

impl TableSpec {
    pub fn new(table_id: TableId, rows: usize, digits: u64) -> Self {
        TableSpec {
            table_id,
            rows,
            digits,
            format: TableFormat::Text,
            guard_bits: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.rows == 0 {
            return Err(Error::Usage("rows must be at least 1".into()));
        }
        if self.digits < 10 {
            return Err(Error::Usage("digits must be at least 10".into()));
        }
        Ok(())
    }

    /// Working precision actually used.
    pub fn precision(&self) -> Result<Precision> {
        let last = self.table_id.first_row() + self.rows - 1;
        let digits = self.digits.max(self.table_id.digits_needed(last));
        let prec = Precision::from_digits(digits)?;
        match self.guard_bits {
            Some(g) => prec.with_guard_bits(g),
            None => Ok(prec),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub id: TableId,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub precision: Precision,
}

impl Table {
    /// Cell in the row whose first column is `n`.
    pub fn cell(&self, n: usize, column: &str) -> Option<&str> {
        let col = self.header.iter().position(|h| h == column)?;
        self.rows
            .iter()
            .find(|r| r[0] == n.to_string())
            .map(|r| r[col].as_str())
    }

    pub fn render(&self, format: TableFormat) -> String {
        let mut out = String::new();
        match format {
            TableFormat::Csv => {
                let _ = writeln!(out, "{}", self.header.join(","));
                for r in &self.rows {
                    let _ = writeln!(out, "{}", r.join(","));
                }
            }
            TableFormat::Text => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|c| {
                        self.rows
                            .iter()
                            .map(|r| r[c].len())
                            .chain([self.header[c].len()])
                            .max()
                            .unwrap()
                    })
                    .collect();
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                let _ = writeln!(out, "{}", line(&self.header));
                let total = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
                let _ = writeln!(out, "{}", "-".repeat(total));
                for r in &self.rows {
                    let _ = writeln!(out, "{}", line(r));
                }
            }
        }
        out
    }
}

fn sci(x: &Real, digits: u64) -> String {
    x.to_scientific(digits, Rounding::Nearest)
}

fn strings(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

pub fn build(spec: &TableSpec) -> Result<Table> {
    spec.validate()?;
    let prec = spec.precision()?;
    let id = spec.table_id;
    let first = id.first_row();
    let last = first + spec.rows - 1;
    let pi = constants::pi(prec);
    let (header, rows) = match id {
        TableId::Gl => {
            let it = piagm::gl_iterate(spec.rows, prec)?;
            let rows = it
                .iter()
                .map(|i| {
                    vec![
                        i.n.to_string(),
                        i.lower.as_ref().unwrap().to_decimal(25, Rounding::Nearest),
                        i.upper.as_ref().unwrap().to_decimal(25, Rounding::Nearest),
                    ]
                })
                .collect();
            (strings(&["n", "lower", "upper"]), rows)
        }
        TableId::GlBounds => {
            let it = piagm::gl_iterate(spec.rows, prec)?;
            let rows = it
                .iter()
                .map(|i| {
                    let up_err = i.upper.as_ref().unwrap() - &pi;
                    let lo_err = &pi - i.lower.as_ref().unwrap();
                    let (u, l) = gl_bounds(i.n as u32, prec);
                    vec![
                        i.n.to_string(),
                        sci(&up_err, 3),
                        sci(&lo_err, 3),
                        up_err.checked_div(&u)?.to_fixed(9),
                        lo_err.checked_div(&l)?.to_fixed(9),
                    ]
                    .into_iter()
                    .map(Ok)
                    .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            (
                strings(&[
                    "n",
                    "upper_error",
                    "lower_error",
                    "upper_ratio",
                    "lower_ratio",
                ]),
                rows,
            )
        }
        TableId::Bb1 => {
            let it = piagm::bb1_iterate(spec.rows, prec)?;
            let rows = it
                .iter()
                .map(|i| {
                    vec![
                        i.n.to_string(),
                        i.lower.as_ref().unwrap().to_decimal(25, Rounding::Nearest),
                        i.upper.as_ref().unwrap().to_decimal(25, Rounding::Nearest),
                    ]
                })
                .collect();
            (strings(&["n", "lower", "upper"]), rows)
        }
        TableId::Bb1Bounds => {
            let it = piagm::bb1_iterate(last + 1, prec)?;
            let mut rows = Vec::new();
            for i in &it[first..] {
                let up_err = i.upper.as_ref().unwrap() - &pi;
                let lo_err = &pi - i.lower.as_ref().unwrap();
                let (u, l) = bb1_bounds(i.n as u32, prec)?;
                rows.push(vec![
                    i.n.to_string(),
                    sci(&up_err, 3),
                    up_err.checked_div(&u)?.to_fixed(10),
                    sci(&lo_err, 3),
                    lo_err.checked_div(&l)?.to_fixed(10),
                ]);
            }
            (
                strings(&[
                    "n",
                    "upper_error",
                    "upper_ratio",
                    "lower_error",
                    "lower_ratio",
                ]),
                rows,
            )
        }
        TableId::Bb4 => {
            let it = piagm::bb4_iterate(spec.rows, prec)?;
            let mut rows = Vec::new();
            for i in &it {
                let err = &pi - i.value();
                let ratio = err.checked_div(&bb4_bound(i.n as u32, prec))?;
                rows.push(vec![i.n.to_string(), sci(&err, 10), ratio.to_fixed(10)]);
            }
            (strings(&["n", "error", "ratio"]), rows)
        }
        TableId::Equiv => {
            let gl = piagm::gl1_iterate(2 * spec.rows - 1, prec)?;
            let bb4 = piagm::bb4_iterate(spec.rows, prec)?;
            let mut rows = Vec::new();
            for i in &bb4 {
                let n = i.n;
                rows.push(vec![
                    n.to_string(),
                    (2 * n).to_string(),
                    sci(&(&pi - gl[2 * n].value()), 50),
                    sci(&(&pi - i.value()), 50),
                ]);
            }
            (strings(&["n", "gl_n", "gl1_error", "bb4_error"]), rows)
        }
    };
    Ok(Table {
        id,
        header,
        rows,
        precision: prec,
    })
}
