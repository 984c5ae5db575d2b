//! Rectangular numeric tables with named columns, written as CSV.
//!
//! Values are rendered with 12 significant digits in shortest `%g`-like form,
//! `.` as decimal separator and `\n` line endings. `+∞` is written `inf`; an
//! undefined entry (NaN) is written `nan`.

use std::io::{self, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

/// One grid axis: `count` evenly spaced points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn linspace(start: f64, stop: f64, count: usize) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) || count == 0 || (count == 1 && start != stop) {
            return Err(Error::InvalidGrid(format!(
                "cannot place {count} points on [{start}, {stop}]"
            )));
        }
        if stop < start {
            return Err(Error::InvalidGrid(format!("stop {stop} is below start {start}")));
        }
        Ok(Self { start, stop, count })
    }

    /// Grid from a step size; `(stop - start)/step` must be an integer within 1e-6.
    pub fn stepped(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        let cells = (stop - start) / step;
        let rounded = cells.round();
        if rounded < 0.0 || (cells - rounded).abs() > 1e-6 {
            return Err(Error::InvalidGrid(format!(
                "step {step} does not divide [{start}, {stop}]"
            )));
        }
        Self::linspace(start, stop, rounded as usize + 1)
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }

    /// Checks that the whole grid lies in `[lo, hi]`.
    pub fn check_within(&self, lo: f64, hi: f64, what: &str) -> Result<()> {
        if self.start < lo - 1e-12 || self.stop > hi + 1e-12 {
            return Err(Error::InvalidGrid(format!(
                "{what} grid [{}, {}] leaves [{lo}, {hi}]",
                self.start, self.stop
            )));
        }
        Ok(())
    }
}

impl SweepTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::DimensionMismatch {
                left: self.columns.len(),
                right: row.len(),
            });
        }
        if row.contains(&f64::NEG_INFINITY) {
            return Err(Error::InvalidGrid("negative infinity in table row".into()));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&format_value(*v));
            }
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

const SIG_DIGITS: i32 = 12;

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// 12 significant digits; fixed notation for exponents in [-5, 12), scientific otherwise.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    // exponent after rounding to 12 significant digits
    let sci = format!("{:.*e}", (SIG_DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-5..SIG_DIGITS).contains(&exp) {
        let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_fraction(mantissa))
    }
}
