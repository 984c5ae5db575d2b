//! Text formats accepted on the command line.
//!
//! * probability lists: `0.5,0.25,0.25`
//! * complex numbers: `re+imi`, `re-imi`, a bare real `re`, or a bare imaginary `imi`
//! * matrices: one row per line, entries separated by whitespace or commas;
//!   blank lines and lines starting with `#` are skipped

use num_complex::Complex64;
use qdist_core::simplex::ProbVec;
use qdist_core::{Error, Result};

fn parse_real(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("`{s}` is not finite")));
    }
    Ok(v)
}

pub fn parse_prob_list(s: &str) -> Result<ProbVec> {
    let values = s.split(',').map(parse_real).collect::<Result<Vec<_>>>()?;
    ProbVec::new(values)
}

pub fn parse_real_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_real).collect()
}

/// Index where the imaginary part starts: the last `+`/`-` that is neither
/// leading nor part of an exponent.
fn split_point(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
}

pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(s)?, 0.0));
    };
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(t),
    };
    match split_point(body) {
        Some(k) => Ok(Complex64::new(parse_real(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
    .map_err(|e: Error| match e {
        Error::Parse(_) => Error::Parse(format!("`{s}` is not a complex number of the form re+imi")),
        other => other,
    })
}

pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_complex).collect()
}

pub fn parse_matrix(text: &str) -> Result<Vec<Vec<Complex64>>> {
    let rows: Vec<Vec<Complex64>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(parse_complex)
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix file has no rows".into()));
    }
    Ok(rows)
}
