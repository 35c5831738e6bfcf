//! Plain-text state files and outcome-function specs.
//!
//! Matrix files hold one row per line with entries written `re±imi`
//! (`0.5+0i`, `-1e-3-2.5i`; bare reals and bare imaginaries such as `0.5`,
//! `-i` or `2i` are accepted too). Bloch files hold whitespace-separated
//! reals. In both, blank lines and lines starting with `#` are ignored.
//!
//! Outcome functions are written `identity`, `sign`, `pow:<odd k>` or
//! `table:<path>`, the table being a CSV of `x,f(x)` rows.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::BlochVector;
use crate::matrix::{Complex, ComplexMatrix};
use crate::rules::{OutcomeFunction, TabulatedFunction};

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_real(s: &str) -> Result<f64> {
    let v: f64 = s.parse().map_err(|_| Error::Parse(format!("invalid number {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(v)
}

/// Coefficient of `i`: empty or a bare sign means ±1.
fn parse_imag_coeff(s: &str) -> Result<f64> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s),
    }
}

pub fn parse_complex(token: &str) -> Result<Complex> {
    let token = token.trim();
    let Some(body) = token.strip_suffix('i') else {
        return Ok(Complex::new(parse_real(token)?, 0.0));
    };
    // The re/im split is the last sign that is neither leading nor part of
    // an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    match split {
        Some(p) => Ok(Complex::new(parse_real(&body[..p])?, parse_imag_coeff(&body[p..])?)),
        None => Ok(Complex::new(0.0, parse_imag_coeff(body)?)),
    }
}

/// Inverse of [`parse_complex`]; exact round trip.
pub fn format_complex(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:?}{}{:?}i", z.re, sign, z.im.abs())
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let rows = content_lines(text)
        .map(|line| line.split_whitespace().map(parse_complex).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix file has no rows".into()));
    }
    ComplexMatrix::from_rows(rows)
}

pub fn format_matrix(m: &ComplexMatrix) -> String {
    let n = m.dim();
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format_complex(m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_reals(text: &str) -> Result<Vec<f64>> {
    content_lines(text)
        .flat_map(str::split_whitespace)
        .map(parse_real)
        .collect()
}

/// Parses a Bloch file; the dimension follows from the component count
/// `N² − 1` when not given.
pub fn parse_bloch(text: &str, dim: Option<usize>) -> Result<BlochVector> {
    let comps = parse_reals(text)?;
    let n = match dim {
        Some(n) => n,
        None => bloch_dim(comps.len())
            .ok_or_else(|| Error::Parse(format!("{} components is not N^2-1 for any N >= 2", comps.len())))?,
    };
    BlochVector::new(n, comps)
}

fn bloch_dim(count: usize) -> Option<usize> {
    let n = ((count + 1) as f64).sqrt().round() as usize;
    (n >= 2 && n * n == count + 1).then_some(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Matrix,
    Bloch,
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix" => Ok(Self::Matrix),
            "bloch" => Ok(Self::Bloch),
            _ => Err(Error::Parse(format!("unknown representation {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Matrix(ComplexMatrix),
    Bloch(BlochVector),
}

impl StateInput {
    pub fn dim(&self) -> usize {
        match self {
            Self::Matrix(m) => m.dim(),
            Self::Bloch(b) => b.dim(),
        }
    }
}

/// Reads a state file as either representation.
///
/// Without an explicit representation the layout decides: N lines of N
/// entries is a matrix, N²−1 reals is a Bloch vector. The two never collide
/// because N² ≠ N² − 1.
pub fn parse_state(text: &str, repr: Option<Representation>, dim: Option<usize>) -> Result<StateInput> {
    let repr = match repr {
        Some(r) => r,
        None => detect_representation(text, dim)?,
    };
    let state = match repr {
        Representation::Matrix => StateInput::Matrix(parse_matrix(text)?),
        Representation::Bloch => StateInput::Bloch(parse_bloch(text, dim)?),
    };
    if let Some(n) = dim {
        if state.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: state.dim(),
            });
        }
    }
    Ok(state)
}

fn detect_representation(text: &str, dim: Option<usize>) -> Result<Representation> {
    let lines: Vec<usize> = content_lines(text).map(|l| l.split_whitespace().count()).collect();
    let total: usize = lines.iter().sum();
    let square = !lines.is_empty() && lines.iter().all(|&c| c == lines.len());
    match dim {
        Some(n) if total == n * n => Ok(Representation::Matrix),
        Some(n) if n >= 1 && total + 1 == n * n => Ok(Representation::Bloch),
        Some(n) => Err(Error::Parse(format!(
            "{total} entries fit neither an {n}x{n} matrix nor a Bloch vector of dimension {n}"
        ))),
        None if square => Ok(Representation::Matrix),
        None if bloch_dim(total).is_some() => Ok(Representation::Bloch),
        None => Err(Error::Parse(format!(
            "cannot tell whether {total} entries form a matrix or a Bloch vector"
        ))),
    }
}

/// Parses `x,f(x)` rows. A first row that is not numeric is taken as a
/// header; `#` starts a comment line.
pub fn parse_table_csv(text: &str) -> Result<TabulatedFunction> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut nodes = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Parse(format!(
                "table row {} has {} fields, expected 2",
                idx + 1,
                record.len()
            )));
        }
        let parsed = (parse_real(&record[0]), parse_real(&record[1]));
        match parsed {
            (Ok(x), Ok(y)) => nodes.push((x, y)),
            _ if idx == 0 && nodes.is_empty() => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    TabulatedFunction::new(nodes)
}

pub fn load_table(path: &Path) -> Result<TabulatedFunction> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_table_csv(&text)
}

/// Textual outcome-function spec; `table:` paths are resolved by
/// [`FunctionSpec::load`].
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Builtin(OutcomeFunction),
    Table(PathBuf),
}

impl FunctionSpec {
    pub fn load(&self) -> Result<OutcomeFunction> {
        match self {
            Self::Builtin(f) => Ok(f.clone()),
            Self::Table(path) => load_table(path).map(OutcomeFunction::Tabulated),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("table:") {
            if path.is_empty() {
                return Err(Error::InvalidFunction("table: needs a path".into()));
            }
            return Ok(Self::Table(PathBuf::from(path)));
        }
        if let Some(exp) = s.strip_prefix("pow:") {
            let k: u32 = exp
                .parse()
                .map_err(|_| Error::InvalidFunction(format!("invalid exponent {exp:?}")))?;
            return OutcomeFunction::odd_power(k).map(Self::Builtin);
        }
        match s {
            "identity" => Ok(Self::Builtin(OutcomeFunction::Identity)),
            "sign" => Ok(Self::Builtin(OutcomeFunction::Sign)),
            _ => Err(Error::InvalidFunction(format!(
                "unknown function {s:?}; expected identity, sign, pow:<odd k> or table:<path>"
            ))),
        }
    }
}

impl fmt::Display for OutcomeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeFunction::Identity => f.write_str("identity"),
            OutcomeFunction::OddPower(k) => write!(f, "pow:{k}"),
            OutcomeFunction::Sign => f.write_str("sign"),
            OutcomeFunction::Tabulated(t) => write!(f, "table[{} nodes]", t.nodes().len()),
        }
    }
}
