//! GIBCFF v1, the plain-text far-field matrix format.
//!
//! ```text
//! GIBCFF v1 n=<n> k=<k> eta=<η>
//! <i> <j> <re> <im>      (n² lines, 1-based, row = observation, column = incidence)
//! ```
//!
//! Entries are written in scientific notation with 17 significant digits so
//! that reading a file back reproduces every bit.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use gibc_core::forward::FarFieldMatrix;
use gibc_core::linalg::ComplexMatrix;
use gibc_core::Complex64;
use thiserror::Error;

pub const MAGIC: &str = "GIBCFF";
pub const VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum FarFieldFileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("entries missing: expected {expected}, found {found}")]
    Incomplete { expected: usize, found: usize },
    #[error("invalid far-field data: {0}")]
    Invalid(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> FarFieldFileError {
    FarFieldFileError::Parse { line, message: message.into() }
}

/// Renders `u` in GIBCFF v1.
pub fn to_string(u: &FarFieldMatrix) -> String {
    let n = u.n();
    let mut out = String::with_capacity(64 + n * n * 56);
    // `{}` prints the shortest representation that parses back exactly
    writeln!(out, "{MAGIC} {VERSION} n={n} k={} eta={}", u.k(), u.eta()).unwrap();
    let v = u.values();
    for i in 0..n {
        for j in 0..n {
            let z = v[(i, j)];
            writeln!(out, "{} {} {:.16e} {:.16e}", i + 1, j + 1, z.re, z.im).unwrap();
        }
    }
    out
}

/// Parses a GIBCFF v1 document.
pub fn from_str(text: &str) -> Result<FarFieldMatrix, FarFieldFileError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let (n, k, eta) = parse_header(header)?;

    let mut values = ComplexMatrix::zeros(n, n);
    let mut seen = vec![false; n * n];
    let mut count = 0;
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(parse_err(line, format!("expected 4 fields, found {}", fields.len())));
        }
        let index = |s: &str, what: &str| -> Result<usize, FarFieldFileError> {
            let v: usize = s.parse().map_err(|_| parse_err(line, format!("bad {what} index {s:?}")))?;
            if v == 0 || v > n {
                return Err(parse_err(line, format!("{what} index {v} outside 1..={n}")));
            }
            Ok(v - 1)
        };
        let number = |s: &str| -> Result<f64, FarFieldFileError> {
            let v: f64 = s.parse().map_err(|_| parse_err(line, format!("bad number {s:?}")))?;
            if !v.is_finite() {
                return Err(parse_err(line, format!("non-finite value {s}")));
            }
            Ok(v)
        };
        let (i, j) = (index(fields[0], "row")?, index(fields[1], "column")?);
        if std::mem::replace(&mut seen[i * n + j], true) {
            return Err(parse_err(line, format!("duplicate entry ({}, {})", i + 1, j + 1)));
        }
        values[(i, j)] = Complex64::new(number(fields[2])?, number(fields[3])?);
        count += 1;
    }
    if count != n * n {
        return Err(FarFieldFileError::Incomplete { expected: n * n, found: count });
    }
    FarFieldMatrix::new(values, k, eta).map_err(|e| FarFieldFileError::Invalid(e.to_string()))
}

fn parse_header(header: &str) -> Result<(usize, f64, f64), FarFieldFileError> {
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some(MAGIC) {
        return Err(parse_err(1, format!("expected header starting with {MAGIC}")));
    }
    match tokens.next() {
        Some(VERSION) => {}
        other => return Err(parse_err(1, format!("unsupported version {other:?}"))),
    }
    let (mut n, mut k, mut eta) = (None, None, None);
    for tok in tokens {
        let (key, value) = tok.split_once('=').ok_or_else(|| parse_err(1, format!("malformed field {tok:?}")))?;
        let bad = || parse_err(1, format!("bad value for {key}: {value:?}"));
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(|_| bad())?),
            "k" => k = Some(value.parse::<f64>().map_err(|_| bad())?),
            "eta" => eta = Some(value.parse::<f64>().map_err(|_| bad())?),
            _ => return Err(parse_err(1, format!("unknown header field {key:?}"))),
        }
    }
    match (n, k, eta) {
        (Some(n), Some(k), Some(eta)) if n > 0 => Ok((n, k, eta)),
        (Some(0), ..) => Err(parse_err(1, "n must be positive")),
        _ => Err(parse_err(1, "header needs n, k and eta")),
    }
}

pub fn write(path: &Path, u: &FarFieldMatrix) -> Result<(), FarFieldFileError> {
    fs::write(path, to_string(u)).map_err(|source| FarFieldFileError::Io { path: path.to_owned(), source })
}

pub fn read(path: &Path) -> Result<FarFieldMatrix, FarFieldFileError> {
    let text = fs::read_to_string(path).map_err(|source| FarFieldFileError::Io { path: path.to_owned(), source })?;
    from_str(&text)
}
