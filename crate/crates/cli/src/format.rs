//! Plain-text matrix files.
//!
//! ```text
//! m n
//! a11 a12 ... a1n
//! ...
//! am1 am2 ... amn
//! ```
//!
//! Entries are written with 17 significant digits, which round-trips every
//! `f64` exactly. Blank lines after the last row are ignored.

use std::fmt::Write as _;
use std::path::Path;

use incoherence_core::{Matrix, Vector};

use crate::error::CliError;

pub fn parse_matrix(text: &str, origin: &str) -> Result<Matrix, CliError> {
    let err = |line: usize, message: String| CliError::Parse { path: origin.to_string(), line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (header_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| err(1, "empty file, expected `m n` header".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(err(header_no, format!("expected `m n`, found {:?}", header.trim())));
    }
    let parse_dim = |s: &str| -> Result<usize, CliError> {
        match s.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(err(header_no, format!("invalid dimension {s:?}"))),
        }
    };
    let (m, n) = (parse_dim(dims[0])?, parse_dim(dims[1])?);

    let mut entries = Vec::with_capacity(m * n);
    let mut last_line = header_no;
    for row in 0..m {
        let (no, line) = lines
            .next()
            .ok_or_else(|| err(last_line + 1, format!("missing row {} of {m}", row + 1)))?;
        last_line = no;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != n {
            return Err(err(no, format!("expected {n} values, found {}", fields.len())));
        }
        for f in fields {
            let v: f64 = f.parse().map_err(|_| err(no, format!("invalid number {f:?}")))?;
            if !v.is_finite() {
                return Err(err(no, format!("non-finite value {f:?}")));
            }
            entries.push(v);
        }
    }
    if let Some((no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(err(no, format!("unexpected content after {m} rows")));
    }
    Matrix::new(m, n, entries).map_err(|e| err(header_no, e.to_string()))
}

pub fn format_matrix(a: &Matrix) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", a.rows(), a.cols()).unwrap();
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
    parse_matrix(&text, &path.display().to_string())
}

pub fn write_matrix(path: &Path, a: &Matrix) -> Result<(), CliError> {
    std::fs::write(path, format_matrix(a))
        .map_err(|e| CliError::io(format!("writing {}", path.display()), e))
}

/// A vector stored as a one-column (`n 1`) or one-row (`1 n`) matrix file.
pub fn read_vector(path: &Path) -> Result<Vector, CliError> {
    let a = read_matrix(path)?;
    if a.cols() != 1 && a.rows() != 1 {
        return Err(CliError::Input(format!(
            "{}: expected a single row or column, found {}x{}",
            path.display(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(Vector::new(a.as_slice().to_vec())?)
}
