//! Plain-text number formatting and Wigner-field CSV files.

use std::io::{Read, Write};

use crate::error::{Result, TomoError};
use crate::phase_space::{PhaseSpaceGrid, WignerField};

/// Significant digits written for every value.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Formats `x` with 15 significant digits in plain decimal notation (or
/// scientific notation for very large or small magnitudes), trimming
/// trailing zeros. Output depends only on the bits of `x`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mant, exp) = s.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();

    if !(-5..15).contains(&exp) {
        let mant = trim_zeros(mant.to_string());
        return format!("{mant}e{exp}");
    }
    let point = exp + 1;
    let mut body = String::with_capacity(digits.len() + 8);
    if neg {
        body.push('-');
    }
    if point <= 0 {
        body.push_str("0.");
        body.extend(std::iter::repeat_n('0', (-point) as usize));
        body.push_str(&digits);
    } else {
        let p = point as usize;
        body.push_str(&digits[..p]);
        body.push('.');
        body.push_str(&digits[p..]);
    }
    trim_zeros(body)
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Writes `p,q,value` rows (header included, LF line endings).
pub fn write_wigner_csv<W: Write>(field: &WignerField, mut out: W) -> std::io::Result<()> {
    let mut buf = String::with_capacity(field.values().len() * 48);
    buf.push_str("p,q,value\n");
    for (pt, v) in field.grid().points().zip(field.values()) {
        buf.push_str(&format_number(pt.p));
        buf.push(',');
        buf.push_str(&format_number(pt.q));
        buf.push(',');
        buf.push_str(&format_number(*v));
        buf.push('\n');
    }
    out.write_all(buf.as_bytes())
}

/// Reads a `p,q,value` file written by [`write_wigner_csv`] and recovers
/// the grid from the distinct p coordinates.
pub fn read_wigner_csv<R: Read>(input: R) -> Result<WignerField> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| TomoError::GridMismatch(format!("malformed CSV header: {e}")))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["p", "q", "value"] {
        return Err(TomoError::GridMismatch(format!(
            "expected header p,q,value, found {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| TomoError::GridMismatch(format!("malformed CSV row {}: {e}", line + 2)))?;
        if rec.len() != 3 {
            return Err(TomoError::GridMismatch(format!("row {} has {} fields", line + 2, rec.len())));
        }
        let parse = |i: usize| -> Result<f64> {
            rec[i].trim().parse::<f64>().map_err(|_| {
                TomoError::GridMismatch(format!("row {}: cannot parse `{}`", line + 2, &rec[i]))
            })
        };
        rows.push((parse(0)?, parse(1)?, parse(2)?));
    }
    let n = (rows.len() as f64).sqrt().round() as usize;
    if n * n != rows.len() || n < 3 || n.is_multiple_of(2) {
        return Err(TomoError::GridMismatch(format!(
            "{} rows do not form an odd square grid",
            rows.len()
        )));
    }
    let half = rows[rows.len() - 1].0;
    let grid = PhaseSpaceGrid::new(half, n)
        .map_err(|e| TomoError::GridMismatch(format!("cannot infer grid: {e}")))?;
    let tol = 1e-9 * half.max(1.0);
    for ((p, q, _), pt) in rows.iter().zip(grid.points()) {
        if (p - pt.p).abs() > tol || (q - pt.q).abs() > tol {
            return Err(TomoError::GridMismatch(format!(
                "node ({p}, {q}) does not match the uniform {n}x{n} grid on [-{half}, {half}]^2"
            )));
        }
    }
    WignerField::new(grid, rows.into_iter().map(|r| r.2).collect())
}
