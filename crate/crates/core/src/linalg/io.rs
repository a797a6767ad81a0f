//! Matrix text and JSON formats.
//!
//! Text: one row per line, whitespace-separated `p` or `p/q` entries; blank
//! lines and `#` comments are ignored. JSON: `{"rows", "cols", "entries"}`
//! with `entries` a list of rows of `"p/q"` strings.

use serde::{Deserialize, Serialize};

use super::matrix::RatMatrix;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&RatMatrix> for MatrixDoc {
    fn from(m: &RatMatrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|r| m.row_slice(r).iter().map(format_rational).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixDoc> for RatMatrix {
    type Error = Error;
    fn try_from(d: &MatrixDoc) -> Result<Self> {
        if d.entries.len() != d.rows || d.entries.iter().any(|r| r.len() != d.cols) {
            return Err(Error::Parse(format!("entries do not form a {}x{} matrix", d.rows, d.cols)));
        }
        let data: Vec<Rational> = d
            .entries
            .iter()
            .flatten()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()?;
        RatMatrix::from_vec(d.rows, d.cols, data)
    }
}

pub fn parse_matrix_text(text: &str) -> Result<RatMatrix> {
    let rows: Vec<Vec<Rational>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    RatMatrix::from_rows(rows).map_err(|_| Error::Parse("rows have different lengths".into()))
}

pub fn format_matrix_text(m: &RatMatrix) -> String {
    let mut s = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row_slice(r).iter().map(format_rational).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_matrix_json(text: &str) -> Result<RatMatrix> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    RatMatrix::try_from(&doc)
}

pub fn format_matrix_json(m: &RatMatrix) -> String {
    serde_json::to_string_pretty(&MatrixDoc::from(m)).expect("matrix documents always serialize")
}

/// Accepts either format, choosing JSON when the text starts with `{`.
pub fn parse_matrix(text: &str) -> Result<RatMatrix> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text)
    } else {
        parse_matrix_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::ratio;

    #[test]
    fn text_format() {
        let m = parse_matrix_text("# phi\n0 1\n-1 1/2\n\n").unwrap();
        assert_eq!(m.get(1, 1), &ratio(1, 2));
        assert_eq!(format_matrix_text(&m), "0 1\n-1 1/2\n");
        assert!(parse_matrix_text("1 2\n3\n").is_err());
        assert!(parse_matrix_text("1 x\n").is_err());
    }

    #[test]
    fn json_format() {
        let m = RatMatrix::from_rows(vec![vec![ratio(3, 4), ratio(-1, 1)]]).unwrap();
        let s = format_matrix_json(&m);
        assert!(s.contains("\"3/4\""));
        assert_eq!(parse_matrix(&s).unwrap(), m);
        assert!(parse_matrix_json(r#"{"rows":2,"cols":1,"entries":[["1"]]}"#).is_err());
    }
}
