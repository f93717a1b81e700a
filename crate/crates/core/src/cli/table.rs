//! CSV tables with deterministic number rendering, and a comparator for
//! golden files.

use std::fmt::Write as _;

/// Rounds to `digits` significant digits and prints the shortest decimal
/// that reads back to the rounded value. Negative zero prints as `0`.
pub fn format_number(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.clamp(1, 17);
    let rounded: f64 = format!("{:.*e}", digits - 1, x).parse().unwrap_or(x);
    if rounded == 0.0 {
        "0".into()
    } else {
        format!("{rounded}")
    }
}

/// One cell of a table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// Header plus rows in emission order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, digits: usize) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match cell {
                    Cell::Num(v) => out.push_str(&format_number(*v, digits)),
                    Cell::Int(v) => {
                        let _ = write!(out, "{v}");
                    }
                    Cell::Text(s) => out.push_str(s),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Compares two CSV documents: headers must match exactly, text cells must
/// match exactly and numeric cells must agree within `rel_tol` (relative to
/// the larger magnitude, absolute below 1). `rel_tol = 0` demands equal values.
pub fn compare_csv(expected: &str, actual: &str, rel_tol: f64) -> Result<(), String> {
    let parse = |doc: &str| -> Result<(csv::StringRecord, Vec<csv::StringRecord>), String> {
        let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(doc.as_bytes());
        let header = rd.headers().map_err(|e| e.to_string())?.clone();
        let rows = rd.records().collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
        Ok((header, rows))
    };
    let (eh, er) = parse(expected)?;
    let (ah, ar) = parse(actual)?;
    if eh != ah {
        return Err(format!("header mismatch: {eh:?} vs {ah:?}"));
    }
    if er.len() != ar.len() {
        return Err(format!("row count {} vs {}", er.len(), ar.len()));
    }
    for (line, (e, a)) in er.iter().zip(&ar).enumerate() {
        for (col, (x, y)) in e.iter().zip(a.iter()).enumerate() {
            if x == y {
                continue;
            }
            let ok = match (x.parse::<f64>(), y.parse::<f64>()) {
                (Ok(p), Ok(q)) => (p - q).abs() <= rel_tol * p.abs().max(q.abs()).max(1.0),
                _ => false,
            };
            if !ok {
                return Err(format!("row {} column {}: {x} vs {y}", line + 1, &eh[col]));
            }
        }
    }
    Ok(())
}
