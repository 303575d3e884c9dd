use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Exact integer too large for `i64`.
    Big(u128),
    Float(f64),
    /// Float printed with a fixed number of decimals.
    Fixed(f64, usize),
    /// Float printed in shortest round-trip form (grid coordinates).
    Exact(f64),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Big(v as u128)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Big(v as u128)
    }
}

impl From<u128> for Cell {
    fn from(v: u128) -> Self {
        Cell::Big(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// `x` with 10 significant digits: positional between `1e-4` and `1e10`,
/// scientific otherwise.
pub fn sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let e = x.abs().log10().floor() as i32;
    if (-4..10).contains(&e) {
        format!("{:.*}", (9 - e) as usize, x)
    } else {
        format!("{x:.9e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Big(v) => v.to_string(),
            Cell::Float(v) => sig10(*v),
            Cell::Fixed(v, d) => format!("{v:.d$}"),
            Cell::Exact(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Big(v) => match u64::try_from(*v) {
                Ok(small) => Value::from(small),
                Err(_) => Value::String(v.to_string()),
            },
            Cell::Float(v) | Cell::Fixed(v, _) | Cell::Exact(v) => match Number::from_f64(*v) {
                Some(n) => Value::Number(n),
                None => Value::String(sig10(*v)),
            },
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// Named columns with rows of cells; rendered as CSV with a header line or
/// as a JSON array of records.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.columns.join(",");
                out.push('\n');
                for row in &self.rows {
                    let line: Vec<String> = row.iter().map(Cell::csv).collect();
                    let _ = writeln!(out, "{}", line.join(","));
                }
                out
            }
            Format::Json => {
                let records: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut m = Map::new();
                        for (c, v) in self.columns.iter().zip(row) {
                            m.insert(c.to_string(), v.json());
                        }
                        Value::Object(m)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Array(records)).expect("json");
                s.push('\n');
                s
            }
        }
    }
}

/// A bare list: one CSV line joined by `sep`, or a JSON object `{key: [...]}`.
pub fn render_list(key: &str, values: &[Cell], sep: &str, format: Format) -> String {
    match format {
        Format::Csv => {
            let line: Vec<String> = values.iter().map(Cell::csv).collect();
            format!("{}\n", line.join(sep))
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert(key.to_string(), Value::Array(values.iter().map(Cell::json).collect()));
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig10(0.266951), "0.2669510000");
        assert_eq!(sig10(-1.8927892607), "-1.892789261");
        assert_eq!(sig10(1234.5), "1234.500000");
        assert_eq!(sig10(3.0e-7), "3.000000000e-7");
        assert_eq!(sig10(0.0), "0");
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["sigma", "lower", "upper"]);
        t.push(vec![Cell::Int(1), Cell::Fixed(0.266951, 4), Cell::Fixed(6.0508, 4)]);
        assert_eq!(t.render(Format::Csv), "sigma,lower,upper\n1,0.2670,6.0508\n");
        let j: Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(j[0]["sigma"], 1);
        let big = render_list("theta", &[Cell::Big(u128::MAX)], ",", Format::Json);
        assert!(big.contains(&u128::MAX.to_string()));
    }
}
