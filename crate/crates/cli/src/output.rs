//! Table rendering: CSV with a header row, or one JSON object per line.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

/// Significant digits kept in printed numbers.
const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Int(u64),
    Num(f64),
    Text(String),
    Bool(bool),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Rows sharing a fixed column order.
#[derive(Debug, Clone)]
pub struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }
}

/// What a subcommand produces.
pub enum Output {
    Table(Table),
    /// Always rendered as a single JSON line.
    Document(Value),
}

/// Rounds to 12 significant digits, then prints the shortest decimal that
/// reads back as the rounded value.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded = round_sig(x);
    if rounded == 0.0 {
        return "0".into();
    }
    let mag = rounded.abs();
    if (1e-4..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn round_sig(x: f64) -> f64 {
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().expect("formatted float parses")
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::Empty => String::new(),
        Cell::Int(v) => v.to_string(),
        Cell::Num(v) => format_number(*v),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

fn json_value(cell: &Cell) -> Value {
    match cell {
        Cell::Empty => Value::Null,
        Cell::Int(v) => Value::from(*v),
        Cell::Num(v) => Number::from_f64(round_sig_finite(*v)).map_or(Value::Null, Value::Number),
        Cell::Bool(v) => Value::Bool(*v),
        Cell::Text(s) => Value::String(s.clone()),
    }
}

fn round_sig_finite(x: f64) -> f64 {
    if x.is_finite() {
        round_sig(x)
    } else {
        x
    }
}

pub fn render(output: &Output, json: bool, out: &mut dyn Write) -> io::Result<()> {
    match output {
        Output::Document(doc) => writeln!(out, "{doc}"),
        Output::Table(table) if json => {
            for row in &table.rows {
                let obj: Map<String, Value> =
                    table.columns.iter().zip(row).map(|(k, c)| ((*k).to_owned(), json_value(c))).collect();
                writeln!(out, "{}", Value::Object(obj))?;
            }
            Ok(())
        }
        Output::Table(table) => {
            let mut writer = csv::Writer::from_writer(out);
            writer.write_record(table.columns)?;
            for row in &table.rows {
                writer.write_record(row.iter().map(csv_field))?;
            }
            writer.flush()
        }
    }
}
