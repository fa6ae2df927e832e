//! CSV and JSON rendering of result series.
//!
//! Reals are rounded to 12 significant digits and then printed in their
//! shortest round-trip form, so repeated runs give byte-identical files.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::codec::{CodeLengthReport, CodecMode};
use crate::{Error, InfoSummary, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::invalid(format!(
                "unknown format {other:?} (expected csv or json)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Text(String),
    Null,
}

/// A row type with a fixed column schema.
pub trait Record {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
}

pub const INFO_SUMMARY_HEADER: &[&str] = &[
    "N",
    "log_N",
    "pi_N",
    "theta_N",
    "mertens_sum",
    "chebyshev_gap",
    "entropy_decomp_sum",
    "entropy_decomp_gap",
    "info_per_prime",
    "info_per_prime_ratio_nats",
    "info_per_prime_ratio_bits",
];

impl Record for InfoSummary {
    fn header() -> &'static [&'static str] {
        INFO_SUMMARY_HEADER
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Int(self.n),
            Cell::Real(self.log_n),
            Cell::Int(self.pi_n),
            Cell::Real(self.theta_n),
            Cell::Real(self.mertens_sum),
            Cell::Real(self.chebyshev_gap),
            Cell::Real(self.entropy_decomp_sum),
            Cell::Real(self.entropy_decomp_gap),
            Cell::Real(self.info_per_prime),
            Cell::Real(self.info_per_prime_ratio_nats),
            Cell::Real(self.info_per_prime_ratio_bits),
        ]
    }
}

pub const CODE_LENGTH_HEADER: &[&str] = &[
    "N",
    "message_count",
    "mean_actual_bits",
    "mean_ideal_bits",
    "entropy_floor_bits",
    "redundancy_ideal",
    "redundancy_actual",
    "max_excess_bits",
    "mode",
    "seed",
    "samples",
];

impl Record for CodeLengthReport {
    fn header() -> &'static [&'static str] {
        CODE_LENGTH_HEADER
    }

    fn cells(&self) -> Vec<Cell> {
        let (seed, samples) = match self.mode {
            CodecMode::Exhaustive => (Cell::Null, Cell::Null),
            CodecMode::MonteCarlo { seed, samples } => (Cell::Int(seed), Cell::Int(samples)),
        };
        vec![
            Cell::Int(self.n),
            Cell::Int(self.message_count),
            Cell::Real(self.mean_actual_bits),
            Cell::Real(self.mean_ideal_bits),
            Cell::Real(self.entropy_floor_bits),
            Cell::Real(self.redundancy_ideal),
            Cell::Real(self.redundancy_actual),
            Cell::Real(self.max_excess_bits),
            Cell::Text(self.mode.to_string()),
            seed,
            samples,
        ]
    }
}

/// 12 significant digits, shortest form that round-trips the rounded value.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".to_owned();
    }
    rounded.to_string()
}

fn round_real(x: f64) -> f64 {
    format_real(x).parse().unwrap_or(x)
}

/// Renders rows under `header`. Fails on an empty series.
pub fn render_table(header: &[&str], rows: &[Vec<Cell>], format: Format) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::invalid("refusing to write an empty series"));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != header.len()) {
        return Err(Error::invalid(format!(
            "row has {} cells for {} columns",
            r.len(),
            header.len()
        )));
    }
    Ok(match format {
        Format::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for row in rows {
                let fields: Vec<String> = row
                    .iter()
                    .map(|c| match c {
                        Cell::Int(v) => v.to_string(),
                        Cell::Real(v) => format_real(*v),
                        Cell::Text(s) => s.clone(),
                        Cell::Null => String::new(),
                    })
                    .collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = header
                        .iter()
                        .zip(row)
                        .map(|(k, c)| {
                            let v = match c {
                                Cell::Int(v) => Value::from(*v),
                                Cell::Real(v) => Number::from_f64(round_real(*v))
                                    .map_or(Value::Null, Value::Number),
                                Cell::Text(s) => Value::from(s.as_str()),
                                Cell::Null => Value::Null,
                            };
                            ((*k).to_owned(), v)
                        })
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&records).expect("JSON values serialize");
            out.push('\n');
            out
        }
    })
}

pub fn render_report<R: Record>(series: &[R], format: Format) -> Result<String> {
    let rows: Vec<Vec<Cell>> = series.iter().map(Record::cells).collect();
    render_table(R::header(), &rows, format)
}

/// Where rendered output goes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    Path(PathBuf),
}

/// Writes already-rendered output; nothing is written if rendering failed earlier.
pub fn write_output(text: &str, dest: &Destination) -> Result<()> {
    match dest {
        Destination::Stdout => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
        Destination::Path(path) => write_file(path, text),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Renders `series` and writes it to `dest`.
pub fn emit_report<R: Record>(series: &[R], format: Format, dest: &Destination) -> Result<()> {
    let text = render_report(series, format)?;
    write_output(&text, dest)
}
