//! Raw-token ingestion. Numbers stay text so leading digits are read from
//! what the file says, not from a float conversion.

use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::str::FromStr;

use serde_json::value::RawValue;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    /// One token per line.
    Plain,
    /// Comma-separated with a header row.
    Csv,
    /// A JSON array of numbers or strings.
    Json,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" | "txt" | "text" => Ok(InputFormat::Plain),
            "csv" => Ok(InputFormat::Csv),
            "json" => Ok(InputFormat::Json),
            other => Err(Error::param(format!("unknown input format {other:?}"))),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Plain => "plain",
            InputFormat::Csv => "csv",
            InputFormat::Json => "json",
        })
    }
}

/// Where input comes from; `-` names standard input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Path(PathBuf),
    Stdin,
}

impl Source {
    pub fn from_arg(arg: &str) -> Self {
        if arg == "-" {
            Source::Stdin
        } else {
            Source::Path(PathBuf::from(arg))
        }
    }

    pub fn read_to_string(&self) -> Result<String> {
        match self {
            Source::Path(p) => fs::read_to_string(p)
                .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display())))),
            Source::Stdin => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }
}

/// Reads `source` and splits it into raw tokens; see [`parse_tokens`].
pub fn ingest_numbers(
    source: &Source,
    format: InputFormat,
    column: Option<&str>,
) -> Result<Vec<String>> {
    parse_tokens(&source.read_to_string()?, format, column)
}

/// Splits already-loaded text into raw tokens.
///
/// - plain: each non-blank line, trimmed;
/// - csv: the cells of one column (selected by header name or 1-based
///   index; optional when there is a single column). Short rows yield an
///   empty token;
/// - json: the elements of a top-level array, numbers verbatim and strings
///   unquoted. Nested values are passed through as their source text.
pub fn parse_tokens(text: &str, format: InputFormat, column: Option<&str>) -> Result<Vec<String>> {
    match format {
        InputFormat::Plain => Ok(text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_owned)
            .collect()),
        InputFormat::Csv => csv_column(text, column),
        InputFormat::Json => json_tokens(text),
    }
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn select_column(headers: &csv::StringRecord, column: Option<&str>) -> Result<usize> {
    match column {
        None if headers.len() == 1 => Ok(0),
        None => Err(Error::param(format!(
            "CSV has {} columns; choose one with --column",
            headers.len()
        ))),
        Some(sel) => {
            if let Some(i) = headers.iter().position(|h| h == sel.trim()) {
                return Ok(i);
            }
            match sel.trim().parse::<usize>() {
                Ok(i) if (1..=headers.len()).contains(&i) => Ok(i - 1),
                _ => Err(Error::param(format!("CSV has no column {sel:?}"))),
            }
        }
    }
}

fn csv_column(text: &str, column: Option<&str>) -> Result<Vec<String>> {
    let mut reader = csv_reader(text);
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    let index = select_column(&headers, column)?;
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        out.push(record.get(index).unwrap_or("").to_owned());
    }
    Ok(out)
}

fn json_tokens(text: &str) -> Result<Vec<String>> {
    let items: Vec<&RawValue> = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("expected a JSON array: {e}")))?;
    Ok(items
        .into_iter()
        .map(|raw| {
            let s = raw.get();
            if s.starts_with('"') {
                serde_json::from_str::<String>(s).unwrap_or_else(|_| s.to_owned())
            } else {
                s.to_owned()
            }
        })
        .collect())
}

/// Reads an `n,count` CSV (header first) into dense counts for `n = 1..N`.
/// Repeated `n` rows are added together.
pub fn parse_histogram_csv(text: &str, n_boxes: u64) -> Result<Vec<f64>> {
    if n_boxes == 0 {
        return Err(Error::param("the number of boxes must be at least 1"));
    }
    let len =
        usize::try_from(n_boxes).map_err(|_| Error::param("too many boxes for a histogram"))?;
    let mut reader = csv_reader(text);
    let mut counts = vec![0.0; len];
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.len() < 2 {
            return Err(Error::Parse(format!("row {} needs n and count", row + 1)));
        }
        let n: u64 = record[0]
            .parse()
            .map_err(|_| Error::Parse(format!("row {}: bad n {:?}", row + 1, &record[0])))?;
        let count: f64 = record[1]
            .parse()
            .map_err(|_| Error::Parse(format!("row {}: bad count {:?}", row + 1, &record[1])))?;
        if !(count >= 0.0 && count.is_finite()) {
            return Err(Error::Parse(format!(
                "row {}: count must be nonnegative",
                row + 1
            )));
        }
        if n == 0 || n > n_boxes {
            return Err(Error::Parse(format!(
                "row {}: n = {n} is outside 1..={n_boxes}",
                row + 1
            )));
        }
        counts[(n - 1) as usize] += count;
    }
    Ok(counts)
}
