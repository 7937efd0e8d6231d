//! Three-choice poll data and its comparison with the share law.

use serde::Serialize;

use crate::distribution::rho_table;
use crate::error::{Error, Result};
use crate::fitting::{chi_square, GoodnessOfFit};
use crate::numeric::{self, round_half_up};

/// Voters assumed per poll when converting percentages to counts.
pub const DEFAULT_VOTERS: f64 = 1500.0;

/// Percentages per choice (rows) and poll (columns).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PollTable {
    choice_labels: Vec<String>,
    poll_labels: Vec<String>,
    /// `columns[p][c]`: percentage of poll `p` for choice `c`.
    columns: Vec<Vec<f64>>,
    average: Vec<f64>,
    theoretical: Option<Vec<f64>>,
}

impl PollTable {
    /// Validates shape and that each poll's percentages sum to 100 +/- 1.
    pub fn new(
        choice_labels: Vec<String>,
        poll_labels: Vec<String>,
        columns: Vec<Vec<f64>>,
        theoretical: Option<Vec<f64>>,
    ) -> Result<Self> {
        let choices = choice_labels.len();
        if choices < 2 {
            return Err(Error::param("a poll needs at least two choices"));
        }
        if columns.is_empty() || poll_labels.len() != columns.len() {
            return Err(Error::param("poll labels and columns do not match"));
        }
        for (label, col) in poll_labels.iter().zip(&columns) {
            if col.len() != choices {
                return Err(Error::param(format!(
                    "poll {label} has {} entries for {choices} choices",
                    col.len()
                )));
            }
            if col.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return Err(Error::param(format!(
                    "poll {label} has an invalid percentage"
                )));
            }
            let total: f64 = col.iter().sum();
            if (total - 100.0).abs() > 1.0 + 1e-9 {
                return Err(Error::param(format!(
                    "poll {label} sums to {total}%, more than 1 point from 100"
                )));
            }
        }
        if let Some(t) = &theoretical {
            if t.len() != choices {
                return Err(Error::param(format!(
                    "theoretical column has {} entries for {choices} choices",
                    t.len()
                )));
            }
        }
        let average = (0..choices)
            .map(|c| numeric::sum(columns.iter().map(|col| col[c])) / columns.len() as f64)
            .collect();
        Ok(Self {
            choice_labels,
            poll_labels,
            columns,
            average,
            theoretical,
        })
    }

    pub fn choice_labels(&self) -> &[String] {
        &self.choice_labels
    }

    pub fn poll_labels(&self) -> &[String] {
        &self.poll_labels
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    /// Mean percentage per choice across polls.
    pub fn average(&self) -> &[f64] {
        &self.average
    }

    /// The printed theoretical column, if the source had one.
    pub fn theoretical(&self) -> Option<&[f64]> {
        self.theoretical.as_deref()
    }

    pub fn n_choices(&self) -> usize {
        self.choice_labels.len()
    }
}

/// Eight weekly three-choice internet polls (Feb-Apr 2008, about 1500 voters
/// each) with the printed theoretical column.
pub fn builtin_poll_table() -> PollTable {
    const A: [f64; 8] = [55.0, 39.0, 47.0, 64.0, 46.0, 56.0, 65.0, 47.0];
    const B: [f64; 8] = [32.0, 38.0, 31.0, 20.0, 37.0, 30.0, 19.0, 33.0];
    const C: [f64; 8] = [13.0, 23.0, 22.0, 17.0, 17.0, 15.0, 16.0, 19.0];
    let columns = (0..8).map(|p| vec![A[p], B[p], C[p]]).collect();
    PollTable::new(
        ["A", "B", "C"].map(String::from).to_vec(),
        (1..=8).map(|p| p.to_string()).collect(),
        columns,
        Some(vec![50.0, 29.0, 21.0]),
    )
    .expect("built-in poll table is well formed")
}

/// One compared column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PollRow {
    pub label: String,
    pub percentages: Vec<f64>,
    /// `sum(percentages) - 100`; nonzero when the source rounded.
    pub rounding_residue: f64,
    pub proportions: Vec<f64>,
    pub voters: f64,
    pub fit: GoodnessOfFit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PollReport {
    pub choice_labels: Vec<String>,
    /// Share law for this many choices, as proportions.
    pub reference: Vec<f64>,
    pub reference_rounded_percent: Vec<f64>,
    pub printed_theoretical: Option<Vec<f64>>,
    pub polls: Vec<PollRow>,
    pub average: PollRow,
    pub average_rounded_percent: Vec<f64>,
}

fn compare(label: &str, percentages: &[f64], reference: &[f64], voters: f64) -> Result<PollRow> {
    let total = numeric::sum(percentages.iter().copied());
    if total.is_nan() || total <= 0.0 {
        return Err(Error::param(format!("poll {label} has no votes")));
    }
    let proportions: Vec<f64> = percentages.iter().map(|p| p / total).collect();
    let observed: Vec<f64> = proportions.iter().map(|p| p * voters).collect();
    let expected: Vec<f64> = reference.iter().map(|p| p * voters).collect();
    Ok(PollRow {
        label: label.to_owned(),
        percentages: percentages.to_vec(),
        rounding_residue: total - 100.0,
        proportions,
        voters,
        fit: chi_square(&observed, &expected)?,
    })
}

/// Compares every poll and the average row with the share law for the
/// table's number of choices. Percentages are renormalized before the
/// statistics; the residue from rounding is reported per row. The average
/// row counts `voters` once per poll.
pub fn poll_report(table: &PollTable, voters: f64) -> Result<PollReport> {
    if !(voters >= 1.0 && voters.is_finite()) {
        return Err(Error::param(format!(
            "voter count {voters} must be at least 1"
        )));
    }
    let choices = table.n_choices();
    if let Some(t) = table.theoretical() {
        if t.len() != choices {
            return Err(Error::param(
                "theoretical column does not match the choices",
            ));
        }
    }
    let reference = rho_table(choices as u64, 1.0)?.into_probabilities();
    let polls = table
        .poll_labels()
        .iter()
        .zip(table.columns())
        .map(|(label, col)| compare(label, col, &reference, voters))
        .collect::<Result<Vec<_>>>()?;
    let average = compare(
        "average",
        table.average(),
        &reference,
        voters * table.columns().len() as f64,
    )?;
    Ok(PollReport {
        choice_labels: table.choice_labels().to_vec(),
        reference_rounded_percent: reference.iter().map(|p| round_half_up(p * 100.0)).collect(),
        reference,
        printed_theoretical: table.theoretical().map(<[f64]>::to_vec),
        polls,
        average_rounded_percent: table.average().iter().map(|a| round_half_up(*a)).collect(),
        average,
    })
}

/// Reads a poll CSV: header `choice,<poll>...[,average][,theoretical]`, one
/// row per choice. Cells may carry a trailing `%`. The `average` column is
/// ignored and recomputed.
pub fn parse_poll_csv(text: &str) -> Result<PollTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    if headers.len() < 2 {
        return Err(Error::Parse(
            "poll CSV needs a label column and at least one poll".into(),
        ));
    }
    let mut poll_cols = Vec::new();
    let mut theoretical_col = None;
    for (i, h) in headers.iter().enumerate().skip(1) {
        match h.to_ascii_lowercase().as_str() {
            "average" => {}
            "theoretical" => theoretical_col = Some(i),
            _ => poll_cols.push(i),
        }
    }
    if poll_cols.is_empty() {
        return Err(Error::Parse("poll CSV has no poll columns".into()));
    }

    let cell = |record: &csv::StringRecord, i: usize| -> Result<f64> {
        let raw = record.get(i).unwrap_or("");
        raw.trim_end_matches('%')
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad percentage {raw:?}")))
    };

    let mut labels = Vec::new();
    let mut rows = Vec::new();
    let mut theoretical = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        labels.push(record.get(0).unwrap_or("").to_owned());
        rows.push(
            poll_cols
                .iter()
                .map(|&i| cell(&record, i))
                .collect::<Result<Vec<_>>>()?,
        );
        if let Some(t) = theoretical_col {
            theoretical.push(cell(&record, t)?);
        }
    }
    let columns = (0..poll_cols.len())
        .map(|p| rows.iter().map(|r| r[p]).collect())
        .collect();
    let poll_labels = poll_cols.iter().map(|&i| headers[i].to_owned()).collect();
    PollTable::new(
        labels,
        poll_labels,
        columns,
        theoretical_col.map(|_| theoretical),
    )
}
