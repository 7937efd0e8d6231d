//! Aligned text tables and CSV from the same rows.

use boxshare::io::emit::sig17;

/// A cell keeps full precision for CSV and a short form for tables.
#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Int(u128),
    /// Integer too wide for `Int`, kept as its decimal digits.
    Digits(String),
    Real(f64),
}

impl Cell {
    fn table(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Digits(d) => d.clone(),
            Cell::Real(x) => format_real(*x),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Digits(d) => d.clone(),
            Cell::Real(x) => sig17(*x),
        }
    }

    fn right_aligned(&self) -> bool {
        !matches!(self, Cell::Text(_))
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i.into())
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

pub fn format_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let a = x.abs();
    if a < 1e7 && x.fract() == 0.0 {
        format!("{x:.0}")
    } else if (1e-4..1e7).contains(&a) {
        format!("{x:.6}")
    } else {
        format!("{x:.6e}")
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<I, S>(headers: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn to_text(&self) -> String {
        let text: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::table).collect())
            .collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|c| {
                text.iter()
                    .map(|r| r[c].chars().count())
                    .chain([self.headers[c].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let mut line = |cells: Vec<(String, bool)>| {
            let parts: Vec<String> = cells
                .into_iter()
                .zip(&widths)
                .map(|((s, right), w)| {
                    if right {
                        format!("{s:>w$}")
                    } else {
                        format!("{s:<w$}")
                    }
                })
                .collect();
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        };
        let header_right: Vec<bool> = (0..self.headers.len())
            .map(|c| self.rows.first().is_some_and(|r| r[c].right_aligned()))
            .collect();
        line(self.headers.iter().cloned().zip(header_right).collect());
        for (cells, row) in text.into_iter().zip(&self.rows) {
            line(
                cells
                    .into_iter()
                    .zip(row.iter().map(Cell::right_aligned))
                    .collect(),
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::csv))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_alignment() {
        let mut t = Table::new(["n", "p"]);
        t.row(vec![1u64.into(), 0.5.into()]);
        t.row(vec![10u64.into(), 0.25.into()]);
        assert_eq!(t.to_text(), " n         p\n 1  0.500000\n10  0.250000\n");
    }

    #[test]
    fn csv_quotes_and_full_precision() {
        let mut t = Table::new(["label", "x"]);
        t.row(vec!["a,b".into(), 0.1.into()]);
        assert_eq!(t.to_csv(), "label,x\n\"a,b\",0.10000000000000001\n");
    }

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.25), "0.250000");
        assert_eq!(format_real(1.5e-9), "1.500000e-9");
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(-1.0), "-1");
        assert_eq!(format_real(52.375), "52.375000");
    }
}
