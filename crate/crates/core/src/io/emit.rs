//! JSON emission with 17 significant digits and the share-table codecs.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::distribution::{ShareDistribution, ShareKind};
use crate::error::{Error, Result};

/// Formats a float with 17 significant digits, in plain decimal notation for
/// moderate magnitudes and exponent notation otherwise. Non-finite values
/// become `null` since JSON has no spelling for them.
pub fn sig17(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    let sci = format!("{:.16e}", x);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-5..=16).contains(&exp) {
        let decimals = (16 - exp).max(1) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(sig17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with every float written to 17 significant digits.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(out).map_err(|e| Error::Parse(e.to_string()))
}

/// `n,probability` CSV of a share table, header first.
pub fn share_csv(dist: &ShareDistribution) -> String {
    let mut out = String::from("n,probability\n");
    for (i, p) in dist.probabilities().iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, sig17(*p)));
    }
    out
}

/// Reads back [`share_csv`] output. The CSV carries no exponent, so the
/// caller supplies it (`1` for the plain law).
pub fn parse_share_csv(text: &str, alpha: f64) -> Result<ShareDistribution> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut probabilities = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.len() != 2 {
            return Err(Error::Parse(format!(
                "row {} does not have two fields",
                i + 1
            )));
        }
        let n: u64 = record[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad box index {:?}", &record[0])))?;
        if n != i as u64 + 1 {
            return Err(Error::Parse(format!(
                "expected box {} but found {n}",
                i + 1
            )));
        }
        let p: f64 = record[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad probability {:?}", &record[1])))?;
        probabilities.push(p);
    }
    let kind = if alpha == 1.0 {
        ShareKind::Plain
    } else {
        ShareKind::Alpha
    };
    ShareDistribution::from_parts(probabilities, alpha, kind)
}

#[derive(Deserialize)]
struct ShareDto {
    n_boxes: u64,
    probabilities: Vec<f64>,
    alpha: f64,
    kind: ShareKind,
}

/// Reads back a share table emitted with [`to_json`].
pub fn parse_share_json(text: &str) -> Result<ShareDistribution> {
    let dto: ShareDto = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if dto.n_boxes != dto.probabilities.len() as u64 {
        return Err(Error::Parse(format!(
            "n_boxes is {} but {} probabilities are listed",
            dto.n_boxes,
            dto.probabilities.len()
        )));
    }
    ShareDistribution::from_parts(dto.probabilities, dto.alpha, dto.kind)
}
