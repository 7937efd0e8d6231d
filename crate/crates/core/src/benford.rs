//! First-significant-digit analysis: the share law with nine boxes, one per
//! leading digit.
//!
//! Digits are read from the text of each token, never from a parsed float.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::distribution::rho_table;
use crate::error::{Error, Result};
use crate::fitting::{chi_square, GoodnessOfFit};

const CURRENCY: &[char] = &[
    '$', '€', '£', '¥', '₹', '₽', '₩', '¢', '₪', '₺', '₴', '₦', '฿', '₫', '₱', '₲', '₡', '₵', '₸',
    '₼', '₾',
];

fn is_sign(c: char) -> bool {
    matches!(c, '+' | '-' | '\u{2212}')
}

fn is_decoration(c: char) -> bool {
    c.is_whitespace() || CURRENCY.contains(&c)
}

/// First nonzero decimal digit of a numeric token.
///
/// Accepts an optional sign, currency symbols, surrounding parentheses,
/// comma thousands separators in the integer part, a decimal point, an
/// exponent and a trailing `%`. Anything else, and any value equal to zero,
/// gives `None`.
pub fn leading_digit(token: &str) -> Option<u8> {
    let mut s = token.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        s = inner.trim();
    }
    let mut seen_sign = false;
    loop {
        let mut chars = s.chars();
        match chars.next() {
            Some(c) if is_decoration(c) => s = chars.as_str(),
            Some(c) if is_sign(c) && !seen_sign => {
                seen_sign = true;
                s = chars.as_str();
            }
            _ => break,
        }
    }
    s = s.strip_suffix('%').unwrap_or(s);
    s = s.trim_end_matches(is_decoration);

    let bytes = s.as_bytes();
    let mut i = 0;
    let mut first = None;
    let mut mantissa_digits = 0;
    let note = |b: u8, first: &mut Option<u8>| {
        if first.is_none() && b != b'0' {
            *first = Some(b - b'0');
        }
    };

    // integer part, commas allowed between digits
    while i < bytes.len() {
        match bytes[i] {
            b @ b'0'..=b'9' => {
                note(b, &mut first);
                mantissa_digits += 1;
            }
            b',' if mantissa_digits > 0 && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) => {}
            _ => break,
        }
        i += 1;
    }
    if bytes.get(i) == Some(&b'.') {
        i += 1;
        while let Some(&b) = bytes.get(i).filter(|b| b.is_ascii_digit()) {
            note(b, &mut first);
            mantissa_digits += 1;
            i += 1;
        }
    }
    if mantissa_digits == 0 {
        return None;
    }
    if matches!(bytes.get(i), Some(b'e' | b'E')) {
        i += 1;
        if matches!(bytes.get(i), Some(b'+' | b'-')) {
            i += 1;
        }
        let start = i;
        while bytes.get(i).is_some_and(u8::is_ascii_digit) {
            i += 1;
        }
        if i == start {
            return None;
        }
    }
    if i != bytes.len() {
        return None;
    }
    first
}

/// Leading-digit counts plus the number of rejected tokens.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DigitStats {
    counts: [u64; 9],
    skipped: u64,
}

impl DigitStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds stats from per-digit counts (digit 1 first).
    pub fn from_counts(counts: [u64; 9], skipped: u64) -> Self {
        Self { counts, skipped }
    }

    pub fn observe(&mut self, token: &str) {
        match leading_digit(token) {
            Some(d) => self.counts[usize::from(d - 1)] += 1,
            None => self.skipped += 1,
        }
    }

    /// Count for digit `d` in `1..=9`; zero otherwise.
    pub fn count(&self, d: u8) -> u64 {
        match d {
            1..=9 => self.counts[usize::from(d - 1)],
            _ => 0,
        }
    }

    pub fn counts(&self) -> &[u64; 9] {
        &self.counts
    }

    pub fn skipped(&self) -> u64 {
        self.skipped
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn merge(&mut self, other: &DigitStats) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.skipped += other.skipped;
    }
}

impl Serialize for DigitStats {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let counts: std::collections::BTreeMap<String, u64> =
            (1..=9u8).map(|d| (d.to_string(), self.count(d))).collect();
        let mut st = serializer.serialize_struct("DigitStats", 3)?;
        st.serialize_field("counts", &counts)?;
        st.serialize_field("total", &self.total())?;
        st.serialize_field("skipped", &self.skipped)?;
        st.end()
    }
}

/// Folds [`leading_digit`] over a token stream.
pub fn digit_histogram<I, S>(tokens: I) -> DigitStats
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut stats = DigitStats::new();
    for t in tokens {
        stats.observe(t.as_ref());
    }
    stats
}

/// Benford proportions `log10(1 + 1/d)`, digit 1 first.
pub fn benford_proportions() -> [f64; 9] {
    let table = rho_table(9, 1.0).expect("nine boxes is a valid table");
    let mut out = [0.0; 9];
    out.copy_from_slice(table.probabilities());
    out
}

/// Expected digit counts for `total` observations.
pub fn benford_expected(total: u64) -> Result<[f64; 9]> {
    if total == 0 {
        return Err(Error::param(
            "expected counts need at least one observation",
        ));
    }
    Ok(benford_proportions().map(|p| p * total as f64))
}

/// MAD conformance bands for first-digit tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conformity {
    Close,
    Acceptable,
    Marginal,
    Nonconformity,
}

impl Conformity {
    pub fn from_mad(mad: f64) -> Self {
        if mad <= 0.006 {
            Conformity::Close
        } else if mad <= 0.012 {
            Conformity::Acceptable
        } else if mad <= 0.015 {
            Conformity::Marginal
        } else {
            Conformity::Nonconformity
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Conformity::Close => "close conformity",
            Conformity::Acceptable => "acceptable conformity",
            Conformity::Marginal => "marginally acceptable conformity",
            Conformity::Nonconformity => "nonconformity",
        }
    }
}

impl fmt::Display for Conformity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Conformity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenfordReport {
    pub stats: DigitStats,
    pub observed: [f64; 9],
    pub expected: [f64; 9],
    pub fit: GoodnessOfFit,
    pub conformity: Conformity,
}

/// Conformance of observed leading digits with the Benford proportions.
pub fn benford_report(stats: &DigitStats) -> Result<BenfordReport> {
    let total = stats.total();
    if total == 0 {
        return Err(Error::param("no leading digits to analyze"));
    }
    let observed_counts = stats.counts.map(|c| c as f64);
    let fit = chi_square(&observed_counts, &benford_expected(total)?)?;
    Ok(BenfordReport {
        stats: *stats,
        observed: observed_counts.map(|c| c / total as f64),
        expected: benford_proportions(),
        fit,
        conformity: Conformity::from_mad(fit.mad),
    })
}
