//! Replays the checked-in fuzz corpus through the same checks as the fuzz
//! targets, so the seeds stay exercised on stable toolchains.

use std::fs;
use std::path::PathBuf;

use boxshare::benford::{digit_histogram, leading_digit};
use boxshare::fitting::fit_alpha;
use boxshare::io::{
    parse_histogram_csv, parse_poll_csv, parse_share_csv, parse_share_json, parse_tokens,
    poll_report, share_csv, to_json, InputFormat,
};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text_seeds(target: &str) -> Vec<(String, String)> {
    seeds(target)
        .into_iter()
        .filter_map(|(name, bytes)| String::from_utf8(bytes).ok().map(|s| (name, s)))
        .collect()
}

#[test]
fn leading_digit_seeds() {
    let mut digits = 0;
    for (name, text) in text_seeds("leading_digit") {
        if let Some(d) = leading_digit(&text) {
            assert!((1..=9).contains(&d), "{name}");
            assert_eq!(leading_digit(&format!(" {text}\t")), Some(d), "{name}");
            digits += 1;
        }
    }
    assert!(digits >= 5);
}

#[test]
fn token_seeds() {
    for (name, text) in text_seeds("tokens") {
        for format in [InputFormat::Plain, InputFormat::Csv, InputFormat::Json] {
            for column in [None, Some("1"), Some("amount")] {
                if let Ok(tokens) = parse_tokens(&text, format, column) {
                    let stats = digit_histogram(&tokens);
                    assert_eq!(
                        stats.total() + stats.skipped(),
                        tokens.len() as u64,
                        "{name}"
                    );
                }
            }
        }
    }
}

#[test]
fn poll_seeds() {
    let mut parsed = 0;
    for (_, text) in text_seeds("poll_csv") {
        if let Ok(table) = parse_poll_csv(&text) {
            poll_report(&table, 1500.0).unwrap();
            parsed += 1;
        }
    }
    assert_eq!(parsed, 2);
}

#[test]
fn histogram_seeds() {
    let mut fitted = 0;
    for (name, bytes) in seeds("histogram_csv") {
        let (&boxes, rest) = bytes.split_first().unwrap();
        let Ok(text) = std::str::from_utf8(rest) else {
            continue;
        };
        let boxes = u64::from(boxes);
        if let Ok(counts) = parse_histogram_csv(text, boxes) {
            assert_eq!(counts.len() as u64, boxes, "{name}");
            if let Ok(fit) = fit_alpha(&counts, boxes) {
                assert!(fit.alpha_hat.is_finite(), "{name}");
                fitted += 1;
            }
        }
    }
    assert_eq!(fitted, 2);
}

#[test]
fn share_seeds() {
    for (name, text) in text_seeds("share_csv") {
        if let Ok(dist) = parse_share_csv(&text, 1.0) {
            let again = parse_share_csv(&share_csv(&dist), 1.0).unwrap();
            assert_eq!(again, dist, "{name}");
        }
    }
    for (name, text) in text_seeds("share_json") {
        if let Ok(dist) = parse_share_json(&text) {
            let again = parse_share_json(&to_json(&dist).unwrap()).unwrap();
            assert_eq!(again, dist, "{name}");
        }
    }
}
