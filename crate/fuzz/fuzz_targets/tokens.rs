#![no_main]

use boxshare::benford::digit_histogram;
use boxshare::io::{parse_tokens, InputFormat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    for format in [InputFormat::Plain, InputFormat::Csv, InputFormat::Json] {
        for column in [None, Some("1"), Some("amount")] {
            if let Ok(tokens) = parse_tokens(data, format, column) {
                let stats = digit_histogram(&tokens);
                assert_eq!(stats.total() + stats.skipped(), tokens.len() as u64);
            }
        }
    }
});
