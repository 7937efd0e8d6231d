#![no_main]

use boxshare::io::{parse_poll_csv, poll_report};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(table) = parse_poll_csv(data) {
        let _ = poll_report(&table, 1500.0);
    }
});
