#![no_main]

use boxshare::benford::leading_digit;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Some(d) = leading_digit(data) {
        assert!((1..=9).contains(&d));
        // surrounding whitespace never changes the digit
        assert_eq!(leading_digit(&format!(" {data}\t")), Some(d));
    }
});
