#![no_main]

use boxshare::io::{parse_share_csv, share_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(dist) = parse_share_csv(data, 1.0) {
        let again = parse_share_csv(&share_csv(&dist), 1.0).expect("emitted table reparses");
        assert_eq!(again.probabilities().len(), dist.probabilities().len());
    }
});
