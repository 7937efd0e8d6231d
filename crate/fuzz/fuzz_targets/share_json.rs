#![no_main]

use boxshare::io::{parse_share_json, to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(dist) = parse_share_json(data) {
        let text = to_json(&dist).expect("share tables serialize");
        let again = parse_share_json(&text).expect("emitted table reparses");
        assert_eq!(again.kind(), dist.kind());
    }
});
