#![no_main]

use boxshare::fitting::fit_alpha;
use boxshare::io::parse_histogram_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&boxes, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let boxes = u64::from(boxes);
    if let Ok(counts) = parse_histogram_csv(text, boxes) {
        assert_eq!(counts.len() as u64, boxes);
        if let Ok(fit) = fit_alpha(&counts, boxes) {
            assert!(fit.alpha_hat.is_finite());
        }
    }
});
