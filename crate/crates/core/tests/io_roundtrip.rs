use boxshare::distribution::rho_table;
use boxshare::io::{parse_share_csv, parse_share_json, share_csv, to_json};
use proptest::prelude::*;

proptest! {
    #[test]
    fn share_tables_survive_both_codecs(n in 1u64..400, alpha in -6.0f64..6.0) {
        let table = rho_table(n, alpha).unwrap();
        let from_json = parse_share_json(&to_json(&table).unwrap()).unwrap();
        let from_csv = parse_share_csv(&share_csv(&table), alpha).unwrap();
        prop_assert_eq!(from_json.n_boxes(), n);
        prop_assert_eq!(from_csv.n_boxes(), n);
        for ((a, b), c) in table
            .probabilities()
            .iter()
            .zip(from_json.probabilities())
            .zip(from_csv.probabilities())
        {
            prop_assert!((a - b).abs() <= 1e-12);
            prop_assert!((a - c).abs() <= 1e-12);
        }
    }
}
