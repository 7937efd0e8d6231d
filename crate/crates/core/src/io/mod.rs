//! Input parsing, the built-in poll fixture, and report emission.

pub mod emit;
pub mod ingest;
pub mod poll;

pub use emit::{parse_share_csv, parse_share_json, share_csv, to_json};
pub use ingest::{ingest_numbers, parse_histogram_csv, parse_tokens, InputFormat, Source};
pub use poll::{builtin_poll_table, parse_poll_csv, poll_report, PollReport, PollTable};
