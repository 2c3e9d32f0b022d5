#![no_main]

use libfuzzer_sys::fuzz_target;
use spvote::report::{parse_json_report, to_csv, to_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_json_report(text) {
        let _ = to_csv(&r);
        let _ = to_text(&r);
    }
});
