#![no_main]

use libfuzzer_sys::fuzz_target;
use spvote_cli::verify::{parse_fixture, run_fixture};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_fixture("fuzz", text) {
        if f.profile.m() <= 8 {
            let _ = run_fixture(&f);
        }
    }
});
