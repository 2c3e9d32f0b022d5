#![no_main]

use libfuzzer_sys::fuzz_target;
use spvote::{parse_profile, serialize_profile};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_profile(text) {
        let again = parse_profile(&serialize_profile(&p)).expect("serialized profile must parse");
        assert_eq!(again, p);
    }
});
