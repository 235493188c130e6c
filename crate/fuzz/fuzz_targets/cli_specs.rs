#![no_main]

use libfuzzer_sys::fuzz_target;
use stripvertex_cli::{parse_bound_spec, parse_contact_spec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Flag grammars must never panic on arbitrary input.
    if let Ok(bound) = parse_bound_spec(text) {
        assert!(!bound.is_empty());
        assert!(bound.iter().all(|&c| c >= 0));
    }
    if let Ok((_, Some(list))) = parse_contact_spec(text) {
        assert!(list.iter().all(|&c| c > 0));
    }
});
