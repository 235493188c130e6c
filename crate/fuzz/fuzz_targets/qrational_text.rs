#![no_main]

use libfuzzer_sys::fuzz_target;
use stripvertex::qalgebra::parse_qrational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(value) = parse_qrational(text) {
        // Accepted values are canonical: the wire form round-trips exactly
        // and basic arithmetic holds.
        let reserialized = serde_json::to_string(&value).unwrap();
        let back = parse_qrational(&reserialized).expect("round trip parses");
        assert_eq!(back, value);
        assert_eq!(value.substitute_q_inverse().substitute_q_inverse(), value);
        let doubled = &value + &value;
        assert_eq!(&doubled - &value, value);
    }
});
