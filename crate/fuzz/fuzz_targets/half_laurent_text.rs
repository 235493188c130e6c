#![no_main]

use libfuzzer_sys::fuzz_target;
use stripvertex::qalgebra::parse_half_laurent;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(poly) = parse_half_laurent(text) {
        let reserialized = serde_json::to_string(&poly).unwrap();
        let back = parse_half_laurent(&reserialized).expect("round trip parses");
        assert_eq!(back, poly);
        // canonical sparse form: no zero coefficients survive parsing
        assert!(poly.terms().all(|(_, c)| c.to_string() != "0"));
        // exact involution on the parsed value
        assert_eq!(poly.substitute_q_inverse().substitute_q_inverse(), poly);
    }
});
