#![no_main]

use libfuzzer_sys::fuzz_target;
use stripvertex::partitions::parse_partition;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(mu) = parse_partition(text) {
        assert_eq!(mu.conjugate().conjugate(), mu);
        assert_eq!(mu.kappa() % 2, 0);
        assert_eq!(mu.conjugate().kappa(), -mu.kappa());
        let reserialized = serde_json::to_string(&mu).unwrap();
        assert_eq!(parse_partition(&reserialized).expect("round trip"), mu);
    }
});
