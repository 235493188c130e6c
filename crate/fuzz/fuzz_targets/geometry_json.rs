#![no_main]

use libfuzzer_sys::fuzz_target;
use stripvertex::strip::StripGeometry;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Must not panic, and accepted geometries must survive a round trip.
    if let Ok(geometry) = StripGeometry::from_json(text) {
        geometry.validate().expect("accepted geometry validates");
        let reserialized = serde_json::to_string(&geometry).unwrap();
        let back = StripGeometry::from_json(&reserialized).expect("round trip parses");
        assert_eq!(back, geometry);
    }
});
