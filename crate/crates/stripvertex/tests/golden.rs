//! Golden-file tests for the text serialization contract: sorted
//! exponent/coefficient pairs in a JSON object, exponents in units of
//! s = q^{1/2}. These bytes are frozen; regressions here break downstream
//! consumers of the format.

use stripvertex::oracle::dp3_closed_form;
use stripvertex::qalgebra::{parse_half_laurent, parse_qrational, q_binomial, quantum_integer};

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

#[test]
fn quantum_integer_wire_bytes() {
    let golden = fixture("quantum_integer_3.json");
    let value = quantum_integer(3);
    assert_eq!(serde_json::to_string(&value).unwrap(), golden);
    assert_eq!(parse_half_laurent(&golden).unwrap(), value);
}

#[test]
fn q_binomial_wire_bytes() {
    let golden = fixture("q_binomial_2_1.json");
    let value = parse_qrational(&golden).unwrap();
    assert_eq!(value.numerator(), &q_binomial(2, 1));
    assert_eq!(
        serde_json::to_string(&stripvertex::qalgebra::QRational::from(q_binomial(2, 1))).unwrap(),
        golden
    );
}

#[test]
fn dp3_log_value_wire_bytes() {
    // The closed-form log generating function of the (2,2,1,1) class is
    // (s + 1/s)^2; its wire form is frozen here.
    let golden = fixture("dp3_log_2211.json");
    let value = dp3_closed_form(2, 2, 1, 1).unwrap();
    assert_eq!(serde_json::to_string(&value).unwrap(), golden);
    assert_eq!(parse_qrational(&golden).unwrap(), value);
}
