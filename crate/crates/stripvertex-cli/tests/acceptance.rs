//! Acceptance criterion 8: the verification run is byte-identical across
//! parallelism degrees (deterministic ordering plus canonical serialization).

use std::process::Command;

fn run_verify(jobs: &str) -> (Vec<u8>, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_stripvertex"))
        .args(["verify-dp3", "--total-degree", "6", "--jobs", jobs])
        .output()
        .expect("binary runs");
    (out.stdout, out.status.success())
}

#[test]
fn criterion_8_determinism_across_worker_counts() {
    let (reference, ok) = run_verify("1");
    assert!(ok, "single-threaded verification run must succeed");
    assert!(!reference.is_empty());
    for jobs in ["4", "8"] {
        let (bytes, ok) = run_verify(jobs);
        assert!(ok, "verification run with --jobs {jobs} must succeed");
        assert_eq!(
            bytes, reference,
            "output with --jobs {jobs} differs from the single-threaded run"
        );
    }
    println!("acceptance criterion 8 (byte-identical output at --jobs 1/4/8): PASS");
}
