//! Exact arithmetic in the half-integer-power variable s = q^{1/2}:
//! Laurent polynomials over Z, normalized rational functions, quantum
//! integers and q-binomials, phased values carrying a power of i, and
//! expansion into hbar-series under q = e^{i hbar}.

mod half_laurent;
mod hbar;
mod polygcd;
mod rational;

pub use half_laurent::{parse_half_laurent, q_binomial, quantum_integer, HalfLaurent};
pub use hbar::{expand_hbar, GaussianRational, GenusSeries};
pub use rational::{parse_qrational, Phased, QRational};
