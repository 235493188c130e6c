//! Exact all-genus curve counting on toric strip geometries.
//!
//! The crate evaluates open Gromov-Witten generating functions of strip
//! geometries through the topological vertex, converts them to logarithmic
//! generating functions of the associated surface pairs, and extracts integer
//! BPS invariants by Moebius inversion. All arithmetic is exact: Laurent
//! polynomials in s = q^{1/2} over arbitrary-precision integers, canonical
//! rational functions, and Gaussian-rational hbar-expansions.
//!
//! Module map:
//! - [`qalgebra`]: Laurent polynomials, rational functions, quantum integers,
//!   q-binomials, hbar-expansion.
//! - [`partitions`]: partition combinatorics (conjugation, kappa, hooks).
//! - [`schur`]: principally specialized (skew) Schur functions and the
//!   two-legged vertex amplitude.
//! - [`strip`]: strip-geometry model, gluing sums, coefficient extraction,
//!   disconnected-to-connected conversion.
//! - [`correspondence`]: the scalar bridge between open and logarithmic
//!   generating functions and per-genus extraction.
//! - [`bps`]: LMOV/BPS transforms and integrality verdicts.
//! - [`oracle`]: independent ground-truth evaluators used by the test suites.

pub mod bps;
pub mod correspondence;
pub mod error;
pub mod oracle;
pub mod partitions;
pub mod qalgebra;
pub mod schur;
pub mod strip;

pub use error::{Error, Result};
