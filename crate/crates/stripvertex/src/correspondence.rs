//! The scalar bridge between open and logarithmic generating functions, the
//! interior-marking reduction factor, the localization framing prefactor, and
//! per-genus extraction.
//!
//! Sign and phase bookkeeping: every factor 1/(2 sin(n hbar/2)) is
//! represented in q-variables as `i/[n]_q` with the power of i tracked on the
//! [`Phased`] wrapper, so all rational functions stay real-coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qalgebra::{expand_hbar, quantum_integer, Phased, QRational};

/// Contact data along the two boundary components: m interior markings,
/// tangency orders along the first component, and the intersection numbers
/// with both components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactData {
    m: usize,
    tangencies: Vec<i64>,
    d1_dot_beta: i64,
    d2_dot_beta: i64,
}

impl ContactData {
    /// Builds contact data; the first-boundary pairing is the tangency sum.
    pub fn new(m: usize, tangencies: Vec<i64>, d2_dot_beta: i64) -> Result<Self> {
        if let Some(&bad) = tangencies.iter().find(|&&c| c <= 0) {
            return Err(Error::InvalidTangency(bad));
        }
        if m > tangencies.len() {
            return Err(Error::TooManyInteriorMarkings {
                m,
                n: tangencies.len(),
            });
        }
        if d2_dot_beta < 1 {
            return Err(Error::InvalidSecondPairing(d2_dot_beta));
        }
        let d1_dot_beta = tangencies.iter().sum();
        Ok(Self {
            m,
            tangencies,
            d1_dot_beta,
            d2_dot_beta,
        })
    }

    /// As [`ContactData::new`] but cross-checks a caller-stated pairing.
    pub fn with_stated_pairing(
        m: usize,
        tangencies: Vec<i64>,
        d1_dot_beta: i64,
        d2_dot_beta: i64,
    ) -> Result<Self> {
        let out = Self::new(m, tangencies, d2_dot_beta)?;
        if out.d1_dot_beta != d1_dot_beta {
            return Err(Error::TangencySumMismatch {
                sum: out.d1_dot_beta,
                stated: d1_dot_beta,
            });
        }
        Ok(out)
    }

    pub fn interior_markings(&self) -> usize {
        self.m
    }

    pub fn tangencies(&self) -> &[i64] {
        &self.tangencies
    }

    pub fn num_tangency_markings(&self) -> usize {
        self.tangencies.len()
    }

    pub fn d1_dot_beta(&self) -> i64 {
        self.d1_dot_beta
    }

    pub fn d2_dot_beta(&self) -> i64 {
        self.d2_dot_beta
    }

    /// m! times the product of the last m tangencies.
    pub fn interior_reduction_factor(&self) -> BigInt {
        interior_reduction_factor(self.m, &self.tangencies).expect("validated on construction")
    }
}

/// m! * prod_{i=0}^{m-1} c_{n-i}: the factor relating invariants with and
/// without interior point markings.
pub fn interior_reduction_factor(m: usize, tangencies: &[i64]) -> Result<BigInt> {
    if m > tangencies.len() {
        return Err(Error::TooManyInteriorMarkings {
            m,
            n: tangencies.len(),
        });
    }
    let mut out = BigInt::one();
    for j in 1..=m {
        out *= BigInt::from(j);
    }
    for &c in tangencies.iter().rev().take(m) {
        out *= BigInt::from(c);
    }
    Ok(out)
}

/// Converts a connected open generating function into the logarithmic one:
/// multiply by (-1)^{D1.beta} m! prod c, by (-1)^{D2.beta + 1}, and by
/// 2 sin((D2.beta) hbar / 2) = -i [D2.beta]_q.
pub fn log_from_open(open: &Phased, contact: &ContactData) -> Phased {
    let mut value = open
        .value
        .mul_rational(&BigRational::from(contact.interior_reduction_factor()));
    value = &value * &QRational::from(quantum_integer(contact.d2_dot_beta));
    if (contact.d1_dot_beta + contact.d2_dot_beta + 1).rem_euclid(2) == 1 {
        value = -&value;
    }
    Phased::new(open.i_power as i64 + 3, value)
}

/// Inverse of [`log_from_open`]; the reciprocal scaling.
pub fn open_from_log(log: &Phased, contact: &ContactData) -> Result<Phased> {
    let mut value = log
        .value
        .div(&QRational::from(quantum_integer(contact.d2_dot_beta)))?;
    value = value.div(&QRational::from_rational(&BigRational::from(
        contact.interior_reduction_factor(),
    )))?;
    if (contact.d1_dot_beta + contact.d2_dot_beta + 1).rem_euclid(2) == 1 {
        value = -&value;
    }
    Ok(Phased::new(log.i_power as i64 + 1, value))
}

/// The scalar part of the localization prefactor at framing f and winding c:
/// (-1)^{fc} (prod_{k=1}^{c-1} (fc + k)) / c!, the equivariant weight set
/// aside as a formal unit. Diagnostic only.
pub fn framing_prefactor(f: i64, c: i64) -> Result<BigRational> {
    if c < 1 {
        return Err(Error::InvalidWinding(c));
    }
    let mut num = BigInt::one();
    for k in 1..c {
        num *= BigInt::from(f * c + k);
    }
    if (f * c).rem_euclid(2) == 1 {
        num = -num;
    }
    let mut den = BigInt::one();
    for k in 1..=c {
        den *= BigInt::from(k);
    }
    Ok(BigRational::new(num, den))
}

/// Reads the per-genus invariants N_g off a generating function of shape
/// sum_{g>=0} N_g hbar^{2g-1}: once the i-power is folded in, the expansion
/// must carry only odd powers of at least -1, with real coefficients. Any
/// other nonzero term signals a convention error upstream and is reported
/// with the offending exponent.
pub fn extract_genus_invariants(log: &Phased, g_max: usize) -> Result<Vec<BigRational>> {
    extract_genus_invariants_with_order(log, g_max, 2 * g_max as i64 + 1)
}

/// As [`extract_genus_invariants`] with an explicit truncation order.
pub fn extract_genus_invariants_with_order(
    log: &Phased,
    g_max: usize,
    order: i64,
) -> Result<Vec<BigRational>> {
    let series = expand_hbar(
        &log.value,
        log.i_power as i64,
        order.max(2 * g_max as i64 + 1),
    )?;
    for (e, c) in series.terms() {
        if !c.is_real() {
            return Err(Error::NonRealCoefficient { exponent: e });
        }
        if e.rem_euclid(2) == 0 || e < -1 {
            return Err(Error::ParityViolation { exponent: e });
        }
    }
    Ok((0..=g_max)
        .map(|g| series.coefficient(2 * g as i64 - 1).re)
        .collect())
}

/// Reads per-genus invariants off a logarithmic generating function in the
/// hbar^{2g} grading (one global power of hbar absorbed by the sine factor of
/// the correspondence): the expansion must be real with only non-negative
/// even powers.
pub fn extract_log_genus_invariants(value: &QRational, g_max: usize) -> Result<Vec<BigRational>> {
    let order = 2 * g_max as i64 + 2;
    let series = expand_hbar(value, 0, order)?;
    for (e, c) in series.terms() {
        if !c.is_real() {
            return Err(Error::NonRealCoefficient { exponent: e });
        }
        if e.rem_euclid(2) == 1 || e < 0 {
            return Err(Error::ParityViolation { exponent: e });
        }
    }
    Ok((0..=g_max)
        .map(|g| series.coefficient(2 * g as i64).re)
        .collect())
}
