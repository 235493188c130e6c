//! LMOV and BPS transforms by Moebius inversion over simultaneous divisors of
//! winding profile and curve class, and the integrality verdict.
//!
//! All sine blocks are carried in q-variables through [`Phased`] values, so
//! the transforms stay inside exact rational-function arithmetic; the
//! multi-cover rescaling hbar -> k hbar acts as q -> q^k on values.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::correspondence::ContactData;
use crate::error::{Error, Result};
use crate::qalgebra::{quantum_integer, Phased, QRational};

/// The Moebius function: 0 on non-squarefree inputs, else (-1)^{number of
/// prime factors}. Evaluated by trial factorization.
pub fn moebius(k: i64) -> Result<i64> {
    if k <= 0 {
        return Err(Error::MoebiusDomain(k));
    }
    let mut n = k;
    let mut factors = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// Key of the divisibility lattice: k divides the key iff k divides every
/// tangency and every class coordinate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct DivisibilityKey {
    pub tangencies: Vec<i64>,
    pub class: Vec<i64>,
}

impl DivisibilityKey {
    pub fn new(tangencies: Vec<i64>, class: Vec<i64>) -> Self {
        Self { tangencies, class }
    }

    /// gcd of all tangencies and class coordinates.
    pub fn gcd(&self) -> i64 {
        let mut g: i64 = 0;
        for &c in self.tangencies.iter().chain(&self.class) {
            g = g.gcd(&c);
        }
        g.max(1)
    }

    /// Common divisors of the key, ascending.
    pub fn divisors(&self) -> Vec<i64> {
        let g = self.gcd();
        (1..=g).filter(|k| g % k == 0).collect()
    }

    /// The key divided by k, which must divide it.
    pub fn divided_by(&self, k: i64) -> Self {
        Self {
            tangencies: self.tangencies.iter().map(|c| c / k).collect(),
            class: self.class.iter().map(|c| c / k).collect(),
        }
    }
}

impl fmt::Display for DivisibilityKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c={:?} class={:?}", self.tangencies, self.class)
    }
}

fn table_entry<'t>(
    table: &'t BTreeMap<DivisibilityKey, Phased>,
    key: &DivisibilityKey,
    k: i64,
) -> Result<&'t Phased> {
    table
        .get(&key.divided_by(k))
        .ok_or(Error::MissingDivisorEntry { k })
}

/// `i / [n]_q` as a phased value: the q-form of 1/(2 sin(n hbar / 2)).
fn inverse_sine_block(n: i64) -> Result<Phased> {
    Ok(Phased::new(
        1,
        QRational::from(quantum_integer(n)).inverse()?,
    ))
}

/// `-i [n]_q`: the q-form of 2 sin(n hbar / 2).
fn sine_block(n: i64) -> Phased {
    Phased::new(3, QRational::from(quantum_integer(n)))
}

/// The Moebius-inverted solution of the BPS defining relation:
///
///   BPS = (2 sin h/2)^2 prod_{i<=n-m} (c_i / 2 sin(c_i h/2))
///         * (1/m!) prod_{i>n-m} 1/(2 sin(c_i h/2)) * 1/(2 sin((D2.b) h/2))
///         * sum_{k | key} mu(k) k^{m-1} (-1)^{K_S.b/k + 1} R_{key/k}(q^k)
///
/// where R are the logarithmic generating functions supplied in `table`.
pub fn bps_transform(
    table: &BTreeMap<DivisibilityKey, Phased>,
    key: &DivisibilityKey,
    contact: &ContactData,
    ks_dot_beta: i64,
) -> Result<QRational> {
    let n = contact.num_tangency_markings();
    let m = contact.interior_markings();
    let mut prefactor = sine_block(1).mul(&sine_block(1));
    for (i, &c) in contact.tangencies().iter().enumerate() {
        let block = inverse_sine_block(c)?;
        prefactor = if i < n - m {
            prefactor
                .mul(&block)
                .mul_rational(&BigRational::from(BigInt::from(c)))
        } else {
            prefactor.mul(&block)
        };
    }
    let mut m_factorial = BigInt::one();
    for j in 1..=m {
        m_factorial *= BigInt::from(j);
    }
    prefactor = prefactor.mul_rational(&BigRational::new(BigInt::one(), m_factorial));
    prefactor = prefactor.mul(&inverse_sine_block(contact.d2_dot_beta())?);

    let mut sum = Phased::zero();
    for k in key.divisors() {
        if ks_dot_beta % k != 0 {
            return Err(Error::CanonicalPairingNotDivisible { ks: ks_dot_beta, k });
        }
        let mu = moebius(k)?;
        if mu == 0 {
            continue;
        }
        let entry = table_entry(table, key, k)?;
        let mut scalar = BigRational::from(BigInt::from(mu));
        // k^{m-1}, rational for m = 0
        let kpow = BigRational::from(BigInt::from(k)).pow(m as i32 - 1);
        scalar *= kpow;
        if (ks_dot_beta / k + 1).rem_euclid(2) == 1 {
            scalar = -scalar;
        }
        let term = entry.substitute_q_power(k).mul_rational(&scalar);
        sum = sum.add(&term)?;
    }
    prefactor.mul(&sum).reduce_real()
}

/// Right-hand side of the BPS defining relation at `key`, with the BPS values
/// supplied in `bps_table`; the round-trip tests compare this against
/// (-1)^{K_S.b + 1} R_key.
pub fn bps_defining_relation_rhs(
    bps_table: &BTreeMap<DivisibilityKey, QRational>,
    key: &DivisibilityKey,
    contact: &ContactData,
) -> Result<Phased> {
    let n = contact.num_tangency_markings();
    let m = contact.interior_markings();
    let mut prefactor = Phased::real(QRational::one());
    for (i, &c) in contact.tangencies().iter().enumerate() {
        let block = sine_block(c);
        prefactor = if i < n - m {
            prefactor
                .mul(&block)
                .mul_rational(&BigRational::new(BigInt::one(), BigInt::from(c)))
        } else {
            prefactor.mul(&block)
        };
    }
    let mut m_factorial = BigInt::one();
    for j in 1..=m {
        m_factorial *= BigInt::from(j);
    }
    prefactor = prefactor.mul_rational(&BigRational::new(BigInt::one(), m_factorial));
    prefactor = prefactor.mul(&sine_block(contact.d2_dot_beta()));

    let mut sum = Phased::zero();
    for k in key.divisors() {
        let bps = bps_table
            .get(&key.divided_by(k))
            .ok_or(Error::MissingDivisorEntry { k })?;
        let block = inverse_sine_block(k)?;
        let scalar = BigRational::from(BigInt::from(k)).pow(n as i32 - 1);
        let term = block
            .mul(&block)
            .mul_value(&bps.substitute_q_power(k))
            .mul_rational(&scalar);
        sum = sum.add(&term)?;
    }
    Ok(prefactor.mul(&sum))
}

/// The Moebius-inverted solution of the LMOV defining relation:
///
///   LMOV = (2 sin h/2)^2 prod_i (c_i / 2 sin(c_i h/2))
///          * sum_{k | key} (mu(k)/k) O_{key/k}(q^k)
///
/// where O are the connected open generating functions (hbar^{2g-2+n}
/// grading) supplied in `table`.
pub fn lmov_transform(
    table: &BTreeMap<DivisibilityKey, Phased>,
    key: &DivisibilityKey,
) -> Result<QRational> {
    let mut prefactor = sine_block(1).mul(&sine_block(1));
    for &c in &key.tangencies {
        if c <= 0 {
            return Err(Error::InvalidTangency(c));
        }
        prefactor = prefactor
            .mul(&inverse_sine_block(c)?)
            .mul_rational(&BigRational::from(BigInt::from(c)));
    }
    let mut sum = Phased::zero();
    for k in key.divisors() {
        let mu = moebius(k)?;
        if mu == 0 {
            continue;
        }
        let entry = table_entry(table, key, k)?;
        let scalar = BigRational::new(BigInt::from(mu), BigInt::from(k));
        sum = sum.add(&entry.substitute_q_power(k).mul_rational(&scalar))?;
    }
    prefactor.mul(&sum).reduce_real()
}

/// Right-hand side of the LMOV defining relation at `key`, for round trips
/// against the open series prod_i (2 sin(c_i h/2) / c_i)
/// * sum_k k^{n-1} (2 sin(k h/2))^{-2} LMOV_{key/k}(q^k).
pub fn lmov_defining_relation_rhs(
    lmov_table: &BTreeMap<DivisibilityKey, QRational>,
    key: &DivisibilityKey,
) -> Result<Phased> {
    let n = key.tangencies.len();
    let mut prefactor = Phased::real(QRational::one());
    for &c in &key.tangencies {
        prefactor = prefactor
            .mul(&sine_block(c))
            .mul_rational(&BigRational::new(BigInt::one(), BigInt::from(c)));
    }
    let mut sum = Phased::zero();
    for k in key.divisors() {
        let lmov = lmov_table
            .get(&key.divided_by(k))
            .ok_or(Error::MissingDivisorEntry { k })?;
        let block = inverse_sine_block(k)?;
        let scalar = BigRational::from(BigInt::from(k)).pow(n as i32 - 1);
        let term = block
            .mul(&block)
            .mul_value(&lmov.substitute_q_power(k))
            .mul_rational(&scalar);
        sum = sum.add(&term)?;
    }
    Ok(prefactor.mul(&sum))
}

/// Outcome of the integrality check: a value passes iff it is a Laurent
/// polynomial in integer powers of q with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityVerdict {
    pub is_laurent_polynomial: bool,
    pub has_integer_coefficients: bool,
    pub uses_only_integer_q_powers: bool,
    pub witness: Option<String>,
}

impl IntegralityVerdict {
    pub fn holds(&self) -> bool {
        self.is_laurent_polynomial
            && self.has_integer_coefficients
            && self.uses_only_integer_q_powers
    }
}

/// Decides whether `v` lifts to a Laurent polynomial in q with integer
/// coefficients, reporting the first offending term otherwise.
pub fn check_integrality(v: &QRational) -> IntegralityVerdict {
    let den = v.denominator();
    let den_is_constant = den.max_exp() == Some(0);
    let mut witness = None;

    let is_laurent_polynomial = den_is_constant;
    if !is_laurent_polynomial {
        witness = Some(format!("nontrivial denominator {den}"));
    }

    // Canonical form moves all shared integer content to the numerator, so a
    // non-unit constant denominator means genuinely fractional coefficients.
    let has_integer_coefficients = is_laurent_polynomial && den.is_one();
    if is_laurent_polynomial && !has_integer_coefficients && witness.is_none() {
        witness = Some(format!("fractional coefficients: denominator {den}"));
    }

    let mut uses_only_integer_q_powers = true;
    for (e, _) in v.numerator().terms().chain(v.denominator().terms()) {
        if e.rem_euclid(2) == 1 {
            uses_only_integer_q_powers = false;
            if witness.is_none() {
                witness = Some(format!("half-integer q-power s^{e}"));
            }
            break;
        }
    }

    IntegralityVerdict {
        is_laurent_polynomial,
        has_integer_coefficients,
        uses_only_integer_q_powers,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::HalfLaurent;

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn moebius_multiplicative_on_coprime_pairs() {
        // Deterministic spot-check over 200 pseudo-random coprime pairs.
        let mut state = 0x2545f491u64;
        let mut checked = 0;
        while checked < 200 {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let a = (state >> 33) as i64 % 10_000 + 1;
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let b = (state >> 33) as i64 % 10_000 + 1;
            if a.gcd(&b) != 1 {
                continue;
            }
            assert_eq!(
                moebius(a * b).unwrap(),
                moebius(a).unwrap() * moebius(b).unwrap(),
                "a={a} b={b}"
            );
            checked += 1;
        }
    }

    #[test]
    fn divisibility_key_structure() {
        let key = DivisibilityKey::new(vec![4], vec![2, 4, 6]);
        assert_eq!(key.gcd(), 2);
        assert_eq!(key.divisors(), vec![1, 2]);
        assert_eq!(
            key.divided_by(2),
            DivisibilityKey::new(vec![2], vec![1, 2, 3])
        );
        // zero coordinates do not block divisibility
        let key0 = DivisibilityKey::new(vec![2], vec![2, 0]);
        assert_eq!(key0.divisors(), vec![1, 2]);
    }

    #[test]
    fn primitive_key_is_single_term() {
        // BPS of the base del Pezzo class: log series 1, m=0 contact,
        // K_S.beta = -2: all sine blocks are [1]_q and cancel, value -1.
        let key = DivisibilityKey::new(vec![1], vec![1, 1, 1, 0]);
        let mut table = BTreeMap::new();
        table.insert(key.clone(), Phased::real(QRational::one()));
        let contact = ContactData::new(0, vec![1], 1).unwrap();
        let bps = bps_transform(&table, &key, &contact, -2).unwrap();
        assert_eq!(bps, QRational::from_integer(-1));
        assert!(check_integrality(&bps).holds());
    }

    #[test]
    fn doubled_class_with_zero_lower_level() {
        // When the lower-level series vanishes, the mu(2) term multiplies a
        // zero and BPS equals the k = 1 term alone.
        let key = DivisibilityKey::new(vec![2], vec![2, 4]);
        let primitive = key.divided_by(2);
        let series = Phased::real(QRational::from(quantum_integer(2)));
        let contact = ContactData::new(0, vec![2], 2).unwrap();

        let mut table = BTreeMap::new();
        table.insert(key.clone(), series.clone());
        table.insert(primitive.clone(), Phased::zero());
        let with_zero = bps_transform(&table, &key, &contact, -4).unwrap();

        let mut single = BTreeMap::new();
        single.insert(DivisibilityKey::new(vec![2], vec![1, 2]), series);
        let k1_only =
            bps_transform(&single, &DivisibilityKey::new(vec![2], vec![1, 2]), &contact, -4)
                .unwrap();
        // identical divisor-1 contribution: same contact, same series
        assert_eq!(with_zero, k1_only);
    }

    #[test]
    fn lmov_of_zero_table_is_zero() {
        let key = DivisibilityKey::new(vec![3], vec![3]);
        let mut table = BTreeMap::new();
        table.insert(key.clone(), Phased::zero());
        table.insert(key.divided_by(3), Phased::zero());
        assert!(lmov_transform(&table, &key).unwrap().is_zero());
    }

    #[test]
    fn missing_divisor_entry_is_reported() {
        let key = DivisibilityKey::new(vec![2], vec![2]);
        let mut table = BTreeMap::new();
        table.insert(key.clone(), Phased::real(QRational::one()));
        let contact = ContactData::new(0, vec![2], 2).unwrap();
        assert_eq!(
            bps_transform(&table, &key, &contact, -4).unwrap_err(),
            Error::MissingDivisorEntry { k: 2 }
        );
    }

    #[test]
    fn integrality_verdicts() {
        // q + 2 + q^{-1}
        let poly = QRational::from(HalfLaurent::from_terms([
            (2, BigInt::one()),
            (0, BigInt::from(2)),
            (-2, BigInt::one()),
        ]));
        assert!(check_integrality(&poly).holds());

        let inv = QRational::from(quantum_integer(2)).inverse().unwrap();
        let v = check_integrality(&inv);
        assert!(!v.holds());
        assert!(!v.is_laurent_polynomial);
        assert!(v.witness.unwrap().contains("denominator"));

        let s = QRational::from(HalfLaurent::monomial(1, BigInt::one()));
        let v = check_integrality(&s);
        assert!(v.is_laurent_polynomial);
        assert!(v.has_integer_coefficients);
        assert!(!v.uses_only_integer_q_powers);

        let half = QRational::from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)));
        let v = check_integrality(&half);
        assert!(v.is_laurent_polynomial);
        assert!(!v.has_integer_coefficients);
    }
}
