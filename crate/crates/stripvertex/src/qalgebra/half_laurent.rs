//! Laurent polynomials in the half-integer-power variable s = q^{1/2} with
//! arbitrary-precision integer coefficients. These are the atoms of every
//! exact computation in the crate: quantum integers, q-binomials, vertex
//! prefactors, all of them live in Z[s, s^{-1}].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::polygcd::{self, Dense};
use crate::error::{Error, Result};

/// A Laurent polynomial in s = q^{1/2} over Z, kept in canonical sparse form:
/// no stored coefficient is zero, and the zero polynomial has an empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent {
    coeffs: BTreeMap<i64, BigInt>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// c * s^exp
    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        Self { coeffs }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplies by s^k.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// The image under q -> q^{-1}, i.e. s -> s^{-1}.
    pub fn substitute_q_inverse(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// The image under q -> q^k (s -> s^k) for k >= 1.
    pub fn substitute_q_power(&self, k: i64) -> Self {
        assert!(k >= 1, "substitution power must be >= 1");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e * k, c.clone()))
                .collect(),
        }
    }

    /// Value at s = 1 (sum of coefficients).
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = num_integer::Integer::gcd(&g, c);
        }
        g
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Dense ascending coefficients together with the exponent of the lowest
    /// term, so that self = s^shift * sum_i dense[i] s^i.
    pub(crate) fn to_dense(&self) -> (i64, Dense) {
        match self.min_exp() {
            None => (0, Vec::new()),
            Some(lo) => {
                let hi = self.max_exp().unwrap();
                let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (&e, c) in &self.coeffs {
                    dense[(e - lo) as usize] = c.clone();
                }
                (lo, dense)
            }
        }
    }

    pub(crate) fn from_dense(shift: i64, dense: &Dense) -> Self {
        Self::from_terms(
            dense
                .iter()
                .enumerate()
                .map(|(i, c)| (shift + i as i64, c.clone())),
        )
    }

    /// Exact division in Z[s, s^{-1}]. Returns an error when the divisor is
    /// zero or the quotient is not an integer Laurent polynomial.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (sa, da) = self.to_dense();
        let (sb, db) = rhs.to_dense();
        let q = polygcd::div_exact(&da, &db).ok_or(Error::InexactDivision)?;
        Ok(Self::from_dense(sa - sb, &q))
    }
}

/// `[n]_q = q^{n/2} - q^{-n/2} = s^n - s^{-n}`; antisymmetric in n, zero at n = 0.
pub fn quantum_integer(n: i64) -> HalfLaurent {
    let mut out = HalfLaurent::zero();
    out.add_term(n, BigInt::one());
    out.add_term(-n, -BigInt::one());
    out
}

/// The balanced q-binomial coefficient: `prod_{k=1}^{m} [n-m+k]_q / [k]_q` for
/// 0 <= m <= n, zero otherwise. The division is exact in Z[s, s^{-1}].
pub fn q_binomial(n: i64, m: i64) -> HalfLaurent {
    if m < 0 || m > n {
        return HalfLaurent::zero();
    }
    let mut out = HalfLaurent::one();
    for k in 1..=m {
        out = &out * &quantum_integer(n - m + k);
        out = out
            .div_exact(&quantum_integer(k))
            .expect("q-binomial division is exact");
    }
    out
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            if e == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if e == 1 {
                    write!(f, "s")?;
                } else {
                    write!(f, "s^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfLaurent({})", self)
    }
}

// The wire format is a JSON object of sorted "exponent": "coefficient" pairs,
// exponents in units of s = q^{1/2}. BTreeMap iteration gives ascending
// numeric exponent order; serde_json's preserve_order keeps it on the wire.
impl Serialize for HalfLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (&e, c) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for HalfLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MapVisitor;

        impl<'de> serde::de::Visitor<'de> for MapVisitor {
            type Value = HalfLaurent;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an object of exponent/coefficient string pairs")
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<HalfLaurent, A::Error> {
                let mut coeffs = BTreeMap::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let exp = i64::from_str(&k)
                        .map_err(|_| A::Error::custom(format!("bad exponent key {k:?}")))?;
                    let coeff = BigInt::from_str(&v)
                        .map_err(|_| A::Error::custom(format!("bad coefficient {v:?}")))?;
                    if coeff.is_zero() {
                        return Err(A::Error::custom("explicit zero coefficient"));
                    }
                    if coeffs.insert(exp, coeff).is_some() {
                        return Err(A::Error::custom(format!("duplicate exponent {exp}")));
                    }
                }
                Ok(HalfLaurent { coeffs })
            }
        }

        deserializer.deserialize_map(MapVisitor)
    }
}

/// Parses the JSON wire form of a Laurent polynomial.
pub fn parse_half_laurent(text: &str) -> Result<HalfLaurent> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hl(terms: &[(i64, i64)]) -> HalfLaurent {
        HalfLaurent::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn quantum_integer_basics() {
        assert!(quantum_integer(0).is_zero());
        assert_eq!(quantum_integer(1), hl(&[(1, 1), (-1, -1)]));
        assert_eq!(quantum_integer(2), hl(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn quantum_integer_antisymmetry() {
        for n in -50..=50 {
            assert_eq!(quantum_integer(-n), -&quantum_integer(n));
        }
    }

    #[test]
    fn q_binomial_edge_values() {
        assert!(q_binomial(1, 2).is_zero());
        assert!(q_binomial(-1, 0).is_zero());
        assert_eq!(q_binomial(5, 0), HalfLaurent::one());
        assert_eq!(q_binomial(2, 1), hl(&[(1, 1), (-1, 1)]));
    }

    #[test]
    fn q_binomial_symmetry_and_counting() {
        for n in 0..=20i64 {
            let mut binom = BigInt::one();
            for m in 0..=n {
                let b = q_binomial(n, m);
                assert_eq!(b, q_binomial(n, n - m));
                assert_eq!(b.eval_at_one(), binom, "[{n} choose {m}] at s=1");
                binom = binom * BigInt::from(n - m) / BigInt::from(m + 1);
            }
        }
    }

    #[test]
    fn q_binomial_matches_subset_generating_function() {
        // Brute-force oracle: prod_{k=1}^{n} (1 + s^{2k-n-1} x) has x^m
        // coefficient equal to [n choose m]_q.
        for n in 0..=8i64 {
            let mut coeffs: Vec<HalfLaurent> = vec![HalfLaurent::zero(); n as usize + 1];
            coeffs[0] = HalfLaurent::one();
            for k in 1..=n {
                for m in (1..=k as usize).rev() {
                    let bumped = coeffs[m - 1].shifted(2 * k - n - 1);
                    coeffs[m] = &coeffs[m] + &bumped;
                }
            }
            for m in 0..=n {
                assert_eq!(coeffs[m as usize], q_binomial(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn q_binomial_defining_product_divisibility() {
        // [k]-products divide back out of the binomial exactly:
        // [n ch m] * prod_{k<=m} [k] = prod_{k<=m} [n-m+k].
        for n in 1..=20i64 {
            for m in 1..=n {
                let mut lhs = q_binomial(n, m);
                let mut rhs = HalfLaurent::one();
                for k in 1..=m {
                    lhs = &lhs * &quantum_integer(k);
                    rhs = &rhs * &quantum_integer(n - m + k);
                }
                assert_eq!(lhs, rhs, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn product_example() {
        // [2]_q * [3]_q = s^5 - s + ... expanded directly
        let p = &quantum_integer(2) * &quantum_integer(3);
        assert_eq!(p, hl(&[(5, 1), (1, -1), (-1, -1), (-5, 1)]));
    }

    #[test]
    fn exact_division_round_trip() {
        let a = hl(&[(3, 2), (-1, 5), (0, -7)]);
        let b = hl(&[(2, 1), (-2, -1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(
            hl(&[(0, 1)]).div_exact(&b).unwrap_err(),
            Error::InexactDivision
        );
        assert_eq!(
            a.div_exact(&HalfLaurent::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn wire_format_round_trip() {
        let p = hl(&[(-3, -12), (0, 4), (7, 1)]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"-3":"-12","0":"4","7":"1"}"#);
        assert_eq!(parse_half_laurent(&text).unwrap(), p);
        assert!(parse_half_laurent(r#"{"0":"0"}"#).is_err());
        assert!(parse_half_laurent(r#"{"x":"1"}"#).is_err());
    }
}
