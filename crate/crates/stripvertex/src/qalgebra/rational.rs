//! Rational functions in s = q^{1/2}, kept in a canonical form so that
//! structural comparison decides equality, plus the phased variant carrying an
//! explicit power of the imaginary unit.
//!
//! Canonical form: numerator and denominator share no polynomial factor and no
//! integer content, the denominator is a true polynomial in s with nonzero
//! constant term (monomial content lives on the numerator), and the
//! denominator's lowest-degree coefficient is positive.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::half_laurent::HalfLaurent;
use super::polygcd;
use crate::error::{Error, Result};

/// A normalized ratio of two Laurent polynomials in s = q^{1/2}.
#[derive(Clone, Eq, Serialize)]
pub struct QRational {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl QRational {
    /// Builds num/den, normalizing to canonical form.
    pub fn new(num: HalfLaurent, den: HalfLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut out = Self { num, den };
        out.canonicalize();
        Ok(out)
    }

    pub fn zero() -> Self {
        Self {
            num: HalfLaurent::zero(),
            den: HalfLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: HalfLaurent::one(),
            den: HalfLaurent::one(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self {
            num: HalfLaurent::monomial(0, BigInt::from(n)),
            den: HalfLaurent::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let mut out = Self {
            num: HalfLaurent::monomial(0, r.numer().clone()),
            den: HalfLaurent::monomial(0, r.denom().clone()),
        };
        out.canonicalize();
        out
    }

    pub fn numerator(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn canonicalize(&mut self) {
        debug_assert!(!self.den.is_zero());
        if self.num.is_zero() {
            self.den = HalfLaurent::one();
            return;
        }
        let (shift_n, mut dense_n) = self.num.to_dense();
        let (shift_d, mut dense_d) = self.den.to_dense();
        let g = polygcd::gcd(&dense_n, &dense_d);
        if polygcd::deg(&g) != Some(0) || !g[0].is_one() {
            dense_n = polygcd::div_exact(&dense_n, &g).expect("gcd divides numerator");
            dense_d = polygcd::div_exact(&dense_d, &g).expect("gcd divides denominator");
        }
        let c = num_integer::Integer::gcd(&polygcd::content(&dense_n), &polygcd::content(&dense_d));
        if !c.is_one() {
            dense_n = polygcd::div_coeffs(&dense_n, &c);
            dense_d = polygcd::div_coeffs(&dense_d, &c);
        }
        if dense_d[0].is_negative() {
            dense_n.iter_mut().for_each(|x| *x = -std::mem::take(x));
            dense_d.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        self.num = HalfLaurent::from_dense(shift_n - shift_d, &dense_n);
        self.den = HalfLaurent::from_dense(0, &dense_d);
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        self * &Self::from_rational(r)
    }

    pub fn mul_integer(&self, n: i64) -> Self {
        self * &Self::from_integer(n)
    }

    /// The involution q -> q^{-1}.
    pub fn substitute_q_inverse(&self) -> Self {
        let mut out = Self {
            num: self.num.substitute_q_inverse(),
            den: self.den.substitute_q_inverse(),
        };
        out.canonicalize();
        out
    }

    /// The substitution q -> q^k (equivalently hbar -> k hbar), k >= 1.
    pub fn substitute_q_power(&self, k: i64) -> Self {
        let mut out = Self {
            num: self.num.substitute_q_power(k),
            den: self.den.substitute_q_power(k),
        };
        out.canonicalize();
        out
    }

    /// Ascending Laurent expansion in s up to and including exponent
    /// `max_exp`, as exponent -> rational coefficient. Valid because the
    /// canonical denominator has a nonzero constant term.
    pub fn series_prefix(&self, max_exp: i64) -> std::collections::BTreeMap<i64, BigRational> {
        let mut out = std::collections::BTreeMap::new();
        if self.is_zero() {
            return out;
        }
        let (shift, num) = self.num.to_dense();
        let (_, den) = self.den.to_dense();
        let d0 = BigRational::from(den[0].clone());
        let len = (max_exp - shift + 1).max(0) as usize;
        let mut coeffs: Vec<BigRational> = Vec::with_capacity(len);
        for j in 0..len {
            let mut acc = if j < num.len() {
                BigRational::from(num[j].clone())
            } else {
                BigRational::zero()
            };
            for i in 1..=j.min(den.len() - 1) {
                acc -= BigRational::from(den[i].clone()) * &coeffs[j - i];
            }
            let c = acc / &d0;
            coeffs.push(c.clone());
            if !c.is_zero() {
                out.insert(shift + j as i64, c);
            }
        }
        out
    }
}

// Equality by cross-multiplication, independent of representation. Canonical
// forms make this equivalent to structural equality.
impl PartialEq for QRational {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &QRational {
    type Output = QRational;
    fn add(self, rhs: &QRational) -> QRational {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        QRational::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &QRational {
    type Output = QRational;
    fn sub(self, rhs: &QRational) -> QRational {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        QRational::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Mul for &QRational {
    type Output = QRational;
    fn mul(self, rhs: &QRational) -> QRational {
        QRational::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<HalfLaurent> for QRational {
    fn from(p: HalfLaurent) -> Self {
        Self::new(p, HalfLaurent::one()).expect("unit denominator")
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRational({})", self)
    }
}

impl<'de> Deserialize<'de> for QRational {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            num: HalfLaurent,
            den: HalfLaurent,
        }
        let raw = Raw::deserialize(deserializer)?;
        QRational::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

/// Parses the JSON wire form { "num": {...}, "den": {...} }.
pub fn parse_qrational(text: &str) -> Result<QRational> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// A rational function together with an explicit power of i, normalized so
/// the i-power is 0 or 1 and the zero value carries phase 0. Every generating
/// series in the crate factors as i^a times a real rational function in q;
/// this type keeps the two parts separate so the coefficient ring stays real.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Phased {
    pub i_power: u8,
    pub value: QRational,
}

impl Phased {
    pub fn new(i_power: i64, value: QRational) -> Self {
        let mut out = Self {
            i_power: i_power.rem_euclid(4) as u8,
            value,
        };
        out.normalize();
        out
    }

    pub fn zero() -> Self {
        Self {
            i_power: 0,
            value: QRational::zero(),
        }
    }

    pub fn real(value: QRational) -> Self {
        Self::new(0, value)
    }

    fn normalize(&mut self) {
        if self.value.is_zero() {
            self.i_power = 0;
            return;
        }
        if self.i_power >= 2 {
            self.i_power -= 2;
            self.value = -&self.value;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Multiplies by i^k.
    pub fn rotate(&self, k: i64) -> Self {
        Self::new(self.i_power as i64 + k, self.value.clone())
    }

    pub fn mul(&self, rhs: &Phased) -> Self {
        Self::new(
            self.i_power as i64 + rhs.i_power as i64,
            &self.value * &rhs.value,
        )
    }

    pub fn mul_value(&self, rhs: &QRational) -> Self {
        Self::new(self.i_power as i64, &self.value * rhs)
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        Self::new(self.i_power as i64, self.value.mul_rational(r))
    }

    /// Adds two phased values; they must lie on the same real or imaginary
    /// axis (phases equal mod 2 after normalization).
    pub fn add(&self, rhs: &Phased) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.i_power != rhs.i_power {
            return Err(Error::PhaseMismatch(self.i_power, rhs.i_power));
        }
        Ok(Self::new(self.i_power as i64, &self.value + &rhs.value))
    }

    /// Collapses to a plain real rational function; errors when the phase is
    /// genuinely imaginary.
    pub fn reduce_real(&self) -> Result<QRational> {
        match self.i_power {
            0 => Ok(self.value.clone()),
            p => Err(Error::ImaginaryPhase(p)),
        }
    }

    pub fn substitute_q_power(&self, k: i64) -> Self {
        Self {
            i_power: self.i_power,
            value: self.value.substitute_q_power(k),
        }
    }
}

impl fmt::Display for Phased {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.i_power {
            0 => write!(f, "{}", self.value),
            1 => write!(f, "i * ({})", self.value),
            _ => unreachable!("normalized phase"),
        }
    }
}
