//! Expansion of rational functions in q under q = e^{i hbar} into truncated
//! Laurent series in hbar with exact Gaussian-rational coefficients. No
//! floating point appears anywhere on the result path.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::half_laurent::HalfLaurent;
use super::rational::QRational;
use crate::error::{Error, Result};

/// An exact element of Q(i): re + im * i.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &norm,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &norm,
        })
    }

    /// Multiplies by i^k.
    pub fn rotate(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => Self {
                re: -self.im.clone(),
                im: self.re.clone(),
            },
            2 => Self {
                re: -self.re.clone(),
                im: -self.im.clone(),
            },
            _ => Self {
                re: self.im.clone(),
                im: -self.re.clone(),
            },
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

/// A truncated Laurent series in hbar over Q(i). `i_power` records the phase
/// that has been folded into the coefficients. Coefficients beyond the
/// truncation order are absent, not zero-filled.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenusSeries {
    pub i_power: u8,
    terms: BTreeMap<i64, GaussianRational>,
    truncation_order: i64,
}

impl GenusSeries {
    pub fn new(
        i_power: i64,
        terms: BTreeMap<i64, GaussianRational>,
        truncation_order: i64,
    ) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(e, c)| *e <= truncation_order && !c.is_zero())
            .collect();
        Self {
            i_power: i_power.rem_euclid(4) as u8,
            terms,
            truncation_order,
        }
    }

    pub fn truncation_order(&self) -> i64 {
        self.truncation_order
    }

    pub fn coefficient(&self, exp: i64) -> GaussianRational {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every retained coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Product of two truncated series; the result is truncated to the range
    /// on which both factors carry complete information.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = match (self.min_exp(), rhs.min_exp()) {
            (Some(a), Some(b)) => (self.truncation_order + b).min(rhs.truncation_order + a),
            _ => self.truncation_order.min(rhs.truncation_order),
        };
        let mut terms: BTreeMap<i64, GaussianRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if e > order {
                    continue;
                }
                let prod = ca.mul(cb);
                let entry = terms.entry(e).or_default();
                *entry = entry.add(&prod);
            }
        }
        Self::new(0, terms, order)
    }

    /// Truncates to a (possibly lower) order.
    pub fn truncated(&self, order: i64) -> Self {
        Self::new(
            self.i_power as i64,
            self.terms
                .iter()
                .filter(|(&e, _)| e <= order)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
            order.min(self.truncation_order),
        )
    }
}

/// Series of P(e^{i hbar / 2}) up to hbar^max_order: the hbar^j coefficient is
/// i^j / (2^j j!) * sum_e a_e e^j.
fn exponential_series(p: &HalfLaurent, max_order: i64) -> Vec<GaussianRational> {
    let mut out = Vec::with_capacity(max_order as usize + 1);
    // powers[t] = e_t^j, updated incrementally over j
    let exps: Vec<(BigInt, BigInt)> = p
        .terms()
        .map(|(e, c)| (BigInt::from(e), c.clone()))
        .collect();
    let mut powers: Vec<BigInt> = vec![BigInt::one(); exps.len()];
    let mut denom = BigInt::one(); // 2^j j!
    for j in 0..=max_order {
        if j > 0 {
            for (t, (e, _)) in exps.iter().enumerate() {
                powers[t] *= e;
            }
            denom *= BigInt::from(2) * BigInt::from(j);
        }
        let mut s = BigInt::zero();
        for (t, (_, c)) in exps.iter().enumerate() {
            s += c * &powers[t];
        }
        let c = BigRational::new(s, denom.clone());
        out.push(GaussianRational::from_rational(c).rotate(j));
    }
    out
}

/// Laurent-series expansion of i^{i_power} * r(e^{i hbar}) about hbar = 0,
/// retaining exponents up to `order`, with exact Gaussian-rational
/// coefficients. The lowest exponent equals the difference of the vanishing
/// orders of numerator and denominator at q = 1.
pub fn expand_hbar(r: &QRational, i_power: i64, order: i64) -> Result<GenusSeries> {
    if r.denominator().is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if r.is_zero() {
        return Ok(GenusSeries::new(i_power, BTreeMap::new(), order));
    }
    let den = r.denominator();
    // The vanishing order of den(e^{i hbar/2}) at hbar = 0 equals the
    // multiplicity of the root s = 1, bounded by the exponent span.
    let den_span = den.max_exp().unwrap() - den.min_exp().unwrap();
    let den_series = exponential_series(den, order.max(0) + 2 * den_span + 1);
    let v_den = match den_series.iter().position(|c| !c.is_zero()) {
        Some(v) => v as i64,
        None => return Err(Error::ZeroDenominator),
    };
    if order + v_den < 0 {
        return Ok(GenusSeries::new(i_power, BTreeMap::new(), order));
    }
    let num_series = exponential_series(r.numerator(), order.max(0) + v_den);

    // r = hbar^{-v_den} * N(hbar) / D'(hbar) with D'(0) != 0; divide as plain
    // power series and shift the exponents back down.
    let dprime = |t: usize| -> GaussianRational {
        den_series
            .get(t + v_den as usize)
            .cloned()
            .unwrap_or_default()
    };
    let lead = dprime(0);
    let top = (order + v_den) as usize;
    let mut quotient: Vec<GaussianRational> = Vec::with_capacity(top + 1);
    let mut terms = BTreeMap::new();
    for j in 0..=top {
        let mut acc = num_series.get(j).cloned().unwrap_or_default();
        for (m, qc) in quotient.iter().enumerate() {
            if !qc.is_zero() {
                acc = acc.sub(&qc.mul(&dprime(j - m)));
            }
        }
        let c = acc.div(&lead)?;
        quotient.push(c.clone());
        if !c.is_zero() {
            terms.insert(j as i64 - v_den, c.rotate(i_power));
        }
    }
    Ok(GenusSeries::new(i_power, terms, order))
}
