//! Independent ground-truth evaluators: the dP3 q-binomial closed form, a
//! brute-force truncated-monomial Schur evaluator, and reference series
//! expansions. These deliberately avoid the closed-form machinery they are
//! used to check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qalgebra::{q_binomial, quantum_integer, GaussianRational, GenusSeries, QRational};
use crate::schur::Convention;

/// A finite slab of a Laurent series in s: every coefficient with exponent in
/// [min_exp, max_exp] is present and exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    terms: BTreeMap<i64, BigInt>,
    min_exp: i64,
    max_exp: i64,
}

impl TruncatedSeries {
    pub fn window(&self) -> (i64, i64) {
        (self.min_exp, self.max_exp)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Plain convolution of two slabs restricted to [min_exp, max_exp]. The
    /// caller is responsible for choosing a window on which both inputs carry
    /// complete information.
    pub fn mul_windowed(&self, rhs: &TruncatedSeries, min_exp: i64, max_exp: i64) -> Self {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if e >= min_exp && e <= max_exp {
                    *terms.entry(e).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self {
            terms,
            min_exp,
            max_exp,
        }
    }

    /// The slab multiplied by s^k.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
            min_exp: self.min_exp + k,
            max_exp: self.max_exp + k,
        }
    }

    /// True when `value` agrees with this slab on the retained window.
    /// Ascending expansions are only valid for functions whose series lives in
    /// ascending powers of s (the Plus alphabet); pass `descending = true` for
    /// the mirrored Minus expansions.
    pub fn matches_window(&self, value: &QRational, descending: bool) -> bool {
        let (target, lo, hi) = if descending {
            (value.substitute_q_inverse(), -self.max_exp, -self.min_exp)
        } else {
            (value.clone(), self.min_exp, self.max_exp)
        };
        if let Some(first) = target.numerator().min_exp() {
            let den_first = target.denominator().min_exp().unwrap_or(0);
            if first - den_first < lo {
                // the function has terms below the comparison window
                return false;
            }
        }
        let series = target.series_prefix(hi);
        for e in lo..=hi {
            let mine = if descending {
                self.coeff(-e)
            } else {
                self.coeff(e)
            };
            let theirs = series.get(&e).cloned().unwrap_or_default();
            if BigRational::from(mine) != theirs {
                return false;
            }
        }
        true
    }
}

/// The closed form for the two-component del Pezzo log generating function:
///
/// ```text
///   [d1][d2+d3] / ([d0][d1+d2+d3-d0])
///     * [d1 ch d0-d3] [d1 ch d0-d2] [d0 ch d1] [d1+d2+d3-d0 ch d1]
/// ```
///
/// Out-of-range q-binomials make the whole expression vanish; inputs that
/// would force a zero denominator against a nonzero numerator are rejected
/// as out-of-hypothesis instead of divided.
pub fn dp3_closed_form(d0: i64, d1: i64, d2: i64, d3: i64) -> Result<QRational> {
    if d1 < 1 {
        return Err(Error::OutOfHypothesis(format!(
            "first boundary pairing d1 = {d1} must be >= 1"
        )));
    }
    if d2 + d3 < 1 {
        return Err(Error::OutOfHypothesis(format!(
            "second boundary pairing d2+d3 = {} must be >= 1",
            d2 + d3
        )));
    }
    if d0 < 1 {
        return Err(Error::OutOfHypothesis(format!("d0 = {d0} must be >= 1")));
    }
    let rest = d1 + d2 + d3 - d0;
    let numerator = [
        q_binomial(d1, d0 - d3),
        q_binomial(d1, d0 - d2),
        q_binomial(d0, d1),
        q_binomial(rest, d1),
    ]
    .into_iter()
    .fold(
        &quantum_integer(d1) * &quantum_integer(d2 + d3),
        |acc, b| &acc * &b,
    );
    if numerator.is_zero() {
        return Ok(QRational::zero());
    }
    let denominator = &quantum_integer(d0) * &quantum_integer(rest);
    if denominator.is_zero() {
        return Err(Error::OutOfHypothesis(format!(
            "zero denominator with nonzero numerator at ({d0},{d1},{d2},{d3})"
        )));
    }
    QRational::new(numerator, denominator)
}

/// Cells of the skew diagram lambda/mu in column-major order, as (row, col),
/// both 0-based. Within a column the rows are contiguous and increasing.
fn column_major_cells(lambda: &Partition, mu: &Partition) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    let width = lambda.part(0) as usize;
    for col in 0..width {
        for row in 0..lambda.len() {
            let c = col as u32;
            if mu.part(row) <= c && c < lambda.part(row) {
                cells.push((row, col));
            }
        }
    }
    cells
}

fn shifted_exponent(value: u32, gamma: &Partition, convention: Convention) -> i64 {
    let base = 2 * value as i64 - 1;
    let shift = 2 * gamma.part(value as usize - 1) as i64;
    match convention {
        Convention::Plus => base - shift,
        Convention::Minus => -base + shift,
    }
}

struct TableauSearch<'a> {
    cells: Vec<(usize, usize)>,
    grid: Vec<Vec<u32>>,
    mu: &'a Partition,
    gamma: &'a Partition,
    convention: Convention,
    num_vars: u32,
    min_exp: i64,
    max_exp: i64,
    // Per-branch bound: the most window-ward step one cell can still take.
    best_step: i64,
    terms: BTreeMap<i64, BigInt>,
}

impl TableauSearch<'_> {
    fn fill(&mut self, idx: usize, partial: i64) {
        if idx == self.cells.len() {
            if partial >= self.min_exp && partial <= self.max_exp {
                *self.terms.entry(partial).or_insert_with(BigInt::zero) += 1;
            }
            return;
        }
        let (row, col) = self.cells[idx];
        let left_min = if col > 0 && self.mu.part(row) < col as u32 {
            self.grid[row][col - 1]
        } else {
            1
        };
        let above_min = if row > 0 && self.grid[row - 1][col] > 0 {
            self.grid[row - 1][col] + 1
        } else {
            1
        };
        let lo = left_min.max(above_min);
        let remaining = (self.cells.len() - idx - 1) as i64;
        for v in lo..=self.num_vars {
            let e = shifted_exponent(v, self.gamma, self.convention);
            let next = partial + e;
            // Entry values move the exponent monotonically (up for Plus, down
            // for Minus), so once the window is out of reach larger values
            // can only be worse.
            let unreachable = match self.convention {
                Convention::Plus => next + remaining * self.best_step > self.max_exp,
                Convention::Minus => next + remaining * self.best_step < self.min_exp,
            };
            if unreachable {
                break;
            }
            self.grid[row][col] = v;
            self.fill(idx + 1, next);
            self.grid[row][col] = 0;
        }
    }
}

/// Brute-force evaluation of the skew Schur function s_{lambda/mu} on the
/// shifted principal alphabet x_j = q^{sign (j - 1/2 - gamma_j)}, by direct
/// summation over semistandard skew tableaux with entries <= num_vars.
/// Exact on the s-exponent window [min_exp, max_exp]; column-by-column
/// generation with pruning keeps the enumeration at desk scale.
pub fn schur_bruteforce_shifted(
    lambda: &Partition,
    mu: &Partition,
    gamma: &Partition,
    convention: Convention,
    num_vars: u32,
    min_exp: i64,
    max_exp: i64,
) -> TruncatedSeries {
    let mut terms = BTreeMap::new();
    if !lambda.contains(mu) {
        return TruncatedSeries {
            terms,
            min_exp,
            max_exp,
        };
    }
    let cells = column_major_cells(lambda, mu);
    if cells.is_empty() {
        terms.insert(0, BigInt::one());
        return TruncatedSeries {
            terms,
            min_exp,
            max_exp,
        };
    }
    let steps = (1..=num_vars).map(|v| shifted_exponent(v, gamma, convention));
    let best_step = match convention {
        Convention::Plus => steps.min().unwrap(),
        Convention::Minus => steps.max().unwrap(),
    };
    let grid = vec![vec![0; lambda.part(0) as usize]; lambda.len()];
    let mut search = TableauSearch {
        cells,
        grid,
        mu,
        gamma,
        convention,
        num_vars,
        min_exp,
        max_exp,
        best_step,
        terms,
    };
    search.fill(0, 0);
    TruncatedSeries {
        terms: search.terms,
        min_exp,
        max_exp,
    }
}

/// Spec form of the brute-force oracle: unshifted alphabet x_j = q^{j-1/2},
/// truncated at q^{q_order} (s-exponent 2*q_order).
pub fn schur_bruteforce(
    lambda: &Partition,
    mu: &Partition,
    num_vars: u32,
    q_order: i64,
) -> TruncatedSeries {
    schur_bruteforce_shifted(
        lambda,
        mu,
        &Partition::empty(),
        Convention::Plus,
        num_vars,
        0,
        2 * q_order,
    )
}

/// Reference Laurent expansion of 1/(2 sin(n hbar / 2)) by direct Taylor
/// inversion of the sine series: (1/n) hbar^{-1} + (n/24) hbar + ...
pub fn cosecant_series(n: i64, order: i64) -> Result<GenusSeries> {
    if n < 1 {
        return Err(Error::OutOfHypothesis(format!(
            "cosecant index n = {n} must be >= 1"
        )));
    }
    // 2 sin(n x / 2) = x * sum_j c_{2j} x^{2j}, c_{2j} = (-1)^j n^{2j+1} / (4^j (2j+1)!)
    let top = (order + 1).max(0) as usize;
    let mut dprime = vec![BigRational::zero(); top + 1];
    let mut j = 0usize;
    loop {
        let e = 2 * j;
        if e > top {
            break;
        }
        let mut numer = BigInt::from(n).pow(2 * j as u32 + 1);
        if j % 2 == 1 {
            numer = -numer;
        }
        let mut denom = BigInt::one();
        for t in 1..=(2 * j + 1) {
            denom *= BigInt::from(t);
        }
        denom *= BigInt::from(4).pow(j as u32);
        dprime[e] = BigRational::new(numer, denom);
        j += 1;
    }
    // Invert the even power series, then shift down by one.
    let mut inv = vec![BigRational::zero(); top + 1];
    for k in 0..=top {
        let mut acc = if k == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        for m in 1..=k {
            acc -= &dprime[m] * &inv[k - m];
        }
        inv[k] = acc / &dprime[0];
    }
    let mut terms = BTreeMap::new();
    for (k, c) in inv.into_iter().enumerate() {
        let e = k as i64 - 1;
        if e <= order && !c.is_zero() {
            terms.insert(e, GaussianRational::from_rational(c));
        }
    }
    Ok(GenusSeries::new(0, terms, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{expand_hbar, HalfLaurent};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn dp3_base_class_is_one() {
        assert!(dp3_closed_form(1, 1, 1, 0).unwrap().is_one());
    }

    #[test]
    fn dp3_out_of_range_binomial_vanishes() {
        assert!(dp3_closed_form(1, 3, 1, 0).unwrap().is_zero());
    }

    #[test]
    fn dp3_2111_is_quantum_dimension() {
        // [2 ch 1] = s + s^{-1}, all other factors 1
        let expect = QRational::from(HalfLaurent::from_terms([
            (1, BigInt::one()),
            (-1, BigInt::one()),
        ]));
        assert_eq!(dp3_closed_form(2, 1, 1, 1).unwrap(), expect);
    }

    #[test]
    fn dp3_hypothesis_violations_are_reported() {
        assert!(matches!(
            dp3_closed_form(0, 1, 1, 0),
            Err(Error::OutOfHypothesis(_))
        ));
        assert!(matches!(
            dp3_closed_form(1, 0, 1, 0),
            Err(Error::OutOfHypothesis(_))
        ));
        assert!(matches!(
            dp3_closed_form(1, 1, 0, 0),
            Err(Error::OutOfHypothesis(_))
        ));
        // d1+d2+d3-d0 = 0 makes [rest ch d1] = [0 ch 1] = 0: vanishing
        // numerator wins over the zero denominator.
        assert!(dp3_closed_form(2, 1, 1, 0).unwrap().is_zero());
    }

    #[test]
    fn dp3_q_inverse_invariance() {
        for (a, b, c, d) in [(1, 1, 1, 0), (2, 1, 1, 1), (3, 2, 1, 1), (2, 2, 1, 1)] {
            let v = dp3_closed_form(a, b, c, d).unwrap();
            assert_eq!(v.substitute_q_inverse(), v, "({a},{b},{c},{d})");
        }
    }

    #[test]
    fn bruteforce_trivial_and_single_box() {
        let empty = Partition::empty();
        let one = schur_bruteforce(&empty, &empty, 10, 10);
        assert_eq!(one.coeff(0), BigInt::one());
        assert_eq!(one.terms().count(), 1);

        // s_{(1)} = q^{1/2} + q^{3/2} + ... prefix of s/(1-s^2)
        let h1 = schur_bruteforce(&p(&[1]), &empty, 25, 20);
        for j in 1..=20 {
            assert_eq!(h1.coeff(2 * j - 1), BigInt::one());
            assert_eq!(h1.coeff(2 * j), BigInt::zero());
        }
    }

    #[test]
    fn bruteforce_skew_column_strip() {
        // (2)/(1) is a single box: matches h_1's prefix
        let a = schur_bruteforce(&p(&[2]), &p(&[1]), 25, 20);
        let b = schur_bruteforce(&p(&[1]), &Partition::empty(), 25, 20);
        assert_eq!(a, b);
    }

    #[test]
    fn bruteforce_stabilizes_in_num_vars() {
        let small = schur_bruteforce(&p(&[2, 1]), &Partition::empty(), 20, 15);
        let big = schur_bruteforce(&p(&[2, 1]), &Partition::empty(), 40, 15);
        assert_eq!(small, big);
    }

    #[test]
    fn cosecant_reference_values() {
        let s = cosecant_series(1, 3).unwrap();
        assert_eq!(
            s.coefficient(-1),
            GaussianRational::from_rational(rat(1, 1))
        );
        assert_eq!(
            s.coefficient(1),
            GaussianRational::from_rational(rat(1, 24))
        );
        assert_eq!(
            s.coefficient(3),
            GaussianRational::from_rational(rat(7, 5760))
        );
        let s2 = cosecant_series(2, 1).unwrap();
        assert_eq!(
            s2.coefficient(-1),
            GaussianRational::from_rational(rat(1, 2))
        );
        assert!(cosecant_series(0, 3).is_err());
    }

    #[test]
    fn cosecant_coefficients_positive() {
        for n in 1..=4 {
            let s = cosecant_series(n, 9).unwrap();
            for (e, c) in s.terms() {
                assert!(e % 2 != 0, "only odd exponents");
                assert!(c.re > BigRational::zero(), "n={n} e={e}");
            }
        }
    }

    #[test]
    fn cosecant_matches_expand_hbar() {
        // Cross-module identity: i/[n]_q expands to the same series.
        for n in 1..=3 {
            let lhs = expand_hbar(
                &QRational::from(quantum_integer(n)).inverse().unwrap(),
                1,
                7,
            )
            .unwrap();
            let rhs = cosecant_series(n, 7).unwrap();
            for e in -1..=7 {
                assert_eq!(lhs.coefficient(e), rhs.coefficient(e), "n={n} e={e}");
            }
        }
    }
}
