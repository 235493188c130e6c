//! Integer-partition combinatorics: conjugation, the kappa statistic,
//! enumeration by size, containment, and hook-shape generation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers; the empty sequence is
/// the empty partition. Serializes as a plain JSON array, e.g. `[3,1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, panicking unless the parts are positive and weakly
    /// decreasing. Untrusted input goes through serde or [`Partition::try_new`].
    pub fn new(parts: Vec<u32>) -> Self {
        Self::try_new(parts).expect("parts must be positive and weakly decreasing")
    }

    pub fn try_new(parts: Vec<u32>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing || parts.contains(&0) {
            return Err(Error::Parse(format!(
                "not a partition: {parts:?} (parts must be positive and weakly decreasing)"
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The i-th part (0-based), zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Self {
        match self.parts.first() {
            None => Self::empty(),
            Some(&first) => {
                let parts = (1..=first)
                    .map(|col| self.parts.iter().take_while(|&&p| p >= col).count() as u32)
                    .collect();
                Self { parts }
            }
        }
    }

    /// kappa = sum_j p_j (p_j - 2j + 1) with j starting at 1; always even.
    pub fn kappa(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 * (p as i64 - 2 * (i as i64 + 1) + 1))
            .sum()
    }

    /// True iff the Young diagram of `self` contains that of `inner`.
    pub fn contains(&self, inner: &Partition) -> bool {
        (0..inner.len()).all(|i| self.part(i) >= inner.part(i))
    }
}

/// All partitions of `size` in descending lexicographic order, e.g.
/// enumerate(3) = [(3), (2,1), (1,1,1)]. The order is part of the contract so
/// parallel reductions stay reproducible.
pub fn enumerate(size: u32) -> Vec<Partition> {
    fn go(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        for next in (1..=remaining.min(max_part)).rev() {
            stack.push(next);
            go(remaining - next, next, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size.max(1), &mut Vec::new(), &mut out);
    out
}

/// The hook partitions (c-k, 1^k) for k = 0..c-1, in that order.
pub fn hooks(c: i64) -> Result<Vec<Partition>> {
    if c <= 0 {
        return Err(Error::InvalidWinding(c));
    }
    let c = c as u32;
    Ok((0..c)
        .map(|k| {
            let mut parts = vec![c - k];
            parts.extend(std::iter::repeat_n(1, k as usize));
            Partition { parts }
        })
        .collect())
}

/// All partitions eta contained in `bound` (componentwise), including the
/// empty one; used for the finite skew sums at each vertex.
pub fn subpartitions(bound: &Partition) -> Vec<Partition> {
    fn go(
        bound: &Partition,
        row: usize,
        prev: u32,
        stack: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        out.push(Partition {
            parts: stack.clone(),
        });
        if row >= bound.len() {
            return;
        }
        let cap = bound.part(row).min(prev);
        for next in (1..=cap).rev() {
            stack.push(next);
            go(bound, row + 1, next, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, 0, u32::MAX, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::try_new(parts).map_err(serde::de::Error::custom)
    }
}

/// Parses the JSON wire form of a partition (an array of parts).
pub fn parse_partition(text: &str) -> Result<Partition> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// Euler's pentagonal-number recurrence, the independent count oracle.
    fn partition_count(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut acc = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 as usize > m {
                    break;
                }
                let sign = if k % 2 == 0 { -1 } else { 1 };
                acc += sign * p[m - g1 as usize];
                if g2 as usize <= m {
                    acc += sign * p[m - g2 as usize];
                }
                k += 1;
            }
            p[m] = acc;
        }
        p
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn conjugate_is_involution() {
        for n in 0..=12 {
            for mu in enumerate(n) {
                assert_eq!(mu.conjugate().conjugate(), mu);
            }
        }
    }

    #[test]
    fn kappa_examples_and_parity() {
        assert_eq!(Partition::empty().kappa(), 0);
        assert_eq!(p(&[2]).kappa(), 2);
        assert_eq!(p(&[1, 1]).kappa(), -2);
        for n in 0..=12 {
            for mu in enumerate(n) {
                assert_eq!(mu.kappa() % 2, 0, "kappa({mu}) must be even");
                assert_eq!(mu.conjugate().kappa(), -mu.kappa(), "kappa({mu})");
            }
        }
    }

    #[test]
    fn enumerate_matches_pentagonal_recurrence() {
        let counts = partition_count(20);
        for n in 0..=20u32 {
            assert_eq!(enumerate(n).len() as i64, counts[n as usize], "p({n})");
        }
    }

    #[test]
    fn enumerate_order_and_small_cases() {
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        assert_eq!(enumerate(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(enumerate(5).len(), 7);
    }

    #[test]
    fn hooks_are_the_expected_shapes() {
        assert_eq!(hooks(1).unwrap(), vec![p(&[1])]);
        assert_eq!(hooks(2).unwrap(), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(hooks(3).unwrap(), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(hooks(0).unwrap_err(), Error::InvalidWinding(0));
        for c in 1..=9i64 {
            let h = hooks(c).unwrap();
            assert_eq!(h.len(), c as usize);
            let all = enumerate(c as u32);
            for shape in &h {
                assert!(all.contains(shape));
            }
        }
    }

    #[test]
    fn containment() {
        assert!(p(&[2, 2]).contains(&Partition::empty()));
        assert!(p(&[2, 2]).contains(&p(&[2, 1])));
        assert!(!p(&[2, 2]).contains(&p(&[3])));
    }

    #[test]
    fn subpartitions_of_a_shape() {
        let subs = subpartitions(&p(&[2, 1]));
        assert_eq!(
            subs,
            vec![Partition::empty(), p(&[1]), p(&[1, 1]), p(&[2]), p(&[2, 1])]
        );
    }

    #[test]
    fn serde_round_trip_and_validation() {
        let mu = p(&[3, 1]);
        assert_eq!(serde_json::to_string(&mu).unwrap(), "[3,1]");
        assert_eq!(parse_partition("[3,1]").unwrap(), mu);
        assert!(parse_partition("[1,3]").is_err());
        assert!(parse_partition("[0]").is_err());
        assert_eq!(parse_partition("[]").unwrap(), Partition::empty());
    }
}
