//! Dense integer-polynomial helpers backing the canonical form of rational
//! functions: content, primitive part, exact division and a primitive-PRS gcd.
//!
//! Polynomials are dense coefficient vectors in ascending degree with no
//! trailing zero (the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Dense = Vec<BigInt>;

pub fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn deg(p: &Dense) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

#[cfg(test)]
pub fn mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(out)
}

pub fn scale(p: &Dense, c: &BigInt) -> Dense {
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|x| x * c).collect()
}

/// gcd of all coefficients; zero polynomial has content zero.
pub fn content(p: &Dense) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

/// Divides every coefficient by `d`, which must divide exactly.
pub fn div_coeffs(p: &Dense, d: &BigInt) -> Dense {
    p.iter().map(|c| c / d).collect()
}

/// Exact division in Z[x]; returns None when the division leaves a remainder
/// or a non-integer quotient coefficient.
pub fn div_exact(num: &Dense, den: &Dense) -> Option<Dense> {
    if den.is_empty() {
        return None;
    }
    if num.is_empty() {
        return Some(Vec::new());
    }
    if num.len() < den.len() {
        return None;
    }
    let mut rem = num.clone();
    let mut quot = vec![BigInt::zero(); num.len() - den.len() + 1];
    let lead = den.last().unwrap();
    for k in (0..quot.len()).rev() {
        let top = rem[k + den.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, dj) in den.iter().enumerate() {
            let v = &q * dj;
            rem[k + j] -= v;
        }
        quot[k] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trim(quot))
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed without
/// leaving Z[x].
fn pseudo_rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        r = scale(&r, &lb);
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Primitive part with positive leading coefficient.
pub fn primitive(p: &Dense) -> Dense {
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    div_coeffs(p, &c)
}

/// gcd in Z[x] via the primitive polynomial remainder sequence. The result is
/// primitive with positive leading coefficient (or zero when both inputs are).
pub fn gcd(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    let mut f = primitive(a);
    let mut g = primitive(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g);
        if r.is_empty() {
            return g;
        }
        f = g;
        g = primitive(&r);
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Dense {
        trim(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x+3) share x-1
        let a = mul(&p(&[-1, 1]), &p(&[2, 1]));
        let b = mul(&p(&[-1, 1]), &p(&[3, 1]));
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_coprime_is_unit() {
        assert_eq!(gcd(&p(&[1, 1]), &p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn gcd_with_multiplicity() {
        // (x-1)^2(x+1) vs (x-1)(x+1)^2 -> (x-1)(x+1) = x^2-1
        let a = mul(&mul(&p(&[-1, 1]), &p(&[-1, 1])), &p(&[1, 1]));
        let b = mul(&mul(&p(&[-1, 1]), &p(&[1, 1])), &p(&[1, 1]));
        assert_eq!(gcd(&a, &b), p(&[-1, 0, 1]));
    }

    #[test]
    fn div_exact_detects_remainder() {
        assert_eq!(div_exact(&p(&[1, 1]), &p(&[0, 1])), None);
        assert_eq!(div_exact(&p(&[0, 1, 1]), &p(&[0, 1])), Some(p(&[1, 1])));
        assert_eq!(div_exact(&p(&[2, 2]), &p(&[2])), Some(p(&[1, 1])));
        assert_eq!(div_exact(&p(&[3, 2]), &p(&[2])), None);
    }

    #[test]
    fn content_and_primitive() {
        assert_eq!(content(&p(&[4, -6])), BigInt::from(2));
        assert_eq!(primitive(&p(&[4, -6])), p(&[-2, 3]));
        assert!(gcd(&p(&[]), &p(&[])).is_empty());
    }
}
