//! Scalar aliases and small exact-arithmetic helpers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use num_integer::Integer;

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;
/// Exact integer scalar.
pub type Z = BigInt;

/// `n` as a rational.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// Parse "p/q" or "p" into a rational. Rejects zero denominators.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: Z = num.trim().parse().ok()?;
        let d: Z = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: Z = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

/// Canonical text form: reduced, positive denominator, "p" when integral.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Binomial coefficient C(n, k) as an exact integer; 0 when k > n.
pub fn binomial(n: usize, k: usize) -> Z {
    if k > n {
        return Z::zero();
    }
    let k = k.min(n - k);
    let mut acc = Z::one();
    for i in 0..k {
        acc = acc * Z::from(n - i) / Z::from(i + 1);
    }
    acc
}

/// Falling factorial n * (n-1) * ... * (n-k+1).
pub fn falling(n: usize, k: usize) -> Z {
    let mut acc = Z::one();
    for i in 0..k {
        acc *= Z::from(n - i);
    }
    acc
}

/// Factorial n!.
pub fn factorial(n: usize) -> Z {
    falling(n, n)
}

/// Gcd of a slice of integers (non-negative result; 0 for all-zero input).
pub fn gcd_all(xs: &[Z]) -> Z {
    let mut g = Z::zero();
    for x in xs {
        g = g.gcd(x);
    }
    g
}

/// Scale a rational vector to a primitive integer vector, first nonzero entry
/// positive. Zero vectors map to zero vectors.
pub fn primitive_integer(v: &[Q]) -> Vec<Z> {
    let mut lcm = Z::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<Z> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = gcd_all(&ints);
    if g.is_zero() {
        return ints;
    }
    for x in ints.iter_mut() {
        *x /= &g;
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        let x = parse_q("-6/4").unwrap();
        assert_eq!(format_q(&x), "-3/2");
        assert_eq!(format_q(&parse_q("5").unwrap()), "5");
        assert!(parse_q("1/0").is_none());
        assert!(parse_q("abc").is_none());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), Z::from(10));
        assert_eq!(binomial(3, 5), Z::zero());
        assert_eq!(binomial(0, 0), Z::one());
        assert_eq!(binomial(7, 3), Z::from(35));
    }

    #[test]
    fn falling_and_factorial() {
        assert_eq!(falling(5, 2), Z::from(20));
        assert_eq!(factorial(4), Z::from(24));
        assert_eq!(falling(3, 0), Z::one());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![parse_q("2/3").unwrap(), parse_q("-4/3").unwrap()];
        assert_eq!(primitive_integer(&v), vec![Z::from(1), Z::from(-2)]);
        let w = vec![parse_q("-1/2").unwrap(), parse_q("0").unwrap()];
        assert_eq!(primitive_integer(&w), vec![Z::from(1), Z::from(0)]);
    }
}
