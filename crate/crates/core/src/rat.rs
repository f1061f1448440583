//! Exact rational scalars.
//!
//! All coefficients in the crate are [`Rational`] values: arbitrary-precision
//! fractions kept in lowest terms with positive denominator. Arithmetic is
//! exact; nothing in this crate ever rounds.

use num::bigint::Sign;
pub use num::BigInt;
use num::{BigRational, One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator (both guaranteed by the representation).
pub type Rational = BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

pub fn is_one(r: &Rational) -> bool {
    r.is_one()
}

/// Extracts the numerator if the rational is an integer.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Renders a rational as a leading-sign-free string plus its sign, used by
/// the polynomial printers to join terms with ` + ` / ` - `.
pub fn signed_parts(r: &Rational) -> (bool, String) {
    let neg = r.is_negative();
    let abs = if neg { -r.clone() } else { r.clone() };
    (neg, abs.to_string())
}

/// True when the sign is negative (for display decisions).
pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

pub fn big_to_rat(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `(-1)^k` as a rational.
pub fn alt_sign(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

/// `(-1)^k` as a big integer sign application.
pub fn alt_big(k: u32, v: BigInt) -> BigInt {
    if k.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

pub fn bigint_sign(n: &BigInt) -> Sign {
    n.sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn exact_arithmetic() {
        let a = rat(1, 3);
        let b = rat(1, 6);
        assert_eq!(&a + &b, rat(1, 2));
        assert_eq!(&a * &b, rat(1, 18));
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(6, 0), BigInt::from(1));
    }

    #[test]
    fn integer_extraction() {
        assert_eq!(as_integer(&rat(6, 3)), Some(BigInt::from(2)));
        assert_eq!(as_integer(&rat(1, 2)), None);
    }
}
