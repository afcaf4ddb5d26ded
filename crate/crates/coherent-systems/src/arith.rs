//! Exact arbitrary-precision integer and rational arithmetic.
//!
//! Every other module computes through the types and helpers here; there is
//! no floating point anywhere in the crate. Integers are arbitrary precision
//! (factorial products at genus 200 run to thousands of digits) and rationals
//! are always stored normalized: positive denominator, numerator and
//! denominator coprime, so equality, ordering and deduplication are
//! structural.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::DomainError;

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Arbitrary-precision rational, normalized on construction.
pub type Rational = BigRational;

/// Shorthand for building an [`Integer`] from a machine integer.
pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

/// Shorthand for building an integral [`Rational`].
pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(int(v))
}

/// Normalized rational from numerator and denominator.
///
/// Any (p, q) with q ≠ 0 yields the unique reduced representative with
/// positive denominator; q = 0 is a domain error.
pub fn rational(numer: &Integer, denom: &Integer) -> Result<Rational, DomainError> {
    if denom.is_zero() {
        return Err(DomainError::ZeroDenominator);
    }
    Ok(Rational::new(numer.clone(), denom.clone()))
}

/// Euclidean floor division: the greatest q with q·b ≤ a.
///
/// This realizes the bracket [x] of the classical formulas as mathematical
/// floor, correct for negative a (floor, not truncation). Divisors b ≤ 0 are
/// a domain error.
pub fn floor_div(a: &Integer, b: &Integer) -> Result<Integer, DomainError> {
    if !b.is_positive() {
        return Err(DomainError::NonPositiveDivisor(b.clone()));
    }
    Ok(num::Integer::div_floor(a, b))
}

/// Ceiling division for positive divisors.
pub fn ceil_div(a: &Integer, b: &Integer) -> Result<Integer, DomainError> {
    floor_div(&(a + b - Integer::one()), b)
}

/// m! for m ≥ 0.
pub fn factorial(m: &Integer) -> Result<Integer, DomainError> {
    if m.is_negative() {
        return Err(DomainError::NegativeFactorial(m.clone()));
    }
    let mut acc = Integer::one();
    let mut i = Integer::one();
    while &i <= m {
        acc *= &i;
        i += 1;
    }
    Ok(acc)
}

/// Exact three-way comparison of rationals.
///
/// Normalized storage makes this exact cross-multiplied comparison; it never
/// approximates.
pub fn rat_cmp(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// Renders a rational as `p/q`, or as a bare integer when q = 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
