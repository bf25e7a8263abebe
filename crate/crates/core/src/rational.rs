//! Exact rationals used for labels, unit-interval evaluation and polyhedra.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// `n / d` as a rational; `d` must be non-zero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `"num/den"`, always with an explicit denominator.
pub fn to_fraction_string(q: &Rational) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}/{}", q.numer(), q.denom());
    s
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn in_unit_interval(q: &Rational) -> bool {
    !q.is_negative() && *q <= Rational::one()
}

/// `min(1, x)`.
pub fn cap_one(x: Rational) -> Rational {
    if x > Rational::one() {
        Rational::one()
    } else {
        x
    }
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Smallest integer `>= q`.
pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}
