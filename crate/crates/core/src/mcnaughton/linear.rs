//! Integer affine forms `s₀ + s₁x₁ + … + sₙxₙ`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    pub constant: BigInt,
    pub coefficients: Vec<BigInt>,
}

impl LinearForm {
    pub fn new(constant: BigInt, coefficients: Vec<BigInt>) -> Self {
        LinearForm {
            constant,
            coefficients,
        }
    }

    pub fn from_i64(constant: i64, coefficients: &[i64]) -> Self {
        LinearForm::new(
            BigInt::from(constant),
            coefficients.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    pub fn constant(c: i64, n: usize) -> Self {
        LinearForm::new(BigInt::from(c), alloc::vec![BigInt::zero(); n])
    }

    /// The coordinate function `xᵢ` (0-based).
    pub fn var(i: usize, n: usize) -> Self {
        let mut f = LinearForm::constant(0, n);
        f.coefficients[i] = BigInt::one();
        f
    }

    /// Scales `c₀ + Σ cᵢxᵢ` with rational coefficients by the positive lcm of
    /// the denominators, giving an integer form with the same sign everywhere.
    pub fn from_rational(constant: &Rational, coefficients: &[Rational]) -> Self {
        let mut den = constant.denom().clone();
        for c in coefficients {
            den = den.lcm(c.denom());
        }
        let scale = |q: &Rational| (q * Rational::from_integer(den.clone())).to_integer();
        LinearForm::new(scale(constant), coefficients.iter().map(scale).collect())
    }

    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, p: &[Rational]) -> Rational {
        let mut acc = Rational::from_integer(self.constant.clone());
        for (c, x) in self.coefficients.iter().zip(p) {
            if !c.is_zero() {
                acc += x * c;
            }
        }
        acc
    }

    pub fn is_constant(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.is_constant()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm::new(
            &self.constant + &other.constant,
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm::new(
            -&self.constant,
            self.coefficients.iter().map(|c| -c).collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> LinearForm {
        LinearForm::new(
            &self.constant * k,
            self.coefficients.iter().map(|c| c * k).collect(),
        )
    }

    pub fn plus_constant(&self, c: i64) -> LinearForm {
        LinearForm::new(&self.constant + c, self.coefficients.clone())
    }

    /// `1 − h`.
    pub fn one_minus(&self) -> LinearForm {
        self.neg().plus_constant(1)
    }

    /// Divides out the gcd of all entries, keeping the sign. Used to compare
    /// halfspaces up to positive scaling.
    pub fn primitive(&self) -> LinearForm {
        let mut g = self.constant.abs();
        for c in &self.coefficients {
            g = g.gcd(c);
        }
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LinearForm::new(
            &self.constant / &g,
            self.coefficients.iter().map(|c| c / &g).collect(),
        )
    }

    /// Minimum and maximum over the unit box.
    pub fn range_over_box(&self) -> (BigInt, BigInt) {
        let mut lo = self.constant.clone();
        let mut hi = self.constant.clone();
        for c in &self.coefficients {
            if c.is_negative() {
                lo += c;
            } else {
                hi += c;
            }
        }
        (lo, hi)
    }

    pub fn coefficient_rationals(&self) -> Vec<Rational> {
        self.coefficients
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }
}

impl fmt::Display for LinearForm {
    /// `2*x1 - x2 + 1`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term =
            |f: &mut fmt::Formatter<'_>, c: &BigInt, var: Option<usize>| -> fmt::Result {
                if c.is_zero() {
                    return Ok(());
                }
                let sign = if c.is_negative() { "-" } else { "+" };
                if first {
                    if c.is_negative() {
                        f.write_str("-")?;
                    }
                } else {
                    write!(f, " {sign} ")?;
                }
                first = false;
                let mag = c.abs();
                match var {
                    Some(i) if mag.is_one() => write!(f, "x{}", i + 1),
                    Some(i) => write!(f, "{mag}*x{}", i + 1),
                    None => write!(f, "{mag}"),
                }
            };
        for (i, c) in self.coefficients.iter().enumerate() {
            term(f, c, Some(i))?;
        }
        term(f, &self.constant, None)?;
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
