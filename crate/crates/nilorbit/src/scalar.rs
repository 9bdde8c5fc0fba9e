//! Exact scalar fields.
//!
//! Every linear-algebra kernel in this crate is generic over [`Scalar`], an
//! exact field with a canonical embedding of the rationals. The two
//! implementations are [`Rational`] itself and number-field elements from
//! [`crate::number_field`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Zero};

use crate::error::Error;

/// Exact rational numbers, the base field of the whole crate.
pub type Rational = BigRational;

/// An exact field with a canonical image of the rationals.
///
/// Operations take owned values, mirroring `num`'s `Ratio`; generic code
/// clones where it must. No floating point hides behind this trait.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + num::Zero
    + num::One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Embed a rational number.
    fn from_q(q: &Rational) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_q(&Rational::from_integer(BigInt::from(n)))
    }

    /// Exact division. Panics on a zero divisor; callers check first.
    fn div_exact(&self, other: &Self) -> Self {
        self.clone() * other.inv().expect("division by zero scalar")
    }
}

impl Scalar for Rational {
    fn from_q(q: &Rational) -> Self {
        q.clone()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Parse a rational written as `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|_| Error::MalformedRational(s.to_string()))
}

/// Parse a comma-separated vector of rationals.
pub fn parse_rational_vec(s: &str) -> Result<Vec<Rational>, Error> {
    s.split(',').map(parse_rational).collect()
}

/// Shorthand for a rational from an integer pair.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn qi(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), qi(-7));
        assert_eq!(parse_rational(" 1/2 ").unwrap(), q(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn displays_without_unit_denominator() {
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(q(-1, 2).to_string(), "-1/2");
    }
}
