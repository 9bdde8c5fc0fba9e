//! Exact arithmetic in the p-th cyclotomic field on the basis
//! `zeta, zeta^2, ..., zeta^{p-1}`, with rationals embedded through the
//! relation `1 + zeta + ... + zeta^{p-1} = 0`. Everything is rational
//! vector arithmetic; no tolerance appears anywhere.

use std::fmt;

use num::{BigInt, One, Zero};

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct CyclotomicNumber {
    p: u64,
    /// Coefficient of `zeta^(j+1)`.
    coords: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(p: u64) -> Self {
        CyclotomicNumber {
            p,
            coords: vec![Rational::zero(); (p - 1) as usize],
        }
    }

    pub fn from_rational(p: u64, q: &Rational) -> Self {
        // q = -q (zeta + ... + zeta^{p-1}).
        CyclotomicNumber {
            p,
            coords: vec![-q.clone(); (p - 1) as usize],
        }
    }

    pub fn one(p: u64) -> Self {
        Self::from_rational(p, &Rational::one())
    }

    /// Reduce a vector of multiplicities of `zeta^k`, `k = 0..p-1`.
    pub fn from_power_counts(p: u64, counts: &[i128]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let coords = (1..p as usize)
            .map(|k| Rational::from_integer(BigInt::from(counts[k] - counts[0])))
            .collect();
        CyclotomicNumber { p, coords }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `Some(q)` iff the value is rational, which happens exactly when all
    /// basis coordinates coincide.
    pub fn as_rational(&self) -> Option<Rational> {
        let first = &self.coords[0];
        if self.coords.iter().all(|c| c == first) {
            Some(-first.clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        CyclotomicNumber {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        CyclotomicNumber {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            p: self.p,
            coords: self.coords.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        CyclotomicNumber {
            p: self.p,
            coords: self.coords.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    /// Lift to multiplicities of `zeta^k` with the `k = 0` slot zero.
    fn lift(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.p as usize];
        for (j, c) in self.coords.iter().enumerate() {
            v[j + 1] = c.clone();
        }
        v
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        let a = self.lift();
        let b = other.lift();
        let mut prod = vec![Rational::zero(); p];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = (i + j) % p;
                prod[k] += x.clone() * y.clone();
            }
        }
        let coords = (1..p)
            .map(|k| prod[k].clone() - prod[0].clone())
            .collect();
        CyclotomicNumber { p: self.p, coords }
    }

    /// Complex conjugation: `zeta^k -> zeta^{-k}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let a = self.lift();
        let mut out = vec![Rational::zero(); p];
        for (k, c) in a.into_iter().enumerate() {
            out[(p - k) % p] = c;
        }
        let coords = (1..p).map(|k| out[k].clone() - out[0].clone()).collect();
        CyclotomicNumber { p: self.p, coords }
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if j == 0 {
                write!(f, "{c}*z")?;
            } else {
                write!(f, "{c}*z^{}", j + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn zeta(p: u64, k: usize) -> CyclotomicNumber {
        let mut counts = vec![0i128; p as usize];
        counts[k % p as usize] += 1;
        CyclotomicNumber::from_power_counts(p, &counts)
    }

    #[test]
    fn geometric_sum_vanishes() {
        for p in [3u64, 5, 7] {
            let counts = vec![1i128; p as usize];
            assert!(CyclotomicNumber::from_power_counts(p, &counts).is_zero());
        }
    }

    #[test]
    fn rational_embedding() {
        let one = CyclotomicNumber::one(5);
        assert_eq!(one.as_rational(), Some(qi(1)));
        assert_eq!(one.mul(&one).as_rational(), Some(qi(1)));
        let half = CyclotomicNumber::from_rational(5, &q(1, 2));
        assert_eq!(half.add(&half).as_rational(), Some(qi(1)));
    }

    #[test]
    fn roots_of_unity_multiply_by_exponent_addition() {
        let p = 7;
        for a in 0..p as usize {
            for b in 0..p as usize {
                let lhs = zeta(p, a).mul(&zeta(p, b));
                let rhs = zeta(p, (a + b) % p as usize);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn conjugation_and_norm() {
        let p = 5;
        let z = zeta(p, 1);
        assert_eq!(z.conj(), zeta(p, 4));
        // zeta conj(zeta) = 1, and zeta itself is not rational.
        assert_eq!(z.mul(&z.conj()).as_rational(), Some(qi(1)));
        assert!(z.as_rational().is_none());
    }
}
