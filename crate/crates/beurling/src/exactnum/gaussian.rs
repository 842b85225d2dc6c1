//! Exact Gaussian integer arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// A Gaussian integer `re + im*i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> GaussianInt {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn one() -> GaussianInt {
        GaussianInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    pub fn conj(&self) -> GaussianInt {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn mul(&self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    /// `re^2 + im^2`, exact.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn pow(&self, k: u64) -> GaussianInt {
        let mut acc = GaussianInt::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im >= BigInt::zero() {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_conj() {
        let a = GaussianInt::new(2, 1);
        let b = GaussianInt::new(3, 2);
        let p = a.mul(&b);
        assert_eq!(p, GaussianInt::new(4, 7)); // (2+i)(3+2i) = 4+7i
        assert_eq!(a.conj(), GaussianInt::new(2, -1));
        // conjugation negates im and norm is multiplicative
        assert_eq!(p.norm(), a.norm() * b.norm());
        assert_eq!(a.norm(), BigInt::from(5));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = GaussianInt::new(2, 1);
        assert_eq!(a.pow(2), GaussianInt::new(3, 4)); // (2+i)^2 = 3+4i
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
    }
}
