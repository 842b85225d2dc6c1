//! Exact arithmetic in `Z[sqrt(d)]`: elements `x + y*sqrt(d)` with integer
//! coordinates and squarefree radicand.

use super::consts::{const_interval, ConstKey};
use super::dyadic::Interval;
use super::ExactError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Check that `d` is squarefree (and at least 2).
pub fn is_squarefree(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            n /= f;
            if n.is_multiple_of(f) {
                return false;
            }
        }
        f += 1;
    }
    true
}

/// Strip square factors: returns `(s, m)` with `n = s^2 * m`, `m` squarefree.
pub fn extract_square(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut m = n;
    let mut f = 2u64;
    while f * f <= m {
        while m.is_multiple_of(f * f) {
            m /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, m)
}

/// `x + y*sqrt(d)` with integer coordinates; `d` squarefree, `d >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub d: u64,
    pub x: BigInt,
    pub y: BigInt,
}

impl QuadSurd {
    pub fn new(d: u64, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Result<QuadSurd, ExactError> {
        if !is_squarefree(d) {
            return Err(ExactError::NotSquarefree(d));
        }
        Ok(QuadSurd {
            d,
            x: x.into(),
            y: y.into(),
        })
    }

    pub fn one(d: u64) -> QuadSurd {
        QuadSurd {
            d,
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    pub fn conj(&self) -> QuadSurd {
        QuadSurd {
            d: self.d,
            x: self.x.clone(),
            y: -&self.y,
        }
    }

    /// Exact sign of `x + y*sqrt(d)`.
    pub fn signum(&self) -> i32 {
        sign_of_surd(&self.x, &self.y, self.d)
    }

    /// Exact comparison with another surd over the same radicand.
    pub fn cmp_surd(&self, rhs: &QuadSurd) -> Result<Ordering, ExactError> {
        if self.d != rhs.d {
            return Err(ExactError::RadicandMismatch(self.d, rhs.d));
        }
        let diff = QuadSurd {
            d: self.d,
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        };
        Ok(match diff.signum() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn pow(&self, k: u64) -> QuadSurd {
        let mut acc = QuadSurd::one(self.d);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = quad_mul(&acc, &base).expect("same radicand");
            }
            base = quad_mul(&base, &base).expect("same radicand");
            k >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> QuadSurd {
        QuadSurd {
            d: self.d,
            x: &self.x * c,
            y: &self.y * c,
        }
    }

    pub fn add(&self, rhs: &QuadSurd) -> Result<QuadSurd, ExactError> {
        if self.d != rhs.d {
            return Err(ExactError::RadicandMismatch(self.d, rhs.d));
        }
        Ok(QuadSurd {
            d: self.d,
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        })
    }

    pub fn sub(&self, rhs: &QuadSurd) -> Result<QuadSurd, ExactError> {
        if self.d != rhs.d {
            return Err(ExactError::RadicandMismatch(self.d, rhs.d));
        }
        Ok(QuadSurd {
            d: self.d,
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        })
    }

    /// Certified enclosure at precision `p`.
    pub fn eval(&self, p: u32) -> Interval {
        let sq = const_interval(ConstKey::Sqrt(self.d), p);
        Interval::from_bigint(&self.x).add(&sq.mul(&Interval::from_bigint(&self.y), p), p)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            write!(f, "{}", self.x)
        } else if self.x.is_zero() {
            write!(f, "{}*sqrt({})", self.y, self.d)
        } else if self.y.is_negative() {
            write!(f, "{}{}*sqrt({})", self.x, self.y, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.x, self.y, self.d)
        }
    }
}

/// Exact sign of `x + y*sqrt(d)` for integer coordinates.
pub fn sign_of_surd(x: &BigInt, y: &BigInt, d: u64) -> i32 {
    match (x.sign(), y.sign()) {
        (num_bigint::Sign::NoSign, num_bigint::Sign::NoSign) => 0,
        (num_bigint::Sign::Plus, num_bigint::Sign::Plus) => 1,
        (num_bigint::Sign::Minus, num_bigint::Sign::Minus) => -1,
        (num_bigint::Sign::Plus, num_bigint::Sign::NoSign) => 1,
        (num_bigint::Sign::Minus, num_bigint::Sign::NoSign) => -1,
        (num_bigint::Sign::NoSign, num_bigint::Sign::Plus) => 1,
        (num_bigint::Sign::NoSign, num_bigint::Sign::Minus) => -1,
        (num_bigint::Sign::Plus, num_bigint::Sign::Minus) => {
            // x > 0, y < 0: sign of x^2 - d y^2
            let lhs = x * x;
            let rhs = y * y * BigInt::from(d);
            match lhs.cmp(&rhs) {
                Ordering::Greater => 1,
                Ordering::Equal => 0,
                Ordering::Less => -1,
            }
        }
        (num_bigint::Sign::Minus, num_bigint::Sign::Plus) => {
            // x < 0, y > 0: sign of d y^2 - x^2
            let lhs = y * y * BigInt::from(d);
            let rhs = x * x;
            match lhs.cmp(&rhs) {
                Ordering::Greater => 1,
                Ordering::Equal => 0,
                Ordering::Less => -1,
            }
        }
    }
}

/// Exact product in `Z[sqrt(d)]`; the radicands must match.
pub fn quad_mul(a: &QuadSurd, b: &QuadSurd) -> Result<QuadSurd, ExactError> {
    if a.d != b.d {
        return Err(ExactError::RadicandMismatch(a.d, b.d));
    }
    let d = BigInt::from(a.d);
    Ok(QuadSurd {
        d: a.d,
        x: &a.x * &b.x + &a.y * &b.y * &d,
        y: &a.x * &b.y + &a.y * &b.x,
    })
}

/// The field norm `x^2 - d*y^2`, exact.
pub fn quad_norm(a: &QuadSurd) -> BigInt {
    &a.x * &a.x - &a.y * &a.y * BigInt::from(a.d)
}
