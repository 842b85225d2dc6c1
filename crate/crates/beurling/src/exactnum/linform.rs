//! Linear forms over the labeled constants: `offset + sum c_p*ln(p) +
//! sum c_(a,b)*atan(a/b) + c_pi*pi` with rational coefficients.
//!
//! These are the exponents of `ExpForm` scalars. Keeping them symbolic makes
//! exponent-space comparison exact on the rational part and well conditioned
//! on the transcendental part.

use super::consts::{const_interval, ConstKey};
use super::dyadic::Interval;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Trial-division factorization of a `u64`. Returns prime-exponent pairs.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            let mut e = 0u32;
            while n.is_multiple_of(f) {
                n /= f;
                e += 1;
            }
            out.push((f, e));
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factor a positive big integer by trial division up to `limit`; `None` if a
/// cofactor larger than `limit^2` remains unfactored.
pub fn factor_bigint(n: &BigInt, limit: u64) -> Option<BTreeMap<u64, u32>> {
    debug_assert!(n.is_positive());
    let mut n = n.clone();
    let mut out = BTreeMap::new();
    let mut f = 2u64;
    while n > BigInt::one() {
        if f > limit {
            return None;
        }
        let fb = BigInt::from(f);
        if (&fb * &fb) > n {
            // remaining cofactor is prime
            let p = u64::try_from(&n).ok()?;
            *out.entry(p).or_insert(0) += 1;
            return Some(out);
        }
        while (&n % &fb).is_zero() {
            n /= &fb;
            *out.entry(f).or_insert(0) += 1;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    Some(out)
}

/// Factor a positive rational into signed prime exponents.
pub fn factor_rational(r: &BigRational, limit: u64) -> Option<BTreeMap<u64, i64>> {
    debug_assert!(r.is_positive());
    let num = factor_bigint(r.numer(), limit)?;
    let den = factor_bigint(r.denom(), limit)?;
    let mut out: BTreeMap<u64, i64> = num.into_iter().map(|(p, e)| (p, e as i64)).collect();
    for (p, e) in den {
        *out.entry(p).or_insert(0) -= e as i64;
    }
    out.retain(|_, e| *e != 0);
    Some(out)
}

/// `offset + sum logs[p]*ln(p) + sum atans[(a,b)]*atan(a/b) + pi_coeff*pi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinForm {
    pub offset: BigRational,
    pub logs: BTreeMap<u64, BigRational>,
    pub atans: BTreeMap<(u64, u64), BigRational>,
    pub pi_coeff: BigRational,
}

impl LinForm {
    pub fn zero() -> LinForm {
        LinForm {
            offset: BigRational::zero(),
            logs: BTreeMap::new(),
            atans: BTreeMap::new(),
            pi_coeff: BigRational::zero(),
        }
    }

    pub fn from_offset(offset: BigRational) -> LinForm {
        LinForm {
            offset,
            ..LinForm::zero()
        }
    }

    pub fn pi_times(c: BigRational) -> LinForm {
        LinForm {
            pi_coeff: c,
            ..LinForm::zero()
        }
    }

    /// `c * ln(n)` for an integer `n >= 1`, decomposed over primes.
    pub fn log_int(n: u64, c: &BigRational) -> LinForm {
        let mut lf = LinForm::zero();
        if n <= 1 || c.is_zero() {
            return lf;
        }
        for (p, e) in factor_u64(n) {
            lf.logs.insert(p, c * BigRational::from_integer(BigInt::from(e)));
        }
        lf
    }

    /// `c * ln(r)` for a positive rational, if its parts factor within `limit`.
    pub fn log_rational(r: &BigRational, c: &BigRational, limit: u64) -> Option<LinForm> {
        let mut lf = LinForm::zero();
        if c.is_zero() || r.is_one() {
            return Some(lf);
        }
        for (p, e) in factor_rational(r, limit)? {
            lf.logs
                .insert(p, c * BigRational::from_integer(BigInt::from(e)));
        }
        Some(lf)
    }

    /// `c * atan(a/b)` for positive integers, normalized so stored keys have
    /// `1 <= a < b` and `gcd(a, b) = 1`. `atan(1) = pi/4` and arguments above
    /// one fold through `atan(t) = pi/2 - atan(1/t)`.
    pub fn atan_term(a: u64, b: u64, c: &BigRational) -> LinForm {
        assert!(b > 0, "atan denominator must be positive");
        let mut lf = LinForm::zero();
        if a == 0 || c.is_zero() {
            return lf;
        }
        let g = a.gcd(&b);
        let (a, b) = (a / g, b / g);
        if a == b {
            lf.pi_coeff = c / BigRational::from_integer(BigInt::from(4));
        } else if a > b {
            lf.pi_coeff = c / BigRational::from_integer(BigInt::from(2));
            lf.atans.insert((b, a), -c);
        } else {
            lf.atans.insert((a, b), c.clone());
        }
        lf
    }

    pub fn is_zero(&self) -> bool {
        self.offset.is_zero()
            && self.logs.is_empty()
            && self.atans.is_empty()
            && self.pi_coeff.is_zero()
    }

    /// True when the form is a pure rational combination of logs (no pi, no
    /// atan, zero offset) with the given predicate on coefficients.
    pub fn is_pure_logs(&self) -> bool {
        self.offset.is_zero() && self.atans.is_empty() && self.pi_coeff.is_zero()
    }

    fn prune(&mut self) {
        self.logs.retain(|_, c| !c.is_zero());
        self.atans.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, rhs: &LinForm) -> LinForm {
        let mut out = self.clone();
        out.offset += &rhs.offset;
        for (p, c) in &rhs.logs {
            let entry = out.logs.entry(*p).or_insert_with(BigRational::zero);
            *entry += c;
        }
        for (k, c) in &rhs.atans {
            let entry = out.atans.entry(*k).or_insert_with(BigRational::zero);
            *entry += c;
        }
        out.pi_coeff += &rhs.pi_coeff;
        out.prune();
        out
    }

    pub fn sub(&self, rhs: &LinForm) -> LinForm {
        self.add(&rhs.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> LinForm {
        if c.is_zero() {
            return LinForm::zero();
        }
        let mut out = self.clone();
        out.offset *= c;
        for v in out.logs.values_mut() {
            *v *= c;
        }
        for v in out.atans.values_mut() {
            *v *= c;
        }
        out.pi_coeff *= c;
        out
    }

    /// Certified enclosure of the value at precision `p`.
    pub fn eval(&self, p: u32) -> Interval {
        let w = p + 16;
        let mut acc = Interval::from_rational(&self.offset, w);
        for (prime, c) in &self.logs {
            let iv = const_interval(ConstKey::Ln(*prime), w).scale_rational(c, w);
            acc = acc.add(&iv, w);
        }
        for ((a, b), c) in &self.atans {
            let iv = const_interval(ConstKey::Atan(*a, *b), w).scale_rational(c, w);
            acc = acc.add(&iv, w);
        }
        if !self.pi_coeff.is_zero() {
            let iv = const_interval(ConstKey::Pi, w).scale_rational(&self.pi_coeff, w);
            acc = acc.add(&iv, w);
        }
        acc
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.offset.is_zero() {
            parts.push(format!("{}", self.offset));
        }
        for (p, c) in &self.logs {
            parts.push(format!("{}*ln({})", c, p));
        }
        for ((a, b), c) in &self.atans {
            parts.push(format!("{}*atan({}/{})", c, a, b));
        }
        if !self.pi_coeff.is_zero() {
            parts.push(format!("{}*pi", self.pi_coeff));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}
