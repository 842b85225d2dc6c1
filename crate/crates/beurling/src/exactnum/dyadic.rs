//! Dyadic big-floats (`mantissa * 2^exp`) and outward-rounded intervals.
//!
//! Every endpoint operation rounds in an explicit direction, so an
//! [`Interval`] produced from interval inputs always encloses the exact
//! result. Nothing here ever rounds to nearest.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for an endpoint computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    /// Toward minus infinity.
    Down,
    /// Toward plus infinity.
    Up,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Down => Dir::Up,
            Dir::Up => Dir::Down,
        }
    }
}

/// An exact dyadic rational `mantissa * 2^exp`.
///
/// The representation is kept normalized: a zero value has `exp == 0`, and a
/// nonzero mantissa is odd. All arithmetic below is exact unless a precision
/// and direction are passed explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Dyadic {
        Dyadic {
            mantissa: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic {
            mantissa: BigInt::one(),
            exp: 0,
        }
    }

    pub fn new(mantissa: BigInt, exp: i64) -> Dyadic {
        let mut d = Dyadic { mantissa, exp };
        d.normalize();
        d
    }

    pub fn from_bigint(n: BigInt) -> Dyadic {
        Dyadic::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Bit length of the magnitude of the mantissa.
    pub fn mant_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    /// Exponent `e` such that `2^(e-1) <= |value| < 2^e` (for nonzero values).
    pub fn mag_exp(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.mantissa.bits() as i64
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mantissa * (BigInt::one() << self.exp as u64))
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Exact conversion when the rational has a power-of-two denominator.
    pub fn from_rational_exact(r: &BigRational) -> Option<Dyadic> {
        let den = r.denom();
        let bits = den.bits();
        if den >= &BigInt::zero() && (den & (den - BigInt::one())).is_zero() {
            Some(Dyadic::new(r.numer().clone(), -((bits - 1) as i64)))
        } else {
            None
        }
    }

    /// Round a rational to `p` significant bits in direction `dir`.
    pub fn from_rational(r: &BigRational, p: u32, dir: Dir) -> Dyadic {
        div_dir(r.numer(), r.denom(), p, dir)
    }

    /// Round to `p` significant bits in direction `dir`.
    pub fn round(&self, p: u32, dir: Dir) -> Dyadic {
        let bits = self.mantissa.bits();
        if bits <= p as u64 {
            return self.clone();
        }
        let k = (bits - p as u64) as i64;
        let m = shift_dir(&self.mantissa, k as u64, dir);
        Dyadic::new(m, self.exp + k)
    }

    /// Exact negation.
    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exp: self.exp,
        }
    }

    /// Exact addition. Mantissa growth is bounded by the exponent gap, so
    /// callers round afterwards when chaining.
    pub fn add_exact(&self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mantissa << (self.exp - e) as u64;
        let b = &rhs.mantissa << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub_exact(&self, rhs: &Dyadic) -> Dyadic {
        self.add_exact(&rhs.neg())
    }

    pub fn mul_exact(&self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exp + rhs.exp)
    }

    pub fn add_rnd(&self, rhs: &Dyadic, p: u32, dir: Dir) -> Dyadic {
        self.add_exact(rhs).round(p, dir)
    }

    pub fn mul_rnd(&self, rhs: &Dyadic, p: u32, dir: Dir) -> Dyadic {
        self.mul_exact(rhs).round(p, dir)
    }

    /// Directed division to `p` significant bits.
    pub fn div_rnd(&self, rhs: &Dyadic, p: u32, dir: Dir) -> Dyadic {
        assert!(!rhs.is_zero(), "division by zero dyadic");
        let mut q = div_dir(&self.mantissa, &rhs.mantissa, p, dir);
        q.exp += self.exp - rhs.exp;
        q
    }

    /// Exact multiplication by `2^k`.
    pub fn shl(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exp: self.exp + k,
        }
    }

    pub fn cmp_dyadic(&self, rhs: &Dyadic) -> Ordering {
        match (self.signum(), rhs.signum()) {
            (a, b) if a < b => return Ordering::Less,
            (a, b) if a > b => return Ordering::Greater,
            (0, 0) => return Ordering::Equal,
            _ => {}
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mantissa << (self.exp - e) as u64;
        let b = &rhs.mantissa << (rhs.exp - e) as u64;
        a.cmp(&b)
    }

    pub fn min_d(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp_dyadic(b) == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn max_d(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp_dyadic(b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exp)
    }
}

/// Shift right by `k` bits rounding in `dir`.
fn shift_dir(m: &BigInt, k: u64, dir: Dir) -> BigInt {
    match dir {
        // BigInt shr is a floor shift (rounds toward -inf), which is Down.
        Dir::Down => m >> k,
        Dir::Up => -((-m) >> k),
    }
}

/// Directed `num/den` to `p` significant bits as a dyadic.
fn div_dir(num: &BigInt, den: &BigInt, p: u32, dir: Dir) -> Dyadic {
    assert!(!den.is_zero());
    if num.is_zero() {
        return Dyadic::zero();
    }
    // Scale so the integer quotient carries at least p+2 significant bits.
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let s = (p as i64 + 2 - (nb - db)).max(0) as u64;
    let scaled = num << s;
    let (mut q, r) = num_integer::Integer::div_mod_floor(&scaled, den);
    // div_mod_floor gives q <= true value; bump for Up when inexact.
    if dir == Dir::Up && !r.is_zero() {
        q += 1;
    }
    Dyadic::new(q, -(s as i64)).round(p, dir)
}

/// A closed enclosure `[lo, hi]` of a real number, endpoints dyadic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Interval {
        debug_assert!(
            lo.cmp_dyadic(&hi) != Ordering::Greater,
            "interval endpoints out of order: {lo} > {hi}"
        );
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Interval {
        Interval {
            lo: d.clone(),
            hi: d,
        }
    }

    pub fn zero() -> Interval {
        Interval::point(Dyadic::zero())
    }

    pub fn one() -> Interval {
        Interval::point(Dyadic::one())
    }

    pub fn from_bigint(n: &BigInt) -> Interval {
        Interval::point(Dyadic::from_bigint(n.clone()))
    }

    pub fn from_i64(n: i64) -> Interval {
        Interval::point(Dyadic::from_i64(n))
    }

    /// Outward-rounded enclosure of a rational.
    pub fn from_rational(r: &BigRational, p: u32) -> Interval {
        if let Some(d) = Dyadic::from_rational_exact(r) {
            return Interval::point(d);
        }
        Interval {
            lo: Dyadic::from_rational(r, p, Dir::Down),
            hi: Dyadic::from_rational(r, p, Dir::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn lo_rational(&self) -> BigRational {
        self.lo.to_rational()
    }

    pub fn hi_rational(&self) -> BigRational {
        self.hi.to_rational()
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified disjointness test: `Some(Less)` means every point of `self`
    /// is below every point of `rhs`.
    pub fn cmp_disjoint(&self, rhs: &Interval) -> Option<Ordering> {
        if self.hi.cmp_dyadic(&rhs.lo) == Ordering::Less {
            Some(Ordering::Less)
        } else if self.lo.cmp_dyadic(&rhs.hi) == Ordering::Greater {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval {
                lo: Dyadic::zero(),
                hi: Dyadic::max_d(&self.lo.neg(), &self.hi),
            }
        }
    }

    pub fn add(&self, rhs: &Interval, p: u32) -> Interval {
        Interval {
            lo: self.lo.add_rnd(&rhs.lo, p, Dir::Down),
            hi: self.hi.add_rnd(&rhs.hi, p, Dir::Up),
        }
    }

    pub fn sub(&self, rhs: &Interval, p: u32) -> Interval {
        self.add(&rhs.neg(), p)
    }

    pub fn mul(&self, rhs: &Interval, p: u32) -> Interval {
        // min/max over the four endpoint products, each rounded outward.
        let cands = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (a, b) in cands {
            let down = a.mul_rnd(b, p, Dir::Down);
            let up = a.mul_rnd(b, p, Dir::Up);
            lo = Some(match lo {
                None => down,
                Some(c) => Dyadic::min_d(&c, &down),
            });
            hi = Some(match hi {
                None => up,
                Some(c) => Dyadic::max_d(&c, &up),
            });
        }
        Interval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self, p: u32) -> Interval {
        assert!(!self.contains_zero(), "reciprocal of interval containing 0");
        let one = Dyadic::one();
        Interval {
            lo: one.div_rnd(&self.hi, p, Dir::Down),
            hi: one.div_rnd(&self.lo, p, Dir::Up),
        }
    }

    pub fn div(&self, rhs: &Interval, p: u32) -> Interval {
        self.mul(&rhs.recip(p), p)
    }

    /// Integer power for intervals, exact sign handling via repeated interval
    /// squaring and multiplication.
    pub fn powi(&self, k: u32, p: u32) -> Interval {
        if k == 0 {
            return Interval::one();
        }
        let mut acc = Interval::one();
        let mut base = self.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = acc.mul(&base, p);
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base, p);
        }
        acc
    }

    /// Scale by an exact rational in outward rounding.
    pub fn scale_rational(&self, c: &BigRational, p: u32) -> Interval {
        self.mul(&Interval::from_rational(c, p), p)
    }

    /// Hull of two intervals.
    pub fn hull(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: Dyadic::min_d(&self.lo, &rhs.lo),
            hi: Dyadic::max_d(&self.hi, &rhs.hi),
        }
    }

    /// Widen both endpoints outward by `2^mag_exp - p + pad` ulps worth of
    /// slack; used by series evaluations to absorb accumulated error counts.
    pub fn widen_abs(&self, slack: &Dyadic) -> Interval {
        debug_assert!(!slack.is_negative());
        Interval {
            lo: self.lo.sub_exact(slack),
            hi: self.hi.add_exact(slack),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bigint_shr_is_floor() {
        // The Down rounding path relies on this.
        let m = BigInt::from(-5);
        assert_eq!(m >> 1u64, BigInt::from(-3));
    }

    #[test]
    fn round_directions_bracket() {
        let x = Dyadic::new(BigInt::from(0b1011011i64), 0); // 91
        let down = x.round(4, Dir::Down);
        let up = x.round(4, Dir::Up);
        assert!(down.to_rational() <= x.to_rational());
        assert!(up.to_rational() >= x.to_rational());
        assert_eq!(down.to_rational(), BigRational::from_i64(88).unwrap());
        assert_eq!(up.to_rational(), BigRational::from_i64(96).unwrap());
        // Negative value mirrors.
        let y = x.neg();
        assert_eq!(y.round(4, Dir::Down).to_rational(), rat(-96, 1));
        assert_eq!(y.round(4, Dir::Up).to_rational(), rat(-88, 1));
    }

    #[test]
    fn from_rational_encloses() {
        let r = rat(1, 3);
        for p in [8u32, 16, 64, 128] {
            let iv = Interval::from_rational(&r, p);
            assert!(iv.lo_rational() <= r && r <= iv.hi_rational());
            assert!(!iv.is_point());
        }
        // Width halves (at least) when precision doubles.
        let w8 = Interval::from_rational(&r, 8).width().to_rational();
        let w16 = Interval::from_rational(&r, 16).width().to_rational();
        assert!(w16 <= w8 / BigRational::from_i64(2).unwrap());
    }

    #[test]
    fn dyadic_rational_roundtrip_exact() {
        let r = rat(-7, 16);
        let d = Dyadic::from_rational_exact(&r).unwrap();
        assert_eq!(d.to_rational(), r);
        assert!(Dyadic::from_rational_exact(&rat(1, 3)).is_none());
    }

    #[test]
    fn interval_mul_signs() {
        let a = Interval::new(Dyadic::from_i64(-3), Dyadic::from_i64(2));
        let b = Interval::new(Dyadic::from_i64(-5), Dyadic::from_i64(4));
        let c = a.mul(&b, 64);
        // extremes: (-3)*4 = -12, (-3)*(-5) = 15
        assert_eq!(c.lo_rational(), rat(-12, 1));
        assert_eq!(c.hi_rational(), rat(15, 1));
    }

    #[test]
    fn interval_div_encloses() {
        let a = Interval::from_rational(&rat(1, 1), 64);
        let b = Interval::from_rational(&rat(3, 1), 64);
        let c = a.div(&b, 64);
        assert!(c.lo_rational() <= rat(1, 3) && rat(1, 3) <= c.hi_rational());
    }

    #[test]
    fn powi_matches_exact() {
        let a = Interval::from_rational(&rat(3, 2), 96);
        let c = a.powi(5, 96);
        let exact = rat(243, 32);
        assert!(c.lo_rational() <= exact && exact <= c.hi_rational());
    }

    #[test]
    fn div_dir_exact_cases() {
        // 1/1 at any precision is exact
        let q = div_dir(&BigInt::from(1), &BigInt::from(1), 53, Dir::Up);
        assert_eq!(q.to_rational(), rat(1, 1));
        let q = div_dir(&BigInt::from(10), &BigInt::from(5), 53, Dir::Down);
        assert_eq!(q.to_rational(), rat(2, 1));
    }
}
