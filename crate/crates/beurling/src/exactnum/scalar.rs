//! Tagged exact positive reals closed under multiplication.
//!
//! Canonical forms:
//! * `Rational(q)` - positive rational.
//! * `Surd` - `x + y*sqrt(d)` with rational `x != 0`, `y != 0`, squarefree `d`.
//! * `PrimePow` - `prod p^(e_p)` with at least one non-integer exponent.
//!   Pure square roots (`x == 0` surds) normalize here.
//! * `ExpForm(L)` - `e^L` where the linear form `L` carries a transcendental
//!   part (pi/atan coefficients or a nonzero rational offset). Forms made of
//!   logs alone normalize to `PrimePow`/`Rational`.
//! * `Product` - a rational coefficient times pairwise irreducible factors,
//!   for mixes the other forms cannot absorb (e.g. surds over distinct
//!   radicands). Multiplication always folds as far as the fold table allows.
//!
//! Structural equality of canonical forms implies numerical equality; the
//! converse is attempted by `compare`'s exact routes and otherwise settled by
//! interval refinement.

use super::consts::{const_interval, ConstKey};
use super::dyadic::Interval;
use super::functions;
use super::linform::{factor_rational, LinForm};
use super::quadsurd::{self, QuadSurd};
use super::ExactError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Trial-division budget for absorbing rationals into factored forms.
const FACTOR_LIMIT: u64 = 1 << 20;

/// Outcome of a certified three-way comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering3 {
    Less,
    Equal,
    Greater,
    /// The precision budget ran out with the enclosures still overlapping.
    Unresolved { bits_reached: u32 },
}

impl Ordering3 {
    pub fn from_ordering(o: Ordering) -> Ordering3 {
        match o {
            Ordering::Less => Ordering3::Less,
            Ordering::Equal => Ordering3::Equal,
            Ordering::Greater => Ordering3::Greater,
        }
    }

    pub fn reverse(self) -> Ordering3 {
        match self {
            Ordering3::Less => Ordering3::Greater,
            Ordering3::Greater => Ordering3::Less,
            other => other,
        }
    }

    pub fn is_resolved(self) -> bool {
        !matches!(self, Ordering3::Unresolved { .. })
    }
}

/// Precision policy: evaluation starts at `initial_bits` of working precision
/// and doubles up to `max_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionCfg {
    pub initial_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionCfg {
    fn default() -> Self {
        PrecisionCfg {
            initial_bits: 64,
            max_bits: 4096,
        }
    }
}

impl PrecisionCfg {
    pub fn with_max_bits(max_bits: u32) -> PrecisionCfg {
        PrecisionCfg {
            initial_bits: 64,
            max_bits: max_bits.max(64),
        }
    }

    pub fn steps(&self) -> impl Iterator<Item = u32> {
        let first = self.initial_bits;
        let max = self.max_bits;
        std::iter::successors(Some(first), move |p| {
            if *p >= max {
                None
            } else {
                Some((p * 2).min(max))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurdForm {
    pub d: u64,
    pub x: BigRational,
    pub y: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePowForm {
    pub exps: BTreeMap<u64, BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductForm {
    pub coeff: BigRational,
    pub factors: Vec<RealScalar>,
}

/// An exact positive real in canonical tagged form.
///
/// The derived `Ord` is structural (used for canonical sorting of product
/// factors and map keys), not numerical; numerical order goes through
/// [`compare`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealScalar {
    Rational(BigRational),
    Surd(SurdForm),
    PrimePow(PrimePowForm),
    ExpForm(LinForm),
    Product(ProductForm),
}

impl RealScalar {
    pub fn one() -> RealScalar {
        RealScalar::Rational(BigRational::one())
    }

    pub fn from_u64(n: u64) -> RealScalar {
        RealScalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: &BigInt) -> Result<RealScalar, ExactError> {
        RealScalar::from_rational(BigRational::from_integer(n.clone()))
    }

    pub fn from_rational(q: BigRational) -> Result<RealScalar, ExactError> {
        if !q.is_positive() {
            return Err(ExactError::NonPositive(q.to_string()));
        }
        Ok(RealScalar::Rational(q))
    }

    /// `x + y*sqrt(d)`; must be positive. Degenerate coordinates normalize to
    /// `Rational`/`PrimePow`.
    pub fn surd(d: u64, x: BigRational, y: BigRational) -> Result<RealScalar, ExactError> {
        if !quadsurd::is_squarefree(d) {
            return Err(ExactError::NotSquarefree(d));
        }
        if y.is_zero() {
            return RealScalar::from_rational(x);
        }
        let sign = surd_sign_rational(&x, &y, d);
        if sign <= 0 {
            return Err(ExactError::NonPositive(format!("{x}+{y}*sqrt({d})")));
        }
        if x.is_zero() {
            // y*sqrt(d): fold into a factored power when possible
            let mut exps: BTreeMap<u64, BigRational> = BTreeMap::new();
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            for (p, e) in super::linform::factor_u64(d) {
                exps.insert(p, &half * BigRational::from_integer(BigInt::from(e)));
            }
            let root = normalize_primepow(PrimePowForm { exps });
            return Ok(mul(&RealScalar::Rational(y), &root));
        }
        Ok(RealScalar::Surd(SurdForm { d, x, y }))
    }

    pub fn from_quadsurd(q: &QuadSurd) -> Result<RealScalar, ExactError> {
        RealScalar::surd(
            q.d,
            BigRational::from_integer(q.x.clone()),
            BigRational::from_integer(q.y.clone()),
        )
    }

    /// `base^exp` for positive rational base; the base must factor within the
    /// trial-division budget.
    pub fn rat_pow(base: BigRational, exp: BigRational) -> Result<RealScalar, ExactError> {
        if !base.is_positive() {
            return Err(ExactError::NonPositive(base.to_string()));
        }
        if exp.is_zero() || base.is_one() {
            return Ok(RealScalar::one());
        }
        let factors = factor_rational(&base, FACTOR_LIMIT)
            .ok_or_else(|| ExactError::UnfactorableBase(base.to_string()))?;
        let exps: BTreeMap<u64, BigRational> = factors
            .into_iter()
            .map(|(p, e)| (p, &exp * BigRational::from_integer(BigInt::from(e))))
            .collect();
        Ok(normalize_primepow(PrimePowForm { exps }))
    }

    /// `e^L` with canonicalization of log-only forms back to rationals.
    pub fn exp_form(l: LinForm) -> RealScalar {
        if l.is_zero() {
            return RealScalar::one();
        }
        if l.is_pure_logs() {
            let exps: BTreeMap<u64, BigRational> =
                l.logs.iter().map(|(p, c)| (*p, c.clone())).collect();
            return normalize_primepow(PrimePowForm { exps });
        }
        RealScalar::ExpForm(l)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RealScalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, RealScalar::Rational(q) if q.is_one())
    }

    pub fn mul(&self, rhs: &RealScalar) -> RealScalar {
        mul(self, rhs)
    }

    pub fn pow(&self, k: u64) -> RealScalar {
        match self {
            RealScalar::Rational(q) => {
                let k32 = i32::try_from(k).expect("exponent too large");
                RealScalar::Rational(q.pow(k32))
            }
            RealScalar::PrimePow(pp) => {
                let kq = BigRational::from_integer(BigInt::from(k));
                normalize_primepow(PrimePowForm {
                    exps: pp.exps.iter().map(|(p, e)| (*p, e * &kq)).collect(),
                })
            }
            RealScalar::ExpForm(l) => {
                RealScalar::exp_form(l.scale(&BigRational::from_integer(BigInt::from(k))))
            }
            _ => {
                let mut acc = RealScalar::one();
                let mut base = self.clone();
                let mut k = k;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = mul(&acc, &base);
                    }
                    k >>= 1;
                    if k == 0 {
                        break;
                    }
                    base = mul(&base, &base);
                }
                acc
            }
        }
    }

    /// Certified enclosure at working precision `p`.
    pub fn eval(&self, p: u32) -> Interval {
        match self {
            RealScalar::Rational(q) => Interval::from_rational(q, p),
            RealScalar::Surd(s) => {
                let sq = const_interval(ConstKey::Sqrt(s.d), p + 8);
                Interval::from_rational(&s.x, p + 8)
                    .add(&sq.scale_rational(&s.y, p + 8), p)
            }
            RealScalar::PrimePow(pp) => eval_primepow(pp, p),
            RealScalar::ExpForm(l) => {
                let exponent = l.eval(p + 48);
                functions::exp_interval(&exponent, p)
            }
            RealScalar::Product(prod) => {
                let mut acc = Interval::from_rational(&prod.coeff, p + 8);
                for f in &prod.factors {
                    acc = acc.mul(&f.eval(p + 8), p + 8);
                }
                acc
            }
        }
    }

    /// Natural log of the value as a linear form, when expressible (rational
    /// and factored-power values; `ExpForm` is its own log).
    pub fn log_linform(&self) -> Option<LinForm> {
        match self {
            RealScalar::Rational(q) => {
                LinForm::log_rational(q, &BigRational::one(), FACTOR_LIMIT)
            }
            RealScalar::PrimePow(pp) => {
                let mut lf = LinForm::zero();
                for (p, e) in &pp.exps {
                    lf = lf.add(&LinForm::log_int(*p, e));
                }
                Some(lf)
            }
            RealScalar::ExpForm(l) => Some(l.clone()),
            _ => None,
        }
    }
}

fn surd_sign_rational(x: &BigRational, y: &BigRational, d: u64) -> i32 {
    // clear denominators; sign is unchanged
    let q = x.denom().lcm(y.denom());
    let xi = (x * BigRational::from_integer(q.clone())).to_integer();
    let yi = (y * BigRational::from_integer(q)).to_integer();
    quadsurd::sign_of_surd(&xi, &yi, d)
}

fn normalize_primepow(mut pp: PrimePowForm) -> RealScalar {
    pp.exps.retain(|_, e| !e.is_zero());
    if pp.exps.is_empty() {
        return RealScalar::one();
    }
    if pp.exps.values().all(|e| e.is_integer()) {
        let mut q = BigRational::one();
        for (p, e) in &pp.exps {
            let k = e.to_integer().to_i64().expect("exponent overflow");
            let pq = BigRational::from_integer(BigInt::from(*p));
            q *= pq.pow(k as i32);
        }
        return RealScalar::Rational(q);
    }
    RealScalar::PrimePow(pp)
}

fn eval_primepow(pp: &PrimePowForm, p: u32) -> Interval {
    // split integer and fractional exponent parts
    let mut rat = BigRational::one();
    let mut frac: Vec<(u64, BigRational)> = Vec::new();
    for (prime, e) in &pp.exps {
        let fl = e.floor();
        let f = e - &fl;
        let k = fl.to_integer().to_i64().expect("exponent overflow");
        rat *= BigRational::from_integer(BigInt::from(*prime)).pow(k as i32);
        if !f.is_zero() {
            frac.push((*prime, f));
        }
    }
    let base = Interval::from_rational(&rat, p + 8);
    if frac.is_empty() {
        return base;
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if frac.iter().all(|(_, f)| f == &half) {
        // product of sqrt of distinct primes: one integer square root
        let mut m: u64 = 1;
        let mut overflow = false;
        for (prime, _) in &frac {
            match m.checked_mul(*prime) {
                Some(v) => m = v,
                None => {
                    overflow = true;
                    break;
                }
            }
        }
        if !overflow {
            let root = const_interval(ConstKey::Sqrt(m), p + 8);
            return base.mul(&root, p);
        }
    }
    // general path through exp(sum f * ln prime)
    let mut lf = LinForm::zero();
    for (prime, f) in &frac {
        lf = lf.add(&LinForm::log_int(*prime, f));
    }
    let e = functions::exp_interval(&lf.eval(p + 48), p + 8);
    base.mul(&e, p)
}

// ---------------------------------------------------------------------------
// multiplication fold table
// ---------------------------------------------------------------------------

/// Total multiplication with normalization.
pub fn mul(a: &RealScalar, b: &RealScalar) -> RealScalar {
    let mut coeff = BigRational::one();
    let mut factors: Vec<RealScalar> = Vec::new();
    collect(a, &mut coeff, &mut factors);
    collect(b, &mut coeff, &mut factors);

    // repeatedly fold pairs until no fold applies
    'outer: loop {
        let n = factors.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if let Some(folded) = try_fold(&factors[i], &factors[j]) {
                    factors.swap_remove(j);
                    factors.swap_remove(i);
                    collect(&folded, &mut coeff, &mut factors);
                    continue 'outer;
                }
            }
        }
        break;
    }

    // absorb the rational coefficient if some factor accepts it
    if !coeff.is_one() {
        for f in factors.iter_mut() {
            if let Some(absorbed) = absorb_rational(f, &coeff) {
                *f = absorbed;
                coeff = BigRational::one();
                break;
            }
        }
    }

    factors.sort();
    match (factors.len(), coeff.is_one()) {
        (0, _) => RealScalar::Rational(coeff),
        (1, true) => factors.pop().unwrap(),
        _ => RealScalar::Product(ProductForm { coeff, factors }),
    }
}

fn collect(s: &RealScalar, coeff: &mut BigRational, factors: &mut Vec<RealScalar>) {
    match s {
        RealScalar::Rational(q) => *coeff *= q,
        RealScalar::Product(p) => {
            *coeff *= &p.coeff;
            factors.extend(p.factors.iter().cloned());
        }
        other => factors.push(other.clone()),
    }
}

/// Fold two non-rational factors into one scalar when the forms combine.
fn try_fold(a: &RealScalar, b: &RealScalar) -> Option<RealScalar> {
    use RealScalar as R;
    match (a, b) {
        (R::Surd(s1), R::Surd(s2)) if s1.d == s2.d => {
            let d = BigRational::from_integer(BigInt::from(s1.d));
            let x = &s1.x * &s2.x + &s1.y * &s2.y * &d;
            let y = &s1.x * &s2.y + &s1.y * &s2.x;
            Some(RealScalar::surd(s1.d, x, y).expect("product of positive surds is positive"))
        }
        (R::PrimePow(p1), R::PrimePow(p2)) => {
            let mut exps = p1.exps.clone();
            for (p, e) in &p2.exps {
                let entry = exps.entry(*p).or_insert_with(BigRational::zero);
                *entry += e;
            }
            Some(normalize_primepow(PrimePowForm { exps }))
        }
        (R::ExpForm(l1), R::ExpForm(l2)) => Some(RealScalar::exp_form(l1.add(l2))),
        (R::PrimePow(pp), R::ExpForm(l)) | (R::ExpForm(l), R::PrimePow(pp)) => {
            let mut lf = l.clone();
            for (p, e) in &pp.exps {
                lf = lf.add(&LinForm::log_int(*p, e));
            }
            Some(RealScalar::exp_form(lf))
        }
        (R::Surd(s), R::PrimePow(pp)) | (R::PrimePow(pp), R::Surd(s)) => {
            // only a pure sqrt(d) with matching radicand folds into the surd
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let all_halves = pp.exps.values().all(|e| {
                let f = e - e.floor();
                f.is_zero() || f == half
            });
            if !all_halves {
                return None;
            }
            let mut m: u64 = 1;
            let mut rat = BigRational::one();
            for (p, e) in &pp.exps {
                let fl = e.floor();
                let k = fl.to_integer().to_i64()?;
                rat *= BigRational::from_integer(BigInt::from(*p)).pow(k as i32);
                if !(e - fl).is_zero() {
                    m = m.checked_mul(*p)?;
                }
            }
            if m != s.d {
                return None;
            }
            // (x + y sqrt(d)) * r * sqrt(d) = r*d*y + r*x*sqrt(d)
            let d = BigRational::from_integer(BigInt::from(s.d));
            let x = &rat * &d * &s.y;
            let y = &rat * &s.x;
            Some(RealScalar::surd(s.d, x, y).expect("positive product"))
        }
        _ => None,
    }
}

/// Multiply a factor by an exact positive rational, when the form absorbs it.
fn absorb_rational(f: &RealScalar, c: &BigRational) -> Option<RealScalar> {
    match f {
        RealScalar::Surd(s) => Some(
            RealScalar::surd(s.d, &s.x * c, &s.y * c).expect("scaled positive surd stays positive"),
        ),
        RealScalar::PrimePow(pp) => {
            let fr = factor_rational(c, FACTOR_LIMIT)?;
            let mut exps = pp.exps.clone();
            for (p, e) in fr {
                let entry = exps.entry(p).or_insert_with(BigRational::zero);
                *entry += BigRational::from_integer(BigInt::from(e));
            }
            Some(normalize_primepow(PrimePowForm { exps }))
        }
        RealScalar::ExpForm(l) => {
            let lf = LinForm::log_rational(c, &BigRational::one(), FACTOR_LIMIT)?;
            Some(RealScalar::exp_form(l.add(&lf)))
        }
        _ => None,
    }
}

impl fmt::Display for RealScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealScalar::Rational(q) => write!(f, "{}", q),
            RealScalar::Surd(s) => {
                if s.y.is_negative() {
                    write!(f, "{}{}*sqrt({})", s.x, s.y, s.d)
                } else {
                    write!(f, "{}+{}*sqrt({})", s.x, s.y, s.d)
                }
            }
            RealScalar::PrimePow(pp) => {
                let (base, exp) = primepow_base_exp(pp);
                write!(f, "pow({}, {})", base, exp)
            }
            RealScalar::ExpForm(l) => write!(f, "exp({})", l),
            RealScalar::Product(p) => {
                if !p.coeff.is_one() {
                    write!(f, "{}", p.coeff)?;
                    for fac in &p.factors {
                        write!(f, "*{}", fac)?;
                    }
                    Ok(())
                } else {
                    let mut first = true;
                    for fac in &p.factors {
                        if !first {
                            write!(f, "*")?;
                        }
                        write!(f, "{}", fac)?;
                        first = false;
                    }
                    Ok(())
                }
            }
        }
    }
}

/// Minimal `(base, exponent)` presentation of a factored power:
/// exponent `g/s` with `s` the common denominator and `g` the gcd of the
/// scaled numerators.
pub fn primepow_base_exp(pp: &PrimePowForm) -> (BigRational, BigRational) {
    let mut s = BigInt::one();
    for e in pp.exps.values() {
        s = s.lcm(e.denom());
    }
    let mut g = BigInt::zero();
    for e in pp.exps.values() {
        let scaled = (e * BigRational::from_integer(s.clone())).to_integer();
        g = g.gcd(&scaled);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    let mut base = BigRational::one();
    for (p, e) in &pp.exps {
        let scaled = (e * BigRational::from_integer(s.clone())).to_integer() / &g;
        let k = scaled.to_i64().expect("exponent overflow");
        base *= BigRational::from_integer(BigInt::from(*p)).pow(k as i32);
    }
    (base, BigRational::new(g, s))
}

// ---------------------------------------------------------------------------
// certified comparison
// ---------------------------------------------------------------------------

/// Certified three-way comparison. `Equal` is returned only on an exact
/// symbolic proof; `Less`/`Greater` only from disjoint certified enclosures
/// or exact arithmetic; otherwise `Unresolved` with the precision reached.
pub fn compare(a: &RealScalar, b: &RealScalar, cfg: &PrecisionCfg) -> Ordering3 {
    if a == b {
        return Ordering3::Equal;
    }
    if let Some(ord) = try_exact(a, b, 0) {
        return ord;
    }
    // Exponent-space comparison is better conditioned when both sides have
    // symbolic logs.
    if let (Some(la), Some(lb)) = (a.log_linform(), b.log_linform()) {
        let diff = la.sub(&lb);
        if diff.is_zero() {
            return Ordering3::Equal;
        }
        let mut bits_reached = cfg.initial_bits;
        for p in cfg.steps() {
            bits_reached = p;
            let iv = diff.eval(p);
            if iv.strictly_positive() {
                return Ordering3::Greater;
            }
            if iv.strictly_negative() {
                return Ordering3::Less;
            }
        }
        return Ordering3::Unresolved { bits_reached };
    }
    let mut bits_reached = cfg.initial_bits;
    for p in cfg.steps() {
        bits_reached = p;
        let ia = a.eval(p);
        let ib = b.eval(p);
        if let Some(ord) = ia.cmp_disjoint(&ib) {
            return Ordering3::from_ordering(ord);
        }
    }
    Ordering3::Unresolved { bits_reached }
}

/// Exact comparison routes. `depth` guards the common-power recursion.
fn try_exact(a: &RealScalar, b: &RealScalar, depth: u8) -> Option<Ordering3> {
    use RealScalar as R;
    match (a, b) {
        (R::Rational(x), R::Rational(y)) => Some(Ordering3::from_ordering(x.cmp(y))),
        (R::Rational(r), R::Surd(s)) => {
            let sign = surd_sign_rational(&(&s.x - r), &s.y, s.d);
            Some(Ordering3::from_ordering(0.cmp(&sign)))
        }
        (R::Surd(s), R::Rational(r)) => {
            let sign = surd_sign_rational(&(&s.x - r), &s.y, s.d);
            Some(Ordering3::from_ordering(sign.cmp(&0)))
        }
        (R::Surd(s1), R::Surd(s2)) if s1.d == s2.d => {
            let sign = surd_sign_rational(&(&s1.x - &s2.x), &(&s1.y - &s2.y), s1.d);
            Some(Ordering3::from_ordering(sign.cmp(&0)))
        }
        (R::PrimePow(p1), R::PrimePow(p2)) => {
            // compare via the exponent difference map
            let mut diff: BTreeMap<u64, BigRational> = p1.exps.clone();
            for (p, e) in &p2.exps {
                let entry = diff.entry(*p).or_insert_with(BigRational::zero);
                *entry -= e;
            }
            diff.retain(|_, e| !e.is_zero());
            if diff.is_empty() {
                return Some(Ordering3::Equal);
            }
            if diff.values().all(|e| e.is_positive()) {
                return Some(Ordering3::Greater);
            }
            if diff.values().all(|e| e.is_negative()) {
                return Some(Ordering3::Less);
            }
            // ratio^s is rational: compare against 1 exactly if small enough
            cmp_prime_exps_vs_one(&diff)
        }
        (R::Rational(r), R::PrimePow(pp)) => {
            cmp_rational_primepow(r, pp).map(|o| o.reverse())
        }
        (R::PrimePow(pp), R::Rational(r)) => cmp_rational_primepow(r, pp),
        (R::Surd(s), R::PrimePow(pp)) => cmp_surd_primepow(s, pp),
        (R::PrimePow(pp), R::Surd(s)) => cmp_surd_primepow(s, pp).map(|o| o.reverse()),
        (R::ExpForm(l1), R::ExpForm(l2)) => {
            if l1.sub(l2).is_zero() {
                Some(Ordering3::Equal)
            } else {
                None
            }
        }
        (R::Product(_), _) | (_, R::Product(_)) if depth == 0 => {
            // Raising both sides to the common denominator of all fractional
            // exponents can fold mixed products into exactly comparable forms.
            let s = common_power(a).lcm(&common_power(b));
            let s64 = s.to_u64()?;
            if s64 <= 1 || s64 > 16 {
                return None;
            }
            let ap = a.pow(s64);
            let bp = b.pow(s64);
            if matches!(ap, R::Product(_)) || matches!(bp, R::Product(_)) {
                return None;
            }
            try_exact(&ap, &bp, 1)
        }
        _ => None,
    }
}

/// Common denominator of fractional exponents across a scalar's factors.
fn common_power(s: &RealScalar) -> BigInt {
    match s {
        RealScalar::PrimePow(pp) => {
            let mut l = BigInt::one();
            for e in pp.exps.values() {
                l = l.lcm(e.denom());
            }
            l
        }
        RealScalar::Product(p) => {
            let mut l = BigInt::one();
            for f in &p.factors {
                l = l.lcm(&common_power(f));
            }
            l
        }
        _ => BigInt::one(),
    }
}

/// Compare `prod p^(e_p)` against 1 by raising to the common denominator,
/// guarding against huge intermediates.
fn cmp_prime_exps_vs_one(exps: &BTreeMap<u64, BigRational>) -> Option<Ordering3> {
    let mut s = BigInt::one();
    for e in exps.values() {
        s = s.lcm(e.denom());
    }
    // estimated bit size of the integer comparison
    let mut bits = 0f64;
    for (p, e) in exps {
        let scaled = (e * BigRational::from_integer(s.clone())).to_integer();
        bits += scaled.to_f64()?.abs() * (*p as f64).log2();
    }
    if bits > 200_000.0 {
        return None;
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (p, e) in exps {
        let scaled = (e * BigRational::from_integer(s.clone())).to_integer();
        let k = scaled.magnitude().to_u64()?;
        let pk = BigInt::from(*p).pow(u32::try_from(k).ok()?);
        if scaled.is_positive() {
            num *= pk;
        } else {
            den *= pk;
        }
    }
    Some(Ordering3::from_ordering(num.cmp(&den)))
}

fn cmp_rational_primepow(r: &BigRational, pp: &PrimePowForm) -> Option<Ordering3> {
    // pp vs r: compare pp/r against 1 when r factors; otherwise raise both to
    // the common denominator and compare rationals.
    if let Some(fr) = factor_rational(r, FACTOR_LIMIT) {
        let mut diff = pp.exps.clone();
        for (p, e) in fr {
            let entry = diff.entry(p).or_insert_with(BigRational::zero);
            *entry -= BigRational::from_integer(BigInt::from(e));
        }
        diff.retain(|_, e| !e.is_zero());
        if diff.is_empty() {
            return Some(Ordering3::Equal);
        }
        return cmp_prime_exps_vs_one(&diff);
    }
    None
}

fn cmp_surd_primepow(s: &SurdForm, pp: &PrimePowForm) -> Option<Ordering3> {
    // raise both sides to the common denominator of the power's exponents;
    // the surd stays a surd and the power becomes rational.
    let mut l = BigInt::one();
    for e in pp.exps.values() {
        l = l.lcm(e.denom());
    }
    let k = l.to_u64()?;
    if k > 16 {
        return None;
    }
    let sp = RealScalar::Surd(s.clone()).pow(k);
    let ppp = RealScalar::PrimePow(pp.clone()).pow(k);
    match (&sp, &ppp) {
        (RealScalar::Surd(_), RealScalar::Rational(_))
        | (RealScalar::Rational(_), RealScalar::Rational(_)) => try_exact(&sp, &ppp, 1),
        _ => None,
    }
}
