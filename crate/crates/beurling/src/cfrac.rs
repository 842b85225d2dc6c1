//! Certified continued-fraction expansion, convergents, and the c-th-power
//! approximation attack on `{p^c}` systems.

use crate::exactnum::{
    self, compare, Dyadic, Enclosure, ExactError, Interval, Ordering3, PrecisionCfg, RealScalar,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CfracError {
    #[error("expansion needs a positive value")]
    NonPositive,
    #[error("exponent must satisfy 1 < c < 2, got {0}")]
    ExponentOutOfRange(BigRational),
    #[error("alpha must be greater than 1")]
    AlphaNotAboveOne,
    #[error("alpha of this form is not supported by the power attack: {0}")]
    UnsupportedAlpha(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A continued-fraction expansion prefix with a certification count: the
/// first `certified` quotients are provably correct at the precision used.
#[derive(Debug, Clone)]
pub struct CFExpansion {
    pub value: RealScalar,
    pub quotients: Vec<BigInt>,
    pub certified: usize,
    /// The value is rational and the expansion terminated.
    pub exhausted: bool,
    /// Working precision that produced the certified prefix.
    pub bits_used: u32,
}

impl CFExpansion {
    /// Largest partial quotient over the certified prefix beyond index 0;
    /// a finite bad-approximability diagnostic, nothing more.
    pub fn max_partial_quotient(&self) -> Option<&BigInt> {
        self.quotients.iter().take(self.certified).skip(1).max()
    }
}

/// One convergent `a/r` (numerator `a`, denominator `r`), reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub a: BigInt,
    pub r: BigInt,
    pub index: usize,
}

fn floor_dyadic(d: &Dyadic) -> BigInt {
    let r = d.to_rational();
    r.floor().to_integer()
}

/// Exact Euclidean expansion of a rational.
fn expand_rational(x: &BigRational, count: usize) -> (Vec<BigInt>, bool) {
    let mut quots = Vec::new();
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    while quots.len() < count && !den.is_zero() {
        let (q, r) = num_integer::Integer::div_mod_floor(&num, &den);
        quots.push(q);
        num = den;
        den = r;
    }
    let exhausted = den.is_zero();
    (quots, exhausted)
}

/// Certified continued-fraction expansion of `x > 0` with up to `count`
/// quotients. Each accepted quotient's floor was resolved with the integer
/// boundary excluded from the remainder's enclosure; precision escalates
/// until `certified == count` or the budget is spent.
pub fn expand(x: &RealScalar, count: usize, cfg: &PrecisionCfg) -> Result<CFExpansion, CfracError> {
    assert!(count >= 1);
    if let RealScalar::Rational(q) = x {
        if !q.is_positive() {
            return Err(CfracError::NonPositive);
        }
        let (quots, exhausted) = expand_rational(q, count);
        let certified = quots.len();
        return Ok(CFExpansion {
            value: x.clone(),
            quotients: quots,
            certified,
            exhausted,
            bits_used: 0,
        });
    }
    let mut best: Vec<BigInt> = Vec::new();
    let mut bits_used = cfg.initial_bits;
    for p in cfg.steps() {
        bits_used = p;
        let mut iv = x.eval(p);
        if !iv.strictly_positive() {
            return Err(CfracError::NonPositive);
        }
        let mut quots = Vec::new();
        while quots.len() < count {
            let flo = floor_dyadic(iv.lo());
            let fhi = floor_dyadic(iv.hi());
            if flo != fhi {
                break;
            }
            quots.push(flo.clone());
            let f = Interval::from_bigint(&flo);
            let frac = iv.sub(&f, p);
            if !frac.strictly_positive() {
                // the remainder cannot be certified away from zero
                break;
            }
            iv = frac.recip(p);
        }
        if quots.len() > best.len() {
            best = quots;
        }
        if best.len() >= count {
            break;
        }
    }
    let certified = best.len();
    Ok(CFExpansion {
        value: x.clone(),
        quotients: best,
        certified,
        exhausted: false,
        bits_used,
    })
}

/// Convergents from the standard recurrence over the certified prefix.
pub fn convergents(cf: &CFExpansion) -> Vec<Convergent> {
    let take = if cf.exhausted {
        cf.quotients.len()
    } else {
        cf.certified
    };
    let mut out = Vec::with_capacity(take);
    let mut a_prev = BigInt::one();
    let mut a_prev2 = BigInt::zero();
    let mut r_prev = BigInt::zero();
    let mut r_prev2 = BigInt::one();
    for (i, q) in cf.quotients.iter().take(take).enumerate() {
        let a = q * &a_prev + &a_prev2;
        let r = q * &r_prev + &r_prev2;
        out.push(Convergent {
            a: a.clone(),
            r: r.clone(),
            index: i,
        });
        a_prev2 = std::mem::replace(&mut a_prev, a);
        r_prev2 = std::mem::replace(&mut r_prev, r);
    }
    out
}

/// A c-th power near-collision: `|alpha * b^c - a^c|` small.
#[derive(Debug, Clone)]
pub struct PowerWitness {
    pub a: BigInt,
    pub b: BigInt,
    pub residual: Enclosure,
    /// The residual is exactly zero: alpha is itself a c-th power and the
    /// collision is degenerate.
    pub exact_zero: bool,
}

#[derive(Debug, Clone)]
pub enum PowerAttackOutcome {
    Found(PowerWitness),
    /// No convergent with denominator within the bound certifies below the
    /// threshold; the best residual seen is reported.
    NotFound { best: Option<PowerWitness> },
}

/// `alpha^(1/c)` for supported alpha forms (rational or factored powers).
fn root_of_alpha(alpha: &RealScalar, c: &BigRational) -> Result<RealScalar, CfracError> {
    let inv_c = BigRational::one() / c;
    match alpha {
        RealScalar::Rational(q) => Ok(RealScalar::rat_pow(q.clone(), inv_c)?),
        RealScalar::PrimePow(pp) => {
            let exps = pp
                .exps
                .iter()
                .map(|(p, e)| (*p, e * &inv_c))
                .collect::<std::collections::BTreeMap<_, _>>();
            let mut acc = RealScalar::one();
            for (p, e) in exps {
                acc = acc.mul(&RealScalar::rat_pow(
                    BigRational::from_integer(BigInt::from(p)),
                    e,
                )?);
            }
            Ok(acc)
        }
        other => Err(CfracError::UnsupportedAlpha(other.to_string())),
    }
}

/// Residual scalars `alpha * b^c` and `a^c` for a candidate pair.
fn residual_sides(
    alpha: &RealScalar,
    c: &BigRational,
    a: &BigInt,
    b: &BigInt,
) -> Result<(RealScalar, RealScalar), CfracError> {
    let bc = RealScalar::rat_pow(BigRational::from_integer(b.clone()), c.clone())?;
    let ac = RealScalar::rat_pow(BigRational::from_integer(a.clone()), c.clone())?;
    Ok((alpha.mul(&bc), ac))
}

fn residual_enclosure(lhs: &RealScalar, rhs: &RealScalar, p: u32) -> Enclosure {
    Enclosure::from_interval(&exactnum::diff_interval(lhs, rhs, p).abs())
}

/// Search convergents of `alpha^(1/c)` with denominator at most `bmax` for
/// the smallest certified residual `|alpha*b^c - a^c|`; succeeds when it
/// drops below `eps`.
pub fn power_attack(
    alpha: &RealScalar,
    c: &BigRational,
    eps: &BigRational,
    bmax: u64,
    cfg: &PrecisionCfg,
) -> Result<PowerAttackOutcome, CfracError> {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    if !(c > &one && c < &two) {
        return Err(CfracError::ExponentOutOfRange(c.clone()));
    }
    if compare(alpha, &RealScalar::one(), cfg) != Ordering3::Greater {
        return Err(CfracError::AlphaNotAboveOne);
    }
    assert!(eps.is_positive() && bmax >= 1);
    let theta = root_of_alpha(alpha, c)?;

    // Degenerate case: alpha is exactly a c-th power.
    if let RealScalar::Rational(q) = &theta {
        let (a, b) = (q.numer().clone(), q.denom().clone());
        if b.to_u64().is_some_and(|bv| bv <= bmax) {
            return Ok(PowerAttackOutcome::Found(PowerWitness {
                a,
                b,
                residual: Enclosure::point(BigRational::zero()),
                exact_zero: true,
            }));
        }
    }

    // Expand until the convergent denominators exceed bmax.
    let bmax_big = BigInt::from(bmax);
    let mut count = 16;
    let mut convs: Vec<Convergent>;
    loop {
        let cf = expand(&theta, count, cfg)?;
        convs = convergents(&cf);
        let past = convs.iter().any(|cv| cv.r > bmax_big);
        let capped = cf.exhausted || cf.certified < count;
        convs.retain(|cv| cv.r <= bmax_big && !cv.r.is_zero());
        if past || capped || count >= 4096 {
            break;
        }
        count *= 2;
    }

    // Evaluate residuals, tracking the certified minimum.
    let mut best: Option<(Convergent, Enclosure)> = None;
    for cv in &convs {
        let (lhs, rhs) = residual_sides(alpha, c, &cv.a, &cv.r)?;
        // exact-zero detection through the scalar compare
        if compare(&lhs, &rhs, cfg) == Ordering3::Equal {
            return Ok(PowerAttackOutcome::Found(PowerWitness {
                a: cv.a.clone(),
                b: cv.r.clone(),
                residual: Enclosure::point(BigRational::zero()),
                exact_zero: true,
            }));
        }
        let mut enc = residual_enclosure(&lhs, &rhs, cfg.initial_bits);
        if let Some((best_cv, best_enc)) = &best {
            // refine both candidates until ordered
            let mut p = cfg.initial_bits;
            let mut cur_best = best_enc.clone();
            while enc.lo <= cur_best.hi && cur_best.lo <= enc.hi && p < cfg.max_bits {
                p = (p * 2).min(cfg.max_bits);
                enc = residual_enclosure(&lhs, &rhs, p);
                let (bl, br) = residual_sides(alpha, c, &best_cv.a, &best_cv.r)?;
                cur_best = residual_enclosure(&bl, &br, p);
            }
            if enc.hi < cur_best.lo {
                best = Some((cv.clone(), enc));
            } else {
                best = Some((best_cv.clone(), cur_best));
            }
        } else {
            best = Some((cv.clone(), enc));
        }
    }

    match best {
        Some((cv, mut enc)) => {
            // certify against the threshold, escalating while undecided
            let mut p = cfg.initial_bits;
            while !enc.certainly_below(eps) && !enc.certainly_at_least(eps) && p < cfg.max_bits {
                p = (p * 2).min(cfg.max_bits);
                let (lhs, rhs) = residual_sides(alpha, c, &cv.a, &cv.r)?;
                enc = residual_enclosure(&lhs, &rhs, p);
            }
            let witness = PowerWitness {
                a: cv.a,
                b: cv.r,
                residual: enc.clone(),
                exact_zero: false,
            };
            if enc.certainly_below(eps) {
                Ok(PowerAttackOutcome::Found(witness))
            } else {
                Ok(PowerAttackOutcome::NotFound {
                    best: Some(witness),
                })
            }
        }
        None => Ok(PowerAttackOutcome::NotFound { best: None }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn cfg() -> PrecisionCfg {
        PrecisionCfg::default()
    }

    fn sqrt2_plus_one() -> RealScalar {
        RealScalar::surd(2, rat(1, 1), rat(1, 1)).unwrap()
    }

    #[test]
    fn expand_sqrt2() {
        // sqrt2 = [1; 2, 2, 2, ...], verifiable from x^2 = 2
        let s2 = RealScalar::rat_pow(rat(2, 1), rat(1, 2)).unwrap();
        let cf = expand(&s2, 6, &cfg()).unwrap();
        assert_eq!(cf.certified, 6);
        let expect: Vec<BigInt> = [1, 2, 2, 2, 2, 2].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(cf.quotients, expect);
        assert!(!cf.exhausted);
    }

    #[test]
    fn expand_rational_terminates() {
        let cf = expand(&RealScalar::Rational(rat(5, 2)), 5, &cfg()).unwrap();
        let expect: Vec<BigInt> = [2, 2].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(cf.quotients, expect);
        assert!(cf.exhausted);
        assert_eq!(cf.certified, 2);
    }

    #[test]
    fn expand_cube_root_of_four() {
        // 2^(2/3) = 1.5874010519..., quotients [1;1,1,2,2,1,3] checked against
        // a 60-digit greedy extraction
        let v = RealScalar::rat_pow(rat(2, 1), rat(2, 3)).unwrap();
        let cf = expand(&v, 7, &cfg()).unwrap();
        assert_eq!(cf.certified, 7);
        let expect: Vec<BigInt> = [1, 1, 1, 2, 2, 1, 3].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(cf.quotients, expect);
    }

    #[test]
    fn convergents_sqrt2() {
        let s2 = RealScalar::rat_pow(rat(2, 1), rat(1, 2)).unwrap();
        let cf = expand(&s2, 5, &cfg()).unwrap();
        let cv = convergents(&cf);
        let pairs: Vec<(i64, i64)> = cv.iter().map(|c| (c.a.to_i64().unwrap(), c.r.to_i64().unwrap())).collect();
        assert_eq!(pairs, vec![(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]);
    }

    #[test]
    fn convergents_rational() {
        let cf = expand(&RealScalar::Rational(rat(5, 2)), 5, &cfg()).unwrap();
        let cv = convergents(&cf);
        let pairs: Vec<(i64, i64)> = cv.iter().map(|c| (c.a.to_i64().unwrap(), c.r.to_i64().unwrap())).collect();
        assert_eq!(pairs, vec![(2, 1), (5, 2)]);
    }

    #[test]
    fn convergents_cube_root() {
        let v = RealScalar::rat_pow(rat(2, 1), rat(2, 3)).unwrap();
        let cf = expand(&v, 7, &cfg()).unwrap();
        let cv = convergents(&cf);
        let pairs: Vec<(i64, i64)> = cv.iter().map(|c| (c.a.to_i64().unwrap(), c.r.to_i64().unwrap())).collect();
        assert_eq!(
            pairs,
            vec![(1, 1), (2, 1), (3, 2), (8, 5), (19, 12), (27, 17), (100, 63)]
        );
    }

    #[test]
    fn determinant_identity() {
        let alpha = sqrt2_plus_one();
        let cf = expand(&alpha, 12, &cfg()).unwrap();
        let cv = convergents(&cf);
        for w in cv.windows(2) {
            let det = &w[1].a * &w[0].r - &w[0].a * &w[1].r;
            assert!(det == BigInt::one() || det == BigInt::from(-1));
        }
    }

    #[test]
    fn best_approximation_sandwich() {
        // |x - a/r| < 1/r^2 for every convergent of an irrational
        let alpha = sqrt2_plus_one();
        let cf = expand(&alpha, 10, &cfg()).unwrap();
        let cv = convergents(&cf);
        for c in &cv {
            let approx = RealScalar::from_rational(BigRational::new(c.a.clone(), c.r.clone())).unwrap();
            let diff = exactnum::diff_interval(&alpha, &approx, 128).abs();
            let bound = BigRational::new(BigInt::one(), &c.r * &c.r);
            assert!(
                diff.hi_rational() < bound,
                "convergent {}/{} violates the 1/r^2 bound",
                c.a,
                c.r
            );
        }
    }

    #[test]
    fn round_trip_final_convergent_accuracy() {
        let alpha = sqrt2_plus_one();
        let cf = expand(&alpha, 14, &cfg()).unwrap();
        let cv = convergents(&cf);
        let last = cv.last().unwrap();
        let approx = BigRational::new(last.a.clone(), last.r.clone());
        let iv = alpha.eval(256);
        let bound = BigRational::new(BigInt::one(), &last.r * &last.r);
        assert!((iv.lo_rational() - &approx).abs() < bound);
        assert!((iv.hi_rational() - &approx).abs() < bound);
    }

    #[test]
    fn power_attack_loose_threshold() {
        // alpha=2, c=3/2: best convergent with b <= 10 is 8/5,
        // |2*5^1.5 - 8^1.5| = 0.26673722...
        let out = power_attack(&RealScalar::from_u64(2), &rat(3, 2), &rat(1, 2), 10, &cfg()).unwrap();
        match out {
            PowerAttackOutcome::Found(w) => {
                assert_eq!(w.a, BigInt::from(8));
                assert_eq!(w.b, BigInt::from(5));
                assert!(w.residual.lo > rat(26, 100) && w.residual.hi < rat(27, 100));
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn power_attack_tight_threshold() {
        // eps=0.1, bmax=100: (100, 63) with residual 0.0939955824...
        let out = power_attack(&RealScalar::from_u64(2), &rat(3, 2), &rat(1, 10), 100, &cfg()).unwrap();
        match out {
            PowerAttackOutcome::Found(w) => {
                assert_eq!(w.a, BigInt::from(100));
                assert_eq!(w.b, BigInt::from(63));
                assert!(w.residual.lo > rat(9, 100) && w.residual.hi < rat(10, 100));
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn power_attack_degenerate_cth_power() {
        // alpha = 8 = 4^(3/2): exact collision at (4, 1)
        let out = power_attack(&RealScalar::from_u64(8), &rat(3, 2), &rat(1, 2), 1, &cfg()).unwrap();
        match out {
            PowerAttackOutcome::Found(w) => {
                assert_eq!(w.a, BigInt::from(4));
                assert_eq!(w.b, BigInt::one());
                assert!(w.exact_zero);
                assert!(w.residual.lo.is_zero() && w.residual.hi.is_zero());
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn power_attack_validates_exponent() {
        assert!(matches!(
            power_attack(&RealScalar::from_u64(2), &rat(5, 2), &rat(1, 2), 10, &cfg()),
            Err(CfracError::ExponentOutOfRange(_))
        ));
        assert!(matches!(
            power_attack(&RealScalar::from_u64(1), &rat(3, 2), &rat(1, 2), 10, &cfg()),
            Err(CfracError::AlphaNotAboveOne)
        ));
    }

    #[test]
    fn residual_scaling_stays_bounded() {
        // residual * b^(2-c) bounded along convergents, for (2, 3/2) and (3, 4/3)
        for (alpha, c, cexp) in [(2u64, rat(3, 2), rat(1, 2)), (3u64, rat(4, 3), rat(2, 3))] {
            let a = RealScalar::from_u64(alpha);
            let theta = root_of_alpha(&a, &c).unwrap();
            let cf = expand(&theta, 30, &cfg()).unwrap();
            let cv = convergents(&cf);
            let bound = rat(10, 1);
            for conv in cv.iter().filter(|c| c.r <= BigInt::from(100_000) && !c.r.is_zero()) {
                let (lhs, rhs) = residual_sides(&a, &c, &conv.a, &conv.r).unwrap();
                let enc = residual_enclosure(&lhs, &rhs, 192);
                let scale = RealScalar::rat_pow(
                    BigRational::from_integer(conv.r.clone()),
                    cexp.clone(),
                )
                .unwrap();
                let prod = enc.hi * scale.eval(192).hi_rational();
                assert!(prod < bound, "residual scaling exceeded at {}/{}", conv.a, conv.r);
            }
        }
    }

    #[test]
    fn max_partial_quotient_diagnostic() {
        let alpha = sqrt2_plus_one();
        let cf = expand(&alpha, 10, &cfg()).unwrap();
        assert_eq!(cf.max_partial_quotient(), Some(&BigInt::from(2)));
    }
}
