//! Constructive gap-collapsing searches: given an excluded prime set `E` and
//! a value `alpha`, find two semigroup elements of the primes-outside-`E`
//! system adjoined with `alpha` that lie closer than `delta`.
//!
//! The rational case solves a Bezout equation with odd coefficients and scans
//! a sieved arithmetic progression; the irrational case walks consecutive
//! convergent pairs of `alpha` and scans weighted mediants, certifying the
//! achieved gap by interval arithmetic. Every returned witness revalidates
//! independently: trial division over `E` plus a certified gap below the
//! threshold.

use crate::cfrac;
use crate::exactnum::{
    diff_interval, Enclosure, ExactError, PrecisionCfg, RealScalar,
};
use crate::primeset::ExcludedSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AttackError {
    #[error("alpha = {0} is an integer; the gap statement is vacuous for integer alpha")]
    AlphaInteger(String),
    #[error("alpha must be rational for the rational attack")]
    AlphaNotRational,
    #[error("alpha is rational; use the rational attack")]
    AlphaRational,
    #[error("alpha must exceed 1")]
    AlphaNotAboveOne,
    #[error("delta must be positive")]
    DeltaNotPositive,
    #[error("requires a > b >= 2 with gcd(a, b) = 1, got {a}/{b}")]
    BadFraction { a: BigInt, b: BigInt },
    #[error("search bound exhausted: {context} (best gap seen: {best:?})")]
    NotFound {
        context: String,
        best: Option<Enclosure>,
    },
    #[error("the continued-fraction expansion could not be certified deep enough (reached {certified} quotients)")]
    ExpansionTooShort { certified: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Cfrac(#[from] cfrac::CfracError),
}

/// Search-bound configuration for the witness scans.
#[derive(Debug, Clone)]
pub struct SieveConfig {
    /// Small-prime threshold: excluded primes up to this bound sieve by
    /// residue class, larger ones are handled by trial division.
    pub t_threshold: u64,
    /// Rational case: bound on the progression index `z`.
    pub z_max: u64,
    /// Irrational case: how many consecutive convergent pairs to walk.
    pub max_pairs: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            t_threshold: 97,
            z_max: 1_000_000,
            max_pairs: 48,
        }
    }
}

/// Full provenance of a found witness.
#[derive(Debug, Clone)]
pub enum WitnessCase {
    Rational {
        /// Exponent of alpha in the witness pair `(alpha^m x, y)`.
        m: u32,
        u: BigInt,
        v: BigInt,
        d: u8,
        z: u64,
    },
    Irrational {
        /// Index of the convergent pair walked (0-based).
        pair_index: usize,
        x: u64,
        y: u64,
        /// Lower and upper convergents as `(numerator, denominator)`.
        lower: (BigInt, BigInt),
        upper: (BigInt, BigInt),
        parity_rule: &'static str,
    },
}

/// Two semigroup elements certified closer than the requested threshold:
/// `|alpha^m * nPrime - mPrime| < delta` with `nPrime, mPrime` free of every
/// excluded prime.
#[derive(Debug, Clone)]
pub struct Witness {
    pub case: WitnessCase,
    pub delta: BigRational,
    pub n_prime: BigInt,
    pub m_prime: BigInt,
    pub gap: Enclosure,
}

/// Exact density diagnostics for an excluded set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityDiag {
    /// `1/2 * prod_(p in E, p>2) (1 - 2/p)`.
    pub eta: BigRational,
    /// `1/2 * prod_(p in E, p>2) (1 - 1/p)`.
    pub eta_prime: BigRational,
    /// `prod_(p in E, p>2) (1 - 2/p)` (the rational-case density).
    pub case1_eta: BigRational,
    /// Advisory small-prime threshold: the tail sum over excluded primes
    /// beyond it is below `eta/3` (always attainable for finite sets).
    pub suggested_t: u64,
    /// Advisory scan budget scaled by `1/eta`.
    pub budget_hint: u64,
}

/// Exact `eta`, `eta'` and the rational-case density for a finite excluded
/// set, plus advisory search parameters.
pub fn density_diag(excluded: &ExcludedSet) -> DensityDiag {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut case1_eta = BigRational::one();
    let mut eta_prime_prod = BigRational::one();
    for &p in excluded.primes() {
        if p > 2 {
            let pb = BigInt::from(p);
            case1_eta *= BigRational::new(&pb - BigInt::from(2), pb.clone());
            eta_prime_prod *= BigRational::new(&pb - BigInt::one(), pb.clone());
        }
    }
    let eta = &half * &case1_eta;
    let eta_prime = &half * &eta_prime_prod;
    debug_assert!(eta.is_positive() && eta_prime.is_positive());
    // smallest cutoff whose excluded-prime tail drops below eta/3
    let third_eta = &eta / BigRational::from_integer(BigInt::from(3));
    let mut suggested_t = 2u64;
    loop {
        let tail: BigRational = excluded
            .primes()
            .iter()
            .filter(|&&p| p > suggested_t)
            .map(|&p| BigRational::new(BigInt::one(), BigInt::from(p)))
            .sum();
        if tail < third_eta {
            break;
        }
        suggested_t = excluded
            .primes()
            .iter()
            .copied()
            .find(|&p| p > suggested_t)
            .unwrap_or(suggested_t + 1);
    }
    let budget_hint = (BigRational::from_integer(BigInt::from(100)) / &eta)
        .ceil()
        .to_integer()
        .to_u64()
        .unwrap_or(u64::MAX);
    DensityDiag {
        eta,
        eta_prime,
        case1_eta,
        suggested_t,
        budget_hint,
    }
}

/// Rational-case attack: `alpha = a/b` in lowest terms with `a > b >= 2`.
///
/// Picks the minimal `m` with `delta * b^m > 2`, fixes odd `u, v` with
/// `a^m u - b^m v = d` (`d = 2` when `ab` is odd, else 1), and scans
/// `x = u + 2 z b^m`, `y = v + 2 z a^m` for the first pair free of excluded
/// primes. The achieved gap is exactly `d / b^m`.
#[allow(clippy::result_large_err)] // NotFound carries full diagnostics
pub fn attack_rational(
    excluded: &ExcludedSet,
    a: &BigInt,
    b: &BigInt,
    delta: &BigRational,
    config: &SieveConfig,
) -> Result<Witness, AttackError> {
    if !delta.is_positive() {
        return Err(AttackError::DeltaNotPositive);
    }
    let g = a.gcd(b);
    let (a, b) = (a / &g, b / &g);
    if b <= BigInt::one() {
        return Err(AttackError::AlphaInteger(format!("{a}")));
    }
    if !(a > b && b >= BigInt::from(2)) {
        return Err(AttackError::BadFraction { a, b });
    }

    // minimal exponent with delta * b^m > 2
    let two = BigRational::from_integer(BigInt::from(2));
    let mut m = 1u32;
    let mut bm = b.clone();
    while delta * BigRational::from_integer(bm.clone()) <= two {
        m += 1;
        bm *= &b;
    }
    let am = a.pow(m);
    let d: u8 = if ((&a * &b) % BigInt::from(2)) == BigInt::one() {
        2
    } else {
        1
    };

    // minimal positive odd u with a^m u = d (mod b^m) and v odd
    let e = am.extended_gcd(&bm);
    debug_assert!(e.gcd.is_one());
    let inv_am = e.x.mod_floor(&bm);
    let mut u = (BigInt::from(d) * &inv_am).mod_floor(&bm);
    if u.is_zero() {
        u = bm.clone();
    }
    let (u, v) = loop {
        let v = (&am * &u - BigInt::from(d)) / &bm;
        if u.is_odd() && v.is_odd() && v.is_positive() {
            break (u, v);
        }
        u += &bm;
    };

    // exact gap d / b^m, below delta by the choice of m
    let gap_value = BigRational::new(BigInt::from(d), bm.clone());
    debug_assert!(&gap_value < delta);

    // excluded residues of z per small excluded prime, from
    // p | u + 2 z b^m and p | v + 2 z a^m
    let small: Vec<u64> = excluded
        .primes()
        .iter()
        .copied()
        .filter(|&p| p > 2 && p <= config.t_threshold)
        .collect();
    let mut banned: Vec<(u64, Vec<u64>)> = Vec::new();
    for &p in &small {
        let pb = BigInt::from(p);
        let mut rs = Vec::new();
        for (c0, c1) in [(&u, &bm), (&v, &am)] {
            let step = (BigInt::from(2) * c1).mod_floor(&pb);
            if step.is_zero() {
                // p divides 2*b^m (or 2*a^m): the coprime Bezout relation
                // rules out p | c0, so no residue is excluded
                continue;
            }
            let e = step.extended_gcd(&pb);
            let inv = e.x.mod_floor(&pb);
            let r = ((-c0).mod_floor(&pb) * inv).mod_floor(&pb);
            rs.push(r.to_u64().unwrap());
        }
        banned.push((p, rs));
    }
    let large: Vec<u64> = excluded
        .primes()
        .iter()
        .copied()
        .filter(|&p| p > config.t_threshold)
        .collect();

    for z in 0..=config.z_max {
        if banned
            .iter()
            .any(|(p, rs)| rs.iter().any(|&r| z % p == r))
        {
            continue;
        }
        let zb = BigInt::from(z);
        let x = &u + BigInt::from(2) * &zb * &bm;
        let y = &v + BigInt::from(2) * &zb * &am;
        let ok = large.iter().all(|&p| {
            let pb = BigInt::from(p);
            !(&x % &pb).is_zero() && !(&y % &pb).is_zero()
        }) && excluded.is_free(&x)
            && excluded.is_free(&y);
        if ok {
            return Ok(Witness {
                case: WitnessCase::Rational {
                    m,
                    u,
                    v,
                    d,
                    z,
                },
                delta: delta.clone(),
                n_prime: x,
                m_prime: y,
                gap: Enclosure::point(gap_value),
            });
        }
    }
    Err(AttackError::NotFound {
        context: format!("rational scan exhausted z <= {}", config.z_max),
        best: Some(Enclosure::point(gap_value)),
    })
}

/// One relabeled convergent pair: `lower/`, `upper/` bracket alpha.
struct Pair {
    lower: (BigInt, BigInt),
    upper: (BigInt, BigInt),
    /// denominator of the convergent two past this pair (scan depth aid)
    next_denom: BigInt,
}

/// Irrational-case attack: walk consecutive convergent pairs of alpha and
/// scan weighted mediants `(x*lower + y*upper)` for the first pair whose
/// numerator and denominator are free of excluded primes and whose gap
/// certifies below `delta`. Scan order is `(pair, y, x)` ascending, so the
/// result is deterministic.
#[allow(clippy::result_large_err)] // NotFound carries full diagnostics
pub fn attack_irrational(
    excluded: &ExcludedSet,
    alpha: &RealScalar,
    delta: &BigRational,
    config: &SieveConfig,
    cfg: &PrecisionCfg,
) -> Result<Witness, AttackError> {
    if !delta.is_positive() {
        return Err(AttackError::DeltaNotPositive);
    }
    if alpha.as_rational().is_some() {
        return Err(AttackError::AlphaRational);
    }
    let one = RealScalar::one();
    if crate::exactnum::compare(alpha, &one, cfg) != crate::exactnum::Ordering3::Greater {
        return Err(AttackError::AlphaNotAboveOne);
    }

    // enough certified quotients for the requested pair depth
    let need = config.max_pairs + 3;
    let cf = cfrac::expand(alpha, need, cfg)?;
    if cf.exhausted {
        return Err(AttackError::AlphaRational);
    }
    if cf.certified < 4 {
        return Err(AttackError::ExpansionTooShort {
            certified: cf.certified,
        });
    }
    let convs = cfrac::convergents(&cf);
    let two_in_e = excluded.contains(2);
    let small: Vec<u64> = excluded
        .primes()
        .iter()
        .copied()
        .filter(|&p| p > 2 && p <= config.t_threshold)
        .collect();

    let mut best: Option<Enclosure> = None;
    let mut deepest = 0usize;

    for k in 0..convs.len().saturating_sub(2).min(config.max_pairs) {
        deepest = k;
        let (c0, c1, c2) = (&convs[k], &convs[k + 1], &convs[k + 2]);
        // even-indexed convergents lie below alpha, odd above
        let pair = if k % 2 == 0 {
            Pair {
                lower: (c0.a.clone(), c0.r.clone()),
                upper: (c1.a.clone(), c1.r.clone()),
                next_denom: c2.r.clone(),
            }
        } else {
            Pair {
                lower: (c1.a.clone(), c1.r.clone()),
                upper: (c0.a.clone(), c0.r.clone()),
                next_denom: c2.r.clone(),
            }
        };
        let (al, rl) = &pair.lower;
        let (au, ru) = &pair.upper;

        // certified positive distances eps_lo = alpha*rl - al,
        // eps_up = au - alpha*ru
        let mut p_bits = cfg.initial_bits;
        let (eps_lo, eps_up) = loop {
            let el = Enclosure::from_interval(&diff_interval(
                &alpha.mul(&RealScalar::from_bigint(rl).expect("positive")),
                &RealScalar::from_bigint(al).expect("positive"),
                p_bits,
            ));
            let eu = Enclosure::from_interval(&diff_interval(
                &RealScalar::from_bigint(au).expect("positive"),
                &alpha.mul(&RealScalar::from_bigint(ru).expect("positive")),
                p_bits,
            ));
            if el.lo.is_positive() && eu.lo.is_positive() {
                break (el, eu);
            }
            if p_bits >= cfg.max_bits {
                return Err(AttackError::ExpansionTooShort {
                    certified: cf.certified,
                });
            }
            p_bits = (p_bits * 2).min(cfg.max_bits);
        };

        // parity rule (needed when 2 is excluded; the three cases keep both
        // mediant parts odd, using det(upper, lower) = 1)
        let (y_parity, x_parity, rule): (Option<u8>, Option<u8>, &'static str) = if two_in_e {
            if (al * rl).is_odd() {
                (Some(0), Some(1), "lower odd: y even, x odd")
            } else if (au * ru).is_odd() {
                (Some(1), Some(0), "upper odd: y odd, x even")
            } else {
                (Some(1), Some(1), "neither odd: x, y odd")
            }
        } else {
            (None, None, "not applied (2 not excluded)")
        };

        // y cap: the guaranteed-regime bound extended to the next
        // convergent's denominator so shallow pairs still cover the lattice
        let y_korlatok = (delta * BigRational::from_integer(ru.clone())
            / BigRational::from_integer(BigInt::from(2)))
        .ceil()
        .to_integer();
        let y_cap = y_korlatok
            .max(pair.next_denom.clone())
            .to_u64()
            .unwrap_or(u64::MAX)
            .max(1);

        for y in 1..=y_cap {
            if let Some(par) = y_parity {
                if y % 2 != par as u64 {
                    continue;
                }
            }
            let yq = BigRational::from_integer(BigInt::from(y));
            // conservative window: |x*eps_lo - y*eps_up| < delta
            let x_lo_bound = (&yq * &eps_up.lo - delta) / &eps_lo.hi;
            let x_hi_bound = (&yq * &eps_up.hi + delta) / &eps_lo.lo;
            let x_start = x_lo_bound.ceil().to_integer().to_i64().unwrap_or(1).max(1) as u64;
            let x_end = x_hi_bound.floor().to_integer().to_i64().unwrap_or(0);
            if x_end < x_start as i64 {
                continue;
            }
            for x in x_start..=(x_end as u64) {
                if let Some(par) = x_parity {
                    if x % 2 != par as u64 {
                        continue;
                    }
                }
                let xb = BigInt::from(x);
                let yb = BigInt::from(y);
                let n_prime = &xb * rl + &yb * ru;
                let m_prime = &xb * al + &yb * au;
                if small
                    .iter()
                    .any(|&p| (&n_prime % p).is_zero() || (&m_prime % p).is_zero())
                {
                    continue;
                }
                if !excluded.is_free(&n_prime) || !excluded.is_free(&m_prime) {
                    continue;
                }
                // certified gap |alpha * n' - m'| < delta
                let mut pb = cfg.initial_bits;
                let gap = loop {
                    let enc = Enclosure::from_interval(
                        &diff_interval(
                            &alpha.mul(&RealScalar::from_bigint(&n_prime).expect("positive")),
                            &RealScalar::from_bigint(&m_prime).expect("positive"),
                            pb,
                        )
                        .abs(),
                    );
                    if enc.certainly_below(delta) || enc.certainly_at_least(delta) || pb >= cfg.max_bits
                    {
                        break enc;
                    }
                    pb = (pb * 2).min(cfg.max_bits);
                };
                if gap.certainly_below(delta) {
                    return Ok(Witness {
                        case: WitnessCase::Irrational {
                            pair_index: k,
                            x,
                            y,
                            lower: pair.lower.clone(),
                            upper: pair.upper.clone(),
                            parity_rule: rule,
                        },
                        delta: delta.clone(),
                        n_prime,
                        m_prime,
                        gap,
                    });
                }
                best = Some(match best {
                    None => gap,
                    Some(b) => {
                        if gap.hi < b.hi {
                            gap
                        } else {
                            b
                        }
                    }
                });
            }
        }
    }
    Err(AttackError::NotFound {
        context: format!("walked convergent pairs up to index {deepest}"),
        best,
    })
}

/// Independent revalidation of a witness: trial division of both parts over
/// the excluded set and a certified gap strictly below the threshold.
pub fn revalidate(
    witness: &Witness,
    excluded: &ExcludedSet,
    alpha: &RealScalar,
    cfg: &PrecisionCfg,
) -> bool {
    if !excluded.is_free(&witness.n_prime) || !excluded.is_free(&witness.m_prime) {
        return false;
    }
    let exponent = match &witness.case {
        WitnessCase::Rational { m, .. } => *m as u64,
        WitnessCase::Irrational { .. } => 1,
    };
    let lhs = alpha
        .pow(exponent)
        .mul(&RealScalar::from_bigint(&witness.n_prime).expect("positive"));
    let rhs = RealScalar::from_bigint(&witness.m_prime).expect("positive");
    let mut p = cfg.initial_bits;
    loop {
        let enc = Enclosure::from_interval(&diff_interval(&lhs, &rhs, p).abs());
        if enc.certainly_below(&witness.delta) {
            return true;
        }
        if enc.certainly_at_least(&witness.delta) || p >= cfg.max_bits {
            return false;
        }
        p = (p * 2).min(cfg.max_bits);
    }
}
