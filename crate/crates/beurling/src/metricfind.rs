//! Certified interval-exclusion finder for gap-preserving `alpha = e^beta`.
//!
//! For a base system whose square-root sum converges, every bad event
//! `|alpha^k m - n| < delta` confines `beta = ln alpha` to an explicit short
//! interval. Enumerating those intervals over a finite cutoff and bounding
//! the unenumerated remainder by an outward-rounded analytic tail leaves a
//! certified survivor region inside `[t, 2t]`; any rational `beta` picked
//! well inside it yields an `alpha` that no enumerated triple can collapse,
//! with the residual measure quantifying what the cutoff left unchecked.

use crate::exactnum::{
    self, const_interval, functions, ConstKey, Enclosure, ExactError, Interval, LinForm, PrecisionCfg, RealScalar,
};
use crate::semigroup::{self, Element, GapReport, GeneratorSet, SemigroupError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("the base system violates the gap hypothesis: {0}")]
    Hypothesis(String),
    #[error("no surviving interval wider than twice the residual; diagnostics: {0}")]
    NotFound(String),
    #[error("the empirical gap check failed on a pair not involving alpha; this indicates an implementation bug: {0}")]
    EmpiricalCheck(String),
    #[error("the empirical gap check failed on an alpha pair; a residual-region triple is possible: {0}")]
    ResidualCollision(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// Two-sided bound on `S = sum over the base system of 1/sqrt(m)`.
#[derive(Debug, Clone)]
pub struct SqrtSumBound {
    /// Partial sum over the enumerated prefix, rounded down.
    pub s_lower: BigRational,
    /// Euler product over the generators, rounded up.
    pub s_upper: BigRational,
    /// Enumeration cutoff used for the partial sum.
    pub cutoff: u64,
    pub tail_method: &'static str,
}

impl SqrtSumBound {
    /// Certified overestimate of the tail beyond the cutoff.
    pub fn tail(&self) -> BigRational {
        let t = &self.s_upper - &self.s_lower;
        if t.is_negative() {
            BigRational::zero()
        } else {
            t
        }
    }
}

fn inv_sqrt_enclosure(v: &RealScalar, p: u32) -> Interval {
    let iv = v.eval(p);
    let root = functions::sqrt_interval(&iv, p);
    root.recip(p)
}

/// `S_lower <= S <= S_upper` with the lower bound from the enumerated
/// partial sum and the upper from the Euler product
/// `prod (1 + 1/(sqrt(g) - 1))`, both outward rounded.
pub fn sqrt_sum(
    gprime: &GeneratorSet,
    cutoff: u64,
    cfg: &PrecisionCfg,
) -> Result<SqrtSumBound, MetricError> {
    let p = 128u32;
    // partial sum over B' up to the cutoff, lower endpoints
    let (elems, _, _) = semigroup::enumerate(gprime, &RealScalar::from_u64(cutoff), cfg);
    let mut s_lower = BigRational::zero();
    for e in &elems {
        s_lower += inv_sqrt_enclosure(&e.value, p).lo_rational();
    }
    debug_assert!(s_lower >= BigRational::one() || elems.is_empty());
    // Euler product, upper endpoints; escalate until sqrt(g) - 1 is
    // certified positive
    let mut s_upper = BigRational::one();
    for g in gprime.generators() {
        let mut pb = p;
        let factor_hi = loop {
            let root = functions::sqrt_interval(&g.eval(pb), pb);
            let denom = root.sub(&Interval::one(), pb);
            if denom.strictly_positive() {
                break denom.recip(pb).add(&Interval::one(), pb).hi_rational();
            }
            if pb >= cfg.max_bits {
                return Err(MetricError::Precondition(format!(
                    "sqrt({g}) - 1 could not be certified positive"
                )));
            }
            pb = (pb * 2).min(cfg.max_bits);
        };
        s_upper *= factor_hi;
    }
    // the partial sum can exceed a tight product only by rounding; clamp
    if s_lower > s_upper {
        s_lower = s_upper.clone();
    }
    Ok(SqrtSumBound {
        s_lower,
        s_upper,
        cutoff,
        tail_method: "euler product minus enumerated partial sum",
    })
}

/// One excluded interval for `beta`, clipped to `[t, 2t]`, with the triple
/// that produced it.
#[derive(Debug, Clone)]
pub struct BadInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub m: Element,
    pub n: Element,
    pub k: u64,
}

/// The clipped exclusion set with its certified residual.
#[derive(Debug)]
pub struct BadIntervalSet {
    pub t: u64,
    pub delta: BigRational,
    pub cutoff: u64,
    pub intervals: Vec<BadInterval>,
    /// Total length of the listed (clipped, merged-free) intervals.
    pub listed_measure: BigRational,
    /// Certified upper bound on excluded-but-unenumerated measure.
    pub residual: BigRational,
    /// Complement of the listed intervals inside `[t, 2t]`.
    pub survivors: Vec<(BigRational, BigRational)>,
    pub s_bound: SqrtSumBound,
    /// Outward-rounded `1 + ln 6`.
    pub c_harmonic_upper: BigRational,
    /// Outward-rounded `6 c delta e^(-t/2) S_upper^2`, the analytic measure
    /// bound for the whole exclusion set.
    pub analytic_bound: BigRational,
}

/// Natural-log enclosure of an element value.
fn log_enclosure(v: &RealScalar, p: u32) -> Interval {
    match v.log_linform() {
        Some(lf) => lf.eval(p),
        None => functions::ln_interval(&v.eval(p), p),
    }
}

fn exp_neg_half_t_upper(t: u64, p: u32) -> BigRational {
    let half_t = Interval::from_rational(
        &BigRational::new(BigInt::from(t), BigInt::from(2)),
        p,
    );
    functions::exp_interval(&half_t.neg(), p).hi_rational()
}

fn c_harmonic_upper(p: u32) -> BigRational {
    BigRational::one() + functions::ln_rational(&BigRational::from_integer(BigInt::from(6)), p).hi_rational()
}

/// Check the standing precondition `t > 4 delta` and `t > ln(3 delta)`.
fn check_preconditions(t: u64, delta: &BigRational) -> Result<(), MetricError> {
    let tq = BigRational::from_integer(BigInt::from(t));
    let four_delta = BigRational::from_integer(BigInt::from(4)) * delta;
    if tq <= four_delta {
        return Err(MetricError::Precondition(format!(
            "t > 4*delta fails: {t} <= {four_delta}"
        )));
    }
    let three_delta = BigRational::from_integer(BigInt::from(3)) * delta;
    if three_delta > BigRational::one() {
        let ln3d = functions::ln_rational(&three_delta, 96).hi_rational();
        if tq <= ln3d {
            return Err(MetricError::Precondition(format!(
                "t > ln(3*delta) fails: {t} <= {ln3d}"
            )));
        }
    }
    Ok(())
}

/// Enumerate the bad intervals for `beta` in `[t, 2t]` from triples of the
/// base system up to the cutoff, and bound the remainder.
pub fn bad_intervals(
    gprime: &GeneratorSet,
    delta: &BigRational,
    t: u64,
    cutoff: u64,
    cfg: &PrecisionCfg,
) -> Result<BadIntervalSet, MetricError> {
    assert!(delta.is_positive());
    check_preconditions(t, delta)?;
    let s_bound = sqrt_sum(gprime, cutoff, cfg)?;
    let p = 160u32;
    let tq = BigRational::from_integer(BigInt::from(t));
    let two_tq = &tq * BigRational::from_integer(BigInt::from(2));

    let (elems, _, _) = semigroup::enumerate(gprime, &RealScalar::from_u64(cutoff), cfg);
    let logs: Vec<Enclosure> = elems
        .iter()
        .map(|e| Enclosure::from_interval(&log_enclosure(&e.value, p)))
        .collect();
    let values: Vec<Enclosure> = elems
        .iter()
        .map(|e| Enclosure::from_interval(&e.value.eval(p)))
        .collect();
    let ln2_hi = const_interval(ConstKey::Ln(2), p).hi_rational();

    let mut intervals: Vec<BadInterval> = Vec::new();
    for i in 0..elems.len() {
        for j in 0..elems.len() {
            if i == j {
                continue;
            }
            // pair constraint n > e^t m / 2, i.e. ln n - ln m > t - ln 2;
            // keep the pair unless it certainly fails (overcounting is safe)
            let l_lo = &logs[j].lo - &logs[i].hi;
            let l_hi = &logs[j].hi - &logs[i].lo;
            if l_hi <= &tq - &ln2_hi {
                continue;
            }
            if !l_hi.is_positive() {
                continue;
            }
            // admissible k: interval (L - 2d/n, L + d/n)/k meets [t, 2t]
            let n_lo = &values[j].lo;
            if !n_lo.is_positive() {
                continue;
            }
            let rad_lo = BigRational::from_integer(BigInt::from(2)) * delta / n_lo;
            let rad_hi = delta / n_lo;
            let k_min = ((&l_lo - &rad_lo) / &two_tq)
                .ceil()
                .to_integer()
                .to_i64()
                .unwrap_or(1)
                .max(1) as u64;
            let k_max_q = (&l_hi + &rad_hi) / &tq;
            let k_max = k_max_q.floor().to_integer().to_i64().unwrap_or(0);
            if k_max < k_min as i64 {
                continue;
            }
            for k in k_min..=(k_max as u64) {
                let kq = BigRational::from_integer(BigInt::from(k));
                let lo = (&l_lo - &rad_lo) / &kq;
                let hi = (&l_hi + &rad_hi) / &kq;
                let clip_lo = lo.max(tq.clone());
                let clip_hi = hi.min(two_tq.clone());
                if clip_lo < clip_hi {
                    intervals.push(BadInterval {
                        lo: clip_lo,
                        hi: clip_hi,
                        m: elems[i].clone(),
                        n: elems[j].clone(),
                        k,
                    });
                }
            }
        }
    }

    // merge for the measure and the complement
    let mut sorted: Vec<(BigRational, BigRational)> = intervals
        .iter()
        .map(|b| (b.lo.clone(), b.hi.clone()))
        .collect();
    sorted.sort();
    let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
    for (lo, hi) in sorted {
        match merged.last_mut() {
            Some((_, mhi)) if &lo <= mhi => {
                if hi > *mhi {
                    *mhi = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    let listed_measure: BigRational = merged.iter().map(|(lo, hi)| hi - lo).sum();
    let mut survivors: Vec<(BigRational, BigRational)> = Vec::new();
    let mut cursor = tq.clone();
    for (lo, hi) in &merged {
        if lo > &cursor {
            survivors.push((cursor.clone(), lo.clone()));
        }
        if hi > &cursor {
            cursor = hi.clone();
        }
    }
    if cursor < two_tq {
        survivors.push((cursor, two_tq.clone()));
    }

    let c_up = c_harmonic_upper(p);
    let e_up = exp_neg_half_t_upper(t, p);
    let six = BigRational::from_integer(BigInt::from(6));
    let residual = &six * &c_up * delta * &e_up * &s_bound.s_upper * s_bound.tail();
    let analytic_bound = &six * &c_up * delta * &e_up * &s_bound.s_upper * &s_bound.s_upper;

    Ok(BadIntervalSet {
        t,
        delta: delta.clone(),
        cutoff,
        intervals,
        listed_measure,
        residual,
        survivors,
        s_bound,
        c_harmonic_upper: c_up,
        analytic_bound,
    })
}

/// Certificate for a chosen `alpha = e^beta`.
#[derive(Debug)]
pub struct AlphaCertificate {
    pub t: u64,
    pub beta: BigRational,
    pub alpha: RealScalar,
    pub alpha_enclosure: Enclosure,
    pub surviving: (BigRational, BigRational),
    pub residual: BigRational,
    pub listed_measure: BigRational,
    pub analytic_bound: BigRational,
    pub s_bound: SqrtSumBound,
    /// Empirical gap report of the adjoined system up to the verify bound.
    pub empirical: GapReport,
}

#[derive(Debug, Clone)]
pub struct FindAlphaConfig {
    /// Explicit scale parameter; `None` selects the smallest admissible `t`.
    pub t: Option<u64>,
    /// Enumeration cutoff for the exclusion set.
    pub cutoff: u64,
}

impl Default for FindAlphaConfig {
    fn default() -> Self {
        FindAlphaConfig {
            t: None,
            cutoff: 1_000_000,
        }
    }
}

/// Smallest integer `t` meeting the preconditions with the analytic bound
/// below `t` (the admissibility inequality).
pub fn select_t(
    gprime: &GeneratorSet,
    delta: &BigRational,
    cutoff: u64,
    cfg: &PrecisionCfg,
) -> Result<u64, MetricError> {
    let s = sqrt_sum(gprime, cutoff, cfg)?;
    let p = 160u32;
    let c_up = c_harmonic_upper(p);
    let six = BigRational::from_integer(BigInt::from(6));
    let prefix = &six * &c_up * delta * &s.s_upper * &s.s_upper;
    for t in 1..=256u64 {
        if check_preconditions(t, delta).is_err() {
            continue;
        }
        let bound = &prefix * exp_neg_half_t_upper(t, p);
        if bound < BigRational::from_integer(BigInt::from(t)) {
            return Ok(t);
        }
    }
    Err(MetricError::NotFound(
        "no admissible t up to 256; the square-root sum may diverge".to_string(),
    ))
}

/// Run the exclusion construction and return a certified `alpha`.
///
/// The base system must already satisfy the gap hypothesis up to the verify
/// bound (checked). The returned certificate records the surviving interval,
/// the residual bound, and an empirical gap report of the adjoined system.
pub fn find_alpha(
    gprime: &GeneratorSet,
    delta: &BigRational,
    x_verify: u64,
    options: &FindAlphaConfig,
    cfg: &PrecisionCfg,
) -> Result<AlphaCertificate, MetricError> {
    // hypothesis: the base system alone is delta-lacunary up to the bound
    let base_report = semigroup::gap_report(
        gprime,
        &RealScalar::from_u64(x_verify),
        delta,
        cfg,
    );
    if !base_report.zero_violations() || !base_report.unresolved.is_empty() {
        return Err(MetricError::Hypothesis(format!(
            "{} violations, {} unresolved up to {x_verify}",
            base_report.violations.len(),
            base_report.unresolved.len()
        )));
    }

    let t = match options.t {
        Some(t) => {
            check_preconditions(t, delta)?;
            t
        }
        None => select_t(gprime, delta, options.cutoff, cfg)?,
    };
    let bad = bad_intervals(gprime, delta, t, options.cutoff, cfg)?;

    // widest surviving interval (ties: smallest left endpoint)
    let two_residual = &bad.residual * BigRational::from_integer(BigInt::from(2));
    let widest = bad
        .survivors
        .iter()
        .max_by(|a, b| {
            let wa = &a.1 - &a.0;
            let wb = &b.1 - &b.0;
            wa.cmp(&wb).then_with(|| b.0.cmp(&a.0))
        })
        .cloned();
    let (lo, hi) = match widest {
        Some(iv) if (&iv.1 - &iv.0) > two_residual => iv,
        other => {
            return Err(MetricError::NotFound(format!(
                "widest survivor {:?} vs residual {}",
                other, bad.residual
            )))
        }
    };
    let center = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
    // shorten to a compact rational near the center; the allowed slack keeps
    // the margin to both endpoints above the residual
    let width = &hi - &lo;
    let slack = (&width / BigRational::from_integer(BigInt::from(2)) - &bad.residual)
        / BigRational::from_integer(BigInt::from(2));
    let beta = shorten_rational(&center, &slack);
    debug_assert!(beta > lo && beta < hi);

    // alpha = e^beta; reject beta = ln(integer) by direct enclosure check
    // (a rational beta cannot be the log of an integer, and the check
    // certifies it concretely)
    let alpha = RealScalar::exp_form(LinForm::from_offset(beta.clone()));
    let alpha_enclosure = {
        let mut p = cfg.initial_bits;
        loop {
            let enc = Enclosure::from_interval(&alpha.eval(p));
            let has_integer = enc.hi.floor() >= enc.lo.ceil();
            if !has_integer {
                break enc;
            }
            if p >= cfg.max_bits {
                return Err(MetricError::Precondition(format!(
                    "could not separate e^{beta} from the integers"
                )));
            }
            p = (p * 2).min(cfg.max_bits);
        }
    };

    // empirical check of the adjoined system
    let adjoined = gprime.adjoin(alpha.clone(), cfg)?;
    let empirical = semigroup::gap_report(&adjoined, &RealScalar::from_u64(x_verify), delta, cfg);
    if !empirical.zero_violations() {
        // a violation not involving alpha contradicts the hypothesis check
        let alpha_idx = adjoined
            .generators()
            .iter()
            .position(|g| g == &alpha)
            .expect("alpha was adjoined") as u32;
        let involves_alpha = empirical.violations.iter().any(|v| {
            v.a.exps.iter().any(|&(i, _)| i == alpha_idx)
                || v.b.exps.iter().any(|&(i, _)| i == alpha_idx)
        });
        let detail = format!("{} violations at delta {delta}", empirical.violations.len());
        return Err(if involves_alpha {
            MetricError::ResidualCollision(detail)
        } else {
            MetricError::EmpiricalCheck(detail)
        });
    }

    Ok(AlphaCertificate {
        t,
        beta,
        alpha,
        alpha_enclosure,
        surviving: (lo, hi),
        residual: bad.residual.clone(),
        listed_measure: bad.listed_measure.clone(),
        analytic_bound: bad.analytic_bound.clone(),
        s_bound: bad.s_bound,
        empirical,
    })
}

/// The dyadic rational with the smallest power-of-two denominator within
/// `slack` of `center`.
fn shorten_rational(center: &BigRational, slack: &BigRational) -> BigRational {
    debug_assert!(slack.is_positive());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut q = BigInt::one();
    loop {
        let scaled = center * BigRational::from_integer(q.clone());
        let rounded = (&scaled + &half).floor().to_integer();
        let cand = BigRational::new(rounded, q.clone());
        if (&cand - center).abs() <= *slack {
            return cand;
        }
        q *= 2;
    }
}

/// Certified check that `|e^(k beta) m - n| >= delta` (used by the survival
/// soundness tests); returns false when the gap certifies below delta.
pub fn triple_clear(
    beta: &BigRational,
    m: &RealScalar,
    n: &RealScalar,
    k: u64,
    delta: &BigRational,
    cfg: &PrecisionCfg,
) -> bool {
    let kq = BigRational::from_integer(BigInt::from(k));
    let alpha_k = RealScalar::exp_form(LinForm::from_offset(beta * &kq));
    let lhs = alpha_k.mul(m);
    let mut p = cfg.initial_bits;
    loop {
        let enc = Enclosure::from_interval(&exactnum::diff_interval(&lhs, n, p).abs());
        if enc.certainly_at_least(delta) {
            return true;
        }
        if enc.certainly_below(delta) || p >= cfg.max_bits {
            return false;
        }
        p = (p * 2).min(cfg.max_bits);
    }
}
