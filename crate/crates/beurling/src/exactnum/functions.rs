//! Certified enclosures for sqrt, ln, exp, atan, pi and small-angle sin.
//!
//! Series are evaluated in fixed point at `w = p + GUARD` fractional bits.
//! Each pass keeps an under- and an over-estimate of the current power term,
//! rounds every intermediate in the direction that keeps the estimate on its
//! side, and pads the final sum with an explicit tail bound. The result is an
//! interval guaranteed to contain the exact value.

use super::dyadic::{Dir, Dyadic, Interval};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const GUARD: u32 = 32;

/// `floor`/`ceil` of `d * 2^w` as a big integer.
fn fixpt(d: &Dyadic, w: u32, dir: Dir) -> BigInt {
    let r = d.to_rational();
    let scaled_num = r.numer() << w as u64;
    let (q, rem) = scaled_num.div_mod_floor(r.denom());
    if dir == Dir::Up && !rem.is_zero() {
        q + 1
    } else {
        q
    }
}

fn unfix(v: BigInt, w: u32) -> Dyadic {
    Dyadic::new(v, -(w as i64))
}

/// Directed `a*b / 2^w` for nonnegative `a, b`.
fn mul_shift(a: &BigInt, b: &BigInt, w: u32, dir: Dir) -> BigInt {
    debug_assert!(!a.is_negative() && !b.is_negative());
    let prod = a * b;
    match dir {
        Dir::Down => prod >> w as u64,
        Dir::Up => {
            let mask = (BigInt::one() << w as u64) - BigInt::one();
            let extra = if (&prod & mask).is_zero() { 0 } else { 1 };
            (prod >> w as u64) + extra
        }
    }
}

/// Directed `n / d` for nonnegative `n` and positive small `d`.
fn div_small(n: &BigInt, d: u64, dir: Dir) -> BigInt {
    let d = BigInt::from(d);
    let (q, r) = n.div_mod_floor(&d);
    if dir == Dir::Up && !r.is_zero() {
        q + 1
    } else {
        q
    }
}

/// Enclosure of sqrt of a nonnegative dyadic.
fn sqrt_dyadic(d: &Dyadic, p: u32) -> Interval {
    assert!(!d.is_negative(), "sqrt of negative dyadic");
    if d.is_zero() {
        return Interval::zero();
    }
    let t = (p + 2) as i64;
    let r = d.to_rational();
    // value = n/den with den a power of two; write exponent adjustments so the
    // scaled radicand is an integer with an even power-of-two factor.
    let num = r.numer();
    let den_bits = (r.denom().bits() - 1) as i64; // den = 2^den_bits
    // value = num * 2^(-den_bits); sqrt = sqrt(num * 2^(2t - den_bits)) * 2^(-t)
    let shift = 2 * t - den_bits;
    let (scaled, extra) = if shift >= 0 {
        (num << shift as u64, 0i64)
    } else {
        // make the shift even and nonnegative by pulling out 4^k
        let k = (-shift + 1) / 2;
        (num << ((shift + 2 * k) as u64), -k)
    };
    let u = scaled.sqrt();
    let lo = Dyadic::new(u.clone(), -t + extra);
    if &u * &u == scaled {
        return Interval::point(lo);
    }
    let hi = Dyadic::new(u + 1, -t + extra);
    Interval::new(lo, hi)
}

/// Enclosure of sqrt over an interval with nonnegative lower bound.
pub fn sqrt_interval(x: &Interval, p: u32) -> Interval {
    assert!(
        !x.lo().is_negative(),
        "sqrt_interval: interval extends below zero"
    );
    Interval::new(
        sqrt_dyadic(x.lo(), p).lo().clone(),
        sqrt_dyadic(x.hi(), p).hi().clone(),
    )
}

/// Enclosure of sqrt of a nonnegative rational.
pub fn sqrt_rational(r: &BigRational, p: u32) -> Interval {
    assert!(!r.is_negative());
    let w = p + GUARD;
    sqrt_interval(&Interval::from_rational(r, w), p)
}

/// atanh power series at a fixed-point value `0 <= v <= 1/3`, both directions.
/// Returns (lower, upper) fixed-point sums of `v + v^3/3 + v^5/5 + ...`.
fn atanh_fix(v_dn: &BigInt, v_up: &BigInt, w: u32) -> (BigInt, BigInt) {
    let sq_dn = mul_shift(v_dn, v_dn, w, Dir::Down);
    let sq_up = mul_shift(v_up, v_up, w, Dir::Up);
    let mut pw_dn = v_dn.clone();
    let mut pw_up = v_up.clone();
    let mut sum_dn = v_dn.clone();
    let mut sum_up = v_up.clone();
    let mut k = 1u64;
    loop {
        pw_dn = mul_shift(&pw_dn, &sq_dn, w, Dir::Down);
        pw_up = mul_shift(&pw_up, &sq_up, w, Dir::Up);
        sum_dn += div_small(&pw_dn, 2 * k + 1, Dir::Down);
        sum_up += div_small(&pw_up, 2 * k + 1, Dir::Up);
        k += 1;
        if pw_up <= BigInt::from(1024) {
            // tail <= pw * u^2/(1-u^2) <= pw/8 for u <= 1/3
            sum_up += &pw_up + 1;
            break;
        }
    }
    (sum_dn, sum_up)
}

/// Enclosure of `ln 2`.
pub fn ln2(p: u32) -> Interval {
    let w = p + GUARD;
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let v_dn = fixpt(&Dyadic::from_rational(&third, w, Dir::Down), w, Dir::Down);
    let v_up = fixpt(&Dyadic::from_rational(&third, w, Dir::Up), w, Dir::Up);
    let (s_dn, s_up) = atanh_fix(&v_dn, &v_up, w);
    Interval::new(unfix(s_dn * 2, w), unfix(s_up * 2, w))
}

/// Enclosure of `ln x` for a positive rational `x`.
pub fn ln_rational(x: &BigRational, p: u32) -> Interval {
    assert!(x.is_positive(), "ln of nonpositive rational");
    let w = p + GUARD;
    // x = m * 2^e with m in [1, 2)
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigRational::from_integer(BigInt::from(2));
    let pow2 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(BigInt::one() << k as u64)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-k) as u64)
        }
    };
    let mut m = x / pow2(e);
    if m < BigRational::one() {
        e -= 1;
        m = &m * &two;
    } else if m >= two {
        e += 1;
        m = &m / &two;
    }
    debug_assert!(m >= BigRational::one() && m < two);
    // ln m = 2 atanh((m-1)/(m+1)), argument in [0, 1/3)
    let u = (&m - BigRational::one()) / (&m + BigRational::one());
    let v_dn = fixpt(&Dyadic::from_rational(&u, w, Dir::Down), w, Dir::Down);
    let v_up = fixpt(&Dyadic::from_rational(&u, w, Dir::Up), w, Dir::Up);
    let (s_dn, s_up) = atanh_fix(&v_dn, &v_up, w);
    let ln_m = Interval::new(unfix(s_dn * 2, w), unfix(s_up * 2, w));
    let e_ln2 = ln2(w).mul(&Interval::from_i64(e), w);
    ln_m.add(&e_ln2, w).add(&Interval::zero(), p)
}

/// Enclosure of `ln` over an interval with positive lower bound.
pub fn ln_interval(x: &Interval, p: u32) -> Interval {
    assert!(x.lo().is_positive(), "ln_interval: not strictly positive");
    let lo = ln_rational(&x.lo_rational(), p);
    let hi = ln_rational(&x.hi_rational(), p);
    Interval::new(lo.lo().clone(), hi.hi().clone())
}

/// Alternating series core for atan (`den_step = false`) and sin
/// (`den_step = true`). Input `0 <= v`, fixed point at `w` bits; atan needs
/// `v < 1/8`, sin needs `v <= 3/2`. Returns enclosing fixed-point sums.
fn alternating_fix(v_dn: &BigInt, v_up: &BigInt, w: u32, sin_denoms: bool) -> (BigInt, BigInt) {
    let sq_dn = mul_shift(v_dn, v_dn, w, Dir::Down);
    let sq_up = mul_shift(v_up, v_up, w, Dir::Up);
    let mut pw_dn = v_dn.clone();
    let mut pw_up = v_up.clone();
    let mut sum_dn = v_dn.clone();
    let mut sum_up = v_up.clone();
    let mut k = 1u64;
    loop {
        pw_dn = mul_shift(&pw_dn, &sq_dn, w, Dir::Down);
        pw_up = mul_shift(&pw_up, &sq_up, w, Dir::Up);
        if sin_denoms {
            let d = (2 * k) * (2 * k + 1);
            pw_dn = div_small(&pw_dn, d, Dir::Down);
            pw_up = div_small(&pw_up, d, Dir::Up);
        }
        let (t_dn, t_up) = if sin_denoms {
            (pw_dn.clone(), pw_up.clone())
        } else {
            (
                div_small(&pw_dn, 2 * k + 1, Dir::Down),
                div_small(&pw_up, 2 * k + 1, Dir::Up),
            )
        };
        if k % 2 == 1 {
            // negative term: overestimate its magnitude on the low side
            sum_dn -= &t_up;
            sum_up -= &t_dn;
        } else {
            sum_dn += &t_dn;
            sum_up += &t_up;
        }
        k += 1;
        if pw_up <= BigInt::from(1024) {
            // next unadded term magnitude is at most pw_up + 1
            sum_dn -= &pw_up + 1;
            sum_up += &pw_up + 1;
            break;
        }
    }
    (sum_dn, sum_up)
}

/// Enclosure of `atan v` for a nonnegative interval `v` with `v.hi` finite.
/// The argument is range-reduced by `v -> v / (1 + sqrt(1 + v^2))` (angle
/// halving) until it drops below 1/8.
fn atan_interval_nonneg(v: &Interval, p: u32) -> Interval {
    let w = p + GUARD;
    let mut x = v.clone();
    let mut halvings = 0u32;
    let eighth = Dyadic::new(BigInt::one(), -3);
    while x.hi().cmp_dyadic(&eighth) != std::cmp::Ordering::Less {
        let one = Interval::one();
        let s = sqrt_interval(&one.add(&x.mul(&x, w), w), w);
        x = x.div(&one.add(&s, w), w);
        halvings += 1;
        assert!(halvings <= 64, "atan reduction failed to converge");
    }
    let v_dn = fixpt(x.lo(), w, Dir::Down).max(BigInt::zero());
    let v_up = fixpt(x.hi(), w, Dir::Up);
    let (s_dn, s_up) = alternating_fix(&v_dn, &v_up, w, false);
    Interval::new(
        unfix(s_dn, w).shl(halvings as i64),
        unfix(s_up, w).shl(halvings as i64),
    )
}

/// Enclosure of `atan(a/b)` for integers with `b > 0`.
pub fn atan_rational(t: &BigRational, p: u32) -> Interval {
    let w = p + GUARD;
    if t.is_zero() {
        return Interval::zero();
    }
    if t.is_negative() {
        return atan_rational(&-t, p).neg();
    }
    atan_interval_nonneg(&Interval::from_rational(t, w), p)
}

/// Enclosure of pi via Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(p: u32) -> Interval {
    let w = p + GUARD;
    let a5 = atan_rational(&BigRational::new(BigInt::one(), BigInt::from(5)), w);
    let a239 = atan_rational(&BigRational::new(BigInt::one(), BigInt::from(239)), w);
    a5.mul(&Interval::from_i64(16), w)
        .sub(&a239.mul(&Interval::from_i64(4), w), w)
        .add(&Interval::zero(), p)
}

/// Enclosure of `exp x` at a dyadic point.
fn exp_dyadic(x: &Dyadic, p: u32) -> Interval {
    let w = p + GUARD + 16;
    if x.is_zero() {
        return Interval::one();
    }
    // x = k ln2 + r with |r| <= 0.75; k need not be exact, r is certified.
    let ln2_approx = BigRational::new(BigInt::from(6_243_314_768_165_359i64), BigInt::one() << 53);
    let ratio = x.to_rational() / ln2_approx;
    let k_big = (ratio + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
    let k = k_big
        .to_integer()
        .to_i64()
        .expect("exp argument out of supported range");
    assert!(k.unsigned_abs() < (1u64 << 40), "exp argument too large");
    let r = Interval::point(x.clone()).sub(&ln2(w).mul(&Interval::from_i64(k), w), w);
    let three_quarters = Dyadic::new(BigInt::from(3), -2);
    assert!(
        r.hi().abs().cmp_dyadic(&three_quarters) != std::cmp::Ordering::Greater
            && r.lo().abs().cmp_dyadic(&three_quarters) != std::cmp::Ordering::Greater,
        "exp range reduction out of bounds"
    );
    // Taylor sum of r^n/n! in interval arithmetic at w bits.
    let mut term = Interval::one();
    let mut sum = Interval::one();
    let mut n = 1i64;
    loop {
        term = term.mul(&r, w).div(&Interval::from_i64(n), w);
        sum = sum.add(&term, w);
        let mag = Dyadic::max_d(&term.lo().abs(), &term.hi().abs());
        n += 1;
        if n > 8 && mag.cmp_dyadic(&Dyadic::new(BigInt::one(), -(w as i64))) == std::cmp::Ordering::Less
        {
            // |r| <= 3/4 so the dropped tail is below twice the last term.
            let pad = mag.shl(1).add_exact(&Dyadic::new(BigInt::one(), -(w as i64) + 2));
            sum = sum.widen_abs(&pad);
            break;
        }
        assert!(n < 10_000, "exp series failed to converge");
    }
    Interval::new(sum.lo().shl(k), sum.hi().shl(k)).add(&Interval::zero(), p)
}

/// Enclosure of `exp` over an interval.
pub fn exp_interval(x: &Interval, p: u32) -> Interval {
    Interval::new(
        exp_dyadic(x.lo(), p).lo().clone(),
        exp_dyadic(x.hi(), p).hi().clone(),
    )
}

/// Enclosure of `sin` over an interval contained in `[-3/2, 3/2]`, where the
/// sine is monotone.
pub fn sin_interval(x: &Interval, p: u32) -> Interval {
    let w = p + GUARD;
    let bound = Dyadic::new(BigInt::from(3), -1);
    assert!(
        x.lo().abs().cmp_dyadic(&bound) != std::cmp::Ordering::Greater
            && x.hi().abs().cmp_dyadic(&bound) != std::cmp::Ordering::Greater,
        "sin_interval argument outside [-3/2, 3/2]"
    );
    let sin_point = |d: &Dyadic| -> Interval {
        if d.is_zero() {
            return Interval::zero();
        }
        let neg = d.is_negative();
        let a = d.abs();
        let v_dn = fixpt(&a, w, Dir::Down);
        let v_up = fixpt(&a, w, Dir::Up);
        let (s_dn, s_up) = alternating_fix(&v_dn, &v_up, w, true);
        let iv = Interval::new(unfix(s_dn, w), unfix(s_up, w));
        if neg {
            iv.neg()
        } else {
            iv
        }
    };
    Interval::new(
        sin_point(x.lo()).lo().clone(),
        sin_point(x.hi()).hi().clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    /// Parse a decimal constant into a rational, exactly.
    fn dec(s: &str) -> BigRational {
        let (int_part, frac_part) = s.split_once('.').unwrap();
        let digits = frac_part.len() as u32;
        let num = BigInt::from_str(&format!("{int_part}{frac_part}")).unwrap();
        BigRational::new(num, BigInt::from(10u32).pow(digits))
    }

    /// The reference strings are 40-55 digit truncations, so allow symmetric
    /// slack at the reference's own accuracy.
    fn assert_encloses(iv: &Interval, truth: &BigRational, label: &str) {
        let eps = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(38));
        assert!(
            iv.lo_rational() <= truth + &eps && truth - &eps <= iv.hi_rational(),
            "{label}: enclosure {} .. {} misses truth",
            iv.lo_rational(),
            iv.hi_rational()
        );
        assert!(
            iv.lo_rational() >= truth - BigRational::new(BigInt::one(), BigInt::from(1 << 10))
                && iv.hi_rational() <= truth + BigRational::new(BigInt::one(), BigInt::from(1 << 10)),
            "{label}: enclosure implausibly wide"
        );
    }

    fn width_below(iv: &Interval, bits: i64) -> bool {
        let w = iv.width();
        w.is_zero() || w.mag_exp() <= -bits
    }

    // Reference digit strings computed independently with 60-digit arithmetic.
    const PI_55: &str = "3.141592653589793238462643383279502884197169399375105821";
    const LN2_55: &str = "0.6931471805599453094172321214581765680755001343602552541";
    const LN3_55: &str = "1.098612288668109691395245236922525704647490557822749452";
    const LN5_55: &str = "1.609437912434100374600759333226187639525601354268517722";
    const SQRT2_55: &str = "1.414213562373095048801688724209698078569671875376948073";
    const ATAN_HALF_55: &str = "0.4636476090008061162142562314612144020285370542861202638";
    const ATAN_2_3_55: &str = "0.5880026035475675512456110806250854276017072460559243537";

    #[test]
    fn sqrt_two_enclosure() {
        let r = BigRational::from_integer(BigInt::from(2));
        for p in [16u32, 64, 256] {
            let iv = sqrt_rational(&r, p);
            assert_encloses(&iv, &dec(SQRT2_55), "sqrt2");
            assert!(width_below(&iv, p as i64 - 2));
        }
    }

    #[test]
    fn sqrt_exact_square() {
        let iv = sqrt_rational(&BigRational::from_integer(BigInt::from(49)), 64);
        let seven = BigRational::from_integer(BigInt::from(7));
        assert!(iv.lo_rational() <= seven && seven <= iv.hi_rational());
        assert!(width_below(&iv, 60));
    }

    #[test]
    fn ln_constants() {
        for (x, truth) in [(2i64, LN2_55), (3, LN3_55), (5, LN5_55)] {
            let iv = ln_rational(&BigRational::from_integer(BigInt::from(x)), 128);
            assert_encloses(&iv, &dec(truth), "ln");
            assert!(width_below(&iv, 120));
        }
    }

    #[test]
    fn ln_small_argument() {
        // ln(1/2) = -ln 2
        let iv = ln_rational(&BigRational::new(BigInt::one(), BigInt::from(2)), 96);
        assert_encloses(&iv, &-dec(LN2_55), "ln(1/2)");
    }

    #[test]
    fn atan_constants() {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let iv = atan_rational(&half, 128);
        assert_encloses(&iv, &dec(ATAN_HALF_55), "atan(1/2)");
        assert!(width_below(&iv, 120));

        let tt = BigRational::new(BigInt::from(2), BigInt::from(3));
        let iv = atan_rational(&tt, 128);
        assert_encloses(&iv, &dec(ATAN_2_3_55), "atan(2/3)");
    }

    #[test]
    fn pi_enclosure() {
        for p in [64u32, 160] {
            let iv = pi(p);
            assert_encloses(&iv, &dec(PI_55), "pi");
            assert!(width_below(&iv, p as i64 - 4));
        }
    }

    #[test]
    fn exp_values() {
        // e = exp(1) = 2.718281828459045235360287471352662497757247093699959575
        let e = dec("2.718281828459045235360287471352662497757247093699959575");
        let iv = exp_interval(&Interval::one(), 128);
        assert_encloses(&iv, &e, "e");
        assert!(width_below(&iv, 120));
        // exp(0) = 1 exactly
        let iv = exp_interval(&Interval::zero(), 64);
        let one = BigRational::one();
        assert!(iv.lo_rational() <= one && one <= iv.hi_rational());
        // exp(-1) = 1/e
        let iv = exp_interval(
            &Interval::from_rational(&BigRational::from_integer(BigInt::from(-1)), 64),
            96,
        );
        assert_encloses(&iv, &(BigRational::one() / e), "1/e");
    }

    #[test]
    fn exp_large_argument() {
        // e^(2 pi) = 535.4916555247647365030493295890471814778...
        let two_pi = pi(160).mul(&Interval::from_i64(2), 160);
        let iv = exp_interval(&two_pi, 128);
        assert_encloses(&iv, &dec("535.4916555247647365030493295890471814778"), "e^2pi");
    }

    #[test]
    fn sin_small_values() {
        // sin(1) = 0.841470984807896506652502321630298999622563060798371065
        let one = Interval::one();
        let iv = sin_interval(&one, 96);
        assert_encloses(
            &iv,
            &dec("0.841470984807896506652502321630298999622563060798371065"),
            "sin 1",
        );
        // sin is odd
        let iv_neg = sin_interval(&one.neg(), 96);
        assert_encloses(
            &iv_neg,
            &-dec("0.841470984807896506652502321630298999622563060798371065"),
            "sin -1",
        );
    }

    #[test]
    fn width_halves_with_precision() {
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        let mut prev: Option<BigRational> = None;
        for p in [64u32, 128, 256, 512] {
            let w = atan_rational(&third, p).width().to_rational();
            if let Some(pw) = prev {
                assert!(w <= pw / BigRational::from_integer(BigInt::from(2)));
            }
            prev = Some(w);
        }
    }
}
