//! Exact and adaptive-precision arithmetic. No comparison anywhere in the
//! crate relies on fixed-precision floating point: values are exact tagged
//! scalars and every numeric decision goes through certified enclosures that
//! refine until the decision is provable or the precision budget is spent.

pub mod consts;
pub mod dyadic;
pub mod functions;
pub mod gaussian;
pub mod linform;
pub mod quadsurd;
pub mod scalar;

pub use consts::{const_interval, ConstKey};
pub use dyadic::{Dir, Dyadic, Interval};
pub use gaussian::GaussianInt;
pub use linform::LinForm;
pub use quadsurd::{is_squarefree, quad_mul, quad_norm, QuadSurd};
pub use scalar::{compare, mul, Ordering3, PrecisionCfg, RealScalar};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors from exact-arithmetic constructors and precision-bounded queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("radicand {0} is not squarefree (or is below 2)")]
    NotSquarefree(u64),
    #[error("mismatched radicands: {0} vs {1}")]
    RadicandMismatch(u64, u64),
    #[error("value is not positive: {0}")]
    NonPositive(String),
    #[error("base does not factor within the trial-division budget: {0}")]
    UnfactorableBase(String),
    #[error("precision budget exhausted at {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("{0}")]
    Domain(String),
}

/// A certified enclosure with exact rational endpoints. Every dyadic interval
/// converts exactly; exact arithmetic yields point enclosures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Enclosure {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi }
    }

    pub fn point(v: BigRational) -> Enclosure {
        Enclosure {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn from_interval(iv: &Interval) -> Enclosure {
        Enclosure {
            lo: iv.lo_rational(),
            hi: iv.hi_rational(),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// Entirely below `v`.
    pub fn certainly_below(&self, v: &BigRational) -> bool {
        &self.hi < v
    }

    /// Entirely at or above `v`.
    pub fn certainly_at_least(&self, v: &BigRational) -> bool {
        &self.lo >= v
    }

    /// Decimal endpoint strings, rounded outward at `digits` places.
    pub fn decimal_pair(&self, digits: u32) -> (String, String) {
        (
            dec_string_dir(&self.lo, digits, Dir::Down),
            dec_string_dir(&self.hi, digits, Dir::Up),
        )
    }
}

impl std::fmt::Display for Enclosure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (lo, hi) = self.decimal_pair(12);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Decimal string of a rational with `digits` fractional places, rounded in
/// the given direction.
pub fn dec_string_dir(r: &BigRational, digits: u32, dir: Dir) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let mut i = scaled.floor().to_integer();
    if dir == Dir::Up && scaled != BigRational::from_integer(i.clone()) {
        i += 1;
    }
    format_scaled_decimal(&i, digits)
}

/// Decimal string rounded to nearest (ties away from zero).
pub fn dec_string_round(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * BigRational::from_integer(scale);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let shifted = if scaled.is_negative() {
        &scaled - &half
    } else {
        &scaled + &half
    };
    let mut i = shifted.trunc().to_integer();
    // trunc of x+1/2 rounds half away from zero except exactly at .5 borders
    // where trunc already lands on the away value; adjust the -0 case
    if i.is_zero() && scaled.is_negative() {
        i = BigInt::zero();
    }
    format_scaled_decimal(&i, digits)
}

fn format_scaled_decimal(i: &BigInt, digits: u32) -> String {
    let neg = i.is_negative();
    let mag = i.magnitude().to_string();
    let digits = digits as usize;
    let (int_part, frac_part) = if mag.len() > digits {
        let split = mag.len() - digits;
        (mag[..split].to_string(), mag[split..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", mag, width = digits))
    };
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// A decimal rendering with a certified error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalOut {
    pub text: String,
    /// Certified bound on `|text - true value|`; always below `10^-digits`.
    pub error_bound: BigRational,
}

/// Render `a` to `digits` fractional decimal places with certified error
/// below `10^-digits`, escalating precision as needed.
pub fn to_decimal(
    a: &RealScalar,
    digits: u32,
    cfg: &PrecisionCfg,
) -> Result<DecimalOut, ExactError> {
    assert!(digits >= 1, "digits must be at least 1");
    let target = BigRational::new(
        BigInt::from(9),
        BigInt::from(10u32).pow(digits) * BigInt::from(10),
    ); // 0.9 * 10^-digits
    let mut bits_reached = cfg.initial_bits;
    for p in cfg.steps() {
        bits_reached = p;
        let iv = a.eval(p);
        let enc = Enclosure::from_interval(&iv);
        if enc.width() <= target {
            let mid = enc.midpoint();
            let text = dec_string_round(&mid, digits);
            // |emitted - mid| <= 0.5*10^-digits, |mid - true| <= width/2
            let half_ulp = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits) * 2);
            let error_bound = enc.width() / BigRational::from_integer(BigInt::from(2)) + half_ulp;
            return Ok(DecimalOut { text, error_bound });
        }
    }
    Err(ExactError::PrecisionExhausted {
        bits: bits_reached,
    })
}

/// Certified enclosure of `a - b` at working precision `p`.
pub fn diff_interval(a: &RealScalar, b: &RealScalar, p: u32) -> Interval {
    a.eval(p).sub(&b.eval(p), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(dec_string_round(&rat(5, 2), 3), "2.500");
        assert_eq!(dec_string_round(&rat(1, 3), 4), "0.3333");
        assert_eq!(dec_string_round(&rat(2, 3), 4), "0.6667");
        assert_eq!(dec_string_round(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(dec_string_dir(&rat(1, 3), 4, Dir::Down), "0.3333");
        assert_eq!(dec_string_dir(&rat(1, 3), 4, Dir::Up), "0.3334");
        assert_eq!(dec_string_dir(&rat(-1, 3), 4, Dir::Down), "-0.3334");
        assert_eq!(dec_string_round(&rat(1234, 1), 2), "1234.00");
    }

    #[test]
    fn to_decimal_surd() {
        // 3 + 2 sqrt2 to 6 places: 5.828427, error below 1e-6
        let a = RealScalar::surd(2, rat(3, 1), rat(2, 1)).unwrap();
        let out = to_decimal(&a, 6, &PrecisionCfg::default()).unwrap();
        assert_eq!(out.text, "5.828427");
        assert!(out.error_bound < rat(1, 1_000_000));
        // independent check: (5.828427 - 3)^2 differs from 8 by < 4e-6 * 6
        let approx = rat(5_828_427, 1_000_000);
        let resid = (&approx - rat(3, 1)).pow(2) - rat(8, 1);
        assert!(resid.abs() < rat(1, 50_000));
    }

    #[test]
    fn to_decimal_rational_exact() {
        let a = RealScalar::Rational(rat(5, 2));
        let out = to_decimal(&a, 3, &PrecisionCfg::default()).unwrap();
        assert_eq!(out.text, "2.500");
    }

    #[test]
    fn to_decimal_expform() {
        // e^(atan(1/2) + 2 pi) = 851.3581656041116435... to 4 places
        let l = LinForm::atan_term(1, 2, &BigRational::one())
            .add(&LinForm::pi_times(rat(2, 1)));
        let g5 = RealScalar::exp_form(l);
        let out = to_decimal(&g5, 4, &PrecisionCfg::default()).unwrap();
        assert_eq!(out.text, "851.3582");
        assert!(out.error_bound < rat(1, 10_000));
    }

    #[test]
    fn enclosure_decimal_pair_is_outward() {
        let e = Enclosure::new(rat(1, 3), rat(2, 3));
        let (lo, hi) = e.decimal_pair(3);
        assert_eq!(lo, "0.333");
        assert_eq!(hi, "0.667");
        let lo_r = BigRational::from_f64(0.333).unwrap();
        assert!(lo_r <= e.lo);
    }
}
