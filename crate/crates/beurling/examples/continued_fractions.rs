//! Certified continued fractions: expansion with per-quotient certification,
//! convergents, and the best-approximation property.
//!
//! Run with: `cargo run --example continued_fractions`

use beurling::cfrac::{convergents, expand};
use beurling::exactnum::{diff_interval, PrecisionCfg, RealScalar};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let cfg = PrecisionCfg::default();

    for (label, value) in [
        (
            "sqrt(2)",
            RealScalar::rat_pow(
                BigRational::from_integer(BigInt::from(2)),
                BigRational::new(BigInt::from(1), BigInt::from(2)),
            )
            .unwrap(),
        ),
        (
            "2^(2/3)",
            RealScalar::rat_pow(
                BigRational::from_integer(BigInt::from(2)),
                BigRational::new(BigInt::from(2), BigInt::from(3)),
            )
            .unwrap(),
        ),
        (
            "5/2",
            RealScalar::from_rational(BigRational::new(BigInt::from(5), BigInt::from(2))).unwrap(),
        ),
    ] {
        let cf = expand(&value, 8, &cfg).unwrap();
        let qs: Vec<String> = cf.quotients.iter().map(|q| q.to_string()).collect();
        println!(
            "{label}: quotients [{}]{}",
            qs.join("; "),
            if cf.exhausted { " (terminated)" } else { "" }
        );
        for c in convergents(&cf) {
            let approx =
                RealScalar::from_rational(BigRational::new(c.a.clone(), c.r.clone())).unwrap();
            let err = diff_interval(&value, &approx, 128).abs();
            println!(
                "    {:>6}/{:<6} off by at most {}",
                c.a.to_string(),
                c.r.to_string(),
                beurling::exactnum::dec_string_dir(
                    &err.hi_rational(),
                    10,
                    beurling::exactnum::Dir::Up
                )
            );
        }
    }
}
