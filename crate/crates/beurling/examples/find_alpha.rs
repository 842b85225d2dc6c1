//! The measure-based finder: for a sparse base system (here `{8, 27}`, whose
//! square-root sum converges), exclude every interval of `beta = ln(alpha)`
//! that a triple `|alpha^k m - n| < delta` would force, and pick a rational
//! `beta` from the widest surviving gap.
//!
//! Run with: `cargo run --example find_alpha`

use beurling::exactnum::{dec_string_round, PrecisionCfg, RealScalar};
use beurling::metricfind::{find_alpha, FindAlphaConfig};
use beurling::semigroup::{GenLabel, GeneratorSet};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let cfg = PrecisionCfg::default();
    let gens = GeneratorSet::new(
        vec![RealScalar::from_u64(8), RealScalar::from_u64(27)],
        GenLabel::Literal,
        &cfg,
    )
    .unwrap();
    let delta = BigRational::from_integer(BigInt::from(1));
    let cert = find_alpha(
        &gens,
        &delta,
        100_000,
        &FindAlphaConfig {
            t: Some(8),
            cutoff: 1_000_000,
        },
        &cfg,
    )
    .unwrap();

    println!("scale parameter t = {} (window [t, 2t] = [8, 16])", cert.t);
    println!(
        "square-root sum S in [{}, {}]",
        dec_string_round(&cert.s_bound.s_lower, 6),
        dec_string_round(&cert.s_bound.s_upper, 6)
    );
    println!(
        "analytic measure bound {}  |  listed bad measure {}  |  residual {}",
        dec_string_round(&cert.analytic_bound, 6),
        dec_string_round(&cert.listed_measure, 6),
        dec_string_round(&cert.residual, 6)
    );
    println!(
        "widest surviving interval [{}, {}]",
        dec_string_round(&cert.surviving.0, 6),
        dec_string_round(&cert.surviving.1, 6)
    );
    println!(
        "chosen beta = {}  =>  alpha = e^beta in {}",
        cert.beta, cert.alpha_enclosure
    );
    println!(
        "empirical check of the adjoined system up to 10^5: {} elements, {} violations",
        cert.empirical.count,
        cert.empirical.violations.len()
    );
}
