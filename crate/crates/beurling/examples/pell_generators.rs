//! The Pell-norm construction: generators `g(p) = f(p)^2` where `f(p)` is
//! the minimal positive representation `x + y*sqrt(2)` with `|x^2-2y^2| = p`
//! over primes `p = +-1 (mod 8)`.
//!
//! Run with: `cargo run --example pell_generators`

use beurling::constructions::{certify_example1_pair, example1_generators, GapCertificate};
use beurling::exactnum::{PrecisionCfg, RealScalar};
use beurling::semigroup::gap_report;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let cfg = PrecisionCfg::default();
    let sys = example1_generators(100, &cfg).unwrap();
    println!("qualifying primes up to 100 and their minimal representations:");
    for r in &sys.records {
        println!("  p = {:>3}: f(p) = {:<14} g(p) = {}", r.p, r.f.to_string(), r.g);
    }
    if let Some((p, ratio)) = &sys.max_ratio {
        println!("empirical constant: max f(p)/sqrt(p) = {ratio} at p = {p}");
    }

    let delta = BigRational::from_integer(BigInt::from(1));
    let report = gap_report(&sys.gens, &RealScalar::from_u64(10_000), &delta, &cfg);
    println!(
        "elements up to 10^4: {}   min gap in {}   violations: {}",
        report.count,
        report.min_gap.as_ref().unwrap(),
        report.violations.len()
    );

    // a certificate: the gap between g(7) and g(17) exceeds |I| = 2
    let cert = certify_example1_pair(&sys, 7, 17).unwrap();
    if let GapCertificate::Example1 {
        integer_factor,
        gap,
        ..
    } = &cert
    {
        println!("pair (7, 17): integer factor {integer_factor}, certified gap {gap} > 1");
    }
}
