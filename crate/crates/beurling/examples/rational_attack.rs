//! Collapsing gaps for rational `alpha`: excluding the prime 3 and adjoining
//! `alpha = 5/2`, the Bezout scan finds semigroup elements `alpha^m * x` and
//! `y` (both 3-free) closer than any requested threshold.
//!
//! Run with: `cargo run --example rational_attack`

use beurling::attacks::{attack_rational, SieveConfig, WitnessCase};
use beurling::primeset::ExcludedSet;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let excluded = ExcludedSet::new([3]).unwrap();
    for denom in [10u64, 100, 1000, 100_000] {
        let delta = BigRational::new(BigInt::from(1), BigInt::from(denom));
        let w = attack_rational(
            &excluded,
            &BigInt::from(5),
            &BigInt::from(2),
            &delta,
            &SieveConfig::default(),
        )
        .unwrap();
        if let WitnessCase::Rational { m, d, z, .. } = &w.case {
            println!(
                "delta = 1/{denom}: |(5/2)^{m} * {} - {}| = {}/2^{m} exactly (z = {z})",
                w.n_prime, w.m_prime, d
            );
        }
    }
    println!("\nthe achieved gaps shrink geometrically: the infimum of gaps is zero");
}
