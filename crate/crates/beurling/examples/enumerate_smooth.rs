//! Sorted enumeration of a multiplicative semigroup.
//!
//! Enumerates the 3-smooth numbers up to 20, then checks that taking all
//! primes up to 100 as generators reproduces the integers.
//!
//! Run with: `cargo run --example enumerate_smooth`

use beurling::exactnum::{PrecisionCfg, RealScalar};
use beurling::semigroup::{counting, enumerate, GenLabel, GeneratorSet};

fn main() {
    let cfg = PrecisionCfg::default();

    let gens = GeneratorSet::new(
        vec![RealScalar::from_u64(2), RealScalar::from_u64(3)],
        GenLabel::Literal,
        &cfg,
    )
    .unwrap();
    let (elems, unresolved, _) = enumerate(&gens, &RealScalar::from_u64(20), &cfg);
    println!("3-smooth numbers up to 20:");
    for e in &elems {
        println!("  {:>10}  =  {}", e.value.to_string(), e.exps_string());
    }
    assert!(unresolved.is_empty());

    let primes = beurling::primeset::sieve(100, None);
    let gens = GeneratorSet::new(
        primes.iter().map(|&p| RealScalar::from_u64(p)).collect(),
        GenLabel::Primes {
            limit: 100,
            modulus: None,
            residues: vec![],
        },
        &cfg,
    )
    .unwrap();
    let (b, g) = counting(&gens, &RealScalar::from_u64(100), &cfg);
    println!("\nall primes up to 100: B(100) = {b}, G(100) = {g}");
    assert_eq!((b, g), (100, 25));
}
