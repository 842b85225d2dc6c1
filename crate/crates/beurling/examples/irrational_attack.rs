//! Collapsing gaps for irrational `alpha`: weighted mediants of consecutive
//! continued-fraction convergents of `alpha = 1 + sqrt(2)` give 3-free pairs
//! `(n', m')` with `|alpha n' - m'|` below any threshold.
//!
//! Run with: `cargo run --example irrational_attack`

use beurling::attacks::{attack_irrational, revalidate, SieveConfig, WitnessCase};
use beurling::exactnum::{PrecisionCfg, RealScalar};
use beurling::primeset::ExcludedSet;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let cfg = PrecisionCfg::default();
    let excluded = ExcludedSet::new([3]).unwrap();
    let alpha = RealScalar::surd(
        2,
        BigRational::from_integer(BigInt::from(1)),
        BigRational::from_integer(BigInt::from(1)),
    )
    .unwrap();

    for denom in [2u64, 10, 100, 10_000] {
        let delta = BigRational::new(BigInt::from(1), BigInt::from(denom));
        let w = attack_irrational(&excluded, &alpha, &delta, &SieveConfig::default(), &cfg)
            .unwrap();
        assert!(revalidate(&w, &excluded, &alpha, &cfg));
        if let WitnessCase::Irrational {
            pair_index, x, y, ..
        } = &w.case
        {
            println!(
                "delta = 1/{denom}: |alpha*{} - {}| in {}  (pair {pair_index}, x={x}, y={y})",
                w.n_prime, w.m_prime, w.gap
            );
        }
    }
}
