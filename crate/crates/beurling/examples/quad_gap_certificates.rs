//! The quadratic lacunary system: prime squares with `alpha = (sqrt(2)+1)^2`
//! adjoined, gap analysis, and exact per-pair certificates.
//!
//! Run with: `cargo run --example quad_gap_certificates`

use beurling::constructions::{certify_quad_gap, quad_alpha, GapCertificate};
use beurling::exactnum::{PrecisionCfg, RealScalar};
use beurling::semigroup::gap_report;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let cfg = PrecisionCfg::default();
    let sys = quad_alpha(1, 1, 2, 10_000, &cfg).unwrap();
    println!(
        "system: prime squares up to 10000 plus alpha = {} (~5.8284)",
        sys.alpha
    );

    let delta = BigRational::from_integer(BigInt::from(1));
    let report = gap_report(&sys.gens, &RealScalar::from_u64(10_000), &delta, &cfg);
    let mg = report.min_gap.as_ref().unwrap();
    println!(
        "elements up to 10^4: {}   min gap in {}   violations: {}",
        report.count,
        mg,
        report.violations.len()
    );
    assert!(report.zero_violations());

    // certify the pair behind the minimal gap and a few fixtures
    for (k, m, n) in [(1u64, 2u64, 5u64), (2, 1, 6), (1, 1, 2)] {
        let cert = certify_quad_gap(&sys, k, m, n).unwrap();
        if let GapCertificate::Quad {
            u,
            v,
            integer_factor,
            gap,
            ..
        } = &cert
        {
            println!(
                "pair alpha^{k} * {m}^2 vs {n}^2: beta = {v}+{u}*sqrt(2), \
                 integer factor {integer_factor}, certified gap {gap} > 1"
            );
        }
    }
}
