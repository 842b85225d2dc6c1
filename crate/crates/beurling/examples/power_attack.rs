//! Why `{p^c}` systems are maximal: adjoining any `alpha > 1` to the c-th
//! powers admits near-collisions `|alpha * b^c - a^c|` as small as desired,
//! found along the convergents of `alpha^(1/c)`.
//!
//! Run with: `cargo run --example power_attack`

use beurling::cfrac::{power_attack, PowerAttackOutcome};
use beurling::exactnum::{PrecisionCfg, RealScalar};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let cfg = PrecisionCfg::default();
    let alpha = RealScalar::from_u64(2);
    let c = BigRational::new(BigInt::from(3), BigInt::from(2));

    for (eps_num, eps_den, bmax) in [(1i64, 2i64, 10u64), (1, 10, 100), (1, 100, 10_000)] {
        let eps = BigRational::new(BigInt::from(eps_num), BigInt::from(eps_den));
        match power_attack(&alpha, &c, &eps, bmax, &cfg).unwrap() {
            PowerAttackOutcome::Found(w) => println!(
                "eps = {eps_num}/{eps_den}, b <= {bmax}: |2*{}^(3/2) - {}^(3/2)| in {}",
                w.b, w.a, w.residual
            ),
            PowerAttackOutcome::NotFound { best } => {
                println!("eps = {eps_num}/{eps_den}, b <= {bmax}: not found, best {best:?}")
            }
        }
    }

    // a degenerate collision: alpha = 8 is already a c-th power
    let out = power_attack(
        &RealScalar::from_u64(8),
        &c,
        &BigRational::new(BigInt::from(1), BigInt::from(2)),
        1,
        &cfg,
    )
    .unwrap();
    if let PowerAttackOutcome::Found(w) = out {
        println!(
            "alpha = 8: exact collision 8*1^(3/2) = {}^(3/2) (residual zero: {})",
            w.a, w.exact_zero
        );
    }
}
