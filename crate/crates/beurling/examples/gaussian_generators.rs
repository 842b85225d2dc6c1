//! The Gaussian-angle construction: `g(p) = e^(f(p))` with
//! `f(p) = atan(a/b) + 2k*pi` wound into `(ln p, ln p + 2 pi)`, over primes
//! `p = 1 (mod 4)` written as `a^2 + b^2`.
//!
//! Run with: `cargo run --example gaussian_generators`

use beurling::constructions::{certify_example2_pair, example2_generators, GapCertificate};
use beurling::exactnum::{to_decimal, PrecisionCfg};

fn main() {
    let cfg = PrecisionCfg::default();
    let sys = example2_generators(50, &cfg).unwrap();
    println!("qualifying primes up to 50:");
    for r in &sys.records {
        let g = to_decimal(&r.g, 4, &cfg).unwrap();
        println!(
            "  p = {:>2} = {}^2 + {}^2: rho = {:<6} winding k = {}, g(p) = {}",
            r.p,
            r.a,
            r.b,
            r.rho.to_string(),
            r.k_winding,
            g.text
        );
    }

    // the lattice-determinant certificate for the closest pair of primes:
    // (5, 13) attains D = 1, the equality case of the area bound
    let cert = certify_example2_pair(&sys, 5, 13, &cfg).unwrap();
    if let GapCertificate::Example2 {
        rho_m,
        rho_n,
        lattice_det,
        gap,
        ..
    } = &cert
    {
        println!(
            "\npair (5, 13): rho(5) = {rho_m}, rho(13) = {rho_n}, determinant D = {lattice_det}"
        );
        println!("certified |g(5) - g(13)| in {gap}  (at least D = 1; sine bound 1/sqrt(65))");
    }

    // composite arguments extend multiplicatively
    let cert = certify_example2_pair(&sys, 13, 65, &cfg).unwrap();
    if let GapCertificate::Example2 { lattice_det, .. } = &cert {
        println!("pair (13, 65): determinant D = {lattice_det}");
    }
}
