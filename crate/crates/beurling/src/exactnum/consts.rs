//! Memoized certified enclosures for the labeled constants: pi, ln of an
//! integer, arctan of a rational, and square roots of integers.
//!
//! The table is keyed by (constant, precision) and is safe under concurrent
//! lookup-or-insert. Values are immutable once stored.

use super::dyadic::Interval;
use super::functions;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// A labeled transcendental (or algebraic) constant with exact integer
/// parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstKey {
    Pi,
    /// Natural log of an integer >= 2.
    Ln(u64),
    /// arctan(a/b) with 1 <= a < b and gcd(a, b) = 1.
    Atan(u64, u64),
    /// Square root of a squarefree integer >= 2.
    Sqrt(u64),
}

fn cache() -> &'static RwLock<HashMap<(ConstKey, u32), Interval>> {
    static CACHE: OnceLock<RwLock<HashMap<(ConstKey, u32), Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn compute(key: ConstKey, p: u32) -> Interval {
    match key {
        ConstKey::Pi => functions::pi(p),
        ConstKey::Ln(n) => {
            debug_assert!(n >= 2);
            functions::ln_rational(&BigRational::from_integer(BigInt::from(n)), p)
        }
        ConstKey::Atan(a, b) => {
            debug_assert!(a >= 1 && b > a);
            functions::atan_rational(&BigRational::new(BigInt::from(a), BigInt::from(b)), p)
        }
        ConstKey::Sqrt(d) => {
            debug_assert!(d >= 2);
            functions::sqrt_rational(&BigRational::from_integer(BigInt::from(d)), p)
        }
    }
}

/// Certified enclosure of the constant at precision `p`, memoized.
pub fn const_interval(key: ConstKey, p: u32) -> Interval {
    if let Some(iv) = cache().read().unwrap().get(&(key, p)) {
        return iv.clone();
    }
    let iv = compute(key, p);
    cache()
        .write()
        .unwrap()
        .entry((key, p))
        .or_insert_with(|| iv.clone());
    iv
}
