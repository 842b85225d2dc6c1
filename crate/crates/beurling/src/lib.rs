//! Multiplicative semigroups of reals (Beurling generalized integers) with
//! certified gap analysis.
//!
//! The crate enumerates the product set `B` of a generator set `G` of reals
//! greater than one in certified nondecreasing order, measures consecutive
//! gaps, and provides:
//!
//! * exact algebraic gap certificates for three lacunary constructions
//!   (quadratic `alpha = (a*sqrt(q)+b)^2` adjoined to prime squares, Pell-norm
//!   generators over `Z[sqrt(2)]`, and Gaussian-angle exponential generators);
//! * constructive witness searches that collapse gaps when the generator set
//!   contains all but a small set of primes (Bezout sieving for rational
//!   alpha, convergent/mediant sieving for irrational alpha, and a mean-value
//!   attack on `{p^c}` systems);
//! * a certified interval-exclusion finder that produces gap-preserving
//!   `alpha = e^beta` with a quantified residual measure bound.
//!
//! All numeric decisions run on exact tagged scalars ([`exactnum::RealScalar`])
//! with adaptive-precision certified enclosures; no comparison depends on
//! fixed-precision floating point.
//!
//! The library surface is demonstrated by the runnable programs in
//! `examples/`; a thin `beurling` binary exposes the same operations as CLI
//! subcommands with deterministic JSON/CSV reports.

pub mod attacks;
pub mod cfrac;
pub mod cli;
pub mod constructions;
pub mod exactnum;
pub mod metricfind;
pub mod primeset;
pub mod semigroup;

pub use exactnum::{compare, Enclosure, ExactError, Ordering3, PrecisionCfg, RealScalar};
pub use semigroup::{Element, GapReport, GeneratorSet};
