//! Sorted enumeration of the multiplicative semigroup generated by a set of
//! reals above 1, with counting functions and gap analysis.
//!
//! The stream uses best-first expansion: a binary heap keyed by certified
//! comparison of exact values, with children formed only by generators at or
//! beyond an element's largest used index, so every exponent vector is
//! produced exactly once. Ordering decisions that survive the precision
//! budget are resolved lexicographically and reported, never dropped.

use crate::exactnum::{
    compare, diff_interval, Enclosure, ExactError, Ordering3, PrecisionCfg, RealScalar,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generator {0} is not certified greater than 1")]
    GeneratorNotAboveOne(String),
    #[error("generator ordering could not be certified within the precision budget")]
    UnorderableGenerators,
    #[error("empty generator set where one is required")]
    Empty,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Provenance of a generator set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenLabel {
    Primes {
        limit: u64,
        modulus: Option<u64>,
        residues: Vec<u64>,
    },
    CPow {
        c: BigRational,
        limit: u64,
    },
    QuadAlpha {
        a: u64,
        b: u64,
        q: u64,
        limit: u64,
    },
    Example1 {
        limit: u64,
    },
    Example2 {
        limit: u64,
    },
    Literal,
    /// A base system with one extra generator adjoined.
    Adjoined(Box<GenLabel>),
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::Primes {
                limit,
                modulus: None,
                ..
            } => write!(f, "primes({limit})"),
            GenLabel::Primes {
                limit,
                modulus: Some(m),
                residues,
            } => {
                let rs: Vec<String> = residues.iter().map(|r| r.to_string()).collect();
                write!(f, "primes({limit}, mod={m}, res={})", rs.join("|"))
            }
            GenLabel::CPow { c, limit } => write!(f, "cpow({c}, {limit})"),
            GenLabel::QuadAlpha { a, b, q, limit } => write!(f, "quadalpha({a}, {b}, {q}, {limit})"),
            GenLabel::Example1 { limit } => write!(f, "example1({limit})"),
            GenLabel::Example2 { limit } => write!(f, "example2({limit})"),
            GenLabel::Literal => write!(f, "list"),
            GenLabel::Adjoined(base) => write!(f, "{base}+alpha"),
        }
    }
}

/// An ordered, deduplicated set of generators, each certified greater than 1.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    generators: Vec<RealScalar>,
    label: GenLabel,
}

impl GeneratorSet {
    pub fn new(
        mut generators: Vec<RealScalar>,
        label: GenLabel,
        cfg: &PrecisionCfg,
    ) -> Result<GeneratorSet, SemigroupError> {
        generators.sort();
        generators.dedup();
        for g in &generators {
            match compare(g, &RealScalar::one(), cfg) {
                Ordering3::Greater => {}
                _ => return Err(SemigroupError::GeneratorNotAboveOne(g.to_string())),
            }
        }
        // ascending numerical order
        let mut err = None;
        generators.sort_by(|a, b| match compare(a, b, cfg) {
            Ordering3::Less => Ordering::Less,
            Ordering3::Greater => Ordering::Greater,
            Ordering3::Equal => Ordering::Equal,
            Ordering3::Unresolved { .. } => {
                err = Some(SemigroupError::UnorderableGenerators);
                Ordering::Equal
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        Ok(GeneratorSet { generators, label })
    }

    pub fn generators(&self) -> &[RealScalar] {
        &self.generators
    }

    pub fn label(&self) -> &GenLabel {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// A new set with one extra generator adjoined.
    pub fn adjoin(&self, alpha: RealScalar, cfg: &PrecisionCfg) -> Result<GeneratorSet, SemigroupError> {
        let mut gens = self.generators.clone();
        gens.push(alpha);
        GeneratorSet::new(gens, GenLabel::Adjoined(Box::new(self.label.clone())), cfg)
    }
}

/// Sparse exponent vector: sorted `(generator index, positive exponent)`.
pub type ExponentVec = Vec<(u32, u32)>;

/// A semigroup element: its exponent vector and exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub exps: ExponentVec,
    pub value: RealScalar,
}

impl Element {
    pub fn unit() -> Element {
        Element {
            exps: Vec::new(),
            value: RealScalar::one(),
        }
    }

    /// Recompute the value from the exponent vector; equals `value` exactly.
    pub fn reconstruct(&self, gens: &GeneratorSet) -> RealScalar {
        let mut acc = RealScalar::one();
        for &(i, e) in &self.exps {
            acc = acc.mul(&gens.generators[i as usize].pow(e as u64));
        }
        acc
    }

    fn max_index(&self) -> u32 {
        self.exps.last().map_or(0, |&(i, _)| i)
    }

    fn child(&self, index: u32, gen: &RealScalar) -> Element {
        let mut exps = self.exps.clone();
        match exps.last_mut() {
            Some((i, e)) if *i == index => *e += 1,
            _ => exps.push((index, 1)),
        }
        Element {
            exps,
            value: self.value.mul(gen),
        }
    }

    pub fn exps_string(&self) -> String {
        if self.exps.is_empty() {
            return "1".to_string();
        }
        self.exps
            .iter()
            .map(|(i, e)| format!("g{i}^{e}"))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A pair whose ordering or gap classification exhausted the precision
/// budget.
#[derive(Debug, Clone)]
pub struct UnresolvedPair {
    pub a: Element,
    pub b: Element,
    pub bits_reached: u32,
    pub context: &'static str,
}

/// Two distinct exponent vectors with provably equal values.
#[derive(Debug, Clone)]
pub struct CollisionPair {
    pub a: Element,
    pub b: Element,
}

/// Streaming enumeration of elements with value at most the bound, certified
/// nondecreasing, ties broken lexicographically on exponent vectors.
pub struct Enumeration<'g> {
    gens: &'g GeneratorSet,
    bound: RealScalar,
    cfg: PrecisionCfg,
    heap: Vec<Element>,
    unresolved: Vec<UnresolvedPair>,
    emitted: u64,
    last_value: Option<RealScalar>,
    collisions: Vec<CollisionPair>,
    last_elem: Option<Element>,
}

fn cmp_elements(
    a: &Element,
    b: &Element,
    cfg: &PrecisionCfg,
    unresolved: &mut Vec<UnresolvedPair>,
) -> Ordering {
    match compare(&a.value, &b.value, cfg) {
        Ordering3::Less => Ordering::Less,
        Ordering3::Greater => Ordering::Greater,
        Ordering3::Equal => a.exps.cmp(&b.exps),
        Ordering3::Unresolved { bits_reached } => {
            let dup = unresolved.iter().any(|u| {
                (u.a.exps == a.exps && u.b.exps == b.exps)
                    || (u.a.exps == b.exps && u.b.exps == a.exps)
            });
            if !dup {
                unresolved.push(UnresolvedPair {
                    a: a.clone(),
                    b: b.clone(),
                    bits_reached,
                    context: "heap ordering",
                });
            }
            a.exps.cmp(&b.exps)
        }
    }
}

impl<'g> Enumeration<'g> {
    pub fn new(gens: &'g GeneratorSet, bound: RealScalar, cfg: &PrecisionCfg) -> Enumeration<'g> {
        let mut e = Enumeration {
            gens,
            bound,
            cfg: *cfg,
            heap: Vec::new(),
            unresolved: Vec::new(),
            emitted: 0,
            last_value: None,
            collisions: Vec::new(),
            last_elem: None,
        };
        // b0 = 1 is always emitted when the bound allows it
        if matches!(
            compare(&RealScalar::one(), &e.bound, cfg),
            Ordering3::Less | Ordering3::Equal
        ) {
            e.heap_push(Element::unit());
        }
        e
    }

    pub fn unresolved(&self) -> &[UnresolvedPair] {
        &self.unresolved
    }

    pub fn collisions(&self) -> &[CollisionPair] {
        &self.collisions
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    fn heap_push(&mut self, elem: Element) {
        self.heap.push(elem);
        let mut i = self.heap.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            let ord = cmp_elements(
                &self.heap[i],
                &self.heap[parent],
                &self.cfg,
                &mut self.unresolved,
            );
            if ord == Ordering::Less {
                self.heap.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn heap_pop(&mut self) -> Option<Element> {
        if self.heap.is_empty() {
            return None;
        }
        let last = self.heap.len() - 1;
        self.heap.swap(0, last);
        let out = self.heap.pop();
        let mut i = 0usize;
        loop {
            let l = 2 * i + 1;
            let r = 2 * i + 2;
            if l >= self.heap.len() {
                break;
            }
            let mut m = l;
            if r < self.heap.len() {
                let ord = cmp_elements(
                    &self.heap[r],
                    &self.heap[l],
                    &self.cfg,
                    &mut self.unresolved,
                );
                if ord == Ordering::Less {
                    m = r;
                }
            }
            let ord = cmp_elements(&self.heap[m], &self.heap[i], &self.cfg, &mut self.unresolved);
            if ord == Ordering::Less {
                self.heap.swap(m, i);
                i = m;
            } else {
                break;
            }
        }
        out
    }
}

impl Iterator for Enumeration<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let elem = self.heap_pop()?;
        // children: multiply by generators from the maximal used index up;
        // generators ascend, so the first certified overflow prunes the rest
        let start = if elem.exps.is_empty() {
            0
        } else {
            elem.max_index()
        };
        for j in start..self.gens.generators.len() as u32 {
            let child = elem.child(j, &self.gens.generators[j as usize]);
            match compare(&child.value, &self.bound, &self.cfg) {
                Ordering3::Less | Ordering3::Equal => self.heap_push(child),
                Ordering3::Greater => break,
                Ordering3::Unresolved { bits_reached } => {
                    self.unresolved.push(UnresolvedPair {
                        a: child.clone(),
                        b: Element {
                            exps: Vec::new(),
                            value: self.bound.clone(),
                        },
                        bits_reached,
                        context: "bound check",
                    });
                }
            }
        }
        // collision flagging against the previously emitted value
        if let (Some(last), Some(last_elem)) = (&self.last_value, &self.last_elem) {
            if compare(last, &elem.value, &self.cfg) == Ordering3::Equal {
                self.collisions.push(CollisionPair {
                    a: last_elem.clone(),
                    b: elem.clone(),
                });
            }
        }
        self.last_value = Some(elem.value.clone());
        self.last_elem = Some(elem.clone());
        self.emitted += 1;
        Some(elem)
    }
}

/// Enumerate every element with value at most `bound`.
pub fn enumerate(
    gens: &GeneratorSet,
    bound: &RealScalar,
    cfg: &PrecisionCfg,
) -> (Vec<Element>, Vec<UnresolvedPair>, Vec<CollisionPair>) {
    let mut stream = Enumeration::new(gens, bound.clone(), cfg);
    let mut out = Vec::new();
    for e in stream.by_ref() {
        out.push(e);
    }
    let unresolved = stream.unresolved().to_vec();
    let collisions = stream.collisions().to_vec();
    (out, unresolved, collisions)
}

/// `(B(x), G(x))`: elements of the semigroup at most `x` (counting the empty
/// product), and generators at most `x`.
pub fn counting(gens: &GeneratorSet, x: &RealScalar, cfg: &PrecisionCfg) -> (u64, u64) {
    let (elems, _, _) = enumerate(gens, x, cfg);
    let g = gens
        .generators()
        .iter()
        .filter(|g| {
            matches!(
                compare(g, x, cfg),
                Ordering3::Less | Ordering3::Equal
            )
        })
        .count() as u64;
    (elems.len() as u64, g)
}

/// One consecutive gap that certified below the threshold.
#[derive(Debug, Clone)]
pub struct Violation {
    pub a: Element,
    pub b: Element,
    pub gap: Enclosure,
}

/// Gap analysis over the enumerated prefix.
#[derive(Debug)]
pub struct GapReport {
    pub limit: RealScalar,
    pub delta: BigRational,
    pub count: u64,
    /// Certified enclosure of the minimal consecutive gap (absent when fewer
    /// than two distinct values were enumerated).
    pub min_gap: Option<Enclosure>,
    pub argmin: Option<(Element, Element)>,
    /// Dyadic histogram: bucket `k` counts gaps in `[2^k, 2^(k+1))`, keyed by
    /// the enclosure midpoint.
    pub histogram: BTreeMap<i64, u64>,
    pub violations: Vec<Violation>,
    pub unresolved: Vec<UnresolvedPair>,
    pub collisions: Vec<CollisionPair>,
}

impl GapReport {
    pub fn zero_violations(&self) -> bool {
        self.violations.is_empty()
    }
}

fn gap_enclosure(a: &Element, b: &Element, p: u32) -> Enclosure {
    Enclosure::from_interval(&diff_interval(&b.value, &a.value, p).abs())
}

fn dyadic_bucket(r: &BigRational) -> i64 {
    debug_assert!(r.is_positive());
    // floor(log2(num/den))
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    let mut k = num_bits - den_bits;
    // candidate k satisfies 2^k <= r < 2^(k+1) after at most one adjustment
    let pow2 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(BigInt::from(1) << k as u64)
        } else {
            BigRational::new(BigInt::from(1), BigInt::from(1) << (-k) as u64)
        }
    };
    if r < &pow2(k) {
        k -= 1;
    } else if r >= &pow2(k + 1) {
        k += 1;
    }
    k
}

/// Gap report over the enumerated prefix up to `limit`, classifying every
/// consecutive gap against `delta`.
pub fn gap_report(
    gens: &GeneratorSet,
    limit: &RealScalar,
    delta: &BigRational,
    cfg: &PrecisionCfg,
) -> GapReport {
    assert!(delta.is_positive(), "delta must be positive");
    let (elems, mut unresolved, collisions) = enumerate(gens, limit, cfg);
    let mut violations = Vec::new();
    let mut histogram: BTreeMap<i64, u64> = BTreeMap::new();
    // candidate gaps for the minimum: (index of left element, enclosure)
    let mut gaps: Vec<(usize, Enclosure)> = Vec::new();

    let collision_pairs: Vec<(&ExponentVec, &ExponentVec)> = collisions
        .iter()
        .map(|c| (&c.a.exps, &c.b.exps))
        .collect();

    for i in 1..elems.len() {
        let a = &elems[i - 1];
        let b = &elems[i];
        if collision_pairs
            .iter()
            .any(|(x, y)| **x == a.exps && **y == b.exps)
        {
            // exactly equal values: a zero gap, a violation for any delta > 0
            violations.push(Violation {
                a: a.clone(),
                b: b.clone(),
                gap: Enclosure::point(BigRational::zero()),
            });
            continue;
        }
        let mut enc = gap_enclosure(a, b, cfg.initial_bits);
        let mut p = cfg.initial_bits;
        while !enc.certainly_below(delta) && !enc.certainly_at_least(delta) {
            if p >= cfg.max_bits {
                break;
            }
            p = (p * 2).min(cfg.max_bits);
            enc = gap_enclosure(a, b, p);
        }
        if enc.certainly_below(delta) {
            violations.push(Violation {
                a: a.clone(),
                b: b.clone(),
                gap: enc.clone(),
            });
        } else if !enc.certainly_at_least(delta) {
            unresolved.push(UnresolvedPair {
                a: a.clone(),
                b: b.clone(),
                bits_reached: p,
                context: "gap classification",
            });
        }
        if enc.lo.is_positive() || enc.hi.is_positive() {
            let mid = enc.midpoint();
            if mid.is_positive() {
                *histogram.entry(dyadic_bucket(&mid)).or_insert(0) += 1;
            }
        }
        gaps.push((i - 1, enc));
    }

    // refine the minimum: repeatedly tighten candidates straddling the
    // current smallest upper bound
    let (min_gap, argmin) = if gaps.is_empty() {
        (None, None)
    } else {
        let mut p = cfg.initial_bits;
        loop {
            let min_hi = gaps.iter().map(|(_, e)| e.hi.clone()).min().unwrap();
            let candidates: Vec<usize> = gaps
                .iter()
                .enumerate()
                .filter(|(_, (_, e))| e.lo <= min_hi)
                .map(|(k, _)| k)
                .collect();
            if candidates.len() <= 1 || p >= cfg.max_bits {
                let min_lo = candidates
                    .iter()
                    .map(|&k| gaps[k].1.lo.clone())
                    .min()
                    .unwrap();
                let argmin_idx = candidates
                    .iter()
                    .copied()
                    .min_by(|&x, &y| {
                        gaps[x]
                            .1
                            .hi
                            .cmp(&gaps[y].1.hi)
                            .then_with(|| gaps[x].0.cmp(&gaps[y].0))
                    })
                    .unwrap();
                let i = gaps[argmin_idx].0;
                break (
                    Some(Enclosure::new(min_lo, min_hi)),
                    Some((elems[i].clone(), elems[i + 1].clone())),
                );
            }
            p = (p * 2).min(cfg.max_bits);
            for &k in &candidates {
                let i = gaps[k].0;
                if !gaps[k].1.width().is_zero() {
                    gaps[k].1 = gap_enclosure(&elems[i], &elems[i + 1], p);
                }
            }
        }
    };

    GapReport {
        limit: limit.clone(),
        delta: delta.clone(),
        count: elems.len() as u64,
        min_gap,
        argmin,
        histogram,
        violations,
        unresolved,
        collisions,
    }
}

/// Reference enumeration for tests: depth-first exponent search plus sort.
/// Independent of the heap-based stream it checks.
pub mod oracle {
    use super::*;

    pub fn brute_force(
        gens: &GeneratorSet,
        bound: &RealScalar,
        cfg: &PrecisionCfg,
    ) -> Vec<Element> {
        let mut out = Vec::new();
        let mut stack = vec![Element::unit()];
        // depth-first over exponent vectors in canonical (max-index) form
        while let Some(e) = stack.pop() {
            if !matches!(
                compare(&e.value, bound, cfg),
                Ordering3::Less | Ordering3::Equal
            ) {
                continue;
            }
            let start = if e.exps.is_empty() { 0 } else { e.max_index() };
            for j in start..gens.generators().len() as u32 {
                let child = e.child(j, &gens.generators()[j as usize]);
                if matches!(
                    compare(&child.value, bound, cfg),
                    Ordering3::Less | Ordering3::Equal
                ) {
                    stack.push(child);
                }
            }
            out.push(e);
        }
        out.sort_by(|a, b| match compare(&a.value, &b.value, cfg) {
            Ordering3::Less => Ordering::Less,
            Ordering3::Greater => Ordering::Greater,
            _ => a.exps.cmp(&b.exps),
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::LinForm;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn cfg() -> PrecisionCfg {
        PrecisionCfg::default()
    }

    fn lit(vals: &[RealScalar]) -> GeneratorSet {
        GeneratorSet::new(vals.to_vec(), GenLabel::Literal, &cfg()).unwrap()
    }

    fn ints(vals: &[u64]) -> GeneratorSet {
        lit(&vals.iter().map(|&v| RealScalar::from_u64(v)).collect::<Vec<_>>())
    }

    fn values_of(elems: &[Element]) -> Vec<RealScalar> {
        elems.iter().map(|e| e.value.clone()).collect()
    }

    #[test]
    fn enumerate_two_three() {
        // 3-smooth numbers up to 20
        let g = ints(&[2, 3]);
        let (elems, unresolved, collisions) = enumerate(&g, &RealScalar::from_u64(20), &cfg());
        let got: Vec<u64> = elems
            .iter()
            .map(|e| e.value.as_rational().unwrap().to_integer().try_into().unwrap())
            .collect();
        assert_eq!(got, vec![1, 2, 3, 4, 6, 8, 9, 12, 16, 18]);
        assert!(unresolved.is_empty());
        assert!(collisions.is_empty());
    }

    #[test]
    fn enumerate_surd_powers() {
        // powers of 3+2sqrt2 up to 40: 1, alpha, alpha^2 = 17+12sqrt2
        let alpha = RealScalar::surd(2, rat(3, 1), rat(2, 1)).unwrap();
        let g = lit(std::slice::from_ref(&alpha));
        let (elems, _, _) = enumerate(&g, &RealScalar::from_u64(40), &cfg());
        assert_eq!(
            values_of(&elems),
            vec![
                RealScalar::one(),
                alpha.clone(),
                RealScalar::surd(2, rat(17, 1), rat(12, 1)).unwrap()
            ]
        );
    }

    #[test]
    fn enumerate_trivial_bound() {
        let g = ints(&[2]);
        let (elems, _, _) = enumerate(&g, &RealScalar::one(), &cfg());
        assert_eq!(values_of(&elems), vec![RealScalar::one()]);
    }

    #[test]
    fn counting_fixtures() {
        let g = ints(&[2, 3]);
        assert_eq!(counting(&g, &RealScalar::from_u64(20), &cfg()), (10, 2));
        // all primes up to 100: B(100) = 100, G(100) = pi(100) = 25
        let primes = crate::primeset::sieve(100, None);
        let g = GeneratorSet::new(
            primes.iter().map(|&p| RealScalar::from_u64(p)).collect(),
            GenLabel::Primes {
                limit: 100,
                modulus: None,
                residues: vec![],
            },
            &cfg(),
        )
        .unwrap();
        assert_eq!(counting(&g, &RealScalar::from_u64(100), &cfg()), (100, 25));
        assert_eq!(counting(&g, &RealScalar::one(), &cfg()), (1, 0));
    }

    #[test]
    fn prime_sanity_small() {
        // with all primes up to N the enumerated values are exactly 1..N
        let n = 1000u64;
        let primes = crate::primeset::sieve(n, None);
        let g = GeneratorSet::new(
            primes.iter().map(|&p| RealScalar::from_u64(p)).collect(),
            GenLabel::Primes {
                limit: n,
                modulus: None,
                residues: vec![],
            },
            &cfg(),
        )
        .unwrap();
        let (elems, unresolved, collisions) = enumerate(&g, &RealScalar::from_u64(n), &cfg());
        assert!(unresolved.is_empty());
        assert!(collisions.is_empty());
        assert_eq!(elems.len() as u64, n);
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(
                e.value.as_rational().unwrap(),
                &BigRational::from_integer(BigInt::from(i as u64 + 1))
            );
        }
    }

    #[test]
    fn oracle_equivalence_mixed_kinds() {
        let sets: Vec<GeneratorSet> = vec![
            ints(&[2, 3, 5]),
            lit(&[
                RealScalar::surd(2, rat(3, 1), rat(2, 1)).unwrap(),
                RealScalar::from_u64(4),
            ]),
            lit(&[
                RealScalar::rat_pow(rat(2, 1), rat(3, 2)).unwrap(),
                RealScalar::rat_pow(rat(3, 1), rat(3, 2)).unwrap(),
            ]),
            lit(&[
                RealScalar::surd(2, rat(1, 1), rat(1, 1)).unwrap(),
                RealScalar::surd(3, rat(1, 1), rat(1, 1)).unwrap(),
            ]),
        ];
        for g in &sets {
            let bound = RealScalar::from_u64(200);
            let (elems, unresolved, _) = enumerate(g, &bound, &cfg());
            assert!(unresolved.is_empty());
            let reference = oracle::brute_force(g, &bound, &cfg());
            let got: Vec<&ExponentVec> = elems.iter().map(|e| &e.exps).collect();
            let want: Vec<&ExponentVec> = reference.iter().map(|e| &e.exps).collect();
            assert_eq!(got, want, "set {:?}", g.label());
        }
    }

    #[test]
    fn collisions_are_flagged_and_violate() {
        // 4 = 2^2: the literal list {2, 4} collides at 4, 8, 16, ...
        let g = ints(&[2, 4]);
        let (elems, _, collisions) = enumerate(&g, &RealScalar::from_u64(8), &cfg());
        // values 1, 2, 4, 4, 8, 8 (2^3 and 2*4)
        assert_eq!(elems.len(), 6);
        assert_eq!(collisions.len(), 2);
        let report = gap_report(&g, &RealScalar::from_u64(8), &BigRational::one(), &cfg());
        assert!(report
            .violations
            .iter()
            .any(|v| v.gap.lo.is_zero() && v.gap.hi.is_zero()));
    }

    #[test]
    fn gap_report_integers() {
        let primes = crate::primeset::sieve(50, None);
        let g = GeneratorSet::new(
            primes.iter().map(|&p| RealScalar::from_u64(p)).collect(),
            GenLabel::Primes {
                limit: 50,
                modulus: None,
                residues: vec![],
            },
            &cfg(),
        )
        .unwrap();
        let report = gap_report(&g, &RealScalar::from_u64(50), &BigRational::one(), &cfg());
        assert_eq!(report.count, 50);
        assert!(report.zero_violations());
        assert!(report.unresolved.is_empty());
        let mg = report.min_gap.unwrap();
        assert_eq!(mg.lo, BigRational::one());
        assert_eq!(mg.hi, BigRational::one());
    }

    #[test]
    fn gap_report_quad_alpha_prefix() {
        // prime squares {4, 9, 25, 49} with alpha = 3+2sqrt2, bound 40:
        // values 1, 4, alpha, 9, 16, 4alpha, 25, alpha^2, 36;
        // min gap = 25 - (12+8sqrt2) = 1.68629...
        let alpha = RealScalar::surd(2, rat(3, 1), rat(2, 1)).unwrap();
        let g = lit(&[
            RealScalar::from_u64(4),
            RealScalar::from_u64(9),
            RealScalar::from_u64(25),
            RealScalar::from_u64(49),
            alpha,
        ]);
        let report = gap_report(&g, &RealScalar::from_u64(40), &BigRational::one(), &cfg());
        assert_eq!(report.count, 9);
        assert!(report.zero_violations());
        let mg = report.min_gap.unwrap();
        // 1.6862 < min gap < 1.6864
        assert!(mg.lo > rat(16862, 10000) && mg.hi < rat(16864, 10000));
        let (a, b) = report.argmin.unwrap();
        // attained at (4*alpha, 25)
        assert_eq!(b.value.as_rational(), Some(&rat(25, 1)));
        assert_eq!(a.value, RealScalar::surd(2, rat(12, 1), rat(8, 1)).unwrap());
    }

    #[test]
    fn gap_report_cpow() {
        // c = 3/2, primes up to 50, bound 100: B is n^(3/2); min gap is
        // 2^(3/2) - 1 = 1.8284... at (1, 2^(3/2))
        let primes = crate::primeset::sieve(50, None);
        let c = rat(3, 2);
        let gens: Vec<RealScalar> = primes
            .iter()
            .map(|&p| RealScalar::rat_pow(rat(p as i64, 1), c.clone()).unwrap())
            .collect();
        let g = GeneratorSet::new(
            gens,
            GenLabel::CPow { c, limit: 50 },
            &cfg(),
        )
        .unwrap();
        let report = gap_report(&g, &RealScalar::from_u64(100), &BigRational::one(), &cfg());
        assert!(report.zero_violations());
        let mg = report.min_gap.unwrap();
        assert!(mg.lo > rat(18284, 10000) && mg.hi < rat(18285, 10000));
        let (a, _b) = report.argmin.unwrap();
        assert!(a.value.is_one());
    }

    #[test]
    fn monotone_counting() {
        let g = ints(&[2, 3, 7]);
        let mut prev_b = 0;
        let mut prev_g = 0;
        for x in [1u64, 2, 5, 10, 50, 100] {
            let (b, gg) = counting(&g, &RealScalar::from_u64(x), &cfg());
            assert!(b >= prev_b && gg >= prev_g);
            prev_b = b;
            prev_g = gg;
        }
        // B(x) >= G(x) + 1 once x reaches the largest generator
        let (b, gg) = counting(&g, &RealScalar::from_u64(7), &cfg());
        assert!(b > gg);
    }

    #[test]
    fn scaling_reduction_on_sampled_pairs() {
        // pairs whose exponent vectors share a positive power of one
        // generator: the reduced pair's gap is certified no larger
        let alpha = RealScalar::surd(2, rat(3, 1), rat(2, 1)).unwrap();
        let g = lit(&[RealScalar::from_u64(4), RealScalar::from_u64(9), alpha]);
        let (elems, _, _) = enumerate(&g, &RealScalar::from_u64(2000), &cfg());
        let mut tested = 0;
        for a in &elems {
            for b in &elems {
                if a.exps >= b.exps || a.exps.is_empty() || b.exps.is_empty() {
                    continue;
                }
                // common generator with positive exponent in both
                let common: Vec<u32> = a
                    .exps
                    .iter()
                    .filter_map(|&(i, _)| {
                        b.exps.iter().find(|&&(j, _)| j == i).map(|_| i)
                    })
                    .collect();
                if common.is_empty() {
                    continue;
                }
                let i = common[0];
                let strip = |e: &Element| -> Element {
                    let mut exps = e.exps.clone();
                    for entry in exps.iter_mut() {
                        if entry.0 == i {
                            entry.1 -= 1;
                        }
                    }
                    exps.retain(|&(_, e)| e > 0);
                    let mut v = RealScalar::one();
                    for &(k, e) in &exps {
                        v = v.mul(&g.generators()[k as usize].pow(e as u64));
                    }
                    Element { exps, value: v }
                };
                let (ra, rb) = (strip(a), strip(b));
                let orig = gap_enclosure(a, b, 160);
                let red = gap_enclosure(&ra, &rb, 160);
                assert!(
                    red.lo <= orig.hi,
                    "reduced gap certified larger than original"
                );
                tested += 1;
                if tested > 200 {
                    return;
                }
            }
        }
        assert!(tested > 0);
    }

    #[test]
    fn generator_validation() {
        assert!(matches!(
            GeneratorSet::new(vec![RealScalar::one()], GenLabel::Literal, &cfg()),
            Err(SemigroupError::GeneratorNotAboveOne(_))
        ));
        // e^0.5 > 1 passes certified validation
        let e_half = RealScalar::exp_form(LinForm::from_offset(rat(1, 2)));
        assert!(GeneratorSet::new(vec![e_half], GenLabel::Literal, &cfg()).is_ok());
    }

    #[test]
    fn generators_sorted_ascending() {
        let g = lit(&[
            RealScalar::from_u64(9),
            RealScalar::surd(2, rat(3, 1), rat(2, 1)).unwrap(),
            RealScalar::from_u64(4),
        ]);
        let vals = g.generators();
        assert_eq!(vals[0], RealScalar::from_u64(4));
        assert_eq!(vals[1], RealScalar::surd(2, rat(3, 1), rat(2, 1)).unwrap());
        assert_eq!(vals[2], RealScalar::from_u64(9));
    }
}
