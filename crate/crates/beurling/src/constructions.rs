//! Builders for the lacunary generator systems and exact per-pair gap
//! certificates from their algebraic identities.
//!
//! Three constructions are covered: a quadratic `alpha = (a*sqrt(q) + b)^2`
//! adjoined to the prime squares, Pell-norm generators `g(p) = f(p)^2` over
//! `Z[sqrt(2)]`, and Gaussian-angle exponential generators `g(p) = e^(f(p))`.
//! Each certifier emits the exact integer at the heart of the identity along
//! with certified enclosures; certificates are computed independently of
//! `gap_report` so the two can cross-check each other.

use crate::exactnum::{
    self, quad_mul, Enclosure, ExactError, GaussianInt, LinForm,
    PrecisionCfg, QuadSurd, RealScalar,
};
use crate::primeset::{self, PrimeClassFilter, PrimeSetError};
use crate::semigroup::{Element, GenLabel, GeneratorSet, SemigroupError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("q = {0} must be a squarefree integer >= 2")]
    NotSquarefree(u64),
    #[error("exponent must satisfy 1 < c < 2, got {0}")]
    ExponentOutOfRange(BigRational),
    #[error("{n} is not a product of the system's qualifying primes (limit {limit})")]
    NotInSystem { n: u64, limit: u64 },
    #[error("arguments must be distinct")]
    NotDistinct,
    #[error(
        "certification failure: the integer factor vanished for {context}; this would falsify the gap bound — {trace}"
    )]
    IdentityZero { context: &'static str, trace: String },
    #[error("certification failure: ratio check did not certify for {context}: {trace}")]
    RatioCheck { context: &'static str, trace: String },
    #[error("certification failure: certified chain did not resolve for {context}: {trace}")]
    ChainUnresolved { context: &'static str, trace: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    PrimeSet(#[from] PrimeSetError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// An exact proof object for one pair's gap lower bound.
#[derive(Debug, Clone)]
pub enum GapCertificate {
    /// `|alpha^k m^2 - n^2| = |ratio| * |I| > |I| >= 1` with
    /// `beta = (a sqrt(q) + b)^k = u sqrt(q) + v` and
    /// `I = (vm - n)^2 - (um)^2 q`.
    Quad {
        k: u64,
        m: u64,
        n: u64,
        q: u64,
        u: BigInt,
        v: BigInt,
        integer_factor: BigInt,
        bound: BigInt,
        gap: Enclosure,
    },
    /// `|g(m) - g(n)| = |ratio| * |I| > |I| >= 1` with `f(m) = u + v sqrt2`,
    /// `f(n) = x + y sqrt2`, `I = (u - x)^2 - 2 (v - y)^2`.
    Example1 {
        m: u64,
        n: u64,
        f_m: QuadSurd,
        f_n: QuadSurd,
        integer_factor: BigInt,
        bound: BigInt,
        gap: Enclosure,
    },
    /// `|g(m) - g(n)| >= sqrt(mn) |f(m)-f(n)| >= sqrt(mn) |sin(f(m)-f(n))|
    /// = D >= 1` with `D = |Im(rho(m) conj(rho(n)))|` the lattice
    /// determinant, exact.
    Example2 {
        m: u64,
        n: u64,
        rho_m: GaussianInt,
        rho_n: GaussianInt,
        lattice_det: BigInt,
        delta_f: Enclosure,
        bound: BigInt,
        gap: Enclosure,
    },
}

impl GapCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            GapCertificate::Quad { .. } => "quad",
            GapCertificate::Example1 { .. } => "example1",
            GapCertificate::Example2 { .. } => "example2",
        }
    }

    /// The certified integer lower bound on the gap.
    pub fn bound(&self) -> &BigInt {
        match self {
            GapCertificate::Quad { bound, .. } => bound,
            GapCertificate::Example1 { bound, .. } => bound,
            GapCertificate::Example2 { bound, .. } => bound,
        }
    }

    pub fn gap(&self) -> &Enclosure {
        match self {
            GapCertificate::Quad { gap, .. } => gap,
            GapCertificate::Example1 { gap, .. } => gap,
            GapCertificate::Example2 { gap, .. } => gap,
        }
    }
}

// ---------------------------------------------------------------------------
// quadratic construction
// ---------------------------------------------------------------------------

/// Prime squares up to `limit` together with `alpha = (a sqrt(q) + b)^2`.
#[derive(Debug)]
pub struct QuadAlphaSystem {
    pub a: u64,
    pub b: u64,
    pub q: u64,
    pub limit: u64,
    /// `alpha` expanded exactly: `(a^2 q + b^2) + 2ab sqrt(q)`.
    pub alpha: QuadSurd,
    pub gens: GeneratorSet,
}

pub fn quad_alpha(
    a: u64,
    b: u64,
    q: u64,
    limit: u64,
    cfg: &PrecisionCfg,
) -> Result<QuadAlphaSystem, ConstructionError> {
    assert!(a >= 1 && b >= 1);
    if !exactnum::is_squarefree(q) {
        return Err(ConstructionError::NotSquarefree(q));
    }
    let alpha = QuadSurd::new(q, BigInt::from(a * a * q + b * b), BigInt::from(2 * a * b))?;
    debug_assert!(!alpha.y.is_zero());
    // generators are the prime squares up to the limit
    let mut gens: Vec<RealScalar> = primeset::sieve(limit, None)
        .into_iter()
        .filter(|p| p * p <= limit)
        .map(|p| RealScalar::from_u64(p * p))
        .collect();
    gens.push(RealScalar::from_quadsurd(&alpha)?);
    let gens = GeneratorSet::new(
        gens,
        GenLabel::QuadAlpha { a, b, q, limit },
        cfg,
    )?;
    Ok(QuadAlphaSystem {
        a,
        b,
        q,
        limit,
        alpha,
        gens,
    })
}

impl QuadAlphaSystem {
    /// Split an enumerated element into `(k, m)` with value `alpha^k * m^2`.
    pub fn decompose(&self, elem: &Element) -> (u64, u64) {
        let alpha_scalar = RealScalar::from_quadsurd(&self.alpha).expect("alpha is positive");
        let mut k = 0u64;
        let mut m = 1u64;
        for &(i, e) in &elem.exps {
            let g = &self.gens.generators()[i as usize];
            if *g == alpha_scalar {
                k += e as u64;
            } else {
                let sq = g
                    .as_rational()
                    .expect("non-alpha generators are prime squares")
                    .to_integer()
                    .to_u64()
                    .expect("prime square fits in u64");
                let p = (sq as f64).sqrt().round() as u64;
                debug_assert_eq!(p * p, sq);
                for _ in 0..e {
                    m *= p;
                }
            }
        }
        (k, m)
    }
}

/// Certify `|alpha^k m^2 - n^2| > 1` through the exact factorization of
/// `(beta m)^2 - n^2` with `beta = (a sqrt(q) + b)^k`.
pub fn certify_quad_gap(
    sys: &QuadAlphaSystem,
    k: u64,
    m: u64,
    n: u64,
) -> Result<GapCertificate, ConstructionError> {
    assert!(m >= 1 && n >= 1);
    let q = sys.q;
    // beta = (a sqrt(q) + b)^k = u sqrt(q) + v
    let base = QuadSurd::new(q, BigInt::from(sys.b), BigInt::from(sys.a))?;
    let beta = base.pow(k);
    let (u, v) = (beta.y.clone(), beta.x.clone());
    let mb = BigInt::from(m);
    let nb = BigInt::from(n);
    let vm_minus_n = &v * &mb - &nb;
    let um = &u * &mb;
    let integer_factor = &vm_minus_n * &vm_minus_n - &um * &um * BigInt::from(q);
    if integer_factor.is_zero() {
        return Err(ConstructionError::IdentityZero {
            context: "quad",
            trace: format!("k={k} m={m} n={n} u={u} v={v}"),
        });
    }
    // ratio check: |vm + n + um sqrt(q)| > |vm - n - um sqrt(q)|, exact
    let num = QuadSurd::new(q, &v * &mb + &nb, um.clone())?;
    let den = QuadSurd::new(q, vm_minus_n.clone(), -um.clone())?;
    let num_abs = abs_surd(&num);
    let den_abs = abs_surd(&den);
    if num_abs.cmp_surd(&den_abs).expect("same radicand") != Ordering::Greater {
        return Err(ConstructionError::RatioCheck {
            context: "quad",
            trace: format!("k={k} m={m} n={n}: |{num}| <= |{den}|"),
        });
    }
    // exact gap value: (beta m)^2 - n^2
    let beta_m = beta.scale(&mb);
    let gap_surd = quad_mul(&beta_m, &beta_m)
        .expect("same radicand")
        .sub(&QuadSurd::new(q, &nb * &nb, BigInt::zero())?)
        .expect("same radicand");
    let gap_abs = abs_surd(&gap_surd);
    let bound = integer_factor.abs();
    // the certified bound is strictly below the gap
    let bound_surd = QuadSurd::new(q, bound.clone(), BigInt::zero())?;
    if gap_abs.cmp_surd(&bound_surd).expect("same radicand") != Ordering::Greater {
        return Err(ConstructionError::RatioCheck {
            context: "quad",
            trace: format!("k={k} m={m} n={n}: gap <= |I|"),
        });
    }
    let gap = Enclosure::from_interval(&gap_abs.eval(192));
    Ok(GapCertificate::Quad {
        k,
        m,
        n,
        q,
        u,
        v,
        integer_factor,
        bound,
        gap,
    })
}

fn abs_surd(s: &QuadSurd) -> QuadSurd {
    if s.signum() < 0 {
        QuadSurd {
            d: s.d,
            x: -&s.x,
            y: -&s.y,
        }
    } else {
        s.clone()
    }
}

// ---------------------------------------------------------------------------
// Pell-norm construction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Example1Record {
    pub p: u64,
    /// Minimal positive representation `f(p)` with `|norm| = p`.
    pub f: QuadSurd,
    /// `g(p) = f(p)^2`.
    pub g: QuadSurd,
}

#[derive(Debug)]
pub struct Example1System {
    pub limit: u64,
    pub records: Vec<Example1Record>,
    pub gens: GeneratorSet,
    /// Argmax of `f(p)/sqrt(p)` over the system and its certified enclosure;
    /// the empirical constant in `f(p) < C sqrt(p)`.
    pub max_ratio: Option<(u64, Enclosure)>,
}

pub fn example1_generators(
    limit: u64,
    cfg: &PrecisionCfg,
) -> Result<Example1System, ConstructionError> {
    let filter = PrimeClassFilter::new(8, [1, 7]);
    let mut records = Vec::new();
    for p in primeset::sieve(limit, Some(&filter)) {
        let f = primeset::min_pell_rep(p)?;
        let g = quad_mul(&f, &f).expect("same radicand");
        records.push(Example1Record { p, f, g });
    }
    // argmax of f(p)^2/p by exact cross-multiplied comparison
    let mut max_idx: Option<usize> = None;
    for (i, rec) in records.iter().enumerate() {
        let better = match max_idx {
            None => true,
            Some(j) => {
                let lhs = records[i].g.scale(&BigInt::from(records[j].p));
                let rhs = records[j].g.scale(&BigInt::from(rec.p));
                lhs.cmp_surd(&rhs).expect("same radicand") == Ordering::Greater
            }
        };
        if better {
            max_idx = Some(i);
        }
    }
    let max_ratio = max_idx.map(|i| {
        let rec = &records[i];
        // ratio^2 = g(p)/p; enclose the square root of its enclosure
        let ratio_sq = rec
            .g
            .eval(160)
            .mul(&crate::exactnum::Interval::from_rational(
                &BigRational::new(BigInt::one(), BigInt::from(rec.p)),
                160,
            ), 160);
        let ratio = crate::exactnum::functions::sqrt_interval(&ratio_sq, 160);
        (rec.p, Enclosure::from_interval(&ratio))
    });
    let gens = GeneratorSet::new(
        records
            .iter()
            .map(|r| RealScalar::from_quadsurd(&r.g))
            .collect::<Result<Vec<_>, _>>()?,
        GenLabel::Example1 { limit },
        cfg,
    )?;
    Ok(Example1System {
        limit,
        records,
        gens,
        max_ratio,
    })
}

impl Example1System {
    /// Factor `n` over the system's qualifying primes.
    pub fn factor(&self, n: u64) -> Result<Vec<(u64, u32)>, ConstructionError> {
        factor_over(n, self.records.iter().map(|r| r.p), self.limit)
    }

    /// Multiplicative extension `f(n) = prod f(p)^(e_p)`, exact in
    /// `Z[sqrt(2)]`.
    pub fn f_of(&self, n: u64) -> Result<QuadSurd, ConstructionError> {
        let mut acc = QuadSurd::one(2);
        for (p, e) in self.factor(n)? {
            let rec = self
                .records
                .iter()
                .find(|r| r.p == p)
                .expect("factor_over returns system primes");
            acc = quad_mul(&acc, &rec.f.pow(e as u64)).expect("same radicand");
        }
        Ok(acc)
    }

    /// Integer value of an enumerated element: the product of the underlying
    /// primes (the element's value is `g` of this integer).
    pub fn decompose(&self, elem: &Element) -> u64 {
        let mut m = 1u64;
        for &(i, e) in &elem.exps {
            let g = &self.gens.generators()[i as usize];
            let rec = self
                .records
                .iter()
                .find(|r| &RealScalar::from_quadsurd(&r.g).unwrap() == g)
                .expect("generator belongs to a record");
            for _ in 0..e {
                m *= rec.p;
            }
        }
        m
    }
}

fn factor_over(
    n: u64,
    primes: impl Iterator<Item = u64>,
    limit: u64,
) -> Result<Vec<(u64, u32)>, ConstructionError> {
    let mut rem = n;
    let mut out = Vec::new();
    for p in primes {
        let mut e = 0u32;
        while rem.is_multiple_of(p) {
            rem /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    if rem != 1 {
        return Err(ConstructionError::NotInSystem { n, limit });
    }
    Ok(out)
}

/// Certify `|g(m) - g(n)| > 1` through the exact factorization of
/// `f(m)^2 - f(n)^2` in `Z[sqrt(2)]`.
pub fn certify_example1_pair(
    sys: &Example1System,
    m: u64,
    n: u64,
) -> Result<GapCertificate, ConstructionError> {
    if m == n {
        return Err(ConstructionError::NotDistinct);
    }
    let f_m = sys.f_of(m)?;
    let f_n = sys.f_of(n)?;
    let (u, v) = (f_m.x.clone(), f_m.y.clone());
    let (x, y) = (f_n.x.clone(), f_n.y.clone());
    let du = &u - &x;
    let dv = &v - &y;
    let integer_factor = &du * &du - BigInt::from(2) * &dv * &dv;
    if integer_factor.is_zero() {
        return Err(ConstructionError::IdentityZero {
            context: "example1",
            trace: format!("m={m} n={n} f(m)={f_m} f(n)={f_n}"),
        });
    }
    // |(u+x) + (v+y) sqrt2| > |(u-x) - (v-y) sqrt2|, exact
    let num = QuadSurd::new(2, &u + &x, &v + &y)?;
    let den = QuadSurd::new(2, du, -dv)?;
    if abs_surd(&num)
        .cmp_surd(&abs_surd(&den))
        .expect("same radicand")
        != Ordering::Greater
    {
        return Err(ConstructionError::RatioCheck {
            context: "example1",
            trace: format!("m={m} n={n}: |{num}| <= |{den}|"),
        });
    }
    let g_m = quad_mul(&f_m, &f_m).expect("same radicand");
    let g_n = quad_mul(&f_n, &f_n).expect("same radicand");
    let gap_surd = abs_surd(&g_m.sub(&g_n).expect("same radicand"));
    let bound = integer_factor.abs();
    let bound_surd = QuadSurd::new(2, bound.clone(), BigInt::zero())?;
    if gap_surd.cmp_surd(&bound_surd).expect("same radicand") != Ordering::Greater {
        return Err(ConstructionError::RatioCheck {
            context: "example1",
            trace: format!("m={m} n={n}: gap <= |I|"),
        });
    }
    let gap = Enclosure::from_interval(&gap_surd.eval(192));
    Ok(GapCertificate::Example1 {
        m,
        n,
        f_m,
        f_n,
        integer_factor,
        bound,
        gap,
    })
}

// ---------------------------------------------------------------------------
// Gaussian-angle construction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Example2Record {
    pub p: u64,
    /// `p = a^2 + b^2` with `0 < a < b`.
    pub a: u64,
    pub b: u64,
    /// `rho(p) = b + i a`, a Gaussian prime above `p`.
    pub rho: GaussianInt,
    /// Winding integer: `f(p) = atan(a/b) + 2 k pi` lies in
    /// `(ln p, ln p + 2 pi)`.
    pub k_winding: i64,
    /// The exponent `f(p)` as an exact linear form.
    pub f: LinForm,
    /// `g(p) = e^(f(p))`.
    pub g: RealScalar,
}

#[derive(Debug)]
pub struct Example2System {
    pub limit: u64,
    pub records: Vec<Example2Record>,
    pub gens: GeneratorSet,
}

pub fn example2_generators(
    limit: u64,
    cfg: &PrecisionCfg,
) -> Result<Example2System, ConstructionError> {
    let filter = PrimeClassFilter::new(4, [1]);
    let mut records = Vec::new();
    for p in primeset::sieve(limit, Some(&filter)) {
        let (a, b) = primeset::two_squares(p)?;
        let rho = GaussianInt::new(b, a);
        let h = LinForm::atan_term(a, b, &BigRational::one());
        // unique k with ln p < h + 2 k pi < ln p + 2 pi:
        // k = floor((ln p - h) / (2 pi)) + 1, certified by enclosure floor
        let target = LinForm::log_int(p, &BigRational::one())
            .sub(&h)
            .scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
        let k = {
            let mut found: Option<i64> = None;
            for prec in cfg.steps() {
                let iv = target.eval(prec);
                let pi_iv = exactnum::const_interval(exactnum::ConstKey::Pi, prec);
                let ratio = iv.div(&pi_iv, prec);
                let flo = ratio.lo_rational().floor().to_integer();
                let fhi = ratio.hi_rational().floor().to_integer();
                if flo == fhi {
                    found = Some(flo.to_i64().expect("winding fits i64") + 1);
                    break;
                }
            }
            found.ok_or(ExactError::PrecisionExhausted {
                bits: cfg.max_bits,
            })?
        };
        let f = h.add(&LinForm::pi_times(BigRational::from_integer(BigInt::from(
            2 * k,
        ))));
        // certify ln p < f < ln p + 2 pi (the right inequality is exactly
        // g(p) < e^(2 pi) p)
        let lnp = LinForm::log_int(p, &BigRational::one());
        let below = f.sub(&lnp);
        let above = lnp
            .add(&LinForm::pi_times(BigRational::from_integer(BigInt::from(2))))
            .sub(&f);
        let mut certified = false;
        for prec in cfg.steps() {
            if below.eval(prec).strictly_positive() && above.eval(prec).strictly_positive() {
                certified = true;
                break;
            }
        }
        if !certified {
            return Err(ConstructionError::ChainUnresolved {
                context: "example2 winding window",
                trace: format!("p={p}"),
            });
        }
        let g = RealScalar::exp_form(f.clone());
        records.push(Example2Record {
            p,
            a,
            b,
            rho,
            k_winding: k,
            f,
            g,
        });
    }
    let gens = GeneratorSet::new(
        records.iter().map(|r| r.g.clone()).collect(),
        GenLabel::Example2 { limit },
        cfg,
    )?;
    Ok(Example2System {
        limit,
        records,
        gens,
    })
}

impl Example2System {
    pub fn factor(&self, n: u64) -> Result<Vec<(u64, u32)>, ConstructionError> {
        factor_over(n, self.records.iter().map(|r| r.p), self.limit)
    }

    /// Multiplicative extension of `rho`, exact Gaussian arithmetic.
    pub fn rho_of(&self, n: u64) -> Result<GaussianInt, ConstructionError> {
        let mut acc = GaussianInt::one();
        for (p, e) in self.factor(n)? {
            let rec = self.records.iter().find(|r| r.p == p).unwrap();
            acc = acc.mul(&rec.rho.pow(e as u64));
        }
        Ok(acc)
    }

    /// Additive extension of the exponent `f`.
    pub fn f_of(&self, n: u64) -> Result<LinForm, ConstructionError> {
        let mut acc = LinForm::zero();
        for (p, e) in self.factor(n)? {
            let rec = self.records.iter().find(|r| r.p == p).unwrap();
            acc = acc.add(&rec.f.scale(&BigRational::from_integer(BigInt::from(e))));
        }
        Ok(acc)
    }

    pub fn decompose(&self, elem: &Element) -> u64 {
        let mut m = 1u64;
        for &(i, e) in &elem.exps {
            let g = &self.gens.generators()[i as usize];
            let rec = self
                .records
                .iter()
                .find(|r| &r.g == g)
                .expect("generator belongs to a record");
            for _ in 0..e {
                m *= rec.p;
            }
        }
        m
    }
}

/// Certify `|g(m) - g(n)| >= D >= 1` via the lattice-triangle determinant and
/// the certified chain `|g(m)-g(n)| >= sqrt(mn)|f(m)-f(n)| >=
/// sqrt(mn)|sin(f(m)-f(n))| = D`.
pub fn certify_example2_pair(
    sys: &Example2System,
    m: u64,
    n: u64,
    cfg: &PrecisionCfg,
) -> Result<GapCertificate, ConstructionError> {
    if m == n {
        return Err(ConstructionError::NotDistinct);
    }
    let rho_m = sys.rho_of(m)?;
    let rho_n = sys.rho_of(n)?;
    let cross = rho_m.mul(&rho_n.conj());
    let lattice_det = cross.im.abs();
    if lattice_det.is_zero() {
        return Err(ConstructionError::IdentityZero {
            context: "example2",
            trace: format!("m={m} n={n} rho(m)={rho_m} rho(n)={rho_n}"),
        });
    }
    let f_m = sys.f_of(m)?;
    let f_n = sys.f_of(n)?;
    let delta = f_m.sub(&f_n);
    let g_m = RealScalar::exp_form(f_m);
    let g_n = RealScalar::exp_form(f_n);
    // sin |delta| = D / sqrt(mn) exactly (lattice area identity); certify the
    // two analytic inequalities by enclosures with escalation:
    //   (1) |delta| >= D / sqrt(mn)
    //   (2) |g(m) - g(n)| >= sqrt(mn) * |delta|
    let mn = BigRational::from_integer(BigInt::from(m) * BigInt::from(n));
    let mut delta_enc = Enclosure::from_interval(&delta.eval(cfg.initial_bits));
    let mut gap_enc = Enclosure::from_interval(
        &exactnum::diff_interval(&g_m, &g_n, cfg.initial_bits).abs(),
    );
    let mut ok1 = false;
    let mut ok2 = false;
    for p in cfg.steps() {
        let sqrt_mn = exactnum::functions::sqrt_rational(&mn, p);
        let delta_iv = delta.eval(p).abs();
        delta_enc = Enclosure::from_interval(&delta_iv);
        // (1): lo(|delta| * sqrt(mn)) >= D
        let lhs1 = delta_iv.mul(&sqrt_mn, p);
        ok1 = lhs1.lo_rational() >= BigRational::from_integer(lattice_det.clone());
        // (2): lo(gap) >= hi(sqrt(mn) * |delta|)
        let gap_iv = exactnum::diff_interval(&g_m, &g_n, p).abs();
        gap_enc = Enclosure::from_interval(&gap_iv);
        let rhs2 = sqrt_mn.mul(&delta_iv, p);
        ok2 = gap_iv.lo_rational() >= rhs2.hi_rational();
        if ok1 && ok2 {
            break;
        }
    }
    if !(ok1 && ok2) {
        return Err(ConstructionError::ChainUnresolved {
            context: "example2",
            trace: format!("m={m} n={n} ok1={ok1} ok2={ok2}"),
        });
    }
    Ok(GapCertificate::Example2 {
        m,
        n,
        rho_m,
        rho_n,
        lattice_det: lattice_det.clone(),
        delta_f: delta_enc,
        bound: lattice_det,
        gap: gap_enc,
    })
}

// ---------------------------------------------------------------------------
// c-th powers of primes
// ---------------------------------------------------------------------------

/// `{p^c : p <= limit}` for a rational exponent strictly between 1 and 2.
pub fn cpow_generators(
    c: &BigRational,
    limit: u64,
    cfg: &PrecisionCfg,
) -> Result<GeneratorSet, ConstructionError> {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    if !(c > &one && c < &two) {
        return Err(ConstructionError::ExponentOutOfRange(c.clone()));
    }
    let gens: Vec<RealScalar> = primeset::sieve(limit, None)
        .into_iter()
        .map(|p| {
            RealScalar::rat_pow(BigRational::from_integer(BigInt::from(p)), c.clone())
                .expect("small prime base factors")
        })
        .collect();
    Ok(GeneratorSet::new(
        gens,
        GenLabel::CPow {
            c: c.clone(),
            limit,
        },
        cfg,
    )?)
}
