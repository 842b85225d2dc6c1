//! Generator-spec grammar: parsing and canonical printing.
//!
//! ```text
//! spec     := primes(limit [, mod=M, res=R1|R2|...])
//!           | cpow(c, limit)
//!           | quadalpha(a, b, q, limit)
//!           | example1(limit)
//!           | example2(limit)
//!           | list:[expr, ...]
//! expr     := rational | rational + rational*sqrt(int) | pow(rational, rational)
//! rational := ['-'] int ['/' int]
//! ```
//!
//! Parsing then printing then parsing is the identity on canonical forms.

use crate::exactnum::{ExactError, PrecisionCfg, RealScalar};
use crate::primeset::PrimeClassFilter;
use crate::semigroup::{GenLabel, GeneratorSet, SemigroupError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenSpecError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("semantic error: {0}")]
    Semantic(String),
}

/// A literal generator expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenExpr {
    Rational(BigRational),
    /// `base + coeff*sqrt(radicand)`
    Surd {
        base: BigRational,
        coeff: BigRational,
        radicand: u64,
    },
    /// `pow(base, exponent)`
    Pow {
        base: BigRational,
        exp: BigRational,
    },
}

impl fmt::Display for GenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenExpr::Rational(q) => write!(f, "{q}"),
            GenExpr::Surd {
                base,
                coeff,
                radicand,
            } => write!(f, "{base}+{coeff}*sqrt({radicand})"),
            GenExpr::Pow { base, exp } => write!(f, "pow({base}, {exp})"),
        }
    }
}

/// A parsed generator specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
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
    List(Vec<GenExpr>),
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Primes {
                limit,
                modulus: None,
                ..
            } => write!(f, "primes({limit})"),
            GenSpec::Primes {
                limit,
                modulus: Some(m),
                residues,
            } => {
                let rs: Vec<String> = residues.iter().map(|r| r.to_string()).collect();
                write!(f, "primes({limit}, mod={m}, res={})", rs.join("|"))
            }
            GenSpec::CPow { c, limit } => write!(f, "cpow({c}, {limit})"),
            GenSpec::QuadAlpha { a, b, q, limit } => {
                write!(f, "quadalpha({a}, {b}, {q}, {limit})")
            }
            GenSpec::Example1 { limit } => write!(f, "example1({limit})"),
            GenSpec::Example2 { limit } => write!(f, "example2({limit})"),
            GenSpec::List(exprs) => {
                let parts: Vec<String> = exprs.iter().map(|e| e.to_string()).collect();
                write!(f, "list:[{}]", parts.join(", "))
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Parser<'a> {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, GenSpecError> {
        Err(GenSpecError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<(), GenSpecError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn try_eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, GenSpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an identifier");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn integer(&mut self) -> Result<BigInt, GenSpecError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected an integer");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn u64_value(&mut self) -> Result<u64, GenSpecError> {
        let v = self.integer()?;
        u64::try_from(&v).map_or_else(|_| self.err("expected a nonnegative machine integer"), Ok)
    }

    fn rational(&mut self) -> Result<BigRational, GenSpecError> {
        let num = self.integer()?;
        if self.try_eat(b'/') {
            let den = self.integer()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// expr := pow(rational, rational) | rational [+ rational*sqrt(int)]
    fn expr(&mut self) -> Result<GenExpr, GenSpecError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(b"pow") {
            self.pos += 3;
            self.eat(b'(')?;
            let base = self.rational()?;
            self.eat(b',')?;
            let exp = self.rational()?;
            self.eat(b')')?;
            return Ok(GenExpr::Pow { base, exp });
        }
        let base = self.rational()?;
        if self.try_eat(b'+') {
            let coeff = self.rational()?;
            self.eat(b'*')?;
            let id = self.ident()?;
            if id != "sqrt" {
                return self.err("expected 'sqrt'");
            }
            self.eat(b'(')?;
            let radicand = self.u64_value()?;
            self.eat(b')')?;
            Ok(GenExpr::Surd {
                base,
                coeff,
                radicand,
            })
        } else {
            Ok(GenExpr::Rational(base))
        }
    }

    fn spec(&mut self) -> Result<GenSpec, GenSpecError> {
        let head = self.ident()?;
        match head.as_str() {
            "primes" => {
                self.eat(b'(')?;
                let limit = self.u64_value()?;
                let mut modulus = None;
                let mut residues = Vec::new();
                while self.try_eat(b',') {
                    let key = self.ident()?;
                    self.eat(b'=')?;
                    match key.as_str() {
                        "mod" => modulus = Some(self.u64_value()?),
                        "res" => {
                            residues.push(self.u64_value()?);
                            while self.try_eat(b'|') {
                                residues.push(self.u64_value()?);
                            }
                        }
                        other => return self.err(format!("unknown key '{other}'")),
                    }
                }
                self.eat(b')')?;
                if modulus.is_some() && residues.is_empty() {
                    return Err(GenSpecError::Semantic(
                        "mod= given without res=".to_string(),
                    ));
                }
                if modulus.is_none() && !residues.is_empty() {
                    return Err(GenSpecError::Semantic(
                        "res= given without mod=".to_string(),
                    ));
                }
                Ok(GenSpec::Primes {
                    limit,
                    modulus,
                    residues,
                })
            }
            "cpow" => {
                self.eat(b'(')?;
                let c = self.rational()?;
                self.eat(b',')?;
                let limit = self.u64_value()?;
                self.eat(b')')?;
                Ok(GenSpec::CPow { c, limit })
            }
            "quadalpha" => {
                self.eat(b'(')?;
                let a = self.u64_value()?;
                self.eat(b',')?;
                let b = self.u64_value()?;
                self.eat(b',')?;
                let q = self.u64_value()?;
                self.eat(b',')?;
                let limit = self.u64_value()?;
                self.eat(b')')?;
                Ok(GenSpec::QuadAlpha { a, b, q, limit })
            }
            "example1" => {
                self.eat(b'(')?;
                let limit = self.u64_value()?;
                self.eat(b')')?;
                Ok(GenSpec::Example1 { limit })
            }
            "example2" => {
                self.eat(b'(')?;
                let limit = self.u64_value()?;
                self.eat(b')')?;
                Ok(GenSpec::Example2 { limit })
            }
            "list" => {
                self.eat(b':')?;
                self.eat(b'[')?;
                let mut exprs = vec![self.expr()?];
                while self.try_eat(b',') {
                    exprs.push(self.expr()?);
                }
                self.eat(b']')?;
                Ok(GenSpec::List(exprs))
            }
            other => self.err(format!("unknown spec head '{other}'")),
        }
    }
}

/// Parse a generator specification.
pub fn parse_genspec(text: &str) -> Result<GenSpec, GenSpecError> {
    let mut p = Parser::new(text);
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(spec)
}

/// Parse a single literal generator expression.
pub fn parse_genexpr(text: &str) -> Result<GenExpr, GenSpecError> {
    let mut p = Parser::new(text);
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(expr)
}

/// Convert one literal expression to an exact scalar.
pub fn expr_to_scalar(expr: &GenExpr) -> Result<RealScalar, ExactError> {
    match expr {
        GenExpr::Rational(q) => RealScalar::from_rational(q.clone()),
        GenExpr::Surd {
            base,
            coeff,
            radicand,
        } => {
            if coeff.is_zero() || *radicand == 0 {
                return RealScalar::from_rational(base.clone());
            }
            // pull square factors out of the radicand
            let (s, m) = crate::exactnum::quadsurd::extract_square(*radicand);
            let coeff = coeff * BigRational::from_integer(BigInt::from(s));
            if m <= 1 {
                return RealScalar::from_rational(base + coeff);
            }
            RealScalar::surd(m, base.clone(), coeff)
        }
        GenExpr::Pow { base, exp } => RealScalar::rat_pow(base.clone(), exp.clone()),
    }
}

/// Materialize a parsed spec into a validated generator set.
pub fn to_generator_set(
    spec: &GenSpec,
    cfg: &PrecisionCfg,
) -> Result<GeneratorSet, GenSpecError> {
    let semantic = |e: &dyn std::fmt::Display| GenSpecError::Semantic(e.to_string());
    match spec {
        GenSpec::Primes {
            limit,
            modulus,
            residues,
        } => {
            let filter = modulus.map(|m| PrimeClassFilter::new(m, residues.iter().copied()));
            let gens: Vec<RealScalar> = crate::primeset::sieve(*limit, filter.as_ref())
                .into_iter()
                .map(RealScalar::from_u64)
                .collect();
            GeneratorSet::new(
                gens,
                GenLabel::Primes {
                    limit: *limit,
                    modulus: *modulus,
                    residues: residues.clone(),
                },
                cfg,
            )
            .map_err(|e| semantic(&e))
        }
        GenSpec::CPow { c, limit } => crate::constructions::cpow_generators(c, *limit, cfg)
            .map_err(|e| semantic(&e)),
        GenSpec::QuadAlpha { a, b, q, limit } => {
            let sys =
                crate::constructions::quad_alpha(*a, *b, *q, *limit, cfg).map_err(|e| semantic(&e))?;
            Ok(sys.gens)
        }
        GenSpec::Example1 { limit } => {
            let sys =
                crate::constructions::example1_generators(*limit, cfg).map_err(|e| semantic(&e))?;
            Ok(sys.gens)
        }
        GenSpec::Example2 { limit } => {
            let sys =
                crate::constructions::example2_generators(*limit, cfg).map_err(|e| semantic(&e))?;
            Ok(sys.gens)
        }
        GenSpec::List(exprs) => {
            let gens: Result<Vec<RealScalar>, ExactError> =
                exprs.iter().map(expr_to_scalar).collect();
            let gens = gens.map_err(|e| semantic(&e))?;
            GeneratorSet::new(gens, GenLabel::Literal, cfg).map_err(|e| semantic(&e))
        }
    }
}

/// Canonical text of a spec (the round-trip fixed point).
pub fn print_genspec(spec: &GenSpec) -> String {
    spec.to_string()
}

impl From<SemigroupError> for GenSpecError {
    fn from(e: SemigroupError) -> Self {
        GenSpecError::Semantic(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{compare, Ordering3};
    use num_traits::One;

    fn cfg() -> PrecisionCfg {
        PrecisionCfg::default()
    }

    #[test]
    fn parse_fixtures() {
        let s = parse_genspec("primes(100)").unwrap();
        let g = to_generator_set(&s, &cfg()).unwrap();
        assert_eq!(g.len(), 25);

        let s = parse_genspec("list:[3+2*sqrt(2)]").unwrap();
        let g = to_generator_set(&s, &cfg()).unwrap();
        assert_eq!(g.len(), 1);
        let expect = RealScalar::surd(
            2,
            BigRational::from_integer(BigInt::from(3)),
            BigRational::from_integer(BigInt::from(2)),
        )
        .unwrap();
        assert_eq!(compare(&g.generators()[0], &expect, &cfg()), Ordering3::Equal);

        let s = parse_genspec("cpow(3/2, 50)").unwrap();
        let g = to_generator_set(&s, &cfg()).unwrap();
        assert_eq!(g.len(), 15); // pi(50) = 15
    }

    #[test]
    fn parse_filtered_primes() {
        let s = parse_genspec("primes(30, mod=8, res=1|7)").unwrap();
        let g = to_generator_set(&s, &cfg()).unwrap();
        assert_eq!(g.len(), 3); // 7, 17, 23
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_genspec("primes(100").unwrap_err();
        assert!(matches!(err, GenSpecError::Syntax { .. }));
        let err = parse_genspec("unknown(3)").unwrap_err();
        assert!(matches!(err, GenSpecError::Syntax { .. }));
        let err = parse_genspec("primes(100) extra").unwrap_err();
        assert!(matches!(err, GenSpecError::Syntax { .. }));
    }

    #[test]
    fn semantic_errors() {
        // generator at or below 1
        let s = parse_genspec("list:[1]").unwrap();
        assert!(matches!(
            to_generator_set(&s, &cfg()),
            Err(GenSpecError::Semantic(_))
        ));
        // q not squarefree
        let s = parse_genspec("quadalpha(1, 1, 4, 50)").unwrap();
        assert!(matches!(
            to_generator_set(&s, &cfg()),
            Err(GenSpecError::Semantic(_))
        ));
        // c outside (1, 2)
        let s = parse_genspec("cpow(5/2, 50)").unwrap();
        assert!(matches!(
            to_generator_set(&s, &cfg()),
            Err(GenSpecError::Semantic(_))
        ));
    }

    #[test]
    fn round_trip_is_identity() {
        for text in [
            "primes(100)",
            "primes(30, mod=8, res=1|7)",
            "cpow(3/2, 50)",
            "quadalpha(1, 1, 2, 50)",
            "example1(100)",
            "example2(100)",
            "list:[3+2*sqrt(2), pow(2, 3/2), 7/2]",
            "list:[2, 3, 5]",
        ] {
            let once = parse_genspec(text).unwrap();
            let printed = print_genspec(&once);
            let twice = parse_genspec(&printed).unwrap();
            assert_eq!(once, twice, "round trip failed for {text}");
        }
    }

    #[test]
    fn surd_radicand_normalization() {
        // sqrt(8) = 2 sqrt(2); sqrt(4) folds to a rational
        let s = parse_genspec("list:[0+1*sqrt(8)]").unwrap();
        let g = to_generator_set(&s, &cfg()).unwrap();
        let expect = RealScalar::rat_pow(
            BigRational::from_integer(BigInt::from(8)),
            BigRational::new(BigInt::one(), BigInt::from(2)),
        )
        .unwrap();
        assert_eq!(compare(&g.generators()[0], &expect, &cfg()), Ordering3::Equal);
        let s = parse_genspec("list:[0+1*sqrt(4)]").unwrap();
        let g = to_generator_set(&s, &cfg()).unwrap();
        assert_eq!(g.generators()[0], RealScalar::from_u64(2));
    }
}
