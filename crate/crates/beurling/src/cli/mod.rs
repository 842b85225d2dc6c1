//! Command-line front end: generator-spec parsing, dispatch, and
//! deterministic JSON/CSV reports.
//!
//! Exit codes: 0 success, 2 not found, 3 precondition or input error,
//! 4 certification hard failure, 5 unresolved comparisons present.

pub mod genspec;
pub mod report;

pub use genspec::{parse_genspec, print_genspec, GenExpr, GenSpec, GenSpecError};

use crate::attacks::{self, SieveConfig};
use crate::cfrac::{self, PowerAttackOutcome};
use crate::constructions::{self, ConstructionError};
use crate::exactnum::{ExactError, PrecisionCfg, RealScalar};
use crate::metricfind::{self, FindAlphaConfig, MetricError};
use crate::primeset::ExcludedSet;
use crate::semigroup::{self, Element};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use report::ReportCtx;
use serde_json::{json, Value};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_CERTIFICATION: i32 = 4;
pub const EXIT_UNRESOLVED: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "beurling", disable_help_subcommand = true)]
struct Cli {
    /// Precision-escalation cap in bits (env: BEURLING_MAX_PRECISION_BITS).
    #[arg(long, global = true)]
    max_precision_bits: Option<u32>,
    /// Fractional decimal digits in report values.
    #[arg(long, global = true, default_value_t = 12)]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the semigroup elements up to a bound, in certified order.
    Enumerate {
        #[arg(long)]
        gen: String,
        #[arg(long)]
        limit: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Gap analysis of the enumerated prefix against a threshold.
    Gaps {
        #[arg(long)]
        gen: String,
        #[arg(long)]
        limit: String,
        #[arg(long)]
        delta: String,
    },
    /// Build a lacunary system and emit batch certificates.
    Construct {
        #[command(subcommand)]
        which: ConstructCmd,
    },
    /// Witness searches that collapse gaps.
    Attack {
        #[command(subcommand)]
        which: AttackCmd,
    },
    /// Measure-based finder for gap-preserving alpha.
    Metric {
        #[command(subcommand)]
        which: MetricCmd,
    },
}

#[derive(Args, Debug)]
struct CertifyOpts {
    /// Certify the K tightest consecutive pairs of the enumerated prefix.
    #[arg(long)]
    certify_pairs: Option<usize>,
    /// Enumeration bound used for pair selection.
    #[arg(long, default_value_t = 10_000)]
    enumerate_to: u64,
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    Quadalpha {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        certify: CertifyOpts,
    },
    Example1 {
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        certify: CertifyOpts,
    },
    Example2 {
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        certify: CertifyOpts,
    },
    Cpow {
        #[arg(long)]
        c: String,
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Subcommand, Debug)]
enum AttackCmd {
    Rational {
        #[arg(long)]
        alpha: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        exclude: Vec<u64>,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 1_000_000)]
        z_max: u64,
    },
    Irrational {
        #[arg(long)]
        alpha: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        exclude: Vec<u64>,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 48)]
        max_pairs: usize,
    },
    Cpow {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        bmax: u64,
    },
}

#[derive(Subcommand, Debug)]
enum MetricCmd {
    FindAlpha {
        #[arg(long)]
        gen: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        verify: u64,
        /// Explicit scale parameter; omitted selects the smallest admissible.
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
    },
}

/// A run outcome destined for the report envelope.
struct Outcome {
    result: Value,
    unresolved: u64,
    exit: i32,
}

#[derive(Debug)]
struct CliError {
    exit: i32,
    message: String,
    kind: &'static str,
}

impl CliError {
    fn precondition(message: impl Into<String>) -> CliError {
        CliError {
            exit: EXIT_PRECONDITION,
            message: message.into(),
            kind: "precondition",
        }
    }
}

impl From<GenSpecError> for CliError {
    fn from(e: GenSpecError) -> Self {
        CliError::precondition(e.to_string())
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::PrecisionExhausted { .. } => CliError {
                exit: EXIT_UNRESOLVED,
                message: e.to_string(),
                kind: "unresolved",
            },
            other => CliError::precondition(other.to_string()),
        }
    }
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        let exit = match &e {
            MetricError::NotFound(_) => EXIT_NOT_FOUND,
            MetricError::EmpiricalCheck(_) | MetricError::ResidualCollision(_) => {
                EXIT_CERTIFICATION
            }
            _ => EXIT_PRECONDITION,
        };
        CliError {
            exit,
            message: e.to_string(),
            kind: "metric",
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        let exit = match &e {
            ConstructionError::IdentityZero { .. }
            | ConstructionError::RatioCheck { .. }
            | ConstructionError::ChainUnresolved { .. } => EXIT_CERTIFICATION,
            _ => EXIT_PRECONDITION,
        };
        CliError {
            exit,
            message: e.to_string(),
            kind: "construction",
        }
    }
}

impl From<attacks::AttackError> for CliError {
    fn from(e: attacks::AttackError) -> Self {
        let exit = match &e {
            attacks::AttackError::NotFound { .. } => EXIT_NOT_FOUND,
            _ => EXIT_PRECONDITION,
        };
        CliError {
            exit,
            message: e.to_string(),
            kind: "attack",
        }
    }
}

impl From<cfrac::CfracError> for CliError {
    fn from(e: cfrac::CfracError) -> Self {
        CliError::precondition(e.to_string())
    }
}

impl From<crate::primeset::PrimeSetError> for CliError {
    fn from(e: crate::primeset::PrimeSetError) -> Self {
        CliError::precondition(e.to_string())
    }
}

impl From<crate::semigroup::SemigroupError> for CliError {
    fn from(e: crate::semigroup::SemigroupError) -> Self {
        CliError::precondition(e.to_string())
    }
}

/// Parse "5/2", "0.1" or "3" into an exact rational.
fn parse_rational_arg(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, CliError> {
        t.parse()
            .map_err(|_| CliError::precondition(format!("not an integer: '{t}'")))
    };
    if let Some((num, den)) = s.split_once('/') {
        let d = parse_int(den)?;
        if d.is_zero() {
            return Err(CliError::precondition("zero denominator"));
        }
        return Ok(BigRational::new(parse_int(num)?, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if !frac_part.chars().all(|c| c.is_ascii_digit()) || frac_part.is_empty() {
            return Err(CliError::precondition(format!("not a decimal: '{s}'")));
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let whole = parse_int(if int_part.is_empty() { "0" } else { int_part })?;
        let frac = parse_int(frac_part)?;
        let signed_frac = if whole.is_negative() || int_part.starts_with('-') {
            -frac
        } else {
            frac
        };
        return Ok(BigRational::new(whole * &scale + signed_frac, scale));
    }
    Ok(BigRational::from_integer(parse_int(s)?))
}

fn parse_scalar_arg(s: &str, what: &str) -> Result<RealScalar, CliError> {
    let expr = genspec::parse_genexpr(s)
        .map_err(|e| CliError::precondition(format!("{what}: {e}")))?;
    genspec::expr_to_scalar(&expr).map_err(CliError::from)
}

fn precision_cfg(cli_bits: Option<u32>) -> PrecisionCfg {
    let bits = cli_bits.or_else(|| {
        std::env::var("BEURLING_MAX_PRECISION_BITS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    match bits {
        Some(b) => PrecisionCfg::with_max_bits(b),
        None => PrecisionCfg::default(),
    }
}

/// The consecutive-pair certificates for the K tightest gaps of the
/// enumerated prefix.
fn tightest_pairs(elems: &[Element], k: usize, cfg: &PrecisionCfg) -> Vec<(Element, Element)> {
    let mut gaps: Vec<(BigRational, usize)> = Vec::new();
    for i in 1..elems.len() {
        let enc = crate::exactnum::diff_interval(&elems[i].value, &elems[i - 1].value, cfg.initial_bits)
            .abs();
        gaps.push((enc.hi_rational(), i - 1));
    }
    gaps.sort();
    gaps.into_iter()
        .take(k)
        .map(|(_, i)| (elems[i].clone(), elems[i + 1].clone()))
        .collect()
}

fn run_command(cli: &Cli, ctx: &ReportCtx) -> Result<Outcome, CliError> {
    let cfg = &ctx.cfg;
    match &cli.command {
        Command::Enumerate { gen, limit, format } => {
            let spec = parse_genspec(gen)?;
            let gens = genspec::to_generator_set(&spec, cfg)?;
            let bound = RealScalar::from_rational(parse_rational_arg(limit)?)
                .map_err(CliError::from)?;
            let (elems, unresolved, collisions) = semigroup::enumerate(&gens, &bound, cfg);
            let result = match format.as_str() {
                "csv" => json!({
                    "genspec": print_genspec(&spec),
                    "format": "csv",
                    "csv": ctx.enumeration_csv(&elems),
                    "count": elems.len(),
                }),
                "json" => json!({
                    "genspec": print_genspec(&spec),
                    "format": "json",
                    "count": elems.len(),
                    "elements": elems.iter().map(|e| ctx.element(e)).collect::<Vec<_>>(),
                    "collisions": collisions
                        .iter()
                        .map(|c| json!([ctx.element(&c.a), ctx.element(&c.b)]))
                        .collect::<Vec<_>>(),
                }),
                other => {
                    return Err(CliError::precondition(format!(
                        "unknown format '{other}' (expected json or csv)"
                    )))
                }
            };
            let unresolved = unresolved.len() as u64;
            Ok(Outcome {
                result,
                unresolved,
                exit: if unresolved > 0 { EXIT_UNRESOLVED } else { EXIT_OK },
            })
        }
        Command::Gaps { gen, limit, delta } => {
            let spec = parse_genspec(gen)?;
            let gens = genspec::to_generator_set(&spec, cfg)?;
            let bound = RealScalar::from_rational(parse_rational_arg(limit)?)
                .map_err(CliError::from)?;
            let delta = parse_rational_arg(delta)?;
            if !delta.is_positive() {
                return Err(CliError::precondition("delta must be positive"));
            }
            let report = semigroup::gap_report(&gens, &bound, &delta, cfg);
            let unresolved = report.unresolved.len() as u64;
            Ok(Outcome {
                result: json!({
                    "genspec": print_genspec(&spec),
                    "gaps": ctx.gap_report(&report),
                }),
                unresolved,
                exit: if unresolved > 0 { EXIT_UNRESOLVED } else { EXIT_OK },
            })
        }
        Command::Construct { which } => run_construct(which, ctx),
        Command::Attack { which } => run_attack(which, ctx),
        Command::Metric {
            which:
                MetricCmd::FindAlpha {
                    gen,
                    delta,
                    verify,
                    t,
                    cutoff,
                },
        } => {
            let spec = parse_genspec(gen)?;
            let gens = genspec::to_generator_set(&spec, cfg)?;
            let delta = parse_rational_arg(delta)?;
            let options = FindAlphaConfig {
                t: *t,
                cutoff: *cutoff,
            };
            let cert = metricfind::find_alpha(&gens, &delta, *verify, &options, cfg)?;
            let unresolved = cert.empirical.unresolved.len() as u64;
            Ok(Outcome {
                result: json!({
                    "genspec": print_genspec(&spec),
                    "certificate": ctx.alpha_certificate(&cert),
                }),
                unresolved,
                exit: if unresolved > 0 { EXIT_UNRESOLVED } else { EXIT_OK },
            })
        }
    }
}

fn run_construct(which: &ConstructCmd, ctx: &ReportCtx) -> Result<Outcome, CliError> {
    let cfg = &ctx.cfg;
    match which {
        ConstructCmd::Quadalpha {
            a,
            b,
            q,
            limit,
            certify,
        } => {
            let sys = constructions::quad_alpha(*a, *b, *q, *limit, cfg)?;
            let mut certs: Vec<Value> = Vec::new();
            if let Some(k) = certify.certify_pairs {
                let (elems, _, _) =
                    semigroup::enumerate(&sys.gens, &RealScalar::from_u64(certify.enumerate_to), cfg);
                for (ea, eb) in tightest_pairs(&elems, k, cfg) {
                    let (ka, ma) = sys.decompose(&ea);
                    let (kb, mb) = sys.decompose(&eb);
                    let cert = if ka >= kb {
                        constructions::certify_quad_gap(&sys, ka - kb, ma, mb)?
                    } else {
                        constructions::certify_quad_gap(&sys, kb - ka, mb, ma)?
                    };
                    certs.push(ctx.certificate(&cert));
                }
            }
            Ok(Outcome {
                result: json!({
                    "system": {
                        "kind": "quadalpha",
                        "a": a, "b": b, "q": q, "limit": limit,
                        "alpha": [sys.alpha.x.to_string(), sys.alpha.y.to_string()],
                        "generators": ctx.generator_set(&sys.gens),
                    },
                    "certificates": certs,
                }),
                unresolved: 0,
                exit: EXIT_OK,
            })
        }
        ConstructCmd::Example1 { limit, certify } => {
            let sys = constructions::example1_generators(*limit, cfg)?;
            let mut certs: Vec<Value> = Vec::new();
            if let Some(k) = certify.certify_pairs {
                let (elems, _, _) =
                    semigroup::enumerate(&sys.gens, &RealScalar::from_u64(certify.enumerate_to), cfg);
                for (ea, eb) in tightest_pairs(&elems, k, cfg) {
                    let m = sys.decompose(&ea);
                    let n = sys.decompose(&eb);
                    certs.push(ctx.certificate(&constructions::certify_example1_pair(&sys, m, n)?));
                }
            }
            let max_ratio = sys
                .max_ratio
                .as_ref()
                .map(|(p, e)| json!({"p": p, "ratio": ctx.enclosure(e)}));
            Ok(Outcome {
                result: json!({
                    "system": {
                        "kind": "example1",
                        "limit": limit,
                        "records": sys.records.iter().map(|r| json!({
                            "p": r.p,
                            "f": [r.f.x.to_string(), r.f.y.to_string()],
                            "g": [r.g.x.to_string(), r.g.y.to_string()],
                        })).collect::<Vec<_>>(),
                        "max_ratio": max_ratio,
                    },
                    "certificates": certs,
                }),
                unresolved: 0,
                exit: EXIT_OK,
            })
        }
        ConstructCmd::Example2 { limit, certify } => {
            let sys = constructions::example2_generators(*limit, cfg)?;
            let mut certs: Vec<Value> = Vec::new();
            if let Some(k) = certify.certify_pairs {
                let (elems, _, _) =
                    semigroup::enumerate(&sys.gens, &RealScalar::from_u64(certify.enumerate_to), cfg);
                for (ea, eb) in tightest_pairs(&elems, k, cfg) {
                    let m = sys.decompose(&ea);
                    let n = sys.decompose(&eb);
                    certs.push(ctx.certificate(&constructions::certify_example2_pair(
                        &sys, m, n, cfg,
                    )?));
                }
            }
            Ok(Outcome {
                result: json!({
                    "system": {
                        "kind": "example2",
                        "limit": limit,
                        "records": sys.records.iter().map(|r| json!({
                            "p": r.p,
                            "two_squares": [r.a, r.b],
                            "rho": [r.rho.re.to_string(), r.rho.im.to_string()],
                            "winding": r.k_winding,
                            "g": ctx.scalar_decimal(&r.g),
                        })).collect::<Vec<_>>(),
                    },
                    "certificates": certs,
                }),
                unresolved: 0,
                exit: EXIT_OK,
            })
        }
        ConstructCmd::Cpow { c, limit } => {
            let c = parse_rational_arg(c)?;
            let gens = constructions::cpow_generators(&c, *limit, cfg)?;
            Ok(Outcome {
                result: json!({
                    "system": {
                        "kind": "cpow",
                        "c": c.to_string(),
                        "limit": limit,
                        "generators": ctx.generator_set(&gens),
                    },
                }),
                unresolved: 0,
                exit: EXIT_OK,
            })
        }
    }
}

fn run_attack(which: &AttackCmd, ctx: &ReportCtx) -> Result<Outcome, CliError> {
    let cfg = &ctx.cfg;
    match which {
        AttackCmd::Rational {
            alpha,
            exclude,
            delta,
            z_max,
        } => {
            let excluded = ExcludedSet::new(exclude.iter().copied())?;
            let alpha_q = parse_rational_arg(alpha)?;
            let delta = parse_rational_arg(delta)?;
            let config = SieveConfig {
                z_max: *z_max,
                ..SieveConfig::default()
            };
            let w = attacks::attack_rational(
                &excluded,
                alpha_q.numer(),
                alpha_q.denom(),
                &delta,
                &config,
            )?;
            Ok(Outcome {
                result: json!({"witness": ctx.witness(&w)}),
                unresolved: 0,
                exit: EXIT_OK,
            })
        }
        AttackCmd::Irrational {
            alpha,
            exclude,
            delta,
            max_pairs,
        } => {
            let excluded = ExcludedSet::new(exclude.iter().copied())?;
            let alpha_s = parse_scalar_arg(alpha, "alpha")?;
            let delta = parse_rational_arg(delta)?;
            let config = SieveConfig {
                max_pairs: *max_pairs,
                ..SieveConfig::default()
            };
            let w = attacks::attack_irrational(&excluded, &alpha_s, &delta, &config, cfg)?;
            Ok(Outcome {
                result: json!({"witness": ctx.witness(&w)}),
                unresolved: 0,
                exit: EXIT_OK,
            })
        }
        AttackCmd::Cpow {
            alpha,
            c,
            eps,
            bmax,
        } => {
            let alpha_s = parse_scalar_arg(alpha, "alpha")?;
            let c = parse_rational_arg(c)?;
            let eps = parse_rational_arg(eps)?;
            match cfrac::power_attack(&alpha_s, &c, &eps, *bmax, cfg)? {
                PowerAttackOutcome::Found(w) => Ok(Outcome {
                    result: json!({"power_witness": {
                        "a": w.a.to_string(),
                        "b": w.b.to_string(),
                        "residual": ctx.enclosure(&w.residual),
                        "exact_zero": w.exact_zero,
                    }}),
                    unresolved: 0,
                    exit: EXIT_OK,
                }),
                PowerAttackOutcome::NotFound { best } => Ok(Outcome {
                    result: json!({
                        "not_found": true,
                        "best": best.map(|w| json!({
                            "a": w.a.to_string(),
                            "b": w.b.to_string(),
                            "residual": ctx.enclosure(&w.residual),
                        })),
                    }),
                    unresolved: 0,
                    exit: EXIT_NOT_FOUND,
                }),
            }
        }
    }
}

/// Entry point: run a command line, print the report, return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let echo: String = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let started = Instant::now();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let report = report::run_report(
                &echo,
                json!({}),
                json!({"error": {"kind": "usage", "message": e.to_string()}}),
                0,
                started.elapsed().as_millis(),
            );
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            return EXIT_PRECONDITION;
        }
    };
    let cfg = precision_cfg(cli.max_precision_bits);
    let ctx = ReportCtx {
        digits: cli.digits,
        cfg,
    };
    let config_echo = json!({
        "max_precision_bits": cfg.max_bits,
        "initial_precision_bits": cfg.initial_bits,
        "digits": cli.digits,
    });
    match run_command(&cli, &ctx) {
        Ok(outcome) => {
            let report = report::run_report(
                &echo,
                config_echo,
                outcome.result,
                outcome.unresolved,
                started.elapsed().as_millis(),
            );
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            outcome.exit
        }
        Err(e) => {
            let report = report::run_report(
                &echo,
                config_echo,
                json!({"error": {"kind": e.kind, "message": e.message, "exit": e.exit}}),
                0,
                started.elapsed().as_millis(),
            );
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            e.exit
        }
    }
}
