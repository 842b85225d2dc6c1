//! Deterministic JSON/CSV serialization of run results.
//!
//! Every decimal in the output carries an explicit error bound (or is an
//! outward-rounded enclosure endpoint pair), big integers are decimal
//! strings, and map keys serialize in sorted order, so identical invocations
//! produce byte-identical reports apart from the timing field.

use crate::attacks::{Witness, WitnessCase};
use crate::constructions::GapCertificate;
use crate::exactnum::{dec_string_dir, Dir, Enclosure, PrecisionCfg, RealScalar};
use crate::metricfind::AlphaCertificate;
use crate::semigroup::{Element, GapReport, GeneratorSet};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

/// Schema version of every JSON report.
pub const SCHEMA: u32 = 1;

pub struct ReportCtx {
    pub digits: u32,
    pub cfg: PrecisionCfg,
}

impl ReportCtx {
    pub fn enclosure(&self, e: &Enclosure) -> Value {
        let (lo, hi) = e.decimal_pair(self.digits);
        json!([lo, hi])
    }

    pub fn rational(&self, r: &BigRational) -> Value {
        json!(r.to_string())
    }

    /// Decimal with certified error bound: `[text, error_exponent]` means
    /// the rendering differs from the true value by less than
    /// `10^error_exponent`.
    pub fn scalar_decimal(&self, v: &RealScalar) -> Value {
        match crate::exactnum::to_decimal(v, self.digits, &self.cfg) {
            Ok(out) => json!({
                "decimal": out.text,
                "error_below": format!("1e-{}", self.digits),
            }),
            Err(_) => json!({
                "decimal": Value::Null,
                "error_below": Value::Null,
            }),
        }
    }

    pub fn element(&self, e: &Element) -> Value {
        let mut m = Map::new();
        m.insert("exponents".to_string(), json!(e.exps_string()));
        m.insert("value".to_string(), self.scalar_decimal(&e.value));
        m.insert("form".to_string(), json!(e.value.to_string()));
        Value::Object(m)
    }

    pub fn generator_set(&self, g: &GeneratorSet) -> Value {
        json!({
            "label": g.label().to_string(),
            "count": g.len(),
            "generators": g
                .generators()
                .iter()
                .map(|v| json!({
                    "form": v.to_string(),
                    "value": self.scalar_decimal(v),
                }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn gap_report(&self, r: &GapReport) -> Value {
        json!({
            "count": r.count,
            "delta": r.delta.to_string(),
            "min_gap": r.min_gap.as_ref().map(|e| self.enclosure(e)),
            "argmin": r.argmin.as_ref().map(|(a, b)| json!([self.element(a), self.element(b)])),
            "histogram": r
                .histogram
                .iter()
                .map(|(k, v)| json!({"bucket_pow2": k, "count": v}))
                .collect::<Vec<_>>(),
            "violations": r
                .violations
                .iter()
                .map(|v| json!({
                    "a": self.element(&v.a),
                    "b": self.element(&v.b),
                    "gap": self.enclosure(&v.gap),
                }))
                .collect::<Vec<_>>(),
            "unresolved": r
                .unresolved
                .iter()
                .map(|u| json!({
                    "a": self.element(&u.a),
                    "b": self.element(&u.b),
                    "bits_reached": u.bits_reached,
                    "context": u.context,
                }))
                .collect::<Vec<_>>(),
            "collisions": r
                .collisions
                .iter()
                .map(|c| json!([self.element(&c.a), self.element(&c.b)]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn witness(&self, w: &Witness) -> Value {
        let provenance = match &w.case {
            WitnessCase::Rational { m, u, v, d, z } => json!({
                "case": "rational",
                "exponent": m,
                "u": u.to_string(),
                "v": v.to_string(),
                "d": d,
                "z": z.to_string(),
            }),
            WitnessCase::Irrational {
                pair_index,
                x,
                y,
                lower,
                upper,
                parity_rule,
            } => json!({
                "case": "irrational",
                "pair_index": pair_index,
                "x": x.to_string(),
                "y": y.to_string(),
                "lower_convergent": [lower.0.to_string(), lower.1.to_string()],
                "upper_convergent": [upper.0.to_string(), upper.1.to_string()],
                "parity_rule": parity_rule,
            }),
        };
        json!({
            "delta": w.delta.to_string(),
            "n_prime": w.n_prime.to_string(),
            "m_prime": w.m_prime.to_string(),
            "gap": self.enclosure(&w.gap),
            "provenance": provenance,
        })
    }

    pub fn certificate(&self, c: &GapCertificate) -> Value {
        match c {
            GapCertificate::Quad {
                k,
                m,
                n,
                q,
                u,
                v,
                integer_factor,
                bound,
                gap,
            } => json!({
                "kind": "quad",
                "k": k,
                "m": m.to_string(),
                "n": n.to_string(),
                "q": q,
                "u": u.to_string(),
                "v": v.to_string(),
                "integer_factor": integer_factor.to_string(),
                "bound": bound.to_string(),
                "gap": self.enclosure(gap),
            }),
            GapCertificate::Example1 {
                m,
                n,
                f_m,
                f_n,
                integer_factor,
                bound,
                gap,
            } => json!({
                "kind": "example1",
                "m": m.to_string(),
                "n": n.to_string(),
                "f_m": [f_m.x.to_string(), f_m.y.to_string()],
                "f_n": [f_n.x.to_string(), f_n.y.to_string()],
                "integer_factor": integer_factor.to_string(),
                "bound": bound.to_string(),
                "gap": self.enclosure(gap),
            }),
            GapCertificate::Example2 {
                m,
                n,
                rho_m,
                rho_n,
                lattice_det,
                delta_f,
                bound,
                gap,
            } => json!({
                "kind": "example2",
                "m": m.to_string(),
                "n": n.to_string(),
                "rho_m": [rho_m.re.to_string(), rho_m.im.to_string()],
                "rho_n": [rho_n.re.to_string(), rho_n.im.to_string()],
                "lattice_det": lattice_det.to_string(),
                "delta_f": self.enclosure(delta_f),
                "bound": bound.to_string(),
                "gap": self.enclosure(gap),
            }),
        }
    }

    pub fn alpha_certificate(&self, c: &AlphaCertificate) -> Value {
        json!({
            "t": c.t,
            "beta": c.beta.to_string(),
            "alpha": self.enclosure(&c.alpha_enclosure),
            "alpha_form": c.alpha.to_string(),
            "surviving_interval": [
                dec_string_dir(&c.surviving.0, self.digits, Dir::Down),
                dec_string_dir(&c.surviving.1, self.digits, Dir::Up),
            ],
            "residual": dec_string_dir(&c.residual, self.digits, Dir::Up),
            "listed_measure": dec_string_dir(&c.listed_measure, self.digits, Dir::Up),
            "analytic_bound": dec_string_dir(&c.analytic_bound, self.digits, Dir::Up),
            "sqrt_sum": {
                "lower": dec_string_dir(&c.s_bound.s_lower, self.digits, Dir::Down),
                "upper": dec_string_dir(&c.s_bound.s_upper, self.digits, Dir::Up),
                "cutoff": c.s_bound.cutoff,
                "tail_method": c.s_bound.tail_method,
            },
            "empirical": self.gap_report(&c.empirical),
        })
    }

    /// CSV rows for an enumeration: `index,exponents,value,error`.
    pub fn enumeration_csv(&self, elems: &[Element]) -> String {
        let mut out = String::from("index,exponents,value,error\n");
        for (i, e) in elems.iter().enumerate() {
            let (val, err) = match crate::exactnum::to_decimal(&e.value, self.digits, &self.cfg) {
                Ok(d) => (d.text, format!("1e-{}", self.digits)),
                Err(_) => (String::from("unresolved"), String::from("unbounded")),
            };
            out.push_str(&format!("{},{},{},{}\n", i, e.exps_string(), val, err));
        }
        out
    }
}

/// The envelope printed by every invocation.
pub fn run_report(
    command_echo: &str,
    config: Value,
    result: Value,
    unresolved_count: u64,
    timing_ms: u128,
) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command_echo,
        "config": config,
        "result": result,
        "unresolved_count": unresolved_count,
        "timing_ms": timing_ms,
    })
}
