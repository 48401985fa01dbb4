//! Subcommand execution.

use std::fmt::Display;
use std::path::Path;
use std::sync::Mutex;

use normlab_core::arith::{is_prime, primes_in, PrimeRange};
use normlab_core::density::{
    ap_search, chebotarev_table, divergence_curve, empirical_integer_density, empirical_prime_density,
    first_high_primes, sieve_bound, sieve_set_member,
};
use normlab_core::field::{validate, FieldSpec, NormFormHandle, NumberField};
use normlab_core::quadratic::class_group;
use normlab_core::represent::{is_norm_integer, is_norm_prime};
use normlab_core::scan::ScanOptions;
use normlab_core::splitting::{class_of, splitting_type, Tri};
use normlab_core::{bundled, Error};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cache::RunKey;
use crate::output::Outcome;
use crate::{Command, Global};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Display) -> Self {
        CliError {
            code: 1,
            message: msg.to_string(),
        }
    }

    pub fn io(e: std::io::Error) -> Self {
        CliError::usage(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidSpec(_)
            | Error::Reducible(_)
            | Error::SingularBasis
            | Error::NonIntegralBasis(_)
            | Error::NotMonic
            | Error::InvalidPermutation(_)
            | Error::NotFundamentalDiscriminant(_)
            | Error::MissingGroup
            | Error::UnsupportedDegree(_) => 2,
            Error::ClosureOverflow(_)
            | Error::DimensionTooLarge(_)
            | Error::DiscriminantTooLarge(_)
            | Error::Overflow => 3,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type Res<T> = Result<T, CliError>;

/// A spec file path, or the name of a bundled spec with or without `.json`.
pub fn load_spec(arg: &str) -> Res<FieldSpec> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(CliError::io)?;
        return Ok(FieldSpec::from_json(&text)?);
    }
    let name = path
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or(arg)
        .trim_end_matches(".json");
    if !bundled::names().any(|n| n == name) {
        return Err(CliError::usage(format!("unknown spec {arg}")));
    }
    Ok(bundled::spec(name)?)
}

fn spec_digest(spec: &FieldSpec) -> String {
    format!("{:x}", Sha256::digest(spec.to_json().as_bytes()))
}

fn spec_arg(c: &Command) -> Option<&str> {
    match c {
        Command::Form { spec, .. }
        | Command::Check { spec }
        | Command::Split { spec, .. }
        | Command::Classify { spec, .. }
        | Command::Density { spec, .. }
        | Command::Chebotarev { spec, .. }
        | Command::Diverge { spec, .. }
        | Command::Ap { spec, .. }
        | Command::Represent { spec, .. } => Some(spec),
        Command::Bound { high, .. } => high.as_deref(),
        Command::Classgroup { .. } => None,
    }
}

/// Cache key: label, subcommand and parameters, with the spec's digest so
/// that two files sharing a label never collide.
pub fn key(c: &Command) -> Res<RunKey> {
    let (subcommand, mut params) = match c {
        Command::Form { eval, .. } => ("form", json!({ "eval": eval })),
        Command::Check { .. } => ("check", json!({})),
        Command::Split { p, from, to, .. } => ("split", json!({ "p": p, "from": from, "to": to })),
        Command::Classify { p, from, to, .. } => ("classify", json!({ "p": p, "from": from, "to": to })),
        Command::Density { bound, integers, .. } => ("density", json!({ "bound": bound, "integers": integers })),
        Command::Chebotarev { bound, .. } => ("chebotarev", json!({ "bound": bound })),
        Command::Bound {
            primes, count, check, ..
        } => ("bound", json!({ "primes": primes, "count": count, "check": check })),
        Command::Diverge { checkpoints, bound, .. } => {
            ("diverge", json!({ "checkpoints": checkpoints, "bound": bound }))
        }
        Command::Ap { k, bound, primes, .. } => ("ap", json!({ "k": k, "bound": bound, "primes": primes })),
        Command::Represent { n, prime, to, .. } => ("represent", json!({ "n": n, "prime": prime, "to": to })),
        Command::Classgroup { d } => ("classgroup", json!({ "d": d })),
    };
    let label = match spec_arg(c) {
        Some(arg) => {
            let spec = load_spec(arg)?;
            params["spec_digest"] = Value::String(spec_digest(&spec));
            spec.label
        }
        None => "-".to_string(),
    };
    Ok(RunKey {
        label,
        subcommand: subcommand.to_string(),
        params,
    })
}

fn value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("result types serialize")
}

fn big(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn field(arg: &str) -> Res<NumberField> {
    Ok(validate(load_spec(arg)?)?)
}

fn handle(arg: &str) -> Res<NormFormHandle> {
    Ok(field(arg)?.norm_form()?)
}

/// Runs a fallible predicate inside a scan, keeping the first error.
struct Guarded {
    error: Mutex<Option<Error>>,
}

impl Guarded {
    fn new() -> Self {
        Guarded {
            error: Mutex::new(None),
        }
    }

    fn wrap(&self, r: normlab_core::Result<Tri>) -> Tri {
        r.unwrap_or_else(|e| {
            self.error.lock().expect("not poisoned").get_or_insert(e);
            Tri::Unknown
        })
    }

    fn finish(self) -> Res<()> {
        match self.error.into_inner().expect("not poisoned") {
            Some(e) => Err(e.into()),
            None => Ok(()),
        }
    }
}

fn prime_range(p: Option<u64>, from: Option<u64>, to: Option<u64>) -> Res<Vec<u64>> {
    match (p, from, to) {
        (Some(p), None, None) => {
            if is_prime(p) {
                Ok(vec![p])
            } else {
                Err(Error::NotPrime(p).into())
            }
        }
        (None, Some(a), Some(b)) if a <= b => Ok(primes_in(PrimeRange::new(a, b)).collect()),
        (None, Some(_), Some(_)) => Err(CliError::usage("empty range")),
        _ => Err(CliError::usage("give either a prime or --from/--to")),
    }
}

pub fn execute(c: &Command, g: &Global) -> Res<Outcome> {
    let opts = ScanOptions::with_threads(g.threads);
    let seed = g.seed;
    let out = match c {
        Command::Form { spec, eval } => {
            let h = handle(spec)?;
            match eval {
                None => Outcome::Single(json!({
                    "label": h.field.label(),
                    "degree": h.degree(),
                    "form": h.to_string(),
                })),
                Some(v) => {
                    if v.len() != h.degree() {
                        return Err(CliError::usage(format!("--eval needs {} coordinates", h.degree())));
                    }
                    Outcome::Single(json!({
                        "label": h.field.label(),
                        "point": v,
                        "value": big(&h.eval_i64(v)),
                    }))
                }
            }
        }
        Command::Check { spec } => {
            let k = field(spec)?;
            Outcome::Single(json!({
                "label": k.label(),
                "degree": k.degree(),
                "poly": k.poly().to_i64(),
                "poly_discriminant": big(k.poly_discriminant()),
                "basis_denominator": big(&k.spec().basis_denominator()),
                "irreducibility": value(k.irreducibility()),
                "class_number": k.class_number(),
                "group_order": k.group().map(|g| g.order()),
                "warnings": k.warnings(),
            }))
        }
        Command::Split { spec, p, from, to } => {
            let k = field(spec)?;
            let mut lines = Vec::new();
            for p in prime_range(*p, *from, *to)? {
                let st = splitting_type(&k, p, seed)?;
                let mut v = value(&st);
                v["class"] = value(&class_of(&st));
                lines.push(v);
            }
            Outcome::Lines(lines)
        }
        Command::Classify { spec, p, from, to } => {
            let k = field(spec)?;
            let mut lines = Vec::new();
            for p in prime_range(*p, *from, *to)? {
                let st = splitting_type(&k, p, seed)?;
                lines.push(json!({ "p": p, "class": class_of(&st) }));
            }
            Outcome::Lines(lines)
        }
        Command::Density { spec, bound, integers } => {
            let h = handle(spec)?;
            let guard = Guarded::new();
            let est = if *integers {
                empirical_integer_density(|n| guard.wrap(is_norm_integer(&h, n, seed).map(|v| v.answer)), *bound, opts)
            } else {
                empirical_prime_density(|p| guard.wrap(is_norm_prime(&h, p, seed).map(|v| v.answer)), *bound, opts)
            };
            guard.finish()?;
            let mut v = value(&est);
            v["label"] = json!(h.field.label());
            v["kind"] = json!(if *integers { "integers" } else { "primes" });
            v["ratio"] = json!(est.ratio());
            Outcome::Single(v)
        }
        Command::Chebotarev { spec, bound } => {
            let k = field(spec)?;
            let t = chebotarev_table(&k, *bound, opts)?;
            let mut v = value(&t);
            v["label"] = json!(k.label());
            v["max_deviation"] = json!(t.max_deviation());
            Outcome::Single(v)
        }
        Command::Bound {
            primes,
            high,
            count,
            check,
        } => {
            let ps = match (primes, high) {
                (Some(ps), _) => ps.clone(),
                (None, Some(spec)) => first_high_primes(&field(spec)?, count.unwrap_or(0), seed)?,
                (None, None) => return Err(CliError::usage("give --primes or --high with --count")),
            };
            let b = sieve_bound(&ps)?;
            let mut v = json!({
                "primes": ps,
                "bound": b.to_string(),
                "value": b.to_f64(),
            });
            if let Some(n) = check {
                let est = empirical_integer_density(
                    |m| if sieve_set_member(&ps, m) { Tri::Yes } else { Tri::No },
                    *n,
                    opts,
                );
                v["empirical"] = value(&est);
                v["empirical_ratio"] = json!(est.ratio());
            }
            Outcome::Single(v)
        }
        Command::Diverge {
            spec,
            checkpoints,
            bound,
        } => {
            let k = field(spec)?;
            let cps = match (checkpoints, bound) {
                (Some(c), _) => c.clone(),
                (None, Some(b)) => vec![*b],
                (None, None) => unreachable!("clap requires one of them"),
            };
            let curve = divergence_curve(&k, &cps, seed, opts)?;
            Outcome::Single(json!({ "label": k.label(), "points": curve }))
        }
        Command::Ap { spec, k, bound, primes } => {
            let h = handle(spec)?;
            let guard = Guarded::new();
            let member = |n: u64| {
                if *primes {
                    if is_prime(n) {
                        guard.wrap(is_norm_prime(&h, n, seed).map(|v| v.answer))
                    } else {
                        Tri::No
                    }
                } else {
                    guard.wrap(is_norm_integer(&h, n, seed).map(|v| v.answer))
                }
            };
            let w = ap_search(member, *bound, *k, opts)?;
            guard.finish()?;
            Outcome::Single(json!({
                "label": h.field.label(),
                "k": k,
                "bound": bound,
                "primes": primes,
                "witness": w,
            }))
        }
        Command::Represent { spec, n, prime, to } => {
            let h = handle(spec)?;
            let one = |n: u64| -> Res<Value> {
                let v = if *prime {
                    is_norm_prime(&h, n, seed)?
                } else {
                    is_norm_integer(&h, n, seed)?
                };
                let mut out = json!({
                    "n": n,
                    "verdict": v.answer,
                    "witness": v.witness,
                    "route": v.route,
                });
                if let Some(s) = v.signs {
                    out["signs"] = json!(s);
                }
                Ok(out)
            };
            match to {
                None => Outcome::Single(one(*n)?),
                Some(m) if m < n => return Err(CliError::usage("empty range")),
                Some(m) => {
                    let ns: Vec<u64> = if *prime {
                        primes_in(PrimeRange::new(*n, *m)).collect()
                    } else {
                        (*n..=*m).collect()
                    };
                    Outcome::Lines(ns.into_iter().map(one).collect::<Res<_>>()?)
                }
            }
        }
        Command::Classgroup { d } => {
            let g = class_group(*d)?;
            let reps: Vec<[i64; 3]> = g.representatives().iter().map(|f| [f.a, f.b, f.c]).collect();
            Outcome::Single(json!({
                "d": d,
                "h": g.h(),
                "wide_class_number": g.wide_class_number(),
                "representatives": reps,
            }))
        }
    };
    Ok(out)
}
