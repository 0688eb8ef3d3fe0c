use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Map, Number, Value};

use fibcode::fibcodes::{
    classify_code_with_cap, distribution_by_any_route, dual_code, macwilliams_transform,
    min_distance_with_cap, predict_regime, predicted_weight_distribution, rs_check, CyclicCode,
    FamilyOptions, FamilyRegistry, WeightDistribution, DEFAULT_ENUMERATION_CAP,
};
use fibcode::fibseq::{fib_period_sequence, wall_vajda_check};
use fibcode::galois::FieldModulus;
use fibcode::sss::{access_structure, predict_access_counts, MasseyScheme, ShareFile};

use crate::report::Report;
use crate::{CodeArgs, Command, SssCommand, Variant, CAP_ENV};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(fibcode::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }

    /// Stable machine-readable error tag.
    pub fn kind(&self) -> &'static str {
        use fibcode::Error::*;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(e) => match e {
                NotPrime(_) => "not_prime",
                DivisionByZero(_) | UndefinedOrder(_) | UndefinedGcd => "undefined",
                ModulusMismatch(..) | DimensionMismatch(_) => "mismatch",
                InvalidArgument(_) => "invalid_argument",
                NotApplicable(_) => "not_applicable",
                NotCyclicGenerator(_) => "not_cyclic_generator",
                TooLarge { .. } => "cap_exceeded",
                InconsistentDistribution(_) => "inconsistent_distribution",
                SchemeUndefined(_) => "scheme_undefined",
                MissingShare(_) => "missing_share",
                Unauthorized => "unauthorized",
                ShareFile(_) => "share_file",
                Internal(_) => "internal",
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => e.fmt(f),
        }
    }
}

impl From<fibcode::Error> for CliError {
    fn from(e: fibcode::Error) -> Self {
        CliError::Domain(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<Report> {
    match command {
        Command::Analyze { p } => analyze(p),
        Command::Table1 { primes } => table1(&primes),
        Command::Code(args) => code(&args),
        Command::Weights { code, predicted } => weights(&code, predicted),
        Command::Dual(args) => dual(&args),
        Command::Access(args) => access(&args),
        Command::Sss(SssCommand::Deal {
            p,
            secret,
            seed,
            out,
            record_seed,
        }) => deal(p, secret, seed, &out, record_seed),
        Command::Sss(SssCommand::Recover {
            input,
            participants,
        }) => recover(&input, &participants),
    }
}

fn enumeration_cap() -> Result<u64> {
    match std::env::var(CAP_ENV) {
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(cap) if cap > 0 => Ok(cap),
            _ => Err(CliError::Usage(format!(
                "{CAP_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// Rejects non-primes before anything else runs.
fn modulus(p: u64) -> Result<FieldModulus> {
    Ok(FieldModulus::new(p)?)
}

fn build(args: &CodeArgs) -> Result<CyclicCode> {
    let p = modulus(args.p)?;
    let opts = FamilyOptions {
        steps: Some(args.r),
    };
    let family = FamilyRegistry::builtin().create(args.variant.name(), &opts)?;
    Ok(family.build(p)?)
}

fn family_fields(args: &CodeArgs, payload: &mut Map<String, Value>) {
    payload.insert("p".into(), json!(args.p));
    payload.insert("variant".into(), json!(args.variant.name()));
    if args.variant == Variant::Extended {
        payload.insert("r".into(), json!(args.r));
    }
}

fn tag<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("enum tags serialize")
}

fn tag_str<T: Serialize>(v: T) -> String {
    tag(v).as_str().unwrap_or_default().to_string()
}

fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

/// Weight map with keys in ascending numeric order.
fn distribution_json(wd: &WeightDistribution) -> Value {
    Value::Object(
        wd.support()
            .into_iter()
            .map(|(w, a)| (w.to_string(), big(a)))
            .collect(),
    )
}

fn distribution_rows(wd: &WeightDistribution) -> Vec<Vec<String>> {
    wd.support()
        .into_iter()
        .map(|(w, a)| vec![w.to_string(), a.to_string()])
        .collect()
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn analyze(p: u64) -> Result<Report> {
    let fp = modulus(p)?;
    let prof = fib_period_sequence(fp)?;
    let wall = match wall_vajda_check(fp) {
        Ok(w) => Some(w),
        Err(fibcode::Error::NotApplicable(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let wall_json = wall.as_ref().map_or(Value::Null, |w| {
        json!({
            "class": tag(w.class),
            "bound": w.bound,
            "clauses": w.clauses.iter().map(|c| json!({"name": c.name, "pass": c.pass})).collect::<Vec<_>>(),
            "all_pass": w.all_pass(),
        })
    });
    let payload = json!({
        "p": p,
        "l": prof.period,
        "alpha": prof.first_zero,
        "s": prof.residue_after_zero,
        "beta": prof.zero_count,
        "sequence": prof.terms,
        "wall": wall_json,
    });
    let mut report = Report::new("analyze", payload).fields([
        ("p", p.to_string()),
        ("l", prof.period.to_string()),
        ("alpha", prof.first_zero.to_string()),
        ("s", prof.residue_after_zero.to_string()),
        ("beta", prof.zero_count.to_string()),
        ("sequence", join(&prof.terms)),
    ]);
    match wall {
        Some(w) => {
            let rows = w
                .clauses
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        if c.pass { "yes" } else { "NO" }.to_string(),
                    ]
                })
                .collect();
            report = report.table(
                &format!("class {}", tag_str(w.class)),
                &["clause", "holds"],
                rows,
            );
        }
        None => report = report.diagnostic(format!("p = {p} has no Wall residue class")),
    }
    Ok(report)
}

fn table1(primes: &[u64]) -> Result<Report> {
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for &p in primes {
        let prof = fib_period_sequence(modulus(p)?)?;
        rows.push(json!({
            "p": p,
            "l": prof.period,
            "alpha": prof.first_zero,
            "s": prof.residue_after_zero,
            "beta": prof.zero_count,
        }));
        text.push(vec![
            p.to_string(),
            prof.period.to_string(),
            prof.first_zero.to_string(),
            prof.residue_after_zero.to_string(),
            prof.zero_count.to_string(),
        ]);
    }
    Ok(Report::new("table1", json!({ "rows": rows })).table(
        "",
        &["p", "l", "alpha", "s", "beta"],
        text,
    ))
}

fn code(args: &CodeArgs) -> Result<Report> {
    let cap = enumeration_cap()?;
    let c = build(args)?;
    let cl = classify_code_with_cap(&c, cap)?;
    let rs = match rs_check(&c) {
        Ok(b) => Some(b),
        Err(fibcode::Error::NotApplicable(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let predicted = match args.variant {
        Variant::Fibonacci => predict_regime(c.modulus())?.parameters,
        Variant::Extended => FamilyRegistry::builtin()
            .create(
                "extended",
                &FamilyOptions {
                    steps: Some(args.r),
                },
            )?
            .predict(c.modulus())?,
    };

    let mut payload = Map::new();
    family_fields(args, &mut payload);
    payload.insert("n".into(), json!(cl.n));
    payload.insert("k".into(), json!(cl.k));
    payload.insert("d".into(), json!(cl.d));
    payload.insert("generator".into(), json!(c.generator().coeffs()));
    payload.insert("experimental".into(), json!(c.is_experimental()));
    payload.insert(
        "classification".into(),
        json!({
            "regime": tag(cl.regime),
            "is_mds": cl.is_mds,
            "singleton_defect": cl.singleton_defect,
            "meets_griesmer": cl.meets_griesmer,
            "griesmer_lhs": cl.griesmer_lhs,
            "griesmer_rhs": cl.griesmer_rhs,
        }),
    );
    payload.insert("rs_check".into(), json!(rs));
    payload.insert(
        "predicted".into(),
        predicted.map_or(Value::Null, |q| json!({"n": q.n, "k": q.k, "d": q.d})),
    );

    let mut report = Report::new("code", Value::Object(payload)).fields([
        (
            "parameters",
            format!("[{}, {}, {}]_{}", cl.n, cl.k, cl.d, args.p),
        ),
        ("generator", c.generator().to_string()),
        ("regime", tag_str(cl.regime)),
        ("mds", cl.is_mds.to_string()),
        ("singleton defect", cl.singleton_defect.to_string()),
        (
            "griesmer",
            format!(
                "{} >= {} ({})",
                cl.griesmer_lhs,
                cl.griesmer_rhs,
                if cl.meets_griesmer { "met" } else { "slack" }
            ),
        ),
        (
            "reed-solomon",
            rs.map_or("n/a (n != p - 1)".into(), |b| b.to_string()),
        ),
        (
            "predicted",
            predicted.map_or("none".into(), |q| format!("[{}, {}, {}]", q.n, q.k, q.d)),
        ),
    ]);
    if c.is_experimental() {
        report = report.diagnostic(
            "experimental: parameters are computed, not proven for this family and prime",
        );
    }
    Ok(report)
}

fn fits(p: u32, k: usize, cap: u64) -> bool {
    (p as u64).checked_pow(k as u32).is_some_and(|m| m <= cap)
}

fn weights(args: &CodeArgs, want_predicted: bool) -> Result<Report> {
    let cap = enumeration_cap()?;
    let c = build(args)?;
    let predicted = if want_predicted {
        if args.variant != Variant::Fibonacci {
            return Err(fibcode::Error::NotApplicable(
                "closed-form distributions exist only for the fibonacci variant".into(),
            )
            .into());
        }
        Some(predicted_weight_distribution(c.modulus())?)
    } else {
        None
    };
    let wd = distribution_by_any_route(&c, cap)?;
    let route = if fits(c.modulus().get(), c.dimension(), cap) {
        "direct"
    } else {
        "macwilliams"
    };

    let mut payload = Map::new();
    family_fields(args, &mut payload);
    payload.insert("n".into(), json!(c.length()));
    payload.insert("k".into(), json!(c.dimension()));
    payload.insert("route".into(), json!(route));
    payload.insert("distribution".into(), distribution_json(&wd));
    let agrees = predicted.as_ref().map(|pred| pred == &wd);
    if let Some(pred) = &predicted {
        payload.insert("predicted".into(), distribution_json(pred));
        payload.insert("agrees".into(), json!(agrees));
    }
    let mut report = Report::new("weights", Value::Object(payload))
        .fields([
            (
                "code",
                format!("[{}, {}]_{}", c.length(), c.dimension(), args.p),
            ),
            ("route", route.to_string()),
        ])
        .table("enumerated", &["weight", "count"], distribution_rows(&wd));
    if let Some(pred) = &predicted {
        report = report.table("closed form", &["weight", "count"], distribution_rows(pred));
    }
    if agrees == Some(false) {
        report = report.diagnostic("enumerated and closed-form distributions differ");
    }
    if c.is_experimental() {
        report = report.diagnostic("experimental: code outside the proven cases");
    }
    Ok(report)
}

fn dual(args: &CodeArgs) -> Result<Report> {
    let cap = enumeration_cap()?;
    let c = build(args)?;
    let d = dual_code(&c);
    let p = c.modulus().get();
    let (wd, route) = if fits(p, c.dimension(), cap) {
        let primal = distribution_by_any_route(&c, cap)?;
        (
            macwilliams_transform(&primal, p, c.length(), c.dimension())?,
            "macwilliams",
        )
    } else {
        (distribution_by_any_route(&d, cap)?, "direct")
    };
    let dist = wd.min_nonzero_weight();
    // cross-check when the dual route is cheap as well
    if let Some(dd) = dist {
        if fits(p, d.dimension(), cap) && min_distance_with_cap(&d, cap)? != dd {
            return Err(
                fibcode::Error::Internal("dual distance disagrees between routes".into()).into(),
            );
        }
    }

    let mut payload = Map::new();
    family_fields(args, &mut payload);
    payload.insert("n".into(), json!(d.length()));
    payload.insert("k".into(), json!(d.dimension()));
    payload.insert("d".into(), dist.map_or(Value::Null, |x| json!(x)));
    payload.insert("generator".into(), json!(d.generator().coeffs()));
    payload.insert("route".into(), json!(route));
    payload.insert("distribution".into(), distribution_json(&wd));
    let report = Report::new("dual", Value::Object(payload))
        .fields([
            (
                "parameters",
                format!(
                    "[{}, {}, {}]_{p}",
                    d.length(),
                    d.dimension(),
                    dist.map_or("-".into(), |x| x.to_string())
                ),
            ),
            ("generator", d.generator().to_string()),
            ("route", route.to_string()),
        ])
        .table("distribution", &["weight", "count"], distribution_rows(&wd));
    Ok(report)
}

fn access(args: &CodeArgs) -> Result<Report> {
    let c = build(args)?;
    let a = access_structure(&c)?;
    let predicted = match args.variant {
        Variant::Fibonacci => match predict_access_counts(c.modulus()) {
            Ok(pr) => Some(pr),
            Err(fibcode::Error::NotApplicable(_)) => None,
            Err(e) => return Err(e.into()),
        },
        Variant::Extended => None,
    };
    let agrees = predicted.as_ref().map(|pr| {
        a.minimal_sets.len() == pr.set_count
            && a.dictatorial == pr.dictatorial
            && a.other_frequencies() == vec![pr.frequency]
    });

    let mut payload = Map::new();
    family_fields(args, &mut payload);
    payload.insert("n".into(), json!(a.n));
    payload.insert("minimal_sets".into(), json!(a.minimal_sets));
    payload.insert("dictatorial".into(), json!(a.dictatorial));
    payload.insert(
        "frequency".into(),
        Value::Object(
            a.frequency
                .iter()
                .map(|(i, f)| (i.to_string(), json!(f)))
                .collect(),
        ),
    );
    payload.insert(
        "predicted".into(),
        predicted.as_ref().map_or(Value::Null, |pr| {
            json!({
                "set_count": pr.set_count,
                "dictatorial": pr.dictatorial,
                "frequency": pr.frequency,
            })
        }),
    );
    payload.insert("agrees".into(), agrees.map_or(Value::Null, Value::Bool));

    let rows = a
        .minimal_sets
        .iter()
        .enumerate()
        .map(|(i, s)| vec![(i + 1).to_string(), s.len().to_string(), join(s)])
        .collect();
    let mut report = Report::new("access", Value::Object(payload))
        .fields([
            ("participants", (a.n - 1).to_string()),
            ("minimal sets", a.minimal_sets.len().to_string()),
            (
                "dictatorial",
                if a.dictatorial.is_empty() {
                    "none".into()
                } else {
                    join(&a.dictatorial)
                },
            ),
            ("other frequencies", join(&a.other_frequencies())),
            (
                "predicted",
                predicted.as_ref().map_or("none".into(), |pr| {
                    format!(
                        "{} sets, dictatorial {{{}}}, frequency {}",
                        pr.set_count,
                        join(&pr.dictatorial),
                        pr.frequency
                    )
                }),
            ),
        ])
        .table("", &["#", "size", "participants"], rows);
    if agrees == Some(false) {
        report = report.diagnostic("enumerated access structure differs from the closed form");
    }
    if predicted.is_none() {
        report = report.diagnostic("no closed form applies to this code");
    }
    Ok(report)
}

fn deal(p: u64, secret: u64, seed: u64, out: &Path, record_seed: bool) -> Result<Report> {
    let fp = modulus(p)?;
    if secret >= p {
        return Err(fibcode::Error::InvalidArgument(format!(
            "secret {secret} is not below p = {p}"
        ))
        .into());
    }
    let c = FamilyRegistry::builtin()
        .create("fibonacci", &FamilyOptions::default())?
        .build(fp)?;
    let scheme = MasseyScheme::new(c)?;
    let set = scheme.deal(secret as u32, seed)?;
    let file = ShareFile::from_share_set(&set, record_seed.then_some(seed));
    file.write(out)?;
    let payload = json!({
        "p": p,
        "n": set.n,
        "participants": set.shares.len(),
        "out": out.display().to_string(),
        "seed_recorded": record_seed,
    });
    Ok(Report::new("sss deal", payload).fields([
        (
            "scheme",
            format!("dual of the Fibonacci code, n = {}, p = {p}", set.n),
        ),
        ("shares", set.shares.len().to_string()),
        ("written to", out.display().to_string()),
    ]))
}

fn recover(input: &Path, participants: &[usize]) -> Result<Report> {
    let file = ShareFile::read(input)?;
    let (code, shares) = file.open()?;
    let scheme = MasseyScheme::new(code)?;
    let secret = scheme.reconstruct(participants, &shares)?;
    let mut used = participants.to_vec();
    used.sort_unstable();
    used.dedup();
    let payload = json!({
        "p": file.p,
        "n": file.n,
        "participants": used,
        "secret": secret,
    });
    Ok(Report::new("sss recover", payload).fields([
        ("participants", join(&used)),
        ("secret", secret.to_string()),
    ]))
}
