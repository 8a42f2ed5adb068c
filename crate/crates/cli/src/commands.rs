use std::fmt;
use std::fs;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use stackyfan::document::{bigint, bigint_vec, Metadata};
use stackyfan::fan::{Condition, Outcome};
use stackyfan::isotropy::{
    component_group, image_sublattice, is_global_quotient, isotropy_generators, isotropy_group,
    minimal_cone, universal_cover,
};
use stackyfan::selftest::{self, DEFAULT_SEED};
use stackyfan::{
    classify_wps, Cone, Error, FanDocument, FgAbelianGroup, PointPattern, ShearedSimplex,
    StackyFan, WpsKind,
};

/// Text lines and the equivalent JSON object of one command.
pub struct Output {
    pub lines: Vec<String>,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(lines: Vec<String>, json: Value) -> Self {
        Output {
            lines,
            json,
            code: 0,
        }
    }

    pub fn json_string(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("values always serialize")
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    Parse(String),
    /// The document does not describe a stacky fan.
    Invalid(Error),
    /// A query on a valid fan (or on sheared-simplex data) failed.
    Domain(Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) | Failure::Parse(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Domain(_) => 3,
        }
    }

    fn kind(&self) -> String {
        match self {
            Failure::Usage(_) => "UsageError".into(),
            Failure::Io(_) => "IoError".into(),
            Failure::Parse(_) => "ParseError".into(),
            Failure::Invalid(e) | Failure::Domain(e) => {
                let text = e.to_string();
                let end = text.find([':', '(']).unwrap_or(text.len());
                text[..end].to_string()
            }
        }
    }

    /// The JSON form of the error; text mode only writes to stderr.
    pub fn output(&self) -> Output {
        Output {
            lines: Vec::new(),
            json: json!({"error": {"kind": self.kind(), "message": self.to_string(), "exit_code": self.code()}}),
            code: self.code(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "UsageError: {m}"),
            Failure::Io(m) => write!(f, "IoError: {m}"),
            Failure::Parse(m) => write!(f, "ParseError: {m}"),
            Failure::Invalid(e) | Failure::Domain(e) => write!(f, "{e}"),
        }
    }
}

fn domain(e: Error) -> Failure {
    Failure::Domain(e)
}

pub fn parse_indices(text: &str) -> Result<Vec<usize>, Failure> {
    split(text)
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Failure::Usage(format!("not a ray index: {t:?}")))
        })
        .collect()
}

fn parse_integers(text: &str) -> Result<Vec<BigInt>, Failure> {
    split(text)
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Failure::Usage(format!("not an integer: {t:?}")))
        })
        .collect()
}

fn split(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports always serialize")
}

fn int_json(x: &BigInt) -> Value {
    bigint::serialize(x, serde_json::value::Serializer).expect("integers always serialize")
}

fn ints_json(xs: &[BigInt]) -> Value {
    bigint_vec::serialize(xs, serde_json::value::Serializer).expect("integers always serialize")
}

fn group_json(g: &FgAbelianGroup) -> Value {
    let mut v = to_value(g);
    v["text"] = Value::String(g.to_string());
    v
}

fn component_line(c: &FgAbelianGroup) -> String {
    if c.is_trivial() {
        "G/G0 trivial".to_string()
    } else {
        format!("G/G0 \u{2245} {c}")
    }
}

fn read_document(path: &str) -> Result<FanDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    FanDocument::from_json_str(&text).map_err(|e| match e {
        stackyfan::DocumentError::Parse(m) => Failure::Parse(format!("{path}: {m}")),
        stackyfan::DocumentError::Fan(e) => Failure::Invalid(e),
    })
}

fn load(path: &str) -> Result<(FanDocument, StackyFan), Failure> {
    let doc = read_document(path)?;
    let fan = doc.to_fan().map_err(Failure::Invalid)?;
    Ok((doc, fan))
}

fn write_document(path: &str, doc: &FanDocument) -> Result<(), Failure> {
    fs::write(path, doc.to_json_string()).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

pub fn validate(path: &str) -> Result<Output, Failure> {
    let doc = read_document(path)?;
    let report = doc.validation_report();
    let mut lines = Vec::new();
    let mut checks = Vec::new();
    for (condition, outcome) in &report.checks {
        let name = condition.name();
        let (status, error) = match outcome {
            Outcome::Pass => ("pass", None),
            Outcome::Fail(e) => ("fail", Some(e.to_string())),
            Outcome::Skipped => ("skipped", None),
        };
        lines.push(match (&error, condition) {
            (Some(e), _) => format!("{name}: fail {e}"),
            (None, Condition::FiniteCokernel) if status == "skipped" && !doc.polytopal => {
                format!("{name}: skipped (not polytopal)")
            }
            (None, _) => format!("{name}: {status}"),
        });
        checks.push(json!({"condition": name, "status": status, "error": error}));
    }
    let valid = report.passed();
    lines.push(if valid { "valid" } else { "invalid" }.to_string());
    Ok(Output {
        lines,
        json: json!({"valid": valid, "checks": checks}),
        code: if valid { 0 } else { 2 },
    })
}

pub fn group(path: &str) -> Result<Output, Failure> {
    let (_, fan) = load(path)?;
    let dg = fan.dual_group();
    let g = fan.structure_of_g();
    let c = component_group(&fan);
    let line = format!("DG \u{2245} {dg}; G \u{2245} {g}; {}", component_line(&c));
    let json = json!({
        "dual_group": group_json(&dg),
        "g": {"torus_rank": g.torus_rank, "finite_part": group_json(&g.finite_part), "text": g.to_string()},
        "component_group": group_json(&c),
    });
    Ok(Output::ok(vec![line], json))
}

pub enum Selector {
    Cone(Vec<usize>),
    Zeros(Vec<usize>),
    All,
}

pub fn isotropy(path: &str, selector: Selector, generators: bool) -> Result<Output, Failure> {
    let (_, fan) = load(path)?;
    let (name, targets) = match &selector {
        Selector::Cone(c) => ("cone", vec![(Cone::new(c.iter().copied()), None)]),
        Selector::Zeros(z) => {
            let pattern = PointPattern::new(z.iter().copied());
            let cone = minimal_cone(&fan, &pattern).map_err(domain)?;
            ("zeros", vec![(cone, Some(pattern))])
        }
        Selector::All => ("all", fan.faces().into_iter().map(|c| (c, None)).collect()),
    };
    let single = targets.len() == 1 && !matches!(selector, Selector::All);
    let mut lines = Vec::new();
    let mut results = Vec::new();
    for (cone, pattern) in targets {
        let g = isotropy_group(&fan, &cone).map_err(domain)?;
        lines.push(if single {
            g.to_string()
        } else {
            format!("{cone}: {g}")
        });
        let mut entry = json!({"cone": cone.indices(), "group": group_json(&g)});
        if let Some(p) = pattern {
            entry["zeros"] = json!(p.zero_set());
        }
        if generators {
            let gens = isotropy_generators(&fan, &cone).map_err(domain)?;
            let mut list = Vec::new();
            for (chi, order) in gens {
                lines.push(format!("  {chi} of order {order}"));
                list.push(json!({"character": to_value(&chi), "order": int_json(&order)}));
            }
            entry["generators"] = Value::Array(list);
        }
        results.push(entry);
    }
    Ok(Output::ok(
        lines,
        json!({"selector": name, "results": results}),
    ))
}

fn weights_text(w: &[BigInt]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("P({})", parts.join(","))
}

pub fn classify(path: &str) -> Result<Output, Failure> {
    let (_, fan) = load(path)?;
    let report = classify_wps(&fan).map_err(domain)?;
    let mut lines = vec![report.to_string(), component_line(&report.component_group)];
    if let (WpsKind::FakeWeightedProjective, Some(w)) = (report.kind, &report.weights) {
        lines.push(format!(
            "stack: {}/\u{39b}, weights from {}",
            weights_text(w),
            report.cover_weights_source
        ));
    }
    let mut json = to_value(&report);
    json["dual_group"] = group_json(&report.dual_group);
    json["component_group"] = group_json(&report.component_group);
    json["text"] = Value::String(report.to_string());
    Ok(Output::ok(lines, json))
}

/// A short name for the stack of a fan: `P^k`, `P(w)` or a placeholder.
fn stack_name(fan: &StackyFan) -> String {
    match classify_wps(fan) {
        Ok(r) if r.kind == WpsKind::WeightedProjective => {
            let w = r.weights.expect("weighted projective fans carry weights");
            if w.iter().all(|x| *x == BigInt::from(1)) {
                format!("P^{}", w.len() - 1)
            } else {
                weights_text(&w)
            }
        }
        _ => "X0".to_string(),
    }
}

pub fn cover(path: &str, out: &str) -> Result<Output, Failure> {
    let (doc, fan) = load(path)?;
    let image = image_sublattice(&fan).map_err(domain)?;
    let cover = universal_cover(&fan).map_err(domain)?;
    let gq = is_global_quotient(&fan).map_err(domain)?;
    let lambda = component_group(&fan);

    let mut lines = Vec::new();
    if image.surjective {
        lines.push("cover = self".to_string());
    }
    let quotient = gq.holds.then(|| {
        let name = stack_name(&cover);
        if lambda.is_trivial() {
            name
        } else {
            format!("[{name}/{lambda}]")
        }
    });
    match (&quotient, &gq.witness) {
        (Some(q), _) => lines.push(format!("global quotient: {q}")),
        (None, Some(w)) => {
            lines.push("not a global quotient".to_string());
            lines.push(format!("witness: maximal cone {w} has N_sigma != N0"));
        }
        (None, None) => lines.push("not a global quotient".to_string()),
    }

    let metadata = Metadata {
        name: doc
            .metadata
            .as_ref()
            .and_then(|m| m.name.clone())
            .map(|n| format!("{n} (universal cover)")),
        labels: None,
        description: Some("universal cover".to_string()),
    };
    let written = FanDocument::from_fan(&cover, Some(metadata));
    write_document(out, &written)?;
    lines.push(format!("wrote {out}"));

    let json = json!({
        "surjective": image.surjective,
        "global_quotient": gq.holds,
        "witness": gq.witness.as_ref().map(|w| w.indices().to_vec()),
        "component_group": group_json(&lambda),
        "quotient": quotient,
        "output": out,
    });
    Ok(Output::ok(lines, json))
}

pub fn sheared(
    a: &str,
    labels: &str,
    zeros: Option<&str>,
    report: bool,
    out: Option<&str>,
) -> Result<Output, Failure> {
    let a = parse_integers(a)?;
    let m = parse_integers(labels)?;
    let s = ShearedSimplex::new(a.clone(), m.clone()).map_err(domain)?;
    let mut lines = Vec::new();
    let mut json = json!({"a": ints_json(&a), "labels": ints_json(&m)});

    if report || zeros.is_none() {
        let r = s.report();
        lines.push(r.to_string());
        if let Some(t) = &r.table1 {
            lines.extend(t.to_string().lines().map(String::from));
        }
        let mut v = to_value(&r);
        v["component_group"] = group_json(&r.component_group);
        v["text"] = Value::String(r.to_string());
        json["report"] = v;
    }
    if let Some(z) = zeros {
        let pattern = PointPattern::new(parse_indices(z)?);
        let ext = s.isotropy_extension(&pattern).map_err(domain)?;
        lines.push(ext.to_string());
        json["extension"] = json!({
            "zeros": pattern.zero_set(),
            "sub": group_json(&ext.sub),
            "quot": group_json(&ext.quot),
            "full": group_json(&ext.full),
        });
    }
    if let Some(path) = out {
        let metadata = Metadata {
            name: Some("labelled sheared simplex".to_string()),
            labels: Some(m.clone()),
            description: Some(format!("shear vector {}", ints_json(&a))),
        };
        write_document(path, &FanDocument::from_fan(&s.build(), Some(metadata)))?;
        lines.push(format!("wrote {path}"));
        json["output"] = Value::String(path.to_string());
    }
    Ok(Output::ok(lines, json))
}

fn seed_from_env() -> Result<u64, Failure> {
    let Ok(raw) = std::env::var("STACKY_SEED") else {
        return Ok(DEFAULT_SEED);
    };
    let t = raw.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse::<u64>(),
    };
    parsed.map_err(|_| Failure::Usage(format!("STACKY_SEED is not a u64: {raw:?}")))
}

pub fn selftest(matrices: usize, simplices: usize) -> Result<Output, Failure> {
    let seed = seed_from_env()?;
    let mut summary = selftest::zlinalg_properties(seed, matrices);
    summary.merge(selftest::sheared_differential(
        seed.wrapping_add(1),
        simplices,
    ));
    let mut lines = vec![format!(
        "seed {seed}: {} instances, {} checks, {} failures",
        summary.instances,
        summary.checks,
        summary.failures.len()
    )];
    lines.extend(summary.failures.iter().take(20).map(|f| format!("  {f}")));
    let json = json!({
        "seed": int_json(&BigInt::from(seed)),
        "instances": summary.instances,
        "checks": summary.checks,
        "failures": summary.failures,
    });
    Ok(Output {
        lines,
        json,
        code: if summary.passed() { 0 } else { 3 },
    })
}
