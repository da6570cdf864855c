//! Batch orchestration and report assembly for the `cjones` binary.
//!
//! Every command produces one JSON document (`schema: 1`); the human output
//! is a rendering of that same document.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cjones::adequacy::{adequacy, state_surface, turaev_genus, State};
use cjones::checks::{
    check_eq1, check_eq2, gordon_filter, howie_sum, match_known_model, slope_distance, CheckReport,
    Slope, Verdict, OPEN_QUESTIONS,
};
use cjones::diagram::parse_pd;
use cjones::pretzel::{pretzel_degree_model, pretzel_diagram, PretzelError, PretzelParams};
use cjones::quasifit::{fit_degrees, DegreeModel};
use cjones::table::lookup;
use cjones::{DiagramError, Engine, EngineError, KnotDiagram, ResourceLimits};
use rayon::prelude::*;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_N_MAX: u32 = 8;

/// The bundled ten-knot batch as `name,pd` CSV.
pub const BUNDLED_TABLE: &str = include_str!("../data/table.csv");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource cap: {0}")]
    Resource(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Other(_) => 1,
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::ResourceLimit(m) => CliError::Resource(m),
            other => CliError::Other(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Eq1,
    Eq2,
    Howie,
    Gordon,
    Match,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::Eq1,
        CheckKind::Eq2,
        CheckKind::Howie,
        CheckKind::Gordon,
        CheckKind::Match,
    ];
}

impl FromStr for CheckKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "eq1" => CheckKind::Eq1,
            "eq2" => CheckKind::Eq2,
            "howie" => CheckKind::Howie,
            "gordon" => CheckKind::Gordon,
            "match" => CheckKind::Match,
            other => return Err(CliError::Parse(format!("unknown check {other:?}"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct BatchJob {
    pub inputs: Vec<(String, KnotDiagram)>,
    pub n_max: u32,
    pub checks: BTreeSet<CheckKind>,
    pub cache_path: Option<PathBuf>,
}

impl BatchJob {
    pub fn new(inputs: Vec<(String, KnotDiagram)>, n_max: u32) -> Self {
        BatchJob {
            inputs,
            n_max,
            checks: CheckKind::ALL.into_iter().collect(),
            cache_path: None,
        }
    }
}

/// A bundled name (`4_1`, `U`, `P(-2,3,7)`) or a PD code.
pub fn resolve_knot(spec: &str) -> Result<(String, KnotDiagram), CliError> {
    if let Some(d) = lookup(spec) {
        let name = d
            .name()
            .map(str::to_owned)
            .unwrap_or_else(|| spec.trim().to_owned());
        return Ok((name, d));
    }
    let d = parse_pd(spec)?;
    Ok((spec.trim().to_owned(), d))
}

/// Reads `name,pd` rows; a header row is optional.
pub fn read_csv(text: &str) -> Result<Vec<(String, KnotDiagram)>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Parse(format!("csv: {e}")))?;
        if rec.len() != 2 {
            return Err(CliError::Parse(format!(
                "csv row {}: expected 2 fields, found {}",
                i + 1,
                rec.len()
            )));
        }
        if i == 0 && &rec[0] == "name" && &rec[1] == "pd" {
            continue;
        }
        let d = parse_pd(&rec[1])
            .map_err(|e| CliError::Parse(format!("csv row {} ({}): {e}", i + 1, &rec[0])))?;
        out.push((rec[0].to_owned(), d.with_name(&rec[0])));
    }
    Ok(out)
}

fn engine_for(limits: ResourceLimits, cache: Option<&Path>) -> Result<Engine, CliError> {
    let engine = Engine::new(limits);
    if let Some(p) = cache {
        if p.exists() {
            engine.load_cache(p)?;
        }
    }
    Ok(engine)
}

fn save(engine: &Engine, cache: Option<&Path>) -> Result<(), CliError> {
    match cache {
        Some(p) => Ok(engine.save_cache(p)?),
        None => Ok(()),
    }
}

fn limits_for(n_max: u32) -> Result<ResourceLimits, CliError> {
    let limits = ResourceLimits::default();
    if n_max == 0 {
        return Err(CliError::Parse("n_max must be positive".into()));
    }
    if n_max > limits.max_n {
        return Err(CliError::Resource(format!(
            "n_max = {n_max} exceeds the cap of {}",
            limits.max_n
        )));
    }
    Ok(limits)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn adequacy_value(d: &KnotDiagram) -> Value {
    let ad = adequacy(d);
    json!({
        "a_adequate": ad.a_adequate,
        "b_adequate": ad.b_adequate,
        "adequate": ad.adequate(),
        "v_a": ad.v_a,
        "v_b": ad.v_b,
        "turaev_genus": turaev_genus(d),
        "alternating": d.is_alternating(),
    })
}

fn run_checks(
    d: &KnotDiagram,
    model: Option<&DegreeModel>,
    kinds: &BTreeSet<CheckKind>,
) -> Vec<CheckReport> {
    let na = |name: &str, why: &str| CheckReport {
        check: name.to_owned(),
        verdict: Verdict::NotApplicable,
        witness: None,
        narrative: why.to_owned(),
    };
    let no_model = "no degree model was fitted";
    kinds
        .iter()
        .map(|kind| match kind {
            CheckKind::Eq1 => model.map_or_else(|| na("eq1", no_model), check_eq1),
            CheckKind::Eq2 => {
                model.map_or_else(|| na("eq2", no_model), |m| check_eq2(m, turaev_genus(d)))
            }
            CheckKind::Howie => howie_for(d),
            CheckKind::Gordon => match model {
                Some(m) => match (m.js.iter().next_back(), m.js_star.iter().next()) {
                    (Some(&a), Some(&b)) => gordon_filter(Slope::from(a), Slope::from(b)),
                    _ => na("gordon", "no Jones slopes"),
                },
                None => na("gordon", no_model),
            },
            CheckKind::Match => model.map_or_else(|| na("match", no_model), match_known_model),
        })
        .collect()
}

/// Howie's sum on the all-A and all-B state surfaces.
fn howie_for(d: &KnotDiagram) -> CheckReport {
    let c = d.crossing_count();
    if c == 0 {
        return CheckReport {
            check: "howie".into(),
            verdict: Verdict::NotApplicable,
            witness: None,
            narrative: "crossingless diagram".into(),
        };
    }
    let sa = state_surface(d, &State::all_a(d)).expect("uniform states are complete");
    let sb = state_surface(d, &State::all_b(d)).expect("uniform states are complete");
    let (Some(a), Some(b)) = (sa.boundary_slope, sb.boundary_slope) else {
        unreachable!("uniform state surfaces have slopes")
    };
    let i = slope_distance(Slope::from(a), Slope::from(b));
    howie_sum(sa.euler_char, sb.euler_char, i).expect("uniform slopes differ by 2c")
}

fn knot_report(
    engine: &Engine,
    name: &str,
    d: &KnotDiagram,
    n_max: u32,
    kinds: &BTreeSet<CheckKind>,
) -> Result<Value, CliError> {
    let degrees = engine.degree_sequence(d, n_max)?;
    let fitted = fit_degrees(&degrees);
    let (model, fit_error) = match &fitted {
        Ok(m) => (Some(m), Value::Null),
        Err(e) => (None, Value::String(e.to_string())),
    };
    let (c_plus, c_minus, writhe) = d.crossing_signs();
    let checks = run_checks(d, model, kinds);
    Ok(json!({
        "name": name,
        "pd": d.to_pd(),
        "hash": d.content_hash(),
        "crossings": d.crossing_count(),
        "c_plus": c_plus,
        "c_minus": c_minus,
        "writhe": writhe,
        "degrees": degrees.iter().map(|(n, dp)| {
            let mut v = to_value(dp);
            v["n"] = json!(n);
            v
        }).collect::<Vec<_>>(),
        "model": model.map(to_value),
        "fit_error": fit_error,
        "adequacy": adequacy_value(d),
        "checks": checks.iter().map(to_value).collect::<Vec<_>>(),
    }))
}

/// Runs a batch; knots (and colors within a knot) are computed in parallel,
/// the report order follows the input order.
pub fn run(job: &BatchJob) -> Result<Value, CliError> {
    let limits = limits_for(job.n_max)?;
    let cache = job.cache_path.as_deref();
    let engine = engine_for(limits, cache)?;
    let knots = job
        .inputs
        .par_iter()
        .map(|(name, d)| knot_report(&engine, name, d, job.n_max, &job.checks))
        .collect::<Result<Vec<_>, _>>()?;
    save(&engine, cache)?;
    Ok(json!({
        "schema": SCHEMA,
        "n_max": job.n_max,
        "checks": job.checks.iter().map(|k| format!("{k:?}").to_lowercase()).collect::<Vec<_>>(),
        "knots": knots,
        "open_questions": open_questions(),
    }))
}

fn open_questions() -> Value {
    OPEN_QUESTIONS
        .iter()
        .map(|(id, q)| json!({ "id": id, "question": q, "status": "open" }))
        .collect()
}

fn document(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(dst), Value::Object(src)) = (&mut doc, body) {
        dst.extend(src);
    }
    doc
}

pub fn compute(spec: &str, n: u32, cache: Option<&Path>) -> Result<Value, CliError> {
    let (name, d) = resolve_knot(spec)?;
    let engine = engine_for(limits_for(n)?, cache)?;
    let j = engine.colored_jones(&d, n)?;
    save(&engine, cache)?;
    let degrees = j.degrees().map_err(|e| CliError::Other(e.to_string()))?;
    Ok(document(
        "compute",
        json!({ "name": name, "pd": d.to_pd(), "n": n, "polynomial": j.to_string(), "degrees": to_value(&degrees) }),
    ))
}

pub fn degrees(spec: &str, n_max: u32, cache: Option<&Path>) -> Result<Value, CliError> {
    let (name, d) = resolve_knot(spec)?;
    let engine = engine_for(limits_for(n_max)?, cache)?;
    let deg = engine.degree_sequence(&d, n_max)?;
    save(&engine, cache)?;
    let rows: Vec<Value> = deg
        .iter()
        .map(|(n, dp)| {
            let mut v = to_value(dp);
            v["n"] = json!(n);
            v
        })
        .collect();
    Ok(document(
        "degrees",
        json!({ "name": name, "degrees": rows }),
    ))
}

pub fn fit(spec: &str, n_max: u32, cache: Option<&Path>) -> Result<Value, CliError> {
    let (name, d) = resolve_knot(spec)?;
    let engine = engine_for(limits_for(n_max)?, cache)?;
    let deg = engine.degree_sequence(&d, n_max)?;
    save(&engine, cache)?;
    let body = match fit_degrees(&deg) {
        Ok(m) => json!({ "name": name, "model": to_value(&m), "fit_error": null }),
        Err(e) => json!({ "name": name, "model": null, "fit_error": e.to_string() }),
    };
    Ok(document("fit", body))
}

pub fn adequacy_report(spec: &str) -> Result<Value, CliError> {
    let (name, d) = resolve_knot(spec)?;
    let mut body = json!({ "name": name, "adequacy": adequacy_value(&d) });
    if d.crossing_count() > 0 {
        body["surface_a"] =
            to_value(&state_surface(&d, &State::all_a(&d)).expect("complete state"));
        body["surface_b"] =
            to_value(&state_surface(&d, &State::all_b(&d)).expect("complete state"));
    }
    Ok(document("adequacy", body))
}

pub fn surface(spec: &str, state: &str) -> Result<Value, CliError> {
    let (name, d) = resolve_knot(spec)?;
    let s: State = state
        .parse()
        .map_err(|e| CliError::Parse(format!("state: {e}")))?;
    let data = state_surface(&d, &s).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(document(
        "surface",
        json!({ "name": name, "state": s.to_string(), "surface": to_value(&data) }),
    ))
}

pub fn check(spec: &str, n_max: u32, cache: Option<&Path>) -> Result<Value, CliError> {
    let (name, d) = resolve_knot(spec)?;
    let job = BatchJob {
        inputs: vec![(name, d)],
        n_max,
        checks: CheckKind::ALL.into_iter().collect(),
        cache_path: cache.map(Path::to_path_buf),
    };
    let mut report = run(&job)?;
    let knot = report["knots"][0].take();
    Ok(document(
        "check",
        json!({ "n_max": n_max, "knot": knot, "open_questions": open_questions() }),
    ))
}

/// Pretzel diagram, the closed-form model where its hypotheses hold, `eq2`
/// on that model, and the engine-fitted model for comparison.
pub fn pretzel(
    r: i64,
    s: i64,
    t: i64,
    n_max: u32,
    cache: Option<&Path>,
) -> Result<Value, CliError> {
    let p = PretzelParams::new(r, s, t);
    let d = pretzel_diagram(p).map_err(|e| match e {
        PretzelError::Diagram(d) => CliError::from(d),
        other => CliError::Parse(other.to_string()),
    })?;
    let g_t = turaev_genus(&d);
    let (closed, closed_error) = match pretzel_degree_model(p) {
        Ok(m) => (Some(m), Value::Null),
        Err(e) => (None, Value::String(e.to_string())),
    };
    let engine = engine_for(limits_for(n_max)?, cache)?;
    let deg = engine.degree_sequence(&d, n_max)?;
    save(&engine, cache)?;
    let fitted = fit_degrees(&deg).ok();
    let agrees = match (&closed, &fitted) {
        (Some(c), Some(f)) => Value::Bool(c.same_degrees(f)),
        _ => Value::Null,
    };
    Ok(document(
        "pretzel",
        json!({
            "name": p.name(),
            "pd": d.to_pd(),
            "crossings": d.crossing_count(),
            "adequacy": adequacy_value(&d),
            "closed_form": closed.as_ref().map(to_value),
            "closed_form_error": closed_error,
            "closed_form_eq2": closed.as_ref().map(|m| to_value(&check_eq2(m, g_t))),
            "engine_model": fitted.as_ref().map(to_value),
            "engine_agrees_with_closed_form": agrees,
            "n_max": n_max,
        }),
    ))
}

/// Plain-text rendering of a report document.
pub fn render(doc: &Value) -> String {
    let mut out = String::new();
    render_value(&mut out, doc, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => {
            let items: Option<Vec<String>> = a.iter().map(scalar).collect();
            Some(format!("[{}]", items?.join(", ")))
        }
        _ => None,
    }
}

/// Arrays of flat objects become tables; everything else is `key: value`.
fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            let flat = items.iter().all(|x| {
                x.as_object()
                    .is_some_and(|m| m.values().all(|y| scalar(y).is_some()))
            });
            if flat && !items.is_empty() {
                render_table(out, items, indent);
            } else {
                for (i, x) in items.iter().enumerate() {
                    let _ = writeln!(out, "{pad}[{i}]");
                    render_value(out, x, indent + 2);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn render_table(out: &mut String, rows: &[Value], indent: usize) {
    let pad = " ".repeat(indent);
    let mut cols: Vec<&String> = Vec::new();
    for r in rows {
        for k in r.as_object().unwrap().keys() {
            if !cols.contains(&k) {
                cols.push(k);
            }
        }
    }
    // `n` and `check` lead when present
    cols.sort_by_key(|k| {
        (
            !matches!(k.as_str(), "n" | "check"),
            k.as_str() == "narrative",
        )
    });
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|k| scalar(&r[k.as_str()]).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..cols.len())
        .map(|i| {
            cells
                .iter()
                .map(|c| c[i].len())
                .chain([cols[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |vals: Vec<&str>| {
        vals.iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_owned()
    };
    let _ = writeln!(
        out,
        "{pad}{}",
        line(cols.iter().map(|s| s.as_str()).collect())
    );
    for c in &cells {
        let _ = writeln!(out, "{pad}{}", line(c.iter().map(|s| s.as_str()).collect()));
    }
}
