//! Orchestration behind the `stripvertex` binary: geometry ingestion, class
//! enumeration, pipeline execution (open -> connected -> log -> BPS),
//! verification runs, and byte-stable table emission.
//!
//! Everything is emitted in a deterministic order and all numbers are exact
//! rational strings, so outputs are comparable across runs and worker counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use stripvertex::bps::{bps_transform, check_integrality, DivisibilityKey};
use stripvertex::correspondence::{
    extract_genus_invariants, extract_log_genus_invariants, log_from_open, ContactData,
};
use stripvertex::oracle::dp3_closed_form;
use stripvertex::qalgebra::{expand_hbar, parse_qrational, Phased, QRational};
use stripvertex::schur::Convention;
use stripvertex::strip::{CurveClass, StripContext, StripGeometry};
use stripvertex::Error;

/// CLI failure modes, mapped onto exit codes: input errors exit 2,
/// verification failures exit 1.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Verification(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Verification(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Result of a table-producing run: the rendered table plus an optional
/// verification failure (the table is still emitted, the process exits 1).
pub struct RunOutput {
    pub stdout: String,
    pub failure: Option<String>,
}

impl RunOutput {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            failure: None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(CliError::Input(format!(
                "unknown format {other:?}, expected json or csv"
            ))),
        }
    }
}

/// Options shared by every table-producing subcommand.
pub struct RunConfig {
    pub geometry: StripGeometry,
    pub convention: Convention,
    pub format: OutputFormat,
    pub genus: Option<usize>,
    pub jobs: usize,
}

/// Resolves `--geometry` as a preset name first, then as a file path.
pub fn load_geometry(spec: &str) -> Result<StripGeometry, CliError> {
    if let Some(g) = StripGeometry::preset(spec) {
        return Ok(g);
    }
    if std::path::Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec).map_err(input_err)?;
        return StripGeometry::from_json(&text).map_err(input_err);
    }
    Err(CliError::Input(format!(
        "geometry {spec:?} is neither a known preset nor a readable file"
    )))
}

/// Parses `--bound v1,v2,...` into box coordinates.
pub fn parse_bound_spec(spec: &str) -> Result<Vec<i64>, CliError> {
    let coords: Result<Vec<i64>, _> = spec.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|e| CliError::Input(format!("bad bound {spec:?}: {e}")))?;
    if coords.is_empty() {
        return Err(CliError::Input("empty bound".into()));
    }
    if let Some(&bad) = coords.iter().find(|&&c| c < 0) {
        return Err(CliError::Input(format!(
            "bound coordinates must be >= 0, got {bad}"
        )));
    }
    Ok(coords)
}

/// Parses `--contact m[:c1,...,cn]`.
pub fn parse_contact_spec(spec: &str) -> Result<(usize, Option<Vec<i64>>), CliError> {
    let (m_part, tail) = match spec.split_once(':') {
        Some((m, rest)) => (m, Some(rest)),
        None => (spec, None),
    };
    let m: usize = m_part
        .trim()
        .parse()
        .map_err(|e| CliError::Input(format!("bad interior marking count in {spec:?}: {e}")))?;
    let tangencies = match tail {
        None => None,
        Some(rest) => {
            let list: Result<Vec<i64>, _> =
                rest.split(',').map(|t| t.trim().parse::<i64>()).collect();
            let list =
                list.map_err(|e| CliError::Input(format!("bad tangency list in {spec:?}: {e}")))?;
            if list.is_empty() || list.iter().any(|&c| c <= 0) {
                return Err(CliError::Input(format!(
                    "tangencies must be positive in {spec:?}"
                )));
            }
            Some(list)
        }
    };
    Ok((m, tangencies))
}

/// Enumeration of either a coordinate box or all classes of bounded total
/// degree, in lexicographic order.
pub fn class_range(
    dim: usize,
    bound: Option<&[i64]>,
    total_degree: Option<i64>,
) -> Result<Vec<CurveClass>, CliError> {
    match (bound, total_degree) {
        (Some(b), None) => {
            if b.len() != dim {
                return Err(CliError::Input(format!(
                    "bound has {} coordinates, geometry expects {dim}",
                    b.len()
                )));
            }
            Ok(CurveClass::box_range(&CurveClass(b.to_vec())))
        }
        (None, Some(n)) => {
            if n < 0 {
                return Err(CliError::Input("total degree must be >= 0".into()));
            }
            let all = CurveClass::box_range(&CurveClass(vec![n; dim]));
            Ok(all.into_iter().filter(|c| c.total() <= n).collect())
        }
        (Some(_), Some(_)) => Err(CliError::Input(
            "--bound and --total-degree are mutually exclusive".into(),
        )),
        (None, None) => Err(CliError::Input(
            "one of --bound or --total-degree is required".into(),
        )),
    }
}

fn rational_string(r: &BigRational) -> String {
    r.to_string()
}

fn genus_rows(invariants: &[BigRational]) -> Vec<(usize, String)> {
    invariants
        .iter()
        .enumerate()
        .map(|(g, v)| (g, rational_string(v)))
        .collect()
}

fn qrational_json(v: &QRational) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn class_label(c: &[i64]) -> String {
    c.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_pool<T: Send, F: Fn() -> Result<T, CliError> + Send>(
    jobs: usize,
    task: F,
) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(input_err)?;
    pool.install(task)
}

/// `open`: per-class connected open generating functions, optionally with
/// per-genus expansions.
pub fn cmd_open(
    config: &RunConfig,
    winding: i64,
    bound: Option<&[i64]>,
    total_degree: Option<i64>,
) -> Result<RunOutput, CliError> {
    config.geometry.validate().map_err(input_err)?;
    if winding < 1 {
        return Err(CliError::Input(format!(
            "winding must be >= 1, got {winding}"
        )));
    }
    let classes = class_range(config.geometry.num_edges(), bound, total_degree)?;
    let geometry = &config.geometry;
    let convention = config.convention;
    let rows: Vec<(CurveClass, Phased)> = run_pool(config.jobs, || {
        let ctx = StripContext::new(geometry, convention);
        classes
            .par_iter()
            .map(|c| {
                ctx.connected_open_series(winding, c)
                    .map(|v| (c.clone(), v))
                    .map_err(input_err)
            })
            .collect()
    })?;

    match config.format {
        OutputFormat::Json => {
            let mut out = Vec::new();
            for (c, v) in &rows {
                let mut obj = Map::new();
                obj.insert("class".into(), json!(c.0));
                obj.insert("winding".into(), json!(winding));
                obj.insert("i_power".into(), json!(v.i_power));
                obj.insert("value".into(), qrational_json(&v.value));
                if let Some(g_max) = config.genus {
                    let inv = extract_genus_invariants(v, g_max).map_err(input_err)?;
                    obj.insert(
                        "genus".into(),
                        Value::Array(
                            genus_rows(&inv)
                                .into_iter()
                                .map(|(g, s)| json!({"g": g, "value": s}))
                                .collect(),
                        ),
                    );
                }
                out.push(Value::Object(obj));
            }
            Ok(RunOutput::ok(
                serde_json::to_string_pretty(&out).map_err(input_err)?,
            ))
        }
        OutputFormat::Csv => {
            let g_max = config.genus.unwrap_or(3);
            let mut out = String::from("class,g,value\n");
            for (c, v) in &rows {
                let inv = extract_genus_invariants(v, g_max).map_err(input_err)?;
                for (g, s) in genus_rows(&inv) {
                    writeln!(out, "{},{},{}", class_label(&c.0), g, s).unwrap();
                }
            }
            Ok(RunOutput::ok(out))
        }
    }
}

/// One evaluated surface class of the log pipeline.
struct LogRow {
    surface: Vec<i64>,
    winding: i64,
    value: QRational,
}

/// Tangency pairings required by the log and BPS pipelines.
fn pairings(geometry: &StripGeometry) -> Result<(Vec<i64>, Vec<i64>), CliError> {
    match (&geometry.d1_pairing, &geometry.d2_pairing) {
        (Some(a), Some(b)) => Ok((a.clone(), b.clone())),
        _ => Err(CliError::Input(
            "geometry lacks d1_pairing/d2_pairing rows; log and bps tables need them".into(),
        )),
    }
}

fn pair(row: &[i64], class: &[i64]) -> i64 {
    row.iter().zip(class).map(|(a, b)| a * b).sum()
}

/// Computes the log generating function for one surface class, when the
/// class map has an effective preimage; `Ok(None)` marks unreachable classes.
fn log_value_for(
    ctx: &StripContext,
    interior_markings: usize,
    d2_row: &[i64],
    surface: &[i64],
) -> Result<Option<(i64, QRational)>, CliError> {
    let Some((winding, cvec)) = ctx.geometry.invert_class_map(surface) else {
        return Ok(None);
    };
    if winding < 1 || cvec.0.iter().any(|&c| c < 0) {
        return Ok(None);
    }
    let d2 = pair(d2_row, surface);
    if d2 < 1 {
        return Ok(None);
    }
    let open = ctx
        .connected_open_series(winding, &cvec)
        .map_err(input_err)?;
    let contact = ContactData::new(interior_markings, vec![winding], d2).map_err(input_err)?;
    let log = log_from_open(&open, &contact);
    let value = log.reduce_real().map_err(|e| {
        CliError::Verification(format!(
            "log generating function at {surface:?} is not real: {e}"
        ))
    })?;
    Ok(Some((winding, value)))
}

fn surface_classes(
    geometry: &StripGeometry,
    bound: Option<&[i64]>,
    total_degree: Option<i64>,
) -> Result<Vec<Vec<i64>>, CliError> {
    let dim = geometry.surface_dim();
    let total = match (bound, total_degree) {
        (None, None) => Some(6), // default surface range
        (_, t) => t,
    };
    let classes = class_range(dim, bound, total)?;
    Ok(classes.into_iter().map(|c| c.0).collect())
}

/// `log`: per-class logarithmic generating functions through the
/// correspondence and the class map.
pub fn cmd_log(
    config: &RunConfig,
    interior_markings: usize,
    bound: Option<&[i64]>,
    total_degree: Option<i64>,
) -> Result<RunOutput, CliError> {
    config.geometry.validate().map_err(input_err)?;
    let (_, d2_row) = pairings(&config.geometry)?;
    let classes = surface_classes(&config.geometry, bound, total_degree)?;
    let geometry = &config.geometry;
    let convention = config.convention;
    let rows: Vec<LogRow> = run_pool(config.jobs, || {
        let ctx = StripContext::new(geometry, convention);
        let evaluated: Result<Vec<Option<LogRow>>, CliError> = classes
            .par_iter()
            .map(|surface| {
                Ok(
                    log_value_for(&ctx, interior_markings, &d2_row, surface)?.map(
                        |(winding, value)| LogRow {
                            surface: surface.clone(),
                            winding,
                            value,
                        },
                    ),
                )
            })
            .collect();
        Ok(evaluated?.into_iter().flatten().collect())
    })?;

    match config.format {
        OutputFormat::Json => {
            let mut out = Vec::new();
            for row in &rows {
                let mut obj = Map::new();
                obj.insert("class".into(), json!(row.surface));
                obj.insert("tangencies".into(), json!([row.winding]));
                obj.insert("value".into(), qrational_json(&row.value));
                if let Some(g_max) = config.genus {
                    let inv = extract_log_genus_invariants(&row.value, g_max)
                        .map_err(|e| CliError::Verification(e.to_string()))?;
                    obj.insert(
                        "genus".into(),
                        Value::Array(
                            genus_rows(&inv)
                                .into_iter()
                                .map(|(g, s)| json!({"g": g, "value": s}))
                                .collect(),
                        ),
                    );
                }
                out.push(Value::Object(obj));
            }
            Ok(RunOutput::ok(
                serde_json::to_string_pretty(&out).map_err(input_err)?,
            ))
        }
        OutputFormat::Csv => {
            let g_max = config.genus.unwrap_or(3);
            let mut out = String::from("class,g,value\n");
            for row in &rows {
                let inv = extract_log_genus_invariants(&row.value, g_max)
                    .map_err(|e| CliError::Verification(e.to_string()))?;
                for (g, s) in genus_rows(&inv) {
                    writeln!(out, "{},{},{}", class_label(&row.surface), g, s).unwrap();
                }
            }
            Ok(RunOutput::ok(out))
        }
    }
}

/// `bps`: BPS invariants with integrality verdicts; any failed verdict makes
/// the command exit nonzero.
pub fn cmd_bps(
    config: &RunConfig,
    interior_markings: usize,
    bound: Option<&[i64]>,
    total_degree: Option<i64>,
) -> Result<RunOutput, CliError> {
    config.geometry.validate().map_err(input_err)?;
    let (d1_row, d2_row) = pairings(&config.geometry)?;
    let classes = surface_classes(&config.geometry, bound, total_degree)?;
    let geometry = &config.geometry;
    let convention = config.convention;

    struct BpsRow {
        surface: Vec<i64>,
        tangencies: Vec<i64>,
        value: QRational,
        verdict: bool,
        witness: Option<String>,
    }

    let rows: Vec<BpsRow> = run_pool(config.jobs, || {
        let ctx = StripContext::new(geometry, convention);
        let evaluated: Result<Vec<Option<BpsRow>>, CliError> = classes
            .par_iter()
            .map(|surface| {
                let Some((winding, value)) =
                    log_value_for(&ctx, interior_markings, &d2_row, surface)?
                else {
                    return Ok(None);
                };
                // The transform needs the log series of every divided class.
                let key = DivisibilityKey::new(vec![winding], surface.clone());
                let mut table = BTreeMap::new();
                table.insert(key.clone(), Phased::real(value));
                for k in key.divisors() {
                    if k == 1 {
                        continue;
                    }
                    let sub = key.divided_by(k);
                    let entry = log_value_for(&ctx, interior_markings, &d2_row, &sub.class)?
                        .map(|(_, v)| v)
                        .unwrap_or_else(QRational::zero);
                    table.insert(sub, Phased::real(entry));
                }
                let d1 = pair(&d1_row, surface);
                let d2 = pair(&d2_row, surface);
                let contact =
                    ContactData::new(interior_markings, vec![winding], d2).map_err(input_err)?;
                let bps = bps_transform(&table, &key, &contact, -(d1 + d2))
                    .map_err(|e| CliError::Verification(e.to_string()))?;
                let verdict = check_integrality(&bps);
                Ok(Some(BpsRow {
                    surface: surface.clone(),
                    tangencies: vec![winding],
                    value: bps,
                    verdict: verdict.holds(),
                    witness: verdict.witness,
                }))
            })
            .collect();
        Ok(evaluated?.into_iter().flatten().collect())
    })?;

    let any_failed = rows.iter().any(|r| !r.verdict);
    let output = match config.format {
        OutputFormat::Json => {
            let mut out = Vec::new();
            for row in &rows {
                let mut obj = Map::new();
                obj.insert("class".into(), json!(row.surface));
                obj.insert("tangencies".into(), json!(row.tangencies));
                obj.insert("value".into(), qrational_json(&row.value));
                obj.insert("verdict".into(), json!(row.verdict));
                if let Some(w) = &row.witness {
                    obj.insert("witness".into(), json!(w));
                }
                out.push(Value::Object(obj));
            }
            serde_json::to_string_pretty(&out).map_err(input_err)?
        }
        OutputFormat::Csv => {
            let mut out = String::from("class,tangencies,value,verdict\n");
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    class_label(&row.surface),
                    class_label(&row.tangencies),
                    row.value,
                    row.verdict
                )
                .unwrap();
            }
            out
        }
    };
    Ok(RunOutput {
        stdout: output,
        failure: any_failed
            .then(|| "BPS integrality verdict failed for at least one class".to_string()),
    })
}

/// `verify-dp3`: exact comparison of the vertex pipeline against the built-in
/// closed form for every class in range.
pub fn cmd_verify_dp3(config: &RunConfig, total_degree: i64) -> Result<RunOutput, CliError> {
    let expected = StripGeometry::preset("dp3-0-2").expect("preset");
    if config.geometry != expected {
        return Err(CliError::Input(
            "verify-dp3 requires --geometry dp3-0-2".into(),
        ));
    }
    let classes = surface_classes(&config.geometry, None, Some(total_degree))?;
    let geometry = &config.geometry;
    let convention = config.convention;

    enum Outcome {
        Skipped(String),
        Equal(QRational),
        Mismatch(QRational, QRational),
    }

    let rows: Vec<(Vec<i64>, Outcome)> = run_pool(config.jobs, || {
        let ctx = StripContext::new(geometry, convention);
        classes
            .par_iter()
            .map(|surface| {
                let closed = match dp3_closed_form(surface[0], surface[1], surface[2], surface[3]) {
                    Ok(v) => v,
                    Err(Error::OutOfHypothesis(reason)) => {
                        return Ok((surface.clone(), Outcome::Skipped(reason)))
                    }
                    Err(e) => return Err(input_err(e)),
                };
                let pipeline = log_value_for(&ctx, 1, &[0, 0, 1, 1], surface)?
                    .map(|(_, v)| v)
                    .unwrap_or_else(QRational::zero);
                if pipeline == closed {
                    Ok((surface.clone(), Outcome::Equal(closed)))
                } else {
                    Ok((surface.clone(), Outcome::Mismatch(pipeline, closed)))
                }
            })
            .collect()
    })?;

    let mut out = String::new();
    let mut equal = 0usize;
    let mut skipped = 0usize;
    let mut mismatched = 0usize;
    for (surface, outcome) in &rows {
        match outcome {
            Outcome::Skipped(reason) => {
                skipped += 1;
                writeln!(out, "class ({}) SKIPPED: {}", class_label(surface), reason).unwrap();
            }
            Outcome::Equal(v) => {
                equal += 1;
                writeln!(out, "class ({}) EQUAL: {}", class_label(surface), v).unwrap();
            }
            Outcome::Mismatch(pipeline, closed) => {
                mismatched += 1;
                writeln!(
                    out,
                    "class ({}) MISMATCH: pipeline {} vs closed form {}",
                    class_label(surface),
                    pipeline,
                    closed
                )
                .unwrap();
            }
        }
    }
    writeln!(
        out,
        "verified {equal} classes equal, {skipped} skipped, {mismatched} mismatched"
    )
    .unwrap();
    Ok(RunOutput {
        stdout: out,
        failure: (mismatched > 0)
            .then(|| format!("{mismatched} classes disagree with the closed form")),
    })
}

/// `expand`: hbar-expansion of a serialized rational function. `spec` is
/// inline JSON or `@path`.
pub fn cmd_expand(
    spec: &str,
    i_power: i64,
    order: i64,
    format: OutputFormat,
) -> Result<RunOutput, CliError> {
    let text = if let Some(path) = spec.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(input_err)?
    } else {
        spec.to_string()
    };
    let value = parse_qrational(&text).map_err(input_err)?;
    if order < 0 {
        return Err(CliError::Input("order must be >= 0".into()));
    }
    let series = expand_hbar(&value, i_power, order).map_err(input_err)?;
    match format {
        OutputFormat::Json => {
            let mut terms = Map::new();
            for (e, c) in series.terms() {
                terms.insert(
                    e.to_string(),
                    json!({"re": c.re.to_string(), "im": c.im.to_string()}),
                );
            }
            let obj = json!({
                "i_power": series.i_power,
                "truncation_order": series.truncation_order(),
                "terms": terms,
            });
            Ok(RunOutput::ok(
                serde_json::to_string_pretty(&obj).map_err(input_err)?,
            ))
        }
        OutputFormat::Csv => {
            let mut out = String::from("exponent,re,im\n");
            for (e, c) in series.terms() {
                writeln!(out, "{},{},{}", e, c.re, c.im).unwrap();
            }
            Ok(RunOutput::ok(out))
        }
    }
}
