//! `witfam`: generators, verifiers, structural diagnostics and search for
//! `s`-witness families.
//!
//! Exit codes: 0 success, 1 a checked property fails, 2 usage or malformed
//! input, 3 search stopped by the node limit. Machine-readable output goes to
//! stdout or `--out`; prose goes to stderr.

mod cert;
mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use witfam::constructions::{construct, is_star, star_size, ConstructionKind, ConstructionSpec};
use witfam::search::{max_s_witness, sweep, three_star_search, SearchMode, SearchProblem, SearchResult};
use witfam::structure::{build_injection, classify_bases, model_size_bound, reduce_to_model, stability_report};
use witfam::witness::{check_assignment, exact_vc, vc_at_most_d, VcValue};
use witfam::{binomial, ElementSet, Error, GroundParams, SetFamily, WitnessAssignment, WitnessVerdict};

use cert::{Certificate, Check, Command};

/// Families with more ground elements than this get counts instead of explicit set lists.
const LIST_LIMIT: usize = 20;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LemmaViolation { .. } | Error::Invariant(_) => 1,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(format!("json: {e}"))
    }
}

#[derive(Parser)]
#[command(name = "witfam", version, about = "Exact tools for s-witness set families")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a star, two-star or complete uniform family.
    Construct(ConstructArgs),
    /// Check that a family is an s-witness family.
    Verify(VerifyArgs),
    /// Check VC-dimension at most d.
    Vc(VcArgs),
    /// Reduce witness fibers to sunflower-free models.
    Model(ModelArgs),
    /// Build the injection report for bases with a singleton model.
    Inject(InjectArgs),
    /// Compare a family against its best star.
    Stability(StabilityArgs),
    /// Exact maximum s-witness family, or the three-star search.
    Search(SearchArgs),
    /// Run the maximum search over a grid of parameters.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum KindArg {
    Star,
    #[value(name = "two_star")]
    TwoStar,
    #[value(name = "full_uniform")]
    FullUniform,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum ModeArg {
    Exhaustive,
    Bnb,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exhaustive => SearchMode::Exhaustive,
            ModeArg::Bnb => SearchMode::BranchAndBound,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Serialize)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    s: usize,
    /// Split point of the two-star family.
    #[arg(long)]
    m: Option<u32>,
    /// Center of the star.
    #[arg(long, default_value_t = 1)]
    center: u32,
    /// Family JSON output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Witness JSON output.
    #[arg(long)]
    witness_out: Option<PathBuf>,
    /// Certificate output; stdout when absent.
    #[arg(long)]
    cert: Option<PathBuf>,
}

/// Family input shared by the analysis subcommands.
#[derive(Args, Serialize)]
struct FamilyInput {
    #[arg(long)]
    family: PathBuf,
    /// Witness JSON; the canonical-first assignment is used when absent.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Overrides `d` from the family file.
    #[arg(long)]
    d: Option<usize>,
    /// Overrides `s` from the family file.
    #[arg(long)]
    s: Option<usize>,
    /// Certificate output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[command(flatten)]
    input: FamilyInput,
}

#[derive(Args, Serialize)]
struct VcArgs {
    #[arg(long)]
    family: PathBuf,
    #[arg(long)]
    d: Option<usize>,
    /// Largest size tried by the exact computation; defaults to d + 2.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ModelArgs {
    #[command(flatten)]
    input: FamilyInput,
    /// Single base as comma-separated elements, e.g. `1,3`; all bases when absent.
    #[arg(long)]
    base: Option<String>,
    /// Replacement trace output.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct InjectArgs {
    #[command(flatten)]
    input: FamilyInput,
    /// Report output, in addition to the certificate payload.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct StabilityArgs {
    #[command(flatten)]
    input: FamilyInput,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    s: usize,
    #[arg(long, value_enum, default_value = "bnb")]
    mode: ModeArg,
    /// Accepts integers or scientific notation such as `1e8`.
    #[arg(long, default_value = "1e9", value_parser = parse_count)]
    node_limit: u64,
    /// Stop once a family of this size is found.
    #[arg(long)]
    target: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Run the layered three-star search instead of the maximum search.
    #[arg(long)]
    three_star: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct SweepArgs {
    /// JSON list of `{"n", "d", "s"}` cells.
    #[arg(long)]
    grid: PathBuf,
    #[arg(long, value_enum, default_value = "bnb")]
    mode: ModeArg,
    #[arg(long, default_value = "1e9", value_parser = parse_count)]
    node_limit: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses a positive count written as an integer or as `1e8`.
fn parse_count(text: &str) -> Result<u64, String> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = text.parse().map_err(|_| format!("not a count: {text}"))?;
    if !v.is_finite() || v < 0.0 || v.fract() != 0.0 || v >= 18446744073709551616.0 {
        return Err(format!("not a count: {text}"));
    }
    Ok(v as u64)
}

fn parse_base(text: &str, n: usize) -> Result<ElementSet, CliError> {
    let elements = text
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u32>().map_err(|_| CliError::usage(format!("bad element in --base: {t}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let base = ElementSet::from_elements(elements)?;
    if !base.fits(n) {
        return Err(CliError::usage(format!("--base {base} is outside [1, {n}]")));
    }
    Ok(base)
}

/// Family plus parameters and a witness assignment, or the check that failed
/// while obtaining one.
struct Instance {
    family: SetFamily,
    params: GroundParams,
    assignment: Result<WitnessAssignment, Check>,
}

fn load_instance(input: &FamilyInput) -> Result<Instance, CliError> {
    let loaded = io::read_family(&input.family)?;
    let family = loaded.family;
    let d = match input.d.or(loaded.d) {
        Some(d) => d,
        None => family
            .uniformity()
            .and_then(|k| k.checked_sub(1))
            .ok_or_else(|| CliError::usage("cannot infer d; pass --d"))?,
    };
    let s = input
        .s
        .or(loaded.s)
        .ok_or_else(|| CliError::usage("no s in the family file; pass --s"))?;
    let params = GroundParams::new(family.n(), d, s)?;
    family.require_uniform(params.k())?;
    let assignment = match &input.witness {
        Some(path) => {
            let a = io::read_witnesses(path)?;
            match check_assignment(&family, &a, s) {
                None => Ok(a),
                Some(defect) => Err(Check::failed(
                    format!("witness assignment valid ({})", defect_name(&defect)),
                    vec![defect.set()],
                )),
            }
        }
        None => match witfam::witness::verify_s_witness(&family, s)? {
            WitnessVerdict::Valid(a) => Ok(a),
            WitnessVerdict::Invalid { failing } => Err(Check::failed("s-witness family", vec![failing])),
        },
    };
    Ok(Instance {
        family,
        params,
        assignment,
    })
}

fn defect_name(defect: &witfam::witness::AssignmentDefect) -> String {
    serde_json::to_value(defect)
        .ok()
        .and_then(|v| v.get("defect").and_then(Value::as_str).map(str::to_owned))
        .unwrap_or_else(|| "defect".into())
}

struct Outcome {
    params: Option<GroundParams>,
    payload: Value,
    checks: Vec<Check>,
    node_limited: bool,
}

/// Turns a failed lemma check into a failing certificate entry instead of an error.
fn as_check(e: Error) -> Result<Check, CliError> {
    match e {
        Error::LemmaViolation { check, counterexample } => Ok(Check::failed(check, counterexample)),
        Error::Invariant(msg) => Ok(Check::failed(format!("internal invariant: {msg}"), Vec::new())),
        other => Err(other.into()),
    }
}

fn run_construct(a: &ConstructArgs) -> Result<Outcome, CliError> {
    let params = GroundParams::new(a.n, a.d, a.s)?;
    let kind = match a.kind {
        KindArg::Star => ConstructionKind::Star { center: a.center },
        KindArg::TwoStar => ConstructionKind::TwoStar {
            m: a.m.ok_or_else(|| CliError::usage("two_star needs --m"))?,
        },
        KindArg::FullUniform => ConstructionKind::FullUniform,
    };
    let c = construct(&ConstructionSpec { params, kind })?;
    if let Some(p) = &a.out {
        io::emit(Some(p), &io::family_json(&c.family, &params)?)?;
    }
    let mut checks = Vec::new();
    match &c.assignment {
        Some(w) => {
            checks.push(Check::new("s-witness family", check_assignment(&c.family, w, params.s).is_none()));
            if let Some(p) = &a.witness_out {
                io::emit(Some(p), &io::witness_json(w)?)?;
            }
        }
        None => {
            let failing = match witfam::witness::verify_s_witness(&c.family, params.s)? {
                WitnessVerdict::Invalid { failing } => vec![failing],
                WitnessVerdict::Valid(_) => Vec::new(),
            };
            checks.push(Check::failed("s-witness family", failing));
        }
    }
    if let KindArg::TwoStar = a.kind {
        let want = binomial(params.n as u64 - 1, params.d as u64)?;
        checks.push(Check::new("size = C(n-1, d)", c.family.len() as u64 == want));
        if !c.degenerate {
            checks.push(Check::new("not a star", is_star(&c.family).is_none()));
        }
    }
    if let KindArg::Star = a.kind {
        checks.push(Check::new("size = C(n-1, d)", c.family.len() as u64 == star_size(&params)?));
    }
    Ok(Outcome {
        params: Some(params),
        payload: json!({
            "kind": a.kind,
            "degenerate": c.degenerate,
            "size": c.family.len(),
            "family": c.family,
            "witnesses": c.assignment,
        }),
        checks,
        node_limited: false,
    })
}

fn run_verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let inst = load_instance(&a.input)?;
    let (check, witnesses) = match inst.assignment {
        Ok(w) => (Check::new("s-witness family", true), Some(w)),
        Err(c) => (c, None),
    };
    Ok(Outcome {
        params: Some(inst.params),
        payload: json!({ "family": inst.family, "witnesses": witnesses }),
        checks: vec![check],
        node_limited: false,
    })
}

fn run_vc(a: &VcArgs) -> Result<Outcome, CliError> {
    let loaded = io::read_family(&a.family)?;
    let family = loaded.family;
    let d = match a.d.or(loaded.d) {
        Some(d) => d,
        None => family
            .uniformity()
            .and_then(|k| k.checked_sub(1))
            .ok_or_else(|| CliError::usage("cannot infer d; pass --d"))?,
    };
    let report = vc_at_most_d(&family, d)?;
    let cap = a.cap.unwrap_or(d + 2);
    let exact = exact_vc(&family, cap);
    let exact_le_d = match exact {
        VcValue::Exact(v) => v <= d,
        VcValue::AtLeast(v) => v <= d && v < cap,
    };
    let mut checks = vec![match report.violating_member {
        Some(f) => Check::failed("VC <= d", vec![f]),
        None => Check::new("VC <= d", true),
    }];
    checks.push(Check::new("agrees with exact VC", exact_le_d == report.vc_at_most_d));
    let params = GroundParams::new(family.n(), d, loaded.s.unwrap_or(0).min(d)).ok();
    Ok(Outcome {
        params,
        payload: json!({
            "d": d,
            "vc_at_most_d": report.vc_at_most_d,
            "violating_member": report.violating_member,
            "exact_vc": exact,
            "cap": cap,
            "family": family,
        }),
        checks,
        node_limited: false,
    })
}

fn write_optional(path: Option<&Path>, value: &Value) -> Result<(), CliError> {
    if let Some(p) = path {
        io::emit(Some(p), &(serde_json::to_string_pretty(value)? + "\n"))?;
    }
    Ok(())
}

fn run_model(a: &ModelArgs) -> Result<Outcome, CliError> {
    let inst = load_instance(&a.input)?;
    let params = inst.params;
    let bound = model_size_bound(params.d, params.s)?;
    let assignment = match inst.assignment {
        Ok(w) => w,
        Err(c) => return Ok(failed_outcome(params, c)),
    };
    let models = match &a.base {
        Some(text) => {
            let base = parse_base(text, params.n)?;
            reduce_to_model(base, &inst.family, &assignment, &params, false).map(|m| vec![m])
        }
        None => classify_bases(&inst.family, &assignment, &params).map(|c| c.models),
    };
    let models = match models {
        Ok(m) => m,
        Err(e) => return Ok(failed_outcome(params, as_check(e)?)),
    };
    let mut checks = vec![Check::new("model properties", true)];
    let over: Vec<ElementSet> = models
        .iter()
        .filter(|m| m.model.len() as u64 > bound)
        .map(|m| m.base)
        .collect();
    checks.push(if over.is_empty() {
        Check::new("|model| <= sunflower bound", true)
    } else {
        Check::failed("|model| <= sunflower bound", over)
    });
    let traces: Vec<Value> = models
        .iter()
        .map(|m| json!({ "base": m.base, "trace": m.trace }))
        .collect();
    write_optional(a.trace.as_deref(), &json!(traces))?;
    Ok(Outcome {
        params: Some(params),
        payload: json!({ "model_size_bound": bound, "models": models }),
        checks,
        node_limited: false,
    })
}

fn failed_outcome(params: GroundParams, check: Check) -> Outcome {
    Outcome {
        params: Some(params),
        payload: Value::Null,
        checks: vec![check],
        node_limited: false,
    }
}

fn run_inject(a: &InjectArgs) -> Result<Outcome, CliError> {
    let inst = load_instance(&a.input)?;
    let params = inst.params;
    let assignment = match inst.assignment {
        Ok(w) => w,
        Err(c) => return Ok(failed_outcome(params, c)),
    };
    let r = match build_injection(&inst.family, &assignment, &params) {
        Ok(r) => r,
        Err(e) => return Ok(failed_outcome(params, as_check(e)?)),
    };
    let lists = params.n <= LIST_LIMIT;
    let bases: Vec<Value> = r
        .per_base
        .iter()
        .map(|b| {
            let mut v = json!({ "base": b.base, "x_b": b.x_b, "f_b_size": b.f_b.len() });
            if lists {
                v["f_b"] = json!(b.f_b);
                v["e_b"] = json!(b.e_b);
            }
            v
        })
        .collect();
    let mut payload = json!({
        "bases": bases,
        "pairs": r.pairs,
        "f1_size": r.f1.len(),
        "e_size": r.e.len(),
        "u_size": r.u.len(),
        "bound": r.bound,
        "slack": r.slack,
        "pair_lower_bound": r.pair_lower_bound,
    });
    if lists {
        payload["f1"] = json!(r.f1);
        payload["e"] = json!(r.e);
        payload["u"] = json!(r.u);
    }
    let mut checks = vec![
        Check::new("|E| = |F1|", r.e.len() == r.f1.len()),
        Check::new("U and E are disjoint", r.u.iter().all(|&u| !r.e.contains(u))),
        Check::new("|F1| + |U| <= C(n, d)", (r.f1.len() + r.u.len()) as u64 <= r.bound),
    ];
    if let Some(lb) = r.pair_lower_bound {
        checks.push(Check::new("|U(B, B')| >= C(n-2s-2, d-2s)", r.pairs.iter().all(|p| p.size >= lb)));
    }
    write_optional(a.report.as_deref(), &payload)?;
    Ok(Outcome {
        params: Some(params),
        payload,
        checks,
        node_limited: false,
    })
}

fn run_stability(a: &StabilityArgs) -> Result<Outcome, CliError> {
    let inst = load_instance(&a.input)?;
    let params = inst.params;
    let assignment = match inst.assignment {
        Ok(w) => w,
        Err(c) => return Ok(failed_outcome(params, c)),
    };
    let r = match stability_report(&inst.family, &assignment, &params) {
        Ok(r) => r,
        Err(e) => return Ok(failed_outcome(params, as_check(e)?)),
    };
    let mut payload = serde_json::to_value(&r)?;
    if params.n > LIST_LIMIT {
        payload.as_object_mut().map(|o| o.remove("u_prime"));
    }
    let used = r.f1_x0_size + r.f1_prime_minus_star_size + r.u_prime_size;
    let blocks = r.s1.len() + r.s2.len() + r.b1_x0.len() + r.b1_prime.len();
    let checks = vec![
        Check::new("base blocks partition B", r.degenerate || blocks == assignment.restrict_to(&inst.family).bases().len()),
        Check::new("|F1(x0)| + |F1' \\ F*| + |U'| <= C(n-1, d)", used <= r.bound),
        Check::new("U' avoids x0", r.x0.is_none_or(|x| r.u_prime.iter().all(|u| !u.contains(x)))),
    ];
    write_optional(a.report.as_deref(), &payload)?;
    Ok(Outcome {
        params: Some(params),
        payload,
        checks,
        node_limited: false,
    })
}

fn search_checks(r: &SearchResult, s: usize) -> Vec<Check> {
    vec![Check::new("certificate verifies", check_assignment(&r.family, &r.assignment, s).is_none())]
}

fn run_search(a: &SearchArgs) -> Result<Outcome, CliError> {
    let params = GroundParams::new(a.n, a.d, a.s)?;
    let r = if a.three_star {
        three_star_search(&params, a.node_limit)?
    } else {
        let mut problem = SearchProblem::new(params, a.mode.into());
        problem.node_limit = a.node_limit;
        problem.target = a.target;
        problem.threads = a.threads;
        max_s_witness(&problem)?
    };
    let bound = binomial(params.n as u64 - 1, params.d as u64)?;
    if r.complete {
        eprintln!("best size {} (C(n-1, d) = {bound})", r.best_size);
    }
    Ok(Outcome {
        params: Some(params),
        checks: search_checks(&r, params.s),
        node_limited: r.node_limited,
        payload: json!({
            "best_size": r.best_size,
            "bound_nm1_d": bound,
            "complete": r.complete,
            "node_limited": r.node_limited,
            "found": r.found,
            "nodes_explored": r.nodes_explored,
            "family": r.family,
            "witnesses": r.assignment,
        }),
    })
}

/// Sweep writes a table instead of a certificate and returns the exit code.
fn run_sweep(a: &SweepArgs) -> Result<u8, CliError> {
    let cells = io::read_grid(&a.grid)?;
    let mut valid = Vec::new();
    let mut rows = Vec::new();
    // Invalid cells keep their grid position.
    let mut slots = Vec::new();
    for c in &cells {
        match GroundParams::new(c.n, c.d, c.s) {
            Ok(p) => {
                slots.push(Ok(valid.len()));
                valid.push(p);
            }
            Err(e) => slots.push(Err(e.to_string())),
        }
    }
    let done = sweep(&valid, a.mode.into(), a.node_limit, a.threads);
    for (cell, slot) in cells.iter().zip(slots) {
        rows.push(match slot {
            Ok(i) => done[i].clone(),
            Err(msg) => witfam::search::SweepRow {
                n: cell.n,
                d: cell.d,
                s: cell.s,
                mode: SearchMode::from(a.mode).as_str(),
                best_size: None,
                bound_nm1_d: None,
                complete: None,
                nodes: None,
                seconds: None,
                error: Some(msg),
            },
        });
    }
    let text = match a.format {
        FormatArg::Json => serde_json::to_string_pretty(&rows)? + "\n",
        FormatArg::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "d", "s", "mode", "best_size", "bound_nm1_d", "complete", "nodes", "seconds", "error"])
                .map_err(|e| CliError::usage(format!("csv: {e}")))?;
            for r in &rows {
                w.write_record([
                    r.n.to_string(),
                    r.d.to_string(),
                    r.s.to_string(),
                    r.mode.to_string(),
                    opt(r.best_size),
                    opt(r.bound_nm1_d),
                    opt(r.complete),
                    opt(r.nodes),
                    r.seconds.map_or(String::new(), |s| format!("{s:.6}")),
                    r.error.clone().unwrap_or_default(),
                ])
                .map_err(|e| CliError::usage(format!("csv: {e}")))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::usage(format!("csv: {e}")))?;
            String::from_utf8(bytes).map_err(|e| CliError::usage(format!("csv: {e}")))?
        }
    };
    io::emit(a.out.as_deref(), &text)?;
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("cell ({}, {}, {}): {}", r.n, r.d, r.s, r.error.as_deref().unwrap_or(""));
    }
    let succeeded = rows.iter().filter(|r| r.error.is_none()).count();
    Ok(if !rows.is_empty() && succeeded == 0 {
        1
    } else if rows.iter().any(|r| r.complete == Some(false)) {
        3
    } else {
        0
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |v| v.to_string())
}

fn certify(name: &'static str, args: &impl Serialize, out: Option<&Path>, outcome: Outcome) -> Result<u8, CliError> {
    let cert = Certificate {
        tool_version: env!("CARGO_PKG_VERSION"),
        command: Command {
            name,
            args: serde_json::to_value(args)?,
        },
        params: outcome.params,
        payload: outcome.payload,
        checks: outcome.checks,
    };
    io::emit(out, &(serde_json::to_string_pretty(&cert)? + "\n"))?;
    for c in cert.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {}", c.name);
    }
    Ok(if !cert.all_pass() {
        1
    } else if outcome.node_limited {
        eprintln!("search stopped by the node limit");
        3
    } else {
        0
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match &cli.command {
        Cmd::Construct(a) => certify("construct", a, a.cert.as_deref(), run_construct(a)?),
        Cmd::Verify(a) => certify("verify", a, a.input.out.as_deref(), run_verify(a)?),
        Cmd::Vc(a) => certify("vc", a, a.out.as_deref(), run_vc(a)?),
        Cmd::Model(a) => certify("model", a, a.input.out.as_deref(), run_model(a)?),
        Cmd::Inject(a) => certify("inject", a, a.input.out.as_deref(), run_inject(a)?),
        Cmd::Stability(a) => certify("stability", a, a.input.out.as_deref(), run_stability(a)?),
        Cmd::Search(a) => certify("search", a, a.out.as_deref(), run_search(a)?),
        Cmd::Sweep(a) => run_sweep(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
