//! Executable registry of worked examples and closed-form results.
//!
//! Cases live in `data/corpus.json`. Each check recomputes a quantity with
//! the library and compares it to the stored value. Disputed checks store
//! the independently computed value as ground truth and keep the printed
//! value as an annotation.

pub mod formulas;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use globset::{Glob, GlobMatcher};
use serde::{Deserialize, Serialize};

use crate::classify::{self, Grid, VerdictKind};
use crate::error::{Error, Result};
use crate::mrlai::{self, Convention};
use crate::orders::{self, DecidedBy, OrderKind, Relation};
use crate::{ops, Dist, DistSpec};

const DATA: &str = include_str!("../../data/corpus.json");

pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    version: u32,
    cases: Vec<CorpusCase>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusCase {
    pub id: String,
    pub title: String,
    pub source: String,
    #[serde(default)]
    pub convention: Convention,
    pub dists: BTreeMap<String, DistSpec>,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    #[serde(flatten)]
    pub kind: CheckKind,
    pub source: String,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub convention: Option<Convention>,
    #[serde(default)]
    pub disputed: Option<Dispute>,
}

/// The printed value that the check's ground truth contradicts.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dispute {
    pub note: String,
    pub printed: serde_json::Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Survival,
    Density,
    Mrl,
    MrlAverage,
    MrlIntegral,
    Mrlai,
    Hazard,
    HazardAi,
    Tail,
    DoubleTail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Mrl,
    Mrla,
    Mrlai,
    HazardAi,
}

/// `closed` evaluates with every available closed form; `quadrature`
/// convolves numerically and obtains tails and MRL integrals by quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    #[default]
    Closed,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[default]
    Grid,
    /// Shortcuts first, grid as arbiter.
    Compare,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum CheckKind {
    /// `quantity(dist)` (or its ratio to the same quantity of `over`) at
    /// each `at`.
    Value {
        dist: String,
        quantity: Quantity,
        at: Vec<f64>,
        expected: Vec<f64>,
        #[serde(default)]
        over: Option<String>,
        #[serde(default)]
        path: Path,
    },
    /// The computed quantity against a registered closed form over a grid;
    /// the worst point is reported.
    Formula {
        dist: String,
        quantity: Quantity,
        formula: String,
        #[serde(default)]
        params: Vec<f64>,
        grid: Grid,
        #[serde(default)]
        over: Option<String>,
        #[serde(default)]
        path: Path,
    },
    Class {
        dist: String,
        target: Target,
        grid: Grid,
        expected: String,
        #[serde(default)]
        level: Option<f64>,
        /// Bounds on the middle witness point of a `non_monotone` verdict.
        #[serde(default)]
        witness_within: Option<[f64; 2]>,
    },
    Order {
        x: String,
        y: String,
        order: OrderKind,
        grid: Grid,
        expected: Relation,
        #[serde(default)]
        method: Method,
        #[serde(default)]
        decided_by: Option<DecidedBy>,
    },
    /// The determinant rule for two linear-MRL specs.
    LinearDeterminant { x: String, y: String, expected: Relation },
    /// `X ≤ Y` carried over to `aX ≤ aY`, and `L_{aX}(at) = L_X(t)` for both.
    Scaling {
        x: String,
        y: String,
        factor: f64,
        grid: Grid,
    },
}

impl CheckKind {
    fn label(&self) -> String {
        match self {
            CheckKind::Value {
                dist, quantity, over, ..
            }
            | CheckKind::Formula {
                dist, quantity, over, ..
            } => {
                let q = serde_json::to_value(quantity).expect("serializable");
                let q = q.as_str().expect("string");
                match over {
                    Some(o) => format!("{q}({dist})/{q}({o})"),
                    None => format!("{q}({dist})"),
                }
            }
            CheckKind::Class { dist, target, .. } => {
                let t = serde_json::to_value(target).expect("serializable");
                format!("class {}({dist})", t.as_str().expect("string"))
            }
            CheckKind::Order { x, y, order, .. } => format!("{} order {x} vs {y}", order.name()),
            CheckKind::LinearDeterminant { x, y, .. } => format!("linear determinant {x} vs {y}"),
            CheckKind::Scaling { x, y, factor, .. } => format!("scaling by {factor} of {x} vs {y}"),
        }
    }
}

/// Per-run adjustments.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    /// Replaces every check tolerance.
    pub tol: Option<f64>,
    /// Replaces every case and check convention.
    pub convention: Option<Convention>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    #[serde(rename = "match")]
    Match,
    #[serde(rename = "disputed-as-expected")]
    DisputedAsExpected,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::DisputedAsExpected => "disputed-as-expected",
            Status::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Number(f64),
    Label(String),
}

impl Outcome {
    pub fn render(&self) -> String {
        match self {
            Outcome::Number(x) => format_sig(*x),
            Outcome::Label(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub label: String,
    pub source: String,
    pub t: Option<f64>,
    pub computed: Outcome,
    pub expected: Outcome,
    /// For disputed checks, the printed value.
    pub printed: Option<Outcome>,
    pub delta: Option<f64>,
    pub tol: f64,
    pub status: Status,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub title: String,
    pub convention: Convention,
    pub status: Status,
    pub checks: Vec<CheckReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub checks: usize,
    pub matched: usize,
    pub disputed: usize,
    pub mismatched: usize,
    pub disputed_cases: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub version: u32,
    pub filter: Option<String>,
    pub summary: Summary,
    pub warnings: Vec<String>,
    pub cases: Vec<CaseReport>,
}

impl CorpusReport {
    pub fn has_mismatch(&self) -> bool {
        self.summary.mismatched > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `x` to 12 significant digits, plain notation where it stays readable.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        let decimals = (11 - e).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        // rounding may carry into a new leading digit
        if s.replace(['-', '.'], "").trim_start_matches('0').len() > 12 {
            return format!("{x:.11e}");
        }
        s
    } else {
        format!("{x:.11e}")
    }
}

fn corpus_file() -> CorpusFile {
    serde_json::from_str(DATA).expect("embedded corpus parses")
}

/// All cases, ordered by id.
pub fn cases() -> Vec<CorpusCase> {
    let mut c = corpus_file().cases;
    c.sort_by(|a, b| a.id.cmp(&b.id));
    c
}

pub fn version() -> u32 {
    corpus_file().version
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseDescriptor {
    pub id: String,
    pub title: String,
    pub source: String,
    pub convention: Convention,
    pub checks: usize,
    pub disputed: bool,
}

fn matcher(filter: &str) -> Result<Vec<GlobMatcher>> {
    filter
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            Glob::new(p)
                .map(|g| g.compile_matcher())
                .map_err(|e| Error::UnknownCase(format!("bad filter {p:?}: {e}")))
        })
        .collect()
}

fn select(filter: Option<&str>) -> Result<Vec<CorpusCase>> {
    let all = cases();
    let Some(f) = filter.filter(|f| !f.trim().is_empty()) else {
        return Ok(all);
    };
    let globs = matcher(f)?;
    Ok(all
        .into_iter()
        .filter(|c| globs.iter().any(|g| g.is_match(&c.id)))
        .collect())
}

/// Case descriptors, ordered by id; `filter` is a comma-separated list of
/// glob patterns over ids.
pub fn list_cases(filter: Option<&str>) -> Result<Vec<CaseDescriptor>> {
    Ok(select(filter)?
        .into_iter()
        .map(|c| CaseDescriptor {
            disputed: c.checks.iter().any(|k| k.disputed.is_some()),
            checks: c.checks.len(),
            id: c.id,
            title: c.title,
            source: c.source,
            convention: c.convention,
        })
        .collect())
}

pub fn find_case(id: &str) -> Result<CorpusCase> {
    cases()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

pub fn run_case(id: &str, overrides: &Overrides) -> Result<CaseReport> {
    Ok(evaluate_case(&find_case(id)?, overrides))
}

/// Runs every selected case. An empty selection yields an empty report
/// with a warning.
pub fn reproduce(filter: Option<&str>, overrides: &Overrides) -> Result<CorpusReport> {
    let selected = select(filter)?;
    let mut warnings = Vec::new();
    if selected.is_empty() {
        warnings.push(format!("filter {:?} matched no cases", filter.unwrap_or("")));
    }
    let reports: Vec<CaseReport> = selected.iter().map(|c| evaluate_case(c, overrides)).collect();
    let count = |s: Status| reports.iter().flat_map(|r| &r.checks).filter(|c| c.status == s).count();
    let summary = Summary {
        cases: reports.len(),
        checks: reports.iter().map(|r| r.checks.len()).sum(),
        matched: count(Status::Match),
        disputed: count(Status::DisputedAsExpected),
        mismatched: count(Status::Mismatch),
        disputed_cases: reports
            .iter()
            .filter(|r| r.checks.iter().any(|c| c.status == Status::DisputedAsExpected))
            .map(|r| r.id.clone())
            .collect(),
    };
    Ok(CorpusReport {
        version: version(),
        filter: filter.map(str::to_string),
        summary,
        warnings,
        cases: reports,
    })
}

/// A fixed-width table: one row per check.
pub fn report_table(report: &CorpusReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:<44} {:>10} {:>20} {:>20} {:>10}  status",
        "case", "check", "t", "computed", "expected", "|delta|"
    );
    for case in &report.cases {
        for c in &case.checks {
            let _ = writeln!(
                out,
                "{:<8} {:<44} {:>10} {:>20} {:>20} {:>10}  {}",
                case.id,
                truncate(&c.label, 44),
                c.t.map(format_sig).unwrap_or_default(),
                truncate(&c.computed.render(), 20),
                truncate(&c.expected.render(), 20),
                c.delta.map(|d| format!("{d:.2e}")).unwrap_or_default(),
                c.status.label(),
            );
            if let Some(p) = &c.printed {
                let _ = writeln!(out, "{:<8}   printed: {}", "", p.render());
            }
        }
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "\n{} cases, {} checks: {} match, {} disputed-as-expected, {} MISMATCH",
        s.cases, s.checks, s.matched, s.disputed, s.mismatched
    );
    if !s.disputed_cases.is_empty() {
        let _ = writeln!(out, "disputed cases: {}", s.disputed_cases.join(", "));
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn truncate(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        s.chars().take(n - 1).chain(['~']).collect()
    }
}

/// Under tolerance `tol`: relative when `|expected| > 1e-3`, absolute below.
pub fn within(computed: f64, expected: f64, tol: f64) -> (bool, f64) {
    let delta = (computed - expected).abs();
    let scale = if expected.abs() > 1e-3 { expected.abs() } else { 1.0 };
    (delta <= tol * scale, delta)
}

struct Ctx<'a> {
    case: &'a CorpusCase,
    dists: BTreeMap<String, Result<Dist>>,
}

impl Ctx<'_> {
    fn spec(&self, name: &str) -> Result<&DistSpec> {
        self.case
            .dists
            .get(name)
            .ok_or_else(|| Error::UnknownCase(format!("{}: no distribution named {name:?}", self.case.id)))
    }

    fn dist(&self, name: &str, path: Path) -> Result<Dist> {
        match self.dists.get(name) {
            Some(Ok(d)) => match path {
                Path::Closed => Ok(d.clone()),
                Path::Quadrature => Ok(quadrature_path(self.spec(name)?)?.quadrature_only()),
            },
            Some(Err(e)) => Err(Error::UnknownCase(format!("{name}: {e}"))),
            None => Err(self.spec(name).unwrap_err()),
        }
    }
}

fn quadrature_path(spec: &DistSpec) -> Result<Dist> {
    match spec {
        DistSpec::Convolution { components } => {
            let mut acc = Dist::build(&components[0])?;
            for c in &components[1..] {
                acc = ops::convolution_numeric(&acc, &Dist::build(c)?)?;
            }
            Ok(acc)
        }
        other => Dist::build(other),
    }
}

fn quantity(d: &Dist, q: Quantity, t: f64, conv: Convention) -> Result<f64> {
    match q {
        Quantity::Survival => Ok(d.survival(t)),
        Quantity::Density => d.density(t),
        Quantity::Mrl => mrlai::mrl_under(d, t, conv),
        Quantity::MrlAverage => mrlai::mrl_average(d, t, conv),
        Quantity::MrlIntegral => mrlai::mrl_integral(d, t, conv),
        Quantity::Mrlai => mrlai::mrlai(d, t, conv),
        Quantity::Hazard => mrlai::hazard(d, t),
        Quantity::HazardAi => mrlai::hazard_ai(d, t),
        Quantity::Tail => orders::tail_under(d, t, conv),
        Quantity::DoubleTail => orders::double_tail(d, t, conv),
    }
}

fn evaluate_case(case: &CorpusCase, ov: &Overrides) -> CaseReport {
    let dists = case.dists.iter().map(|(k, s)| (k.clone(), Dist::build(s))).collect();
    let ctx = Ctx { case, dists };
    let mut checks = Vec::new();
    for check in &case.checks {
        let conv = ov.convention.or(check.convention).unwrap_or(case.convention);
        let tol = ov.tol.or(check.tol).unwrap_or(DEFAULT_TOL);
        let base = CheckReport {
            label: check.kind.label(),
            source: check.source.clone(),
            t: None,
            computed: Outcome::Label(String::new()),
            expected: Outcome::Label(String::new()),
            printed: None,
            delta: None,
            tol,
            status: Status::Match,
            detail: check.disputed.as_ref().map(|d| d.note.clone()),
        };
        match evaluate_check(&ctx, check, conv, tol, &base) {
            Ok(rows) => checks.extend(rows),
            Err(e) => checks.push(CheckReport {
                computed: Outcome::Label("error".into()),
                status: Status::Mismatch,
                detail: Some(e.to_string()),
                ..base
            }),
        }
    }
    let status = checks.iter().map(|c| c.status).max().unwrap_or(Status::Match);
    CaseReport {
        id: case.id.clone(),
        title: case.title.clone(),
        convention: ov.convention.unwrap_or(case.convention),
        status,
        checks,
        notes: case.notes.clone(),
    }
}

fn printed_at(d: &Option<Dispute>, i: usize) -> Option<Outcome> {
    let v = &d.as_ref()?.printed;
    match v {
        serde_json::Value::Array(a) => a.get(i).map(outcome_of),
        other => Some(outcome_of(other)),
    }
}

fn outcome_of(v: &serde_json::Value) -> Outcome {
    match v {
        serde_json::Value::Number(n) => Outcome::Number(n.as_f64().unwrap_or(f64::NAN)),
        serde_json::Value::String(s) => Outcome::Label(s.clone()),
        other => Outcome::Label(other.to_string()),
    }
}

fn status(ok: bool, disputed: bool) -> Status {
    match (ok, disputed) {
        (false, _) => Status::Mismatch,
        (true, true) => Status::DisputedAsExpected,
        (true, false) => Status::Match,
    }
}

fn evaluate_check(
    ctx: &Ctx,
    check: &Check,
    conv: Convention,
    tol: f64,
    base: &CheckReport,
) -> Result<Vec<CheckReport>> {
    let disputed = check.disputed.is_some();
    match &check.kind {
        CheckKind::Value {
            dist,
            quantity: q,
            at,
            expected,
            over,
            path,
        } => {
            if at.len() != expected.len() {
                return Err(Error::UnknownCase(format!(
                    "{}: at/expected length mismatch",
                    ctx.case.id
                )));
            }
            let d = ctx.dist(dist, *path)?;
            let o = over.as_ref().map(|o| ctx.dist(o, *path)).transpose()?;
            let mut rows = Vec::new();
            for (i, (&t, &want)) in at.iter().zip(expected).enumerate() {
                let mut v = quantity(&d, *q, t, conv)?;
                if let Some(o) = &o {
                    v /= quantity(o, *q, t, conv)?;
                }
                let (ok, delta) = within(v, want, tol);
                rows.push(CheckReport {
                    t: Some(t),
                    computed: Outcome::Number(v),
                    expected: Outcome::Number(want),
                    printed: printed_at(&check.disputed, i),
                    delta: Some(delta),
                    status: status(ok, disputed),
                    ..base.clone()
                });
            }
            Ok(rows)
        }
        CheckKind::Formula {
            dist,
            quantity: q,
            formula,
            params,
            grid,
            over,
            path,
        } => {
            let f =
                formulas::lookup(formula).ok_or_else(|| Error::UnknownCase(format!("unknown formula {formula:?}")))?;
            if params.len() != f.arity {
                return Err(Error::UnknownCase(format!(
                    "formula {formula} takes {} parameters",
                    f.arity
                )));
            }
            let d = ctx.dist(dist, *path)?;
            let o = over.as_ref().map(|o| ctx.dist(o, *path)).transpose()?;
            let mut worst: Option<(f64, f64, f64, f64, bool)> = None;
            for t in grid.points() {
                let mut v = quantity(&d, *q, t, conv)?;
                if let Some(o) = &o {
                    v /= quantity(o, *q, t, conv)?;
                }
                let want = (f.eval)(t, params);
                let (ok, delta) = within(v, want, tol);
                let scaled = if want.abs() > 1e-3 { delta / want.abs() } else { delta };
                let scaled = if scaled.is_nan() { f64::INFINITY } else { scaled };
                if worst.is_none_or(|w| scaled > w.0) {
                    worst = Some((scaled, t, v, want, ok));
                }
            }
            let (_, t, v, want, ok) = worst.expect("grid has points");
            Ok(vec![CheckReport {
                label: format!("{} = {}", base.label, f.description),
                t: Some(t),
                computed: Outcome::Number(v),
                expected: Outcome::Number(want),
                printed: printed_at(&check.disputed, 0),
                delta: Some((v - want).abs()),
                status: status(ok, disputed),
                ..base.clone()
            }])
        }
        CheckKind::Class {
            dist,
            target,
            grid,
            expected,
            level,
            witness_within,
        } => {
            let d = ctx.dist(dist, Path::Closed)?;
            let v = match target {
                Target::Mrl => classify::classify_mrl(&d, grid)?,
                Target::Mrla => classify::classify_mrla(&d, grid, conv)?,
                Target::Mrlai => classify::classify_mrlai(&d, grid, conv)?,
                Target::HazardAi => classify::classify_hazard_ai(&d, grid)?,
            };
            let mut ok = v.kind.label() == expected;
            let mut detail = base.detail.clone();
            let mut delta = None;
            if let (Some(want), VerdictKind::Constant { level: got }) = (level, v.kind) {
                let (good, dl) = within(got, *want, tol);
                ok &= good;
                delta = Some(dl);
            }
            if let (Some([lo, hi]), Some(w)) = (witness_within, v.witness) {
                ok &= *lo <= w.t[1] && w.t[1] <= *hi;
                let text = format!(
                    "witness t = [{}, {}, {}]",
                    format_sig(w.t[0]),
                    format_sig(w.t[1]),
                    format_sig(w.t[2])
                );
                detail = Some(match detail {
                    Some(d) => format!("{d}; {text}"),
                    None => text,
                });
            }
            let computed = match v.kind {
                VerdictKind::Constant { level } => format!("constant({})", format_sig(level)),
                k => k.label().to_string(),
            };
            Ok(vec![CheckReport {
                computed: Outcome::Label(computed),
                expected: Outcome::Label(match level {
                    Some(l) => format!("{expected}({})", format_sig(*l)),
                    None => expected.clone(),
                }),
                printed: printed_at(&check.disputed, 0),
                delta,
                status: status(ok, disputed),
                detail,
                ..base.clone()
            }])
        }
        CheckKind::Order {
            x,
            y,
            order,
            grid,
            expected,
            method,
            decided_by,
        } => {
            let (dx, dy) = (ctx.dist(x, Path::Closed)?, ctx.dist(y, Path::Closed)?);
            let v = match (method, order) {
                (Method::Compare, OrderKind::Mrlai) => orders::compare(&dx, &dy, grid, conv, orders::DEFAULT_TOL)?,
                (Method::Compare, _) => {
                    return Err(Error::UnknownCase("compare applies to the mrlai order only".into()));
                }
                (Method::Grid, k) => orders::order(*k, &dx, &dy, grid, conv, orders::DEFAULT_TOL)?,
            };
            let ok = v.relation == *expected && decided_by.is_none_or(|b| b == v.decided_by);
            let by = serde_json::to_value(v.decided_by).expect("serializable");
            let mut detail = format!("decided by {}", by.as_str().expect("string"));
            if let Some(w) = v.witness {
                let _ = write!(
                    detail,
                    "; witness t = {}: {} > {}",
                    format_sig(w.t),
                    format_sig(w.lhs),
                    format_sig(w.rhs)
                );
            }
            if let Some(n) = &v.note {
                let _ = write!(detail, "; {n}");
            }
            if let Some(d) = &base.detail {
                detail = format!("{d}; {detail}");
            }
            Ok(vec![CheckReport {
                t: v.witness.map(|w| w.t),
                computed: Outcome::Label(v.relation.label().into()),
                expected: Outcome::Label(expected.label().into()),
                printed: printed_at(&check.disputed, 0),
                status: status(ok, disputed),
                detail: Some(detail),
                ..base.clone()
            }])
        }
        CheckKind::LinearDeterminant { x, y, expected } => {
            let linear = |name: &str| match ctx.spec(name)? {
                DistSpec::MrlLinear { a, b } => Ok((*a, *b)),
                _ => Err(Error::UnknownCase(format!("{name} is not a linear MRL"))),
            };
            let ((ax, bx), (ay, by)) = (linear(x)?, linear(y)?);
            let v = orders::linear_mrl_order(ax, bx, ay, by);
            Ok(vec![CheckReport {
                computed: Outcome::Label(v.relation.label().into()),
                expected: Outcome::Label(expected.label().into()),
                status: status(v.relation == *expected, disputed),
                detail: v.note,
                ..base.clone()
            }])
        }
        CheckKind::Scaling { x, y, factor, grid } => {
            let (dx, dy) = (ctx.dist(x, Path::Closed)?, ctx.dist(y, Path::Closed)?);
            let r = orders::check_scale_preservation(&dx, &dy, *factor, grid, conv)?;
            let mut identity: f64 = 0.0;
            for d in [&dx, &dy] {
                let s = ops::scale(d, *factor)?;
                for t in grid.points() {
                    let diff = mrlai::mrlai(&s, factor * t, conv)? - mrlai::mrlai(d, t, conv)?;
                    identity = identity.max(diff.abs());
                }
            }
            let margin_gap = (r.base_margin - r.scaled_margin).abs();
            let ok = r.preserved && identity <= tol && margin_gap <= tol;
            Ok(vec![CheckReport {
                computed: Outcome::Number(identity),
                expected: Outcome::Number(0.0),
                delta: Some(identity),
                status: status(ok, disputed),
                detail: Some(format!(
                    "base {}, scaled {}, margin gap {}",
                    r.base.relation.label(),
                    r.scaled.relation.label(),
                    format_sig(margin_gap)
                )),
                ..base.clone()
            }])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.885924163724462), "0.885924163724");
        assert_eq!(format_sig(2.0), "2");
        assert_eq!(format_sig(-1.5), "-1.5");
        assert_eq!(format_sig(1.189386e-4), "0.0001189386");
        assert_eq!(format_sig(1e15), "1.00000000000e15");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(9.9999999999999e-1), "1");
    }

    #[test]
    fn tolerance_switches_to_absolute_for_small_values() {
        assert!(within(1.0 + 5e-7, 1.0, 1e-6).0);
        assert!(within(2e-4, 1e-4, 1e-3).0);
        assert!(!within(2e-4, 1e-4, 1e-5).0);
    }

    #[test]
    fn embedded_corpus_parses_and_is_sorted() {
        let c = cases();
        assert!(c.len() >= 16);
        assert!(c.windows(2).all(|w| w[0].id < w[1].id));
        for case in &c {
            for name in case.dists.keys() {
                assert!(Dist::build(&case.dists[name]).is_ok(), "{} {name}", case.id);
            }
        }
    }

    #[test]
    fn filters() {
        assert_eq!(list_cases(Some("ex3.*")).unwrap().len(), 5);
        assert!(list_cases(Some("nope*")).unwrap().is_empty());
        assert_eq!(list_cases(None).unwrap().len(), cases().len());
        assert_eq!(list_cases(Some("")).unwrap().len(), cases().len());
        assert_eq!(list_cases(Some("ex2.2,thm2.7")).unwrap().len(), 2);
    }

    #[test]
    fn unknown_case() {
        assert!(matches!(
            run_case("ex9.9", &Overrides::default()),
            Err(Error::UnknownCase(_))
        ));
    }

    #[test]
    fn disputed_set() {
        let disputed: Vec<String> = list_cases(None)
            .unwrap()
            .into_iter()
            .filter(|c| c.disputed)
            .map(|c| c.id)
            .collect();
        assert_eq!(disputed, ["ex2.3", "ex2.6", "ex3.3", "ex3.5"]);
    }

    #[test]
    fn erlang_case_matches() {
        let r = run_case("ex2.2", &Overrides::default()).unwrap();
        assert_eq!(r.status, Status::Match, "{r:#?}");
    }
}
