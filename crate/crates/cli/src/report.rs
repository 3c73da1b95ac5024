//! Serializable reports and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use indexbound::bounds::{BoundInterval, Classification, Containment};
use indexbound::charsum::{SquaredMagnitude, TraceDistribution};
use indexbound::poly::EquivalentForm;
use indexbound::{Elem, Field, SubfieldTower};
use serde::{Deserialize, Serialize};

use crate::args::{Command, Format};
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub job: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldInfo>,
    pub bounds: Vec<BoundRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckRecord>>,
}

impl Report {
    pub fn new(job: Command, field: Option<FieldInfo>) -> Self {
        Self {
            job,
            field,
            bounds: Vec::new(),
            oracle: None,
            summary: None,
            table: None,
            checks: None,
        }
    }
}

/// An element printed both as a power of the generator and in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemRepr {
    pub power: String,
    pub coords: String,
}

impl ElemRepr {
    pub fn new(field: &Field, x: Elem) -> Self {
        Self {
            power: field.format_elem(x),
            coords: field.format_coords(x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    pub modulus: String,
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_q: Option<u64>,
}

impl FieldInfo {
    pub fn new(field: &Field, tower: Option<&SubfieldTower>) -> Self {
        Self {
            p: field.p(),
            m: field.m(),
            q: field.q(),
            modulus: field.format_modulus(),
            generator: field.format_coords(field.generator()),
            base_q: tower.map(|t| t.base_q()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub shift: Vec<u32>,
    pub representative: String,
    pub l_star: u64,
    pub r_star: u64,
    pub n0: u64,
    pub n_star: u64,
}

impl Witness {
    pub fn new(field: &Field, eq: &EquivalentForm) -> Self {
        Self {
            shift: eq.shift.0.clone(),
            representative: eq.rep.display(field),
            l_star: eq.l_star,
            r_star: eq.r_star(),
            n0: eq.n0,
            n_star: eq.n_star,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    /// Swept parameter value, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ElemRepr>,
    pub name: String,
    pub center: String,
    pub radius_coeff: u64,
    pub radicand: u64,
    pub radius: String,
    pub applicable: bool,
    pub informative: bool,
    pub classification: Classification,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl BoundRecord {
    pub fn new(a: Option<ElemRepr>, name: &str, b: &BoundInterval, witness: Option<Witness>) -> Self {
        Self {
            a,
            name: name.to_string(),
            center: b.render_center(),
            radius_coeff: b.radius_coeff,
            radicand: b.radicand,
            radius: b.render_radius(),
            applicable: b.applicable,
            informative: b.informative,
            classification: b.classify(),
            reason: b.reason.clone(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub bound: String,
    pub holds: bool,
    pub exact: bool,
    pub deviation: f64,
    pub radius: f64,
}

impl Verdict {
    pub fn new(bound: &str, c: Containment) -> Self {
        Self {
            bound: bound.to_string(),
            holds: c.holds,
            exact: c.exact,
            deviation: c.deviation,
            radius: c.radius,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ElemRepr>,
    /// Number of `x` with each trace value `0..p`.
    pub counts: Vec<u64>,
    pub abs: f64,
    /// `|S|²` as an exact rational when available.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_sq: Option<String>,
    /// The sum itself when it is an integer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    /// Point count, for curve jobs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<u64>,
    pub containment: Vec<Verdict>,
}

impl OracleRecord {
    pub fn from_distribution(a: Option<ElemRepr>, d: &TraceDistribution) -> Self {
        let abs_sq = match d.abs_sq() {
            SquaredMagnitude::Exact(r) => Some(indexbound::bounds::render_rational(r)),
            SquaredMagnitude::Approx(_) => None,
        };
        Self {
            a,
            counts: d.counts.clone(),
            abs: d.abs(),
            abs_sq,
            value: d.integer_sum().map(|v| v as i64),
            points: None,
            containment: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_abs: Option<f64>,
    /// Parameter values whose improved interval has a shifted center.
    pub shifted_centers: usize,
    pub containment_failures: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCells {
    pub weil: String,
    pub index: String,
    pub ours: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: u64,
    pub m: u32,
    pub n: u64,
    pub r: u64,
    pub cells: TableCells,
    pub l: u64,
    pub l_star: u64,
    /// `gcd(n, r, q-1)`.
    pub t: u64,
    /// Binomial-formula radius for the no-root case, rendered.
    pub binomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub job: String,
    pub check: String,
    pub passed: bool,
    /// A soft check only warns.
    pub soft: bool,
    pub detail: String,
}

pub fn render(report: &Report, format: Format) -> CliResult<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Text => Ok(to_text(report)),
    }
}

pub fn to_json(report: &Report) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(s: &str) -> CliResult<Report> {
    serde_json::from_str(s).map_err(|e| CliError::Output(e.to_string()))
}

#[derive(Serialize)]
struct CsvBoundRow<'a> {
    a: &'a str,
    bound: &'a str,
    center: &'a str,
    radius: &'a str,
    radius_coeff: u64,
    radicand: u64,
    classification: Classification,
    exact_abs: Option<f64>,
    holds: Option<bool>,
}

#[derive(Serialize)]
struct CsvTableRow<'a> {
    p: u64,
    m: u32,
    n: u64,
    r: u64,
    weil: &'a str,
    index: &'a str,
    ours: &'a str,
}

fn to_csv(report: &Report) -> CliResult<String> {
    let err = |e: csv::Error| CliError::Output(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(rows) = &report.table {
        for r in rows {
            w.serialize(CsvTableRow {
                p: r.p,
                m: r.m,
                n: r.n,
                r: r.r,
                weil: &r.cells.weil,
                index: &r.cells.index,
                ours: &r.cells.ours,
            })
            .map_err(err)?;
        }
    } else if let Some(checks) = &report.checks {
        for c in checks {
            w.serialize(c).map_err(err)?;
        }
    } else {
        for b in &report.bounds {
            let a = b.a.as_ref().map(|a| a.power.as_str()).unwrap_or("");
            let oracle = report.oracle.as_ref().and_then(|o| {
                o.iter()
                    .find(|r| r.a.as_ref().map(|x| x.power.as_str()).unwrap_or("") == a)
            });
            let verdict = oracle.and_then(|o| o.containment.iter().find(|v| v.bound == b.name));
            w.serialize(CsvBoundRow {
                a,
                bound: &b.name,
                center: &b.center,
                radius: &b.radius,
                radius_coeff: b.radius_coeff,
                radicand: b.radicand,
                classification: b.classification,
                exact_abs: oracle.map(|o| o.points.map_or(o.abs, |n| n as f64)),
                holds: verdict.map(|v| v.holds),
            })
            .map_err(err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn pad(s: &str, w: usize) -> String {
    let len = s.chars().count();
    if len >= w {
        s.to_string()
    } else {
        format!("{s}{}", " ".repeat(w - len))
    }
}

fn grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| pad(c, w))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push_str(&line(header.iter().map(|s| s.to_string()).collect()));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.clone()));
        out.push('\n');
    }
    out
}

fn to_text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(f) = &report.field {
        let _ = match f.base_q {
            Some(b) => writeln!(
                out,
                "field F_{} over F_{b}, modulus {}, generator {}",
                f.q, f.modulus, f.generator
            ),
            None => writeln!(out, "field F_{}, modulus {}, generator {}", f.q, f.modulus, f.generator),
        };
    }
    if let Some(rows) = &report.table {
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.m.to_string(),
                    r.n.to_string(),
                    r.r.to_string(),
                    r.cells.weil.clone(),
                    r.cells.index.clone(),
                    r.cells.ours.clone(),
                ]
            })
            .collect();
        out.push_str(&grid(&["m", "n", "r", "weil", "index", "ours"], &cells));
    }
    if !report.bounds.is_empty() {
        let rows: Vec<Vec<String>> = report
            .bounds
            .iter()
            .map(|b| {
                let w = b
                    .witness
                    .as_ref()
                    .map(|w| format!("l*={} n0={} n*={} {}", w.l_star, w.n0, w.n_star, w.representative))
                    .unwrap_or_default();
                vec![
                    b.a.as_ref().map(|a| a.power.clone()).unwrap_or_default(),
                    b.name.clone(),
                    b.center.clone(),
                    b.radius.clone(),
                    b.classification.to_string(),
                    w,
                ]
            })
            .collect();
        out.push_str(&grid(&["a", "bound", "center", "radius", "class", "witness"], &rows));
    }
    if let Some(oracle) = &report.oracle {
        let rows: Vec<Vec<String>> = oracle
            .iter()
            .map(|o| {
                let value = match (o.points, o.value) {
                    (Some(n), _) => format!("N = {n}"),
                    (None, Some(v)) => format!("S = {v}"),
                    (None, None) => format!("|S| = {:.6}", o.abs),
                };
                let failed: Vec<&str> = o
                    .containment
                    .iter()
                    .filter(|v| !v.holds)
                    .map(|v| v.bound.as_str())
                    .collect();
                let verdict = if o.containment.is_empty() {
                    String::new()
                } else if failed.is_empty() {
                    "all contained".to_string()
                } else {
                    format!("outside: {}", failed.join(", "))
                };
                vec![
                    o.a.as_ref().map(|a| a.power.clone()).unwrap_or_default(),
                    value,
                    format!("{:?}", o.counts),
                    verdict,
                ]
            })
            .collect();
        out.push('\n');
        out.push_str(&grid(&["a", "exact", "trace counts", "containment"], &rows));
    }
    if let Some(checks) = &report.checks {
        for c in checks {
            let tag = match (c.passed, c.soft) {
                (true, _) => "ok  ",
                (false, true) => "warn",
                (false, false) => "FAIL",
            };
            let _ = writeln!(out, "{tag} {:<14} {}  {}", c.check, c.job, c.detail);
        }
    }
    if let Some(s) = &report.summary {
        out.push('\n');
        if report.checks.is_none() && report.table.is_none() {
            let _ = write!(
                out,
                "{} records, {} shifted centers, {} containment failures",
                s.records, s.shifted_centers, s.containment_failures
            );
            if let Some(m) = s.max_abs {
                let _ = write!(out, ", max |S| = {m:.6}");
            }
            out.push('\n');
        }
        for n in &s.notes {
            let _ = writeln!(out, "note: {n}");
        }
    }
    out
}
