use indexbound::bounds::{
    binomial_bound, bound_report, centered_distribution, curve_bounds, BoundInterval, BoundReport, CurveBounds,
    CurveOptions, SearchOptions,
};
use indexbound::charsum::{artin_schreier_count_capped, trace_distribution_capped, CurveCount, TraceDistribution};
use indexbound::field::FieldConfig;
use indexbound::poly::DEFAULT_BUDGET;
use indexbound::{parse_poly, Elem, Field, MappingPoly, Params, SubfieldTower};

use crate::args::{Bindings, BoundArgs, Command, CurveArgs, SumArgs, TableArgs};
use crate::error::{CliError, CliResult, EXIT_OK};
use crate::report::{BoundRecord, ElemRepr, FieldInfo, OracleRecord, Report, Summary, Verdict, Witness};
use crate::table::{compute_table, mismatches};
use crate::verify::run_verify;

/// A finished command: its report and the process exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub exit: i32,
}

pub fn execute(cmd: &Command) -> CliResult<Outcome> {
    let report = match cmd {
        Command::Bound(a) => run_bound(a)?.0,
        Command::Sum(a) => run_sum(a)?,
        Command::Curve(a) => run_curve(a)?.0,
        Command::Table(a) => run_table(a)?,
        Command::Verify(a) => return run_verify(a),
    };
    Ok(Outcome { report, exit: EXIT_OK })
}

fn build_field(p: u64, m: u32, cap: u64) -> CliResult<Field> {
    Ok(Field::with_config(
        p,
        m,
        FieldConfig {
            cap,
            ..FieldConfig::default()
        },
    )?)
}

fn parse_nonzero(field: &Field, lit: Option<&str>, what: &str) -> CliResult<Elem> {
    let Some(lit) = lit else { return Ok(Elem::ONE) };
    let x = field.parse_element(lit)?;
    if x.is_zero() {
        return Err(CliError::Usage(format!("{what} must be nonzero")));
    }
    Ok(x)
}

/// One parameter assignment per swept value, or a single fixed one.
pub fn assignments(field: &Field, b: &Bindings) -> CliResult<Vec<(Option<Elem>, Params)>> {
    let mut base = Params::new();
    if let Some(a) = &b.a {
        base.insert("a".into(), field.parse_element(a)?);
    }
    for s in &b.set {
        let (name, lit) = s
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects NAME=LIT, got {s:?}")))?;
        let name = name.trim();
        if base
            .insert(name.to_string(), field.parse_element(lit.trim())?)
            .is_some()
        {
            return Err(CliError::Usage(format!("parameter {name} bound twice")));
        }
    }
    match &b.sweep {
        None => Ok(vec![(None, base)]),
        Some(name) => {
            if base.contains_key(name) {
                return Err(CliError::Usage(format!("parameter {name} is both swept and bound")));
            }
            Ok(field
                .nonzero_elements()
                .map(|x| {
                    let mut p = base.clone();
                    p.insert(name.clone(), x);
                    (Some(x), p)
                })
                .collect())
        }
    }
}

/// Everything computed for one parameter value of a bound job.
#[derive(Clone, Debug)]
pub struct BoundCase {
    pub a: Option<Elem>,
    pub f: MappingPoly,
    pub report: BoundReport,
    pub binomial: Option<BoundInterval>,
    /// Trace counts of `c·(f - b)`.
    pub exact: Option<TraceDistribution>,
}

impl BoundCase {
    pub fn intervals(&self) -> Vec<(&'static str, &BoundInterval)> {
        let mut out: Vec<_> = self.report.named().to_vec();
        if let Some((_, b)) = &self.report.tightest_member {
            out.push(("exhaustive", b));
        }
        if let Some(b) = &self.binomial {
            out.push(("binomial", b));
        }
        out
    }
}

/// `x^n + a·x^r` with `1 <= r < n`, ignoring any constant.
fn binomial_shape(f: &MappingPoly) -> Option<(u64, u64, Elem)> {
    match f.terms() {
        [lo, hi] if hi.coeff == Elem::ONE => Some((hi.exp, lo.exp, lo.coeff)),
        _ => None,
    }
}

pub fn bound_cases(field: &Field, args: &BoundArgs) -> CliResult<Vec<BoundCase>> {
    let c = parse_nonzero(field, args.c.as_deref(), "--c")?;
    let opts = SearchOptions {
        budget: args.limits.budget,
        exhaustive: args.exhaustive,
    };
    let mut out = Vec::new();
    for (a, params) in assignments(field, &args.bindings)? {
        let f = parse_poly(&args.poly, field, &params)?;
        let mut report = bound_report(field, &f, c, opts, false)?;
        if args.widen > 0 && report.improved.applicable {
            let b = &report.improved;
            report.improved = BoundInterval::new(
                b.center,
                b.radius_coeff + args.widen,
                b.radicand,
                b.ceiling,
                format!("{} (widened by {})", b.reason, args.widen),
            );
        }
        // the binomial formula is stated for the canonical character
        let binomial = match binomial_shape(&f) {
            Some((n, r, coeff)) if c == Elem::ONE => Some(binomial_bound(field, n, r, coeff)?.interval),
            _ => None,
        };
        let exact = if args.oracle {
            Some(centered_distribution(field, &f, c, args.limits.cap)?)
        } else {
            None
        };
        out.push(BoundCase {
            a,
            f,
            report,
            binomial,
            exact,
        });
    }
    Ok(out)
}

fn index_witness(field: &Field, case: &BoundCase) -> Option<Witness> {
    let w = case.report.index_witness.as_ref()?;
    Some(Witness {
        shift: vec![0; case.f.terms().len() + 1],
        representative: w.form.expand(field).display(field),
        l_star: w.form.l,
        r_star: w.form.r,
        n0: w.n0,
        n_star: case.f.degree(),
    })
}

fn summarize(records: usize, oracle: Option<&[OracleRecord]>, shifted: usize) -> Summary {
    let max_abs = oracle.and_then(|o| o.iter().map(|r| r.abs).reduce(f64::max));
    let failures = oracle.map_or(0, |o| {
        o.iter()
            .map(|r| r.containment.iter().filter(|v| !v.holds).count())
            .sum()
    });
    Summary {
        records,
        max_abs,
        shifted_centers: shifted,
        containment_failures: failures,
        notes: Vec::new(),
    }
}

pub fn run_bound(args: &BoundArgs) -> CliResult<(Report, Vec<BoundCase>)> {
    let field = build_field(args.p, args.m, args.limits.cap)?;
    let cases = bound_cases(&field, args)?;
    let mut report = Report::new(Command::Bound(args.clone()), Some(FieldInfo::new(&field, None)));
    let mut oracle = Vec::new();
    for case in &cases {
        let a = case.a.map(|x| ElemRepr::new(&field, x));
        let r = &case.report;
        let witness = |name: &str| match name {
            "index" => index_witness(&field, case),
            "improved" => r.improved_witness.as_ref().map(|e| Witness::new(&field, e)),
            "reduced_weil" => r.degree_witness.as_ref().map(|e| Witness::new(&field, e)),
            _ => None,
        };
        for (name, b) in case.intervals() {
            let mut rec = BoundRecord::new(a.clone(), name, b, witness(name));
            if name == "exhaustive" {
                if let Some((shift, _)) = &r.tightest_member {
                    rec.reason = format!("{}; shift {:?}", rec.reason, shift.0);
                }
            }
            report.bounds.push(rec);
        }
        if let Some(d) = &case.exact {
            let mut o = OracleRecord::from_distribution(a.clone(), d);
            o.containment = case
                .intervals()
                .into_iter()
                .filter(|(_, b)| b.applicable)
                .map(|(name, b)| Verdict::new(name, b.check_sum(d)))
                .collect();
            oracle.push(o);
        }
    }
    if args.oracle {
        report.oracle = Some(oracle);
    }
    if args.bindings.sweep.is_some() {
        let shifted = cases.iter().filter(|c| c.report.improved.center != 0.into()).count();
        report.summary = Some(summarize(cases.len(), report.oracle.as_deref(), shifted));
    }
    Ok((report, cases))
}

pub fn run_sum(args: &SumArgs) -> CliResult<Report> {
    let field = build_field(args.p, args.m, args.cap)?;
    let c = parse_nonzero(&field, args.c.as_deref(), "--c")?;
    let mut report = Report::new(Command::Sum(args.clone()), Some(FieldInfo::new(&field, None)));
    let mut oracle = Vec::new();
    for (a, params) in assignments(&field, &args.bindings)? {
        let f = parse_poly(&args.poly, &field, &params)?;
        let d = trace_distribution_capped(&field, &f, c, args.cap)?;
        oracle.push(OracleRecord::from_distribution(a.map(|x| ElemRepr::new(&field, x)), &d));
    }
    if args.bindings.sweep.is_some() {
        report.summary = Some(summarize(oracle.len(), Some(&oracle), 0));
    }
    report.oracle = Some(oracle);
    Ok(report)
}

/// Everything computed for one parameter value of a curve job.
#[derive(Clone, Debug)]
pub struct CurveCase {
    pub a: Option<Elem>,
    pub f: MappingPoly,
    pub bounds: CurveBounds,
    pub count: Option<CurveCount>,
}

pub fn run_curve(args: &CurveArgs) -> CliResult<(Report, Vec<CurveCase>)> {
    let tower = SubfieldTower::new(args.q, args.m)?;
    let field = tower.big_field(FieldConfig {
        cap: args.limits.cap,
        ..FieldConfig::default()
    })?;
    let opts = CurveOptions {
        search: SearchOptions {
            budget: args.limits.budget,
            exhaustive: false,
        },
        certify: args.certify,
    };
    let mut report = Report::new(Command::Curve(args.clone()), Some(FieldInfo::new(&field, Some(&tower))));
    let mut oracle = Vec::new();
    let mut cases = Vec::new();
    for (a, params) in assignments(&field, &args.bindings)? {
        let f = parse_poly(&args.poly, &field, &params)?;
        let bounds = curve_bounds(&field, &tower, &f, opts)?;
        let count = if args.oracle {
            Some(artin_schreier_count_capped(&field, &tower, &f, args.limits.cap)?)
        } else {
            None
        };
        let a_repr = a.map(|x| ElemRepr::new(&field, x));
        for (name, b) in bounds.named() {
            let w = match name {
                "index" => bounds.index_witness.as_ref().map(|e| Witness::new(&field, e)),
                _ => None,
            };
            report.bounds.push(BoundRecord::new(a_repr.clone(), name, b, w));
        }
        if let Some(cnt) = &count {
            oracle.push(OracleRecord {
                a: a_repr,
                counts: vec![cnt.kernel_hits, field.q() - cnt.kernel_hits],
                abs: cnt.n as f64,
                abs_sq: None,
                value: None,
                points: Some(cnt.n),
                containment: bounds
                    .named()
                    .into_iter()
                    .filter(|(_, b)| b.applicable)
                    .map(|(name, b)| Verdict::new(name, b.check_value(cnt.n as i128)))
                    .collect(),
            });
        }
        cases.push(CurveCase { a, f, bounds, count });
    }
    if args.oracle {
        report.oracle = Some(oracle);
    }
    if args.bindings.sweep.is_some() {
        let big = (field.q() as i128).into();
        let shifted = cases.iter().filter(|c| c.bounds.index.center != big).count();
        report.summary = Some(summarize(cases.len(), report.oracle.as_deref(), shifted));
    }
    Ok((report, cases))
}

pub fn run_table(args: &TableArgs) -> CliResult<Report> {
    let rows = compute_table(args.preset, DEFAULT_BUDGET)?;
    let notes = mismatches(args.preset, &rows)
        .into_iter()
        .map(|(m, n, r, col, got, want)| format!("row (m={m}, n={n}, r={r}) {col}: computed {got}, published {want}"))
        .collect();
    let mut report = Report::new(Command::Table(args.clone()), None);
    report.summary = Some(Summary {
        records: rows.len(),
        notes,
        ..Summary::default()
    });
    report.table = Some(rows);
    Ok(report)
}
