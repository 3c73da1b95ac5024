//! The corpus harness behind `verify`.

use indexbound::charsum::trace_distribution;
use indexbound::Elem;

use crate::args::{Command, VerifyArgs};
use crate::corpus::{parse_corpus, CorpusJob, BUILTIN};
use crate::error::{CliError, CliResult, EXIT_OK, EXIT_VERIFY};
use crate::report::{CheckRecord, Report, Summary};
use crate::run::{bound_cases, run_curve, run_sum, Outcome};
use crate::table::{compute_table, mismatches};

struct Log<'a> {
    job: &'a str,
    out: Vec<CheckRecord>,
}

impl Log<'_> {
    fn push(&mut self, check: &str, passed: bool, soft: bool, detail: String) {
        self.out.push(CheckRecord {
            job: self.job.to_string(),
            check: check.to_string(),
            passed,
            soft,
            detail,
        });
    }
}

fn first_few(items: &[String]) -> String {
    let mut s = items.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
    if items.len() > 3 {
        s.push_str(&format!("; … {} in total", items.len()));
    }
    s
}

fn check_job(job: &CorpusJob, log: &mut Log) -> CliResult<()> {
    match &job.command {
        Command::Bound(args) => {
            let mut args = args.clone();
            args.oracle = true;
            let field = indexbound::Field::with_config(
                args.p,
                args.m,
                indexbound::FieldConfig {
                    cap: args.limits.cap,
                    ..Default::default()
                },
            )?;
            let c = match &args.c {
                Some(lit) => field.parse_element(lit)?,
                None => Elem::ONE,
            };
            let cases = bound_cases(&field, &args)?;
            let label = |a: Option<Elem>| a.map(|x| format!("a={}", field.format_elem(x))).unwrap_or_default();

            let (mut tested, mut outside) = (0, Vec::new());
            let (mut index, mut degree, mut invariance, mut dominance) = (vec![], vec![], vec![], vec![]);
            let (mut narrower, mut wider, mut compared) = (0, 0, 0);
            for case in &cases {
                let exact = case.exact.as_ref().expect("oracle forced on");
                for (name, b) in case.intervals() {
                    if b.applicable {
                        tested += 1;
                        let v = b.check_sum(exact);
                        if !v.holds {
                            outside.push(format!(
                                "{} {name}: {:.4} > {:.4}",
                                label(case.a),
                                v.deviation,
                                v.radius
                            ));
                        }
                    }
                }
                let r = &case.report;
                if let (Some(w), Some(eq)) = (&r.index_witness, &r.improved_witness) {
                    if eq.l_star > w.form.l {
                        index.push(format!("{} l* = {} > l = {}", label(case.a), eq.l_star, w.form.l));
                    }
                    if r.improved.radius_coeff > r.index.radius_coeff {
                        dominance.push(format!(
                            "{} improved {} > index {}",
                            label(case.a),
                            r.improved.radius_coeff,
                            r.index.radius_coeff
                        ));
                    }
                }
                if let Some(eq) = &r.degree_witness {
                    if eq.n_star > case.f.degree() {
                        degree.push(format!(
                            "{} n* = {} > n = {}",
                            label(case.a),
                            eq.n_star,
                            case.f.degree()
                        ));
                    }
                }
                let base = trace_distribution(&field, &case.f, c)?;
                for eq in [&r.improved_witness, &r.degree_witness].into_iter().flatten() {
                    if trace_distribution(&field, &eq.rep, Elem::ONE)? != base {
                        invariance.push(format!("{} shift {:?}", label(case.a), eq.shift.0));
                    }
                }
                if let Some(b) = &case.binomial {
                    compared += 1;
                    match b.radius_coeff.cmp(&r.improved.radius_coeff) {
                        std::cmp::Ordering::Less => narrower += 1,
                        std::cmp::Ordering::Greater => wider += 1,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            log.push(
                "containment",
                outside.is_empty(),
                false,
                if outside.is_empty() {
                    format!("{tested} intervals over {} values contain the exact sum", cases.len())
                } else {
                    first_few(&outside)
                },
            );
            log.push("index", index.is_empty(), false, first_few(&index));
            log.push("degree", degree.is_empty(), false, first_few(&degree));
            log.push("invariance", invariance.is_empty(), false, first_few(&invariance));
            log.push("dominance", dominance.is_empty(), true, first_few(&dominance));
            if compared > 0 {
                log.push(
                    "binomial",
                    true,
                    true,
                    format!("binomial radius narrower than improved on {narrower}, wider on {wider}, of {compared}"),
                );
            }
        }
        Command::Curve(args) => {
            let mut args = args.clone();
            args.oracle = true;
            let (_, cases) = run_curve(&args)?;
            let mut outside = Vec::new();
            let mut counts = std::collections::BTreeMap::<u64, usize>::new();
            for case in &cases {
                let n = case.count.as_ref().expect("oracle forced on").n;
                *counts.entry(n).or_default() += 1;
                for (name, b) in case.bounds.named() {
                    if b.applicable && !b.check_value(n as i128).holds {
                        outside.push(format!("N = {n}: {name}"));
                    }
                }
            }
            let tally = counts
                .iter()
                .map(|(n, k)| format!("N = {n} × {k}"))
                .collect::<Vec<_>>()
                .join(", ");
            log.push("count", true, false, format!("both counting methods agree; {tally}"));
            log.push(
                "containment",
                outside.is_empty(),
                false,
                if outside.is_empty() {
                    String::new()
                } else {
                    first_few(&outside)
                },
            );
        }
        Command::Sum(args) => {
            let r = run_sum(args)?;
            log.push("run", true, false, format!("{} sums", r.oracle.map_or(0, |o| o.len())));
        }
        Command::Table(args) => {
            let rows = compute_table(args.preset, indexbound::poly::DEFAULT_BUDGET)?;
            let bad: Vec<String> = mismatches(args.preset, &rows)
                .into_iter()
                .map(|(m, n, r, col, got, want)| format!("({m},{n},{r}) {col}: {got} vs {want}"))
                .collect();
            log.push("table", bad.is_empty(), false, first_few(&bad));
        }
        Command::Verify(_) => {
            return Err(CliError::Usage("verify jobs cannot be nested".into()));
        }
    }
    Ok(())
}

pub fn run_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let src = match &args.corpus {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Corpus {
            path: path.display().to_string(),
            source,
        })?,
        None => BUILTIN.to_string(),
    };
    let jobs = parse_corpus(&src)?;
    let mut checks = Vec::new();
    let mut run_exit = EXIT_OK;
    for job in &jobs {
        let mut log = Log {
            job: &job.text,
            out: Vec::new(),
        };
        if let Err(e) = check_job(job, &mut log) {
            if run_exit == EXIT_OK {
                run_exit = e.exit_code();
            }
            log.push("run", false, false, e.to_string());
        }
        checks.extend(log.out);
    }
    let hard = checks
        .iter()
        .filter(|c| !c.passed && !c.soft && c.check != "run")
        .count();
    let warnings = checks.iter().filter(|c| !c.passed && c.soft).count();
    let errors = checks.iter().filter(|c| !c.passed && c.check == "run").count();
    let exit = if hard > 0 { EXIT_VERIFY } else { run_exit };

    let mut report = Report::new(Command::Verify(args.clone()), None);
    report.summary = Some(Summary {
        records: checks.len(),
        notes: vec![format!(
            "{} jobs, {} checks: {} failed, {} warnings, {} jobs did not run",
            jobs.len(),
            checks.len(),
            hard,
            warnings,
            errors
        )],
        ..Summary::default()
    });
    report.checks = Some(checks);
    Ok(Outcome { report, exit })
}
