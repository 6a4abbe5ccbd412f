use std::path::Path;

use serde::Serialize;

use opm_core::exec::{map_indexed, ExecPolicy};
use opm_core::table::COLUMNS;
use opm_core::verify::{check_problem, CheckReport, Location, SuiteConfig};
use opm_core::{
    catalog_row, cps_structure, eval_objective, global, setup, CheckKind, EvalRequest, GoldenTable, Method,
    OpmError, Problem, SolveOptions, Triplet,
};

use crate::render::{aligned, csv, json, num};
use crate::{CliError, Format, MethodArg, Reply};

const EXTRA_VAR: &str = "OPM_CATALOG_EXTRA";

fn ok(text: String) -> Result<Reply, CliError> {
    Ok(Reply { text, ok: true })
}

/// The embedded appendix table, extended with every `*.txt` table found in
/// the directory named by `OPM_CATALOG_EXTRA`.
fn reference_table() -> Result<GoldenTable, CliError> {
    let mut table = GoldenTable::embedded();
    let Some(dir) = std::env::var_os(EXTRA_VAR) else {
        return Ok(table);
    };
    let dir = Path::new(&dir);
    let entries = std::fs::read_dir(dir)
        .map_err(|e| OpmError::FixtureMissing(format!("{EXTRA_VAR}={}: {e}", dir.display())))?;
    let mut files: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    for f in files {
        table.merge(GoldenTable::load(&f)?);
    }
    Ok(table)
}

fn problem(name: &str) -> Result<&'static dyn Problem, CliError> {
    Ok(global().lookup(name)?)
}

#[derive(Serialize)]
struct ListEntry<'a> {
    name: &'a str,
    classif: &'a str,
    default_n: usize,
    summary: &'a str,
}

pub fn list(pattern: Option<&str>, fmt: Format) -> Result<Reply, CliError> {
    let pat = pattern
        .map(|p| {
            glob::Pattern::new(p).map_err(|e| CliError::BadPattern {
                pattern: p.to_string(),
                reason: e.msg.to_string(),
            })
        })
        .transpose()?;
    let entries: Vec<ListEntry> = global()
        .iter()
        .filter(|p| pat.as_ref().is_none_or(|g| g.matches(p.meta().class)))
        .map(|p| ListEntry {
            name: p.name(),
            classif: p.meta().class,
            default_n: p.meta().default_n,
            summary: p.meta().summary(),
        })
        .collect();
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| vec![e.name.into(), e.classif.into(), e.default_n.to_string(), e.summary.into()])
        .collect();
    let header = ["name", "classif", "default_n", "summary"];
    ok(match fmt {
        Format::Json => json(&entries)?,
        Format::Csv => csv(&header, &rows)?,
        Format::Table => aligned(&header, &rows),
    })
}

pub fn info(name: &str, n: Option<usize>, fmt: Format) -> Result<Reply, CliError> {
    let p = problem(name)?;
    let meta = p.meta();
    let n = n.unwrap_or(meta.default_n);
    let row = catalog_row(p, Some(n))?;
    let s = cps_structure(p, n)?;
    let table = reference_table()?;
    let fields: Vec<(&str, String)> = vec![
        ("name", meta.name.to_string()),
        ("description", meta.description.to_string()),
        ("default_n", meta.default_n.to_string()),
        ("dimension", meta.dim_rule.describe()),
        ("n", n.to_string()),
        ("fstar", meta.fstar.render()),
        ("classif", meta.class.to_string()),
        ("elements", s.n_elements().to_string()),
        ("mel", s.mel().to_string()),
        ("fixed", row.nfix.to_string()),
        ("independent_evaluator", {
            let x0 = setup(p, &[n as f64])?.x0;
            p.full_objective(&x0, EvalRequest::VALUE).is_some().to_string()
        }),
        ("row", table.layout.render(&row)),
        ("reference_row", table.line(name).unwrap_or("none").to_string()),
    ];
    ok(match fmt {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
                .collect();
            json(&map)?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = fields.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
            csv(&["field", "value"], &rows)?
        }
        Format::Table => fields
            .into_iter()
            .map(|(k, v)| format!("{k:<22}{v}\n"))
            .collect(),
    })
}

fn parse_numbers<'a>(tokens: impl Iterator<Item = &'a str>) -> Result<Vec<f64>, CliError> {
    tokens
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::BadInput(format!("'{t}' is not a number")))
        })
        .collect()
}

fn want(spec: &str) -> Result<EvalRequest, CliError> {
    let mut req = EvalRequest::VALUE;
    for w in spec.split(',').map(str::trim) {
        match w {
            "f" => {}
            "g" => req.gradient = true,
            "H" | "h" => req.hessian = true,
            other => return Err(CliError::BadInput(format!("unknown output '{other}' (use f, g, H)"))),
        }
    }
    Ok(req)
}

#[derive(Serialize)]
struct EvalOut<'a> {
    problem: &'a str,
    n: usize,
    f: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<Vec<f64>>,
    #[serde(rename = "H", skip_serializing_if = "Option::is_none")]
    h: Option<Vec<Triplet>>,
}

pub fn eval(
    name: &str,
    n: Option<usize>,
    x: Option<&str>,
    x0: bool,
    file: Option<&Path>,
    want_spec: &str,
    fmt: Format,
) -> Result<Reply, CliError> {
    let p = problem(name)?;
    let req = want(want_spec)?;
    let point = match (x, x0, file) {
        (Some("x0"), ..) | (None, true, None) => setup(p, &[n.unwrap_or(p.meta().default_n) as f64])?.x0,
        (Some(list), ..) => parse_numbers(list.split(','))?,
        (None, false, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            parse_numbers(text.split_whitespace())?
        }
        _ => return Err(CliError::BadInput("no point given; use --x, --x0 or --file".into())),
    };
    if let Some(n) = n {
        if n != point.len() {
            return Err(OpmError::DimensionMismatch {
                expected: n,
                actual: point.len(),
            }
            .into());
        }
    }
    let r = eval_objective(p, &point, req, None)?;
    let out = EvalOut {
        problem: p.name(),
        n: point.len(),
        f: r.f,
        g: r.g,
        h: r.h.map(|h| h.entries().to_vec()),
    };
    let mut rows = vec![vec!["f".into(), String::new(), String::new(), num(out.f)]];
    for (j, v) in out.g.iter().flatten().enumerate() {
        rows.push(vec!["g".into(), (j + 1).to_string(), String::new(), num(*v)]);
    }
    for t in out.h.iter().flatten() {
        rows.push(vec!["H".into(), t.row.to_string(), t.col.to_string(), num(t.value)]);
    }
    let header = ["output", "row", "col", "value"];
    ok(match fmt {
        Format::Json => json(&out)?,
        Format::Csv => csv(&header, &rows)?,
        Format::Table => aligned(&header, &rows),
    })
}

fn suites(spec: Option<&str>) -> Result<Vec<CheckKind>, CliError> {
    let Some(spec) = spec else {
        return Ok(CheckKind::ALL.to_vec());
    };
    spec.split(',')
        .map(str::trim)
        .map(|k| {
            CheckKind::from_key(k).ok_or_else(|| {
                CliError::BadInput(format!(
                    "unknown suite '{k}' (use gradfd, hessfd, cps, sparsity, metadata)"
                ))
            })
        })
        .collect()
}

fn location(at: &Option<Location>) -> String {
    match at {
        None => "-".into(),
        Some(Location::Value) => "f".into(),
        Some(Location::Gradient { index }) => format!("g[{index}]"),
        Some(Location::Hessian { row, col }) => format!("H[{row},{col}]"),
        Some(Location::Field { column }) => column.clone(),
    }
}

pub fn check(target: &str, n: Option<usize>, spec: Option<&str>, seed: u64, fmt: Format) -> Result<Reply, CliError> {
    let kinds = suites(spec)?;
    let table = reference_table()?;
    let names: Vec<String> = if target == "all" {
        global().names().into_iter().map(str::to_string).collect()
    } else {
        vec![problem(target)?.name().to_string()]
    };
    let cfg = SuiteConfig {
        seed,
        dimension: n,
        policy: ExecPolicy::Sequential,
        ..SuiteConfig::default()
    };
    // one task per problem; results come back in name order
    let per_problem = map_indexed(ExecPolicy::Parallel, names.len(), |k| {
        check_problem(problem(&names[k])?, &kinds, &cfg, global(), &table).map_err(CliError::from)
    });
    let mut reports: Vec<CheckReport> = Vec::new();
    for r in per_problem {
        reports.extend(r?);
    }
    let all_passed = reports.iter().all(|r| r.passed);
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                if r.passed { "PASS" } else { "FAIL" }.into(),
                r.problem.clone(),
                r.check_kind.key().into(),
                r.n.to_string(),
                num(r.max_rel_err),
                num(r.threshold),
                r.cases.to_string(),
                location(&r.worst_index),
            ]
        })
        .collect();
    let header = ["status", "problem", "check", "n", "max_rel_err", "threshold", "cases", "worst"];
    let text = match fmt {
        Format::Json => json(&reports)?,
        Format::Csv => csv(&header, &rows)?,
        Format::Table => {
            let mut s = aligned(&header, &rows);
            let failed = reports.iter().filter(|r| !r.passed).count();
            s.push_str(&format!("{} reports, {failed} failed\n", reports.len()));
            s
        }
    };
    Ok(Reply { text, ok: all_passed })
}

pub fn solve(
    name: &str,
    n: Option<usize>,
    method: MethodArg,
    trace: bool,
    max_iters: Option<usize>,
    grad_tol: Option<f64>,
    fmt: Format,
) -> Result<Reply, CliError> {
    let p = problem(name)?;
    let defaults = SolveOptions::default();
    let opts = SolveOptions {
        method: match method {
            MethodArg::Newton => Method::NewtonTR,
            MethodArg::Pbfgs => Method::PartitionedBfgsTR,
        },
        trace,
        max_iters: max_iters.unwrap_or(defaults.max_iters),
        grad_tol: grad_tol.unwrap_or(defaults.grad_tol),
        ..defaults
    };
    let r = opm_core::solve(p, n, &opts)?;
    let summary: Vec<(&str, String)> = vec![
        ("problem", r.problem.clone()),
        ("n", r.n.to_string()),
        ("method", format!("{:?}", r.method)),
        ("status", format!("{:?}", r.status)),
        ("iterations", r.iterations.to_string()),
        ("f_final", num(r.f_final)),
        ("grad_norm", num(r.grad_norm)),
        ("n_obj_evals", r.n_obj_evals.to_string()),
        ("n_grad_evals", r.n_grad_evals.to_string()),
        ("n_hess_evals", r.n_hess_evals.to_string()),
    ];
    let trace_header = ["iter", "f", "grad_norm", "radius", "step_norm", "accepted"];
    let trace_rows: Vec<Vec<String>> = r
        .trace
        .iter()
        .map(|t| {
            vec![
                t.iter.to_string(),
                num(t.f),
                num(t.grad_norm),
                num(t.radius),
                num(t.step_norm),
                t.accepted.to_string(),
            ]
        })
        .collect();
    ok(match fmt {
        Format::Json => json(&r)?,
        Format::Csv if trace => csv(&trace_header, &trace_rows)?,
        Format::Csv => {
            let (h, v): (Vec<&str>, Vec<String>) = summary.into_iter().unzip();
            csv(&h, &[v])?
        }
        Format::Table => {
            let mut s: String = summary.iter().map(|(k, v)| format!("{k:<14}{v}\n")).collect();
            if let Some(u) = &r.updates {
                s.push_str(&format!(
                    "{:<14}{} applied, {} skipped, max secant residual {}\n",
                    "updates",
                    u.applied,
                    u.skipped,
                    num(u.max_secant_residual)
                ));
            }
            if trace {
                s.push('\n');
                s.push_str(&aligned(&trace_header, &trace_rows));
            }
            s
        }
    })
}

pub fn table(fmt: Format) -> Result<Reply, CliError> {
    let layout_source = GoldenTable::embedded();
    let rows = global()
        .iter()
        .map(|p| catalog_row(p, None))
        .collect::<opm_core::Result<Vec<_>>>()?;
    ok(match fmt {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let body: Vec<Vec<String>> = rows.iter().map(|r| r.fields()).collect();
            csv(&COLUMNS, &body)?
        }
        Format::Table => {
            let mut s = format!("{}\n", layout_source.header);
            for r in &rows {
                s.push_str(&layout_source.layout.render(r));
                s.push('\n');
            }
            s
        }
    })
}
