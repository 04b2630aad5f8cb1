use std::fmt::Write as _;

use serde::Serialize;

use crate::config::Format;
use crate::error::CliError;
use crate::real::{sig6, Exact, Real};
use crate::report::{LowDimRow, Report, ResultEntry, VerdictJson};

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Markdown => Ok(to_markdown(report)),
    }
}

pub fn to_json(report: &Report) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Invariant(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<Report, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::usage(format!("not a report: {e}")))
}

#[derive(Debug, Serialize)]
struct CsvRow {
    kind: &'static str,
    params: String,
    c: Option<Real>,
    lambda: Option<String>,
    discriminant: Option<Real>,
    f_c: Option<Real>,
    margin: Option<Real>,
    verdict: String,
    error: String,
}

impl CsvRow {
    fn new(kind: &'static str, params: String) -> Self {
        Self {
            kind,
            params,
            c: None,
            lambda: None,
            discriminant: None,
            f_c: None,
            margin: None,
            verdict: String::new(),
            error: String::new(),
        }
    }

    fn with_verdict(mut self, v: &VerdictJson) -> Self {
        self.margin = Some(Real(v.margin()));
        self.verdict = verdict_text(v);
        self
    }
}

fn csv_row(e: &ResultEntry) -> CsvRow {
    match e {
        ResultEntry::AloffWallach(r) => CsvRow {
            c: Some(r.c),
            lambda: Some(format!("{:.16e}", r.lambda.0)),
            discriminant: Some(r.discriminant),
            f_c: Some(r.f_c),
            ..CsvRow::new("aloff-wallach", format!("p={} q={} branch={}", r.p, r.q, r.branch))
        }
        .with_verdict(&r.verdict),
        ResultEntry::Stiefel(r) => CsvRow {
            lambda: Some(format!("{:.16e}", r.lambda.0)),
            ..CsvRow::new("stiefel", format!("n={}", r.n))
        }
        .with_verdict(&r.verdict),
        ResultEntry::Nikonorov(r) => CsvRow {
            lambda: Some(format!("{:.16e}", r.lambda.0)),
            ..CsvRow::new("nikonorov", format!("solution={} axis={}", r.solution, r.axis))
        }
        .with_verdict(&r.verdict),
        ResultEntry::Spectral(r) => CsvRow {
            lambda: Some(r.einstein_constant.0.clone()),
            ..CsvRow::new("spectral", r.case.clone())
        }
        .with_verdict(&r.verdict),
        ResultEntry::LowDim(r) => CsvRow {
            verdict: r.verdict.clone(),
            ..CsvRow::new("low-dim", format!("dim={} item={}", r.dimension, r.item))
        },
        ResultEntry::Failure(f) => CsvRow {
            error: f.error.clone(),
            ..CsvRow::new("failure", f.label.clone())
        },
    }
}

pub fn to_csv(report: &Report) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for e in &report.results {
        w.serialize(csv_row(e)).map_err(|e| CliError::Invariant(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Invariant(e.to_string()))
}

/// The classification recomputed from the witness, flagged when the stored label disagrees.
pub fn verdict_text(v: &VerdictJson) -> String {
    let derived = v.derived();
    if v.is_consistent() {
        derived.to_string()
    } else {
        format!("{derived} (stored label {} contradicts witness)", v.classification)
    }
}

fn reals(xs: &[Real]) -> String {
    xs.iter().map(|x| sig6(x.0)).collect::<Vec<_>>().join(", ")
}

fn exact(x: &Exact) -> String {
    if x.0.contains('/') {
        format!("{} ({})", x.0, sig6(x.approx()))
    } else {
        x.0.clone()
    }
}

fn opt<T>(x: &Option<T>, f: impl Fn(&T) -> String) -> String {
    x.as_ref().map_or_else(|| "-".to_owned(), f)
}

fn table(out: &mut String, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}|", vec!["---"; header.len()].join("|"));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
    out.push('\n');
}

/// Verdict of the computation a low-dimensional row cites, if the report holds it.
fn recomputed(report: &Report, key: &str) -> Option<String> {
    let matches: Vec<&VerdictJson> = report
        .results
        .iter()
        .filter(|e| match e {
            ResultEntry::Stiefel(r) => key == format!("stiefel({})", r.n),
            ResultEntry::AloffWallach(r) => key == format!("aloff-wallach({},{})", r.p, r.q),
            ResultEntry::Spectral(r) => key == r.case,
            _ => false,
        })
        .filter_map(ResultEntry::verdict)
        .collect();
    if matches.is_empty() {
        return None;
    }
    let mut labels: Vec<String> = matches.iter().map(|v| v.derived().to_string()).collect();
    labels.dedup();
    Some(labels.join(", "))
}

fn lowdim_cell(report: &Report, row: &LowDimRow) -> String {
    match &row.computed {
        None => "literature".to_owned(),
        Some(key) => match recomputed(report, key) {
            Some(v) if v == row.verdict => format!("{key}: {v}"),
            Some(v) => format!("{key}: {v} (table says {})", row.verdict),
            None => format!("{key}: not in this report"),
        },
    }
}

pub fn to_markdown(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# einstab report\n");
    let _ = writeln!(out, "version {}\n", report.version);
    if !report.config.is_empty() {
        let cfg: Vec<String> = report.config.iter().map(|(k, v)| format!("`{k} = {v}`")).collect();
        let _ = writeln!(out, "configuration: {}\n", cfg.join(", "));
    }
    let r = &report.results;

    let aw: Vec<_> = r.iter().filter_map(|e| if let ResultEntry::AloffWallach(a) = e { Some(a) } else { None }).collect();
    if !aw.is_empty() {
        out.push_str("## Aloff-Wallach spaces\n\n");
        table(
            &mut out,
            &["p", "q", "branch", "c", "(alpha, beta, gamma, delta)", "Lambda", "D", "f(c)", "second variation", "verdict"],
            aw.iter().map(|a| {
                vec![
                    a.p.to_string(),
                    a.q.to_string(),
                    a.branch.clone(),
                    sig6(a.c.0),
                    reals(&a.metric),
                    sig6(a.lambda.0),
                    sig6(a.discriminant.0),
                    sig6(a.f_c.0),
                    sig6(a.verdict.margin()),
                    verdict_text(&a.verdict),
                ]
            }),
        );
    }

    let st: Vec<_> = r.iter().filter_map(|e| if let ResultEntry::Stiefel(s) = e { Some(s) } else { None }).collect();
    if !st.is_empty() {
        out.push_str("## Stiefel manifolds\n\n");
        table(
            &mut out,
            &["n", "Einstein metric", "Lambda", "d2S/dx1^2", "closed form", "verdict"],
            st.iter().map(|s| {
                vec![
                    s.n.to_string(),
                    reals(&s.metric),
                    sig6(s.lambda.0),
                    sig6(s.hessian_11.0),
                    sig6(s.closed_form.0),
                    verdict_text(&s.verdict),
                ]
            }),
        );
    }

    let nk: Vec<_> = r.iter().filter_map(|e| if let ResultEntry::Nikonorov(n) = e { Some(n) } else { None }).collect();
    if !nk.is_empty() {
        out.push_str("## Nikonorov decomposition of N(1,1)\n\n");
        table(
            &mut out,
            &["solution", "(x1, x2, x3, x4)", "Lambda", "axis", "second derivative", "simplified", "verdict"],
            nk.iter().map(|n| {
                vec![
                    n.solution.to_string(),
                    reals(&n.metric),
                    sig6(n.lambda.0),
                    format!("x{}", n.axis),
                    sig6(n.second_derivative.0),
                    sig6(n.simplified.0),
                    verdict_text(&n.verdict),
                ]
            }),
        );
    }

    let sp: Vec<_> = r.iter().filter_map(|e| if let ResultEntry::Spectral(s) = e { Some(s) } else { None }).collect();
    if !sp.is_empty() {
        out.push_str("## Spectral cases\n\n");
        table(
            &mut out,
            &["case", "G", "H", "representation", "Casimir Q'", "Casimir Q", "eigenvalue", "threshold", "subspace dim", "verdict"],
            sp.iter().map(|s| {
                vec![
                    s.case.clone(),
                    s.group.clone(),
                    s.subgroup.clone(),
                    s.representation.clone(),
                    opt(&s.casimir_prime, exact),
                    opt(&s.casimir_q, exact),
                    exact(&s.eigenvalue),
                    exact(&s.threshold),
                    opt(&s.destabilizing_dimension, Clone::clone),
                    verdict_text(&s.verdict),
                ]
            }),
        );
        let mut seen = Vec::new();
        for s in &sp {
            let family = s.case.split('(').next().unwrap_or(&s.case);
            if !seen.contains(&&s.citation) {
                let _ = writeln!(out, "- {family}: {}", s.citation);
                seen.push(&s.citation);
            }
        }
        out.push('\n');
    }

    let ld: Vec<_> = r.iter().filter_map(|e| if let ResultEntry::LowDim(l) = e { Some(l) } else { None }).collect();
    if !ld.is_empty() {
        out.push_str("## Low-dimensional homogeneous Einstein manifolds\n\n");
        let mut dims: Vec<u32> = ld.iter().map(|l| l.dimension).collect();
        dims.dedup();
        for d in dims {
            let _ = writeln!(out, "### Dimension {d}\n");
            table(
                &mut out,
                &["item", "space", "verdict", "evidence", "check"],
                ld.iter().filter(|l| l.dimension == d).map(|l| {
                    vec![l.item.clone(), l.space.clone(), l.verdict.clone(), l.evidence.clone(), lowdim_cell(report, l)]
                }),
            );
        }
    }

    let failures: Vec<_> = report.failures().collect();
    if !failures.is_empty() {
        out.push_str("## Failures\n\n");
        table(
            &mut out,
            &["point", "error", "exit code"],
            failures.iter().map(|f| vec![f.label.clone(), f.error.clone(), f.exit_code.to_string()]),
        );
    }
    if !report.notes.is_empty() {
        out.push_str("## Notes\n\n");
        for n in &report.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    out
}
