use einstab_core::aloff_wallach::{aw_instability_all, Branch};
use einstab_core::liecore::validate_pq;
use einstab_core::nikonorov::{nik_instability, nik_solve};
use einstab_core::spectra::{case_study, CaseId, TRIPLE_SEARCH_BOUND};
use einstab_core::stiefel::stiefel_instability;
use rayon::prelude::*;

use crate::config::{AnalysisConfig, Command, Space, SpectralFamily};
use crate::error::{CliError, EXIT_INVARIANT, EXIT_OK};
use crate::lowdim::lowdim_rows;
use crate::real::sig6;
use crate::report::{Failure, NikResult, Report, ResultEntry};

/// Tolerance on the discriminant identity and the closed-form Hessian entry.
pub const IDENTITY_TOL: f64 = 1e-8;

pub const REPORT_AW_MAX_Q: i64 = 20;
pub const REPORT_STIEFEL: (i64, i64) = (3, 20);
pub const REPORT_HYPERQUADRIC: (i64, i64) = (3, 20);
pub const REPORT_GRASSMANNIAN: (i64, i64) = (2, 10);
pub const REPORT_SP_SU: (i64, i64) = (4, 20);

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: u8,
}

type Entries = Result<Vec<ResultEntry>, CliError>;

fn failure(label: String, e: &CliError) -> ResultEntry {
    ResultEntry::Failure(Failure {
        label,
        error: e.to_string(),
        exit_code: e.exit_code(),
    })
}

fn recorded(label: String, r: Entries) -> Vec<ResultEntry> {
    r.unwrap_or_else(|e| vec![failure(label, &e)])
}

pub fn aloff_wallach(p: i64, q: i64, branch: Option<Branch>) -> Entries {
    let branches = branch.map_or(Branch::ALL.to_vec(), |b| vec![b]);
    let mut out = Vec::new();
    for b in branches {
        for cert in aw_instability_all(p, q, b)? {
            out.push(ResultEntry::AloffWallach((&cert).into()));
        }
    }
    Ok(out)
}

pub fn stiefel(n: usize) -> Entries {
    Ok(vec![ResultEntry::Stiefel((&stiefel_instability(n)?).into())])
}

pub fn nikonorov() -> Entries {
    let [first, second] = nik_solve()?;
    Ok(vec![
        ResultEntry::Nikonorov(NikResult::new(1, &nik_instability(&first, 2)?)),
        ResultEntry::Nikonorov(NikResult::new(2, &nik_instability(&second, 1)?)),
    ])
}

pub fn spectral(id: CaseId) -> Entries {
    Ok(vec![ResultEntry::Spectral((&case_study(id)?).into())])
}

fn computed_entries(key: &str) -> Entries {
    match key {
        "stiefel(3)" => stiefel(3),
        "stiefel(4)" => stiefel(4),
        "aloff-wallach(0,1)" => aloff_wallach(0, 1, None),
        other => spectral(other.parse().map_err(CliError::Core)?),
    }
}

/// The low-dimensional tables plus every computation a row cites.
pub fn low_dim(dimension: Option<u32>) -> Entries {
    let rows = lowdim_rows(dimension)?;
    let mut out = Vec::new();
    for key in rows.iter().filter_map(|r| r.computed.clone()) {
        out.extend(recorded(key.clone(), computed_entries(&key)));
    }
    out.extend(rows.into_iter().map(ResultEntry::LowDim));
    Ok(out)
}

pub fn aw_points(q_lo: i64, q_hi: i64) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = (q_lo.max(0)..=q_hi)
        .flat_map(|q| (0..=q / 3).map(move |p| (p, q)))
        .filter(|&(p, q)| validate_pq(p, q).is_ok())
        .collect();
    pts.sort_unstable();
    pts
}

fn sweep_aw(lo: i64, hi: i64, branch: Option<Branch>) -> Vec<ResultEntry> {
    aw_points(lo, hi)
        .par_iter()
        .map(|&(p, q)| recorded(format!("aloff-wallach({p},{q})"), aloff_wallach(p, q, branch)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn sweep_stiefel(lo: i64, hi: i64) -> Vec<ResultEntry> {
    (lo..=hi)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            let r = usize::try_from(n)
                .map_err(|_| CliError::usage(format!("n = {n} is negative")))
                .and_then(stiefel);
            recorded(format!("stiefel({n})"), r)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn sweep_spectral(family: SpectralFamily, lo: i64, hi: i64) -> Vec<ResultEntry> {
    (lo..=hi)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&v| {
            let id = family.case(v);
            recorded(id.to_string(), spectral(id))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn full_report() -> Vec<ResultEntry> {
    let mut out = sweep_aw(1, REPORT_AW_MAX_Q, None);
    out.extend(sweep_stiefel(REPORT_STIEFEL.0, REPORT_STIEFEL.1));
    out.extend(recorded("nikonorov".into(), nikonorov()));
    for id in [CaseId::TripleS3, CaseId::E6, CaseId::E7] {
        out.extend(recorded(id.to_string(), spectral(id)));
    }
    out.extend(sweep_spectral(SpectralFamily::Hyperquadric, REPORT_HYPERQUADRIC.0, REPORT_HYPERQUADRIC.1));
    out.extend(sweep_spectral(SpectralFamily::Grassmannian, REPORT_GRASSMANNIAN.0, REPORT_GRASSMANNIAN.1));
    out.extend(sweep_spectral(SpectralFamily::SpSu, REPORT_SP_SU.0, REPORT_SP_SU.1));
    out.extend(lowdim_rows(None).unwrap_or_default().into_iter().map(ResultEntry::LowDim));
    out
}

fn entry_label(e: &ResultEntry) -> String {
    match e {
        ResultEntry::AloffWallach(r) => format!("aloff-wallach({},{},{}) at c = {}", r.p, r.q, r.branch, sig6(r.c.0)),
        ResultEntry::Stiefel(r) => format!("stiefel({})", r.n),
        ResultEntry::Nikonorov(r) => format!("nikonorov solution {}", r.solution),
        ResultEntry::Spectral(r) => r.case.clone(),
        ResultEntry::LowDim(r) => r.item.clone(),
        ResultEntry::Failure(f) => f.label.clone(),
    }
}

/// Checks every numerical invariant a result carries; returns the violations.
pub fn violations(results: &[ResultEntry], tol: f64) -> Vec<String> {
    let mut out = Vec::new();
    for e in results {
        let label = entry_label(e);
        if let Some(v) = e.verdict() {
            if !v.is_consistent() {
                out.push(format!("{label}: stored verdict {} contradicts its witness", v.classification));
            }
        }
        let mut check = |what: &str, value: f64, bound: f64| {
            if value.is_nan() || value.abs() > bound {
                out.push(format!("{label}: {what} = {} exceeds {}", sig6(value), sig6(bound)));
            }
        };
        match e {
            ResultEntry::AloffWallach(r) => {
                check("Einstein defect", r.einstein_defect.0, tol);
                check("structure-constant Einstein defect", r.structure_defect.0, tol);
                check("discriminant identity error", r.identity_error.0, IDENTITY_TOL);
            }
            ResultEntry::Stiefel(r) => {
                check("Einstein residual", r.einstein_residual.0, tol);
                check("closed-form Hessian error", r.closed_form_error.0, IDENTITY_TOL);
            }
            ResultEntry::Nikonorov(r) => check("Einstein residual", r.einstein_residual.0, tol),
            _ => {}
        }
    }
    out
}

fn notes_for(results: &[ResultEntry]) -> Vec<String> {
    let mut notes = Vec::new();
    let has = |f: &dyn Fn(&ResultEntry) -> bool| results.iter().any(f);
    if has(&|e| matches!(e, ResultEntry::Spectral(r) if r.case == "triple-S3")) {
        notes.push(format!(
            "triple-S3: the first eigenvalue is the smallest Casimir among class-one weights with every spin coordinate at most {TRIPLE_SEARCH_BOUND}; minimality beyond that bound is not checked"
        ));
    }
    if has(&|e| matches!(e, ResultEntry::Spectral(r) if r.case.starts_with("grassmannian"))) {
        notes.push(
            "grassmannian: the regular 3-Sasakian SO(3)-bundle over the same Grassmannian carries two Einstein metrics in its canonical variation, both S-linearly unstable; that statement is recorded here without recomputation".to_owned(),
        );
    }
    if has(&|e| matches!(e, ResultEntry::Spectral(r) if r.case.starts_with("sp-su"))) {
        notes.push("sp-su: the witness is the closed-form eigenvalue of the Einstein operator on the invariant trace-free direction, compared with its instability threshold".to_owned());
    }
    if has(&|e| matches!(e, ResultEntry::AloffWallach(_))) {
        notes.push("aloff-wallach: metrics are gauged to alpha = 1; every root of the slope equation on each branch is reported".to_owned());
    }
    notes
}

fn dispatch(config: &AnalysisConfig) -> Vec<ResultEntry> {
    let (lo, hi) = config.range.unwrap_or((0, -1));
    match (&config.command, &config.space) {
        (Command::Report, _) | (_, None) => full_report(),
        (_, Some(space)) => match space {
            Space::AloffWallach { p, q, branch } => recorded(format!("aloff-wallach({p},{q})"), aloff_wallach(*p, *q, *branch)),
            Space::AloffWallachSweep { branch } => sweep_aw(lo, hi, *branch),
            Space::Stiefel { n } => recorded(format!("stiefel({n})"), stiefel(*n)),
            Space::StiefelSweep => sweep_stiefel(lo, hi),
            Space::Nikonorov => recorded("nikonorov".into(), nikonorov()),
            Space::Spectra(id) => recorded(id.to_string(), spectral(*id)),
            Space::SpectraSweep(family) => sweep_spectral(*family, lo, hi),
            Space::LowDim { dimension } => recorded("low-dim".into(), low_dim(*dimension)),
        },
    }
}

/// Builds a pool sized by `EINSTAB_THREADS` when it is set to a positive integer.
pub fn thread_pool() -> Result<Option<rayon::ThreadPool>, CliError> {
    let Ok(v) = std::env::var("EINSTAB_THREADS") else {
        return Ok(None);
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::usage(format!("EINSTAB_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| CliError::usage(format!("cannot build thread pool: {e}")))
}

pub fn run(config: &AnalysisConfig) -> Outcome {
    let results = match thread_pool() {
        Ok(Some(pool)) => pool.install(|| dispatch(config)),
        Ok(None) => dispatch(config),
        Err(e) => vec![failure("EINSTAB_THREADS".into(), &e)],
    };
    let mut report = Report::new(config.pairs.clone());
    let problems = violations(&results, config.tol);
    report.notes = notes_for(&results);
    let mut exit_code = report_exit(&results);
    if !problems.is_empty() {
        exit_code = exit_code.max(EXIT_INVARIANT);
        report.notes.extend(problems.into_iter().map(|p| format!("invariant violated: {p}")));
    }
    report.results = results;
    Outcome { report, exit_code }
}

fn report_exit(results: &[ResultEntry]) -> u8 {
    results
        .iter()
        .filter_map(|r| match r {
            ResultEntry::Failure(f) => Some(f.exit_code),
            _ => None,
        })
        .max()
        .unwrap_or(EXIT_OK)
}
