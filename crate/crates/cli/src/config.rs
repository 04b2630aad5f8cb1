use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use einstab_core::aloff_wallach::Branch;
use einstab_core::spectra::CaseId;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Sweep,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(CliError::usage(format!("unknown format '{s}' (json, csv, markdown)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "markdown",
        })
    }
}

/// One-parameter spectral families that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralFamily {
    Hyperquadric,
    Grassmannian,
    SpSu,
}

impl SpectralFamily {
    pub fn case(self, v: i64) -> CaseId {
        match self {
            SpectralFamily::Hyperquadric => CaseId::Hyperquadric(v),
            SpectralFamily::Grassmannian => CaseId::Grassmannian(v),
            SpectralFamily::SpSu => CaseId::SpSu(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    AloffWallach { p: i64, q: i64, branch: Option<Branch> },
    AloffWallachSweep { branch: Option<Branch> },
    Stiefel { n: usize },
    StiefelSweep,
    Nikonorov,
    Spectra(CaseId),
    SpectraSweep(SpectralFamily),
    LowDim { dimension: Option<u32> },
}

/// Fully validated description of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub command: Command,
    pub space: Option<Space>,
    pub range: Option<(i64, i64)>,
    pub format: Format,
    /// Largest accepted Einstein residual.
    pub tol: f64,
    /// The merged key/value pairs the config was built from.
    pub pairs: BTreeMap<String, String>,
}

pub const KEYS: [&str; 12] = ["command", "space", "p", "q", "branch", "n", "case", "m", "k", "range", "format", "tol"];

pub const DEFAULT_TOL: f64 = 1e-8;

/// Reads `key = value` lines, ignoring blanks and `#` comments.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", no + 1)))?;
        let k = k.trim().to_ascii_lowercase();
        if !KEYS.contains(&k.as_str()) {
            return Err(CliError::usage(format!("config line {}: unknown key '{k}'", no + 1)));
        }
        out.insert(k, v.trim().to_owned());
    }
    Ok(out)
}

fn get<T: FromStr>(pairs: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    pairs
        .get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| CliError::usage(format!("invalid value '{v}' for {key}")))
        })
        .transpose()
}

fn need<T: FromStr>(pairs: &BTreeMap<String, String>, key: &str, space: &str) -> Result<T, CliError> {
    get(pairs, key)?.ok_or_else(|| CliError::usage(format!("{space} needs --{key}")))
}

pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::usage(format!("range '{s}' must look like A..B with A <= B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_branch(s: &str) -> Result<Branch, CliError> {
    s.parse().map_err(|_| CliError::usage(format!("unknown branch '{s}' (CR or PP)")))
}

fn case_from(pairs: &BTreeMap<String, String>, name: &str) -> Result<CaseId, CliError> {
    let name = name.trim();
    if name.contains('(') {
        return name.parse().map_err(CliError::from_usage);
    }
    let param = match name.to_ascii_lowercase().as_str() {
        "hyperquadric" => Some(need::<i64>(pairs, "m", "hyperquadric")?),
        "grassmannian" => Some(need::<i64>(pairs, "p", "grassmannian")?),
        "sp-su" => Some(need::<i64>(pairs, "k", "sp-su")?),
        _ => None,
    };
    let text = match param {
        Some(v) => format!("{name}({v})"),
        None => name.to_owned(),
    };
    text.parse().map_err(CliError::from_usage)
}

fn family_from(name: &str) -> Result<SpectralFamily, CliError> {
    match name.trim().to_ascii_lowercase().as_str() {
        "hyperquadric" => Ok(SpectralFamily::Hyperquadric),
        "grassmannian" => Ok(SpectralFamily::Grassmannian),
        "sp-su" => Ok(SpectralFamily::SpSu),
        other => Err(CliError::usage(format!("'{other}' is not a sweepable spectral family"))),
    }
}

const SPECTRAL_NAMES: [&str; 6] = ["triple-s3", "hyperquadric", "e6", "e7", "grassmannian", "sp-su"];

impl AnalysisConfig {
    pub fn from_pairs(pairs: BTreeMap<String, String>) -> Result<Self, CliError> {
        if let Some(k) = pairs.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(CliError::usage(format!("unknown key '{k}'")));
        }
        let command = match pairs.get("command").map(String::as_str) {
            Some("analyze") => Command::Analyze,
            Some("sweep") => Command::Sweep,
            Some("report") | None => Command::Report,
            Some(other) => return Err(CliError::usage(format!("unknown command '{other}'"))),
        };
        let range = pairs.get("range").map(|r| parse_range(r)).transpose()?;
        let branch = pairs.get("branch").map(|b| parse_branch(b)).transpose()?;
        let tol = get::<f64>(&pairs, "tol")?.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::usage("--tol must be a positive number"));
        }

        let space_name = pairs.get("space").map(|s| s.trim().to_ascii_lowercase());
        let space = match (command, space_name.as_deref()) {
            (Command::Report, None) => None,
            (Command::Report, Some(s)) => {
                return Err(CliError::usage(format!("report takes no space, got '{s}'")));
            }
            (_, None) => return Err(CliError::usage("missing space (aloff-wallach, stiefel, nikonorov, spectra, low-dim)")),
            (Command::Analyze, Some(name)) => Some(analyze_space(&pairs, name, branch)?),
            (Command::Sweep, Some(name)) => {
                if range.is_none() {
                    return Err(CliError::usage("sweep needs --range A..B"));
                }
                Some(sweep_space(&pairs, name, branch)?)
            }
        };
        let format = match get::<Format>(&pairs, "format")? {
            Some(f) => f,
            None if command == Command::Sweep => Format::Csv,
            None => Format::Json,
        };
        Ok(Self {
            command,
            space,
            range,
            format,
            tol,
            pairs,
        })
    }
}

fn analyze_space(pairs: &BTreeMap<String, String>, name: &str, branch: Option<Branch>) -> Result<Space, CliError> {
    Ok(match name {
        "aloff-wallach" | "aw" => {
            let p = need(pairs, "p", "aloff-wallach")?;
            let q = need(pairs, "q", "aloff-wallach")?;
            einstab_core::liecore::validate_pq(p, q).map_err(CliError::from_usage)?;
            Space::AloffWallach { p, q, branch }
        }
        "stiefel" => {
            let n: usize = need(pairs, "n", "stiefel")?;
            if n < 3 {
                return Err(CliError::usage(format!("stiefel needs n >= 3, got {n}")));
            }
            Space::Stiefel { n }
        }
        "nikonorov" => Space::Nikonorov,
        "spectra" => Space::Spectra(case_from(pairs, &need::<String>(pairs, "case", "spectra")?)?),
        "low-dim" | "lowdim" => {
            let dimension: Option<u32> = get(pairs, "n")?;
            if let Some(d) = dimension {
                if !(5..=7).contains(&d) {
                    return Err(CliError::usage(format!("low-dimensional tables cover dimensions 5 to 7, got {d}")));
                }
            }
            Space::LowDim { dimension }
        }
        other if SPECTRAL_NAMES.contains(&other.split('(').next().unwrap_or_default().trim()) => {
            Space::Spectra(case_from(pairs, other)?)
        }
        other => return Err(CliError::usage(format!("unknown space '{other}'"))),
    })
}

fn sweep_space(pairs: &BTreeMap<String, String>, name: &str, branch: Option<Branch>) -> Result<Space, CliError> {
    Ok(match name {
        "aloff-wallach" | "aw" => Space::AloffWallachSweep { branch },
        "stiefel" => Space::StiefelSweep,
        "spectra" => Space::SpectraSweep(family_from(&need::<String>(pairs, "case", "spectra")?)?),
        "hyperquadric" | "grassmannian" | "sp-su" => Space::SpectraSweep(family_from(name)?),
        other => return Err(CliError::usage(format!("space '{other}' cannot be swept"))),
    })
}
