use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use einstab_cli::config::parse_config_text;
use einstab_cli::error::EXIT_USAGE;
use einstab_cli::render::render;
use einstab_cli::{run, AnalysisConfig, CliError};

#[derive(Parser)]
#[command(name = "einstab", version, about = "Instability certificates for homogeneous Einstein metrics")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// File of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// json, csv or markdown.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Largest accepted Einstein residual.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one space.
    Analyze(SpaceArgs),
    /// Sweep a parameter range.
    Sweep(SpaceArgs),
    /// Every analysis at its default range.
    Report,
}

#[derive(Args)]
struct SpaceArgs {
    /// aloff-wallach, stiefel, nikonorov, spectra, low-dim, or a spectral case name.
    space: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long)]
    branch: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// Inclusive range `A..B`.
    #[arg(long)]
    range: Option<String>,
}

fn pairs(cli: Cli) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            parse_config_text(&text)?
        }
        None => BTreeMap::new(),
    };
    let mut set = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            map.insert(k.to_owned(), v);
        }
    };
    set("format", cli.format);
    set("tol", cli.tol.map(|t| t.to_string()));
    let (command, args) = match cli.command {
        Cmd::Analyze(a) => ("analyze", Some(a)),
        Cmd::Sweep(a) => ("sweep", Some(a)),
        Cmd::Report => ("report", None),
    };
    set("command", Some(command.to_owned()));
    if let Some(a) = args {
        for (k, v) in [
            ("space", a.space),
            ("p", a.p),
            ("q", a.q),
            ("branch", a.branch),
            ("n", a.n),
            ("case", a.case),
            ("m", a.m),
            ("k", a.k),
            ("range", a.range),
        ] {
            set(k, v);
        }
    }
    Ok(map)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match pairs(cli).and_then(AnalysisConfig::from_pairs) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("einstab: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = run(&config);
    match render(&outcome.report, config.format) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("einstab: {e}");
            return ExitCode::from(e.exit_code());
        }
    }
    for f in outcome.report.failures() {
        eprintln!("einstab: {}: {}", f.label, f.error);
    }
    ExitCode::from(outcome.exit_code)
}
