//! Command-line driver. Exit status: 0 when every requested check passes,
//! 1 when a mathematical check fails, 2 for input or usage errors.

use std::fs;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use kenmotsu_core::catalog;
use kenmotsu_core::deformation::DeformationParams;
use kenmotsu_core::document::{parse_manifold, LoadedModel};
use kenmotsu_core::rational::parse_rational;
use kenmotsu_core::report::Report;
use kenmotsu_core::workbench::{self, PotentialSpec};
use kenmotsu_core::Rational;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kenmotsu", version, about = "Exact checks on Kenmotsu frame models")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame, Riemannian, almost contact and Kenmotsu checks.
    Validate { file: String },
    /// Validation plus connection, Ricci data and the eta-Einstein fit.
    Analyze { file: String },
    /// Solve the conformal eta-Ricci soliton equation for (lambda, mu).
    Soliton {
        file: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        p: Rational,
        /// Potential field: `xi` or comma-separated frame components.
        #[arg(long = "V", default_value = "xi", value_parser = potential_arg, allow_hyphen_values = true)]
        v: PotentialSpec,
        /// Read the potential as a gradient Df and use the Hessian form.
        #[arg(long)]
        gradient: bool,
    },
    /// Generalized D-conformal deformation with constant a, b.
    Deform {
        file: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        b: Rational,
        /// Soliton parameter; defaults to 0 when `--V` is given.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        p: Option<Rational>,
        #[arg(long = "V", value_parser = potential_arg, allow_hyphen_values = true)]
        v: Option<PotentialSpec>,
    },
    /// List built-in manifolds.
    Catalog,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn potential_arg(s: &str) -> Result<PotentialSpec, String> {
    s.parse().map_err(|e: kenmotsu_core::Error| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{0} is neither a readable file nor a built-in manifold")]
    NotFound(String),
    #[error("{path}: {source}")]
    Document { path: String, source: kenmotsu_core::Error },
    #[error(transparent)]
    Core(#[from] kenmotsu_core::Error),
}

/// Reads a document file; a missing path falls back to the built-in catalog,
/// with or without a `.json` suffix.
pub fn load_model(arg: &str) -> Result<LoadedModel, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: arg.into(), source })?;
        let doc = parse_manifold(&text).map_err(|source| CliError::Document { path: arg.into(), source })?;
        return doc.to_model().map_err(|source| CliError::Document { path: arg.into(), source });
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    match catalog::load(stem) {
        Some(model) => Ok(model?),
        None => Err(CliError::NotFound(arg.into())),
    }
}

fn catalog_listing(format: Format) -> String {
    match format {
        Format::Text => catalog::ENTRIES.iter().map(|e| format!("{:<12} {}\n", e.name, e.summary)).collect(),
        Format::Json => {
            let body: Vec<String> = catalog::ENTRIES
                .iter()
                .map(|e| format!("  {{ \"name\": \"{}\", \"summary\": \"{}\" }}", e.name, e.summary))
                .collect();
            format!("[\n{}\n]\n", body.join(",\n"))
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let report = match &cli.command {
        Command::Validate { file } => workbench::validate(&load_model(file)?)?,
        Command::Analyze { file } => workbench::analyze(&load_model(file)?)?,
        Command::Soliton { file, p, v, gradient } => workbench::soliton(&load_model(file)?, v, p, *gradient)?,
        Command::Deform { file, a, b, p, v } => {
            let model = load_model(file)?;
            let params = DeformationParams::new(a.clone(), b.clone())?;
            let zero = Rational::from_integer(0.into());
            let p = p.clone().unwrap_or(zero);
            workbench::deform(&model, &params, v.as_ref().map(|v| (v, &p)))?
        }
        Command::Catalog => unreachable!("handled before dispatch"),
    };
    Ok(report)
}

/// Runs one invocation; returns the exit code and everything it would print.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    if let Command::Catalog = cli.command {
        return (EXIT_OK, catalog_listing(cli.format));
    }
    match execute(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            (report.exit_code(), out)
        }
        Err(e) => (EXIT_USAGE, format!("error: {e}\n")),
    }
}
