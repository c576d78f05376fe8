mod commands;
mod problem;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::problem::{InputError, ProblemFile};
use crate::report::Report;

#[derive(Parser)]
#[command(name = "miura", version, about = "Exact critical points, populations and oper solutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Genericity, per-direction fertility and optional Bethe residuals.
    Check { file: PathBuf },
    /// One reproduction step.
    Descend {
        file: PathBuf,
        /// 1-based direction.
        #[arg(long)]
        direction: usize,
        /// `c` for (1:c) or `c1:c2`; defaults to the canonical member.
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Explore the population of the tuple.
    Populate {
        file: PathBuf,
        /// Fail when the population has more cells than this.
        #[arg(long)]
        max_cells: Option<usize>,
    },
    /// Build and verify a solution of the Miura oper.
    Solve {
        file: PathBuf,
        /// Comma-separated 1-based reproduction path; selects the general construction.
        #[arg(long)]
        path: Option<String>,
        /// Comma-separated parameters, one per path step.
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
        #[arg(long, value_enum, default_value_t = RepChoice::Auto)]
        rep: RepChoice,
    },
    /// Check the path relations, the diagonal identity and the gauge squares.
    Verify {
        file: PathBuf,
        #[arg(long)]
        path: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepChoice {
    Auto,
    Sl,
    Sp,
}

impl RepChoice {
    fn name(self) -> &'static str {
        match self {
            RepChoice::Auto => "auto",
            RepChoice::Sl => "sl",
            RepChoice::Sp => "sp",
        }
    }
}

/// Failure before a report could be produced.
pub enum Failure {
    /// Invalid input or unsupported request; exit code 2.
    Input(String),
    /// The computation itself failed; exit code 1.
    Computation(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<miura_core::Error> for Failure {
    fn from(e: miura_core::Error) -> Self {
        use miura_core::Error as E;
        match e {
            E::ZeroPolynomial(_)
            | E::DivisionByZero
            | E::Precondition(_)
            | E::InvalidType { .. }
            | E::IndexOutOfRange { .. }
            | E::Representation(_) => Failure::Input(e.to_string()),
            E::NotACell(_)
            | E::Collision(_)
            | E::Infertile { .. }
            | E::Newton { .. }
            | E::Exploration(_)
            | E::NotRepresentable(_)
            | E::Verification(_) => Failure::Computation(e.to_string()),
        }
    }
}

fn read_problem(path: &Path) -> Result<ProblemFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(ProblemFile::from_json(&text)?)
}

fn run(cli: &Cli) -> Result<(Report, bool), Failure> {
    let start = Instant::now();
    let mut options = BTreeMap::new();
    let (name, file) = match &cli.command {
        Command::Check { file } => ("check", file),
        Command::Descend { file, direction, param } => {
            options.insert("direction".to_string(), direction.to_string());
            if let Some(c) = param {
                options.insert("param".to_string(), c.clone());
            }
            ("descend", file)
        }
        Command::Populate { file, max_cells } => {
            if let Some(m) = max_cells {
                options.insert("max_cells".to_string(), m.to_string());
            }
            ("populate", file)
        }
        Command::Solve { file, path, param, rep } => {
            if let Some(p) = path {
                options.insert("path".to_string(), p.clone());
            }
            if let Some(c) = param {
                options.insert("param".to_string(), c.clone());
            }
            options.insert("rep".to_string(), rep.name().to_string());
            ("solve", file)
        }
        Command::Verify { file, path, param } => {
            if let Some(p) = path {
                options.insert("path".to_string(), p.clone());
            }
            if let Some(c) = param {
                options.insert("param".to_string(), c.clone());
            }
            ("verify", file)
        }
    };
    let raw = read_problem(file)?;
    let problem = raw.parse()?;
    let (body, ok) = match &cli.command {
        Command::Check { .. } => commands::check(&problem)?,
        Command::Descend { direction, param, .. } => commands::descend(&problem, *direction, param.as_deref())?,
        Command::Populate { max_cells, .. } => commands::populate(&problem, *max_cells)?,
        Command::Solve { path, param, rep, .. } => {
            commands::solve(&problem, path.as_deref(), param.as_deref(), *rep)?
        }
        Command::Verify { path, param, .. } => commands::verify(&problem, path.as_deref(), param.as_deref())?,
    };
    let report = Report {
        command: name.to_string(),
        options,
        problem: raw,
        body,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok((report, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => {
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
