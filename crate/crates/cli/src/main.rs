use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tvspace::Budget;
use tvspace_cli::commands::{self, Flags};
use tvspace_cli::suite::{self, Level};
use tvspace_cli::{CliError, Outcome, EXIT_ERROR, EXIT_OK, EXIT_VIOLATION};

#[derive(Parser)]
#[command(name = "tvcat", version, about = "Finite quantale-enriched (T,V)-spaces")]
struct Cli {
    /// Maximum number of candidates enumerated by one exhaustive search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate every object in a file.
    Validate { file: PathBuf },
    /// Decide a predicate on a space or, for `continuous` and `c-continuous`, a map.
    Check {
        file: PathBuf,
        target: String,
        predicate: String,
        /// Probe class for `c-generated` and `c-continuous`.
        #[arg(long)]
        class: Option<String>,
        /// Comma-separated grid of values for `alexandroff` and Sierpiński objects.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Build a new object and print it in the text format.
    Compute {
        file: PathBuf,
        op: String,
        args: Vec<String>,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        grid: Option<String>,
        /// Name of the result block.
        #[arg(long)]
        name: Option<String>,
        /// Write the result to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property batteries and validate fixture files or directories.
    Suite {
        #[arg(long, default_value = "fast")]
        level: Level,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        fixtures: Vec<PathBuf>,
    },
}

fn budget(cli: &Cli) -> Budget {
    let mut b = Budget::default();
    if let Some(n) = cli.budget {
        b.enumeration = n;
    }
    b
}

fn fixture_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let rd = std::fs::read_dir(p).map_err(|e| CliError::Io { path: p.display().to_string(), source: e })?;
            let mut files: Vec<PathBuf> = rd
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "tv"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn run_suite(level: Level, only: &[u8], fixtures: &[PathBuf]) -> Result<Outcome, CliError> {
    let mut text = String::new();
    let mut ok = true;
    for c in suite::CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let v = suite::run_criterion(c, level);
        ok &= v.passed();
        text.push_str(&format!("{v}\n"));
    }
    let files = fixture_files(fixtures)?;
    let refs: Vec<&Path> = files.iter().map(|p| p.as_path()).collect();
    for (name, r) in suite::check_fixtures(&refs) {
        match r {
            Ok(()) => text.push_str(&format!("[PASS] fixture {name}\n")),
            Err(e) => {
                ok = false;
                text.push_str(&format!("[FAIL] fixture {name}: {e}\n"));
            }
        }
    }
    Ok(Outcome { text, code: if ok { EXIT_OK } else { EXIT_VIOLATION } })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let b = budget(cli);
    match &cli.cmd {
        Cmd::Validate { file } => commands::validate(&commands::load(file, b)?),
        Cmd::Check { file, target, predicate, class, grid } => {
            let mut ws = commands::load(file, b)?;
            let flags = Flags { class: class.clone(), grid: grid.clone(), name: None };
            commands::check(&mut ws, target, predicate, &flags)
        }
        Cmd::Compute { file, op, args, class, grid, name, out } => {
            let mut ws = commands::load(file, b)?;
            let flags = Flags { class: class.clone(), grid: grid.clone(), name: name.clone() };
            let o = commands::compute(&mut ws, op, args, &flags)?;
            match out {
                Some(path) => {
                    std::fs::write(path, &o.text)
                        .map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
                    Ok(Outcome { text: String::new(), code: o.code })
                }
                None => Ok(o),
            }
        }
        Cmd::Suite { level, only, fixtures } => run_suite(*level, only, fixtures),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            print!("{}", o.text);
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
