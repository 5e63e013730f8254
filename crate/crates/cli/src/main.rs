use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use horo_core::report::{
    cmd_classify, cmd_diagram, cmd_fans, cmd_octonion, cmd_two_orbits, ReportEnvelope, DEFAULT_MAX_RANK,
};
use horo_core::{Error, SimpleType};
use similar::TextDiff;

const EXIT_MISMATCH: u8 = 1;
const EXIT_GAP: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_MISSING_FIXTURE: u8 = 4;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Parser, Debug)]
#[command(name = "horo", version, about = "Classification tables for smooth two-orbit varieties of Picard number one")]
struct Cli {
    /// Largest rank enumerated for the infinite families.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RANK)]
    max_rank: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory holding the golden files.
    #[arg(long, global = true, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))]
    fixtures: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Special pairs and homogeneity verdicts.
    Classify,
    /// Fiber cases, candidate triples and verdicts.
    TwoOrbits,
    /// Octonion checks and the z-table comparison.
    Octonion,
    /// Rank-one colored fans and Picard numbers.
    Fans,
    /// Cartan matrix and root counts of a simple type such as B3.
    Diagram { ty: String },
    /// Regenerate every report and compare with the golden files.
    VerifyAll {
        /// Overwrite the golden files instead of comparing.
        #[arg(long)]
        update: bool,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn render(env: &ReportEnvelope, format: Format) -> String {
    match format {
        Format::Json => env.to_json(),
        Format::Tsv => env.to_tsv(),
    }
}

fn reports(max_rank: usize) -> Result<Vec<(&'static str, ReportEnvelope)>, Failure> {
    Ok(vec![
        ("classify.json", cmd_classify(max_rank)?),
        ("two_orbits.json", cmd_two_orbits(max_rank)?),
        ("octonion.json", cmd_octonion()?),
    ])
}

fn verify_all(dir: &Path, max_rank: usize, update: bool) -> Result<u8, Failure> {
    let reports = reports(max_rank)?;
    if update {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
        for (name, env) in &reports {
            let path = dir.join(name);
            fs::write(&path, env.to_json()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        return Ok(0);
    }
    let mut code = 0;
    for (name, env) in &reports {
        let path = dir.join(name);
        let Ok(golden) = fs::read_to_string(&path) else {
            eprintln!("missing fixture {}", path.display());
            return Ok(EXIT_MISSING_FIXTURE);
        };
        let fresh = env.to_json();
        if golden == fresh {
            println!("ok {name}");
        } else {
            println!("MISMATCH {name}");
            let diff = TextDiff::from_lines(&golden, &fresh);
            eprint!("{}", diff.unified_diff().header(&format!("{name} (golden)"), &format!("{name} (computed)")));
            code = EXIT_MISMATCH;
        }
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let env = match cli.command {
        Command::Classify => cmd_classify(cli.max_rank)?,
        Command::TwoOrbits => cmd_two_orbits(cli.max_rank)?,
        Command::Octonion => cmd_octonion()?,
        Command::Fans => cmd_fans()?,
        Command::Diagram { ty } => {
            let t: SimpleType = ty.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            cmd_diagram(t)?
        }
        Command::VerifyAll { update } => return verify_all(&cli.fixtures, cli.max_rank, update),
    };
    print!("{}", render(&env, cli.format));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Core(Error::ClassificationGap(msg))) => {
            eprintln!("classification gap: {msg}");
            ExitCode::from(EXIT_GAP)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
