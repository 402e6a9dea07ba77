use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use atlift::linfty::SweepConfig;
use atlift::model::{Model, ModelFile};
use atlift::report::Report;
use atlift::suites::{self, McConfig};
use atlift::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Models shipped in the binary, found by file name when no such file exists.
const BUNDLED: [(&str, &str); 4] = [
    ("torus1-rank2.model", include_str!("../fixtures/torus1-rank2.model")),
    ("delbar-toy-rank2.model", include_str!("../fixtures/delbar-toy-rank2.model")),
    ("iwasawa-rank4.model", include_str!("../fixtures/iwasawa-rank4.model")),
    ("broken.model", include_str!("../fixtures/broken.model")),
];

#[derive(Parser)]
#[command(name = "atlift", version, about = "Exact verification suites for Atiyah-class L-infinity lifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Model file (JSON); bundled models can be named by file name.
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra axioms, the complex, the connection and the form.
    Validate(Common),
    /// Atiyah cocycle, its two computations, and the identities around it.
    Atiyah(Common),
    /// Conditions C_1..C_n for the lifted morphism g.
    LinftyCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Sources of at most this dimension are swept exhaustively.
        #[arg(long, default_value_t = 40)]
        exhaustive_limit: usize,
        /// Sampled tuples per arity above the limit.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// tau_p chain map and closedness of the Chern cocycle.
    Semiregularity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: usize,
    },
    /// Maurer-Cartan obstruction trials and pushforward closedness.
    Mc {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        order: u32,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        vars: usize,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Validate(c) | Command::Atiyah(c) => c,
            Command::LinftyCheck { common, .. } | Command::Semiregularity { common, .. } | Command::Mc { common, .. } => common,
        }
    }
}

fn read_model(path: &Path) -> Result<ModelFile, Error> {
    if !path.exists() {
        if let Some((_, text)) = BUNDLED.iter().find(|(name, _)| path.as_os_str() == *name) {
            return ModelFile::parse(text);
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    ModelFile::parse(&text).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load(path: &Path) -> Result<Model, Error> {
    read_model(path)?.build().map_err(|e| Error::Input(format!("{}: {e} (run `atlift validate` for details)", path.display())))
}

/// Validates `ATLIFT_THREADS`. The suites run on one thread, which respects any cap.
fn thread_cap() -> Result<Option<usize>, Error> {
    match std::env::var("ATLIFT_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Input(format!("ATLIFT_THREADS must be a positive integer, got {v:?}"))),
        },
    }
}

fn run(cmd: &Command) -> Result<Report, Error> {
    let c = cmd.common();
    match cmd {
        Command::Validate(_) => suites::validate(&read_model(&c.model)?, c.seed),
        Command::Atiyah(_) => Ok(suites::atiyah(&load(&c.model)?, c.seed)),
        Command::LinftyCheck { max_n, exhaustive_limit, samples, .. } => {
            let cfg = SweepConfig { max_n: *max_n, exhaustive_limit: *exhaustive_limit, samples: *samples, seed: c.seed };
            suites::linfty_check(&load(&c.model)?, &cfg)
        }
        Command::Semiregularity { p, .. } => Ok(suites::semiregularity(&load(&c.model)?, *p, c.seed)),
        Command::Mc { order, trials, vars, .. } => {
            suites::mc(&load(&c.model)?, &McConfig { vars: *vars, order: *order, trials: *trials, seed: c.seed })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = thread_cap() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let common = cli.command.common();
    let start = Instant::now();
    let mut report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if common.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    match common.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
