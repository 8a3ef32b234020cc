mod commands;
mod io;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use io::{write_atomic, Outcome, Status};

#[derive(Parser, Debug)]
#[command(name = "dualfib", version, about = "Constructions and bounded checks on finite simplicial sets")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Dimension to which constructions are computed.
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Where to write the artifact (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Where to write the report.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

impl Common {
    pub fn max_dim(&self, default: usize) -> Outcome<usize> {
        match self.max_dim {
            Some(0) => Err(io::Failure::precondition("--max-dim must be at least 1")),
            Some(d) => Ok(d),
            None => Ok(default),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Through the dual of a (co)cartesian fibration.
    Fibration,
    /// Through the effective Burnside construction on a nerve.
    Categorical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variance {
    Auto,
    Cartesian,
    Cocartesian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Class {
    Inner,
    Left,
    Right,
    Trivial,
    Cartesian,
    Cocartesian,
    Quasicategory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CertKind {
    LongSimplex,
    Iota,
    Contiguity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nerve of a category.
    Nerve { input: PathBuf },
    /// Twisted arrow set of a simplicial set or category.
    Twist {
        input: PathBuf,
        /// Emit the projection to X^op x X instead of the total space.
        #[arg(long)]
        projection: bool,
    },
    /// Arrow set Fun(Δ^1, X).
    Arrow { input: PathBuf },
    /// Dual of a cartesian or cocartesian fibration.
    Dual {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Fibration)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Variance::Auto)]
        variance: Variance,
    },
    /// Double dual of a cartesian fibration, with the comparison checks.
    Doubledual {
        input: PathBuf,
        /// Bound for the trivial-fibration and fiberwise checks.
        #[arg(long, default_value_t = 4)]
        check_bound: usize,
    },
    /// Bounded lifting check.
    Check {
        input: PathBuf,
        #[arg(long, value_enum)]
        class: Class,
    },
    /// Census of staircase paths.
    Staircase {
        #[arg(long)]
        n: usize,
    },
    /// Emit and replay an anodyne certificate, or replay one from a file.
    Certify {
        #[arg(long, value_enum, required_unless_present = "replay")]
        kind: Option<CertKind>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Inner vertex for the contiguity certificate.
        #[arg(long)]
        s: Option<usize>,
        /// Contiguous face for the contiguity certificate, comma separated.
        #[arg(long, value_delimiter = ',')]
        face: Vec<usize>,
        #[arg(long, conflicts_with = "kind")]
        replay: Option<PathBuf>,
    },
    /// Duality pairing of a cocartesian fibration, checked vertex by vertex.
    Pairing {
        input: PathBuf,
        #[arg(long)]
        at_vertex: Option<usize>,
        #[arg(long, default_value_t = 1)]
        check_bound: usize,
    },
    /// Fiberwise comparison of two maps over the same base.
    Compare { first: PathBuf, second: PathBuf },
}

/// What a command produced.
pub struct Done {
    pub artifact: Option<String>,
    pub report: String,
    pub status: Status,
}

fn dispatch(cli: &Cli) -> Outcome<Done> {
    let c = &cli.common;
    match &cli.command {
        Command::Nerve { input } => commands::nerve_cmd(c, input),
        Command::Twist { input, projection } => commands::twist(c, input, *projection),
        Command::Arrow { input } => commands::arrow(c, input),
        Command::Dual { input, mode, variance } => commands::dual(c, input, *mode, *variance),
        Command::Doubledual { input, check_bound } => commands::double_dual(c, input, *check_bound),
        Command::Check { input, class } => commands::check(c, input, *class),
        Command::Staircase { n } => commands::staircase(*n),
        Command::Certify {
            kind,
            n,
            s,
            face,
            replay,
        } => match replay {
            Some(path) => commands::replay(path),
            None => commands::certify(kind.expect("clap requires a kind"), *n, *s, face),
        },
        Command::Pairing {
            input,
            at_vertex,
            check_bound,
        } => commands::pairing(c, input, *at_vertex, *check_bound),
        Command::Compare { first, second } => commands::compare(c, first, second),
    }
}

fn emit(common: &Common, done: &Done) -> Outcome<()> {
    let mut artifact_on_stdout = false;
    if let Some(text) = &done.artifact {
        match &common.out {
            Some(path) => write_atomic(path, text)?,
            None => {
                print!("{text}");
                artifact_on_stdout = true;
            }
        }
    }
    match &common.report {
        Some(path) => write_atomic(path, &done.report)?,
        None if artifact_on_stdout => eprint!("{}", done.report),
        None => print!("{}", done.report),
    }
    std::io::stdout().flush().ok();
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match dispatch(&cli).and_then(|done| emit(&cli.common, &done).map(|_| done.status)) {
        Ok(status) => status,
        Err(failure) => {
            let kind = match failure.status {
                Status::Parse => "parse error",
                _ => "error",
            };
            eprintln!("dualfib: {kind}: {}", failure.message);
            failure.status
        }
    };
    ExitCode::from(status as u8)
}
