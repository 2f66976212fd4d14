//! `trank`: command-line front end for the tropical-rank toolkit.

mod commands;
mod output;
mod scan;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tropical_rank::magnus::DEFAULT_MAX_PASSES;
use tropical_rank::sigma::{OracleKind, DEFAULT_RADIUS, DEFAULT_VERTEX_CAP};

#[derive(Parser, Debug)]
#[command(name = "trank", version, about = "Certified bounds on the tropical rank of a finitely presented group")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Free,
    Abelian,
    Dehn,
}

impl From<OracleArg> for OracleKind {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Free => OracleKind::Free,
            OracleArg::Abelian => OracleKind::FreeAbelian,
            OracleArg::Dehn => OracleKind::Dehn,
        }
    }
}

#[derive(Args, Debug)]
pub struct CharArgs {
    /// Presentation file, e.g. `<a,b | [a,b]>`.
    pub file: PathBuf,
    /// Character as `name=value` pairs, e.g. `a=1,b=0`.
    #[arg(long = "char")]
    pub character: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Abelianization `H_1(G)` from the Smith normal form.
    Abelianize { file: PathBuf },
    /// A basis of the character lattice `Hom(G, Z)`.
    Characters { file: PathBuf },
    /// Magnus rewriting into fake HNN form.
    Rewrite {
        #[command(flatten)]
        args: CharArgs,
        /// Tietze passes after rewriting; 0 shows the raw rewrite.
        #[arg(long, default_value_t = DEFAULT_MAX_PASSES)]
        max_tietze_passes: usize,
    },
    /// Lower (Novikov) and upper (Magnus) bounds on the tropical rank.
    RankBounds {
        #[command(flatten)]
        args: CharArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_PASSES)]
        max_tietze_passes: usize,
    },
    /// The first Novikov Betti number with its boundary matrices.
    NovikovB1 {
        #[command(flatten)]
        args: CharArgs,
    },
    /// Connectivity of the sub-level set in a Cayley ball.
    SigmaBall {
        #[command(flatten)]
        args: CharArgs,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        radius: usize,
        #[arg(long, value_enum)]
        oracle: OracleArg,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        vertex_cap: usize,
    },
    /// Rank bounds for every primitive character up to a max-norm height.
    SphereScan {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        height: i64,
        #[arg(long, default_value_t = DEFAULT_MAX_PASSES)]
        max_tietze_passes: usize,
        /// Also attach a sigma-ball verdict to each row.
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        radius: usize,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        vertex_cap: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Abelianize { .. } => "abelianize",
            Command::Characters { .. } => "characters",
            Command::Rewrite { .. } => "rewrite",
            Command::RankBounds { .. } => "rank-bounds",
            Command::NovikovB1 { .. } => "novikov-b1",
            Command::SigmaBall { .. } => "sigma-ball",
            Command::SphereScan { .. } => "sphere-scan",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match commands::run(&cli.command) {
        Ok(report) => {
            let _ = writeln!(std::io::stdout(), "{}", output::render(name, &report, cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "{}", output::render_error(name, &e, cli.format));
            ExitCode::from(e.exit_code())
        }
    }
}
