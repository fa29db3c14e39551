use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Outcome};

/// Coherent configurations, schurity and tournament isomorphism.
#[derive(Parser, Debug)]
#[command(name = "cohcfg", version)]
struct Cli {
    /// Print a JSON report on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Base,
    Gb,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coherent closure of the relations in a `.rels` file.
    WlClose { rels: PathBuf },
    /// Fission of a configuration by the point sets listed in `--pi`.
    Fission {
        config: PathBuf,
        #[arg(long, value_name = "FILE")]
        pi: PathBuf,
    },
    /// Automorphism group of a configuration.
    Aut { config: PathBuf },
    /// Isomorphisms between two tournaments (`.trn`) or two configurations
    /// (`.ccfg`, colors matched by number).
    Iso { first: PathBuf, second: PathBuf },
    /// Decides whether an antisymmetric configuration is schurian.
    Schurian { config: PathBuf },
    /// Minimum base or generalized base with a witness.
    Base {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "base")]
        mode: Mode,
        /// Candidate families to try before giving up (overrides
        /// COHCFG_BUDGET).
        #[arg(long, value_name = "K")]
        budget: Option<u64>,
    },
    /// Wreath product of two configurations.
    Wreath { first: PathBuf, second: PathBuf },
    /// Cartesian power `Y^m`.
    Power { config: PathBuf, m: usize },
    /// Exponentiation of `Y` by a transitive group `L` from a `.grp` file.
    Exp { config: PathBuf, group: PathBuf },
    /// Glues configurations on a disjoint union. Parts are matched by the
    /// identity color map wherever it is an algebraic isomorphism; the
    /// cross relations follow the orbits of `--q` on pairs of parts.
    Glue {
        #[arg(required = true)]
        parts: Vec<PathBuf>,
        /// Group on the part indices (default: trivial).
        #[arg(long, value_name = "FILE")]
        q: Option<PathBuf>,
    },
    /// Schurity and automorphism group of a tournament.
    TournamentCheck { tournament: PathBuf },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::WlClose { rels } => commands::wl_close(rels),
        Command::Fission { config, pi } => commands::fission(config, pi),
        Command::Aut { config } => commands::aut(config),
        Command::Iso { first, second } => commands::iso(first, second),
        Command::Schurian { config } => commands::schurian(config, commands::budget(None)?),
        Command::Base { config, mode, budget } => commands::base(config, *mode, commands::budget(*budget)?),
        Command::Wreath { first, second } => commands::wreath(first, second),
        Command::Power { config, m } => commands::power(config, *m),
        Command::Exp { config, group } => commands::exp(config, group),
        Command::Glue { parts, q } => commands::glue(parts, q.as_deref()),
        Command::TournamentCheck { tournament } => commands::tournament_check(tournament),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("reports serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("errors serialize"));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
