use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fibersym_tool::{cmd_cohomology, cmd_crossings, cmd_graphlink, cmd_mcg, parse_triple, Output};

#[derive(Parser)]
#[command(name = "fibersym", version, about = "Primitive cohomology invariants of fibered symplectic 4-manifolds")]
struct Cli {
    /// Emit machine-readable JSON instead of a text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology action of a monodromy word, its Jordan data and Torelli verdict.
    Mcg {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Betti and primitive Betti numbers of S^1 x Y_f.
    Cohomology {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Coefficients of the deformation class, comma separated, in census order.
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// Puncture paths and ordered crossings for a basis vector v1 = a1,a2,a3.
    Crossings {
        #[arg(long, allow_hyphen_values = true)]
        v1: String,
    },
    /// Graph-link fibration data for K^(2n) and the class (m1, m2).
    Graphlink {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        m1: i64,
        #[arg(long, allow_hyphen_values = true)]
        m2: i64,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Mcg { surface, word } => cmd_mcg(surface, word),
        Command::Cohomology { surface, word, eta } => cmd_cohomology(surface, word, eta.as_deref()),
        Command::Crossings { v1 } => cmd_crossings(parse_triple(v1)?),
        Command::Graphlink { n, m1, m2 } => cmd_graphlink(*n, *m1, *m2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.result.to_json());
            } else {
                print!("{}", out.human);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
