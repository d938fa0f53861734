mod commands;
mod output;
mod selftest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Format, Outcome};

#[derive(Parser)]
#[command(name = "endolab", version, about = "Endoscopy, tori and finite groups of Lie type, computed exactly")]
struct Cli {
    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the document to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 20240917)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split elliptic endoscopic triples
    #[command(subcommand)]
    Endoscopy(EndoscopyCmd),
    /// Unramified tori: H^1, the Tate-Nakayama pairing, SL_n kappa groups
    #[command(subcommand)]
    Tori(ToriCmd),
    /// Springer hypothesis checks for rank-one groups
    #[command(subcommand)]
    Springer(SpringerCmd),
    /// Character table of a finite group of Lie type
    Chartable {
        #[arg(long)]
        group: String,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Method::Dixon)]
        method: Method,
    },
    /// Topological Jordan decomposition of a matrix over Z/p^k
    Tjd {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// JSON rows, e.g. [[2,5],[7,2]]
        #[arg(long)]
        matrix: String,
    },
    /// Hilbert symbol at one place, or at every relevant place with their product
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// a prime or "inf"
        #[arg(long)]
        place: Option<String>,
    },
    /// Run the invariant battery
    Selftest,
}

#[derive(Args)]
struct TypeArgs {
    /// Cartan type such as C2 or E6
    #[arg(long = "type")]
    ty: String,
    #[arg(long, default_value = "sc")]
    isogeny: String,
}

#[derive(Subcommand)]
enum EndoscopyCmd {
    Enumerate(TypeArgs),
    FromKappa {
        #[command(flatten)]
        datum: TypeArgs,
        /// comma-separated rationals, e.g. 1/2,0
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
    },
    Estimate(TypeArgs),
}

#[derive(Args)]
struct TorusArgs {
    /// Frobenius matrix as JSON rows
    #[arg(long)]
    frob: String,
    /// basis of the cocharacter lattice as JSON rows (basis vectors in columns); defaults to the standard lattice
    #[arg(long)]
    lattice: Option<String>,
}

#[derive(Subcommand)]
enum ToriCmd {
    H1(TorusArgs),
    Pair {
        #[command(flatten)]
        torus: TorusArgs,
        /// H^1 coordinates as JSON array
        #[arg(long)]
        inv: String,
        /// pi_0 coordinates as JSON array
        #[arg(long)]
        kappa: String,
    },
    SlnGroup {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// comma-separated block degrees summing to n/m
        #[arg(long)]
        degrees: String,
    },
}

#[derive(Subcommand)]
enum SpringerCmd {
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        q: u64,
        /// check every unipotent class, not only the regular one
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dixon,
    Classical,
}

fn configure_workers() {
    if let Some(n) = std::env::var("ENDOLAB_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    use commands::*;
    match &cli.command {
        Command::Endoscopy(EndoscopyCmd::Enumerate(t)) => endoscopy_enumerate(&t.ty, &t.isogeny),
        Command::Endoscopy(EndoscopyCmd::FromKappa { datum, kappa }) => endoscopy_from_kappa(&datum.ty, &datum.isogeny, kappa),
        Command::Endoscopy(EndoscopyCmd::Estimate(t)) => endoscopy_estimate(&t.ty, &t.isogeny),
        Command::Tori(ToriCmd::H1(t)) => tori_h1(&t.frob, t.lattice.as_deref()),
        Command::Tori(ToriCmd::Pair { torus, inv, kappa }) => tori_pair(&torus.frob, torus.lattice.as_deref(), inv, kappa),
        Command::Tori(ToriCmd::SlnGroup { n, m, degrees }) => tori_sln_group(*n, *m, degrees),
        Command::Springer(SpringerCmd::Verify { group, q, all }) => springer_verify(group, *q, *all),
        Command::Chartable { group, q, method } => chartable(group, *q, matches!(method, Method::Classical)),
        Command::Tjd { p, k, matrix } => tjd(*p, *k, matrix),
        Command::Hilbert { a, b, place } => hilbert(a, b, place.as_deref()),
        Command::Selftest => Ok(selftest::run(cli.seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_workers();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match outcome.render(cli.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if outcome.exit_code() != 0 {
        eprintln!("verification failed");
    }
    ExitCode::from(outcome.exit_code())
}
