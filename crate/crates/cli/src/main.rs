//! `vosa`: batch front end for the affine vertex operator superalgebra
//! workbench.
//!
//! Exit codes: 0 success, 1 a self-check failed, 2 usage or configuration
//! error, 3 cutoff too small for the requested computation.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "vosa",
    version,
    about = "Exact computations with affine vertex operator superalgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure constants, axiom check, roots and forms of a Lie superalgebra.
    Algebra(AlgebraArgs),
    /// Graded dimensions and conformal data of the vacuum module V^k(g).
    Vacuum(ModuleArgs),
    /// The simple quotient L_g(k,0) for a positive integer level.
    Simple(ModuleArgs),
    /// Graded C_2 quotient dimensions, closure lemmas and nilpotency.
    C2(C2Args),
    /// Integrable highest weights of level k.
    Enumerate(EnumerateArgs),
    /// Sampled checks of the Zhu products and the commutator formula.
    ZhuCheck(ModuleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    /// sl1n, osp22n, osp12n, sl, sp or g3.
    #[arg(long)]
    pub family: String,
    /// Rank parameter (unused for g3).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ModuleArgs {
    /// sl1n, osp22n, osp12n, sl or sp.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    /// Level, an exact rational such as 1 or -3/2.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub k: String,
    /// Cutoff: grades 0..=N are computed.
    #[arg(long = "N", default_value_t = 4, allow_negative_numbers = true)]
    pub cutoff: i64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct C2Args {
    #[command(flatten)]
    pub module: ModuleArgs,
    /// Use V^k(g) instead of its simple quotient.
    #[arg(long)]
    pub vacuum: bool,
    /// Number of sampled closure-lemma checks.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// sl1n or osp22n.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn configure_threads() -> Result<(), commands::Failure> {
    let Ok(v) = std::env::var("VOSA_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| commands::Failure::usage(format!("VOSA_THREADS must be a number, got {v}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| commands::Failure::usage(format!("cannot configure threads: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Algebra(a) => commands::algebra(&a),
        Command::Vacuum(a) => commands::vacuum(&a),
        Command::Simple(a) => commands::simple(&a),
        Command::C2(a) => commands::c2(&a),
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::ZhuCheck(a) => commands::zhu_check(&a),
    });
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
