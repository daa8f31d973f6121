mod commands;
mod error;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use arknit::exactlin::Field;
use clap::{Args, Parser, Subcommand};

use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "arknit",
    version,
    about = "Exact Auslander-Reiten quivers, mesh categories and standardness checks"
)]
struct Cli {
    /// Ground field: Q, F<p> or prime:<p>.
    #[arg(long, global = true, default_value = "Q", value_parser = inputs::parse_field)]
    field: Field,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Out {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Acyclicity, connectivity and Dynkin type of a quiver.
    Validate {
        #[arg(long)]
        quiver: String,
        #[command(flatten)]
        out: Out,
    },
    /// Knit the preprojective component.
    Knit {
        #[arg(long)]
        quiver: String,
        /// Maximum number of meshes.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Require the full component of a Dynkin quiver.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        out: Out,
    },
    /// A basis of Hom(M, N).
    Hom {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        quiver: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// The Auslander-Reiten translate τM, or τ⁻M with --inverse.
    Tau {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        out: Out,
    },
    /// dim Ext¹(M, N).
    Ext1 {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        quiver: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Hom dimension in the mesh category.
    MeshHom {
        #[arg(long)]
        tq: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Additive recursion instead of path linear algebra.
        #[arg(long)]
        fast: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Enumerate sections with their Δ⁺/Δ⁻ split.
    Sections {
        #[arg(long)]
        tq: String,
        #[arg(long, default_value_t = arknit::mesh::SECTION_LIMIT)]
        limit: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Run one standardness criterion.
    Check {
        #[arg(long)]
        ar: String,
        #[arg(long)]
        criterion: arknit::standardcheck::Criterion,
        /// Comma-separated node ids; the first enumerated section when absent.
        #[arg(long)]
        section: Option<String>,
        /// Shape tag for windows: ZAinf, NAinf or NminusAinf.
        #[arg(long)]
        shape: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Node, arrow, Hom and radical tables plus the requested verdicts.
    Report {
        #[arg(long)]
        ar: String,
        /// Comma-separated criteria.
        #[arg(long, default_value = "")]
        checks: String,
        #[arg(long)]
        section: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Graphviz rendering of a component.
    Dot {
        #[arg(long)]
        ar: String,
        #[command(flatten)]
        out: Out,
    },
    /// A string representation from an explicit or a random walk.
    String {
        #[arg(long)]
        quiver: String,
        /// `start:arrow,arrow-,…`
        #[arg(long, conflicts_with = "random")]
        walk: Option<String>,
        /// Length bound of a seeded random walk.
        #[arg(long)]
        random: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
}

fn init_threads() {
    if let Some(n) = std::env::var("ARKNIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (field, seed) = (cli.field, cli.seed);
    match cli.command {
        Command::Validate { quiver, out } => commands::validate(&quiver, out.out.as_deref()),
        Command::Knit {
            quiver,
            budget,
            full,
            out,
        } => commands::knit(&quiver, field, budget, full, out.out.as_deref()),
        Command::Hom { from, to, quiver, out } => {
            commands::hom(&from, &to, quiver.as_deref(), field, out.out.as_deref())
        }
        Command::Tau {
            rep,
            quiver,
            inverse,
            out,
        } => commands::tau(&rep, quiver.as_deref(), field, inverse, out.out.as_deref()),
        Command::Ext1 { from, to, quiver, out } => {
            commands::ext1(&from, &to, quiver.as_deref(), field, out.out.as_deref())
        }
        Command::MeshHom {
            tq,
            from,
            to,
            fast,
            out,
        } => commands::mesh_hom(&tq, &from, &to, fast, out.out.as_deref()),
        Command::Sections { tq, limit, out } => commands::sections(&tq, limit, out.out.as_deref()),
        Command::Check {
            ar,
            criterion,
            section,
            shape,
            out,
        } => commands::check(&ar, criterion, section.as_deref(), shape.as_deref(), out.out.as_deref()),
        Command::Report {
            ar,
            checks,
            section,
            out,
        } => commands::report(&ar, &checks, section.as_deref(), out.out.as_deref()),
        Command::Dot { ar, out } => commands::dot(&ar, out.out.as_deref()),
        Command::String {
            quiver,
            walk,
            random,
            out,
        } => commands::string(&quiver, walk.as_deref(), random, field, seed, out.out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    init_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
