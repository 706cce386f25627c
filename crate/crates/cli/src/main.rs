use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subfactor::fusion::{FusionParams, FusionVector};

mod commands;
mod report;
mod selfcheck;

use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "subfactor",
    version,
    about = "Exact computations for GHJ subfactors and quadrilaterals"
)]
struct Cli {
    /// Output format.
    #[arg(long, alias = "format", global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Highest tower level any search may build.
    #[arg(
        long,
        global = true,
        env = "SUBFACTOR_LEVEL_CAP",
        value_parser = clap::value_parser!(u16).range(1..)
    )]
    level_cap: Option<u16>,
    /// Digits in decimal approximations.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u16).range(1..=200))]
    precision: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The Coxeter graph catalogue.
    #[command(subcommand)]
    Graphs(GraphsCommand),
    /// Path-model towers of multimatrix algebras.
    #[command(subcommand)]
    Tower(TowerCommand),
    /// GHJ subfactors of pointed graphs.
    #[command(subcommand)]
    Ghj(GhjCommand),
    /// The nontrivial angle between the two GHJ intermediate subfactors.
    Angle {
        #[arg(long)]
        pointed: String,
        #[arg(long, value_enum, default_value_t = AngleChoice::Both)]
        method: AngleChoice,
    },
    /// Fusion rules of the Temperley-Lieb representation category.
    #[command(subcommand)]
    Fusion(FusionCommand),
    /// Case analysis for quadrilaterals with supertransitive elementary pieces.
    Classify {
        #[arg(long, value_enum, default_value_t = BranchChoice::All)]
        branch: BranchChoice,
        /// Largest n tried for indices 4cos²(π/n).
        #[arg(long, default_value_t = subfactor::classifier::DEFAULT_N_MAX)]
        n_max: u32,
    },
    /// Runs the golden-value suite.
    Selfcheck,
}

#[derive(Debug, Subcommand)]
enum GraphsCommand {
    /// Pointed A, D and E graphs with their indices.
    List {
        #[arg(long, default_value_t = 8)]
        max_a: usize,
        #[arg(long, default_value_t = 8)]
        max_d: usize,
    },
    /// One graph, pointed or not.
    Show { name: String },
}

#[derive(Debug, Subcommand)]
enum TowerCommand {
    /// Builds levels 0..=N and reports block structure and trace weights.
    Build {
        #[command(flatten)]
        source: TowerSource,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        /// Corner at this vertex instead of the full tower.
        #[arg(long, conflicts_with = "pointed")]
        corner: Option<usize>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TowerSource {
    /// Full tower of a graph, e.g. D5.
    #[arg(long)]
    graph: Option<String>,
    /// Corner tower at the star's neighbour, e.g. D5,2.
    #[arg(long)]
    pointed: Option<String>,
}

#[derive(Debug, Subcommand)]
enum GhjCommand {
    /// Principal graph of pTL2 ⊆ pA_∞p.
    PrincipalGraph {
        #[arg(long)]
        pointed: String,
        #[arg(long, value_enum, default_value_t = ParityChoice::Even)]
        parity: ParityChoice,
    },
    /// Index of the GHJ subfactor.
    Index {
        #[arg(long)]
        pointed: String,
        #[arg(long, value_enum, default_value_t = ParityChoice::Even)]
        parity: ParityChoice,
    },
}

#[derive(Debug, Subcommand)]
enum FusionCommand {
    /// Product of two multiplicity vectors.
    Fuse {
        #[command(flatten)]
        ring: Ring,
        #[arg(long, num_args = 1, required = true)]
        vector: Vec<FusionVector>,
    },
    /// Tensor power of a multiplicity vector.
    Pow {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        vector: FusionVector,
        #[arg(long, default_value_t = 2)]
        power: u32,
    },
    /// Dimensions of the summands of a vector.
    Dims {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        vector: FusionVector,
    },
}

#[derive(Debug, Args)]
struct Ring {
    /// `generic` or `truncated:N`.
    #[arg(long, default_value = "generic")]
    mode: FusionParams,
    /// Reject products V_i ⊗ V_j with i + j beyond this.
    #[arg(long)]
    window: Option<usize>,
}

impl Ring {
    fn params(&self) -> FusionParams {
        match self.window {
            Some(w) => self.mode.with_window(w),
            None => self.mode,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AngleChoice {
    Closed,
    Oracle,
    Simpler,
    /// Closed form and path oracle.
    Both,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchChoice {
    Noncocommuting,
    Cocommuting,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityChoice {
    Even,
    Odd,
}

fn dispatch(cli: &Cli) -> Result<Report, subfactor::Error> {
    let cap = cli.level_cap.map(usize::from);
    match &cli.command {
        Command::Graphs(GraphsCommand::List { max_a, max_d }) => {
            commands::graphs_list(*max_a, *max_d)
        }
        Command::Graphs(GraphsCommand::Show { name }) => commands::graphs_show(name),
        Command::Tower(TowerCommand::Build {
            source,
            levels,
            corner,
        }) => commands::tower_build(
            source.graph.as_deref(),
            source.pointed.as_deref(),
            *corner,
            *levels,
            cap,
        ),
        Command::Ghj(GhjCommand::PrincipalGraph { pointed, parity }) => {
            commands::ghj_principal_graph(pointed, *parity == ParityChoice::Odd, cap)
        }
        Command::Ghj(GhjCommand::Index { pointed, parity }) => {
            commands::ghj_index(pointed, *parity == ParityChoice::Odd, cap)
        }
        Command::Angle { pointed, method } => commands::angle(pointed, *method),
        Command::Fusion(FusionCommand::Fuse { ring, vector }) => {
            commands::fusion_fuse(&ring.params(), vector)
        }
        Command::Fusion(FusionCommand::Pow {
            ring,
            vector,
            power,
        }) => commands::fusion_pow(&ring.params(), vector, *power),
        Command::Fusion(FusionCommand::Dims { ring, vector }) => {
            commands::fusion_dims(&ring.params(), vector)
        }
        Command::Classify { branch, n_max } => commands::classify(*branch, *n_max),
        Command::Selfcheck => Ok(selfcheck::run(cap)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) if report::is_usage_error(&e) => {
            eprintln!("subfactor: {e}");
            return ExitCode::from(1);
        }
        Err(e) => Report::failure(&e),
    };
    print!("{}", report.render(cli.output, cli.precision as usize));
    ExitCode::from(if report.ok { 0 } else { 2 })
}
