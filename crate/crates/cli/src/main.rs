use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use colorvd::{Metric, Side};
use colorvd_cli::commands::{self, BuildArgs, GenArgs, VerifyArgs, EXIT_USAGE};
use colorvd_cli::svg::SvgOptions;

#[derive(Parser)]
#[command(name = "colorvd", version, about = "Order-k color Voronoi diagrams with exact verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    L2,
    Linf,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::L2 => Metric::Euclidean,
            MetricArg::Linf => Metric::Linf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Min,
    Max,
    Both,
}

impl SideArg {
    fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Min => vec![Side::Min],
            SideArg::Max => vec![Side::Max],
            SideArg::Both => vec![Side::Min, Side::Max],
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a random site file in general position.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "l2")]
        metric: MetricArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinates are drawn from [-bbox, bbox].
        #[arg(long, default_value_t = 1000)]
        bbox: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the vertex census tables and per-order vertex counts.
    Census {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "l2")]
        metric: MetricArg,
        /// Also write the tables as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print colored j-facet tables of the sites and of their lifting.
    Facets {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "l2")]
        metric: MetricArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build minimal and maximal diagrams of orders 1..=k.
    Build {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "l2")]
        metric: MetricArg,
        /// Highest order; defaults to the number of colors.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        /// Write the serialized diagrams here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cross-check against the census and the point oracle.
        #[arg(long, default_value_t = 0)]
        samples_per_face: usize,
    },
    /// Evaluate every identity and bound; exit 1 if any fails.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "l2")]
        metric: MetricArg,
        /// Highest order to check; defaults to all.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random subsets for the order-1 subset conditions.
        #[arg(long, default_value_t = 20)]
        subsets: usize,
        #[arg(long, default_value_t = 8)]
        samples_per_face: usize,
        /// Skip the diagram builder cross-checks.
        #[arg(long)]
        no_build: bool,
        /// Also write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render one order of a serialized diagram as SVG.
    Svg {
        diagram: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long)]
        show_refined: bool,
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        show_old_edges: bool,
    },
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Gen { n, m, metric, seed, bbox, out: path } => {
            commands::gen(&GenArgs { n, m, metric: metric.into(), seed, half_width: bbox, out: path }, &mut out)
        }
        Command::Census { file, metric, out: path } => {
            commands::census_cmd(&file, metric.into(), path.as_ref(), &mut out)
        }
        Command::Facets { file, metric, out: path } => {
            commands::facets_cmd(&file, metric.into(), path.as_ref(), &mut out)
        }
        Command::Build { file, metric, k, side, out: path, samples_per_face } => commands::build_cmd(
            &BuildArgs { file, metric: metric.into(), k, sides: side.sides(), out: path, samples_per_face },
            &mut out,
        ),
        Command::Verify { file, metric, k, seed, subsets, samples_per_face, no_build, out: path } => {
            commands::verify_cmd(
                &VerifyArgs {
                    file,
                    metric: metric.into(),
                    k,
                    seed,
                    subsets,
                    samples_per_face,
                    skip_builder: no_build,
                    out: path,
                },
                &mut out,
            )
        }
        Command::Svg { diagram, out: path, k, side, show_refined, show_old_edges } => {
            let side = match side {
                None | Some(SideArg::Both) => None,
                Some(SideArg::Min) => Some(Side::Min),
                Some(SideArg::Max) => Some(Side::Max),
            };
            let opts = SvgOptions { side, order: k, show_refined, show_old_edges };
            commands::svg_cmd(&diagram, path.as_ref(), opts, &mut out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
