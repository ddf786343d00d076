//! Command-line runner: noise-free walks, decoherence ensembles,
//! reference comparisons and hardware resource reports, emitted as
//! plot-ready CSV or JSON.

mod angle;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{value_parser, Args, Parser, Subcommand, ValueEnum};
use fieldwalk_core::{
    classical_distribution, init_coin, matching_coin, moments, photon_distribution, propagate,
    resource_count, run_ensemble, scale_to_input, tv_distance, walk_distribution,
    BeamSplitterParams, Layout, NoiseConfig, PhaseSharing, RandomnessMode,
};
use report::Format;

#[derive(Parser)]
#[command(
    name = "fieldwalk",
    version,
    about = "Coined quantum walks on a line as beam-splitter-network interference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Photon distribution of the noise-free walk
    Walk(WalkArgs),
    /// Trial-averaged distribution under phase and transmittivity noise
    Decohere(DecohereArgs),
    /// Walk distribution next to a classical or coined-walk reference
    Compare(CompareArgs),
    /// Optical element counts for a hardware layout
    Resources(ResourcesArgs),
}

#[derive(Args)]
struct SplitterArgs {
    /// Input splitter angle in radians; pi literals like pi/2 accepted
    #[arg(long, value_parser = angle::parse_angle, default_value = "pi/2",
          allow_hyphen_values = true)]
    theta: f64,
    /// Input splitter phase in radians; pi literals like -pi/2 accepted
    #[arg(long, value_parser = angle::parse_angle, default_value = "-pi/2",
          allow_hyphen_values = true)]
    phi: f64,
}

impl SplitterArgs {
    fn params(&self) -> Result<BeamSplitterParams, CliError> {
        Ok(BeamSplitterParams::new(self.theta, self.phi)?)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WalkArgs {
    /// Number of walk steps
    #[arg(long, value_parser = value_parser!(u32).range(1..))]
    steps: u32,
    #[command(flatten)]
    splitter: SplitterArgs,
    /// Mean photon number of the input beam; values are scaled by it
    #[arg(long, default_value_t = 1.0)]
    alpha_squared: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct DecohereArgs {
    /// Number of walk steps
    #[arg(long, value_parser = value_parser!(u32).range(1..))]
    steps: u32,
    #[command(flatten)]
    splitter: SplitterArgs,
    /// Width of the Gaussian phase-noise channel
    #[arg(long, default_value_t = 0.0)]
    sigma_pp: f64,
    /// Width of the Gaussian transmittivity-noise channel
    #[arg(long, default_value_t = 0.0)]
    sigma_bs: f64,
    /// Number of trials to average
    #[arg(long, default_value_t = 50, value_parser = value_parser!(u32).range(1..))]
    trials: u32,
    /// Master seed; trials derive their own streams from it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Redraw noise every step (fresh) or freeze it per trial (fixed)
    #[arg(long, value_enum, default_value_t = ModeArg::Fresh)]
    mode: ModeArg,
    /// Phase draw granularity
    #[arg(long, value_enum, default_value_t = SharingArg::PerMode)]
    sharing: SharingArg,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CompareArgs {
    /// Number of walk steps
    #[arg(long, value_parser = value_parser!(u32).range(1..))]
    steps: u32,
    #[command(flatten)]
    splitter: SplitterArgs,
    /// Reference distribution
    #[arg(long, value_enum)]
    against: AgainstArg,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ResourcesArgs {
    /// Number of walk steps
    #[arg(long, value_parser = value_parser!(u32).range(1..))]
    steps: u32,
    /// Hardware layout
    #[arg(long, value_enum)]
    layout: LayoutArg,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Fresh,
    Fixed,
}

impl ModeArg {
    fn to_core(self) -> RandomnessMode {
        match self {
            ModeArg::Fresh => RandomnessMode::Fresh,
            ModeArg::Fixed => RandomnessMode::Fixed,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ModeArg::Fresh => "fresh",
            ModeArg::Fixed => "fixed",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SharingArg {
    PerMode,
    PerStep,
}

impl SharingArg {
    fn to_core(self) -> PhaseSharing {
        match self {
            SharingArg::PerMode => PhaseSharing::PerMode,
            SharingArg::PerStep => PhaseSharing::PerStep,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SharingArg::PerMode => "per-mode",
            SharingArg::PerStep => "per-step",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AgainstArg {
    Classical,
    Coined,
}

impl AgainstArg {
    fn name(self) -> &'static str {
        match self {
            AgainstArg::Classical => "classical",
            AgainstArg::Coined => "coined",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LayoutArg {
    Line,
    Aom,
}

impl LayoutArg {
    fn to_core(self) -> Layout {
        match self {
            LayoutArg::Line => Layout::DynamicLine,
            LayoutArg::Aom => Layout::AomLoop,
        }
    }

    fn name(self) -> &'static str {
        match self {
            LayoutArg::Line => "line",
            LayoutArg::Aom => "aom",
        }
    }
}

enum CliError {
    /// Bad parameters: exit code 2.
    Usage(String),
    /// Failure while running or writing: exit code 1.
    Runtime(String),
}

impl From<fieldwalk_core::Error> for CliError {
    fn from(err: fieldwalk_core::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::Runtime(err.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Walk(args) => cmd_walk(args),
        Command::Decohere(args) => cmd_decohere(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Resources(args) => cmd_resources(args),
    }
}

fn cmd_walk(args: WalkArgs) -> Result<(), CliError> {
    let params = args.splitter.params()?;
    let line = propagate(args.steps as usize, params, None)?;
    let rows = scale_to_input(&photon_distribution(&line), args.alpha_squared)?;
    let meta = report::WalkMeta {
        command: "walk",
        steps: args.steps,
        theta: params.theta(),
        phi: params.phi(),
        alpha_squared: args.alpha_squared,
    };
    with_writer(&args.out, |w| report::walk(w, &meta, &rows, args.out.format))
}

fn cmd_decohere(args: DecohereArgs) -> Result<(), CliError> {
    let params = args.splitter.params()?;
    let cfg = NoiseConfig {
        sigma_pp: args.sigma_pp,
        sigma_bs: args.sigma_bs,
        trials: args.trials as usize,
        master_seed: args.seed,
        randomness: args.mode.to_core(),
        phase_sharing: args.sharing.to_core(),
    };
    let result = run_ensemble(args.steps as usize, params, &cfg)?;
    let rows: Vec<(i64, f64, f64)> = result
        .mean
        .sites()
        .map(|(k, value)| (k, value, result.stderr.value(k)))
        .collect();
    let meta = report::DecohereMeta {
        command: "decohere",
        steps: args.steps,
        theta: params.theta(),
        phi: params.phi(),
        sigma_pp: args.sigma_pp,
        sigma_bs: args.sigma_bs,
        trials: args.trials,
        seed: args.seed,
        mode: args.mode.name(),
        sharing: args.sharing.name(),
    };
    with_writer(&args.out, |w| {
        report::decohere(w, &meta, &rows, args.out.format)
    })
}

fn cmd_compare(args: CompareArgs) -> Result<(), CliError> {
    let params = args.splitter.params()?;
    let steps = args.steps as usize;
    let walk = photon_distribution(&propagate(steps, params, None)?);
    let reference = match args.against {
        AgainstArg::Classical => classical_distribution(steps),
        AgainstArg::Coined => {
            let (right, left) = matching_coin(&params);
            walk_distribution(steps, &init_coin(right, left)?)
        }
    };
    let summary = report::CompareSummary {
        tv_distance: tv_distance(&walk, &reference)?,
        walk: moments_summary(moments(&walk)?),
        reference: moments_summary(moments(&reference)?),
    };
    let rows: Vec<(i64, f64, f64)> = walk
        .sites()
        .map(|(k, value)| (k, value, reference.value(k)))
        .collect();
    let meta = report::CompareMeta {
        command: "compare",
        steps: args.steps,
        theta: params.theta(),
        phi: params.phi(),
        against: args.against.name(),
    };
    with_writer(&args.out, |w| {
        report::compare(w, &meta, &summary, &rows, args.out.format)
    })
}

fn cmd_resources(args: ResourcesArgs) -> Result<(), CliError> {
    let count = resource_count(args.steps as usize, args.layout.to_core())?;
    let meta = report::ResourcesMeta {
        command: "resources",
        steps: args.steps,
        layout: args.layout.name(),
    };
    with_writer(&args.out, |w| {
        report::resources(w, &meta, &count, args.out.format)
    })
}

fn moments_summary(m: fieldwalk_core::Moments) -> report::MomentsSummary {
    report::MomentsSummary {
        mean: m.mean,
        variance: m.variance,
        std_dev: m.std_dev,
    }
}

fn with_writer(
    out: &OutputArgs,
    f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            let mut writer = BufWriter::new(File::create(path)?);
            f(&mut writer)?;
            writer.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut writer = stdout.lock();
            f(&mut writer)?;
        }
    }
    Ok(())
}
