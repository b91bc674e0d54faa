use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ict_bench::config::{Algorithm, ExperimentConfig};
use ict_bench::plots::{operator_chart, write_svg};
use ict_bench::{run_and_emit, BenchError};
use ict_core::data_io::{generate_phantom, save_pgm, PhantomVariant};
use ict_core::prox::RootPolicy;
use ict_core::solver::ShrinkScaling;

#[derive(Parser)]
#[command(name = "bench", version, about = "Iterative hard/soft/Cauchy thresholding benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a lambda sweep and write tables, plots and metadata.
    Run(RunArgs),
    /// Plot hard, soft and Cauchy shrinkage curves over x in [-5, 5].
    Operators {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0.001)]
        gamma: f64,
        #[arg(long, default_value = "paper_largest_abs", value_parser = parse_policy)]
        policy: RootPolicy,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render the Shepp-Logan phantom to a PGM file.
    Phantom {
        #[arg(long, default_value_t = 256)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "original", value_parser = parse_variant)]
        variant: PhantomVariant,
        #[arg(long, default_value_t = 255)]
        maxval: u16,
    },
}

/// Every field of the configuration file can be overridden here.
#[derive(Args)]
struct RunArgs {
    /// JSON configuration; omitted fields take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads (all cores when omitted).
    #[arg(long)]
    threads: Option<usize>,
    /// Output directory (overrides `output_dir`).
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<Algorithm>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    lambda_grid: Option<Vec<f64>>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    stride: Option<usize>,
    #[arg(long)]
    patch_edge: Option<usize>,
    #[arg(long)]
    atoms_per_axis: Option<usize>,
    #[arg(long)]
    epsilon_zero: Option<f64>,
    #[arg(long, value_parser = parse_policy)]
    root_policy: Option<RootPolicy>,
    #[arg(long, value_parser = parse_scaling)]
    shrink_scaling: Option<ShrinkScaling>,
    #[arg(long)]
    chunk_size: Option<usize>,
    #[arg(long)]
    plots: Option<bool>,
}

fn parse_policy(s: &str) -> Result<RootPolicy, String> {
    match s {
        "objective_min" => Ok(RootPolicy::ObjectiveMin),
        "paper_largest_abs" => Ok(RootPolicy::PaperLargestAbs),
        _ => Err("expected objective_min or paper_largest_abs".into()),
    }
}

fn parse_scaling(s: &str) -> Result<ShrinkScaling, String> {
    match s {
        "literal" => Ok(ShrinkScaling::Literal),
        "step_scaled" => Ok(ShrinkScaling::StepScaled),
        _ => Err("expected literal or step_scaled".into()),
    }
}

fn parse_variant(s: &str) -> Result<PhantomVariant, String> {
    match s {
        "original" => Ok(PhantomVariant::Original),
        "modified" => Ok(PhantomVariant::Modified),
        _ => Err("expected original or modified".into()),
    }
}

fn resolve(args: RunArgs) -> Result<(ExperimentConfig, Option<usize>), BenchError> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    macro_rules! set {
        ($($field:ident),*) => { $(if let Some(v) = args.$field { cfg.$field = v; })* };
    }
    set!(
        algorithms,
        lambda_grid,
        gamma,
        eta,
        iterations,
        stride,
        patch_edge,
        atoms_per_axis,
        epsilon_zero,
        root_policy,
        shrink_scaling,
        chunk_size,
        plots
    );
    if let Some(out) = args.output {
        cfg.output_dir = out;
    }
    cfg.validate()?;
    Ok((cfg, args.threads))
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: Command) -> Result<(), BenchError> {
    match command {
        Command::Run(args) => {
            let (cfg, threads) = resolve(args)?;
            let out = run_and_emit(&cfg, threads)?;
            let failed = out.result.records.iter().filter(|r| r.outcome.is_err()).count();
            println!(
                "{} cells ({} failed), {} files written to {}",
                out.result.records.len(),
                failed,
                out.files.len(),
                cfg.output_dir.display()
            );
            if let Some(notice) = out.plot_notice {
                println!("{notice}");
            }
        }
        Command::Operators { lambda, gamma, policy, out } => {
            write_svg(&operator_chart(lambda, gamma, policy)?, &out)?;
            println!("wrote {}", out.display());
        }
        Command::Phantom { size, out, variant, maxval } => {
            let img = generate_phantom(size, variant)?;
            save_pgm(&img, &out, maxval)?;
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}
