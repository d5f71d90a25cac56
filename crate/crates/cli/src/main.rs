use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use leafkernel::io::{self, Family};
use leafkernel::kernel::Pipeline;
use leafkernel::{Instance, KernelOutcome, Problem};
use leafkernel_cli as cli;

/// Kernels for planar non-separating independent set and max leaf spanning tree.
#[derive(Parser)]
#[command(name = "leafkernel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance file.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = Problem::Nsis)]
        problem: Problem,
        /// Overrides the family default parameter.
        #[arg(long, allow_negative_numbers = true)]
        parameter: Option<i64>,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Run a kernelization pipeline and write the outcome.
    Kernelize {
        #[arg(long)]
        pipeline: Pipeline,
        #[arg(short = 'i', long)]
        input: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Decide an instance exactly by exhaustive search.
    Solve {
        /// Use the brute-force oracle; the only solver available.
        #[arg(long, required = true)]
        oracle: bool,
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Write the decided outcome with its certificate.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Check the certificate of a decided outcome against an instance.
    Verify {
        #[arg(short = 'i', long)]
        input: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Kernelize a generated corpus and write timings as CSV.
    Bench {
        #[arg(long)]
        corpus: String,
        #[arg(long)]
        pipeline: Pipeline,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

fn answer(out: &KernelOutcome) -> &'static str {
    match out {
        KernelOutcome::Decided { yes: true, .. } => "yes",
        KernelOutcome::Decided { yes: false, .. } => "no",
        KernelOutcome::Reduced { .. } => "reduced",
    }
}

fn status(out: &KernelOutcome) -> ExitCode {
    match out {
        KernelOutcome::Decided { yes: false, .. } => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen {
            family,
            size,
            seed,
            problem,
            parameter,
            output,
        } => {
            let mut inst = io::generate_instance(family, size, seed, problem)?;
            if let Some(p) = parameter {
                inst = Instance::new(inst.graph, problem, p);
            }
            cli::write_text(&output, &io::serialize_instance(&inst))?;
            println!(
                "{family} size={size} seed={seed}: n={} m={} parameter={}",
                inst.graph.vertex_count(),
                inst.graph.edge_count(),
                inst.parameter
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Kernelize {
            pipeline,
            input,
            output,
        } => {
            let inst = cli::read_instance(&input)?;
            let out = pipeline.run(&inst)?;
            cli::write_text(&output, &io::serialize_outcome(&out))?;
            println!("{pipeline}: {} kernel_size={}", answer(&out), out.kernel_size());
            Ok(status(&out))
        }
        Command::Solve { input, output, .. } => {
            let inst = cli::read_instance(&input)?;
            let out = cli::solve_exact(&inst)?;
            if let Some(path) = output {
                cli::write_text(&path, &io::serialize_outcome(&out))?;
            }
            println!("{} {}: {}", inst.problem, inst.parameter, answer(&out));
            Ok(status(&out))
        }
        Command::Verify { input, certificate } => {
            let inst = cli::read_instance(&input)?;
            let out = cli::read_outcome(&certificate)?;
            if cli::certificate_holds(&inst, &out) {
                println!("valid");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("invalid");
                Ok(ExitCode::from(1))
            }
        }
        Command::Bench {
            corpus,
            pipeline,
            output,
        } => {
            let rows = cli::run_bench(&corpus, pipeline, &output)?;
            println!("{pipeline}: {} instances -> {}", rows.len(), output.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
