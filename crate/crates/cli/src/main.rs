mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact separating-line certificates for disjoint convex polygons.
#[derive(Parser, Debug)]
#[command(name = "sepline", version)]
struct Cli {
    /// Print nothing on success.
    #[arg(long, global = true)]
    quiet: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a seeded random instance.
    Generate(GenerateArgs),
    /// Find a pair and its guarantee; write a certificate.
    Solve {
        instance: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Also write the clipped cells and the grown cover next to the certificate.
        #[arg(long)]
        emit_cover: bool,
    },
    /// Check a certificate by exhaustive enumeration.
    Verify { instance: PathBuf, certificate: PathBuf },
    /// Draw an instance, optionally with a certificate and cover, as SVG.
    Render {
        instance: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    k_min: usize,
    #[arg(long, default_value_t = 6)]
    k_max: usize,
    /// Grid cell width.
    #[arg(long, default_value_t = 40)]
    spread: i64,
    /// Minimum distance between sets, as "p/q" or "p".
    #[arg(long, default_value = "1")]
    min_gap: String,
    #[arg(short, long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_USAGE),
            };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.into()).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(commands::EXIT_USAGE);
        }
    }
    let out = commands::Output { quiet: cli.quiet };
    let result = match cli.command {
        Command::Generate(a) => commands::generate(&out, a.n as usize, a.seed, a.k_min, a.k_max, a.spread, &a.min_gap, &a.out),
        Command::Solve { instance, out: path, emit_cover } => commands::solve(&out, &instance, &path, emit_cover),
        Command::Verify { instance, certificate } => commands::verify(&out, &instance, &certificate),
        Command::Render { instance, certificate, cover, out: path } => {
            commands::render(&out, &instance, certificate.as_deref(), cover.as_deref(), &path)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
