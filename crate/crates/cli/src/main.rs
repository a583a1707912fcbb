use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pairtile::run::parse_rational_arg;
use pairtile::{run, AnalysisRequest, Command, Failure, Format, Options, Outcome};
use pairtile_core::Q;

/// Decide, certify and verify multiple lattice tilings by pairing polygons.
///
/// Exit status: 0 affirmative, 1 negative, 2 input error (reported as a JSON
/// error object on standard output).
#[derive(Parser)]
#[command(name = "pairtile", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct Output {
    /// Output format. CSV is available for `verify` (faces) and `zeroset` (lines).
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Edge pairs, symmetry, convexity and the quasi-periodicity certificate.
    Analyze { region: PathBuf },
    /// Exact lattice tiling decision with per-pair certificates.
    CheckLattice {
        region: PathBuf,
        lattice: PathBuf,
        /// Also count coverage on one period and require agreement.
        #[arg(long)]
        verify: bool,
    },
    /// Edge-wise test for convex centrally symmetric regions (centred automatically).
    CheckBolle {
        region: PathBuf,
        lattice: PathBuf,
        #[arg(long)]
        verify: bool,
    },
    /// Whether every multiple tiling by the region must be quasi-periodic.
    Classify { region: PathBuf },
    /// Brute-force coverage count: exact for one lattice, sampled otherwise.
    Verify {
        region: PathBuf,
        /// Lattice or quasi-periodic set.
        lattice: PathBuf,
        /// Force sampled mode with this many points.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Common zeros of the edge-pair transforms in a disc.
    Zeroset {
        region: PathBuf,
        /// Disc radius, as `p/q` or an integer.
        #[arg(long, value_parser = parse_rational_arg)]
        radius: Q,
        #[command(flatten)]
        output: Output,
    },
    /// Windowed estimate of the density of a lattice or quasi-periodic set.
    Density {
        lattice: PathBuf,
        #[arg(long)]
        t: f64,
    },
}

impl Cmd {
    fn into_request(self) -> AnalysisRequest {
        let mut options = Options::default();
        let fmt = |o: Output| match o.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
        let (command, region_path, lattice_path) = match self {
            Cmd::Analyze { region } => (Command::Analyze, Some(region), None),
            Cmd::CheckLattice { region, lattice, verify } => {
                options.verify = verify;
                (Command::CheckLattice, Some(region), Some(lattice))
            }
            Cmd::CheckBolle { region, lattice, verify } => {
                options.verify = verify;
                (Command::CheckBolle, Some(region), Some(lattice))
            }
            Cmd::Classify { region } => (Command::Classify, Some(region), None),
            Cmd::Verify { region, lattice, samples, seed, output } => {
                options.samples = samples;
                options.seed = seed;
                options.format = fmt(output);
                (Command::Verify, Some(region), Some(lattice))
            }
            Cmd::Zeroset { region, radius, output } => {
                options.radius = Some(radius);
                options.format = fmt(output);
                (Command::Zeroset, Some(region), None)
            }
            Cmd::Density { lattice, t } => {
                options.t = Some(t);
                (Command::Density, None, Some(lattice))
            }
        };
        AnalysisRequest { command, region_path, lattice_path, options }
    }
}

fn main() -> ExitCode {
    let outcome = match Cli::try_parse() {
        Ok(cli) => run(&cli.command.into_request()),
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let field = e.get(clap::error::ContextKind::InvalidArg).map(|v| v.to_string());
            let rendered = e.to_string();
            let message: Vec<&str> = rendered.lines().take_while(|l| !l.trim().is_empty()).map(str::trim).collect();
            let message = message.join(" ").trim_start_matches("error: ").to_string();
            Outcome::from(Failure::new("UsageError", message, field))
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    if !outcome.stdout.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
    let _ = stdout.flush();
    ExitCode::from(outcome.code as u8)
}
