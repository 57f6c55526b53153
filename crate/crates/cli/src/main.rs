use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dtep_cli::commands::{
    self, Failure, ForwardWhat, InverseMode, Kind, Precision, RoundtripMode, EXIT_TOLERANCE,
};
use dtep_cli::format::{self, Document, File};

/// Forward and inverse solvers for finite Jacobi-type recurrences.
#[derive(Parser)]
#[command(name = "dtep", version)]
struct Cli {
    /// Working precision: double-double (`wide`) or plain f64 (`double`).
    #[arg(long, value_enum, default_value_t = PrecisionArg::Wide, global = true)]
    precision: PrecisionArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Wide,
    Double,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Standard,
    Transmission,
    Symmetric,
    Boundary,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    Spectrum,
    TwoSpectra,
    Weyl,
    CharPoly,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Weyl,
    TwoSpectra,
    Polybc,
    Transmission,
    Hochstadt,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Problem size.
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute spectral data of an instance.
    Forward {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = WhatArg::Spectrum)]
        what: WhatArg,
        /// Boundary polynomials for a standard instance.
        #[arg(long)]
        boundary: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover coefficients from spectral data.
    Inverse {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        input: PathBuf,
        /// Eigenvalues, for the polybc, transmission and hochstadt modes.
        #[arg(long)]
        spectrum: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample instances, run forward then inverse, and compare.
    Roundtrip {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest accepted coefficient error per trial.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Perturb the known data and tabulate the coefficient errors.
    Stability {
        /// Standard, symmetric, weyl or transmission document.
        #[arg(long)]
        input: PathBuf,
        /// Boundary polynomials, to perturb a boundary problem instead of Weyl data.
        #[arg(long)]
        boundary: Option<PathBuf>,
        /// Comma-separated perturbation sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [1e-2, 1e-3, 1e-4])]
        deltas: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let file = format::read(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    commands::validate(&file.doc).map_err(|f| Failure { message: format!("{}: {}", path.display(), f.message), ..f })?;
    Ok(file.doc)
}

fn load_opt(path: Option<&PathBuf>) -> Result<Option<Document>, Failure> {
    path.map(|p| load(p)).transpose()
}

fn emit(file: &File, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = format::write(file);
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let precision = match cli.precision {
        PrecisionArg::Wide => Precision::Wide,
        PrecisionArg::Double => Precision::Double,
    };
    match cli.command {
        Command::Generate { kind, l, seed, out } => {
            let kind = match kind {
                KindArg::Standard => Kind::Standard,
                KindArg::Transmission => Kind::Transmission,
                KindArg::Symmetric => Kind::Symmetric,
                KindArg::Boundary => Kind::Boundary,
            };
            emit(&commands::generate(kind, l, seed)?, out.as_ref())
        }
        Command::Forward { input, what, boundary, out } => {
            let what = match what {
                WhatArg::Spectrum => ForwardWhat::Spectrum,
                WhatArg::TwoSpectra => ForwardWhat::TwoSpectra,
                WhatArg::Weyl => ForwardWhat::Weyl,
                WhatArg::CharPoly => ForwardWhat::CharPoly,
            };
            let boundary = load_opt(boundary.as_ref())?;
            emit(&commands::forward(&load(&input)?, what, boundary.as_ref(), precision)?, out.as_ref())
        }
        Command::Inverse { mode, input, spectrum, out } => {
            let mode = match mode {
                ModeArg::Weyl => InverseMode::Weyl,
                ModeArg::TwoSpectra => InverseMode::TwoSpectra,
                ModeArg::Polybc => InverseMode::PolyBc,
                ModeArg::Transmission => InverseMode::Transmission,
                ModeArg::Hochstadt => InverseMode::Hochstadt,
            };
            let spectrum = load_opt(spectrum.as_ref())?;
            emit(&commands::inverse(mode, &load(&input)?, spectrum.as_ref(), precision)?, out.as_ref())
        }
        Command::Roundtrip { mode, l, trials, seed, tol } => {
            let mode = match mode {
                ModeArg::Weyl => RoundtripMode::Weyl,
                ModeArg::TwoSpectra => RoundtripMode::TwoSpectra,
                ModeArg::Polybc => RoundtripMode::PolyBc,
                ModeArg::Transmission => RoundtripMode::Transmission,
                ModeArg::Hochstadt => RoundtripMode::Hochstadt,
            };
            let report = commands::roundtrip(mode, l, trials, seed, tol, precision)?;
            print!("{}", report.text);
            if report.failures.is_empty() {
                Ok(())
            } else {
                Err(Failure { code: EXIT_TOLERANCE, message: format!("round trip exceeded tolerance; seed {seed}") })
            }
        }
        Command::Stability { input, boundary, deltas, trials, seed } => {
            let boundary = load_opt(boundary.as_ref())?;
            let (text, _) = commands::stability(&load(&input)?, boundary.as_ref(), &deltas, trials, seed, precision)?;
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
