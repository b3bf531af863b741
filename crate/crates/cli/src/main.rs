mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use output::Format;

/// Spectra of H = p² − g x⁴ + a/x² and its partner h = p² + 4g x⁴ + b x.
#[derive(Parser, Debug)]
#[command(name = "isospectral", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Action-series coefficients b_k against their closed forms.
    Coeffs(CoeffsArgs),
    /// Low-lying eigenvalues by complex-contour shooting.
    Spectrum(SpectrumArgs),
    /// E_H, E_h and E_J side by side in the Hermitian-partner regime (a = 6).
    Table1(TableArgs),
    /// E_H, E_h and E_J side by side in the PT-partner regime (a = −0.5).
    Table2(TableArgs),
    /// Lowest six eigenvalues across the PT transition.
    Figure1(FigureArgs),
    /// Coefficient identity and isospectrality for one parameter set.
    EquivCheck(EquivArgs),
    /// Zero-energy supersymmetry checks for the modes ix·e^{ix³/3} and (ix)⁻¹e^{−ix³/3}.
    SusyCheck(SusyArgs),
}

#[derive(Args, Debug, Serialize)]
struct Physics {
    /// Quartic coupling g > 0.
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Planck constant.
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Relative tolerance of the ODE integrator.
    #[arg(long, default_value_t = 1e-12)]
    rk_tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Which Hamiltonian: `--a` selects H, `--b` selects h with quartic 4g.
#[derive(Args, Debug, Serialize)]
struct FamilyArgs {
    /// Inverse-square coupling of H (default 6 when --b is absent).
    #[arg(long, conflicts_with = "b", allow_hyphen_values = true)]
    a: Option<f64>,
    /// Linear coupling of h, possibly complex ("2", "0+1.5i").
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    b: Option<Complex64>,
}

#[derive(Args, Debug, Serialize)]
struct ContourArgs {
    /// Centre of the branch-point ellipse, "re,im".
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    contour_center: Option<(f64, f64)>,
    /// Semi-axes of the branch-point ellipse, "a,b".
    #[arg(long, value_parser = parse_pair, requires = "contour_center")]
    contour_axes: Option<(f64, f64)>,
}

#[derive(Args, Debug, Serialize)]
struct CoeffsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 24)]
    kmax: usize,
    #[command(flatten)]
    contour: ContourArgs,
    /// Largest accepted relative deviation from the closed forms.
    #[arg(long, default_value_t = 1e-9)]
    golden_tol: f64,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct SpectrumArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    /// Starting energy for the root search, repeatable; replaces the automatic
    /// seeds. Needed for complex levels when PT symmetry is broken.
    #[arg(long = "seed", value_parser = parse_complex, allow_hyphen_values = true)]
    seeds: Vec<Complex64>,
    /// Largest accepted |Im E|/max(1, |E|) where the spectrum is real.
    #[arg(long, default_value_t = 1e-8)]
    real_tol: f64,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct TableArgs {
    /// Inverse-square coupling (default 6 for table1, −0.5 for table2).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    /// Truncation order of the action series behind E_J.
    #[arg(long, default_value_t = 30)]
    kmax: usize,
    #[command(flatten)]
    contour: ContourArgs,
    #[arg(long, default_value_t = 2e-6)]
    iso_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    real_tol: f64,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct FigureArgs {
    #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
    a_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    a_max: f64,
    #[arg(long, default_value_t = 141)]
    steps: usize,
    /// Points of the sweep where H is solved directly as a cross-check.
    #[arg(long, default_value_t = 10)]
    h_side_samples: usize,
    #[arg(long, default_value_t = 1e-8)]
    real_tol: f64,
    #[arg(long, default_value_t = 2e-6)]
    iso_tol: f64,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct EquivArgs {
    #[arg(long, default_value_t = 6.0, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, default_value_t = 60)]
    kmax: usize,
    #[arg(long, default_value_t = 1e-9)]
    identity_tol: f64,
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    #[arg(long, default_value_t = 2e-6)]
    iso_tol: f64,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct SusyArgs {
    /// Sample points per contour.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 1e-12)]
    susy_tol: f64,
    /// Largest accepted |E_0| of either partner.
    #[arg(long, default_value_t = 1e-6)]
    zero_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    rk_tol: f64,
    #[command(flatten)]
    #[serde(skip)]
    output: Output,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    Complex64::from_str(s.trim()).map_err(|e| format!("not a complex number: {e}"))
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or("expected two comma-separated numbers")?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(x)?, num(y)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("isospectral: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("isospectral: {e:#}");
            ExitCode::from(2)
        }
    }
}
