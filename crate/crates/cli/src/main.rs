//! Command-line front end: eigen-reports, angular scans, (θ, kd) surfaces,
//! and g²(0) = 1 crossing detection, emitted as CSV or JSON.
//!
//! Exit codes: 0 success, 2 validation or input-file error, 3 internal
//! consistency error. Data goes to stdout (or `--output`); every diagnostic
//! goes to stderr.

mod output;

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use triatom::dipole::{self, CouplingParams};
use triatom::geometry::{Geometry, Layout};
use triatom::qstate::{NamedState, PureState};
use triatom::scan::{self, Observables};
use triatom::statefile;
use triatom::Error;

#[derive(Parser)]
#[command(
    name = "triatom",
    version,
    about = "Far-field intensity and photon statistics of three dipole-coupled two-level atoms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coupling strength, the 8 eigenvalues, and entangled-state matches
    Eigen(EigenArgs),
    /// Intensity and g2(0) over a window of observation angles
    Scan(ScanArgs),
    /// Intensity over a (kd, theta) grid, theta covering [-pi, pi)
    Surface(SurfaceArgs),
    /// Angles where g2(0) = 1 (sign-change crossings and tangential touches)
    Crossings(CrossingsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LayoutArg {
    Line,
    Loop,
}

impl From<LayoutArg> for Layout {
    fn from(value: LayoutArg) -> Layout {
        match value {
            LayoutArg::Line => Layout::Line,
            LayoutArg::Loop => Layout::Loop,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct EigenArgs {
    #[arg(long, value_enum)]
    layout: LayoutArg,
    /// Dimensionless interatomic spacing (wavenumber times distance)
    #[arg(long, allow_hyphen_values = true)]
    kd: f64,
    /// Transition frequency in units of gamma
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Decay-rate unit
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Direct 1-3 coupling override in units of gamma (line layout only)
    #[arg(long, allow_hyphen_values = true)]
    omega13: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    layout: LayoutArg,
    /// Named state (w21, wbar21, wtilde21, ghzbar21, ghztilde21) or a path
    /// to a custom-state file
    #[arg(long)]
    state: String,
    #[arg(long, allow_hyphen_values = true)]
    kd: f64,
    /// Window start, radians
    #[arg(long, default_value_t = -PI, allow_hyphen_values = true)]
    theta_min: f64,
    /// Window end, radians
    #[arg(long, default_value_t = PI, allow_hyphen_values = true)]
    theta_max: f64,
    #[arg(long, default_value_t = 361)]
    samples: usize,
    /// Comma-separated subset of {intensity, g2}; g2 implies intensity
    #[arg(long, default_value = "intensity,g2")]
    observables: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, value_enum)]
    layout: LayoutArg,
    #[arg(long)]
    state: String,
    #[arg(long, allow_hyphen_values = true)]
    kd_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    kd_max: f64,
    #[arg(long, default_value_t = 50)]
    kd_samples: usize,
    /// Theta samples over [-pi, pi)
    #[arg(long, default_value_t = 181)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CrossingsArgs {
    #[arg(long, value_enum)]
    layout: LayoutArg,
    #[arg(long)]
    state: String,
    #[arg(long, allow_hyphen_values = true)]
    kd: f64,
    #[arg(long, default_value_t = -PI / 2.0, allow_hyphen_values = true)]
    theta_min: f64,
    #[arg(long, default_value_t = PI / 2.0, allow_hyphen_values = true)]
    theta_max: f64,
    #[arg(long, default_value_t = 2001)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eigen(args) => run_eigen(args),
        Command::Scan(args) => run_scan(args),
        Command::Surface(args) => run_surface(args),
        Command::Crossings(args) => run_crossings(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Consistency(_) => 3,
        _ => 2,
    }
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn warn_small_kd(kd: f64) {
    if kd > 0.0 && kd < scan::MIN_KD {
        eprintln!("note: kd = {kd} is below the supported minimum; clamped to {}", scan::MIN_KD);
    }
}

/// FNV-1a over the normalized amplitude bits; stable across runs.
fn fingerprint(state: &PureState) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for amp in state.amplitudes() {
        for part in [amp.re, amp.im] {
            for byte in part.to_bits().to_le_bytes() {
                hash ^= byte as u64;
                hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
    }
    hash
}

fn named_tokens(layout: Layout) -> &'static str {
    match layout {
        Layout::Line => "w21, wbar21, wtilde21",
        Layout::Loop => "w21, ghzbar21, ghztilde21",
    }
}

/// A named-state token or a path to a custom-state document. Returns the
/// state plus the label recorded in table metadata.
fn resolve_state(layout: Layout, token: &str) -> Result<(PureState, String), Error> {
    let lowered = token.to_ascii_lowercase();
    if let Some(tag) = NamedState::from_label(layout, &lowered) {
        if tag.natural_layout() != layout {
            eprintln!(
                "note: state '{}' is natural to the {} layout; evaluating it with {} phases",
                tag.label(),
                tag.natural_layout().label(),
                layout.label()
            );
        }
        return Ok((tag.state(), tag.label().to_owned()));
    }
    let path = Path::new(token);
    if !path.exists() && !token.contains(['/', '.']) {
        return Err(Error::InvalidInput(format!(
            "unknown state '{token}' (named states for the {} layout: {}; or pass a file path)",
            layout.label(),
            named_tokens(layout)
        )));
    }
    let loaded = statefile::load_state_file(path)?;
    if loaded.state.num_atoms() != 3 {
        return Err(Error::StateFile(format!(
            "custom state must describe 3 atoms (8 amplitude pairs), got {} atoms",
            loaded.state.num_atoms()
        )));
    }
    if loaded.was_renormalized() {
        eprintln!(
            "note: custom state had norm {:.12}; renormalized",
            loaded.original_norm
        );
    }
    let label = format!("custom:{:016x}", fingerprint(&loaded.state));
    Ok((loaded.state, label))
}

fn parse_observables(list: &str) -> Result<Observables, Error> {
    let mut intensity = false;
    let mut g2 = false;
    for token in list.split(',') {
        match token.trim() {
            "intensity" => intensity = true,
            "g2" => g2 = true,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown observable '{other}' (expected intensity, g2)"
                )))
            }
        }
    }
    if !intensity && !g2 {
        return Err(Error::InvalidInput("no observables requested".into()));
    }
    // g2 is intensity-normalized, so requesting it always yields both.
    Ok(if g2 { Observables::IntensityAndG2 } else { Observables::Intensity })
}

fn run_eigen(args: EigenArgs) -> Result<(), Error> {
    let layout = Layout::from(args.layout);
    let coupling = dipole::coupling_strength(args.kd, args.gamma)?;
    let params = match (layout, args.omega13) {
        (Layout::Line, Some(omega13)) => {
            CouplingParams::line_with_cross(args.omega, args.gamma, coupling, omega13)?
        }
        (Layout::Loop, Some(_)) => {
            return Err(Error::InvalidInput(
                "--omega13 applies to the line layout only".into(),
            ))
        }
        (_, None) => CouplingParams::uniform(layout, args.omega, args.gamma, coupling)?,
    };
    let hamiltonian = dipole::build_hamiltonian(layout, &params)?;
    let decomposition = dipole::diagonalize(&hamiltonian)?;
    let subspaces = dipole::classify_eigenstates(&decomposition)?;
    let report = output::EigenReport {
        layout: layout.label(),
        kd: args.kd,
        omega: args.omega,
        gamma: args.gamma,
        coupling,
        omega13: args.omega13,
        eigenvalues: decomposition.eigenvalues().to_vec(),
        subspaces,
    };
    let content = match args.format {
        Format::Csv => output::eigen_csv(&report),
        Format::Json => output::eigen_json(&report),
    };
    emit(args.output.as_deref(), &content)
}

fn run_scan(args: ScanArgs) -> Result<(), Error> {
    let layout = Layout::from(args.layout);
    let observables = parse_observables(&args.observables)?;
    let (state, label) = resolve_state(layout, &args.state)?;
    warn_small_kd(args.kd);
    let geometry = Geometry::new(layout, args.kd)?;
    let table = scan::angular_scan(
        &state,
        &label,
        geometry,
        args.theta_min,
        args.theta_max,
        args.samples,
        observables,
    )?;
    let content = match args.format {
        Format::Csv => output::scan_csv(&table),
        Format::Json => output::scan_json(&table),
    };
    emit(args.output.as_deref(), &content)
}

fn run_surface(args: SurfaceArgs) -> Result<(), Error> {
    let layout = Layout::from(args.layout);
    let (state, label) = resolve_state(layout, &args.state)?;
    warn_small_kd(args.kd_min);
    let table = scan::surface_scan(
        &state,
        &label,
        layout,
        args.kd_min,
        args.kd_max,
        args.kd_samples,
        args.samples,
    )?;
    let content = match args.format {
        Format::Csv => output::scan_csv(&table),
        Format::Json => output::scan_json(&table),
    };
    emit(args.output.as_deref(), &content)
}

fn run_crossings(args: CrossingsArgs) -> Result<(), Error> {
    let layout = Layout::from(args.layout);
    let (state, label) = resolve_state(layout, &args.state)?;
    warn_small_kd(args.kd);
    let geometry = Geometry::new(layout, args.kd)?;
    let report = scan::unity_crossings(
        &state,
        geometry,
        args.theta_min,
        args.theta_max,
        args.samples,
    )?;
    let content = match args.format {
        Format::Csv => output::crossings_csv(&report),
        Format::Json => {
            let context = output::crossings_metadata_json(
                &label,
                layout.label(),
                args.kd,
                args.theta_min,
                args.theta_max,
                args.samples,
            );
            output::crossings_json(&report, &context)
        }
    };
    emit(args.output.as_deref(), &content)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_error_class() {
        assert_eq!(exit_code(&Error::InvalidInput("x".into())), 2);
        assert_eq!(exit_code(&Error::StateFile("x".into())), 2);
        assert_eq!(exit_code(&Error::Unsupported("x".into())), 2);
        assert_eq!(exit_code(&Error::Consistency("x".into())), 3);
    }

    #[test]
    fn observables_parsing() {
        assert_eq!(parse_observables("intensity").unwrap(), Observables::Intensity);
        assert_eq!(parse_observables("g2").unwrap(), Observables::IntensityAndG2);
        assert_eq!(parse_observables("intensity,g2").unwrap(), Observables::IntensityAndG2);
        assert_eq!(parse_observables(" intensity , g2 ").unwrap(), Observables::IntensityAndG2);
        assert!(parse_observables("flux").is_err());
        assert!(parse_observables("").is_err());
    }
}
