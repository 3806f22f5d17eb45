use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use taperscat::imaging::SamplingGrid;

use crate::presets::Preset;

#[derive(Debug, Parser)]
#[command(
    name = "taperscat",
    version,
    about = "Tapered-wave scattering and direct imaging"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate noisy near-field data and write a dataset file.
    Simulate(SimulateArgs),
    /// Recover boundary points from a dataset.
    Reconstruct(ReconstructArgs),
    /// Run the numerical self-checks.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Obstacle name (circle, kite, leaf3, leaf4, leaf5, peanut, pear, multi).
    #[arg(long)]
    pub shape: Option<String>,
    /// Wavenumber.
    #[arg(long)]
    pub k: Option<f64>,
    /// Taper parameter; the beam width is g·|d₂|.
    #[arg(long)]
    pub g: Option<f64>,
    /// Number of incident directions (multiple of 4).
    #[arg(long)]
    pub nd: Option<usize>,
    /// Number of receivers.
    #[arg(long)]
    pub nr: Option<usize>,
    /// Radius of the measurement circle.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Relative noise level in [0, 1).
    #[arg(long)]
    pub noise: Option<f64>,
    /// Noise seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Receiver arc as `start,extent` in radians.
    #[arg(long, value_parser = parse_aperture, allow_hyphen_values = true)]
    pub aperture: Option<(f64, f64)>,
    /// Nyström nodes per obstacle component.
    #[arg(long)]
    pub nystrom: Option<usize>,
    /// Start from a reference experiment; explicit flags override it.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Beam taper: amplitude factor (`printed`) or phase factor (`phase`).
    #[arg(long, value_enum)]
    pub taper_form: Option<TaperFormArg>,
    /// Re-run the configuration recorded in a manifest.
    #[arg(long, conflicts_with = "preset")]
    pub from_manifest: Option<PathBuf>,
    /// Dataset file to write; the manifest goes next to it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TaperFormArg {
    Printed,
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Standard,
    Separated,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Dataset file written by `simulate`.
    #[arg(long)]
    pub dataset: PathBuf,
    /// Points table to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Sampling grid `xmin,xmax,ymin,ymax,nx,ny`.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Option<SamplingGrid>,
    /// Peaks per direction.
    #[arg(long)]
    pub m: Option<usize>,
    /// Peak suppression radius (default: three grid spacings).
    #[arg(long)]
    pub min_sep: Option<f64>,
    #[arg(long, value_enum, default_value = "standard")]
    pub mode: Mode,
    /// Horizontal line splitting the grid in separated mode.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub split_y: f64,
    /// Peaks per subdomain in separated mode.
    #[arg(long, default_value_t = 24)]
    pub per_domain: usize,
    /// Write indicator heatmaps into this directory.
    #[arg(long)]
    pub heatmap_dir: Option<PathBuf>,
    /// Only process these direction indices (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub directions: Option<Vec<usize>>,
    /// Ground-truth obstacle name; enables distance metrics.
    #[arg(long)]
    pub shape: Option<String>,
    /// Distance tolerance for the metrics.
    #[arg(long, default_value_t = 0.06)]
    pub tol: f64,
    /// Image the noiseless data.
    #[arg(long)]
    pub use_clean: bool,
    /// Take the grid from a preset.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Override the coupling parameter of the forward check (diagnostics).
    #[arg(long, allow_negative_numbers = true)]
    pub debug_eta: Option<f64>,
}

fn parse_floats(s: &str, count: usize, what: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(format!(
            "{what} needs {count} comma-separated values, got {}",
            parts.len()
        ));
    }
    parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| format!("{what}: {p:?}: {e}")))
        .collect()
}

pub fn parse_aperture(s: &str) -> Result<(f64, f64), String> {
    let v = parse_floats(s, 2, "aperture")?;
    Ok((v[0], v[1]))
}

pub fn parse_grid(s: &str) -> Result<SamplingGrid, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(format!("grid needs xmin,xmax,ymin,ymax,nx,ny, got {s:?}"));
    }
    let b = parse_floats(&parts[..4].join(","), 4, "grid bounds")?;
    let count = |p: &str| p.parse::<usize>().map_err(|e| format!("grid size {p:?}: {e}"));
    SamplingGrid::new(b[0], b[1], b[2], b[3], count(parts[4])?, count(parts[5])?).map_err(|e| e.to_string())
}
