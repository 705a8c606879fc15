//! Run parameters: command-line flags layered over an optional
//! `key = value` file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use vortex_cd::paraxial::FormulaKind;
use vortex_cd::Helicity;

#[derive(Debug, Parser)]
#[command(name = "vd", version, about = "Twisted-photon absorption observables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Local energy flux of one beam
    Flux(ScanArgs),
    /// Circular dichroism of the cross sections
    Cd(ScanArgs),
    /// Photon-spin asymmetry of the excitation rate
    RateAsym(ScanArgs),
    /// Twisted to plane-wave cross-section ratio of one beam
    SigmaRatio(ScanArgs),
    /// Stokes parameters after propagation through an absorbing medium
    Stokes(StokesArgs),
    /// Closed-form paraxial asymmetries
    Paraxial(ParaxialArgs),
    /// Run the invariant and oracle checks
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// key = value file; flags given on the command line take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct BeamArgs {
    /// Topological charge
    #[arg(long, allow_hyphen_values = true)]
    pub mbar: Option<i32>,
    /// Pitch angle in radians
    #[arg(long)]
    pub theta_k: Option<f64>,
    #[arg(long)]
    pub wavelength: Option<f64>,
    /// Impact-parameter range in wavelengths
    #[arg(long)]
    pub b_min: Option<f64>,
    #[arg(long)]
    pub b_max: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub beam: BeamArgs,
    /// Final-state orbital angular momentum
    #[arg(long)]
    pub lf: Option<u32>,
    /// +1 or -1 (flux, sigma-ratio)
    #[arg(long, allow_hyphen_values = true)]
    pub helicity: Option<i32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct StokesArgs {
    #[command(flatten)]
    pub beam: BeamArgs,
    /// Multipolarity governing absorption in the medium
    #[arg(long)]
    pub lf_medium: Option<u32>,
    /// Comma-separated propagation depths in plane-wave attenuation lengths
    #[arg(long, value_delimiter = ',')]
    pub z: Option<Vec<f64>>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Cd,
    ALambda,
}

impl From<KindArg> for FormulaKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Cd => FormulaKind::Cd,
            KindArg::ALambda => FormulaKind::ALambda,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ParaxialArgs {
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub mbar: Option<i32>,
    #[arg(long)]
    pub lf: Option<u32>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Add the extrapolated small-angle limit of the full calculation
    #[arg(long)]
    pub numeric: bool,
    /// Write every stored formula as JSON instead of evaluating one
    #[arg(long)]
    pub export_table: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
}

/// Parsed `key = value` lines. Keys use the long flag names.
#[derive(Debug, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {}: expected key = value", i + 1))?;
            let key = k.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                bail!("config line {}: unknown key `{}`", i + 1, k.trim());
            }
            entries.insert(key, v.trim().to_string());
        }
        Ok(Self { entries })
    }

    fn get<T: FromStr>(&self, key: &str) -> anyhow::Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.entries
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| anyhow!("config key `{key}` = `{v}`: {e}")))
            .transpose()
    }

    fn get_list(&self, key: &str) -> anyhow::Result<Option<Vec<f64>>> {
        self.entries
            .get(key)
            .map(|v| {
                v.split(',')
                    .map(|s| s.trim().parse::<f64>().map_err(|e| anyhow!("config key `{key}`: {e}")))
                    .collect()
            })
            .transpose()
    }
}

const KNOWN_KEYS: &[&str] = &[
    "mbar", "lf", "theta-k", "wavelength", "b-min", "b-max", "n", "helicity", "lf-medium", "z",
    "format", "kind", "x-min", "x-max",
];

fn pick<T: FromStr>(flag: Option<T>, cfg: &ConfigFile, key: &str, default: T) -> anyhow::Result<T>
where
    T::Err: std::fmt::Display,
{
    Ok(match flag {
        Some(v) => v,
        None => cfg.get(key)?.unwrap_or(default),
    })
}

pub fn format(common: &Common, cfg: &ConfigFile) -> anyhow::Result<Format> {
    if let Some(f) = common.format {
        return Ok(f);
    }
    match cfg.entries.get("format").map(String::as_str) {
        None | Some("csv") => Ok(Format::Csv),
        Some("json") => Ok(Format::Json),
        Some(other) => bail!("config key `format`: expected csv or json, got `{other}`"),
    }
}

/// Fully resolved scan parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub mbar: i32,
    pub theta_k: f64,
    pub wavelength: f64,
    pub b_min: f64,
    pub b_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn resolve(a: &BeamArgs, cfg: &ConfigFile) -> anyhow::Result<Self> {
        Ok(Self {
            mbar: pick(a.mbar, cfg, "mbar", 1)?,
            theta_k: pick(a.theta_k, cfg, "theta-k", 0.1)?,
            wavelength: pick(a.wavelength, cfg, "wavelength", 1.0)?,
            b_min: pick(a.b_min, cfg, "b-min", 0.0)?,
            b_max: pick(a.b_max, cfg, "b-max", 2.0)?,
            n: pick(a.n, cfg, "n", 400)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub grid: Grid,
    pub l_f: u32,
    pub helicity: Helicity,
}

impl ScanConfig {
    pub fn resolve(a: &ScanArgs, cfg: &ConfigFile) -> anyhow::Result<Self> {
        let hel: i32 = pick(a.helicity, cfg, "helicity", 1)?;
        Ok(Self {
            grid: Grid::resolve(&a.beam, cfg)?,
            l_f: pick(a.lf, cfg, "lf", 2)?,
            helicity: Helicity::from_sign(hel)
                .map_err(|_| anyhow!("helicity must be +1 or -1, got {hel}"))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StokesConfig {
    pub grid: Grid,
    pub l_f_medium: u32,
    pub z: Vec<f64>,
}

impl StokesConfig {
    pub fn resolve(a: &StokesArgs, cfg: &ConfigFile) -> anyhow::Result<Self> {
        let z = match &a.z {
            Some(z) => z.clone(),
            None => cfg.get_list("z")?.unwrap_or_else(|| vec![0.0]),
        };
        Ok(Self {
            grid: Grid::resolve(&a.beam, cfg)?,
            l_f_medium: pick(a.lf_medium, cfg, "lf-medium", 2)?,
            z,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParaxialConfig {
    pub kind: FormulaKind,
    pub mbar: i32,
    pub l_f: u32,
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl ParaxialConfig {
    pub fn resolve(a: &ParaxialArgs, cfg: &ConfigFile) -> anyhow::Result<Self> {
        let kind = match a.kind {
            Some(k) => k.into(),
            None => match cfg.entries.get("kind").map(String::as_str) {
                None | Some("cd") => FormulaKind::Cd,
                Some("a-lambda") => FormulaKind::ALambda,
                Some(other) => bail!("config key `kind`: expected cd or a-lambda, got `{other}`"),
            },
        };
        Ok(Self {
            kind,
            mbar: pick(a.mbar, cfg, "mbar", 1)?,
            l_f: pick(a.lf, cfg, "lf", 2)?,
            x_min: pick(a.x_min, cfg, "x-min", 0.0)?,
            x_max: pick(a.x_max, cfg, "x-max", 10.0)?,
            n: pick(a.n, cfg, "n", 101)?,
        })
    }
}
