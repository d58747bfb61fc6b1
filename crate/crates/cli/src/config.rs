//! Run configuration: command-line flags layered over an optional flat
//! `key = value` file whose keys are the long flag names.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "nodoid",
    version,
    about = "Steady states of a two-grain thin film with a hole"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Audit the constraints at one (A, sigma)
    Check(Flags),
    /// Emit the meridian profile of one steady state
    Profile(Flags),
    /// Trace the A-sigma branch over an A range
    Trace(Flags),
    /// Fit the slope of the theta_c = pi branch near A = 1
    Asym(Flags),
}

impl Command {
    pub fn kind(&self) -> Kind {
        match self {
            Command::Check(_) => Kind::Check,
            Command::Profile(_) => Kind::Profile,
            Command::Trace(_) => Kind::Trace,
            Command::Asym(_) => Kind::Asym,
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Command::Check(f) | Command::Profile(f) | Command::Trace(f) | Command::Asym(f) => f,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Check,
    Profile,
    Trace,
    Asym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Dihedral angle beta, in (pi/2, pi)
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Tension ratio m; beta = arccos(-m/2)
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    /// Contact angle theta_c, in (0, pi]
    #[arg(long = "theta-c", allow_hyphen_values = true)]
    pub theta_c: Option<f64>,
    /// Catenoid neck radius A
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Grain-boundary arclength sigma
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[arg(long = "A-min", allow_hyphen_values = true)]
    pub a_min: Option<f64>,
    #[arg(long = "A-max", allow_hyphen_values = true)]
    pub a_max: Option<f64>,
    /// Number of A intervals (trace, asym)
    #[arg(long)]
    pub steps: Option<usize>,
    /// Samples per curve (profile)
    #[arg(long)]
    pub samples: Option<usize>,
    /// Solver residual tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Read beta and theta_c in degrees
    #[arg(long)]
    pub deg: bool,
}

/// Fully resolved parameters, angles in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kind: Kind,
    pub beta: f64,
    /// `Some` when given through `--m` (or `m` in the file).
    pub m: Option<f64>,
    pub theta_c: Option<f64>,
    pub a: Option<f64>,
    pub sigma: Option<f64>,
    pub a_min: Option<f64>,
    pub a_max: Option<f64>,
    pub steps: usize,
    pub samples: usize,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub const MIN_SAMPLES: usize = 16;
const BETA_M_AGREEMENT: f64 = 1e-9;

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key = value", i + 1))
        })?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key {key:?}",
                i + 1
            )));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

const KNOWN_KEYS: [&str; 12] = [
    "beta", "m", "theta-c", "A", "sigma", "A-min", "A-max", "steps", "samples", "tol", "format",
    "deg",
];

fn file_value<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    map.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| CliError::Usage(format!("config: bad value for {key}: {v:?}")))
        })
        .transpose()
}

impl RunConfig {
    /// Layers `flags` over the file named by `--config`, if any.
    pub fn resolve(kind: Kind, flags: &Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                parse_config_file(&text)?
            }
            None => BTreeMap::new(),
        };
        Self::from_layers(kind, flags, &file)
    }

    pub fn from_layers(
        kind: Kind,
        flags: &Flags,
        file: &BTreeMap<String, String>,
    ) -> Result<Self, CliError> {
        let deg = flags.deg || file_value::<bool>(file, "deg")?.unwrap_or(false);
        let angle = |x: f64| if deg { x.to_radians() } else { x };
        let beta = flags.beta.or(file_value(file, "beta")?).map(angle);
        let m = flags.m.or(file_value(file, "m")?);
        let theta_c = flags.theta_c.or(file_value(file, "theta-c")?).map(angle);
        let format_text: Option<String> = file_value(file, "format")?;
        let format = match (flags.format, format_text) {
            (Some(f), _) => f,
            (None, Some(t)) => Format::from_str(&t, true)
                .map_err(|_| CliError::Usage(format!("config: bad format {t:?}")))?,
            (None, None) => match kind {
                Kind::Profile | Kind::Trace => Format::Csv,
                Kind::Check | Kind::Asym => Format::Json,
            },
        };

        let beta = match (beta, m) {
            (Some(b), Some(m)) => {
                let from_m = (-0.5 * m).acos();
                if (b - from_m).abs() > BETA_M_AGREEMENT {
                    return Err(CliError::Usage(format!(
                        "beta = {b} and m = {m} disagree: arccos(-m/2) = {from_m}"
                    )));
                }
                b
            }
            (Some(b), None) => b,
            (None, Some(m)) => {
                if !(m.is_finite() && (0.0..2.0).contains(&m)) {
                    return Err(CliError::Usage(format!("m = {m} outside [0, 2)")));
                }
                (-0.5 * m).acos()
            }
            (None, None) => return Err(CliError::Usage("one of --beta or --m is required".into())),
        };

        let cfg = Self {
            kind,
            beta,
            m,
            theta_c,
            a: flags.a.or(file_value(file, "A")?),
            sigma: flags.sigma.or(file_value(file, "sigma")?),
            a_min: flags.a_min.or(file_value(file, "A-min")?),
            a_max: flags.a_max.or(file_value(file, "A-max")?),
            steps: flags
                .steps
                .or(file_value(file, "steps")?)
                .unwrap_or(match kind {
                    Kind::Asym => 19,
                    _ => 50,
                }),
            samples: flags
                .samples
                .or(file_value(file, "samples")?)
                .unwrap_or(400),
            tol: flags.tol.or(file_value(file, "tol")?).unwrap_or(1e-11),
            format,
            out: flags.out.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.samples < MIN_SAMPLES {
            return Err(CliError::Usage(format!(
                "samples must be at least {MIN_SAMPLES}"
            )));
        }
        if self.steps == 0 {
            return Err(CliError::Usage("steps must be positive".into()));
        }
        if !(self.tol > 0.0) {
            return Err(CliError::Usage("tol must be positive".into()));
        }
        match self.kind {
            Kind::Check if self.a.is_none() || self.sigma.is_none() => {
                Err(CliError::Usage("check needs --A and --sigma".into()))
            }
            Kind::Profile if self.a.is_none() => Err(CliError::Usage("profile needs --A".into())),
            Kind::Trace if self.a_min.is_none() || self.a_max.is_none() => {
                Err(CliError::Usage("trace needs --A-min and --A-max".into()))
            }
            Kind::Trace if self.theta_c.is_none() => {
                Err(CliError::Usage("trace needs --theta-c".into()))
            }
            Kind::Asym if self.theta_c.is_some_and(|t| t != PI) => {
                Err(CliError::Usage("asym works on theta_c = pi only".into()))
            }
            Kind::Check | Kind::Asym if self.format == Format::Svg => Err(CliError::Usage(
                "svg output is available for profile and trace".into(),
            )),
            _ => Ok(()),
        }
    }
}
