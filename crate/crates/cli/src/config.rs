use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use planewave_core::SPEED_OF_LIGHT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Schrodinger,
    Dirac,
    HydrogenRadial,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Schrodinger => "schrodinger",
            Problem::Dirac => "dirac",
            Problem::HydrogenRadial => "hydrogen-radial",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputKind {
    ReportJson,
    AmplitudesCsv,
    MomdistCsv,
    StatesCsv,
}

impl OutputKind {
    pub fn file_name(self) -> &'static str {
        match self {
            OutputKind::ReportJson => "report.json",
            OutputKind::AmplitudesCsv => "amplitudes.csv",
            OutputKind::MomdistCsv => "momdist.csv",
            OutputKind::StatesCsv => "states.csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub dim: usize,
    pub n: usize,
    pub extent: f64,
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let bad = || CliError::Config(format!("grid: expected `dim,n,extent`, got `{text}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(Self {
            dim: parts[0].parse().map_err(|_| bad())?,
            n: parts[1].parse().map_err(|_| bad())?,
            extent: parts[2].parse().map_err(|_| bad())?,
        })
    }
}

/// A potential preset `name` or `name:key=value,...`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialSpec {
    pub name: String,
    pub params: BTreeMap<String, f64>,
}

// (name, problem, parameters with defaults)
const PRESETS: &[(&str, Problem, &[(&str, f64)])] = &[
    ("free", Problem::Schrodinger, &[]),
    ("constant", Problem::Schrodinger, &[("value", 0.0)]),
    ("harmonic", Problem::Schrodinger, &[("omega", 1.0)]),
    ("box", Problem::Schrodinger, &[("width", 1.0), ("height", 1e5)]),
    ("well", Problem::Schrodinger, &[("depth", 0.5), ("width", 2.0)]),
    ("soft-coulomb", Problem::Schrodinger, &[("eps", 1.0)]),
    ("dirac-free", Problem::Dirac, &[]),
    ("dirac-well", Problem::Dirac, &[("depth", 0.5), ("width", 2.0)]),
    ("dirac-constant-A", Problem::Dirac, &[("a", 1.0)]),
    ("coulomb", Problem::HydrogenRadial, &[]),
];

impl PotentialSpec {
    pub fn parse(text: &str, problem: Problem) -> Result<Self, CliError> {
        let (name, rest) = match text.split_once(':') {
            Some((n, r)) => (n.trim(), Some(r)),
            None => (text.trim(), None),
        };
        let (_, owner, defaults) = PRESETS
            .iter()
            .find(|(n, _, _)| *n == name)
            .ok_or_else(|| {
                let known: Vec<&str> = PRESETS.iter().map(|p| p.0).collect();
                CliError::Config(format!(
                    "potential: unknown preset `{name}` (known: {})",
                    known.join(", ")
                ))
            })?;
        if *owner != problem {
            return Err(CliError::Config(format!(
                "potential: preset `{name}` belongs to problem `{owner}`, not `{problem}`"
            )));
        }
        let mut params: BTreeMap<String, f64> =
            defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for pair in rest.into_iter().flat_map(|r| r.split(',')).filter(|s| !s.trim().is_empty()) {
            let (key, value) = pair.split_once('=').ok_or_else(|| {
                CliError::Config(format!("potential: expected `key=value`, got `{pair}`"))
            })?;
            let key = key.trim();
            if !params.contains_key(key) {
                let expected: Vec<&str> = defaults.iter().map(|d| d.0).collect();
                return Err(CliError::Config(format!(
                    "potential `{name}`: unknown parameter `{key}` (expected: {})",
                    if expected.is_empty() { "none".to_string() } else { expected.join(", ") }
                )));
            }
            let value: f64 = value.trim().parse().map_err(|_| {
                CliError::Config(format!("potential `{name}`: parameter `{key}` is not a number"))
            })?;
            params.insert(key.to_string(), value);
        }
        Ok(Self {
            name: name.to_string(),
            params,
        })
    }

    pub fn param(&self, key: &str) -> f64 {
        self.params[key]
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

/// Structured config file; every key optional, unknown keys rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub problem: Option<Problem>,
    pub potential: Option<String>,
    pub grid: Option<String>,
    pub mass: Option<f64>,
    pub charge: Option<f64>,
    pub c: Option<f64>,
    pub count: Option<usize>,
    pub outputs: Option<Vec<OutputKind>>,
    pub out_dir: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("config {}: {}", path.display(), e.message())))
    }
}

/// Run options shared by `solve`, `verify` and `momdist`.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub problem: Option<Problem>,
    /// Preset as `name` or `name:key=value,...`.
    #[arg(long)]
    pub potential: Option<String>,
    /// `dim,n,extent`; for hydrogen-radial `1,n_grid,r_max`.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long)]
    pub charge: Option<f64>,
    /// Speed of light (atomic units).
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Artifacts to write (comma separated or repeated).
    #[arg(long = "output", value_enum, value_delimiter = ',')]
    pub outputs: Vec<OutputKind>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Fully resolved run configuration, echoed into reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub problem: Problem,
    #[serde(serialize_with = "as_display")]
    pub potential: PotentialSpec,
    pub grid: GridSpec,
    pub mass: f64,
    pub charge: f64,
    pub c: f64,
    pub count: usize,
    pub outputs: Vec<OutputKind>,
    pub out_dir: PathBuf,
    pub seed: u64,
}

fn as_display<S: serde::Serializer>(v: &PotentialSpec, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl RunConfig {
    /// Merge flags over the config file over defaults; `default_problem`
    /// applies when neither names a problem.
    pub fn resolve(args: &RunArgs, default_problem: Problem) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let problem = args.problem.or(file.problem).unwrap_or(default_problem);
        let (potential, grid, count) = match problem {
            Problem::Schrodinger => ("harmonic:omega=1", "1,128,20", 10),
            Problem::Dirac => ("dirac-well:depth=0.5,width=2", "1,128,20", 4),
            Problem::HydrogenRadial => ("coulomb", "1,2048,40", 1),
        };
        let potential = args.potential.clone().or(file.potential).unwrap_or_else(|| potential.into());
        let grid = args.grid.clone().or(file.grid).unwrap_or_else(|| grid.into());
        let mut outputs = if args.outputs.is_empty() {
            file.outputs.unwrap_or_else(|| vec![OutputKind::ReportJson])
        } else {
            args.outputs.clone()
        };
        outputs.sort();
        outputs.dedup();
        let cfg = Self {
            problem,
            potential: PotentialSpec::parse(&potential, problem)?,
            grid: GridSpec::parse(&grid)?,
            mass: args.mass.or(file.mass).unwrap_or(1.0),
            charge: args.charge.or(file.charge).unwrap_or(-1.0),
            c: args.c.or(file.c).unwrap_or(SPEED_OF_LIGHT),
            count: args.count.or(file.count).unwrap_or(count),
            outputs,
            out_dir: args.out_dir.clone().or(file.out_dir).unwrap_or_else(|| PathBuf::from(".")),
            seed: args.seed.or(file.seed).unwrap_or(0),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let positive = |key: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(CliError::Config(format!("{key} must be positive and finite, got {v}")))
            }
        };
        positive("mass", self.mass)?;
        positive("c", self.c)?;
        if !self.charge.is_finite() {
            return Err(CliError::Config(format!("charge must be finite, got {}", self.charge)));
        }
        if self.count == 0 {
            return Err(CliError::Config("count must be at least 1".into()));
        }
        if self.problem == Problem::HydrogenRadial && self.mass != 1.0 {
            return Err(CliError::Config(
                "mass: hydrogen-radial is solved for the electron mass (1)".into(),
            ));
        }
        if self.problem != Problem::HydrogenRadial && self.outputs.contains(&OutputKind::MomdistCsv) {
            return Err(CliError::Config(
                "outputs: momdist-csv requires problem hydrogen-radial".into(),
            ));
        }
        if matches!(self.problem, Problem::Dirac | Problem::HydrogenRadial) && self.grid.dim != 1 {
            return Err(CliError::Config(format!(
                "grid: problem `{}` needs a 1D grid, got dim {}",
                self.problem, self.grid.dim
            )));
        }
        Ok(())
    }
}
