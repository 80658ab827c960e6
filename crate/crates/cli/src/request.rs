//! Turning flags and an optional `key = value` config file into a model
//! template and solve settings.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use qes_core::models::{ModelKind, ModelParameters, SolveOptions};
use qes_core::oracle::{RadialGrid, Spacing};

use crate::CliError;

const PARAMETER_KEYS: [&str; 14] = [
    "alpha", "beta", "gamma", "delta", "kappa", "lambda", "mu", "xi", "tau", "omega", "epsilon", "sigma", "chi", "l",
];

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// non-polynomial | screened-coulomb | singular-power | singular-anharmonic
    #[arg(long)]
    pub model: Option<String>,
    /// Angular momentum quantum number
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub chi: Option<f64>,
    /// File of `key = value` lines (model, n, l and parameter names); flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Upper end of the kappa root scan (screened-coulomb only)
    #[arg(long)]
    pub kappa_upper: Option<f64>,
    /// Number of kappa scan points
    #[arg(long, default_value_t = 10_000)]
    pub scan_points: usize,
}

impl ModelArgs {
    fn flag(&self, name: &str) -> Option<f64> {
        match name {
            "alpha" => self.alpha,
            "beta" => self.beta,
            "gamma" => self.gamma,
            "delta" => self.delta,
            "kappa" => self.kappa,
            "lambda" => self.lambda,
            "mu" => self.mu,
            "xi" => self.xi,
            "tau" => self.tau,
            "omega" => self.omega,
            "epsilon" => self.epsilon,
            "sigma" => self.sigma,
            "chi" => self.chi,
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Uniform,
    Log,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub grid_count: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<SpacingArg>,
}

impl GridArgs {
    fn any(&self) -> bool {
        self.r_min.is_some() || self.r_max.is_some() || self.grid_count.is_some() || self.spacing.is_some()
    }

    /// The requested grid, with unset fields taken from `default`. `None`
    /// when no grid flag was given.
    pub fn resolve(&self, default: impl FnOnce() -> Option<RadialGrid>) -> Result<Option<RadialGrid>, CliError> {
        if !self.any() {
            return Ok(None);
        }
        let base = default();
        let pick = |v: Option<f64>, d: Option<f64>, name: &str| {
            v.or(d).ok_or_else(|| CliError::Usage(format!("--{name} is required here")))
        };
        let r_min = pick(self.r_min, base.map(|g| g.r_min()), "r-min")?;
        let r_max = pick(self.r_max, base.map(|g| g.r_max()), "r-max")?;
        let count = self
            .grid_count
            .or(base.map(|g| g.count()))
            .unwrap_or(qes_core::oracle::DEFAULT_GRID_POINTS);
        let spacing = match self.spacing {
            Some(SpacingArg::Log) => Spacing::Log,
            Some(SpacingArg::Uniform) | None => Spacing::Uniform,
        };
        RadialGrid::new(r_min, r_max, count, spacing)
            .map(Some)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// Everything needed to call the solver.
#[derive(Debug, Clone)]
pub struct Request {
    pub kind: ModelKind,
    pub l: u32,
    /// `None` when neither the flag nor the config file sets it.
    pub n: Option<usize>,
    pub fixed: BTreeMap<&'static str, f64>,
    pub options: SolveOptions,
}

impl Request {
    pub fn require_n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::Usage("--n is required".into()))
    }

    /// Solver template from the fixed parameters; invalid values are a usage
    /// error.
    pub fn template(&self) -> Result<ModelParameters, CliError> {
        ModelParameters::template(self.kind, self.l, |name| self.fixed.get(name).copied())
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Template with one fixed parameter replaced.
    pub fn template_with(&self, name: &str, value: f64) -> qes_core::Result<ModelParameters> {
        ModelParameters::template(self.kind, self.l, |k| {
            if k == name {
                Some(value)
            } else {
                self.fixed.get(k).copied()
            }
        })
    }
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key = value", path.display(), i + 1)))?;
        let key = key.trim().to_string();
        if key != "model" && key != "n" && !PARAMETER_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("{}:{}: unknown key '{key}'", path.display(), i + 1)));
        }
        if entries.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::Usage(format!("{}:{}: duplicate key '{key}'", path.display(), i + 1)));
        }
    }
    Ok(entries)
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value '{value}' for {key}")))
}

/// Merges config file and flags. The tuned parameter must not be given: it
/// is what the solver determines. `swept` names a fixed parameter that may be
/// left out because the caller supplies it.
pub fn build(args: &ModelArgs, n_flag: Option<usize>, swept: Option<&str>) -> Result<Request, CliError> {
    let config = match &args.config {
        Some(p) => read_config(p)?,
        None => BTreeMap::new(),
    };
    let model = args
        .model
        .clone()
        .or_else(|| config.get("model").cloned())
        .ok_or_else(|| CliError::Usage("--model is required".into()))?;
    let kind: ModelKind = model.parse().map_err(|_| {
        let names: Vec<_> = ModelKind::ALL.iter().map(|k| k.name()).collect();
        CliError::Usage(format!("unknown model '{model}' (expected one of {})", names.join(", ")))
    })?;
    let l = match (args.l, config.get("l")) {
        (Some(l), _) => l,
        (None, Some(v)) => parse("l", v)?,
        (None, None) => return Err(CliError::Usage("--l is required".into())),
    };
    let n = match (n_flag, config.get("n")) {
        (Some(n), _) => Some(n),
        (None, Some(v)) => Some(parse("n", v)?),
        (None, None) => None,
    };

    let mut fixed = BTreeMap::new();
    for name in PARAMETER_KEYS.iter().filter(|&&k| k != "l") {
        let value = match (args.flag(name), config.get(*name)) {
            (Some(v), _) => Some(v),
            (None, Some(v)) => Some(parse(name, v)?),
            (None, None) => None,
        };
        let Some(value) = value else { continue };
        if *name == kind.tuned_parameter() {
            return Err(CliError::Usage(format!(
                "{name} is determined by the solver for {kind} and cannot be set"
            )));
        }
        if !kind.parameter_names().contains(name) {
            return Err(CliError::Usage(format!("{kind} has no parameter '{name}'")));
        }
        fixed.insert(*name, value);
    }
    for name in kind.fixed_parameter_names() {
        if !fixed.contains_key(name) && swept != Some(name) {
            return Err(CliError::Usage(format!("--{name} is required for {kind}")));
        }
    }

    let options = SolveOptions {
        kappa_upper: args.kappa_upper,
        scan_points: args.scan_points,
    };
    if options.scan_points < 2 {
        return Err(CliError::Usage("--scan-points must be at least 2".into()));
    }
    Ok(Request {
        kind,
        l,
        n,
        fixed,
        options,
    })
}
