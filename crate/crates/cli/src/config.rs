//! Flags, config files, and their resolution into a [`RunConfig`].
//!
//! A config file holds `key = value` lines using the long flag names without
//! the leading dashes. Flags given on the command line override it.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use nullframe::models::parse_key_values;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Flat,
    Lie,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveName {
    C1,
    C2,
    Lie,
    CustomSamplesFile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

macro_rules! value_enum_text {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let v = self.to_possible_value().expect("no skipped variants");
                f.write_str(v.get_name())
            }
        }

        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                <$t as ValueEnum>::from_str(s, true)
            }
        }
    )*};
}

value_enum_text!(ModelName, CurveName, OutputFormat);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandName {
    VerifyStructure,
    Frame,
    Curvatures,
    SolveB,
    LieRep,
    Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check the structure axioms of a model and classify it.
    VerifyStructure,
    /// Distinguished Frenet frame, curvatures and Cartan check along a curve.
    Frame {
        /// Samples file for `--curve custom-samples-file`.
        file: Option<PathBuf>,
    },
    /// Curvatures h, k1, k2, closed-form cross-check and geodesic test.
    Curvatures {
        /// Samples file for `--curve custom-samples-file`.
        file: Option<PathBuf>,
    },
    /// Integrate the b ODE and compare with the closed form.
    SolveB,
    /// Matrix representation of the Lie group example.
    LieRep,
    /// Run every check on the configured parameters.
    Report,
}

#[derive(Debug, Parser)]
#[command(name = "nullframe", version, about = "Frenet and Cartan frames of slant null curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub model: Option<ModelName>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c2: Option<f64>,

    #[arg(long, global = true)]
    pub curve: Option<CurveName>,
    #[arg(long = "samples-file", global = true)]
    pub samples_file: Option<PathBuf>,
    /// Slant constant a = eta(C').
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub u: Option<f64>,
    /// Position offsets "o1,o2,o3".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub offsets: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b0: Option<f64>,
    #[arg(long, global = true)]
    pub step: Option<f64>,
    #[arg(long = "theta-c", global = true, allow_hyphen_values = true)]
    pub theta_c: Option<f64>,
    #[arg(long = "theta-phic", global = true, allow_hyphen_values = true)]
    pub theta_phic: Option<f64>,

    /// Group parameter for `lie-rep`; repeatable.
    #[arg(long = "t", global = true, allow_hyphen_values = true)]
    pub t: Vec<f64>,

    #[arg(long = "tol-structure", global = true)]
    pub tol_structure: Option<f64>,
    #[arg(long = "tol-classify", global = true)]
    pub tol_classify: Option<f64>,
    #[arg(long = "tol-cartan", global = true)]
    pub tol_cartan: Option<f64>,
    #[arg(long = "tol-geodesic", global = true)]
    pub tol_geodesic: Option<f64>,

    #[arg(long, global = true)]
    pub output: Option<OutputFormat>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub structure: f64,
    pub classify: f64,
    pub cartan: f64,
    pub geodesic: f64,
}

/// Fully resolved settings for one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandName,
    pub model: ModelName,
    /// `true` when the model was named by a flag or the config file.
    pub model_explicit: bool,
    pub c1: f64,
    pub c2: f64,
    pub c2_explicit: bool,
    pub curve: CurveName,
    pub samples_file: Option<PathBuf>,
    pub a: f64,
    pub a_explicit: bool,
    pub u: f64,
    pub offsets: [f64; 3],
    pub t0: f64,
    pub t1: f64,
    pub samples: usize,
    pub b0: f64,
    pub step: f64,
    pub theta_c: f64,
    pub theta_phic: f64,
    pub t_values: Vec<f64>,
    pub tol: Tolerances,
    pub output: OutputFormat,
    pub out: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "model",
    "c1",
    "c2",
    "curve",
    "samples-file",
    "a",
    "u",
    "offsets",
    "t0",
    "t1",
    "samples",
    "b0",
    "step",
    "theta-c",
    "theta-phic",
    "t",
    "tol-structure",
    "tol-classify",
    "tol-cartan",
    "tol-geodesic",
    "output",
    "out",
];

struct Layer {
    file: BTreeMap<String, String>,
}

impl Layer {
    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::config(format!("config key `{key}`: cannot parse `{raw}`"))),
        }
    }
}

fn parse_offsets(raw: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let bad = || CliError::config(format!("offsets must be three comma-separated numbers, got `{raw}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("{name} must be positive, got {v}")))
    }
}

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<Self, CliError> {
        let file = match &cli.config {
            None => BTreeMap::new(),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
                let map = parse_key_values(&text).map_err(CliError::from)?;
                if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
                    return Err(CliError::config(format!("unknown config key `{k}`")));
                }
                map
            }
        };
        let layer = Layer { file };
        let (command, file_arg) = match cli.command {
            Command::VerifyStructure => (CommandName::VerifyStructure, None),
            Command::Frame { file } => (CommandName::Frame, file),
            Command::Curvatures { file } => (CommandName::Curvatures, file),
            Command::SolveB => (CommandName::SolveB, None),
            Command::LieRep => (CommandName::LieRep, None),
            Command::Report => (CommandName::Report, None),
        };

        let model_opt = layer.pick(cli.model, "model")?;
        let curve = layer.pick(cli.curve, "curve")?.unwrap_or(CurveName::C1);
        let c1 = layer.pick(cli.c1, "c1")?.unwrap_or(1.0);
        let c2_opt = layer.pick(cli.c2, "c2")?;
        let lie_curve = matches!(command, CommandName::LieRep)
            || (curve == CurveName::Lie && matches!(command, CommandName::Frame | CommandName::Curvatures));
        let a_opt = layer.pick(cli.a, "a")?;
        let a_default = if lie_curve { 2.0 } else { 1.0 };
        let (t0_default, t1_default) = if command == CommandName::SolveB { (0.0, 1.0) } else { (-1.0, 1.0) };

        let offsets = match cli.offsets.or_else(|| layer.file.get("offsets").cloned()) {
            None => [0.0; 3],
            Some(raw) => parse_offsets(&raw)?,
        };
        let t_values = if !cli.t.is_empty() {
            cli.t
        } else if let Some(raw) = layer.file.get("t") {
            raw.split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::config(format!("config key `t`: cannot parse `{raw}`")))?
        } else {
            Vec::new()
        };
        let samples_file = file_arg.or(cli.samples_file).or_else(|| layer.file.get("samples-file").map(PathBuf::from));
        let default_output = match command {
            CommandName::VerifyStructure | CommandName::Report => OutputFormat::Text,
            CommandName::LieRep => OutputFormat::Json,
            _ => OutputFormat::Csv,
        };

        let cfg = RunConfig {
            command,
            model: model_opt.unwrap_or(ModelName::Flat),
            model_explicit: model_opt.is_some(),
            c1,
            c2: c2_opt.unwrap_or(c1),
            c2_explicit: c2_opt.is_some(),
            curve,
            samples_file,
            a: a_opt.unwrap_or(a_default),
            a_explicit: a_opt.is_some(),
            u: layer.pick(cli.u, "u")?.unwrap_or(0.0),
            offsets,
            t0: layer.pick(cli.t0, "t0")?.unwrap_or(t0_default),
            t1: layer.pick(cli.t1, "t1")?.unwrap_or(t1_default),
            samples: layer.pick(cli.samples, "samples")?.unwrap_or(201),
            b0: layer.pick(cli.b0, "b0")?.unwrap_or(0.0),
            step: positive("step", layer.pick(cli.step, "step")?.unwrap_or(1e-3))?,
            theta_c: layer.pick(cli.theta_c, "theta-c")?.unwrap_or(0.0),
            theta_phic: layer.pick(cli.theta_phic, "theta-phic")?.unwrap_or(0.0),
            t_values,
            tol: Tolerances {
                structure: positive("tol-structure", layer.pick(cli.tol_structure, "tol-structure")?.unwrap_or(1e-10))?,
                classify: positive("tol-classify", layer.pick(cli.tol_classify, "tol-classify")?.unwrap_or(1e-8))?,
                cartan: positive("tol-cartan", layer.pick(cli.tol_cartan, "tol-cartan")?.unwrap_or(1e-6))?,
                geodesic: positive("tol-geodesic", layer.pick(cli.tol_geodesic, "tol-geodesic")?.unwrap_or(1e-8))?,
            },
            output: layer.pick(cli.output, "output")?.unwrap_or(default_output),
            out: cli.out.or_else(|| layer.file.get("out").map(PathBuf::from)),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let finite = [self.c1, self.c2, self.a, self.u, self.t0, self.t1, self.b0, self.theta_c, self.theta_phic];
        if finite.iter().chain(&self.offsets).chain(&self.t_values).any(|v| !v.is_finite()) {
            return Err(CliError::config("numeric settings must be finite"));
        }
        if !(self.t0 < self.t1) {
            return Err(CliError::config(format!("need t0 < t1, got t0 = {}, t1 = {}", self.t0, self.t1)));
        }
        if self.samples < 3 {
            return Err(CliError::config(format!("samples must be at least 3, got {}", self.samples)));
        }
        Ok(())
    }
}
