//! Option resolution: command-line flags, then the `--config` TOML file,
//! then built-in defaults. The result is a [`RunConfig`], which is also what
//! a manifest records and what `replay` re-executes.

use std::path::{Path, PathBuf};

use lifshitz::analysis::FeatureRequest;
use lifshitz::constants::DEFAULT_TEMPERATURE;
use lifshitz::lifshitz::{QuadratureSpec, SumSpec};
use lifshitz::materials::shipped;
use serde::{Deserialize, Serialize};

use crate::args::{
    CommonArgs, FeaturesArgs, Format, MaterialsArgs, SpectralArgs, SweepArgs, SystemArgs,
};
use crate::error::{CliError, Result};

const NM: f64 = 1e-9;

/// Keys accepted in a `--config` file. Distances are in nm, frequencies in
/// rad/s, radii in m, as on the command line.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub m1: Option<String>,
    pub m2: Option<String>,
    pub m3: Option<String>,
    pub temperature: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_n: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
    pub plot: Option<bool>,
    pub materials: Option<Vec<String>>,
    pub xi_min: Option<f64>,
    pub xi_max: Option<f64>,
    pub points: Option<usize>,
    pub separations: Option<Vec<f64>>,
    pub d_min: Option<f64>,
    pub d_max: Option<f64>,
    pub points_per_decade: Option<usize>,
    pub components: Option<bool>,
    pub nonretarded: Option<bool>,
    pub entropic: Option<bool>,
    pub radius: Option<f64>,
    pub crossover_bracket: Option<[f64; 2]>,
    pub max_bracket: Option<[f64; 2]>,
    pub tm_zero_bracket: Option<[f64; 2]>,
    pub tol: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<(Self, PathBuf)> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let config: FileConfig = toml::from_str(&text)
            .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e.message())))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((config, dir))
    }
}

/// Fully resolved options of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// K
    pub temperature: f64,
    pub rel_tol: f64,
    pub max_n: usize,
    pub format: Format,
    pub workers: usize,
    pub plot: bool,
    pub task: Task,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Task {
    Materials {
        materials: Vec<String>,
        xi_min: f64,
        xi_max: f64,
        points: usize,
    },
    Spectral {
        system: [String; 3],
        separations_nm: Vec<f64>,
    },
    Sweep {
        system: [String; 3],
        d_min_nm: f64,
        d_max_nm: f64,
        points_per_decade: usize,
        components: bool,
        nonretarded: bool,
        entropic: bool,
        radius_m: Option<f64>,
    },
    Features {
        system: [String; 3],
        crossover_bracket_nm: [f64; 2],
        max_bracket_nm: [f64; 2],
        tm_zero_bracket_nm: [f64; 2],
        tol_nm: f64,
        radius_m: Option<f64>,
    },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Materials { .. } => "materials",
            Task::Spectral { .. } => "spectral",
            Task::Sweep { .. } => "sweep",
            Task::Features { .. } => "features",
        }
    }

    /// Material specifications in slot order.
    pub fn material_specs(&self) -> Vec<String> {
        match self {
            Task::Materials { materials, .. } => materials.clone(),
            Task::Spectral { system, .. }
            | Task::Sweep { system, .. }
            | Task::Features { system, .. } => system.to_vec(),
        }
    }
}

impl RunConfig {
    pub fn quadrature(&self) -> lifshitz::Result<QuadratureSpec> {
        let d = QuadratureSpec::default();
        QuadratureSpec::new(self.rel_tol, d.abs_tol, d.max_subdivisions)
    }

    pub fn sum(&self) -> lifshitz::Result<SumSpec> {
        let d = SumSpec::default();
        SumSpec::new(d.term_rel_tol, d.guard_window, self.max_n)
    }
}

/// Resolved run plus the output directory, which is not part of what a
/// replay reproduces.
pub struct Resolved {
    pub run: RunConfig,
    pub out: PathBuf,
}

struct Layers {
    file: FileConfig,
    file_dir: PathBuf,
}

impl Layers {
    fn new(common: &CommonArgs) -> Result<Self> {
        match &common.config {
            Some(path) => {
                let (file, file_dir) = FileConfig::load(path)?;
                Ok(Self { file, file_dir })
            }
            None => Ok(Self {
                file: FileConfig::default(),
                file_dir: PathBuf::new(),
            }),
        }
    }

    /// Material names from the config file are resolved against its directory.
    fn material(&self, flag: &Option<String>, from_file: &Option<String>, default: &str) -> String {
        if let Some(spec) = flag {
            return spec.clone();
        }
        match from_file {
            Some(spec) => self.relative_to_file(spec),
            None => default.to_string(),
        }
    }

    fn relative_to_file(&self, spec: &str) -> String {
        let path = Path::new(spec);
        if is_builtin(spec) || path.is_absolute() {
            spec.to_string()
        } else {
            self.file_dir.join(path).to_string_lossy().into_owned()
        }
    }

    fn system(&self, args: &SystemArgs) -> [String; 3] {
        [
            self.material(&args.m1, &self.file.m1, "au"),
            self.material(&args.m2, &self.file.m2, "bromobenzene"),
            self.material(&args.m3, &self.file.m3, "sio2"),
        ]
    }

    fn common(&self, args: &CommonArgs, task: Task) -> Resolved {
        let f = &self.file;
        let workers = args
            .workers
            .or(f.workers)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        let out = args
            .out
            .clone()
            .or_else(|| f.out.as_ref().map(|o| self.file_dir.join(o)))
            .unwrap_or_else(|| PathBuf::from("out"));
        Resolved {
            run: RunConfig {
                temperature: args
                    .temperature
                    .or(f.temperature)
                    .unwrap_or(DEFAULT_TEMPERATURE),
                rel_tol: args
                    .rel_tol
                    .or(f.rel_tol)
                    .unwrap_or(QuadratureSpec::default().rel_tol),
                max_n: args
                    .max_n
                    .or(f.max_n)
                    .unwrap_or(SumSpec::default().hard_max_n),
                format: args.format.or(f.format).unwrap_or(Format::Both),
                workers,
                plot: args.plot || f.plot.unwrap_or(false),
                task,
            },
            out,
        }
    }
}

/// True when `spec` names a bundled material and no file of that name exists.
pub fn is_builtin(spec: &str) -> bool {
    shipped::by_name(spec).is_some() && !Path::new(spec).exists()
}

fn bracket(
    name: &str,
    flag: &Option<Vec<f64>>,
    from_file: Option<[f64; 2]>,
    default: (f64, f64),
) -> Result<[f64; 2]> {
    match flag {
        Some(v) if v.len() == 2 => Ok([v[0], v[1]]),
        Some(v) => Err(CliError::Input(format!(
            "--{name} takes two values LO,HI in nm, got {}",
            v.len()
        ))),
        None => Ok(from_file.unwrap_or([default.0 / NM, default.1 / NM])),
    }
}

pub fn materials(args: &MaterialsArgs) -> Result<Resolved> {
    let layers = Layers::new(&args.common)?;
    let f = &layers.file;
    let materials = if !args.materials.is_empty() {
        args.materials.clone()
    } else if let Some(list) = &f.materials {
        list.iter().map(|m| layers.relative_to_file(m)).collect()
    } else {
        vec!["au".into(), "sio2".into(), "bromobenzene".into()]
    };
    let task = Task::Materials {
        materials,
        xi_min: args.xi_min.or(f.xi_min).unwrap_or(1e13),
        xi_max: args.xi_max.or(f.xi_max).unwrap_or(1e18),
        points: args.points.or(f.points).unwrap_or(200),
    };
    Ok(layers.common(&args.common, task))
}

pub fn spectral(args: &SpectralArgs) -> Result<Resolved> {
    let layers = Layers::new(&args.common)?;
    let separations_nm = if !args.separations.is_empty() {
        args.separations.clone()
    } else {
        layers
            .file
            .separations
            .clone()
            .unwrap_or_else(|| vec![2.0, 10.0])
    };
    let task = Task::Spectral {
        system: layers.system(&args.system),
        separations_nm,
    };
    Ok(layers.common(&args.common, task))
}

pub fn sweep(args: &SweepArgs) -> Result<Resolved> {
    let layers = Layers::new(&args.common)?;
    let f = &layers.file;
    let task = Task::Sweep {
        system: layers.system(&args.system),
        d_min_nm: args.d_min.or(f.d_min).unwrap_or(1.0),
        d_max_nm: args.d_max.or(f.d_max).unwrap_or(1000.0),
        points_per_decade: args.points_per_decade.or(f.points_per_decade).unwrap_or(16),
        components: args.components || f.components.unwrap_or(false),
        nonretarded: args.nonretarded || f.nonretarded.unwrap_or(false),
        entropic: args.entropic || f.entropic.unwrap_or(false),
        radius_m: args.radius.or(f.radius),
    };
    Ok(layers.common(&args.common, task))
}

pub fn features(args: &FeaturesArgs) -> Result<Resolved> {
    let layers = Layers::new(&args.common)?;
    let f = &layers.file;
    let defaults = FeatureRequest::default();
    let task = Task::Features {
        system: layers.system(&args.system),
        crossover_bracket_nm: bracket(
            "crossover-bracket",
            &args.crossover_bracket,
            f.crossover_bracket,
            defaults.crossover_bracket,
        )?,
        max_bracket_nm: bracket(
            "max-bracket",
            &args.max_bracket,
            f.max_bracket,
            defaults.max_repulsion_bracket,
        )?,
        tm_zero_bracket_nm: bracket(
            "tm-zero-bracket",
            &args.tm_zero_bracket,
            f.tm_zero_bracket,
            defaults.tm_zero_bracket,
        )?,
        tol_nm: args.tol.or(f.tol).unwrap_or(defaults.tol_d / NM),
        radius_m: args.radius.or(f.radius),
    };
    Ok(layers.common(&args.common, task))
}
