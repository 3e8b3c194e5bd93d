//! The replayable commands. Each one computes its complete output in memory
//! so that a run and its replay go through the same code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use s2contact::analogs::{cm_shift_curve, AnalogGeometry, ShiftedCondition, TorusSumSpec};
use s2contact::halo::{mc_propagate, predict_spectrum, FitTask, HaloSystem, SystemFit};
use s2contact::quantization::{Extrapolation, Method, DEFAULT_TOLERANCE};
use s2contact::{Band, Error};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::output::{format_float, round_json};

/// Directory searched for `<key>.toml` before the built-in systems.
pub const DATA_DIR_ENV: &str = "S2CONTACT_DATA_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    /// Two particles in an isotropic harmonic trap.
    Ho,
    /// Two particles on a flat torus.
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodKind {
    /// Closed form for L ≤ 2, extrapolated sum above.
    Auto,
    Closed,
    General,
}

/// Which quantization function to evaluate.
#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Target {
    /// Rotational band L on the sphere.
    #[arg(long, required_unless_present = "geometry", conflicts_with = "geometry")]
    pub band: Option<u32>,
    /// Comparison geometry instead of a sphere band.
    #[arg(long, value_enum)]
    pub geometry: Option<GeometryKind>,
    #[arg(long, value_enum, default_value_t = MethodKind::Auto)]
    pub method: MethodKind,
    /// Lattice-norm cutoff of the torus sum.
    #[arg(long)]
    pub torus_cutoff: Option<f64>,
    /// Report the truncated torus sum instead of its limit.
    #[arg(long)]
    pub torus_raw: bool,
    /// Centre-of-mass excitation added to the pair energy.
    #[arg(long, requires = "geometry", allow_hyphen_values = true)]
    pub x_cm: Option<f64>,
}

pub enum Evaluator {
    Band(Band),
    Analog(ShiftedCondition),
}

impl Evaluator {
    pub fn new(t: &Target) -> Result<Self, CliError> {
        let torus_flags = t.torus_cutoff.is_some() || t.torus_raw;
        match (t.band, t.geometry) {
            (Some(l), None) => {
                if torus_flags {
                    return Err(CliError::Usage("torus options need --geometry torus".into()));
                }
                let method = match t.method {
                    MethodKind::Auto => Band::new(l).method,
                    MethodKind::Closed if l > 2 => {
                        return Err(CliError::Usage(format!("no closed form for band {l}; use --method general")))
                    }
                    MethodKind::Closed => Method::Closed,
                    MethodKind::General => Method::General(Extrapolation::default()),
                };
                Ok(Self::Band(Band { l, method }))
            }
            (None, Some(kind)) => {
                if t.method != MethodKind::Auto {
                    return Err(CliError::Usage("--method applies to sphere bands only".into()));
                }
                let geometry = match kind {
                    GeometryKind::Ho if torus_flags => {
                        return Err(CliError::Usage("torus options need --geometry torus".into()))
                    }
                    GeometryKind::Ho => AnalogGeometry::HarmonicOscillator,
                    GeometryKind::Torus => {
                        let mut spec = TorusSumSpec::default();
                        if let Some(c) = t.torus_cutoff {
                            spec.cutoff = c;
                        }
                        spec.extrapolate = !t.torus_raw;
                        AnalogGeometry::Torus(spec)
                    }
                };
                Ok(Self::Analog(cm_shift_curve(geometry, t.x_cm.unwrap_or(0.0))))
            }
            _ => Err(CliError::Usage("give exactly one of --band and --geometry".into())),
        }
    }

    pub fn eval(&self, x: f64) -> s2contact::Result<f64> {
        match self {
            Self::Band(b) => b.eval(x),
            Self::Analog(c) => c.eval(x),
        }
    }

    fn poles(&self, count: usize) -> Vec<f64> {
        match self {
            Self::Band(b) => b.poles(count),
            Self::Analog(c) => c.poles(count),
        }
    }

    /// Every pole at or below `x_max`, ascending.
    pub fn poles_through(&self, x_max: f64) -> Vec<f64> {
        let mut count = 8;
        loop {
            let p = self.poles(count);
            if p.len() < count || p.last().is_some_and(|&last| last > x_max) {
                return p.into_iter().filter(|&q| q <= x_max).collect();
            }
            count *= 2;
        }
    }

    pub fn solve(&self, target: f64, branch: usize) -> s2contact::Result<f64> {
        match self {
            Self::Band(b) => b.solve(target, branch, DEFAULT_TOLERANCE),
            Self::Analog(c) => c.solve(target, branch),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Band(b) => match b.method {
                Method::Closed => format!("band={} method=closed", b.l),
                Method::General(_) => format!("band={} method=general", b.l),
            },
            Self::Analog(c) => {
                let g = match c.geometry {
                    AnalogGeometry::HarmonicOscillator => "geometry=ho".to_string(),
                    AnalogGeometry::Torus(s) => format!(
                        "geometry=torus cutoff={} {}",
                        s.cutoff,
                        if s.extrapolate { "extrapolated" } else { "raw" }
                    ),
                };
                format!("{g} x_cm={}", c.x_cm)
            }
        }
    }
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalArgs {
    #[command(flatten)]
    pub target: Target,
    /// Dimensionless energy x = 2mER²/ħ².
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    /// Also write a run manifest here.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    /// Evenly spaced samples including both ends.
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    /// CSV destination; the manifest goes next to it with `.manifest.json` appended.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub target: Target,
    /// Number of branches, counted from the lowest.
    #[arg(long, default_value_t = 4)]
    pub count: usize,
    /// Value the condition must take; log(a/R) for sphere bands.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub level: f64,
    /// JSON destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitArgs {
    /// Built-in key (he6, li11, li6), a key under $S2CONTACT_DATA_DIR, or a TOML path.
    #[arg(long)]
    pub system: String,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// JSON destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictArgs {
    #[arg(long)]
    pub system: String,
    /// Output of the fit command for the same system.
    #[arg(long)]
    pub fit: PathBuf,
    /// Highest band L included.
    #[arg(long, default_value_t = 2)]
    pub l_max: u32,
    /// Branches per band.
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunCommand {
    /// Evaluate a quantization function at one energy.
    Eval(EvalArgs),
    /// Sample a quantization function into CSV, split into segments at poles.
    Curve(CurveArgs),
    /// Roots of a quantization function, one per branch.
    Zeros(ZerosArgs),
    /// Monte-Carlo fit of a halo system's contact parameters.
    Fit(FitArgs),
    /// Level scheme of a halo system from a previous fit.
    Predict(PredictArgs),
}

/// Everything a command produces, not yet written anywhere.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub files: Vec<(PathBuf, String)>,
}

impl RunCommand {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Eval(_) => "eval",
            Self::Curve(_) => "curve",
            Self::Zeros(_) => "zeros",
            Self::Fit(_) => "fit",
            Self::Predict(_) => "predict",
        }
    }

    /// Payload files, excluding standalone manifests.
    pub fn output_paths(&self) -> Vec<String> {
        let out = match self {
            Self::Eval(_) => None,
            Self::Curve(a) => Some(&a.out),
            Self::Zeros(a) => a.out.as_ref(),
            Self::Fit(a) => a.out.as_ref(),
            Self::Predict(a) => a.out.as_ref(),
        };
        out.map(|p| vec![p.display().to_string()]).unwrap_or_default()
    }

    pub fn run(&self) -> Result<Outcome, CliError> {
        match self {
            Self::Eval(a) => self.eval(a),
            Self::Curve(a) => self.curve(a),
            Self::Zeros(a) => self.zeros(a),
            Self::Fit(a) => self.fit(a),
            Self::Predict(a) => self.predict(a),
        }
    }

    fn eval(&self, a: &EvalArgs) -> Result<Outcome, CliError> {
        let value = Evaluator::new(&a.target)?.eval(a.x)?;
        let mut outcome = Outcome { stdout: format!("{}\n", format_float(value)), files: Vec::new() };
        if let Some(path) = &a.manifest {
            let manifest = RunManifest::new(self, None, None)?;
            outcome.files.push((path.clone(), json_text(&serde_json::to_value(manifest)?)?));
        }
        Ok(outcome)
    }

    fn curve(&self, a: &CurveArgs) -> Result<Outcome, CliError> {
        if !(a.from.is_finite() && a.to.is_finite() && a.from < a.to) {
            return Err(CliError::Usage(format!("need finite --from < --to, got {} and {}", a.from, a.to)));
        }
        if a.points < 2 {
            return Err(CliError::Usage("--points must be at least 2".into()));
        }
        let evaluator = Evaluator::new(&a.target)?;
        let poles: Vec<f64> = evaluator.poles_through(a.to).into_iter().filter(|&p| p > a.from).collect();

        let mut csv = String::new();
        writeln!(csv, "# {} version={}", evaluator.describe(), env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(csv, "x,value,segment").unwrap();
        let span = a.to - a.from;
        let last = a.points - 1;
        for k in 0..a.points {
            let x = if k == last { a.to } else { a.from + span * k as f64 / last as f64 };
            if poles.contains(&x) {
                continue;
            }
            let value = match evaluator.eval(x) {
                Ok(v) => v,
                Err(Error::Pole { .. }) => continue,
                Err(e) => return Err(e.into()),
            };
            let segment = poles.partition_point(|&p| p < x);
            writeln!(csv, "{},{},{segment}", format_float(x), format_float(value)).unwrap();
        }

        let manifest = RunManifest::new(self, None, None)?;
        let mut manifest_path = a.out.clone().into_os_string();
        manifest_path.push(".manifest.json");
        Ok(Outcome {
            stdout: String::new(),
            files: vec![
                (a.out.clone(), csv),
                (PathBuf::from(manifest_path), json_text(&serde_json::to_value(manifest)?)?),
            ],
        })
    }

    fn zeros(&self, a: &ZerosArgs) -> Result<Outcome, CliError> {
        if !a.level.is_finite() {
            return Err(CliError::Usage(format!("--level must be finite, got {}", a.level)));
        }
        let evaluator = Evaluator::new(&a.target)?;
        let zeros = (0..a.count)
            .map(|n| evaluator.solve(a.level, n).map(|x| json!({"branch": n, "x": x})))
            .collect::<s2contact::Result<Vec<_>>>()?;
        let result = json!({"target": evaluator.describe(), "level": a.level, "zeros": zeros});
        report(self, None, None, result, a.out.as_deref())
    }

    fn fit(&self, a: &FitArgs) -> Result<Outcome, CliError> {
        let system = load_system(&a.system)?;
        let task = FitTask::from_system(&system)?;
        let fit = mc_propagate(&task, a.samples, a.seed)?;
        report(self, Some(a.seed), Some(system.version), serde_json::to_value(fit)?, a.out.as_deref())
    }

    fn predict(&self, a: &PredictArgs) -> Result<Outcome, CliError> {
        let system = load_system(&a.system)?;
        let fit = read_fit(&a.fit)?;
        let prediction = predict_spectrum(&system, &fit, a.l_max, a.levels)?;
        report(self, Some(fit.seed), Some(system.version), serde_json::to_value(prediction)?, a.out.as_deref())
    }
}

/// `{"manifest": ..., "result": ...}` to a file or stdout. Only the result is
/// rounded; the manifest keeps inputs exact so replays see identical values.
fn report(
    cmd: &RunCommand,
    seed: Option<u64>,
    data: Option<String>,
    mut result: Value,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    round_json(&mut result);
    let manifest = serde_json::to_value(RunManifest::new(cmd, seed, data)?)?;
    let text = json_text(&json!({"manifest": manifest, "result": result}))?;
    Ok(match out {
        Some(path) => Outcome { stdout: String::new(), files: vec![(path.to_path_buf(), text)] },
        None => Outcome { stdout: text, files: Vec::new() },
    })
}

fn json_text(value: &Value) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// A path to an existing file, then `$S2CONTACT_DATA_DIR/<key>.toml`, then a built-in key.
pub fn load_system(spec: &str) -> Result<HaloSystem, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(HaloSystem::load(path)?);
    }
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        let candidate = Path::new(&dir).join(format!("{spec}.toml"));
        if candidate.is_file() {
            return Ok(HaloSystem::load(&candidate)?);
        }
    }
    Ok(HaloSystem::builtin(spec)?)
}

/// Reads a fit report, or a bare serialized fit.
fn read_fit(path: &Path) -> Result<SystemFit, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Core(Error::Schema(format!("{}: {e}", path.display()))))?;
    if let Some(inner) = value.get_mut("result") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| CliError::Core(Error::Schema(format!("{}: {e}", path.display()))))
}
