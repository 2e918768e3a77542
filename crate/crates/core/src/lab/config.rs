use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveSample, CurveSpec};
use crate::error::{Error, Result};
use crate::harmonic::DiskQuadrature;
use crate::regularity::{BallGrid, ProbeSpec};
use crate::seminorms::{BoundaryFunction, EnergyOptions, EngineChoice, ParamFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Douglas,
    Equivalence,
    Necessity,
    RegularitySweep,
    Selftest,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Experiment::Douglas => "douglas",
            Experiment::Equivalence => "equivalence",
            Experiment::Necessity => "necessity",
            Experiment::RegularitySweep => "regularity_sweep",
            Experiment::Selftest => "selftest",
        };
        f.write_str(s)
    }
}

/// Which part of a complex function is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    #[default]
    Complex,
    Re,
    /// `Im u = Re(-i u)`.
    Im,
}

impl Part {
    fn apply(self, u: BoundaryFunction) -> BoundaryFunction {
        match self {
            Part::Complex => u,
            Part::Re => u.real_part(),
            Part::Im => u.scaled(C64::new(0.0, -1.0)).real_part(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleSide {
    #[default]
    Both,
    Exterior,
    Interior,
}

/// A family of test functions, expanded per curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionSpec {
    Cos {
        modes: Vec<u32>,
    },
    Sin {
        modes: Vec<u32>,
    },
    TrigPoly {
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
    /// `count` real trigonometric polynomials of the given degree with
    /// standard normal coefficients drawn from the run seed.
    RandomTrig {
        count: usize,
        degree: usize,
    },
    Constant {
        value: f64,
    },
    Pole {
        w: [f64; 2],
        #[serde(default)]
        part: Part,
    },
    /// Poles at `offset · diam` along the normal at `sites` evenly spaced
    /// samples.
    NormalPoles {
        sites: usize,
        offsets: Vec<f64>,
        #[serde(default)]
        side: PoleSide,
        #[serde(default = "complex_only")]
        parts: Vec<Part>,
    },
}

fn complex_only() -> Vec<Part> {
    vec![Part::Complex]
}

impl FunctionSpec {
    /// `true` when every expanded function is a real trigonometric
    /// polynomial in the arc parameter.
    pub fn is_real_trig(&self) -> bool {
        matches!(
            self,
            FunctionSpec::Cos { .. }
                | FunctionSpec::Sin { .. }
                | FunctionSpec::TrigPoly { .. }
                | FunctionSpec::RandomTrig { .. }
                | FunctionSpec::Constant { .. }
        )
    }

    /// Concrete functions for `curve`. Normal poles that land on the wrong
    /// side are dropped here; unresolved poles are kept and rejected later.
    pub fn expand(&self, curve: &CurveSample, rng: &mut ChaCha8Rng) -> Vec<BoundaryFunction> {
        match self {
            FunctionSpec::Cos { modes } => {
                modes.iter().map(|&n| BoundaryFunction::cos(n)).collect()
            }
            FunctionSpec::Sin { modes } => modes
                .iter()
                .map(|&n| BoundaryFunction::composed(ParamFn::Sin { n }))
                .collect(),
            FunctionSpec::TrigPoly { cos, sin } => {
                vec![BoundaryFunction::composed(ParamFn::TrigPoly {
                    cos: cos.clone(),
                    sin: sin.clone(),
                })]
            }
            FunctionSpec::RandomTrig { count, degree } => (0..*count)
                .map(|_| {
                    let mut draw = || -> Vec<f64> { (0..*degree).map(|_| normal(rng)).collect() };
                    let cos = draw();
                    let sin = draw();
                    BoundaryFunction::composed(ParamFn::TrigPoly { cos, sin })
                })
                .collect(),
            FunctionSpec::Constant { value } => vec![BoundaryFunction::constant(*value)],
            FunctionSpec::Pole { w, part } => {
                vec![part.apply(BoundaryFunction::pole(C64::new(w[0], w[1])))]
            }
            FunctionSpec::NormalPoles {
                sites,
                offsets,
                side,
                parts,
            } => {
                let mut out = Vec::new();
                for w in normal_pole_sites(curve, *sites, offsets, *side) {
                    for part in parts {
                        out.push(part.apply(BoundaryFunction::pole(w)));
                    }
                }
                out
            }
        }
    }
}

/// Box-Muller from two uniforms in `(0, 1]`.
fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Points `z_k ± offset · diam · ν_k` with `ν_k` the outward discrete normal,
/// kept only when they fall on the requested side.
pub fn normal_pole_sites(
    curve: &CurveSample,
    sites: usize,
    offsets: &[f64],
    side: PoleSide,
) -> Vec<C64> {
    let n = curve.len();
    let diam = curve.diameter();
    let mut out = Vec::new();
    for j in 0..sites {
        let k = j * n / sites.max(1);
        let t = curve.point(k + 1) - curve.point(k + n - 1);
        let outward = -C64::i() * t / t.norm();
        for &off in offsets {
            let mut cands = Vec::new();
            if side != PoleSide::Interior {
                cands.push((curve.point(k) + outward * off * diam, false));
            }
            if side != PoleSide::Exterior {
                cands.push((curve.point(k) - outward * off * diam, true));
            }
            for (w, inside) in cands {
                if curve.contains_interior(w).ok() == Some(inside) {
                    out.push(w);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Knobs {
    /// Overrides the sample count of every curve when set.
    pub n_samples: Option<usize>,
    pub boundary_samples: usize,
    pub n_trunc: usize,
    pub radial_order: usize,
    pub angular_order: usize,
    pub engine: EngineChoice,
}

impl Default for Knobs {
    fn default() -> Self {
        let e = EnergyOptions::default();
        Self {
            n_samples: None,
            boundary_samples: e.boundary_samples,
            n_trunc: e.n_trunc,
            radial_order: e.quad.radial,
            angular_order: e.quad.angular,
            engine: EngineChoice::Auto,
        }
    }
}

impl Knobs {
    pub fn energy(&self) -> EnergyOptions {
        EnergyOptions {
            boundary_samples: self.boundary_samples,
            n_trunc: self.n_trunc,
            quad: DiskQuadrature {
                radial: self.radial_order,
                angular: self.angular_order,
            },
        }
    }

    fn validate(&self) -> Result<()> {
        if self.boundary_samples < 2 * self.n_trunc + 1 {
            return Err(Error::Config(format!(
                "boundary_samples = {} cannot resolve n_trunc = {}",
                self.boundary_samples, self.n_trunc
            )));
        }
        if self.radial_order == 0 || self.angular_order == 0 || self.n_trunc == 0 {
            return Err(Error::Config("quadrature orders must be positive".into()));
        }
        if self
            .n_samples
            .is_some_and(|n| n < crate::curve::MIN_SAMPLES)
        {
            return Err(Error::Config(format!(
                "n_samples must be at least {}",
                crate::curve::MIN_SAMPLES
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeKnobs {
    pub dual: ProbeSpec,
    pub ball_centers: usize,
    pub ball_radii: usize,
}

impl Default for ProbeKnobs {
    fn default() -> Self {
        Self {
            dual: ProbeSpec::default(),
            ball_centers: 256,
            ball_radii: 24,
        }
    }
}

impl ProbeKnobs {
    pub fn ball_grid(&self, curve: &CurveSample) -> BallGrid {
        BallGrid::for_curve(curve, self.ball_centers, self.ball_radii)
    }
}

/// Declared tolerances. Every check in a report uses one of these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative error against closed forms and identities.
    pub rel: f64,
    /// Largest admissible `C₀` in `ratio ∈ [1/C₀, C₀]`.
    pub bracket: f64,
    /// Half-width of the band around 1 for circle ratios at `p = 2`.
    pub circle_band: f64,
    /// Smallest admissible slack in the pole energy and Besov bounds.
    pub bound_slack: f64,
    /// Smallest admissible slack in the pullback sandwich.
    pub sandwich_slack: f64,
    /// Largest admissible decrease between consecutive trend entries.
    pub monotone_slack: f64,
    /// Smallest admissible `Ĉ_last / Ĉ_first` along a trend; unchecked if unset.
    pub c_hat_growth: Option<f64>,
    /// Smallest admissible rank correlation of `M̂` and `Ĉ`.
    pub rank_concordance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rel: 1e-3,
            bracket: 50.0,
            circle_band: 0.1,
            bound_slack: 0.0,
            sandwich_slack: -1e-6,
            monotone_slack: 0.0,
            c_hat_growth: None,
            rank_concordance: 0.8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Csv,
    Plot,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Csv => "csv",
            Format::Plot => "dat",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "plot" => Ok(Format::Plot),
            _ => Err(Error::Config(format!(
                "unknown format `{s}` (text, csv, plot)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    /// File stem; each format is written next to it with its own extension.
    pub path: Option<PathBuf>,
    pub formats: Vec<Format>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            path: None,
            formats: vec![Format::Text],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_p")]
    pub p: Vec<f64>,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub functions: Vec<FunctionSpec>,
    #[serde(default)]
    pub knobs: Knobs,
    #[serde(default)]
    pub probes: ProbeKnobs,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_p() -> Vec<f64> {
    vec![2.0]
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            seed: 0,
            p: default_p(),
            curves: Vec::new(),
            functions: Vec::new(),
            knobs: Knobs::default(),
            probes: ProbeKnobs::default(),
            tolerances: Tolerances::default(),
            output: OutputSpec::default(),
        }
    }

    pub fn from_toml_str(text: &str, origin: &Path) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Checks the knobs and the per-experiment preconditions that do not
    /// need any curve to be built.
    pub fn validate(&self) -> Result<()> {
        self.knobs.validate()?;
        if self.p.is_empty() || self.p.iter().any(|&p| !(p >= 2.0) || !p.is_finite()) {
            return Err(Error::Config(format!(
                "every p must be finite and at least 2, got {:?}",
                self.p
            )));
        }
        match self.experiment {
            Experiment::Douglas => {
                if self.p.iter().any(|&p| p != 2.0) {
                    return Err(Error::Config(
                        "the Douglas experiment runs at p = 2 only".into(),
                    ));
                }
                if let Some(f) = self.functions.iter().find(|f| !f.is_real_trig()) {
                    return Err(Error::Config(format!(
                        "the Douglas experiment needs real trigonometric test functions, got {f:?}"
                    )));
                }
                for c in &self.curves {
                    if !matches!(c, CurveSpec::Circle { .. }) {
                        return Err(Error::Config(format!(
                            "the Douglas equality holds on circles only, got {}",
                            c.label()
                        )));
                    }
                }
            }
            Experiment::Equivalence => {
                for c in &self.curves {
                    let ok = match c {
                        CurveSpec::Polynomial { params, .. } => params.c.abs() <= 0.35,
                        CurveSpec::Koch { params, .. } => params.level <= 2,
                        _ => true,
                    };
                    if !ok {
                        return Err(Error::Config(format!(
                            "{} is outside the chord-arc family of the equivalence experiment",
                            c.label()
                        )));
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// The curve spec with the sample-count override applied.
    pub fn curve_spec(&self, i: usize) -> CurveSpec {
        match self.knobs.n_samples {
            Some(n) => self.curves[i].with_samples(n),
            None => self.curves[i].clone(),
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ExperimentConfig::from_toml_str(&text, path)
}
