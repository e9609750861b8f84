//! JSON run configuration.
//!
//! Every field has a default, so `{}` is a valid document and reproduces the
//! reference setup: kite, `μ = 0.1`, `λ = 0`, `k = 2`, `n = 50`, `η = 1%`,
//! sampling grid `[−3, 3]²` at 80×80.
//!
//! ```json
//! {
//!   "geometry": {"kind": "ellipse", "a": 2.0, "b": 1.0},
//!   "impedance": {"mu": {"re": 0.1, "im": 0.0}, "lambda": 0.0},
//!   "k": 2.0, "n": 50, "m": 128,
//!   "noise": {"eta": 0.01, "seed": 42},
//!   "inversion": {"grid": {"x": [-3, 3], "y": [-3, 3], "resolution": 80}, "delta": "auto"},
//!   "output": {"dir": "out"}
//! }
//! ```

use std::path::{Path, PathBuf};

use gibc_core::factorization::{
    DeltaRule, FSharpForm, InversionSettings, SamplingGrid, STANDARD_THETA_SET, QUARTER_THETA_SET,
};
use gibc_core::forward::ScatteringConfig;
use gibc_core::geometry::{Curve, TrigCurve};
use gibc_core::noise::NoiseSpec;
use gibc_core::surface::{Coefficient, ImpedanceParams};
use gibc_core::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("invalid config value at {pointer}: {message}")]
    Invalid { pointer: &'static str, message: String },
}

impl ConfigError {
    fn invalid(pointer: &'static str, message: impl ToString) -> Self {
        ConfigError::Invalid { pointer, message: message.to_string() }
    }
}

#[derive(Default, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GeometrySpec {
    Circle {
        #[serde(rename = "R")]
        radius: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    #[default]
    Kite,
    Custom {
        #[serde(default)]
        cos_x: Vec<f64>,
        #[serde(default)]
        sin_x: Vec<f64>,
        #[serde(default)]
        cos_y: Vec<f64>,
        #[serde(default)]
        sin_y: Vec<f64>,
    },
}


impl GeometrySpec {
    pub fn build(&self) -> Result<Curve, ConfigError> {
        let err = |e: gibc_core::geometry::GeometryError| ConfigError::invalid("/geometry", e);
        match self {
            GeometrySpec::Circle { radius } => Curve::circle(*radius).map_err(err),
            GeometrySpec::Ellipse { a, b } => Curve::ellipse(*a, *b).map_err(err),
            GeometrySpec::Kite => Ok(Curve::Kite),
            GeometrySpec::Custom { cos_x, sin_x, cos_y, sin_y } => {
                TrigCurve::new(cos_x.clone(), sin_x.clone(), cos_y.clone(), sin_y.clone())
                    .map(Curve::Custom)
                    .map_err(err)
            }
        }
    }
}

/// A complex number written as `0.1` or `{"re": 0.1, "im": -0.2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Real(f64),
    Parts {
        re: f64,
        #[serde(default)]
        im: f64,
    },
}

impl ComplexSpec {
    pub fn value(self) -> Complex64 {
        match self {
            ComplexSpec::Real(re) => Complex64::new(re, 0.0),
            ComplexSpec::Parts { re, im } => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for ComplexSpec {
    fn from(z: Complex64) -> Self {
        ComplexSpec::Parts { re: z.re, im: z.im }
    }
}

/// A constant or a trigonometric table `{"cos": [...], "sin": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientSpec {
    Constant(ComplexSpec),
    Trig {
        #[serde(default)]
        cos: Vec<ComplexSpec>,
        #[serde(default)]
        sin: Vec<ComplexSpec>,
    },
}

impl CoefficientSpec {
    fn build(&self) -> Coefficient {
        match self {
            CoefficientSpec::Constant(c) => Coefficient::Constant(c.value()),
            CoefficientSpec::Trig { cos, sin } => Coefficient::Trig {
                cos: cos.iter().map(|c| c.value()).collect(),
                sin: sin.iter().map(|c| c.value()).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImpedanceSpec {
    #[serde(default = "default_mu")]
    pub mu: CoefficientSpec,
    #[serde(default = "default_lambda")]
    pub lambda: CoefficientSpec,
}

fn default_mu() -> CoefficientSpec {
    CoefficientSpec::Constant(ComplexSpec::Real(0.1))
}

fn default_lambda() -> CoefficientSpec {
    CoefficientSpec::Constant(ComplexSpec::Real(0.0))
}

impl Default for ImpedanceSpec {
    fn default() -> Self {
        Self { mu: default_mu(), lambda: default_lambda() }
    }
}

impl ImpedanceSpec {
    pub fn build(&self) -> Result<ImpedanceParams, ConfigError> {
        ImpedanceParams::new(self.mu.build(), self.lambda.build()).map_err(|e| ConfigError::invalid("/impedance", e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_eta() -> f64 {
    0.01
}

fn default_seed() -> u64 {
    42
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self { eta: default_eta(), seed: default_seed() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_range")]
    pub x: [f64; 2],
    #[serde(default = "default_range")]
    pub y: [f64; 2],
    #[serde(default = "default_resolution")]
    pub resolution: usize,
}

fn default_range() -> [f64; 2] {
    [-3.0, 3.0]
}

fn default_resolution() -> usize {
    80
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { x: default_range(), y: default_range(), resolution: default_resolution() }
    }
}

/// `"auto"` or a positive number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DeltaSpec {
    Keyword(DeltaKeyword),
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaKeyword {
    Auto,
}

impl Default for DeltaSpec {
    fn default() -> Self {
        DeltaSpec::Keyword(DeltaKeyword::Auto)
    }
}

/// `"standard"` (`{0, π/4, 3π/4, π}`), `"quarter"` (`{0, π/4, π/2, 3π/4}`) or
/// explicit angles in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaSetSpec {
    Named(ThetaSetName),
    Angles(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaSetName {
    Standard,
    Quarter,
}

impl Default for ThetaSetSpec {
    fn default() -> Self {
        ThetaSetSpec::Named(ThetaSetName::Standard)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FSharpSpec {
    /// `|Re U| + |Im U|`.
    #[default]
    Absolute,
    /// `|Re U| + Im U`.
    Signed,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InversionConfig {
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub delta: DeltaSpec,
    #[serde(default)]
    pub theta_set: ThetaSetSpec,
    #[serde(default)]
    pub f_sharp: FSharpSpec,
}

impl InversionConfig {
    pub fn build(&self) -> Result<InversionSettings, ConfigError> {
        let g = &self.grid;
        let grid = SamplingGrid { x_min: g.x[0], x_max: g.x[1], y_min: g.y[0], y_max: g.y[1], nx: g.resolution, ny: g.resolution };
        grid.validate().map_err(|e| ConfigError::invalid("/inversion/grid", e))?;
        let delta = match self.delta {
            DeltaSpec::Keyword(DeltaKeyword::Auto) => DeltaRule::Auto,
            DeltaSpec::Fixed(d) if d.is_finite() && d > 0.0 => DeltaRule::Fixed(d),
            DeltaSpec::Fixed(d) => return Err(ConfigError::invalid("/inversion/delta", format!("must be positive, got {d}"))),
        };
        let theta_set = match &self.theta_set {
            ThetaSetSpec::Named(ThetaSetName::Standard) => STANDARD_THETA_SET.to_vec(),
            ThetaSetSpec::Named(ThetaSetName::Quarter) => QUARTER_THETA_SET.to_vec(),
            ThetaSetSpec::Angles(a) if !a.is_empty() && a.iter().all(|t| t.is_finite()) => a.clone(),
            ThetaSetSpec::Angles(_) => return Err(ConfigError::invalid("/inversion/theta_set", "needs at least one finite angle")),
        };
        let form = match self.f_sharp {
            FSharpSpec::Absolute => FSharpForm::AbsoluteImaginary,
            FSharpSpec::Signed => FSharpForm::SignedImaginary,
        };
        Ok(InversionSettings { grid, delta, theta_set, form })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_out_dir")]
    pub dir: PathBuf,
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: default_out_dir() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub geometry: GeometrySpec,
    #[serde(default)]
    pub impedance: ImpedanceSpec,
    #[serde(default = "default_k")]
    pub k: f64,
    #[serde(default = "default_n")]
    pub n: usize,
    /// Quadrature nodes; `max(128, 2n)` rounded up to even when absent.
    #[serde(default)]
    pub m: Option<usize>,
    /// Coupling parameter of the combined-field ansatz; `k` when absent.
    #[serde(default)]
    pub coupling: Option<f64>,
    #[serde(default)]
    pub noise: NoiseConfig,
    #[serde(default)]
    pub inversion: InversionConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_k() -> f64 {
    2.0
}

fn default_n() -> usize {
    50
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config uses defaults")
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Schema {
            pointer: json_pointer(e.path()),
            message: e.inner().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.to_owned(), source })?;
        Self::from_json(&text)
    }

    /// Checks everything that can be checked without solving.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.scattering()?;
        self.noise_spec()?;
        self.inversion.build()?;
        Ok(())
    }

    pub fn quadrature_nodes(&self) -> usize {
        self.m.unwrap_or_else(|| {
            let m = (2 * self.n).max(128);
            m + m % 2
        })
    }

    pub fn scattering(&self) -> Result<ScatteringConfig, ConfigError> {
        let curve = self.geometry.build()?;
        let impedance = self.impedance.build()?;
        let cfg = ScatteringConfig::new(curve, impedance, self.k, self.n, self.quadrature_nodes())
            .map_err(|e| ConfigError::invalid("/", e))?;
        match self.coupling {
            Some(c) => cfg.with_coupling(c).map_err(|e| ConfigError::invalid("/coupling", e)),
            None => Ok(cfg),
        }
    }

    pub fn noise_spec(&self) -> Result<NoiseSpec, ConfigError> {
        NoiseSpec::new(self.noise.eta, self.noise.seed).map_err(|e| ConfigError::invalid("/noise/eta", e))
    }

    /// Canonical JSON of the effective configuration.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

/// `serde_path_to_error` path rendered as a JSON pointer.
fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}
