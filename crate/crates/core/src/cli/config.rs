use crate::constants::ConfinementCase;
use crate::error::{Error, Result};
use crate::field::AmbientField;
use crate::flow::{FlowParams, StepControl};
use crate::geometry::{build_parabola_closure, io::read_curve_file, ClosedCurve, Point2};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    BaselineCircle,
    KillingEquivalence,
    LossOfConvexity,
    RoundPoint,
    IdentityAudit,
    Constants,
}

impl ScenarioKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioKind::BaselineCircle => "baseline-circle",
            ScenarioKind::KillingEquivalence => "killing-equivalence",
            ScenarioKind::LossOfConvexity => "loss-of-convexity",
            ScenarioKind::RoundPoint => "round-point",
            ScenarioKind::IdentityAudit => "identity-audit",
            ScenarioKind::Constants => "constants",
        }
    }
}

fn origin() -> [f64; 2] {
    [0.0, 0.0]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CurveSpec {
    Circle {
        r: f64,
        n: usize,
        #[serde(default = "origin")]
        center: [f64; 2],
    },
    Ellipse {
        a: f64,
        b: f64,
        n: usize,
        #[serde(default = "origin")]
        center: [f64; 2],
    },
    ParabolaClosure {
        eps: f64,
        delta: f64,
        n: usize,
    },
    File {
        path: PathBuf,
    },
}

impl CurveSpec {
    /// Builds the curve; relative file paths resolve against `base`.
    pub fn build(&self, base: &Path) -> Result<ClosedCurve> {
        match self {
            CurveSpec::Circle { r, n, center } => ClosedCurve::circle(Point2::new(center[0], center[1]), *r, *n),
            CurveSpec::Ellipse { a, b, n, center } => ClosedCurve::ellipse(Point2::new(center[0], center[1]), *a, *b, *n),
            CurveSpec::ParabolaClosure { eps, delta, n } => build_parabola_closure(*eps, *delta, *n),
            CurveSpec::File { path } => read_curve_file(&base.join(path)),
        }
    }
}

/// Fixed-step refinement ladder `dt, dt/2, …` used by the identity audit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ladder {
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_levels")]
    pub levels: usize,
    #[serde(default = "default_snapshots")]
    pub snapshots: usize,
}

fn default_levels() -> usize {
    3
}

fn default_snapshots() -> usize {
    10
}

/// Explicit inputs for the constants scenario; anything missing is measured
/// from the field on the region.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsInput {
    pub c0: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub case: Option<ConfinementCase>,
    pub x_t0: Option<f64>,
    /// `x(0)` for the confinement ODE when `x_t0` is not given
    pub x0: Option<f64>,
}

fn default_m_theta() -> usize {
    512
}

fn default_params() -> FlowParams {
    FlowParams { sigma1: 1.0, sigma2: 0.0 }
}

fn default_field() -> AmbientField {
    AmbientField::Zero
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    pub curve: Option<CurveSpec>,
    #[serde(default = "default_field")]
    pub field: AmbientField,
    #[serde(default = "default_params")]
    pub params: FlowParams,
    #[serde(default)]
    pub control: StepControl,
    pub output: Option<PathBuf>,
    /// radius `R0` of the region `B_{R0}(0)`; absent means the whole plane
    pub region: Option<f64>,
    /// parabola-closure `ε` values for the loss-of-convexity sweep
    #[serde(default)]
    pub sweep: Vec<f64>,
    pub ladder: Option<Ladder>,
    /// angle-grid size for the angle-parametrized monitors
    #[serde(default = "default_m_theta")]
    pub m_theta: usize,
    pub constants: Option<ConstantsInput>,
    /// directory of the config file; relative curve paths resolve against it
    #[serde(skip)]
    pub config_dir: Option<PathBuf>,
}

impl ScenarioConfig {
    /// Parses TOML, or JSON when the text starts with `{`.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Self::parse(&std::fs::read_to_string(path)?)?;
        cfg.config_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate().map_err(|e| Error::Config(e.to_string()))?;
        self.control.validate().map_err(|e| Error::Config(e.to_string()))?;
        let need_curve = self.scenario != ScenarioKind::Constants && self.scenario != ScenarioKind::LossOfConvexity;
        if need_curve && self.curve.is_none() {
            return Err(Error::Config(format!("scenario {} needs a curve", self.scenario.as_str())));
        }
        match self.scenario {
            ScenarioKind::LossOfConvexity => match &self.curve {
                Some(CurveSpec::ParabolaClosure { .. }) if !self.sweep.is_empty() => {}
                _ => return Err(Error::Config("loss-of-convexity needs a parabola-closure curve and a non-empty sweep".into())),
            },
            ScenarioKind::IdentityAudit if self.ladder.is_none() => {
                return Err(Error::Config("identity-audit needs a ladder".into()));
            }
            ScenarioKind::KillingEquivalence if !matches!(self.field, AmbientField::Killing { .. }) => {
                return Err(Error::Config("killing-equivalence needs a killing field".into()));
            }
            _ => {}
        }
        if let Some(r) = self.region {
            if !(r > 0.0) {
                return Err(Error::Config(format!("region must be positive, got {r}")));
            }
        }
        if self.m_theta < 8 {
            return Err(Error::Config("m_theta must be at least 8".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_and_json_agree() {
        let t = r#"
scenario = "baseline-circle"
curve = { kind = "circle", r = 1.0, n = 64 }
field = { kind = "zero" }
params = { sigma1 = 1.0, sigma2 = 0.0 }
[control]
snapshot_every = 50
max_time = "inf"
"#;
        let a = ScenarioConfig::parse(t).unwrap();
        let j = serde_json::to_string(&a).unwrap();
        let b = ScenarioConfig::parse(&j).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.control.snapshot_every, 50);
        assert!(a.control.max_time.is_infinite());
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(ScenarioConfig::parse("scenario = \"nope\""), Err(Error::Config(_))));
        assert!(ScenarioConfig::parse("scenario = \"round-point\"").is_err());
        assert!(ScenarioConfig::parse("scenario = \"constants\"\nparams = { sigma1 = -1.0, sigma2 = 0.0 }").is_err());
        assert!(ScenarioConfig::parse("scenario = \"constants\"\nbogus = 1").is_err());
    }
}
