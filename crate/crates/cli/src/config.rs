use std::fmt;
use std::path::Path;

use hydrobound::{Composite, CompositeSpec, Loading, MomentExponent, NormalizedSpec, PhaseProperties};
use serde::Deserialize;

use crate::CliError;

/// One loading axis: a fixed value or an inclusive evenly spaced range.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Value(f64),
    Range { start: f64, stop: f64, count: usize },
}

impl Default for Axis {
    fn default() -> Self {
        Axis::Value(0.0)
    }
}

impl Axis {
    pub fn is_range(&self) -> bool {
        matches!(self, Axis::Range { .. })
    }

    fn validate(&self, name: &str) -> Result<(), CliError> {
        match *self {
            Axis::Value(v) if !v.is_finite() => Err(CliError::input(format!("{name} must be finite, got {v}"))),
            Axis::Value(_) => Ok(()),
            Axis::Range { start, stop, count } => {
                if !(start.is_finite() && stop.is_finite()) {
                    return Err(CliError::input(format!("{name} range bounds must be finite")));
                }
                if count < 2 {
                    return Err(CliError::input(format!("{name} range needs count >= 2, got {count}")));
                }
                if start >= stop {
                    return Err(CliError::input(format!("{name} range needs start < stop, got {start} >= {stop}")));
                }
                Ok(())
            }
        }
    }

    /// The sample points, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Axis::Value(v) => vec![v],
            Axis::Range { start, stop, count } => (0..count)
                .map(|i| {
                    if i + 1 == count {
                        stop
                    } else {
                        start + (stop - start) * i as f64 / (count - 1) as f64
                    }
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadingConfig {
    #[serde(default)]
    pub sigma0: Axis,
    #[serde(default, alias = "deltaT", alias = "delta_T")]
    pub delta_t: Axis,
}

/// `p` may be written as a number or as the string `"inf"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ExponentValue {
    Number(f64),
    Text(String),
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Number(x) => write!(f, "{x}"),
            ExponentValue::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandOptions {
    pub phase: Option<String>,
    pub p: Option<ExponentValue>,
    pub format: Option<String>,
    pub target: Option<String>,
    pub grid_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub phase1: PhaseProperties,
    pub phase2: PhaseProperties,
    pub theta1: f64,
    #[serde(default)]
    pub loading: LoadingConfig,
    #[serde(default, alias = "command_options", alias = "command-options")]
    pub options: CommandOptions,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::input(format!("ConfigParse: {e}")))?;
        cfg.loading.sigma0.validate("sigma0")?;
        cfg.loading.delta_t.validate("delta_t")?;
        Ok(cfg)
    }

    pub fn spec(&self) -> CompositeSpec {
        CompositeSpec::new(self.phase1, self.phase2, self.theta1)
    }

    /// Validated composite in normalized labels plus the label mapping.
    pub fn composite(&self) -> Result<(Composite, NormalizedSpec), CliError> {
        Composite::from_raw(&self.spec()).map_err(CliError::from)
    }

    /// The single loading of a non-sweep command.
    pub fn scalar_loading(&self) -> Result<Loading, CliError> {
        match (self.loading.sigma0, self.loading.delta_t) {
            (Axis::Value(s), Axis::Value(t)) => Ok(Loading::new(s, t)),
            _ => Err(CliError::input("loading ranges are only accepted by the sweep command")),
        }
    }

    pub fn scalar_delta_t(&self) -> Result<f64, CliError> {
        match self.loading.delta_t {
            Axis::Value(t) => Ok(t),
            Axis::Range { .. } => Err(CliError::input("loading ranges are only accepted by the sweep command")),
        }
    }
}

pub fn parse_exponent(text: &str) -> Result<MomentExponent, CliError> {
    text.parse::<MomentExponent>().map_err(CliError::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = r#"{
        "phase1": {"k": 2, "mu": 1, "h": 0},
        "phase2": {"bulk_modulus": 1, "shear_modulus": 0.5, "thermal_expansion": 1},
        "theta1": 0.5,
        "loading": {"sigma0": 0, "deltaT": 1},
        "options": {"p": "inf", "grid_n": 64}
    }"#;

    #[test]
    fn parses_reference() {
        let cfg = RunConfig::parse(REFERENCE).unwrap();
        assert_eq!(cfg.phase1.bulk_modulus, 2.0);
        assert_eq!(cfg.scalar_loading().unwrap(), Loading::new(0.0, 1.0));
        assert_eq!(cfg.options.grid_n, Some(64));
        assert_eq!(cfg.options.p, Some(ExponentValue::Text("inf".into())));
    }

    #[test]
    fn ranges() {
        let axis = Axis::Range {
            start: -1.0,
            stop: 1.0,
            count: 5,
        };
        assert_eq!(axis.values(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(Axis::Range {
            start: 0.0,
            stop: 1.0,
            count: 1
        }
        .validate("sigma0")
        .is_err());
        assert!(Axis::Range {
            start: 1.0,
            stop: 1.0,
            count: 3
        }
        .validate("sigma0")
        .is_err());
    }

    #[test]
    fn rejects_empty_and_unknown() {
        assert!(RunConfig::parse("{}").is_err());
        assert!(RunConfig::parse("").is_err());
        let extra = REFERENCE.replacen("\"theta1\"", "\"bogus\": 1, \"theta1\"", 1);
        assert!(RunConfig::parse(&extra).is_err());
    }

    #[test]
    fn command_options_aliases() {
        let cfg = RunConfig::parse(&REFERENCE.replace("\"options\"", "\"command-options\"")).unwrap();
        assert_eq!(cfg.options.grid_n, Some(64));
    }
}
