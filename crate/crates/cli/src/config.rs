//! Model documents: inline JSON or a path to a JSON file.

use std::fs;

use igfading::{CompositeModel, FadingModel};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub shadowing: ShadowingConfig,
    pub fading: FadingConfig,
    #[serde(default = "one")]
    pub mean_power: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShadowingConfig {
    pub m: f64,
}

/// Baseline fading by `type`. `omega` is the fading mean power; composite
/// models renormalize it to one.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FadingConfig {
    Rayleigh {
        #[serde(default = "one")]
        omega: f64,
    },
    Rician {
        k: f64,
        #[serde(default = "one")]
        omega: f64,
    },
    Nakagami {
        m: f64,
        #[serde(default = "one")]
        omega: f64,
    },
    Hoyt {
        q: f64,
        #[serde(default = "one")]
        omega: f64,
    },
    KappaMu {
        kappa: f64,
        mu: f64,
        #[serde(default = "one")]
        omega: f64,
    },
    EtaMu {
        eta: f64,
        mu: f64,
        #[serde(default = "one")]
        omega: f64,
    },
    KappaMuShadowed {
        kappa: f64,
        mu: f64,
        m: f64,
        #[serde(default = "one")]
        omega: f64,
    },
    Twdp {
        k: f64,
        delta: f64,
        #[serde(default = "one")]
        omega: f64,
    },
}

impl FadingConfig {
    pub fn to_model(self) -> CliResult<FadingModel> {
        let model = match self {
            FadingConfig::Rayleigh { omega } => FadingModel::Rayleigh { omega_x: omega },
            FadingConfig::Rician { k, omega } => FadingModel::Rician { k, omega_x: omega },
            FadingConfig::Nakagami { m, omega } => FadingModel::Nakagami { m, omega_x: omega },
            FadingConfig::Hoyt { q, omega } => FadingModel::Hoyt { q, omega_x: omega },
            FadingConfig::KappaMu { kappa, mu, omega } => FadingModel::KappaMu { kappa, mu, omega_x: omega },
            FadingConfig::EtaMu { eta, mu, omega } => FadingModel::EtaMu { eta, mu, omega_x: omega },
            FadingConfig::KappaMuShadowed { kappa, mu, m, omega } => {
                FadingModel::KappaMuShadowed { kappa, mu, m, omega_x: omega }
            }
            FadingConfig::Twdp { k, delta, omega } => FadingModel::Twdp { k, delta, omega_x: omega },
        };
        model
            .validate()
            .map_err(|e| CliError::Input(format!("fading: {}", e.to_string().replace("omega_x", "omega"))))?;
        Ok(model)
    }
}

impl ModelConfig {
    pub fn to_model(&self) -> CliResult<CompositeModel> {
        let m = self.shadowing.m;
        if !(m > 1.0) || !m.is_finite() {
            return Err(CliError::Input(format!("shadowing.m = {m} must exceed 1")));
        }
        let w = self.mean_power;
        if !(w > 0.0) || !w.is_finite() {
            return Err(CliError::Input(format!("mean_power = {w} must be positive")));
        }
        let baseline = self.fading.to_model()?;
        Ok(CompositeModel::new(m, w, baseline)?)
    }
}

/// Reads `arg` as a JSON document when it looks like one, otherwise as a file path.
fn document(arg: &str) -> CliResult<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Input(format!("cannot read config {arg}: {e}")))
    }
}

fn parse<T: for<'de> Deserialize<'de>>(arg: &str) -> CliResult<T> {
    serde_json::from_str(&document(arg)?).map_err(|e| CliError::Input(format!("config: {e}")))
}

pub fn load_model(arg: &str) -> CliResult<CompositeModel> {
    parse::<ModelConfig>(arg)?.to_model()
}

pub fn load_fading(arg: &str) -> CliResult<FadingModel> {
    parse::<FadingConfig>(arg)?.to_model()
}
