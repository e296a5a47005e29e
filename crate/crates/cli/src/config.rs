//! JSON run configuration.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "schemes": [
//!     { "family": "gaussian", "name": "GG", "m_low": 1e-3, "m_high": 1e-2, "sigma0": 1e-3, "sigma1": 2e-2 },
//!     { "family": "laplace", "m_low": 1e-3, "m_high": 1e-2, "lambda0": 1e-4 }
//!   ],
//!   "samples_per_symbol": 10,
//!   "sigma_w": 2e-5,
//!   "sweep": { "variable": "N", "grid": [5, 10, 20] }
//! }
//! ```
//!
//! Every key is optional except `schema_version`. Missing schemes default to
//! the built-in `paper-sec4` profile; a mixture without `sigma1_high` or a
//! Laplacian without `lambda1` is power-matched to `target_power` (default:
//! the profile's Gaussian alphabet).

use std::path::{Path, PathBuf};

use gqnm::analytics::{match_power_laplace, match_power_motg, TheoryMode, TheoryOptions};
use gqnm::experiments::{NamedScheme, Profile};
use gqnm::modem::{DetectorMode, SchemeParams};
use gqnm::noise::{Family, MomentFidelity};
use serde::Deserialize;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    /// Built-in parameter set; only `paper-sec4` exists.
    pub profile: Option<String>,
    pub schemes: Option<Vec<SchemeConfig>>,
    pub samples_per_symbol: Option<usize>,
    pub sigma_w: Option<f64>,
    pub num_symbols: Option<u64>,
    pub seed: Option<u64>,
    pub theory_mode: Option<TheoryModeName>,
    pub fidelity: Option<FidelityName>,
    pub detector: Option<DetectorName>,
    pub sweep: Option<SweepConfig>,
    pub output: Option<OutputConfig>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SchemeConfig {
    Gaussian {
        name: Option<String>,
        m_low: f64,
        m_high: f64,
        sigma0: f64,
        sigma1: f64,
    },
    Motg {
        name: Option<String>,
        m_low: f64,
        m_high: f64,
        p: f64,
        sigma0_low: f64,
        sigma1_low: f64,
        sigma0_high: f64,
        sigma1_high: Option<f64>,
        target_power: Option<f64>,
    },
    Laplace {
        name: Option<String>,
        m_low: f64,
        m_high: f64,
        lambda0: f64,
        lambda1: Option<f64>,
        target_power: Option<f64>,
    },
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub preset: Option<PresetName>,
    pub variable: Option<String>,
    pub grid: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PresetName {
    Fig4,
    Fig5,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TheoryModeName {
    NDivided,
    PaperLiteral,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FidelityName {
    Exact,
    PaperLiteral,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DetectorName {
    PaperThreshold,
    MeanCompensated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyName {
    Gaussian,
    Motg,
    Laplace,
}

impl FamilyName {
    pub fn family(self) -> Family {
        match self {
            FamilyName::Gaussian => Family::Gaussian,
            FamilyName::Motg => Family::Mixture,
            FamilyName::Laplace => Family::Laplacian,
        }
    }
}

impl From<TheoryModeName> for TheoryMode {
    fn from(m: TheoryModeName) -> Self {
        match m {
            TheoryModeName::NDivided => TheoryMode::NDivided,
            TheoryModeName::PaperLiteral => TheoryMode::PaperLiteral,
        }
    }
}

impl From<FidelityName> for MomentFidelity {
    fn from(f: FidelityName) -> Self {
        match f {
            FidelityName::Exact => MomentFidelity::Exact,
            FidelityName::PaperLiteral => MomentFidelity::PaperLiteral,
        }
    }
}

impl From<DetectorName> for DetectorMode {
    fn from(d: DetectorName) -> Self {
        match d {
            DetectorName::PaperThreshold => DetectorMode::PaperThreshold,
            DetectorName::MeanCompensated => DetectorMode::MeanCompensated,
        }
    }
}

impl RunConfig {
    /// Reads and validates a config file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        // check the version first so an old file gets a clear message rather
        // than an unknown-field error
        let raw: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("malformed JSON: {e}")))?;
        match raw.get("schema_version").map(|v| v.as_u64()) {
            None => return Err(CliError::Config("missing field `schema_version`".into())),
            Some(Some(v)) if v == SCHEMA_VERSION as u64 => {}
            Some(_) => {
                return Err(CliError::Config(format!(
                    "field `schema_version`: expected {SCHEMA_VERSION}, got {}",
                    raw["schema_version"]
                )))
            }
        }
        let cfg: RunConfig =
            serde_json::from_value(raw).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(p) = &self.profile {
            builtin_profile(p)?;
        }
        if let Some(s) = &self.schemes {
            if s.is_empty() {
                return Err(CliError::Config(
                    "field `schemes`: must not be empty".into(),
                ));
            }
        }
        if let Some(sweep) = &self.sweep {
            if sweep.preset.is_some() && (sweep.variable.is_some() || sweep.grid.is_some()) {
                return Err(CliError::Config(
                    "field `sweep`: give either `preset` or `variable`+`grid`".into(),
                ));
            }
            if sweep.preset.is_none() && (sweep.variable.is_none() || sweep.grid.is_none()) {
                return Err(CliError::Config(
                    "field `sweep`: custom sweeps need both `variable` and `grid`".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn profile(&self) -> Result<Profile, CliError> {
        builtin_profile(self.profile.as_deref().unwrap_or("paper-sec4"))
    }

    pub fn theory_options(&self) -> TheoryOptions {
        TheoryOptions {
            mode: self.theory_mode.map(Into::into).unwrap_or_default(),
            fidelity: self.fidelity.map(Into::into).unwrap_or_default(),
        }
    }

    /// Named schemes at `n` samples per symbol, restricted to `family` when
    /// given.
    pub fn schemes(
        &self,
        n: usize,
        family: Option<FamilyName>,
    ) -> Result<Vec<NamedScheme>, CliError> {
        let profile = self.profile()?;
        let fidelity = self.theory_options().fidelity;
        let all = match &self.schemes {
            None => {
                let mut p = profile.clone();
                p.fidelity = fidelity;
                p.schemes(n)?
            }
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(i, s)| s.build(&profile, n, fidelity).map_err(|e| in_scheme(i, e)))
                .collect::<Result<_, _>>()?,
        };
        let picked: Vec<NamedScheme> = all
            .into_iter()
            .filter(|s| family.is_none_or(|f| s.scheme.family() == Some(f.family())))
            .collect();
        if picked.is_empty() {
            return Err(CliError::Config(format!(
                "no configured scheme of family {}",
                family.map(|f| f.family().to_string()).unwrap_or_default()
            )));
        }
        Ok(picked)
    }
}

fn in_scheme(i: usize, e: CliError) -> CliError {
    match e {
        CliError::Config(msg) => CliError::Config(format!("field `schemes[{i}]`: {msg}")),
        CliError::Model(gqnm::Error::InvalidInput(msg)) => {
            CliError::Config(format!("field `schemes[{i}]`: {msg}"))
        }
        other => other,
    }
}

pub fn builtin_profile(name: &str) -> Result<Profile, CliError> {
    match name {
        "paper-sec4" => Ok(Profile::paper_sec4()),
        other => Err(CliError::Config(format!(
            "field `profile`: unknown profile {other:?} (available: paper-sec4)"
        ))),
    }
}

impl SchemeConfig {
    fn build(
        &self,
        profile: &Profile,
        n: usize,
        fidelity: MomentFidelity,
    ) -> Result<NamedScheme, CliError> {
        let default_target = || profile.target_power();
        Ok(match *self {
            SchemeConfig::Gaussian {
                ref name,
                m_low,
                m_high,
                sigma0,
                sigma1,
            } => NamedScheme::new(
                name.clone().unwrap_or_else(|| "GG".into()),
                SchemeParams::gg(m_low, m_high, sigma0, sigma1, n)?,
            ),
            SchemeConfig::Motg {
                ref name,
                m_low,
                m_high,
                p,
                sigma0_low,
                sigma1_low,
                sigma0_high,
                sigma1_high,
                target_power,
            } => {
                let s1h = match sigma1_high {
                    Some(v) => v,
                    None => {
                        let target = target_power.map_or_else(default_target, Ok)?;
                        match_power_motg(
                            target,
                            p,
                            sigma0_low,
                            sigma1_low,
                            sigma0_high,
                            m_low,
                            m_high,
                            fidelity,
                        )?
                    }
                };
                NamedScheme::new(
                    name.clone().unwrap_or_else(|| "GMoTG".into()),
                    SchemeParams::motg(
                        m_low,
                        m_high,
                        p,
                        sigma0_low,
                        sigma1_low,
                        sigma0_high,
                        s1h,
                        n,
                    )?,
                )
            }
            SchemeConfig::Laplace {
                ref name,
                m_low,
                m_high,
                lambda0,
                lambda1,
                target_power,
            } => {
                let l1 = match lambda1 {
                    Some(v) => v,
                    None => {
                        let target = target_power.map_or_else(default_target, Ok)?;
                        match_power_laplace(target, lambda0, m_low, m_high)?
                    }
                };
                NamedScheme::new(
                    name.clone().unwrap_or_else(|| "GLAP".into()),
                    SchemeParams::glap(m_low, m_high, lambda0, l1, n)?,
                )
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> String {
        match RunConfig::parse(text) {
            Err(CliError::Config(msg)) => msg,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config() {
        let cfg = RunConfig::parse(r#"{"schema_version": 1}"#).unwrap();
        assert_eq!(cfg.schemes(10, None).unwrap().len(), 3);
        assert_eq!(cfg.theory_options(), TheoryOptions::default());
    }

    #[test]
    fn unknown_keys_are_named() {
        assert!(err(r#"{"schema_version": 1, "sigma": 1}"#).contains("sigma"));
        let msg = err(
            r#"{"schema_version": 1, "schemes": [{"family": "laplace", "m_low": 0, "m_high": 1, "lambda0": 1, "lamda1": 2}]}"#,
        );
        assert!(msg.contains("lamda1"), "{msg}");
    }

    #[test]
    fn version_is_checked() {
        assert!(err("{}").contains("schema_version"));
        assert!(err(r#"{"schema_version": 2}"#).contains("expected 1"));
        assert!(err("{").contains("malformed"));
    }

    #[test]
    fn wrong_types_are_named() {
        assert!(err(r#"{"schema_version": 1, "sigma_w": "small"}"#).contains("string"));
        assert!(err(r#"{"schema_version": 1, "profile": "nope"}"#).contains("profile"));
        assert!(
            err(r#"{"schema_version": 1, "sweep": {"preset": "fig4", "grid": [1]}}"#)
                .contains("sweep")
        );
    }

    #[test]
    fn schemes_power_match_by_default() {
        let cfg = RunConfig::parse(
            r#"{"schema_version": 1, "schemes": [
                {"family": "laplace", "m_low": 1e-3, "m_high": 1e-2, "lambda0": 1e-4},
                {"family": "motg", "m_low": 1e-3, "m_high": 1e-2, "p": 0.5,
                 "sigma0_low": 5e-4, "sigma1_low": 1e-3, "sigma0_high": 5e-3}
            ]}"#,
        )
        .unwrap();
        let schemes = cfg.schemes(10, None).unwrap();
        let profile = Profile::paper_sec4();
        assert_eq!(schemes[0].scheme, profile.glap(10).unwrap());
        assert_eq!(schemes[1].scheme, profile.motg(10).unwrap());
        assert_eq!(
            cfg.schemes(10, Some(FamilyName::Motg)).unwrap()[0].name,
            "GMoTG"
        );
        assert!(cfg.schemes(10, Some(FamilyName::Gaussian)).is_err());
    }

    #[test]
    fn bad_scheme_parameters_name_the_entry() {
        let cfg = RunConfig::parse(
            r#"{"schema_version": 1, "schemes": [
                {"family": "gaussian", "m_low": 1e-3, "m_high": 1e-2, "sigma0": 1e-3, "sigma1": 2e-2},
                {"family": "gaussian", "m_low": 1e-2, "m_high": 1e-3, "sigma0": 1e-3, "sigma1": 2e-2}
            ]}"#,
        )
        .unwrap();
        match cfg.schemes(10, None) {
            Err(CliError::Config(msg)) => assert!(msg.contains("schemes[1]"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
