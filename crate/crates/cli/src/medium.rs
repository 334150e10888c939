//! Medium files.
//!
//! ```json
//! {
//!   "r0": 0.5,
//!   "R": 2.0,
//!   "V": { "kind": "step", "params": [0.3], "support": [0.5, 2.0] },
//!   "B": { "kind": "bump", "flux": 0.3, "support": [0.6, 1.8] }
//! }
//! ```
//!
//! `kind` is one of `zero`, `step`, `bump`, `spline`. A bump may give its
//! total `flux` (`∫ τ b(τ) dτ`) instead of an amplitude in `params`. A file
//! may instead name a preset: `{ "preset": "bump_step", "flux": 0.3 }`.

use std::path::Path;

use camscat_core::fields::{presets, EffectivePotential, Medium, ProfileKind, RadialProfile};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileSpec {
    kind: String,
    #[serde(default)]
    params: Vec<f64>,
    #[serde(default)]
    support: Option<[f64; 2]>,
    #[serde(default)]
    flux: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitMedium {
    r0: f64,
    #[serde(rename = "R")]
    big_r: f64,
    #[serde(rename = "V", default)]
    v: Option<ProfileSpec>,
    #[serde(rename = "B", default)]
    b: Option<ProfileSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetMedium {
    preset: String,
    #[serde(default)]
    flux: f64,
    #[serde(default)]
    v0: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MediumFile {
    Preset(PresetMedium),
    Explicit(ExplicitMedium),
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

fn profile(spec: Option<ProfileSpec>, name: &str) -> CliResult<RadialProfile> {
    let Some(spec) = spec else {
        return Ok(RadialProfile::zero());
    };
    let kind = match spec.kind.as_str() {
        "zero" => return Ok(RadialProfile::zero()),
        "step" => ProfileKind::Step,
        "bump" => ProfileKind::Bump,
        "spline" => ProfileKind::PolySpline,
        other => return Err(CliError::Config(format!("{name}: unknown profile kind {other:?}"))),
    };
    let [a, b] = spec.support.ok_or_else(|| CliError::Config(format!("{name}: missing support")))?;
    match (kind, spec.flux) {
        (ProfileKind::Bump, Some(flux)) if spec.params.is_empty() => RadialProfile::bump_with_flux(a, b, flux).map_err(config),
        (_, Some(_)) => Err(CliError::Config(format!("{name}: \"flux\" is only valid for a bump without params"))),
        _ => RadialProfile::new(kind, spec.params, (a, b)).map_err(config),
    }
}

fn preset(p: PresetMedium) -> CliResult<Medium> {
    let m = match p.preset.as_str() {
        "zero" => Medium::zero(presets::R0, presets::R),
        "bump_step" => presets::bump_step(p.flux),
        "aharonov_bohm" => presets::aharonov_bohm(p.flux),
        "spline_bump" => presets::spline_bump(p.flux),
        "step" => presets::step(p.v0.unwrap_or(0.3)),
        other => return Err(CliError::Config(format!("unknown preset {other:?}"))),
    };
    m.map_err(config)
}

pub fn parse_medium(text: &str) -> CliResult<Medium> {
    let file: MediumFile = serde_json::from_str(text).map_err(|e| CliError::Config(format!("malformed medium file: {e}")))?;
    match file {
        MediumFile::Preset(p) => preset(p),
        MediumFile::Explicit(m) => {
            let v = profile(m.v, "V")?;
            let b = profile(m.b, "B")?;
            Medium::new(v, b, m.r0, m.big_r).map_err(config)
        }
    }
}

pub fn load_medium(path: &Path) -> CliResult<Medium> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_medium(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn load_potential(path: &Path) -> CliResult<EffectivePotential> {
    Ok(EffectivePotential::from_medium(load_medium(path)?)?)
}
