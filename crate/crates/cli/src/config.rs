use std::collections::BTreeMap;
use std::path::PathBuf;

use camscat_core::fields::EffectivePotential;
use camscat_core::specfun::NU_MAX;
use camscat_core::Complex64;

use crate::error::{CliError, CliResult};
use crate::medium::load_potential;
use crate::output::Format;

pub const MIN_GRID: usize = 256;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub medium: Option<PathBuf>,
    pub medium_b: Option<PathBuf>,
    pub l_max: i64,
    pub grid_size: usize,
    pub tolerances: BTreeMap<String, f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.grid_size < MIN_GRID {
            return Err(CliError::Config(format!("--grid must be at least {MIN_GRID}, got {}", self.grid_size)));
        }
        if self.l_max < 0 {
            return Err(CliError::Config(format!("--lmax must be non-negative, got {}", self.l_max)));
        }
        Ok(())
    }

    /// Checks `l_max ≤ NU_MAX − |flux|` for a loaded potential.
    pub fn check_l_max(&self, q: &EffectivePotential) -> CliResult<()> {
        let limit = NU_MAX - q.flux().abs();
        if self.l_max as f64 > limit {
            return Err(CliError::Config(format!("--lmax {} exceeds {limit:.3} for flux/2pi = {}", self.l_max, q.flux())));
        }
        Ok(())
    }

    pub fn potential_a(&self) -> CliResult<EffectivePotential> {
        let path = self.medium.as_ref().ok_or_else(|| CliError::Config("--medium is required".into()))?;
        load_potential(path)
    }

    pub fn potential_b(&self) -> CliResult<EffectivePotential> {
        let path = self.medium_b.as_ref().ok_or_else(|| CliError::Config("--medium-b is required".into()))?;
        load_potential(path)
    }

    pub fn tol(&self, key: &str, default: f64) -> f64 {
        self.tolerances.get(key).copied().unwrap_or(default)
    }
}

fn num(s: &str, what: &str) -> CliResult<f64> {
    s.trim().parse::<f64>().map_err(|_| CliError::Config(format!("{what}: cannot parse {s:?} as a number")))
}

/// `KEY=VALUE`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got {s:?}"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("cannot parse {v:?} as a number"))?;
    if v.is_nan() || v <= 0.0 {
        return Err(format!("tolerance {k} must be positive"));
    }
    Ok((k.trim().to_string(), v))
}

/// `RE` or `RE,IM`.
pub fn parse_complex(s: &str) -> CliResult<Complex64> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(num(re, "order")?, num(im, "order")?)),
        None => Ok(Complex64::new(num(s, "order")?, 0.0)),
    }
}

fn axis(s: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(CliError::Config(format!("scan axis {s:?} must be START:END:COUNT")));
    };
    let (a, b) = (num(a, "scan")?, num(b, "scan")?);
    let n: usize = n.trim().parse().map_err(|_| CliError::Config(format!("scan count {n:?} is not an integer")))?;
    match n {
        0 => Err(CliError::Config("scan count must be positive".into())),
        1 => Ok(vec![a]),
        _ => Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()),
    }
}

/// `"re0:re1:n,im0:im1:m"`, expanded row by row (imaginary part outer).
pub fn parse_scan(s: &str) -> CliResult<Vec<Complex64>> {
    let (re, im) = s.split_once(',').ok_or_else(|| CliError::Config(format!("scan {s:?} must be RE_AXIS,IM_AXIS")))?;
    let (re, im) = (axis(re)?, axis(im)?);
    Ok(im.iter().flat_map(|&y| re.iter().map(move |&x| Complex64::new(x, y))).collect())
}
