//! Jost functions `α(ν) = iF⁻(r0, ν)`, `β(ν) = −iF⁺(r0, ν)`, the Regge
//! interpolation function `σ(ν) = e^{iπ(ν+1/2)} α(ν)/β(ν)` and the phase
//! shifts `σ(l) = e^{2iδ_l}`.
//!
//! Limits: as real `ν → +∞`, `σ(ν) → e^{+iπγ(R)}`; as `ν → −∞`,
//! `σ(ν) → e^{−iπγ(R)}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::RangeInclusive;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::EffectivePotential;
use crate::math::{self, cabs};
use crate::radial::{free_jost, jost_at, regular_at, wronskian, RadialGrid, Sign, SolverOptions};
use crate::specfun::NU_MAX;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Describes how `δ_l` is unwrapped.
pub const BRANCH_ANCHOR: &str =
    "principal value Arg(sigma)/2 at the largest l, continued to smaller l by nearest-branch continuation";

/// Between integers `δ(ν)` depends on the branch convention.
pub const CAM_CONVENTION: &str = "sigma(nu) is branch free; delta(nu) off the integers depends on the unwrapping convention";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostFunctions {
    pub nu: Complex64,
    /// `α = iF⁻(r0, ν)`.
    pub alpha: Complex64,
    /// `β = −iF⁺(r0, ν)`.
    pub beta: Complex64,
    /// `α = (i/2) W(Φ, F⁻)` evaluated at `R`.
    pub alpha_wronskian: Complex64,
    /// `β = −(i/2) W(Φ, F⁺)` evaluated at `R`.
    pub beta_wronskian: Complex64,
}

impl JostFunctions {
    /// Largest relative difference between the two routes.
    pub fn route_disagreement(&self) -> f64 {
        let da = cabs(self.alpha - self.alpha_wronskian) / cabs(self.alpha).max(1e-300);
        let db = cabs(self.beta - self.beta_wronskian) / cabs(self.beta).max(1e-300);
        da.max(db)
    }
}

fn check_order(q: &EffectivePotential, nu: Complex64) -> Result<()> {
    let nu_r = nu - q.flux();
    if cabs(nu_r) > NU_MAX {
        return Err(Error::Domain(format!("|nu_R| = {} exceeds {NU_MAX}", cabs(nu_r))));
    }
    Ok(())
}

/// The point where the Wronskian route is evaluated.
fn outer_point(q: &EffectivePotential, grid: &RadialGrid) -> f64 {
    if q.vanishes_outside_obstacle() {
        grid.end().max(q.r0() + 1.0)
    } else {
        q.support_radius()
    }
}

/// `α` and `β` by both routes: boundary values of `F±` at `r0`, and
/// Wronskians of the regular solution with `F∓` at `R`.
pub fn jost_functions(q: &EffectivePotential, nu: Complex64, grid: &RadialGrid) -> Result<JostFunctions> {
    check_order(q, nu)?;
    let opts = SolverOptions::for_grid(grid);
    let r0 = q.r0();
    let fp = jost_at(q, Sign::Plus, nu, &[r0], &opts)?[0];
    let fm = jost_at(q, Sign::Minus, nu, &[r0], &opts)?[0];
    let rr = outer_point(q, grid);
    let phi = regular_at(q, nu, &[rr], &opts)?[0];
    let fp_r = free_jost(Sign::Plus, nu, rr, q.flux())?;
    let fm_r = free_jost(Sign::Minus, nu, rr, q.flux())?;
    Ok(JostFunctions {
        nu,
        alpha: I * fm.0,
        beta: -I * fp.0,
        alpha_wronskian: 0.5 * I * wronskian(phi, fm_r),
        beta_wronskian: -0.5 * I * wronskian(phi, fp_r),
    })
}

/// `(α₀, β₀)` of the free problem with flux `flux`.
pub fn free_jost_functions(nu: Complex64, r0: f64, flux: f64) -> Result<(Complex64, Complex64)> {
    let (m, _) = free_jost(Sign::Minus, nu, r0, flux)?;
    let (p, _) = free_jost(Sign::Plus, nu, r0, flux)?;
    Ok((I * m, -I * p))
}

fn sigma_from(nu: Complex64, alpha: Complex64, beta: Complex64) -> Result<Complex64> {
    if cabs(beta) < 1e-300 {
        return Err(Error::BetaZero(nu));
    }
    Ok(math::exp_i_pi(nu + 0.5) * alpha / beta)
}

/// `σ₀(ν)` of the free problem.
pub fn free_sigma(nu: Complex64, r0: f64, flux: f64) -> Result<Complex64> {
    let (a, b) = free_jost_functions(nu, r0, flux)?;
    sigma_from(nu, a, b)
}

/// `σ(ν)`; for real `ν` also checks `||σ| − 1| ≤ 1e-8`.
pub fn regge_sigma(q: &EffectivePotential, nu: Complex64, grid: &RadialGrid) -> Result<Complex64> {
    check_order(q, nu)?;
    let opts = SolverOptions::for_grid(grid);
    let r0 = q.r0();
    let fp = jost_at(q, Sign::Plus, nu, &[r0], &opts)?[0].0;
    let fm = if nu.im == 0.0 { fp.conj() } else { jost_at(q, Sign::Minus, nu, &[r0], &opts)?[0].0 };
    let sigma = sigma_from(nu, I * fm, -I * fp)?;
    if nu.im == 0.0 {
        let modulus = cabs(sigma);
        if (modulus - 1.0).abs() > 1e-8 {
            return Err(Error::NotUnimodular { nu: nu.re, modulus });
        }
    }
    Ok(sigma)
}

/// `σ(l)` for one integer `l`, using the reversed-field potential `q_rev`
/// for `l < 0`: `σ_γ(l) = σ_{−γ}(|l|)`.
pub fn sigma_at_integer(q: &EffectivePotential, q_rev: &EffectivePotential, l: i64, grid: &RadialGrid) -> Result<Complex64> {
    if l >= 0 {
        regge_sigma(q, Complex64::new(l as f64, 0.0), grid)
    } else {
        regge_sigma(q_rev, Complex64::new(-l as f64, 0.0), grid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRecord {
    pub l: i64,
    pub sigma: Complex64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringData {
    pub flux_over_2pi: f64,
    /// Records in increasing `l`.
    pub records: Vec<PhaseRecord>,
    pub branch_anchor: String,
}

impl ScatteringData {
    pub fn get(&self, l: i64) -> Option<&PhaseRecord> {
        self.records.iter().find(|r| r.l == l)
    }
}

/// Unwraps `δ_l = Arg σ(l)/2` from the largest `l` downwards.
pub fn assemble_scattering_data(flux_over_2pi: f64, mut samples: Vec<(i64, Complex64)>) -> ScatteringData {
    samples.sort_by_key(|s| core::cmp::Reverse(s.0));
    let mut records = Vec::with_capacity(samples.len());
    let mut prev: Option<f64> = None;
    for (l, sigma) in samples {
        let principal = math::carg(sigma) / 2.0;
        let delta = match prev {
            None => principal,
            Some(p) => principal + PI * libm::round((p - principal) / PI),
        };
        prev = Some(delta);
        records.push(PhaseRecord { l, sigma, delta });
    }
    records.reverse();
    ScatteringData { flux_over_2pi, records, branch_anchor: String::from(BRANCH_ANCHOR) }
}

/// `σ(l)` and `δ_l` for every `l` in `l_range`.
pub fn phase_shifts(q: &EffectivePotential, l_range: RangeInclusive<i64>, grid: &RadialGrid) -> Result<ScatteringData> {
    let q_rev = q.with_reversed_field();
    let samples = l_range
        .map(|l| Ok((l, sigma_at_integer(q, &q_rev, l, grid)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_scattering_data(q.flux(), samples))
}

/// `σ(l)` for `l ≤ 0`, always through the reversed field at `|l|`.
pub fn sigma_tail_negative(q: &EffectivePotential, l_range: RangeInclusive<i64>, grid: &RadialGrid) -> Result<Vec<(i64, Complex64)>> {
    if *l_range.end() > 0 {
        return Err(Error::Domain(format!("negative tail needs l <= 0, got up to {}", l_range.end())));
    }
    let q_rev = q.with_reversed_field();
    l_range
        .map(|l| Ok((l, regge_sigma(&q_rev, Complex64::new(-l as f64, 0.0), grid)?)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    PlusInfinity,
    MinusInfinity,
}

/// The limit of `σ(l)` as `l → ±∞`: `e^{±iπγ(R)}`.
pub fn sigma_limit(flux_over_2pi: f64, tail: Tail) -> Complex64 {
    match tail {
        Tail::PlusInfinity => math::exp_i_pi(Complex64::new(flux_over_2pi, 0.0)),
        Tail::MinusInfinity => math::exp_i_pi(Complex64::new(-flux_over_2pi, 0.0)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CamPoint {
    pub nu: Complex64,
    pub sigma: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExcludedPoint {
    pub nu: Complex64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CamScan {
    pub flux_over_2pi: f64,
    pub points: Vec<CamPoint>,
    pub excluded: Vec<ExcludedPoint>,
    pub convention: String,
}

/// Evaluates `σ` at one scan point, sorting failures into exclusions.
pub fn cam_point(q: &EffectivePotential, nu: Complex64, grid: &RadialGrid) -> core::result::Result<CamPoint, ExcludedPoint> {
    regge_sigma(q, nu, grid)
        .map(|sigma| CamPoint { nu, sigma })
        .map_err(|e| ExcludedPoint { nu, reason: format!("{e}") })
}

/// `σ(ν)` over a list of complex orders; failures (zeros of `β`, domain
/// violations) are recorded as excluded points.
pub fn cam_scan(q: &EffectivePotential, nu_grid: &[Complex64], grid: &RadialGrid) -> CamScan {
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for &nu in nu_grid {
        match cam_point(q, nu, grid) {
            Ok(p) => points.push(p),
            Err(e) => excluded.push(e),
        }
    }
    CamScan { flux_over_2pi: q.flux(), points, excluded, convention: String::from(CAM_CONVENTION) }
}
