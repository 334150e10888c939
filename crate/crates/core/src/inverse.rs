//! Inverse-problem tools: flux recovery from the tail of `σ(l)`, the
//! discriminator `F(ν) = 2i(αβ̃ − α̃β)`, the Börg–Marchenko function
//! `F(r, ν) = F⁺F̃⁻ − F⁻F̃⁺`, and the decoupling of `q_ν` into `γ` and `V`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::EffectivePotential;
use crate::math::{self, cabs};
use crate::quadrature::GaussLegendre;
use crate::radial::{jost_at, regular_at, wronskian, RadialGrid, Sign, SolverOptions};
use crate::scattering::ScatteringData;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Smallest `l` treated as part of the tail.
pub const TAIL_L_MIN: i64 = 20;
/// Minimum number of tail records.
pub const TAIL_MIN_RECORDS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct FluxEstimate {
    /// `γ(R)` modulo 2, in `[−1, 1)`.
    pub flux_over_2pi_mod2: f64,
    /// Spread of the accelerated tail sequence.
    pub residual: f64,
    pub l_used: Vec<i64>,
}

/// One Richardson level for an error expansion in powers of `1/l^p`.
fn richardson(ls: &[f64], seq: &[Complex64], p: i32) -> Vec<Complex64> {
    seq.windows(2)
        .zip(ls.windows(2))
        .map(|(s, l)| {
            let (a, b) = (libm::pow(l[1], p as f64), libm::pow(l[0], p as f64));
            (s[1] * a - s[0] * b) / (a - b)
        })
        .collect()
}

/// Recovers `γ(R)` mod 2 from `σ(l) → e^{iπγ(R)}` as `l → +∞`, using the
/// top `tail_fraction` of the records with `l ≥ 20` and two Richardson
/// levels (`1/l` and `1/l²`).
pub fn recover_flux(data: &ScatteringData, tail_fraction: f64) -> Result<FluxEstimate> {
    let mut tail: Vec<_> = data.records.iter().filter(|r| r.l >= TAIL_L_MIN).collect();
    if tail.len() < TAIL_MIN_RECORDS {
        return Err(Error::InsufficientTail { needed: TAIL_MIN_RECORDS, l_min: TAIL_L_MIN, found: tail.len() });
    }
    tail.sort_by_key(|r| r.l);
    let take = (libm::ceil(tail_fraction.clamp(0.0, 1.0) * tail.len() as f64) as usize).clamp(3, tail.len());
    let used = &tail[tail.len() - take..];
    let ls: Vec<f64> = used.iter().map(|r| r.l as f64).collect();
    let seq: Vec<Complex64> = used.iter().map(|r| r.sigma).collect();
    let first = richardson(&ls, &seq, 1);
    let second = richardson(&ls[1..], &first, 2);
    let mean = second.iter().fold(Complex64::new(0.0, 0.0), |a, &b| a + b) / second.len() as f64;
    let residual = second.iter().map(|&s| cabs(s - mean)).fold(0.0, f64::max);
    let mut estimate = math::carg(mean) / PI;
    if estimate >= 1.0 {
        estimate -= 2.0;
    }
    Ok(FluxEstimate { flux_over_2pi_mod2: estimate, residual, l_used: used.iter().map(|r| r.l).collect() })
}

/// Both sides of `F(l) = ∫_{r0}^{R} (q_l − q̃_l) Φ Φ̃ dr`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminatorReport {
    /// `F(l) = 2i(αβ̃ − α̃β)`, evaluated as `−W(Φ, Φ̃)` at the outer radius.
    pub values_f: BTreeMap<i64, Complex64>,
    /// The integral side, by Gauss–Legendre quadrature.
    pub rhs_values: BTreeMap<i64, Complex64>,
    /// `2i(αβ̃ − α̃β)` from the boundary values of the Jost solutions.
    pub direct_values: BTreeMap<i64, Complex64>,
    /// `|lhs − rhs| / max(|lhs|, |rhs|)`, zero when both vanish.
    pub rel_agreement: BTreeMap<i64, f64>,
    /// `max_l |F(l)|`.
    pub max_abs: f64,
}

fn check_same_flux(a: &EffectivePotential, b: &EffectivePotential) -> Result<()> {
    if (a.flux() - b.flux()).abs() > 1e-9 {
        return Err(Error::FluxMismatch { a: a.flux(), b: b.flux() });
    }
    if a.r0() != b.r0() {
        return Err(Error::Domain(format!("obstacle radii differ: {} vs {}", a.r0(), b.r0())));
    }
    Ok(())
}

fn outer_radius(a: &EffectivePotential, b: &EffectivePotential) -> f64 {
    let r = a.support_radius().max(b.support_radius());
    if r > a.r0() {
        r
    } else {
        a.r0() + 1.0
    }
}

/// Quadrature nodes and weights on `[r0, rr]`, aligned with the jumps of
/// both potentials and fine enough to resolve `r^{±2ν}`.
fn product_rule(a: &EffectivePotential, b: &EffectivePotential, nu: f64, rr: f64) -> Vec<(f64, f64)> {
    let r0 = a.r0();
    let mut edges = alloc::vec![r0];
    edges.extend(a.breakpoints_in(r0, rr));
    edges.extend(b.breakpoints_in(r0, rr));
    for s in [a.support_radius(), b.support_radius()] {
        if s > r0 && s < rr {
            edges.push(s);
        }
    }
    edges.push(rr);
    edges.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    edges.dedup();
    let rule = GaussLegendre::new(20);
    let mut out = Vec::new();
    for e in edges.windows(2) {
        let width = 0.1f64.min(2.0 * e[0] / (nu.abs() + 1.0));
        let n = libm::ceil((e[1] - e[0]) / width).max(1.0) as usize;
        for k in 0..n {
            let lo = e[0] + (e[1] - e[0]) * k as f64 / n as f64;
            let hi = e[0] + (e[1] - e[0]) * (k + 1) as f64 / n as f64;
            out.extend(rule.mapped(lo, hi));
        }
    }
    out
}

/// Evaluates both sides of the identity for each `l`; requires equal fluxes.
pub fn discriminator_f(qa: &EffectivePotential, qb: &EffectivePotential, l_list: &[i64], grid: &RadialGrid) -> Result<DiscriminatorReport> {
    check_same_flux(qa, qb)?;
    let opts = SolverOptions::for_grid(grid);
    let rr = outer_radius(qa, qb);
    let r0 = qa.r0();
    let mut rep = DiscriminatorReport {
        values_f: BTreeMap::new(),
        rhs_values: BTreeMap::new(),
        direct_values: BTreeMap::new(),
        rel_agreement: BTreeMap::new(),
        max_abs: 0.0,
    };
    for &l in l_list {
        let nu = Complex64::new(l as f64, 0.0);
        let nodes = product_rule(qa, qb, l as f64, rr);
        let mut pts: Vec<f64> = nodes.iter().map(|&(x, _)| x).collect();
        pts.push(rr);
        let pa = regular_at(qa, nu, &pts, &opts)?;
        let pb = regular_at(qb, nu, &pts, &opts)?;
        let lhs = -wronskian(pa[pts.len() - 1], pb[pts.len() - 1]);
        let mut rhs = Complex64::new(0.0, 0.0);
        for (k, &(x, w)) in nodes.iter().enumerate() {
            rhs += (qa.eval(nu, x) - qb.eval(nu, x)) * pa[k].0 * pb[k].0 * w;
        }
        let fa = jost_at(qa, Sign::Plus, nu, &[r0], &opts)?[0].0;
        let fb = jost_at(qb, Sign::Plus, nu, &[r0], &opts)?[0].0;
        let (alpha_a, beta_a) = (I * fa.conj(), -I * fa);
        let (alpha_b, beta_b) = (I * fb.conj(), -I * fb);
        let direct = 2.0 * I * (alpha_a * beta_b - alpha_b * beta_a);
        let scale = cabs(lhs).max(cabs(rhs));
        let rel = if scale == 0.0 { 0.0 } else { cabs(lhs - rhs) / scale };
        rep.max_abs = rep.max_abs.max(cabs(lhs));
        rep.values_f.insert(l, lhs);
        rep.rhs_values.insert(l, rhs);
        rep.direct_values.insert(l, direct);
        rep.rel_agreement.insert(l, rel);
    }
    Ok(rep)
}

/// `|F(l)|·(|ν_R|+1)²/(|l|·(R/r0)^{2 Re ν_R})` for each nonzero `l` in the report.
pub fn discriminator_growth(rep: &DiscriminatorReport, flux: f64, r0: f64, big_r: f64) -> BTreeMap<i64, f64> {
    rep.values_f
        .iter()
        .filter(|(&l, _)| l != 0)
        .map(|(&l, &f)| {
            let nu_r = l as f64 - flux;
            let env = (l as f64).abs() * libm::pow(big_r / r0, 2.0 * nu_r) / ((nu_r.abs() + 1.0) * (nu_r.abs() + 1.0));
            (l, cabs(f) / env)
        })
        .collect()
}

/// `F(r, ν) = F⁺(r, ν)F̃⁻(r, ν) − F⁻(r, ν)F̃⁺(r, ν)` for each `ν`.
pub fn borg_marchenko_f(qa: &EffectivePotential, qb: &EffectivePotential, r: f64, nu_list: &[Complex64], grid: &RadialGrid) -> Result<Vec<Complex64>> {
    if r < qa.r0() || r < qb.r0() {
        return Err(Error::Domain(format!("r = {r} below the obstacle")));
    }
    let opts = SolverOptions::for_grid(grid);
    nu_list
        .iter()
        .map(|&nu| {
            let ap = jost_at(qa, Sign::Plus, nu, &[r], &opts)?[0].0;
            let am = jost_at(qa, Sign::Minus, nu, &[r], &opts)?[0].0;
            let bp = jost_at(qb, Sign::Plus, nu, &[r], &opts)?[0].0;
            let bm = jost_at(qb, Sign::Minus, nu, &[r], &opts)?[0].0;
            Ok(ap * bm - am * bp)
        })
        .collect()
}

/// `F(r, ν)` rebuilt from scattering quantities for real `ν`:
/// `Ψ̃F⁺ − ΨF̃⁺ + e^{−iπ(ν+1/2)}(σ − σ̃)F⁺F̃⁺` with `Ψ = Φ/β`.
pub fn borg_marchenko_reconstructed(qa: &EffectivePotential, qb: &EffectivePotential, r: f64, nu: f64, grid: &RadialGrid) -> Result<Complex64> {
    let opts = SolverOptions::for_grid(grid);
    let nu_c = Complex64::new(nu, 0.0);
    let mut parts = Vec::new();
    for q in [qa, qb] {
        let f0 = jost_at(q, Sign::Plus, nu_c, &[q.r0()], &opts)?[0].0;
        let fr = jost_at(q, Sign::Plus, nu_c, &[r], &opts)?[0].0;
        let phi = regular_at(q, nu_c, &[r], &opts)?[0].0;
        let (alpha, beta) = (I * f0.conj(), -I * f0);
        if cabs(beta) < 1e-300 {
            return Err(Error::BetaZero(nu_c));
        }
        let sigma = math::exp_i_pi(nu_c + 0.5) * alpha / beta;
        parts.push((phi / beta, fr, sigma));
    }
    let (psi_a, fa, sa) = parts[0];
    let (psi_b, fb, sb) = parts[1];
    Ok(psi_b * fa - psi_a * fb + math::exp_i_pi(-(nu_c + 0.5)) * (sa - sb) * fa * fb)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoupleReport {
    pub gamma_match: bool,
    pub v_match: bool,
    pub max_dev: f64,
    pub max_gamma_dev: f64,
    pub max_v_dev: f64,
}

/// Tolerance for the decoupling matches.
pub const DECOUPLE_TOL: f64 = 1e-9;

/// Splits `q_{ν1}`, `q_{ν2}` of each medium into `γ(r)` and `V(r)` by
/// solving the affine system, and compares the two media on the grid.
pub fn decouple_potentials(qa: &EffectivePotential, qb: &EffectivePotential, grid: &RadialGrid, nu_pair: (f64, f64)) -> Result<DecoupleReport> {
    let (n1, n2) = nu_pair;
    if (n1 - n2).abs() < 1e-6 {
        return Err(Error::IllConditioned((n1 - n2).abs()));
    }
    let split = |q: &EffectivePotential, r: f64| {
        let a = q.eval(Complex64::new(n1, 0.0), r).re;
        let b = q.eval(Complex64::new(n2, 0.0), r).re;
        let q1 = (a - b) / (n1 - n2);
        let q0 = a - n1 * q1;
        let dgamma = -r * r * q1 / 2.0;
        let flux = q.flux();
        let v = q0 - dgamma * (dgamma + 2.0 * flux) / (r * r);
        (dgamma + flux, v)
    };
    let mut dg: f64 = 0.0;
    let mut dv: f64 = 0.0;
    for &r in grid.points() {
        let (ga, va) = split(qa, r);
        let (gb, vb) = split(qb, r);
        dg = dg.max((ga - gb).abs());
        dv = dv.max((va - vb).abs());
    }
    Ok(DecoupleReport {
        gamma_match: dg <= DECOUPLE_TOL,
        v_match: dv <= DECOUPLE_TOL,
        max_dev: dg.max(dv),
        max_gamma_dev: dg,
        max_v_dev: dv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{presets, Medium, RadialProfile};
    use crate::scattering::{assemble_scattering_data, phase_shifts};

    fn q(m: Medium) -> EffectivePotential {
        EffectivePotential::from_medium(m).unwrap()
    }

    #[test]
    fn insufficient_tail() {
        let data = assemble_scattering_data(0.0, (0..25).map(|l| (l, Complex64::new(1.0, 0.0))).collect());
        assert!(matches!(recover_flux(&data, 0.5), Err(Error::InsufficientTail { found: 5, .. })));
    }

    #[test]
    fn richardson_removes_first_order_tail() {
        let target = Complex64::new(0.0, 0.6 * PI).exp();
        let samples = (20..=40).map(|l| (l, target * (1.0 + 0.3 / l as f64 + 0.2 / (l * l) as f64))).collect();
        let est = recover_flux(&assemble_scattering_data(0.6, samples), 0.5).unwrap();
        assert!((est.flux_over_2pi_mod2 - 0.6).abs() < 1e-5, "{}", est.flux_over_2pi_mod2);
    }

    #[test]
    fn zero_medium_flux_is_zero() {
        let qz = q(Medium::zero(0.5, 2.0).unwrap());
        let grid = RadialGrid::for_potential(&qz, 64).unwrap();
        let data = phase_shifts(&qz, 0..=40, &grid).unwrap();
        let est = recover_flux(&data, 0.5).unwrap();
        assert!(est.flux_over_2pi_mod2.abs() < 1e-6);
    }

    #[test]
    fn identical_media_give_zero() {
        let a = q(presets::step(0.3).unwrap());
        let grid = RadialGrid::for_potential(&a, 64).unwrap();
        let rep = discriminator_f(&a, &a, &[1, 5], &grid).unwrap();
        assert_eq!(rep.max_abs, 0.0);
        let bm = borg_marchenko_f(&a, &a, 0.7, &[Complex64::new(2.0, 1.0)], &grid).unwrap();
        assert_eq!(bm[0], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn identity_for_distinct_steps() {
        let a = q(presets::step(0.3).unwrap());
        let b = q(presets::step(0.5).unwrap());
        let grid = RadialGrid::for_potential(&a, 64).unwrap();
        let rep = discriminator_f(&a, &b, &[1, 5, 10], &grid).unwrap();
        for (l, rel) in &rep.rel_agreement {
            assert!(*rel < 1e-6, "l = {l}: {rel}");
        }
    }

    #[test]
    fn flux_mismatch_is_reported() {
        let a = q(presets::bump_step(0.3).unwrap());
        let b = q(presets::bump_step(0.2).unwrap());
        let grid = RadialGrid::for_potential(&a, 64).unwrap();
        assert!(matches!(discriminator_f(&a, &b, &[1], &grid), Err(Error::FluxMismatch { .. })));
    }

    #[test]
    fn decoupling() {
        let a = q(presets::bump_step(0.3).unwrap());
        let grid = RadialGrid::for_potential(&a, 128).unwrap();
        let same = decouple_potentials(&a, &a, &grid, (1.0, 2.0)).unwrap();
        assert!(same.gamma_match && same.v_match && same.max_dev <= 1e-12);
        let b_med = Medium::new(RadialProfile::step(0.5, 2.0, 0.4).unwrap(), a.medium().b.clone(), 0.5, 2.0).unwrap();
        let only_v = decouple_potentials(&a, &q(b_med), &grid, (1.0, 2.0)).unwrap();
        assert!(only_v.gamma_match && !only_v.v_match);
        let c_med = Medium::new(
            a.medium().v.clone(),
            RadialProfile::bump_with_flux(0.8, 1.9, 0.3).unwrap(),
            0.5,
            2.0,
        )
        .unwrap();
        let other_b = decouple_potentials(&a, &q(c_med), &grid, (1.0, 2.0)).unwrap();
        assert!(!other_b.gamma_match);
        assert!(matches!(decouple_potentials(&a, &a, &grid, (1.0, 1.0 + 1e-9)), Err(Error::IllConditioned(_))));
    }
}
