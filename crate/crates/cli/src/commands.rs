use camscat_core::fields::EffectivePotential;
use camscat_core::inverse::{discriminator_f, recover_flux, FluxEstimate};
use camscat_core::radial::RadialGrid;
use camscat_core::scattering::{
    assemble_scattering_data, cam_point, sigma_at_integer, sigma_limit, ScatteringData, Tail, CAM_CONVENTION,
};
use camscat_core::specfun::{bessel_h, ComplexOrder};
use camscat_core::Complex64;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::Table;

/// Default half-width of the tail window used for flux recovery.
pub const DEFAULT_TAIL_FRACTION: f64 = 0.5;
/// Default tolerance on `flux/2π mod 2` when comparing two media.
pub const DEFAULT_FLUX_TOL: f64 = 1e-6;
/// Default threshold on `max |F(l)|` below which two media are reported identical.
pub const DEFAULT_IDENTICAL_TOL: f64 = 1e-7;

fn grid_for(cfg: &RunConfig, q: &EffectivePotential) -> CliResult<RadialGrid> {
    Ok(RadialGrid::for_potential(q, cfg.grid_size)?)
}

/// `σ(l)` for every `l` in `ls`, evaluated in parallel and assembled in order.
pub fn scattering_data(q: &EffectivePotential, ls: &[i64], grid: &RadialGrid) -> CliResult<ScatteringData> {
    let q_rev = q.with_reversed_field();
    let samples = ls
        .par_iter()
        .map(|&l| Ok((l, sigma_at_integer(q, &q_rev, l, grid)?)))
        .collect::<camscat_core::Result<Vec<_>>>()?;
    Ok(assemble_scattering_data(q.flux(), samples))
}

fn flux_estimate(cfg: &RunConfig, q: &EffectivePotential, tail_fraction: f64) -> CliResult<FluxEstimate> {
    cfg.check_l_max(q)?;
    let grid = grid_for(cfg, q)?;
    let ls: Vec<i64> = (0..=cfg.l_max).collect();
    let data = scattering_data(q, &ls, &grid)?;
    Ok(recover_flux(&data, tail_fraction)?)
}

fn wrap_mod2(x: f64) -> f64 {
    x - 2.0 * (x / 2.0).round()
}

pub fn direct(cfg: &RunConfig) -> CliResult<Table> {
    let q = cfg.potential_a()?;
    cfg.check_l_max(&q)?;
    let grid = grid_for(cfg, &q)?;
    let ls: Vec<i64> = (-cfg.l_max..=cfg.l_max).collect();
    let data = scattering_data(&q, &ls, &grid)?;
    let mut t = Table::new("direct", &["l", "sigma_re", "sigma_im", "delta"]);
    for r in &data.records {
        t.push(vec![r.l.into(), r.sigma.re.into(), r.sigma.im.into(), r.delta.into()]);
    }
    let plus = sigma_limit(q.flux(), Tail::PlusInfinity);
    let minus = sigma_limit(q.flux(), Tail::MinusInfinity);
    t.meta("flux_over_2pi", q.flux());
    t.meta("sigma_limit_plus", vec![plus.re, plus.im]);
    t.meta("sigma_limit_minus", vec![minus.re, minus.im]);
    t.meta("branch_anchor", data.branch_anchor.clone());
    eprintln!("flux/2pi = {}", q.flux());
    eprintln!("sigma(l) -> {:.12} as l -> +inf, {:.12} as l -> -inf", plus, minus);
    match recover_flux(&data, DEFAULT_TAIL_FRACTION) {
        Ok(est) => {
            t.meta("recovered_flux_over_2pi_mod2", est.flux_over_2pi_mod2);
            eprintln!("recovered flux/2pi mod 2 = {:.12} (residual {:.2e})", est.flux_over_2pi_mod2, est.residual);
        }
        Err(e) => eprintln!("flux not recovered: {e}"),
    }
    Ok(t)
}

pub fn cam_scan(cfg: &RunConfig, nus: &[Complex64]) -> CliResult<Table> {
    let q = cfg.potential_a()?;
    let grid = grid_for(cfg, &q)?;
    let points: Vec<_> = nus.par_iter().map(|&nu| cam_point(&q, nu, &grid)).collect();
    let mut t = Table::new("cam-scan", &["nu_re", "nu_im", "sigma_re", "sigma_im", "excluded"]);
    let mut excluded = 0usize;
    for p in points {
        match p {
            Ok(p) => t.push(vec![p.nu.re.into(), p.nu.im.into(), p.sigma.re.into(), p.sigma.im.into(), "".into()]),
            Err(e) => {
                excluded += 1;
                t.push(vec![e.nu.re.into(), e.nu.im.into(), f64::NAN.into(), f64::NAN.into(), e.reason.into()]);
            }
        }
    }
    t.meta("flux_over_2pi", q.flux());
    t.meta("convention", CAM_CONVENTION);
    eprintln!("{} points, {excluded} excluded", nus.len());
    Ok(t)
}

pub fn flux(cfg: &RunConfig, tail_fraction: f64) -> CliResult<Table> {
    let q = cfg.potential_a()?;
    let est = flux_estimate(cfg, &q, tail_fraction)?;
    let mut t = Table::new("flux", &["flux_over_2pi_mod2", "residual", "gauge_flux_over_2pi", "l_first", "l_last"]);
    let first = *est.l_used.first().expect("non-empty tail");
    let last = *est.l_used.last().expect("non-empty tail");
    t.push(vec![
        est.flux_over_2pi_mod2.into(),
        est.residual.into(),
        q.flux().into(),
        first.into(),
        last.into(),
    ]);
    eprintln!("recovered flux/2pi mod 2 = {:.12} (gauge value {})", est.flux_over_2pi_mod2, q.flux());
    Ok(t)
}

pub fn discriminate(cfg: &RunConfig) -> CliResult<Table> {
    let qa = cfg.potential_a()?;
    let qb = cfg.potential_b()?;
    let ea = flux_estimate(cfg, &qa, DEFAULT_TAIL_FRACTION)?;
    let eb = flux_estimate(cfg, &qb, DEFAULT_TAIL_FRACTION)?;
    let (fa, fb) = (ea.flux_over_2pi_mod2, eb.flux_over_2pi_mod2);
    eprintln!("recovered flux/2pi mod 2: A = {fa:.12}, B = {fb:.12}");
    if wrap_mod2(fa - fb).abs() > cfg.tol("flux", DEFAULT_FLUX_TOL) {
        return Err(CliError::FluxMismatch { a: fa, b: fb });
    }
    let grid = grid_for(cfg, &qa)?;
    let ls: Vec<i64> = (0..=cfg.l_max).collect();
    let parts = ls.par_iter().map(|&l| discriminator_f(&qa, &qb, &[l], &grid)).collect::<camscat_core::Result<Vec<_>>>()?;
    let mut t = Table::new("discriminate", &["l", "f_re", "f_im", "rhs_re", "rhs_im", "rel_agreement"]);
    let mut max_abs: f64 = 0.0;
    for (l, rep) in ls.iter().zip(&parts) {
        let f = rep.values_f[l];
        let rhs = rep.rhs_values[l];
        max_abs = max_abs.max(rep.max_abs);
        t.push(vec![(*l).into(), f.re.into(), f.im.into(), rhs.re.into(), rhs.im.into(), rep.rel_agreement[l].into()]);
    }
    let verdict = if max_abs <= cfg.tol("identical", DEFAULT_IDENTICAL_TOL) { "identical" } else { "distinct" };
    t.meta("flux_a", fa);
    t.meta("flux_b", fb);
    t.meta("max_abs", max_abs);
    t.meta("verdict", verdict);
    eprintln!("max |F(l)| = {max_abs:.3e}: {verdict}");
    Ok(t)
}

pub fn bessel(nus: &[Complex64], rs: &[f64]) -> CliResult<Table> {
    let mut t = Table::new(
        "bessel",
        &["nu_re", "nu_im", "r", "j_re", "j_im", "y_re", "y_im", "h1_re", "h1_im", "h2_re", "h2_im"],
    );
    for &nu in nus {
        let order = ComplexOrder::new(nu)?;
        for &r in rs {
            let b = bessel_h(order, r)?;
            t.push(
                [nu.re, nu.im, r, b.j.re, b.j.im, b.y.re, b.y.im, b.h1.re, b.h1.im, b.h2.re, b.h2.im]
                    .into_iter()
                    .map(Into::into)
                    .collect(),
            );
        }
    }
    Ok(t)
}
