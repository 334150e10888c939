//! Invariant groups run by `camscat verify`.

use std::f64::consts::PI;

use camscat_core::fields::{EffectivePotential, Medium, RadialProfile};
use camscat_core::inverse::discriminator_f;
use camscat_core::kernels::{verify_kernel_bounds, BoundBox};
use camscat_core::radial::{jost_solve, verify_regular_bound, wronskian, RadialGrid, Sign};
use camscat_core::scattering::{regge_sigma, sigma_limit, Tail};
use camscat_core::specfun::{bessel_h, gamma_complex, ComplexOrder};
use camscat_core::Complex64;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::Table;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Group names with their default tolerances.
pub const GROUPS: [(&str, f64); 8] = [
    ("specfun", 1e-10),
    ("wronskian", 1e-8),
    ("kernel_bounds", 2.0),
    ("regular_bound", 2.0),
    ("symmetry", 1e-9),
    ("sigma_limits", 0.05),
    ("idalg", 1e-6),
    ("idalg_identical", 1e-7),
];

#[derive(Debug, Clone, PartialEq)]
pub struct GroupResult {
    pub group: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl GroupResult {
    pub fn pass(&self) -> bool {
        self.measured.is_finite() && self.measured <= self.tolerance
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn drift(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 {
        (a / b).max(b / a)
    } else {
        f64::INFINITY
    }
}

fn specfun_identities() -> CliResult<(f64, String)> {
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(1e-300);
    let mut worst: f64 = 0.0;
    for re in linspace(-7.3, 7.3, 9) {
        for im in linspace(-3.0, 3.0, 5) {
            let nu = Complex64::new(re, im);
            for r in [0.5, 1.3] {
                let a = bessel_h(ComplexOrder::new(nu)?, r)?;
                let b = bessel_h(ComplexOrder::new(nu.conj())?, r)?;
                let m = bessel_h(ComplexOrder::new(-nu)?, r)?;
                worst = worst.max(rel(a.h1.conj(), b.h2));
                worst = worst.max(rel(m.h1, (I * PI * nu).exp() * a.h1));
                worst = worst.max(rel(m.h2, (-I * PI * nu).exp() * a.h2));
            }
        }
    }
    for y in linspace(0.5, 8.0, 16) {
        let g = gamma_complex(Complex64::new(0.0, y))?;
        worst = worst.max((g.norm_sqr() * y * (PI * y).sinh() / PI - 1.0).abs());
    }
    Ok((worst, "conjugation, reflection and |Gamma(iy)|^2, relative".into()))
}

fn wronskian_group(q: &EffectivePotential, grid: &RadialGrid) -> CliResult<(f64, String)> {
    let d = std::f64::consts::FRAC_1_SQRT_2;
    let mut orders: Vec<Complex64> = linspace(-3.0, 3.0, 12).into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    orders.extend(linspace(-40.0, 40.0, 12).into_iter().map(|y| Complex64::new(0.0, y)));
    for t in linspace(-5.0, 5.0, 8) {
        orders.push(Complex64::new(t * d, t * d));
        orders.push(Complex64::new(t * d, -t * d));
    }
    let worst = orders
        .par_iter()
        .map(|&nu_r| -> camscat_core::Result<f64> {
            let nu = nu_r + q.flux();
            let p = jost_solve(q, Sign::Plus, nu, grid)?;
            let m = jost_solve(q, Sign::Minus, nu, grid)?;
            Ok((0..grid.len())
                .map(|k| (wronskian((p.values[k], p.derivs[k]), (m.values[k], m.derivs[k])) + 2.0 * I).norm())
                .fold(0.0, f64::max))
        })
        .collect::<camscat_core::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok((worst, format!("max |W(F+, F-) + 2i| over {} orders", orders.len())))
}

fn bound_box(q: &EffectivePotential) -> BoundBox {
    BoundBox { lo: q.r0(), hi: q.support_radius().max(q.r0() + 1.0), n: 33 }
}

fn kernel_group(q: &EffectivePotential) -> CliResult<(f64, String)> {
    let flux = q.flux();
    let real: Vec<Complex64> = (1..=40).map(|k| Complex64::new(k as f64 + flux, 0.0)).collect();
    let imag: Vec<Complex64> = (1..=8).map(|k| Complex64::new(flux, 5.0 * k as f64)).collect();
    let a = verify_kernel_bounds(bound_box(q), &real, flux)?;
    let b = verify_kernel_bounds(bound_box(q), &imag, flux)?;
    let worst = drift(a.c_emp, a.c_emp_half).max(drift(b.c_emp, b.c_emp_half));
    Ok((worst, format!("grid-doubling drift of C_emp: real {:.4}/{:.4}, imaginary {:.4}/{:.4}", a.c_emp, a.c_emp_half, b.c_emp, b.c_emp_half)))
}

fn regular_group(q: &EffectivePotential, grid: &RadialGrid) -> CliResult<(f64, String)> {
    let flux = q.flux();
    let orders: Vec<Complex64> = [(1.0, 0.0), (5.0, 0.0), (20.0, 0.0), (0.0, 10.0), (0.0, 30.0)]
        .iter()
        .map(|&(x, y)| Complex64::new(x + flux, y))
        .collect();
    let rep = verify_regular_bound(q, &orders, grid)?;
    Ok((drift(rep.c_emp, rep.c_emp_refined), format!("grid-doubling drift of C_emp {:.4}/{:.4}", rep.c_emp, rep.c_emp_refined)))
}

fn symmetry_group(q: &EffectivePotential, grid: &RadialGrid) -> CliResult<(f64, String)> {
    let q_rev = q.with_reversed_field();
    let mut worst: f64 = 0.0;
    for nu in [1.0, -1.0, 3.2, -3.2, 7.0, -7.0] {
        for sign in [Sign::Plus, Sign::Minus] {
            let a = jost_solve(q, sign, Complex64::new(nu, 0.0), grid)?;
            let b = jost_solve(&q_rev, sign, Complex64::new(-nu, 0.0), grid)?;
            for (x, y) in a.values.iter().zip(&b.values) {
                worst = worst.max((x - y).norm());
            }
        }
    }
    Ok((worst, "max |F_g(r, nu) - F_-g(r, -nu)|".into()))
}

fn sigma_group(q: &EffectivePotential, grid: &RadialGrid, l: i64) -> CliResult<(f64, String)> {
    let l = l as f64;
    let plus = (regge_sigma(q, Complex64::new(l, 0.0), grid)? - sigma_limit(q.flux(), Tail::PlusInfinity)).norm();
    let q_rev = q.with_reversed_field();
    let minus = (regge_sigma(&q_rev, Complex64::new(l, 0.0), grid)? - sigma_limit(q.flux(), Tail::MinusInfinity)).norm();
    Ok((plus.max(minus), format!("|sigma(+-{l}) - e^(+-i pi flux/2pi)| = {plus:.3e} / {minus:.3e}")))
}

/// A medium with the same field and a different electric potential.
fn companion(q: &EffectivePotential) -> CliResult<EffectivePotential> {
    let m = q.medium();
    let big_r = m.support_radius.max(m.r0 + 1.0);
    let v = RadialProfile::step(m.r0, big_r, 0.25)?;
    let v = if v == m.v { RadialProfile::step(m.r0, big_r, 0.35)? } else { v };
    Ok(EffectivePotential::from_medium(Medium::new(v, m.b.clone(), m.r0, big_r)?)?)
}

fn idalg_groups(q: &EffectivePotential, grid: &RadialGrid) -> CliResult<((f64, String), (f64, String))> {
    let other = companion(q)?;
    let ls = [1, 5, 10, 20];
    let rep = discriminator_f(q, &other, &ls, grid)?;
    let rel = rep.rel_agreement.values().fold(0.0f64, |a, &b| a.max(b));
    let same = discriminator_f(q, q, &ls, grid)?.max_abs;
    Ok((
        (rel, "relative gap between -W(Phi, Phi~)(R) and the integral side, l in {1, 5, 10, 20}".into()),
        (same, "max |F(l)| for the medium against itself".into()),
    ))
}

pub fn run(cfg: &RunConfig, q: &EffectivePotential) -> CliResult<Vec<GroupResult>> {
    let grid = RadialGrid::for_potential(q, cfg.grid_size)?;
    let sigma_l = cfg.l_max.max(1);
    let (idalg, identical) = idalg_groups(q, &grid)?;
    let measured = [
        specfun_identities()?,
        wronskian_group(q, &grid)?,
        kernel_group(q)?,
        regular_group(q, &grid)?,
        symmetry_group(q, &grid)?,
        sigma_group(q, &grid, sigma_l)?,
        idalg,
        identical,
    ];
    Ok(GROUPS
        .iter()
        .zip(measured)
        .map(|(&(group, default), (measured, detail))| GroupResult { group, measured, tolerance: cfg.tol(group, default), detail })
        .collect())
}

pub fn table(results: &[GroupResult]) -> Table {
    let mut t = Table::new("verify", &["group", "pass", "measured", "tolerance", "detail"]);
    for r in results {
        t.push(vec![r.group.into(), r.pass().into(), r.measured.into(), r.tolerance.into(), r.detail.clone().into()]);
    }
    t
}
