//! Jost solutions `F±(r, ν)` and the regular solution `Φ(r, ν)` of
//!
//! ```text
//! −u'' + ((ν_R² − 1/4)/r² + q_ν(r)) u = u,   r ≥ r0.
//! ```
//!
//! Since `q_ν` vanishes for `r ≥ R`, the Jost solutions equal the free ones
//! there and are obtained on `[r0, R]` by integrating backwards from `R`.
//! The regular solution is integrated forwards from `(Φ, Φ') = (0, −2)` at
//! `r0`. A Picard iteration of the Volterra equation serves as an
//! independent check.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::EffectivePotential;
use crate::kernels::free_pair;
use crate::math::{self, cabs};
use crate::ode;
use crate::quadrature::{self, clenshaw, ChebPanel, GaussLegendre};
use crate::specfun::{bessel_h, BesselValue, ComplexOrder};

/// Default number of grid points.
pub const DEFAULT_GRID_POINTS: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMethod {
    /// Adaptive Dormand–Prince 5(4) between output points.
    AdaptiveRk,
    /// Classical RK4 with the grid spacing as step.
    FixedRk,
}

/// Output points on `[r0, R]` and the integration method.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    points: Vec<f64>,
    method: GridMethod,
}

impl RadialGrid {
    pub fn new(points: Vec<f64>, method: GridMethod) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid("need at least two points".into()));
        }
        if method == GridMethod::FixedRk && points.len() < 256 {
            return Err(Error::InvalidGrid("fixed-step grids need at least 256 points".into()));
        }
        if points[0] <= 0.0 || points.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(core::cmp::Ordering::Greater)) || points.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGrid("points must be positive and strictly increasing".into()));
        }
        Ok(Self { points, method })
    }

    /// `n` points on `[r0, r1]`, the average of a uniform and a geometric
    /// spacing (denser near `r0`, where solutions vary fastest).
    pub fn hybrid(r0: f64, r1: f64, n: usize) -> Result<Self> {
        if !(r1 > r0 && r0 > 0.0) || n < 2 {
            return Err(Error::InvalidGrid(alloc::format!("bad hybrid grid [{r0}, {r1}] with {n} points")));
        }
        let ratio = r1 / r0;
        let mut pts: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                0.5 * (r0 + (r1 - r0) * t) + 0.5 * r0 * libm::pow(ratio, t)
            })
            .collect();
        pts[0] = r0;
        pts[n - 1] = r1;
        Self::new(pts, GridMethod::AdaptiveRk)
    }

    /// The default grid for a potential: `[r0, R]`, or `[r0, r0 + 1]` when
    /// the support radius does not exceed `r0`.
    pub fn for_potential(q: &EffectivePotential, n: usize) -> Result<Self> {
        let r0 = q.r0();
        let r1 = if q.vanishes_outside_obstacle() { r0 + 1.0 } else { q.support_radius() };
        Self::hybrid(r0, r1, n)
    }

    pub fn with_method(mut self, method: GridMethod) -> Result<Self> {
        self.method = method;
        Self::new(self.points, method)
    }

    /// The grid with every interval bisected.
    pub fn refined(&self) -> Self {
        let mut pts = Vec::with_capacity(2 * self.points.len() - 1);
        for w in self.points.windows(2) {
            pts.push(w[0]);
            pts.push(0.5 * (w[0] + w[1]));
        }
        pts.push(*self.points.last().expect("non-empty"));
        Self { points: pts, method: self.method }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn method(&self) -> GridMethod {
        self.method
    }

    pub fn start(&self) -> f64 {
        self.points[0]
    }

    pub fn end(&self) -> f64 {
        *self.points.last().expect("non-empty")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn fixed_step(&self) -> Option<f64> {
        (self.method == GridMethod::FixedRk).then(|| (self.end() - self.start()) / (self.len() - 1) as f64)
    }
}

/// Integration settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative local tolerance of the adaptive integrator.
    pub rtol: f64,
    /// Step size of the fixed-step integrator, if used.
    pub fixed_step: Option<f64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { rtol: 1e-11, fixed_step: None }
    }
}

impl SolverOptions {
    pub fn for_grid(grid: &RadialGrid) -> Self {
        Self { fixed_step: grid.fixed_step(), ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JostSolution {
    pub sign: Sign,
    pub nu: Complex64,
    pub r: Vec<f64>,
    pub values: Vec<Complex64>,
    pub derivs: Vec<Complex64>,
    /// Bessel data of order `ν_R` at the point where the free data were imposed.
    pub boundary: BesselValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularSolution {
    pub nu: Complex64,
    pub r: Vec<f64>,
    pub values: Vec<Complex64>,
    pub derivs: Vec<Complex64>,
}

/// `W(f, g) = f g' − f' g` for `(value, derivative)` pairs.
#[inline]
pub fn wronskian(f: (Complex64, Complex64), g: (Complex64, Complex64)) -> Complex64 {
    f.0 * g.1 - f.1 * g.0
}

/// The free Jost solutions are even in `ν_R`; evaluate at the representative
/// with `Re ≥ 0` (and `Im ≥ 0` on the imaginary axis).
fn canonical_order(nu_r: Complex64) -> Complex64 {
    if nu_r.re < 0.0 || (nu_r.re == 0.0 && nu_r.im < 0.0) {
        -nu_r
    } else {
        nu_r
    }
}

fn free_jost_bessel(sign: Sign, nu: Complex64, r: f64, flux: f64) -> Result<((Complex64, Complex64), BesselValue)> {
    let nu_r = canonical_order(nu - flux);
    let bv = bessel_h(ComplexOrder::new(nu_r)?, r)?;
    let amp = math::sqrt(PI * r / 2.0);
    let damp = amp / (2.0 * r);
    // e^{i(ν_R + 1/2)π/2}
    let phase = math::exp_i_pi((nu_r + 0.5) * 0.5);
    let plus = (phase * amp * bv.h1, phase * (amp * bv.dh1 + damp * bv.h1));
    let out = match sign {
        Sign::Plus => plus,
        Sign::Minus if nu_r.im == 0.0 => (plus.0.conj(), plus.1.conj()),
        Sign::Minus => {
            let phase_m = math::exp_i_pi(-(nu_r + 0.5) * 0.5);
            (phase_m * amp * bv.h2, phase_m * (amp * bv.dh2 + damp * bv.h2))
        }
    };
    Ok((out, bv))
}

/// `F₀±(r, ν) = e^{±i(ν_R+1/2)π/2} √(πr/2) H^{(1,2)}_{ν_R}(r)` and its
/// `r`-derivative.
pub fn free_jost(sign: Sign, nu: Complex64, r: f64, flux: f64) -> Result<(Complex64, Complex64)> {
    Ok(free_jost_bessel(sign, nu, r, flux)?.0)
}

struct Equation<'a> {
    q: &'a EffectivePotential,
    nu: Complex64,
    centrifugal: Complex64,
    kappa_num: f64,
}

impl<'a> Equation<'a> {
    fn new(q: &'a EffectivePotential, nu: Complex64) -> Self {
        let nu_r = nu - q.flux();
        Self { q, nu, centrifugal: nu_r * nu_r - 0.25, kappa_num: cabs(nu_r) }
    }

    /// Integrates from `start` with `state` through the ordered `targets`,
    /// stopping at jumps of `q`, and returns the state at each target.
    fn sweep(&self, start: f64, mut state: ode::State, targets: &[f64], opts: &SolverOptions) -> Result<Vec<ode::State>> {
        let (lo, hi) = targets.iter().fold((start, start), |(a, b), &t| (a.min(t), b.max(t)));
        let breaks = self.q.breakpoints_in(lo, hi);
        let forward = targets.first().is_some_and(|&t| t >= start);
        let mut stops: Vec<(f64, Option<usize>)> = targets.iter().enumerate().map(|(i, &t)| (t, Some(i))).collect();
        stops.extend(breaks.into_iter().map(|b| (b, None)));
        if forward {
            stops.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        } else {
            stops.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite"));
        }
        let mut out = alloc::vec![[Complex64::new(0.0, 0.0); 2]; targets.len()];
        let mut r = start;
        let mut h = opts.fixed_step.unwrap_or(0.01);
        let kappa = |x: f64| (self.kappa_num / x).max(1.0);
        for (t, idx) in stops {
            if t != r {
                let hint = 0.5 * (r + t);
                let w = |x: f64| self.centrifugal / (x * x) + self.q.eval_side(self.nu, x, hint) - 1.0;
                state = match opts.fixed_step {
                    Some(step) => ode::rk4(&w, r, t, state, libm::ceil((t - r).abs() / step) as usize),
                    None => {
                        let (s, h_next) = ode::dopri(&w, &kappa, r, t, state, h, opts.rtol, self.nu)?;
                        h = h_next;
                        s
                    }
                };
                r = t;
            }
            if let Some(i) = idx {
                out[i] = state;
            }
        }
        Ok(out)
    }
}

/// `F±(r, ν)` and `F±'(r, ν)` at arbitrary points `r ≥ r0`.
pub fn jost_at(q: &EffectivePotential, sign: Sign, nu: Complex64, points: &[f64], opts: &SolverOptions) -> Result<Vec<(Complex64, Complex64)>> {
    Ok(jost_at_with_boundary(q, sign, nu, points, opts)?.0)
}

fn jost_at_with_boundary(
    q: &EffectivePotential,
    sign: Sign,
    nu: Complex64,
    points: &[f64],
    opts: &SolverOptions,
) -> Result<(Vec<(Complex64, Complex64)>, BesselValue)> {
    let flux = q.flux();
    let big_r = q.support_radius();
    let mut out = alloc::vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); points.len()];
    let mut inner = Vec::new();
    for (i, &r) in points.iter().enumerate() {
        if r >= big_r || q.vanishes_outside_obstacle() {
            out[i] = free_jost(sign, nu, r, flux)?;
        } else {
            inner.push(i);
        }
    }
    let top = if q.vanishes_outside_obstacle() { points.iter().fold(q.r0(), |m, &x| m.max(x)) } else { big_r };
    let (start, boundary) = free_jost_bessel(sign, nu, top, flux)?;
    if !inner.is_empty() {
        let targets: Vec<f64> = inner.iter().map(|&i| points[i]).collect();
        let states = Equation::new(q, nu).sweep(big_r, [start.0, start.1], &targets, opts)?;
        for (&i, s) in inner.iter().zip(states) {
            out[i] = (s[0], s[1]);
        }
    }
    Ok((out, boundary))
}

/// Jost solution on the grid by backward integration from `R`.
pub fn jost_solve(q: &EffectivePotential, sign: Sign, nu: Complex64, grid: &RadialGrid) -> Result<JostSolution> {
    jost_solve_with(q, sign, nu, grid, &SolverOptions::for_grid(grid))
}

pub fn jost_solve_with(q: &EffectivePotential, sign: Sign, nu: Complex64, grid: &RadialGrid, opts: &SolverOptions) -> Result<JostSolution> {
    let (vals, boundary) = jost_at_with_boundary(q, sign, nu, grid.points(), opts)?;
    let (values, derivs) = vals.into_iter().unzip();
    Ok(JostSolution { sign, nu, r: grid.points().to_vec(), values, derivs, boundary })
}

/// `Φ(r, ν)` and `Φ'(r, ν)` at arbitrary points `r ≥ r0`.
pub fn regular_at(q: &EffectivePotential, nu: Complex64, points: &[f64], opts: &SolverOptions) -> Result<Vec<(Complex64, Complex64)>> {
    let r0 = q.r0();
    if points.iter().any(|&r| r < r0) {
        return Err(Error::Domain(alloc::format!("regular solution requested below r0 = {r0}")));
    }
    let init = [Complex64::new(0.0, 0.0), Complex64::new(-2.0, 0.0)];
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].partial_cmp(&points[b]).expect("finite"));
    let sorted: Vec<f64> = order.iter().map(|&i| points[i]).collect();
    let states = Equation::new(q, nu).sweep(r0, init, &sorted, opts)?;
    let mut out = alloc::vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); points.len()];
    for (&i, s) in order.iter().zip(states) {
        out[i] = (s[0], s[1]);
    }
    Ok(out)
}

/// Regular solution on the grid by forward integration from `r0`.
pub fn regular_solve(q: &EffectivePotential, nu: Complex64, grid: &RadialGrid) -> Result<RegularSolution> {
    let vals = regular_at(q, nu, grid.points(), &SolverOptions::for_grid(grid))?;
    let (values, derivs) = vals.into_iter().unzip();
    Ok(RegularSolution { nu, r: grid.points().to_vec(), values, derivs })
}

/// Result of the Picard iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct VolterraSolution {
    pub solution: JostSolution,
    pub iterations: usize,
}

const VOLTERRA_DEGREE: usize = 16;

struct VolterraPanel {
    cheb: ChebPanel,
    u: Vec<Complex64>,
    v: Vec<Complex64>,
    f0: Vec<Complex64>,
    q: Vec<Complex64>,
    f: Vec<Complex64>,
    // Antiderivative coefficients of v q F and u q F.
    anti_a: Vec<Complex64>,
    anti_b: Vec<Complex64>,
    // ∫ from the panel's right end to R.
    tail_a: Complex64,
    tail_b: Complex64,
}

impl VolterraPanel {
    /// `(∫_x^R v q F, ∫_x^R u q F)` for `x` in the panel.
    fn integrals(&self, x: f64) -> (Complex64, Complex64) {
        let t = self.cheb.local(x);
        (
            self.tail_a + clenshaw(&self.anti_a, 1.0) - clenshaw(&self.anti_a, t),
            self.tail_b + clenshaw(&self.anti_b, 1.0) - clenshaw(&self.anti_b, t),
        )
    }
}

/// Jost solution from the Volterra equation
/// `F = F₀ + ∫_r^R N(r, s, ν) q_ν(s) F(s) ds` by Picard iteration, with the
/// separable kernel `N = u(r)v(s) − u(s)v(r)` and spectral quadrature on
/// Chebyshev panels.
pub fn jost_solve_volterra(q: &EffectivePotential, sign: Sign, nu: Complex64, grid: &RadialGrid, max_iter: usize) -> Result<VolterraSolution> {
    let flux = q.flux();
    let nu_r = nu - flux;
    if nu_r.re < 0.0 {
        return Err(Error::Domain(alloc::format!("Picard iteration needs Re(nu_R) >= 0, got {nu_r}")));
    }
    let r0 = grid.start().min(q.r0());
    let big_r = q.support_radius();
    let (_, boundary) = free_jost_bessel(sign, nu, big_r.max(r0), flux)?;
    let trivial = big_r <= r0;

    let mut panels: Vec<VolterraPanel> = Vec::new();
    if !trivial {
        let mut edges = alloc::vec![r0];
        edges.extend(q.breakpoints_in(r0, big_r));
        edges.push(big_r);
        for e in edges.windows(2) {
            let width = 0.05f64.min(2.0 * e[0] / (cabs(nu_r) + 1.0)).max(1e-3);
            let n = libm::ceil((e[1] - e[0]) / width).max(1.0) as usize;
            for k in 0..n {
                let a = e[0] + (e[1] - e[0]) * k as f64 / n as f64;
                let b = if k + 1 == n { e[1] } else { e[0] + (e[1] - e[0]) * (k + 1) as f64 / n as f64 };
                let cheb = ChebPanel::new(a, b, VOLTERRA_DEGREE);
                let hint = 0.5 * (a + b);
                let mut u = Vec::new();
                let mut v = Vec::new();
                let mut f0 = Vec::new();
                let mut qv = Vec::new();
                for &x in &cheb.points {
                    let p = free_pair(nu_r, x)?;
                    u.push(p.u);
                    v.push(p.v);
                    f0.push(free_jost(sign, nu, x, flux)?.0);
                    qv.push(q.eval_side(nu, x, hint));
                }
                let z = Complex64::new(0.0, 0.0);
                panels.push(VolterraPanel {
                    f: f0.clone(),
                    cheb,
                    u,
                    v,
                    f0,
                    q: qv,
                    anti_a: Vec::new(),
                    anti_b: Vec::new(),
                    tail_a: z,
                    tail_b: z,
                });
            }
        }
    }

    let mut iterations = 0;
    loop {
        // Integrals from R downwards, panel by panel.
        let mut tail_a = Complex64::new(0.0, 0.0);
        let mut tail_b = Complex64::new(0.0, 0.0);
        for p in panels.iter_mut().rev() {
            let ia: Vec<Complex64> = (0..p.f.len()).map(|j| p.v[j] * p.q[j] * p.f[j]).collect();
            let ib: Vec<Complex64> = (0..p.f.len()).map(|j| p.u[j] * p.q[j] * p.f[j]).collect();
            p.anti_a = p.cheb.antiderivative(&p.cheb.coefficients(&ia));
            p.anti_b = p.cheb.antiderivative(&p.cheb.coefficients(&ib));
            p.tail_a = tail_a;
            p.tail_b = tail_b;
            let (a, b) = p.integrals(p.cheb.a);
            tail_a = a;
            tail_b = b;
        }
        let mut change: f64 = 0.0;
        for p in panels.iter_mut() {
            for j in 0..p.f.len() {
                let (a, b) = p.integrals(p.cheb.points[j]);
                let next = p.f0[j] + p.u[j] * a - p.v[j] * b;
                change = change.max(cabs(next - p.f[j]) / cabs(p.f0[j]).max(1e-300));
                p.f[j] = next;
            }
        }
        iterations += 1;
        if change < 1e-10 {
            break;
        }
        if iterations >= max_iter {
            return Err(Error::NoConvergence { iterations, residual: change });
        }
    }
    // Integrals are consistent with the final iterate after one more pass.
    let mut tail_a = Complex64::new(0.0, 0.0);
    let mut tail_b = Complex64::new(0.0, 0.0);
    for p in panels.iter_mut().rev() {
        let ia: Vec<Complex64> = (0..p.f.len()).map(|j| p.v[j] * p.q[j] * p.f[j]).collect();
        let ib: Vec<Complex64> = (0..p.f.len()).map(|j| p.u[j] * p.q[j] * p.f[j]).collect();
        p.anti_a = p.cheb.antiderivative(&p.cheb.coefficients(&ia));
        p.anti_b = p.cheb.antiderivative(&p.cheb.coefficients(&ib));
        p.tail_a = tail_a;
        p.tail_b = tail_b;
        let (a, b) = p.integrals(p.cheb.a);
        tail_a = a;
        tail_b = b;
    }

    let mut values = Vec::with_capacity(grid.len());
    let mut derivs = Vec::with_capacity(grid.len());
    for &x in grid.points() {
        let (f0, df0) = free_jost(sign, nu, x, flux)?;
        if trivial || x >= big_r {
            values.push(f0);
            derivs.push(df0);
            continue;
        }
        let idx = panels.partition_point(|p| p.cheb.b < x).min(panels.len() - 1);
        let (a, b) = panels[idx].integrals(x);
        let p = free_pair(nu_r, x)?;
        values.push(f0 + p.u * a - p.v * b);
        derivs.push(df0 + p.du * a - p.dv * b);
    }
    Ok(VolterraSolution {
        solution: JostSolution { sign, nu, r: grid.points().to_vec(), values, derivs, boundary },
        iterations,
    })
}

/// `C_r = exp(∫_r^R (γ(R) − γ(s))/s ds)`, the large-order limit of `F⁺/F₀⁺` at `r`.
pub fn jost_to_free_constant(q: &EffectivePotential, r: f64) -> Result<f64> {
    let big_r = q.support_radius();
    if r >= big_r {
        return Ok(1.0);
    }
    let g = q.gauge();
    let flux = g.flux_over_2pi();
    let rule = GaussLegendre::new(20);
    let f = |s: f64| (flux - g.gamma(s)) / s;
    let mut edges = alloc::vec![r];
    edges.extend(q.breakpoints_in(r, big_r));
    edges.push(big_r);
    let mut total = 0.0;
    for e in edges.windows(2) {
        total += quadrature::adaptive(&rule, &f, e[0], e[1], 1e-14, 40)?;
    }
    Ok(math::exp(total))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularBoundReport {
    /// `max |Φ|·(1+|ν_R|)·(r0/r)^{Re ν_R}` over the grid and `ν` list.
    pub c_emp: f64,
    /// The same on the refined grid.
    pub c_emp_refined: f64,
    /// `(r, ν)` of the maximum.
    pub max_location: (f64, Complex64),
    pub pass: bool,
}

fn weighted_phi_max(q: &EffectivePotential, nu: Complex64, grid: &RadialGrid) -> Result<(f64, f64)> {
    let r0 = q.r0();
    let nu_r = nu - q.flux();
    let sol = regular_solve(q, nu, grid)?;
    let mut best = (0.0, r0);
    for (&r, v) in sol.r.iter().zip(&sol.values) {
        let w = cabs(*v) * (1.0 + cabs(nu_r)) * math::exp(nu_r.re * (math::ln(r0) - math::ln(r)));
        if w > best.0 || !w.is_finite() {
            best = (w, r);
        }
    }
    Ok(best)
}

/// Empirical constant of `|Φ(r, ν)| ≤ C/(1+|ν_R|) (r/r0)^{Re ν_R}` and its
/// stability under grid refinement.
pub fn verify_regular_bound(q: &EffectivePotential, nu_list: &[Complex64], grid: &RadialGrid) -> Result<RegularBoundReport> {
    if let Some(nu) = nu_list.iter().find(|nu| nu.re - q.flux() < 0.0) {
        return Err(Error::Domain(alloc::format!("Re(nu_R) < 0 at nu = {nu}")));
    }
    let fine = grid.refined();
    let mut c_emp = 0.0;
    let mut c_ref: f64 = 0.0;
    let mut loc = (grid.start(), Complex64::new(0.0, 0.0));
    for &nu in nu_list {
        let (w, r) = weighted_phi_max(q, nu, grid)?;
        if w > c_emp || !w.is_finite() {
            c_emp = w;
            loc = (r, nu);
        }
        c_ref = c_ref.max(weighted_phi_max(q, nu, &fine)?.0);
    }
    let pass = c_emp.is_finite() && c_ref > 0.0 && c_emp / c_ref < 2.0 && c_ref / c_emp < 2.0;
    Ok(RegularBoundReport { c_emp, c_emp_refined: c_ref, max_location: loc, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{presets, Medium};
    use std::sync::OnceLock;

    const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

    fn bump() -> &'static EffectivePotential {
        static Q: OnceLock<EffectivePotential> = OnceLock::new();
        Q.get_or_init(|| EffectivePotential::from_medium(presets::bump_step(0.3).unwrap()).unwrap())
    }

    fn zero() -> EffectivePotential {
        EffectivePotential::from_medium(Medium::zero(0.5, 2.0).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_validation() {
        assert!(RadialGrid::new(alloc::vec![0.5, 0.4], GridMethod::AdaptiveRk).is_err());
        assert!(RadialGrid::new(alloc::vec![0.5, 1.0], GridMethod::FixedRk).is_err());
        let g = RadialGrid::hybrid(0.5, 2.0, 11).unwrap();
        assert_eq!(g.start(), 0.5);
        assert_eq!(g.end(), 2.0);
        assert_eq!(g.refined().len(), 21);
    }

    #[test]
    fn half_order_free_jost_is_plane_wave() {
        for r in [0.5, 1.0, 2.0] {
            let (p, dp) = free_jost(Sign::Plus, c(0.8, 0.0), r, 0.3).unwrap();
            assert!((p - c(0.0, r).exp()).norm() < 1e-14);
            assert!((dp - I * c(0.0, r).exp()).norm() < 1e-14);
            let (m, _) = free_jost(Sign::Minus, c(0.8, 0.0), r, 0.3).unwrap();
            assert!((m - c(0.0, -r).exp()).norm() < 1e-14);
        }
    }

    #[test]
    fn free_wronskian_complex_order() {
        let p = free_jost(Sign::Plus, c(2.3, 1.1), 1.0, 0.0).unwrap();
        let m = free_jost(Sign::Minus, c(2.3, 1.1), 1.0, 0.0).unwrap();
        assert!((wronskian(p, m) + 2.0 * I).norm() < 1e-12);
    }

    #[test]
    fn zero_potential_returns_free_solution() {
        let q = zero();
        let grid = RadialGrid::for_potential(&q, 64).unwrap();
        let sol = jost_solve(&q, Sign::Plus, c(3.0, 0.5), &grid).unwrap();
        for (&r, v) in grid.points().iter().zip(&sol.values) {
            let (f0, _) = free_jost(Sign::Plus, c(3.0, 0.5), r, 0.0).unwrap();
            assert!((v - f0).norm() <= 1e-10 * f0.norm());
        }
    }

    #[test]
    fn regular_solution_free_half_order() {
        let q = zero();
        let grid = RadialGrid::for_potential(&q, 64).unwrap();
        let sol = regular_solve(&q, c(0.5, 0.0), &grid).unwrap();
        assert_eq!(sol.values[0], c(0.0, 0.0));
        assert_eq!(sol.derivs[0], c(-2.0, 0.0));
        for (&r, v) in sol.r.iter().zip(&sol.values) {
            assert!((v - (-2.0 * (r - 0.5).sin())).norm() < 1e-9);
        }
    }

    #[test]
    fn regular_equals_jost_combination() {
        let q = bump();
        let grid = RadialGrid::for_potential(q, 128).unwrap();
        let nu = c(4.0, 0.0);
        let fp = jost_solve(q, Sign::Plus, nu, &grid).unwrap();
        let fm = jost_solve(q, Sign::Minus, nu, &grid).unwrap();
        let phi = regular_solve(q, nu, &grid).unwrap();
        for k in 0..grid.len() {
            let comb = I * (fm.values[0] * fp.values[k] - fp.values[0] * fm.values[k]);
            assert!((comb - phi.values[k]).norm() <= 1e-8 * (1.0 + phi.values[k].norm()), "k = {k}");
        }
    }

    #[test]
    fn jost_wronskian_on_bump() {
        let q = bump();
        let grid = RadialGrid::for_potential(q, 256).unwrap();
        for nu in [c(1.0, 0.0), c(-2.0, 0.0), c(0.3, 20.0), c(3.0, 3.0)] {
            let p = jost_solve(q, Sign::Plus, nu, &grid).unwrap();
            let m = jost_solve(q, Sign::Minus, nu, &grid).unwrap();
            for k in 0..grid.len() {
                let w = wronskian((p.values[k], p.derivs[k]), (m.values[k], m.derivs[k]));
                assert!((w + 2.0 * I).norm() < 1e-8, "nu = {nu}, k = {k}: {w}");
            }
        }
    }

    #[test]
    fn volterra_agrees_with_ode() {
        let q = bump();
        let grid = RadialGrid::for_potential(q, 128).unwrap();
        let nu = c(3.0 + q.flux(), 0.0);
        let ode = jost_solve(q, Sign::Plus, nu, &grid).unwrap();
        let vol = jost_solve_volterra(q, Sign::Plus, nu, &grid, 60).unwrap();
        for k in 0..grid.len() {
            assert!((ode.values[k] - vol.solution.values[k]).norm() < 1e-7 * ode.values[k].norm().max(1.0), "k={k} r={} {} {} it={}", grid.points()[k], ode.values[k], vol.solution.values[k], vol.iterations);
        }
    }

    #[test]
    fn volterra_free_case_single_iteration() {
        let q = zero();
        let grid = RadialGrid::for_potential(&q, 64).unwrap();
        let v = jost_solve_volterra(&q, Sign::Minus, c(2.0, 0.0), &grid, 60).unwrap();
        assert_eq!(v.iterations, 1);
    }

    #[test]
    fn volterra_rejects_left_half_plane() {
        let q = zero();
        let grid = RadialGrid::for_potential(&q, 64).unwrap();
        assert!(jost_solve_volterra(&q, Sign::Plus, c(-1.0, 0.0), &grid, 60).is_err());
    }

    #[test]
    fn c_r_is_one_beyond_support() {
        let q = bump();
        assert_eq!(jost_to_free_constant(q, 2.0).unwrap(), 1.0);
        let c_mid = jost_to_free_constant(q, 1.0).unwrap();
        assert!(c_mid > 1.0, "{c_mid}");
    }

    #[test]
    fn fixed_step_method_runs() {
        let q = bump();
        let grid = RadialGrid::for_potential(q, 512).unwrap().with_method(GridMethod::FixedRk).unwrap();
        let adaptive = RadialGrid::for_potential(q, 512).unwrap();
        let a = jost_solve(q, Sign::Plus, c(2.0, 0.0), &grid).unwrap();
        let b = jost_solve(q, Sign::Plus, c(2.0, 0.0), &adaptive).unwrap();
        assert!((a.values[0] - b.values[0]).norm() < 1e-6 * b.values[0].norm(), "{} {}", a.values[0], b.values[0]);
    }
}
