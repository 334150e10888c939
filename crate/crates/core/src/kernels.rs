//! The Green kernels
//!
//! ```text
//! N(r, s, ν) = u(r) v(s) − u(s) v(r),  u = √(πr/2) J_{ν_R}(r),  v = −i√(πr/2) H¹_{ν_R}(r)
//! M(r, s, ν) = (r/s)^{ν_R} N(r, s, ν)
//! K(r, s, ν) = F₀⁺(s, ν)/F₀⁺(r, ν) · N(r, s, ν)
//! ```
//!
//! with `ν_R = ν − γ(R)`, and empirical checks of their bounds on `[r0, R]²`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, cabs};
use crate::radial::{free_jost, Sign};
use crate::specfun::{bessel_h, bessel_j, ComplexOrder};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub r: f64,
    pub s: f64,
    /// The full order `ν`; the kernels use `ν_R = ν − flux`.
    pub nu: Complex64,
}

/// A solution pair `(u, v)` of the free equation with `W(u, v) = 1`, and
/// derivatives, at one point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FreePair {
    pub u: Complex64,
    pub v: Complex64,
    pub du: Complex64,
    pub dv: Complex64,
}

/// `(u, v)` at `x` for order `nu_r`.
///
/// `N` is unchanged by `v → v + c u`. Away from the real axis the Hankel
/// choice of `v` makes `u(r)v(s)` exponentially larger than `N`, so there
/// `v = −√(πx/2) J_{−ν}/sin(πν)` is used instead.
pub(crate) fn free_pair(nu_r: Complex64, x: f64) -> Result<FreePair> {
    let amp = math::sqrt(PI * x / 2.0);
    let damp = amp / (2.0 * x);
    let o = ComplexOrder::new(nu_r)?;
    if nu_r.im.abs() >= 1.0 {
        let j = bessel_j(o, x)?;
        let j_prev = bessel_j(ComplexOrder::new(nu_r - 1.0)?, x)?;
        let jm = bessel_j(ComplexOrder::new(-nu_r)?, x)?;
        let jm_prev = bessel_j(ComplexOrder::new(-nu_r - 1.0)?, x)?;
        let dj = j_prev - nu_r / x * j;
        let djm = jm_prev + nu_r / x * jm;
        let c = -1.0 / math::sin_pi(nu_r);
        return Ok(FreePair {
            u: amp * j,
            du: amp * dj + damp * j,
            v: c * amp * jm,
            dv: c * (amp * djm + damp * jm),
        });
    }
    let bv = bessel_h(o, x)?;
    Ok(FreePair {
        u: amp * bv.j,
        du: amp * bv.dj + damp * bv.j,
        v: -I * amp * bv.h1,
        dv: -I * (amp * bv.dh1 + damp * bv.h1),
    })
}

pub fn kernel_n(p: KernelPoint, flux: f64) -> Result<Complex64> {
    if p.r == p.s {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let nu_r = p.nu - flux;
    let a = free_pair(nu_r, p.r)?;
    let b = free_pair(nu_r, p.s)?;
    Ok(a.u * b.v - b.u * a.v)
}

pub fn kernel_m(p: KernelPoint, flux: f64) -> Result<Complex64> {
    if p.r == p.s {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let nu_r = p.nu - flux;
    let w = math::cexp(nu_r * (math::ln(p.r) - math::ln(p.s)));
    Ok(w * kernel_n(p, flux)?)
}

pub fn kernel_k(p: KernelPoint, flux: f64) -> Result<Complex64> {
    if p.r == p.s {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (fr, _) = free_jost(Sign::Plus, p.nu, p.r, flux)?;
    let (fs, _) = free_jost(Sign::Plus, p.nu, p.s, flux)?;
    if cabs(fr) < 1e-300 {
        return Err(Error::DivisionByNearZero(cabs(fr)));
    }
    Ok(fs / fr * kernel_n(p, flux)?)
}

/// Free regular solution `Φ₀(r) = i(π√(r r0)/2)(H²(r0)H¹(r) − H¹(r0)H²(r))`,
/// of order `ν_R = ν − flux`.
pub fn free_regular(nu: Complex64, r: f64, r0: f64, flux: f64) -> Result<Complex64> {
    let o = ComplexOrder::new(nu - flux)?;
    let a = bessel_h(o, r0)?;
    let b = bessel_h(o, r)?;
    Ok(I * (PI * math::sqrt(r * r0) / 2.0) * (a.h2 * b.h1 - a.h1 * b.h2))
}

/// Tensor grid `n × n` over `[lo, hi]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundBox {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl BoundBox {
    pub fn points(&self) -> Vec<f64> {
        let n = self.n.max(2);
        (0..n).map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64).collect()
    }

    /// Every other point of this grid.
    pub fn halved(&self) -> Self {
        Self { n: self.n.div_ceil(2), ..*self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelBoundReport {
    pub grid: BoundBox,
    /// `max |N|·(|ν_R|+1)·(r/s)^{Re ν_R}` over `r ≤ s` on the grid.
    pub c_emp: f64,
    /// The same maximum on the half grid.
    pub c_emp_half: f64,
    /// `(r, s, ν)` where the maximum is attained.
    pub max_location: (f64, f64, Complex64),
    pub pass: bool,
}

fn weighted_n_max(points: &[f64], nu: Complex64, flux: f64) -> Result<(f64, f64, f64)> {
    let nu_r = nu - flux;
    let pairs = points.iter().map(|&x| free_pair(nu_r, x)).collect::<Result<Vec<_>>>()?;
    let mut best = (0.0, points[0], points[0]);
    for (i, (&r, a)) in points.iter().zip(&pairs).enumerate() {
        for (&s, b) in points.iter().zip(&pairs).skip(i + 1) {
            let n = a.u * b.v - b.u * a.v;
            let w = cabs(n) * (cabs(nu_r) + 1.0) * math::exp(nu_r.re * (math::ln(r) - math::ln(s)));
            if w > best.0 || !w.is_finite() {
                best = (w, r, s);
            }
        }
    }
    Ok(best)
}

/// Empirical constant of `|N| ≤ C/(|ν_R|+1) (s/r)^{Re ν_R}` on the grid and
/// on its half grid.
pub fn verify_kernel_bounds(bbox: BoundBox, nu_samples: &[Complex64], flux: f64) -> Result<KernelBoundReport> {
    if let Some(nu) = nu_samples.iter().find(|nu| nu.re - flux < 0.0) {
        return Err(Error::Domain(alloc::format!("Re(nu_R) < 0 at nu = {nu}")));
    }
    let full = bbox.points();
    let half = bbox.halved().points();
    let mut c_emp = 0.0;
    let mut c_half: f64 = 0.0;
    let mut loc = (bbox.lo, bbox.lo, Complex64::new(0.0, 0.0));
    for &nu in nu_samples {
        let (w, r, s) = weighted_n_max(&full, nu, flux)?;
        if w > c_emp || !w.is_finite() {
            c_emp = w;
            loc = (r, s, nu);
        }
        c_half = c_half.max(weighted_n_max(&half, nu, flux)?.0);
    }
    let pass = c_emp.is_finite() && c_half > 0.0 && c_emp / c_half < 2.0 && c_half / c_emp < 2.0;
    Ok(KernelBoundReport { grid: bbox, c_emp, c_emp_half: c_half, max_location: loc, pass })
}

/// `max |M|·(|ν_R|+1)` over `r ≤ s` on the grid, for each `ν_R` in `orders`.
pub fn m_bound_profile(bbox: BoundBox, orders: &[Complex64], flux: f64) -> Result<Vec<f64>> {
    let pts = bbox.points();
    orders
        .iter()
        .map(|&nu_r| {
            let nu = nu_r + flux;
            let mut best: f64 = 0.0;
            for (i, &r) in pts.iter().enumerate() {
                for &s in &pts[i + 1..] {
                    let m = kernel_m(KernelPoint { r, s, nu }, flux)?;
                    best = best.max(cabs(m) * (cabs(nu_r) + 1.0));
                }
            }
            Ok(best)
        })
        .collect()
}

/// Order samples `ν_R`: the real axis `1..=40`, the imaginary axis
/// `5i..=40i` and the rays at `±π/4` with `|ν_R| ≤ 40`.
pub fn default_order_samples() -> Vec<Complex64> {
    let mut out: Vec<Complex64> = (1..=40).map(|k| Complex64::new(k as f64, 0.0)).collect();
    out.extend((1..=8).map(|k| Complex64::new(0.0, 5.0 * k as f64)));
    let d = core::f64::consts::FRAC_1_SQRT_2;
    for k in 1..=8 {
        let m = 5.0 * k as f64;
        out.push(Complex64::new(m * d, m * d));
        out.push(Complex64::new(m * d, -m * d));
    }
    out
}
