//! Gauss–Legendre rules, adaptive Gauss–Legendre integration and
//! Chebyshev–Lobatto panels with spectral interpolation and cumulative
//! integration.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = math::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive bisection with a fixed Gauss–Legendre rule: an interval is
/// accepted when the rule and its two-halves refinement agree to `tol`
/// (scaled by the interval share).
pub fn adaptive<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<f64> {
    let whole = rule.integrate(a, b, f);
    adaptive_rec(rule, f, a, b, whole, tol, max_depth)
}

fn adaptive_rec<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let left = rule.integrate(a, m, f);
    let right = rule.integrate(m, b, f);
    let refined = left + right;
    if (refined - whole).abs() <= tol {
        return Ok(refined);
    }
    if depth == 0 {
        return Err(Error::Quadrature { a, b, tol });
    }
    Ok(adaptive_rec(rule, f, a, m, left, 0.5 * tol, depth - 1)?
        + adaptive_rec(rule, f, m, b, right, 0.5 * tol, depth - 1)?)
}

/// Chebyshev–Lobatto points `cos(πj/p)`, `j = 0..=p`, on `[-1, 1]` (descending).
pub fn lobatto_points(p: usize) -> Vec<f64> {
    (0..=p)
        .map(|j| {
            // Symmetric evaluation keeps the points exactly antisymmetric.
            math::sin(PI * (p as f64 - 2.0 * j as f64) / (2.0 * p as f64))
        })
        .collect()
}

/// Barycentric weights for Chebyshev–Lobatto points.
pub fn lobatto_weights(p: usize) -> Vec<f64> {
    (0..=p)
        .map(|j| {
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == p {
                0.5 * s
            } else {
                s
            }
        })
        .collect()
}

/// Barycentric interpolation through `(xs, fs)` with weights `ws`.
pub fn barycentric<T>(xs: &[f64], ws: &[f64], fs: &[T], x: f64) -> T
where
    T: Copy + core::ops::Mul<f64, Output = T> + core::ops::Add<Output = T> + core::ops::Div<f64, Output = T>,
{
    let mut num: Option<T> = None;
    let mut den = 0.0;
    for ((&xj, &wj), &fj) in xs.iter().zip(ws).zip(fs) {
        let d = x - xj;
        if d == 0.0 {
            return fj;
        }
        let c = wj / d;
        num = Some(match num {
            Some(n) => n + fj * c,
            None => fj * c,
        });
        den += c;
    }
    num.expect("at least one node") / den
}

/// A polynomial panel on `[a, b]` sampled at `p + 1` Chebyshev–Lobatto points.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebPanel {
    pub a: f64,
    pub b: f64,
    /// Points in ascending order.
    pub points: Vec<f64>,
    weights: Vec<f64>,
}

impl ChebPanel {
    pub fn new(a: f64, b: f64, p: usize) -> Self {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        // Ascending order: reverse the descending Lobatto points.
        let mut points: Vec<f64> = lobatto_points(p).into_iter().rev().map(|t| c + h * t).collect();
        points[0] = a;
        points[p] = b;
        Self { a, b, points, weights: lobatto_weights(p) }
    }

    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    #[inline]
    pub fn local(&self, x: f64) -> f64 {
        (2.0 * x - self.a - self.b) / (self.b - self.a)
    }

    pub fn interpolate<T>(&self, values: &[T], x: f64) -> T
    where
        T: Copy + core::ops::Mul<f64, Output = T> + core::ops::Add<Output = T> + core::ops::Div<f64, Output = T>,
    {
        barycentric(&self.points, &self.weights, values, x)
    }

    /// Chebyshev coefficients of the interpolant of `values` (ascending points).
    pub fn coefficients(&self, values: &[Complex64]) -> Vec<Complex64> {
        let p = self.degree();
        let pf = p as f64;
        // values[i] sits at t = -cos(πi/p) = cos(π(p-i)/p), i.e. j = p - i.
        let mut c = alloc::vec![Complex64::new(0.0, 0.0); p + 1];
        for (k, ck) in c.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &f) in values.iter().enumerate() {
                let j = p - i;
                let w = if j == 0 || j == p { 0.5 } else { 1.0 };
                acc += f * (w * math::cos(PI * ((j * k) % (2 * p)) as f64 / pf));
            }
            let scale = if k == 0 || k == p { 1.0 / pf } else { 2.0 / pf };
            *ck = acc * scale;
        }
        c
    }

    /// Coefficients of an antiderivative of the Chebyshev series `c`
    /// (in the local variable, scaled to the physical interval).
    pub fn antiderivative(&self, c: &[Complex64]) -> Vec<Complex64> {
        let n = c.len();
        let h = 0.5 * (self.b - self.a);
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 1..=n {
            let prev = c[k - 1];
            let next = if k + 1 < n { c[k + 1] } else { Complex64::new(0.0, 0.0) };
            let ck = if k == 1 { 2.0 * c[0] - next } else { prev - next };
            out[k] = ck * (h / (2.0 * k as f64));
        }
        out
    }
}

/// Clenshaw evaluation of `Σ c_k T_k(t)`.
pub fn clenshaw(c: &[Complex64], t: f64) -> Complex64 {
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + b1 * (2.0 * t) - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + b1 * t - b2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_high_degree() {
        let rule = GaussLegendre::new(12);
        let v = rule.integrate(0.0, 2.0, |x| x.powi(23));
        assert!((v / (2f64.powi(24) / 24.0) - 1.0).abs() < 1e-14);
        let s: f64 = rule.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_a_kink() {
        let rule = GaussLegendre::new(10);
        let v = adaptive(&rule, &|x: f64| (x - 0.3).abs(), 0.0, 1.0, 1e-13, 40).unwrap();
        assert!((v - (0.045 + 0.245)).abs() < 1e-12);
    }

    #[test]
    fn panel_cumulative_integral_of_exponential() {
        let panel = ChebPanel::new(0.5, 0.9, 16);
        let vals: Vec<Complex64> = panel.points.iter().map(|&x| Complex64::new(0.0, 2.0 * x).exp()).collect();
        let c = panel.coefficients(&vals);
        let anti = panel.antiderivative(&c);
        let top = clenshaw(&anti, 1.0);
        let x = 0.63;
        let got = top - clenshaw(&anti, panel.local(x));
        let exact = (Complex64::new(0.0, 1.8).exp() - Complex64::new(0.0, 2.0 * x).exp()) / Complex64::new(0.0, 2.0);
        assert!((got - exact).norm() < 1e-14);
        let interp = panel.interpolate(&vals, x);
        assert!((interp - Complex64::new(0.0, 2.0 * x).exp()).norm() < 1e-14);
    }
}
