//! Media, the gauge function `γ(r) = ∫₀^r τ b(τ) dτ`, the flux `γ(R)` and
//! the effective potential
//!
//! ```text
//! q_ν(r) = −2ν (γ(r) − γ(R))/r² + (γ(r)² − γ(R)²)/r² + V(r).
//! ```

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::quadrature::{self, ChebPanel, GaussLegendre};

/// Default number of Chebyshev nodes used to tabulate `γ`.
pub const DEFAULT_GAUGE_POINTS: usize = 2048;
const GAUGE_PANEL_DEGREE: usize = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Bump,
    Step,
    PolySpline,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    PiecewiseContinuous,
}

/// A real radial function vanishing outside `support = [a, b]`.
///
/// * `Bump`: `params = [A]`, `A·exp(1 − 1/(1 − t²))` with `t` mapping
///   `[a, b]` to `[-1, 1]`; peak value `A` at the midpoint.
/// * `Step`: `params = [h]`, constant `h` on `[a, b]`.
/// * `PolySpline`: `params` are knot values at equally spaced knots spanning
///   `[a, b]`, joined by a natural cubic spline.
/// * `Zero`: identically zero, `params = []`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    kind: ProfileKind,
    params: Vec<f64>,
    support: (f64, f64),
    smoothness: Smoothness,
    // Second derivatives at the spline knots.
    spline_m: Vec<f64>,
}

impl RadialProfile {
    pub fn new(kind: ProfileKind, params: Vec<f64>, support: (f64, f64)) -> Result<Self> {
        let (a, b) = support;
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidMedium("profile parameters must be finite".into()));
        }
        if kind != ProfileKind::Zero && !(a.is_finite() && b.is_finite() && 0.0 <= a && a < b) {
            return Err(Error::InvalidMedium(format!("support [{a}, {b}] must satisfy 0 <= a < b")));
        }
        let expected = match kind {
            ProfileKind::Bump | ProfileKind::Step => Some(1),
            ProfileKind::Zero => Some(0),
            ProfileKind::PolySpline => None,
        };
        if let Some(n) = expected {
            if params.len() != n {
                return Err(Error::InvalidMedium(format!("{kind:?} takes {n} parameter(s), got {}", params.len())));
            }
        } else if params.len() < 2 {
            return Err(Error::InvalidMedium("poly_spline needs at least 2 knot values".into()));
        }
        let smoothness = match kind {
            ProfileKind::Bump | ProfileKind::Zero => Smoothness::Smooth,
            ProfileKind::Step | ProfileKind::PolySpline => Smoothness::PiecewiseContinuous,
        };
        let spline_m = if kind == ProfileKind::PolySpline { natural_spline(&params) } else { Vec::new() };
        let support = if kind == ProfileKind::Zero { (0.0, 0.0) } else { support };
        Ok(Self { kind, params, support, smoothness, spline_m })
    }

    pub fn zero() -> Self {
        Self::new(ProfileKind::Zero, Vec::new(), (0.0, 0.0)).expect("zero profile")
    }

    pub fn bump(a: f64, b: f64, amplitude: f64) -> Result<Self> {
        Self::new(ProfileKind::Bump, alloc::vec![amplitude], (a, b))
    }

    pub fn step(a: f64, b: f64, height: f64) -> Result<Self> {
        Self::new(ProfileKind::Step, alloc::vec![height], (a, b))
    }

    pub fn poly_spline(a: f64, b: f64, knots: Vec<f64>) -> Result<Self> {
        Self::new(ProfileKind::PolySpline, knots, (a, b))
    }

    /// A bump on `[a, b]` scaled so that `∫ τ b(τ) dτ = flux`.
    pub fn bump_with_flux(a: f64, b: f64, flux: f64) -> Result<Self> {
        let unit = Self::bump(a, b, 1.0)?;
        let rule = GaussLegendre::new(20);
        let m = unit.moment(&rule)?;
        Self::bump(a, b, flux / m)
    }

    fn moment(&self, rule: &GaussLegendre) -> Result<f64> {
        let (a, b) = self.support;
        let mid = 0.5 * (a + b);
        quadrature::adaptive(rule, &|t: f64| t * self.eval_side(t, mid), a, b, 1e-15, 40)
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn is_zero(&self) -> bool {
        self.kind == ProfileKind::Zero
    }

    /// The same profile with opposite sign, bit for bit.
    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.params.iter_mut().for_each(|p| *p = -*p);
        out.spline_m.iter_mut().for_each(|p| *p = -*p);
        out
    }

    /// Points where the profile may jump or lose smoothness.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self.kind {
            ProfileKind::Step => alloc::vec![self.support.0, self.support.1],
            ProfileKind::PolySpline => {
                let (a, b) = self.support;
                let n = self.params.len() - 1;
                (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
            }
            ProfileKind::Bump | ProfileKind::Zero => Vec::new(),
        }
    }

    /// Value at `r`; on the support boundary the closed-interval value.
    pub fn eval(&self, r: f64) -> f64 {
        self.eval_side(r, r)
    }

    /// Value at `r` on the side of any jump that contains `hint`.
    pub fn eval_side(&self, r: f64, hint: f64) -> f64 {
        let (a, b) = self.support;
        if self.kind == ProfileKind::Zero || hint < a || hint > b {
            return 0.0;
        }
        let r = r.clamp(a, b);
        match self.kind {
            ProfileKind::Zero => 0.0,
            ProfileKind::Step => self.params[0],
            ProfileKind::Bump => {
                let t = (2.0 * r - a - b) / (b - a);
                let d = 1.0 - t * t;
                if d <= 0.0 {
                    0.0
                } else {
                    self.params[0] * math::exp(1.0 - 1.0 / d)
                }
            }
            ProfileKind::PolySpline => self.spline_value(r),
        }
    }

    fn spline_value(&self, r: f64) -> f64 {
        let (a, b) = self.support;
        let n = self.params.len() - 1;
        let h = (b - a) / n as f64;
        let x = (r - a) / h;
        let i = (math::floor(x) as usize).min(n - 1);
        let t = x - i as f64;
        let (y0, y1) = (self.params[i], self.params[i + 1]);
        let (m0, m1) = (self.spline_m[i], self.spline_m[i + 1]);
        let s = 1.0 - t;
        s * y0 + t * y1 + h * h / 6.0 * ((s * s * s - s) * m0 + (t * t * t - t) * m1)
    }
}

/// Second derivatives of the natural cubic spline through equally spaced
/// values (unit knot spacing is folded into the evaluation).
fn natural_spline(y: &[f64]) -> Vec<f64> {
    let n = y.len() - 1;
    let mut m = alloc::vec![0.0; n + 1];
    if n < 2 {
        return m;
    }
    // Thomas algorithm on the interior system (1, 4, 1) m = 6 Δ²y / h², with
    // the h² scaling applied in `spline_value`.
    let mut c = alloc::vec![0.0; n + 1];
    let mut d = alloc::vec![0.0; n + 1];
    for i in 1..n {
        let rhs = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]);
        let denom = 4.0 - c[i - 1];
        c[i] = 1.0 / denom;
        d[i] = (rhs - d[i - 1]) / denom;
    }
    for i in (1..n).rev() {
        m[i] = d[i] - c[i] * m[i + 1];
    }
    m
}

/// Electric potential, magnetic field profile, obstacle radius `r0` and
/// support radius `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct Medium {
    pub v: RadialProfile,
    pub b: RadialProfile,
    pub r0: f64,
    pub support_radius: f64,
}

impl Medium {
    pub fn new(v: RadialProfile, b: RadialProfile, r0: f64, support_radius: f64) -> Result<Self> {
        if !(r0 > 0.0 && r0.is_finite()) {
            return Err(Error::InvalidMedium(format!("r0 = {r0} must be positive")));
        }
        if !(support_radius > 0.0 && support_radius.is_finite()) {
            return Err(Error::InvalidMedium(format!("R = {support_radius} must be positive")));
        }
        if support_radius > crate::specfun::R_MAX {
            return Err(Error::InvalidMedium(format!("R = {support_radius} exceeds {}", crate::specfun::R_MAX)));
        }
        for (name, p) in [("V", &v), ("B", &b)] {
            if !p.is_zero() && p.support().1 > support_radius * (1.0 + 1e-12) {
                return Err(Error::InvalidMedium(format!(
                    "{name} support ends at {} beyond R = {support_radius}",
                    p.support().1
                )));
            }
        }
        Ok(Self { v, b, r0, support_radius })
    }

    pub fn zero(r0: f64, support_radius: f64) -> Result<Self> {
        Self::new(RadialProfile::zero(), RadialProfile::zero(), r0, support_radius)
    }

    /// The medium with the magnetic field reversed.
    pub fn with_reversed_field(&self) -> Self {
        Self { b: self.b.negated(), ..self.clone() }
    }
}

/// Outcome of the admissibility check.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub pass: bool,
    pub reasons: Vec<String>,
}

/// Checks that a medium is admissible: radial (by construction), compactly
/// supported in `[0, R]`, `V` piecewise continuous and `b` smooth.
pub fn validate_class_c(medium: &Medium) -> ClassReport {
    let mut reasons = Vec::new();
    for (name, p) in [("V", &medium.v), ("B", &medium.b)] {
        if !p.is_zero() && p.support().1 > medium.support_radius * (1.0 + 1e-12) {
            reasons.push(format!("{name} is not supported in [0, R]"));
        }
    }
    if medium.b.smoothness() != Smoothness::Smooth {
        reasons.push(format!("B must be smooth, got a {:?} profile", medium.b.kind()));
    }
    ClassReport { pass: reasons.is_empty(), reasons }
}

#[derive(Debug, Clone, PartialEq)]
struct GaugePanel {
    cheb: ChebPanel,
    values: Vec<f64>,
}

/// `γ(r)` tabulated on Chebyshev panels over the support of `b`, with exact
/// constants `0` before and `γ(R)` after it.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeData {
    flux: f64,
    panels: Vec<GaugePanel>,
    start: f64,
    end: f64,
}

impl GaugeData {
    pub fn zero() -> Self {
        Self { flux: 0.0, panels: Vec::new(), start: 0.0, end: 0.0 }
    }

    /// `γ(R)`, the flux divided by `2π`.
    pub fn flux_over_2pi(&self) -> f64 {
        self.flux
    }

    pub fn gamma(&self, r: f64) -> f64 {
        if self.panels.is_empty() || r <= self.start {
            return 0.0;
        }
        if r >= self.end {
            return self.flux;
        }
        let idx = self.panels.partition_point(|p| p.cheb.b < r).min(self.panels.len() - 1);
        let p = &self.panels[idx];
        p.cheb.interpolate(&p.values, r)
    }

    /// The gauge of the reversed field, bit for bit `−γ`.
    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.flux = -out.flux;
        for p in &mut out.panels {
            p.values.iter_mut().for_each(|v| *v = -*v);
        }
        out
    }
}

/// Tabulates `γ` using about `quad_points` Chebyshev nodes; node values come
/// from adaptive Gauss–Legendre quadrature with absolute error below `1e-12`.
pub fn build_gauge(medium: &Medium, quad_points: usize) -> Result<GaugeData> {
    if quad_points < 64 {
        return Err(Error::Domain(format!("quad_points = {quad_points} must be at least 64")));
    }
    let b = &medium.b;
    if b.is_zero() {
        return Ok(GaugeData::zero());
    }
    let (start, end) = b.support();
    let n_panels = (quad_points / (GAUGE_PANEL_DEGREE + 1)).max(2);
    let width = (end - start) / n_panels as f64;
    let rule = GaussLegendre::new(20);
    let scale = b.params().iter().fold(1.0f64, |m, p| m.max(p.abs())) * end * end;
    let tol = 1e-14 * scale;
    let mut panels = Vec::with_capacity(n_panels);
    let mut base = 0.0;
    for k in 0..n_panels {
        let a = start + k as f64 * width;
        let e = if k + 1 == n_panels { end } else { start + (k + 1) as f64 * width };
        let cheb = ChebPanel::new(a, e, GAUGE_PANEL_DEGREE);
        let mid = 0.5 * (a + e);
        let f = |t: f64| t * b.eval_side(t, mid);
        let mut values = Vec::with_capacity(cheb.points.len());
        values.push(base);
        for w in cheb.points.windows(2) {
            base += quadrature::adaptive(&rule, &f, w[0], w[1], tol, 30)?;
            values.push(base);
        }
        panels.push(GaugePanel { cheb, values });
    }
    Ok(GaugeData { flux: base, panels, start, end })
}

/// The medium together with its gauge: evaluates `q_ν(r)` and its affine
/// parts `q_ν = q₀ + ν q₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectivePotential {
    medium: Medium,
    gauge: GaugeData,
}

pub fn effective_potential(medium: Medium, gauge: GaugeData) -> EffectivePotential {
    EffectivePotential { medium, gauge }
}

impl EffectivePotential {
    /// Builds the gauge with [`DEFAULT_GAUGE_POINTS`] nodes.
    pub fn from_medium(medium: Medium) -> Result<Self> {
        let gauge = build_gauge(&medium, DEFAULT_GAUGE_POINTS)?;
        Ok(effective_potential(medium, gauge))
    }

    pub fn medium(&self) -> &Medium {
        &self.medium
    }

    pub fn gauge(&self) -> &GaugeData {
        &self.gauge
    }

    pub fn flux(&self) -> f64 {
        self.gauge.flux
    }

    pub fn r0(&self) -> f64 {
        self.medium.r0
    }

    pub fn support_radius(&self) -> f64 {
        self.medium.support_radius
    }

    /// True when `q_ν` vanishes on all of `[r0, ∞)`.
    pub fn vanishes_outside_obstacle(&self) -> bool {
        self.medium.support_radius <= self.medium.r0
    }

    /// `(q₀(r), q₁(r))` on the side of any jump containing `hint`.
    #[inline]
    pub fn parts_side(&self, r: f64, hint: f64) -> (f64, f64) {
        let big_r = self.medium.support_radius;
        if r >= big_r && (hint >= big_r || r > big_r) {
            return (0.0, 0.0);
        }
        let g = self.gauge.gamma(r);
        let gr = self.gauge.flux;
        let r2 = r * r;
        let d = g - gr;
        let q0 = d * (g + gr) / r2 + self.medium.v.eval_side(r, hint);
        (q0, -2.0 * d / r2)
    }

    pub fn parts(&self, r: f64) -> (f64, f64) {
        self.parts_side(r, r)
    }

    pub fn eval(&self, nu: Complex64, r: f64) -> Complex64 {
        self.eval_side(nu, r, r)
    }

    #[inline]
    pub fn eval_side(&self, nu: Complex64, r: f64, hint: f64) -> Complex64 {
        let (q0, q1) = self.parts_side(r, hint);
        nu * q1 + q0
    }

    /// Jump locations of `q` strictly inside `(lo, hi)`, sorted.
    pub fn breakpoints_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .medium
            .v
            .breakpoints()
            .into_iter()
            .chain(self.medium.b.breakpoints())
            .filter(|&x| x > lo && x < hi)
            .collect();
        pts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
        pts.dedup();
        pts
    }

    /// The potential of the medium with reversed magnetic field.
    pub fn with_reversed_field(&self) -> Self {
        Self { medium: self.medium.with_reversed_field(), gauge: self.gauge.negated() }
    }
}

/// Reference media shared by the tests, the verification suite and the CLI.
pub mod presets {
    use super::*;

    pub const R0: f64 = 0.5;
    pub const R: f64 = 2.0;

    /// Smooth field of the given flux on `[0.6, 1.8]` plus a step `V = 0.3`
    /// on `[r0, R]`.
    pub fn bump_step(flux: f64) -> Result<Medium> {
        Medium::new(RadialProfile::step(R0, R, 0.3)?, RadialProfile::bump_with_flux(0.6, 1.8, flux)?, R0, R)
    }

    /// Field confined to `[0.1, 0.4]` inside the obstacle, `V = 0`.
    pub fn aharonov_bohm(flux: f64) -> Result<Medium> {
        Medium::new(RadialProfile::zero(), RadialProfile::bump_with_flux(0.1, 0.4, flux)?, R0, R)
    }

    /// Spline potential plus a field of the given flux.
    pub fn spline_bump(flux: f64) -> Result<Medium> {
        Medium::new(
            RadialProfile::poly_spline(R0, R, alloc::vec![0.4, 0.1, -0.2, 0.3, 0.0])?,
            RadialProfile::bump_with_flux(0.3, 1.5, flux)?,
            R0,
            R,
        )
    }

    /// Step potential of height `v0` on `[r0, R]`, no field.
    pub fn step(v0: f64) -> Result<Medium> {
        Medium::new(RadialProfile::step(R0, R, v0)?, RadialProfile::zero(), R0, R)
    }
}
