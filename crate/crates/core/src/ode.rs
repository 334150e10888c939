//! Integrators for `y'' = w(r) y` written as the complex first-order system
//! `(y, z)' = (z, w y)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::cabs;

pub(crate) type State = [Complex64; 2];

#[inline]
fn rhs<W: Fn(f64) -> Complex64>(w: &W, r: f64, s: &State) -> State {
    [s[1], w(r) * s[0]]
}

#[inline]
fn axpy(s: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *s;
    for &(c, k) in terms {
        out[0] += k[0] * (h * c);
        out[1] += k[1] * (h * c);
    }
    out
}

/// Adaptive Dormand–Prince 5(4) across `[a, b]` (either direction).
///
/// The error of `(y, z)` is measured as `|δy| + |δz|/κ`, relative to the
/// solution size in the same norm, where `κ(r)` is the local wavenumber
/// scale. Returns the state at `b` and a step size to carry over.
#[allow(clippy::too_many_arguments)]
pub(crate) fn dopri<W, K>(w: &W, kappa: &K, a: f64, b: f64, mut s: State, h_hint: f64, rtol: f64, nu: Complex64) -> Result<(State, f64)>
where
    W: Fn(f64) -> Complex64,
    K: Fn(f64) -> f64,
{
    const C2: f64 = 1.0 / 5.0;
    const C3: f64 = 3.0 / 10.0;
    const C4: f64 = 4.0 / 5.0;
    const C5: f64 = 8.0 / 9.0;
    const A21: f64 = 1.0 / 5.0;
    const A31: f64 = 3.0 / 40.0;
    const A32: f64 = 9.0 / 40.0;
    const A41: f64 = 44.0 / 45.0;
    const A42: f64 = -56.0 / 15.0;
    const A43: f64 = 32.0 / 9.0;
    const A51: f64 = 19372.0 / 6561.0;
    const A52: f64 = -25360.0 / 2187.0;
    const A53: f64 = 64448.0 / 6561.0;
    const A54: f64 = -212.0 / 729.0;
    const A61: f64 = 9017.0 / 3168.0;
    const A62: f64 = -355.0 / 33.0;
    const A63: f64 = 46732.0 / 5247.0;
    const A64: f64 = 49.0 / 176.0;
    const A65: f64 = -5103.0 / 18656.0;
    const B1: f64 = 35.0 / 384.0;
    const B3: f64 = 500.0 / 1113.0;
    const B4: f64 = 125.0 / 192.0;
    const B5: f64 = -2187.0 / 6784.0;
    const B6: f64 = 11.0 / 84.0;
    const E1: f64 = 71.0 / 57600.0;
    const E3: f64 = -71.0 / 16695.0;
    const E4: f64 = 71.0 / 1920.0;
    const E5: f64 = -17253.0 / 339200.0;
    const E6: f64 = 22.0 / 525.0;
    const E7: f64 = -1.0 / 40.0;

    let span = b - a;
    if span == 0.0 {
        return Ok((s, h_hint));
    }
    let dir = span.signum();
    let mut r = a;
    let mut h = h_hint.abs().min(span.abs()).max(span.abs() * 1e-6) * dir;
    let mut k1 = rhs(w, r, &s);
    let mut steps = 0usize;
    loop {
        let remaining = b - r;
        let last = h.abs() >= remaining.abs();
        if last {
            h = remaining;
        }
        let k2 = rhs(w, r + C2 * h, &axpy(&s, h, &[(A21, &k1)]));
        let k3 = rhs(w, r + C3 * h, &axpy(&s, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = rhs(w, r + C4 * h, &axpy(&s, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = rhs(w, r + C5 * h, &axpy(&s, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let r_new = if last { b } else { r + h };
        let k6 = rhs(w, r_new, &axpy(&s, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
        let s_new = axpy(&s, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = rhs(w, r_new, &s_new);
        let e0 = (k1[0] * E1 + k3[0] * E3 + k4[0] * E4 + k5[0] * E5 + k6[0] * E6 + k7[0] * E7) * h;
        let e1 = (k1[1] * E1 + k3[1] * E3 + k4[1] * E4 + k5[1] * E5 + k6[1] * E6 + k7[1] * E7) * h;
        let kap = kappa(r_new).max(kappa(r));
        let size = (cabs(s[0]) + cabs(s[1]) / kap).max(cabs(s_new[0]) + cabs(s_new[1]) / kap);
        let err = (cabs(e0) + cabs(e1) / kap) / (rtol * size.max(1e-300));
        if !err.is_finite() {
            return Err(Error::Integration { nu, r });
        }
        if err <= 1.0 {
            r = r_new;
            s = s_new;
            k1 = k7;
            let grow = if err == 0.0 { 5.0 } else { (0.9 * libm::pow(err, -0.2)).clamp(0.2, 5.0) };
            if last {
                return Ok((s, h.abs() * grow));
            }
            h *= grow;
        } else {
            h *= (0.9 * libm::pow(err, -0.2)).clamp(0.2, 1.0);
        }
        steps += 1;
        if h.abs() < 1e-14 * r.abs().max(1.0) || steps > 10_000_000 {
            return Err(Error::Integration { nu, r });
        }
    }
}

/// Classical RK4 with `n` equal steps across `[a, b]`.
pub(crate) fn rk4<W: Fn(f64) -> Complex64>(w: &W, a: f64, b: f64, mut s: State, n: usize) -> State {
    let n = n.max(1);
    let h = (b - a) / n as f64;
    for i in 0..n {
        let r = a + i as f64 * h;
        let k1 = rhs(w, r, &s);
        let k2 = rhs(w, r + 0.5 * h, &axpy(&s, h, &[(0.5, &k1)]));
        let k3 = rhs(w, r + 0.5 * h, &axpy(&s, h, &[(0.5, &k2)]));
        let r1 = if i + 1 == n { b } else { r + h };
        let k4 = rhs(w, r1, &axpy(&s, h, &[(1.0, &k3)]));
        s = axpy(&s, h, &[(1.0 / 6.0, &k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)]);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_both_directions() {
        let w = |_r: f64| Complex64::new(-1.0, 0.0);
        let s0 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let (s, _) = dopri(&w, &|_| 1.0, 0.0, 3.0, s0, 0.1, 1e-12, Complex64::new(0.0, 0.0)).unwrap();
        assert!((s[0].re - 3f64.sin()).abs() < 1e-10);
        let (back, _) = dopri(&w, &|_| 1.0, 3.0, 0.0, s, 0.1, 1e-12, Complex64::new(0.0, 0.0)).unwrap();
        assert!((back[0]).norm() < 1e-10 && (back[1] - 1.0).norm() < 1e-10);
    }

    #[test]
    fn rk4_fourth_order() {
        let w = |_r: f64| Complex64::new(-1.0, 0.0);
        let s0 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let e1 = (rk4(&w, 0.0, 1.0, s0, 20)[0].re - 1f64.sin()).abs();
        let e2 = (rk4(&w, 0.0, 1.0, s0, 40)[0].re - 1f64.sin()).abs();
        assert!(e1 / e2 > 12.0);
    }
}
