//! Scalar and complex helpers on top of `libm`, so the crate behaves the same
//! with and without `std`.

use core::f64::consts::PI;
use num_complex::Complex64;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}
#[inline]
pub fn cosh(x: f64) -> f64 {
    libm::cosh(x)
}
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}
#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}
#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

#[inline]
pub fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

#[inline]
pub fn carg(z: Complex64) -> f64 {
    atan2(z.im, z.re)
}

#[inline]
pub fn cexp(z: Complex64) -> Complex64 {
    let m = exp(z.re);
    Complex64::new(m * cos(z.im), m * sin(z.im))
}

/// Principal branch logarithm.
#[inline]
pub fn cln(z: Complex64) -> Complex64 {
    Complex64::new(ln(cabs(z)), carg(z))
}

/// `x^z` for real `x > 0`.
#[inline]
pub fn rpow(x: f64, z: Complex64) -> Complex64 {
    cexp(z * ln(x))
}

/// `(sin πx, cos πx)` with the argument reduced exactly to `[-1/2, 1/2]`.
fn sincos_pi_real(x: f64) -> (f64, f64) {
    let n = round(x);
    let f = x - n;
    let (s, c) = (sin(PI * f), cos(PI * f));
    // n is integral; parity picks the sign.
    if libm::fmod(n, 2.0) == 0.0 {
        (s, c)
    } else {
        (-s, -c)
    }
}

/// `sin(πz)`, accurate near the integers.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let (s, c) = sincos_pi_real(z.re);
    let y = PI * z.im;
    Complex64::new(s * cosh(y), c * sinh(y))
}

/// `e^{iπz}` built from the reduced sine and cosine.
pub fn exp_i_pi(z: Complex64) -> Complex64 {
    let (s, c) = sincos_pi_real(z.re);
    let m = exp(-PI * z.im);
    Complex64::new(m * c, m * s)
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: Complex64) {
        self.sum.re = two_sum(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = two_sum(self.sum.im, x.im, &mut self.comp.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

#[inline]
fn two_sum(s: f64, x: f64, comp: &mut f64) -> f64 {
    let t = s + x;
    if libm::fabs(s) >= libm::fabs(x) {
        *comp += (s - t) + x;
    } else {
        *comp += (x - t) + s;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_vanishes_exactly_at_integers() {
        for n in -7..=7 {
            assert_eq!(sin_pi(Complex64::new(n as f64, 0.0)).re, 0.0);
        }
        let z = sin_pi(Complex64::new(3.0 + 1e-9, 0.0));
        assert!((z.re / (-core::f64::consts::PI * 1e-9) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn exp_i_pi_matches_cexp() {
        let z = Complex64::new(0.37, -0.81);
        let a = exp_i_pi(z);
        let b = cexp(Complex64::i() * PI * z);
        assert!(cabs(a - b) < 1e-14);
    }
}
