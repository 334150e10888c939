//! Complex Gamma and Bessel/Hankel functions of complex order `ν` at real
//! argument `r > 0` on compact sets.
//!
//! Everything is built on the ascending series of `J_ν`. Hankel functions of
//! non-integer order come from the `J_{±ν}` connection formula; exact integer
//! orders use the limiting series for `Y_n`, and orders within `1e-4` of an
//! integer are interpolated through both regimes.

use alloc::format;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, cabs, cexp, cln, CompensatedSum};

/// Largest supported `|ν|`.
pub const NU_MAX: f64 = 60.0;
/// Largest supported argument.
pub const R_MAX: f64 = 20.0;
/// Largest number of series terms.
pub const K_MAX: usize = 400;
/// Orders closer than this to an integer use the integer-order branch.
pub const INTEGER_THRESHOLD: f64 = 1e-4;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A validated Bessel order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOrder(Complex64);

impl ComplexOrder {
    pub fn new(nu: Complex64) -> Result<Self> {
        if !nu.re.is_finite() || !nu.im.is_finite() {
            return Err(Error::Domain(format!("order {nu} is not finite")));
        }
        if cabs(nu) > NU_MAX {
            return Err(Error::Domain(format!("|order| = {} exceeds {NU_MAX}", cabs(nu))));
        }
        Ok(Self(nu))
    }

    pub fn real(nu: f64) -> Result<Self> {
        Self::new(Complex64::new(nu, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// Bessel, Neumann and Hankel functions of one order at one argument,
/// together with their `r`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselValue {
    pub j: Complex64,
    pub y: Complex64,
    pub h1: Complex64,
    pub h2: Complex64,
    pub dj: Complex64,
    pub dh1: Complex64,
    pub dh2: Complex64,
}

impl BesselValue {
    fn scale_add(self, w: Complex64, acc: Self) -> Self {
        Self {
            j: acc.j + w * self.j,
            y: acc.y + w * self.y,
            h1: acc.h1 + w * self.h1,
            h2: acc.h2 + w * self.h2,
            dj: acc.dj + w * self.dj,
            dh1: acc.dh1 + w * self.dh1,
            dh2: acc.dh2 + w * self.dh2,
        }
    }

    fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self { j: z, y: z, h1: z, h2: z, dj: z, dh1: z, dh2: z }
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == math::round(z.re)
}

/// `ln Γ(z)` for `Re z ≥ 1/2` (Lanczos, principal-ish branch; only its
/// exponential is used).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * math::ln(2.0 * PI) + (z + 0.5) * cln(t) - t + cln(x)
}

/// `Γ(z)`.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        let s = math::sin_pi(z);
        Ok(PI / (s * cexp(ln_gamma_right(1.0 - z))))
    } else {
        Ok(cexp(ln_gamma_right(z)))
    }
}

/// `1/Γ(z)`, entire: exactly zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        math::sin_pi(z) * cexp(ln_gamma_right(1.0 - z)) / PI
    } else {
        cexp(-ln_gamma_right(z))
    }
}

fn check_argument(r: f64) -> Result<()> {
    if !(r > 0.0 && r <= R_MAX) {
        return Err(Error::Domain(format!("argument r = {r} outside (0, {R_MAX}]")));
    }
    Ok(())
}

/// Negative integer order, if `nu` is exactly one.
fn negative_integer(nu: Complex64) -> Option<u32> {
    (nu.im == 0.0 && nu.re < 0.0 && nu.re == math::round(nu.re)).then(|| (-nu.re) as u32)
}

/// Ascending series for `J_ν(r)`; no domain checks on `ν`.
fn j_series(nu: Complex64, r: f64) -> Result<Complex64> {
    if let Some(n) = negative_integer(nu) {
        let v = j_series(Complex64::new(n as f64, 0.0), r)?;
        return Ok(if n % 2 == 0 { v } else { -v });
    }
    let half = 0.5 * r;
    let q = -(half * half);
    let mut term = math::rpow(half, nu) * rgamma(nu + 1.0);
    let mut sum = CompensatedSum::default();
    sum.add(term);
    let mut running_max = cabs(term);
    for k in 1..=K_MAX {
        let kf = k as f64;
        let denom = kf * (nu + kf);
        term = term * q / denom;
        sum.add(term);
        let mag = cabs(term);
        if mag > running_max {
            running_max = mag;
        }
        // Terms only decay monotonically once k + Re ν > 0 and the ratio is small.
        if kf + nu.re > 0.0 && (-q) / cabs(denom) < 0.5 && mag <= 1e-18 * running_max {
            return Ok(sum.value());
        }
        if running_max == 0.0 && kf + nu.re > 0.0 {
            return Ok(sum.value());
        }
    }
    Err(Error::Convergence { nu, r, terms: K_MAX })
}

/// `J_ν(r)`.
pub fn bessel_j(nu: ComplexOrder, r: f64) -> Result<Complex64> {
    check_argument(r)?;
    j_series(nu.0, r)
}

/// `(H¹_ν(r), H²_ν(r))` from the `J_{±ν}` connection formula. Requires `ν`
/// away from the integers.
fn hankel_pair_formula(nu: Complex64, r: f64) -> Result<(Complex64, Complex64)> {
    let jp = j_series(nu, r)?;
    let jm = j_series(-nu, r)?;
    let s = math::sin_pi(nu);
    let e_minus = math::exp_i_pi(-nu);
    let e_plus = math::exp_i_pi(nu);
    let h1 = (jm - e_minus * jp) / (I * s);
    if nu.im == 0.0 {
        return Ok((h1, h1.conj()));
    }
    let h2 = (e_plus * jp - jm) / (I * s);
    Ok((h1, h2))
}

/// `Y_n(r)` for integer `n ≥ 0` from the limiting series.
fn y_integer_nonneg(n: u32, r: f64) -> Result<f64> {
    let half = 0.5 * r;
    let q = half * half;
    let nf = n as f64;
    let jn = j_series(Complex64::new(nf, 0.0), r)?.re;

    let mut finite = 0.0;
    if n > 0 {
        // Σ_{k<n} (n-k-1)!/k! q^k, term_0 = (n-1)!
        let mut term = 1.0;
        for m in 1..n {
            term *= m as f64;
        }
        finite += term;
        for k in 1..n {
            term *= q / (k as f64 * (n - k) as f64);
            finite += term;
        }
    }

    // Σ_k (ψ(k+1) + ψ(n+k+1)) (-q)^k / (k!(n+k)!)
    let mut harm_k = 0.0;
    let mut harm_nk = 0.0;
    for m in 1..=n {
        harm_nk += 1.0 / m as f64;
    }
    let mut term = 1.0;
    for m in 1..=n {
        term /= m as f64;
    }
    let mut sum = CompensatedSum::default();
    let mut running_max = term.abs();
    let psi_sum = |hk: f64, hnk: f64| -2.0 * EULER_GAMMA + hk + hnk;
    sum.add(Complex64::new(term * psi_sum(harm_k, harm_nk), 0.0));
    let mut converged = false;
    for k in 1..=K_MAX {
        let kf = k as f64;
        term *= -q / (kf * (nf + kf));
        harm_k += 1.0 / kf;
        harm_nk += 1.0 / (nf + kf);
        let t = term * psi_sum(harm_k, harm_nk);
        sum.add(Complex64::new(t, 0.0));
        running_max = running_max.max(t.abs());
        if q / (kf * (nf + kf)) < 0.5 && t.abs() <= 1e-18 * running_max {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence { nu: Complex64::new(nf, 0.0), r, terms: K_MAX });
    }
    let pow = math::powi(half, n as i32);
    Ok(-finite / (PI * pow) + (2.0 / PI) * math::ln(half) * jn - pow * sum.value().re / PI)
}

/// `(J_n(r), Y_n(r))` for any integer `n`.
fn jy_integer(n: i64, r: f64) -> Result<(f64, f64)> {
    let m = n.unsigned_abs() as u32;
    let j = j_series(Complex64::new(m as f64, 0.0), r)?.re;
    let y = y_integer_nonneg(m, r)?;
    if n < 0 && m % 2 == 1 {
        Ok((-j, -y))
    } else {
        Ok((j, y))
    }
}

/// Hankel functions and derivatives away from the integers.
fn bessel_h_formula(nu: Complex64, r: f64) -> Result<BesselValue> {
    let j = j_series(nu, r)?;
    let j1 = j_series(nu - 1.0, r)?;
    let (h1, h2) = hankel_pair_formula(nu, r)?;
    let (g1, g2) = hankel_pair_formula(nu - 1.0, r)?;
    let k = nu / r;
    Ok(BesselValue {
        j,
        y: (h1 - h2) / (2.0 * I),
        h1,
        h2,
        dj: j1 - k * j,
        dh1: g1 - k * h1,
        dh2: g2 - k * h2,
    })
}

/// Hankel functions and derivatives at an exact integer order.
fn bessel_h_integer(n: i64, r: f64) -> Result<BesselValue> {
    let (j, y) = jy_integer(n, r)?;
    let (j1, y1) = jy_integer(n - 1, r)?;
    let k = n as f64 / r;
    let dj = j1 - k * j;
    let dy = y1 - k * y;
    Ok(BesselValue {
        j: Complex64::new(j, 0.0),
        y: Complex64::new(y, 0.0),
        h1: Complex64::new(j, y),
        h2: Complex64::new(j, -y),
        dj: Complex64::new(dj, 0.0),
        dh1: Complex64::new(dj, dy),
        dh2: Complex64::new(dj, -dy),
    })
}

/// `J_ν, Y_ν, H¹_ν, H²_ν` and their `r`-derivatives.
///
/// For real `ν` the result satisfies `H² = conj(H¹)` exactly.
pub fn bessel_h(nu: ComplexOrder, r: f64) -> Result<BesselValue> {
    check_argument(r)?;
    let nu = nu.0;
    let n = math::round(nu.re);
    let eps = nu - n;
    if eps == Complex64::new(0.0, 0.0) {
        return bessel_h_integer(n as i64, r);
    }
    if cabs(eps) >= INTEGER_THRESHOLD {
        return bessel_h_formula(nu, r);
    }
    // Quadratic interpolation in ε through n - h, n, n + h.
    let h = INTEGER_THRESHOLD;
    let lo = bessel_h_formula(Complex64::new(n - h, 0.0), r)?;
    let mid = bessel_h_integer(n as i64, r)?;
    let hi = bessel_h_formula(Complex64::new(n + h, 0.0), r)?;
    let h2 = h * h;
    let w_lo = eps * (eps - h) / (2.0 * h2);
    let w_mid = (h2 - eps * eps) / h2;
    let w_hi = eps * (eps + h) / (2.0 * h2);
    let mut out = lo.scale_add(w_lo, BesselValue::zero());
    out = mid.scale_add(w_mid, out);
    out = hi.scale_add(w_hi, out);
    if nu.im == 0.0 {
        out.h2 = out.h1.conj();
        out.dh2 = out.dh1.conj();
    }
    Ok(out)
}

/// Leading large-order term `-(i/π) Γ(ν) (r/2)^{-ν}` of `H¹_ν(r)`.
///
/// Reference value only; never used by the solvers.
pub fn hankel_asymptotic_large_nu(nu: ComplexOrder, r: f64) -> Result<Complex64> {
    check_argument(r)?;
    let nu = nu.0;
    if cabs(nu) < 5.0 {
        return Err(Error::Domain(format!("|nu| = {} below 5", cabs(nu))));
    }
    if math::carg(nu).abs() > PI / 2.0 - 0.1 {
        return Err(Error::Domain(format!("arg(nu) = {} outside the Hankel sector", math::carg(nu))));
    }
    // Γ(ν)(r/2)^{-ν} combined in log form to avoid overflow.
    let lg = cln(gamma_complex(nu)?);
    Ok(-I / PI * cexp(lg - nu * math::ln(0.5 * r)))
}

/// Ratios of `|H¹_{iy}(r)|` and `|H²_{iy}(r)|` to their imaginary-axis
/// envelopes `√2/√(π|y|) e^{±πy/2}`.
pub fn hankel_imaginary_axis_check(y: f64, r: f64) -> Result<(f64, f64)> {
    if y.abs() < 5.0 {
        return Err(Error::Domain(format!("|y| = {} below 5", y.abs())));
    }
    let bv = bessel_h(ComplexOrder::new(Complex64::new(0.0, y))?, r)?;
    let amp = math::sqrt(2.0) / math::sqrt(PI * y.abs());
    Ok((
        cabs(bv.h1) / (amp * math::exp(PI * y / 2.0)),
        cabs(bv.h2) / (amp * math::exp(-PI * y / 2.0)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ord(re: f64, im: f64) -> ComplexOrder {
        ComplexOrder::new(c(re, im)).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn gamma_special_values() {
        assert!((gamma_complex(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma_complex(c(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-14);
        assert!(rel(gamma_complex(c(6.0, 0.0)).unwrap(), c(120.0, 0.0)) < 1e-13);
        assert_eq!(gamma_complex(c(-3.0, 0.0)), Err(Error::Pole(c(-3.0, 0.0))));
        assert_eq!(gamma_complex(c(0.0, 0.0)), Err(Error::Pole(c(0.0, 0.0))));
    }

    #[test]
    fn gamma_on_the_imaginary_axis() {
        for y in [1.0, 2.0, 5.0] {
            let g = gamma_complex(c(0.0, y)).unwrap();
            let want = PI / (y * (PI * y).sinh());
            assert!((g.norm_sqr() / want - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        assert_eq!(rgamma(c(-4.0, 0.0)), c(0.0, 0.0));
        assert!(rel(rgamma(c(3.3, -0.4)) * gamma_complex(c(3.3, -0.4)).unwrap(), c(1.0, 0.0)) < 1e-13);
    }

    #[test]
    fn j_small_argument_and_half_order() {
        let v = bessel_j(ord(0.0, 0.0), 1e-8).unwrap();
        assert!((v - 1.0).norm() < 1e-12);
        let v = bessel_j(ord(0.5, 0.0), 1.0).unwrap();
        assert!((v.re - (2.0 / PI).sqrt() * 1f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn negative_integer_order_is_exact() {
        let a = bessel_j(ord(-3.0, 0.0), 1.7).unwrap();
        let b = bessel_j(ord(3.0, 0.0), 1.7).unwrap();
        assert_eq!(a, -b);
    }

    #[test]
    fn half_order_hankel_closed_form() {
        for r in [0.5, 1.0, 2.0] {
            let bv = bessel_h(ord(0.5, 0.0), r).unwrap();
            let want = -I * (2.0 / (PI * r)).sqrt() * Complex64::new(0.0, r).exp();
            assert!(rel(bv.h1, want) < 1e-13);
            assert_eq!(bv.h2, bv.h1.conj());
        }
    }

    #[test]
    fn hankel_reflection() {
        let nu = c(0.7, 0.3);
        let r = 1.5;
        let a = bessel_h(ComplexOrder::new(-nu).unwrap(), r).unwrap();
        let b = bessel_h(ComplexOrder::new(nu).unwrap(), r).unwrap();
        assert!(rel(a.h1, math::exp_i_pi(nu) * b.h1) < 1e-12);
        assert!(rel(a.h2, math::exp_i_pi(-nu) * b.h2) < 1e-12);
    }

    #[test]
    fn large_order_asymptotics() {
        let dev = |nu: f64| {
            let h = bessel_h(ord(nu, 0.0), 1.0).unwrap().h1;
            let a = hankel_asymptotic_large_nu(ord(nu, 0.0), 1.0).unwrap();
            (h / a - 1.0).norm()
        };
        let d20 = dev(20.0);
        let d40 = dev(40.0);
        assert!(d20 <= 0.1, "{d20}");
        assert!(d40 < d20);
        let a05 = hankel_asymptotic_large_nu(ord(30.0, 0.0), 0.5).unwrap();
        let a1 = hankel_asymptotic_large_nu(ord(30.0, 0.0), 1.0).unwrap();
        assert!(rel(a1 / a05, c(0.5f64.powi(30), 0.0)) < 1e-12);
        assert!(hankel_asymptotic_large_nu(ord(0.0, 20.0), 1.0).is_err());
        assert!(hankel_asymptotic_large_nu(ord(3.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn imaginary_axis_envelopes() {
        let (a20, b20) = hankel_imaginary_axis_check(20.0, 1.0).unwrap();
        let (a40, b40) = hankel_imaginary_axis_check(40.0, 1.0).unwrap();
        for v in [a20, b20] {
            assert!((0.8..=1.25).contains(&v), "{v}");
        }
        assert!((a40 - 1.0).abs() < (a20 - 1.0).abs());
        assert!((b40 - 1.0).abs() < (b20 - 1.0).abs());
        let (m1, m2) = hankel_imaginary_axis_check(-20.0, 1.0).unwrap();
        assert!((m1 - b20).abs() < 1e-10 && (m2 - a20).abs() < 1e-10);
        assert!(hankel_imaginary_axis_check(2.0, 1.0).is_err());
    }

    #[test]
    fn integer_branch_matches_neighbouring_formula() {
        // At the switching threshold both regimes describe the same function.
        for n in [0.0, 1.0, 4.0, -2.0] {
            for r in [0.5, 1.3, 2.0] {
                let at = bessel_h(ord(n + INTEGER_THRESHOLD, 0.0), r).unwrap();
                let inside = bessel_h(ord(n + 0.999_999 * INTEGER_THRESHOLD, 0.0), r).unwrap();
                assert!(rel(inside.h1, at.h1) < 1e-9, "n={n} r={r}");
                let exact = bessel_h(ord(n, 0.0), r).unwrap();
                let near = bessel_h(ord(n + 1e-5, 0.0), r).unwrap();
                // |∂Y/∂ν| is O(1), so the gap is O(1e-5).
                assert!((near.h1 - exact.h1).norm() < 1e-4 * (1.0 + exact.h1.norm()));
            }
        }
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(ComplexOrder::new(c(61.0, 0.0)).is_err());
        assert!(ComplexOrder::new(c(f64::NAN, 0.0)).is_err());
        assert!(bessel_j(ord(1.0, 0.0), 0.0).is_err());
        assert!(bessel_j(ord(1.0, 0.0), 25.0).is_err());
    }

    fn order_strategy() -> impl Strategy<Value = Complex64> {
        (-12.0..12.0f64, -8.0..8.0f64).prop_map(|(a, b)| c(a, b))
    }

    proptest! {
        #[test]
        fn hankel_wronskian(nu in order_strategy(), r in 0.3..4.0f64) {
            let bv = bessel_h(ComplexOrder::new(nu).unwrap(), r).unwrap();
            let w = bv.h1 * bv.dh2 - bv.dh1 * bv.h2;
            let target = -4.0 * I / (PI * r);
            let scale = (bv.h1.norm() * bv.dh2.norm()).max(1.0);
            prop_assert!((w - target).norm() <= 1e-9 * scale.max(1.0), "{}", (w - target).norm());
        }

        #[test]
        fn j_conjugation(nu in order_strategy(), r in 0.1..10.0f64) {
            let a = bessel_j(ComplexOrder::new(nu).unwrap(), r).unwrap();
            let b = bessel_j(ComplexOrder::new(nu.conj()).unwrap(), r).unwrap();
            prop_assert!((a.conj() - b).norm() <= 1e-12 * a.norm().max(1.0));
        }

        #[test]
        fn hankel_conjugation(nu in order_strategy(), r in 0.3..4.0f64) {
            let a = bessel_h(ComplexOrder::new(nu).unwrap(), r).unwrap();
            let b = bessel_h(ComplexOrder::new(nu.conj()).unwrap(), r).unwrap();
            prop_assert!((a.h1.conj() - b.h2).norm() <= 1e-12 * a.h1.norm().max(1.0));
        }

        #[test]
        fn h2_reflection(nu in order_strategy(), r in 0.3..4.0f64) {
            let a = bessel_h(ComplexOrder::new(-nu).unwrap(), r).unwrap();
            let b = bessel_h(ComplexOrder::new(nu).unwrap(), r).unwrap();
            let want = math::exp_i_pi(-nu) * b.h2;
            prop_assert!((a.h2 - want).norm() <= 1e-10 * want.norm().max(1.0));
        }

        #[test]
        fn dj_matches_finite_difference(nu in order_strategy(), r in 0.5..6.0f64) {
            let o = ComplexOrder::new(nu).unwrap();
            let h = 1e-6;
            let fd = (bessel_j(o, r + h).unwrap() - bessel_j(o, r - h).unwrap()) / (2.0 * h);
            let dj = bessel_h(o, r).unwrap().dj;
            prop_assert!((fd - dj).norm() <= 1e-6 * dj.norm().max(1.0));
        }
    }
}
