//! Fixed-energy scattering for radial magnetic Schrödinger operators on the
//! exterior of a disk.
//!
//! The crate covers the whole direct problem at energy `λ = 1`:
//!
//! * [`specfun`]: complex Gamma, and Bessel/Hankel functions of complex order
//!   at real positive argument.
//! * [`fields`]: admissible media (electric potential `V`, radial field `b`),
//!   the gauge function `γ(r)`, the flux and the effective potential `q_ν`.
//! * [`kernels`]: the Green kernels `N`, `M`, `K` and their empirical bounds.
//! * [`radial`]: Jost solutions `F±` and the regular solution `Φ`, by
//!   back/forward ODE integration, with a Volterra–Picard cross-check.
//! * [`scattering`]: Jost functions `α`, `β`, the Regge interpolation
//!   function `σ(ν)`, phase shifts and complex angular momentum scans.
//! * [`inverse`]: flux recovery from the large-`l` tail of `σ`, the
//!   discriminator `F(ν)`, the Börg–Marchenko function `F(r, ν)` and the
//!   decoupling of `q_ν` into its magnetic and electric parts.
//!
//! The crate is `no_std` compatible (it needs `alloc`); the `std` feature is
//! on by default and only affects the error trait plumbing.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
mod math;
mod ode;
pub mod quadrature;

pub mod fields;
pub mod inverse;
pub mod kernels;
pub mod radial;
pub mod scattering;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
