use alloc::string::String;
use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    Pole(Complex64),
    #[error("Bessel series for order {nu} at r = {r} did not converge within {terms} terms")]
    Convergence { nu: Complex64, r: f64, terms: usize },
    #[error("argument outside the supported domain: {0}")]
    Domain(String),
    #[error("quadrature tolerance {tol:e} not met on [{a}, {b}]")]
    Quadrature { a: f64, b: f64, tol: f64 },
    #[error("denominator {0:e} is too close to zero")]
    DivisionByNearZero(f64),
    #[error("step size underflow at r = {r} while integrating for nu = {nu}")]
    Integration { nu: Complex64, r: f64 },
    #[error("Picard iteration did not converge after {iterations} iterations (last update {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("Jost function beta vanishes at nu = {0}")]
    BetaZero(Complex64),
    #[error("sigma is not unimodular at real nu = {nu} (|sigma| = {modulus})")]
    NotUnimodular { nu: f64, modulus: f64 },
    #[error("need at least {needed} records with l >= {l_min}, found {found}")]
    InsufficientTail { needed: usize, l_min: i64, found: usize },
    #[error("media carry different fluxes ({a} vs {b}); the identity needs equal flux")]
    FluxMismatch { a: f64, b: f64 },
    #[error("affine decoupling is ill conditioned: |nu1 - nu2| = {0:e}")]
    IllConditioned(f64),
    #[error("invalid medium: {0}")]
    InvalidMedium(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
