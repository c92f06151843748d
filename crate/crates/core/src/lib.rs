//! Derivative and smoothing filters built from orthogonal polynomials.
//!
//! The crate turns the classical "differentiation by integration" idea into a
//! small toolkit:
//!
//! - [`measures`] defines the supported orthogonality measures (Legendre,
//!   Chebyshev, Gram, centered Gram, symmetric Hahn, symmetric Krawtchouk)
//!   and evaluates their polynomials, weights and normalization constants.
//!   Discrete families are handled in exact rational arithmetic.
//! - [`kernels`] provides Christoffel-Darboux reproducing kernels and
//!   weighted least-squares projection onto polynomial subspaces.
//! - [`filter`] synthesizes FIR kernels: generalized Savitzky-Golay
//!   derivative filters, smoothing filters, Greville's minimum R_alpha and
//!   minimum R_infinity designs, plus an independent least-squares oracle.
//! - [`estimator`] applies kernels to uniformly sampled signals, evaluates
//!   the continuous (Lanczos-type) estimators and measures empirical
//!   convergence orders.
//! - [`transfer`] is the frequency-domain side: characteristic functions,
//!   closed forms in terms of spherical Bessel and Gegenbauer functions,
//!   stability and maximal-flatness checks, and a Butterworth reference.

pub mod error;
pub mod estimator;
pub mod filter;
pub mod kernels;
pub mod linalg;
pub mod measures;
pub mod quadrature;
pub mod rational;
pub mod special;
pub mod transfer;

pub use error::{Error, Result};
pub use estimator::{EstimateReport, Signal};
pub use filter::{DesignSpec, FilterKernel};
pub use kernels::{KernelSpec, Projection};
pub use measures::{Family, PolyCoeffs};
pub use rational::Rat;
pub use transfer::TransferSample;
