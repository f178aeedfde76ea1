//! Polyanalytic (squeezed) complex Hermite polynomials of the elliptic
//! Ginibre model.
//!
//! The crate provides, in one consistent set of conventions:
//!
//! - exact coefficient algebra for planar polynomials in `(z, z̄)` and for
//!   Gaussian-weighted functions ([`poly`]);
//! - the scalar polynomial families — real, rescaled and complex Hermite,
//!   generalized Laguerre, squeezed complex Hermite, and matrix-generated
//!   bivariate Hermite — each with an independently computed oracle route
//!   ([`hermite`]);
//! - ladder operators, the Bogoliubov transformation, the magnetic
//!   Laplacian, and the operator construction of the squeezed polynomials
//!   ([`operators`]);
//! - planar Gaussian measures and tensor Gauss–Hermite quadrature
//!   ([`quadrature`]);
//! - the kernel of the isometry between holomorphic Hermite expansions and
//!   a fixed Landau level, its series and closed forms, the associated
//!   integral transform, and the two-photon coherent state kernel
//!   ([`kernels`]);
//! - a seeded sampler for the elliptic Ginibre matrix model with an
//!   in-house dense nonsymmetric eigensolver ([`ginibre`], [`linalg`]);
//! - machine-readable verification suites covering every identity the
//!   other modules promise ([`suites`], [`report`]).
//!
//! Every identity is checked by at least two independent computational
//! routes; `elliptic-hermite verify --suite all` runs the whole battery and
//! emits a JSON report.

pub mod cli;
pub mod error;
pub mod ginibre;
pub mod hermite;
pub mod kernels;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod quadrature;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
