//! Relative Drinfeld centers of finite G-graded unitary fusion categories.
//!
//! Categories are given skeletally (fusion rules, duals, quantum dimensions,
//! F-symbols, a grading and an optional strict group action). From that data
//! the crate builds relative and twisted tube algebras, splits them into
//! matrix blocks, extracts half-braidings for every block and checks the
//! G-crossed braiding and equivariantization statements numerically.

pub mod center;
pub mod fusion_core;
pub mod linalg;
pub mod morphisms;
pub mod tube;

pub use num_complex::Complex64 as C64;

/// Default absolute tolerance on floating residuals.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Pass/fail threshold used by the verifiers and the CLI.
pub const VERIFY_TOL: f64 = 1e-8;
/// Eigenvalue gap used to separate spectral clusters.
pub const CLUSTER_GAP: f64 = 1e-6;
