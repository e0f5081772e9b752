//! Exact and numerical toolkit for the Jacobi operator on the full flag
//! manifold M⁶ = U(3)/(U(1)×U(1)×U(1)).
//!
//! The crate has three layers:
//!
//! * exact algebra over ℚ(√2) and sparse multivariate polynomials in the six
//!   tangent coordinates x₁…x₆ ([`qsqrt2`], [`poly`]),
//! * the published closed forms of the covariant derivatives J⁽²⁾…J⁽⁵⁾ of the
//!   Jacobi operator, together with trace audits and minimal sign repair
//!   ([`derivatives`]), and
//! * a first-principles Lie-theoretic oracle for u(3) = h ⊕ m that rebuilds
//!   the curvature, the derivative chain, a calibration against the closed
//!   forms, the constant-coefficient recurrence among the derivatives, and
//!   Jacobi-field / conjugate-point solvers ([`lie`], [`recurrence`],
//!   [`fields`]).

pub mod crossval;
pub mod derivatives;
pub mod fields;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod qsqrt2;
pub mod recurrence;
pub mod samples;

pub use poly::{Homogeneity, MultiPoly, PolyMatrix};
pub use qsqrt2::QSqrt2;
