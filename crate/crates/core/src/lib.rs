//! Alpha-theoretic certification for square polynomial and
//! polynomial-exponential systems.
//!
//! A polynomial-exponential system is stored in the reduced form
//! `F(x, y) = [P(x, y); y_i − g_i(c_i · x_σ(i))]` where `P` is polynomial and
//! each `g_i` is one of `exp`, `sin`, `cos`, `sinh`, `cosh`. Given a
//! candidate point the crate computes the Newton step length β, an upper
//! bound on Smale's γ, and decides whether α = β·γ is small enough that
//! Newton's method converges quadratically from the point. Polynomial
//! systems can be certified in exact Gaussian-rational arithmetic; systems
//! with links are "soft certified" in arbitrary-precision floating point.
//!
//! Candidate points can be generated by truncating each link to a Taylor
//! polynomial, solving the truncated system from a linear-product start
//! system, and deforming the solutions back to the original system.

pub mod certify;
pub mod error;
pub mod expsys;
pub mod format;
pub mod homotopy;
pub mod numeric;
pub mod poly;
pub mod refine;

pub use error::{CertifyError, FormatError, NumericError, SystemError};
pub use expsys::{ExpLink, ExpSystem};
pub use numeric::{ArithmeticMode, BigComplex, CMatrix, ExactComplex, ExpKind, PrecisionConfig, Scalar};
pub use poly::{Monomial, Polynomial, PolynomialSystem};
