//! Exact computation with constant Dirac structures on n-tori.
//!
//! The crate implements the linear algebra of constant Dirac structures
//! (maximal isotropic subspaces of R^n + R^n*), the fractional-linear
//! action of O(n,n) on Poisson matrices and its extension to all Dirac
//! structures, characteristic data (nullity, parity), Poissonization via
//! the coordinate involutions sigma_I, the exact-phase star product of
//! quantum tori, finite clock-and-shift representations, and bounded
//! breadth-first orbit exploration over the integer group generators.
//!
//! All linear algebra below the quantization layer is exact (arbitrary
//! precision rationals); floating point appears only in final complex
//! coefficients and in the finite matrix representations.

pub mod dirac;
pub mod error;
pub mod exact;
pub mod onn;
pub mod orbit;
pub mod poissonize;
pub mod qtorus;
pub mod sampling;
pub mod word;

pub use error::{Error, Result};
