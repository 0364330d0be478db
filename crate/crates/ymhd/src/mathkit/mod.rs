//! Numeric foundations: scalars, matrices, polynomials, jets, quadrature, ODE.
//!
//! Everything in this crate is small and dense: spinors are 4-vectors, internal
//! spaces have a few dozen dimensions, and jets carry a few dozen coefficient
//! matrices. The layer therefore optimises for *exactness* and *genericity*
//! rather than scale: one [`Scalar`] trait is implemented both by exact
//! Gaussian rationals ([`Cq`]) and by `f64` complex numbers ([`C64`]), and all
//! structures above it (matrices, polynomials, jets) are generic in the scalar.

pub mod scalar;
pub mod mat;
pub mod poly;
pub mod jets;
pub mod quad;
pub mod ode;

pub use mat::Mat;
pub use poly::SpacetimePoly;
pub use scalar::{Scalar, Cq, C64};
pub use jets::LaurentTaylorJet;
