//! Yang–Mills–Higgs–Dirac field equations on 4-dimensional Minkowski space.
//!
//! The crate is organised in layers:
//!
//! * [`mathkit`] — exact ℚ(i) and `f64` complex scalars behind one trait, small
//!   dense matrices, spacetime polynomials, truncated Laurent–Taylor jets,
//!   quadrature and a linear ODE integrator.
//! * [`clifford`] — the chiral gamma matrices, Clifford multiplication, the
//!   Dirac form, chirality splitting, bullet actions and Clifford inversion.
//! * [`liealg`] — compact Lie algebras 𝔤 = su(3)ⁿ³⊕su(2)ⁿ²⊕u(1)ⁿ¹ with exact
//!   rational structure constants, representations, centers, and the
//!   Standard-Model content.
//! * [`fieldtheory`] — polynomial gauge/Higgs/spinor fields, covariant
//!   derivatives, curvature, interaction currents, Euler–Lagrange residuals,
//!   the Noether compatibility identity, and the multilinear perturbation
//!   operators.
//! * [`microlocal`] — the causal-diamond geometry of interacting lightlike
//!   rays, parallel transports, the broken ray transform, symbol transport,
//!   and the exact asymptotic-identity certificate.
//! * [`recovery`] — principal-symbol extraction and pointwise spinor
//!   reconstruction from three-fold interaction data.
//! * [`config`] / [`report`] / [`checks`] — TOML-configurable deterministic
//!   verification runs used by the `ymhd` binary.

pub mod clifford;
pub mod fieldtheory;
pub mod liealg;
pub mod mathkit;
pub mod microlocal;
pub mod sampling;
