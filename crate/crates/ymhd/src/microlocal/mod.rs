//! Interaction geometry of lightlike rays in the causal diamond, parallel
//! transport and the truncated ray transform, principal-symbol transport, and
//! the hatted two-/three-fold interaction symbols with the exact
//! asymptotic-identity certificate.
//!
//! The module works in three arithmetic modes that share one code path:
//!
//! * **exact point mode** — all geometry data rational (the square roots
//!   `a(s) = √(1−s²)` supplied as exact Pythagorean pairs), computations over
//!   ℚ(i);
//! * **jet modes** — the opening parameters s and/or r kept formal as a
//!   truncated Laurent(s)–Taylor(r) jet with exact rational coefficients, so
//!   limits r → 0 and the s-asymptotics are read off coefficientwise;
//! * **floating mode** — an independently coded direct `f64`/complex
//!   evaluator used as a cross-check oracle, never as the ground truth.

pub mod geometry;
pub mod symbols;
pub mod transport;

pub use geometry::{
    build_geometry, kappa_exact, kappa_jets, kappa_numeric, CausalDomain, InteractionGeometry,
    LightRay, RayMode, SqrtPair,
};
pub use symbols::{
    asymptotic_identity_certificate, direct_three_fold, hat_phi, three_fold_symbol,
    two_fold_symbol, CertificateRecord, DirectGeometry, IModel, SymbolContext, ThreeFoldParts,
};
pub use transport::{
    parallel_transport, ray_transform, symbol_transport_closed_form, temporal_symbol_projection,
    transport_system, SymbolTriple,
};

use crate::mathkit::jets::JetError;
use thiserror::Error;

/// Errors raised by geometry construction, transport, and symbol evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MicrolocalError {
    #[error("covector `{label}` is not lightlike")]
    NotLightlike { label: String },
    #[error("({value}, {root}) is not an exact unit pair: value² + root² ≠ 1 or root < 0")]
    NotUnitPair { value: String, root: String },
    #[error("the κ coefficients have a pole at s = 0")]
    PoleAtS0,
    #[error("parameter out of range: {what}")]
    OutOfRange { what: String },
    #[error("point {point} violates membership: {requirement}")]
    Membership { requirement: String, point: String },
    #[error("algebra element is not central")]
    NotCentral,
    #[error("temporal projection undefined: η₀ = 0")]
    ZeroTimeComponent,
    #[error("η₍{k}{l}₎ is lightlike; the box symbol is not invertible")]
    LightlikePair { k: usize, l: usize },
    #[error("transport state became non-finite")]
    NonFinite,
    #[error("jet arithmetic failed: {0}")]
    Jet(#[from] JetError),
    #[error("asymptotic identity violated: {details}")]
    NonDecayingResidual { details: String },
}
