//! The chiral gamma-matrix representation of the Clifford algebra of
//! Minkowski space, the Dirac form, bullet actions, and Clifford inversion.
//!
//! Conventions, fixed once here and used everywhere:
//!
//! * metric g = diag(−1, +1, +1, +1) with coordinates x⁰ (time), x¹, x², x³;
//! * Γ₀ = i·offdiag(id₂, id₂), Γ_k = i·offdiag(σ_k, −σ_k) (lowered indices),
//!   so that ΓᵅΓᵝ + ΓᵝΓᵅ = 2gᵅᵝ·id₄ exactly;
//! * Clifford multiplication X·ψ = i XᵃΓ_a ψ, hence X·X·ψ = −g(X, X)ψ;
//! * chirality Γ₅ = −iΓ₀Γ₁Γ₂Γ₃ = diag(1, 1, −1, −1): the left-handed half
//!   Δ_L is the first two components, the right-handed half Δ_R the last two;
//! * the Dirac form ⟨ψ, φ⟩_Δ = ψ†(iΓ₁Γ₂Γ₃)φ = −i ψ_L†φ_R + i ψ_R†φ_L,
//!   antilinear in its first slot.
//!
//! The form matrix iΓ₁Γ₂Γ₃ is the unique Hermitian pairing (up to real scale)
//! that is null on each chiral half and anti-symmetric under Clifford
//! multiplication, ⟨X·ψ, φ⟩_Δ = −⟨ψ, X·φ⟩_Δ; the latter is what makes the
//! Dirac operator formally self-adjoint and drives every integration by parts
//! in the field equations.

pub mod gamma;
pub mod ops;
pub mod spinor;

pub use gamma::{metric_sign, minkowski, GammaSet, Variance};
pub use ops::{
    bullet, bullet_mat, clifford_mult, clifford_mult_mat, clifford_mult_twisted, dirac_form,
    dirac_form_mat, invert_clifford_mat, invert_clifford_twisted, twisted_pairing, CliffordError,
    NON_NULL_TOL,
};
pub use spinor::{Sector, Spinor, TwistedSpinor};
