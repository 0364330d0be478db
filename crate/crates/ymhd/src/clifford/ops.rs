//! Clifford multiplication, the Dirac form, bullet actions, and inversion of
//! non-null Clifford factors.

use super::gamma::{minkowski, GammaSet, Variance};
use super::spinor::{Spinor, TwistedSpinor};
use crate::mathkit::mat::Mat;
use crate::mathkit::scalar::Scalar;
use thiserror::Error;

/// Relative tolerance for the non-null check in Clifford inversion:
/// |g(v, v)| ≥ NON_NULL_TOL · |v|² (Euclidean norm squared).
pub const NON_NULL_TOL: f64 = 1e-9;

#[derive(Error, Debug)]
pub enum CliffordError {
    #[error("Clifford factor is lightlike or nearly so: |g(v,v)| = {gvv:.3e} < {tol:.3e}")]
    NullVector { gvv: f64, tol: f64 },
}

/// Clifford multiplication on the spinor index: X·ψ = i XᵃΓ_a ψ, acting on a
/// matrix whose rows are spinor components.
pub fn clifford_mult_mat<S: Scalar>(g: &GammaSet<S>, x: &[S; 4], psi: &Mat<S>) -> Mat<S> {
    g.gamma_vector(x).scale(&S::i()).matmul(psi)
}

/// Clifford multiplication of a plain spinor.
pub fn clifford_mult<S: Scalar>(g: &GammaSet<S>, x: &[S; 4], psi: &Spinor<S>) -> Spinor<S> {
    Spinor::from_mat(clifford_mult_mat(g, x, psi.mat()))
}

/// Clifford multiplication of a twisted spinor; swaps the chirality sector.
pub fn clifford_mult_twisted<S: Scalar>(
    g: &GammaSet<S>,
    x: &[S; 4],
    psi: &TwistedSpinor<S>,
) -> TwistedSpinor<S> {
    TwistedSpinor::new(
        psi.sector().flipped(),
        psi.dim_l(),
        psi.dim_r(),
        clifford_mult_mat(g, x, psi.mat()),
    )
}

/// The Dirac form on 4-component columns: ⟨ψ, φ⟩_Δ = ψ†(iΓ₁Γ₂Γ₃)φ,
/// antilinear in ψ.
pub fn dirac_form_mat<S: Scalar>(g: &GammaSet<S>, psi: &Mat<S>, phi: &Mat<S>) -> S {
    psi.dagger().matmul(g.form()).matmul(phi).get(0, 0).clone()
}

/// The Dirac form on spinors.
pub fn dirac_form<S: Scalar>(g: &GammaSet<S>, psi: &Spinor<S>, phi: &Spinor<S>) -> S {
    dirac_form_mat(g, psi.mat(), phi.mat())
}

/// The W-valued pairing summed over an orthonormal internal basis:
/// ⟨Ψ, Φ⟩ = Σ_m ⟨Ψ(:,m), Φ(:,m)⟩_Δ = tr(Ψ†(iΓ₁Γ₂Γ₃)Φ).
pub fn twisted_pairing<S: Scalar>(g: &GammaSet<S>, psi: &Mat<S>, phi: &Mat<S>) -> S {
    psi.dagger().matmul(g.form()).matmul(phi).trace()
}

/// Bullet action of a Lie-algebra-valued form on a twisted spinor.
///
/// * degree 0 (scalar X): Ψ ↦ Ψ·Bᵀ with B = ϱ_*(X), internal index only;
/// * degree 1 (one-form X): Ψ ↦ Σ_k iΓᵏ·Ψ·B_kᵀ with B_k = ϱ_*(X(e_k)),
///   which swaps the chirality sector;
/// * degree 2 (two-form X): Ψ ↦ −Σ_{i≠j} ΓⁱΓʲ·Ψ·B_{ij}ᵀ with
///   B_{ij} = ϱ_*(X(e_i, e_j)) antisymmetric in (i, j).
pub fn bullet<S: Scalar>(
    g: &GammaSet<S>,
    degree: u8,
    internal_mats: &[Mat<S>],
    psi: &TwistedSpinor<S>,
) -> TwistedSpinor<S> {
    let d = psi.dim_l() + psi.dim_r();
    for b in internal_mats {
        assert!(b.rows() == d && b.cols() == d, "internal matrix dimension mismatch");
    }
    let (mat, flips) = match degree {
        0 => {
            assert_eq!(internal_mats.len(), 1, "degree 0 takes one internal matrix");
            (bullet_mat(g, 0, internal_mats, psi.mat()), false)
        }
        1 => {
            assert_eq!(internal_mats.len(), 4, "degree 1 takes B₀..B₃");
            (bullet_mat(g, 1, internal_mats, psi.mat()), true)
        }
        2 => {
            assert_eq!(internal_mats.len(), 16, "degree 2 takes the 4×4 array of B matrices");
            for i in 0..4 {
                for j in 0..4 {
                    let forward = &internal_mats[4 * i + j];
                    let backward = &internal_mats[4 * j + i];
                    assert!(
                        (forward + backward).is_exactly_zero(),
                        "degree-2 array must be antisymmetric"
                    );
                }
            }
            (bullet_mat(g, 2, internal_mats, psi.mat()), false)
        }
        _ => panic!("bullet degree must be 0, 1 or 2"),
    };
    TwistedSpinor::new(
        if flips { psi.sector().flipped() } else { psi.sector() },
        psi.dim_l(),
        psi.dim_r(),
        mat,
    )
}

/// Matrix-level core of [`bullet`]; `internal_mats` is indexed flat for
/// degree 2 (B_{ij} at 4i + j).
pub fn bullet_mat<S: Scalar>(
    g: &GammaSet<S>,
    degree: u8,
    internal_mats: &[Mat<S>],
    psi: &Mat<S>,
) -> Mat<S> {
    match degree {
        0 => psi.matmul(&internal_mats[0].transpose()),
        1 => {
            let mut acc = Mat::zeros(psi.rows(), psi.cols());
            for k in 0..4 {
                let term = g
                    .gamma(k, Variance::Upper)
                    .scale(&S::i())
                    .matmul(psi)
                    .matmul(&internal_mats[k].transpose());
                acc = &acc + &term;
            }
            acc
        }
        2 => {
            let mut acc = Mat::zeros(psi.rows(), psi.cols());
            for i in 0..4 {
                for j in 0..4 {
                    let b = &internal_mats[4 * i + j];
                    if b.is_exactly_zero() {
                        continue;
                    }
                    let gij = g
                        .gamma(i, Variance::Upper)
                        .matmul(g.gamma(j, Variance::Upper));
                    acc = &acc - &gij.matmul(psi).matmul(&b.transpose());
                }
            }
            acc
        }
        _ => panic!("bullet degree must be 0, 1 or 2"),
    }
}

/// Invert a non-null Clifford factor on the spinor index:
/// solves v·ψ = χ by ψ = −(1/g(v,v))·v·χ.
pub fn invert_clifford_mat<S: Scalar>(
    g: &GammaSet<S>,
    v: &[S; 4],
    chi: &Mat<S>,
) -> Result<Mat<S>, CliffordError> {
    let gvv = minkowski(v, v);
    let norm_sq: f64 = v.iter().map(|c| c.mag() * c.mag()).sum();
    let tol = NON_NULL_TOL * norm_sq;
    if gvv.mag() < tol {
        return Err(CliffordError::NullVector { gvv: gvv.mag(), tol });
    }
    let inv = gvv.try_inv().ok_or(CliffordError::NullVector { gvv: 0.0, tol })?;
    Ok(clifford_mult_mat(g, v, chi).scale(&-inv))
}

/// Clifford inversion of a twisted spinor; swaps the chirality sector.
pub fn invert_clifford_twisted<S: Scalar>(
    g: &GammaSet<S>,
    v: &[S; 4],
    chi: &TwistedSpinor<S>,
) -> Result<TwistedSpinor<S>, CliffordError> {
    Ok(TwistedSpinor::new(
        chi.sector().flipped(),
        chi.dim_l(),
        chi.dim_r(),
        invert_clifford_mat(g, v, chi.mat())?,
    ))
}
