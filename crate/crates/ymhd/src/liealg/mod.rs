//! Compact matrix Lie algebras, Ad-invariant inner products, centers,
//! unitary representations, and the Standard-Model representation content.
//!
//! The gauge algebra 𝔤 = su(3)^{n₃} ⊕ su(2)^{n₂} ⊕ u(1)^{n₁} is presented by
//! an explicit anti-Hermitian matrix basis with exact ℚ(i) entries, so that
//! brackets, centers, kernels and determinants are computed exactly. Elements
//! are passed around as coordinate vectors over the basis; the Ad-invariant
//! inner product is −tr(XY) on each simple factor and normalizes u(1)
//! generators to unit length.
//!
//! Representations store the images ρ_*(bᵢ) of the basis and, for fermions,
//! the chiral split V = V_L ⊕ V_R as block-diagonal structure. The
//! `hypercharged` test looks for a central element whose image has nonzero
//! determinant; it drives the pointwise source-recovery step.

pub mod algebra;
pub mod rep;
pub mod sm;

pub use algebra::{LieAlgebra, LieError};
pub use rep::{
    center_kernel_intersection, hypercharge_rep, is_hypercharged, outer_tensor, Representation,
};
pub use sm::{standard_model_content, Chirality, GenerationTable, Multiplet, SmContent};
