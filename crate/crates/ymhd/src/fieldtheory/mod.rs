//! Polynomial Yang–Mills–Higgs–Dirac fields and their exact calculus.
//!
//! Fields live on Minkowski ℝ⁴ as matrix-valued polynomials: gauge fields
//! are 1-forms with Lie-algebra coordinate values, Higgs fields take values
//! in the unitary internal space W, spinor fields are 4×(d_L+d_R) chiral
//! blocks twisted by V = V_L ⊕ V_R. Because everything is polynomial, all
//! differential identities (curvature, Lichnerowicz–Weitzenböck, Noether
//! compatibility, linearization consistency) are verified exactly, with no
//! discretization error; floating point appears only when evaluating at
//! sample points.

pub mod fields;
pub mod forms;
pub mod ops;
pub mod perturb;
pub mod yukawa;
