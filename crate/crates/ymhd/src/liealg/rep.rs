//! Derivatives of unitary representations, tensor/sum constructions, and the
//! hypercharged test.

use super::algebra::{LieAlgebra, LieError};
use crate::mathkit::mat::Mat;
use crate::mathkit::scalar::{q, Cq, Scalar};
use crate::sampling::SampleRng;
use num_rational::BigRational;

/// |det ρ_*(X)| below this threshold counts as singular in the hypercharged
/// witness search.
pub const HYPERCHARGE_DET_TOL: f64 = 1e-10;

/// Number of pseudo-random center samples tried after the center basis
/// elements themselves.
pub const HYPERCHARGE_SAMPLES: usize = 8;

/// Seed for the deterministic witness sampling.
const HYPERCHARGE_SEED: u64 = 0x75;

/// The derivative of a unitary representation: images of the algebra basis,
/// all skew-Hermitian, with an optional chiral split V = V_L ⊕ V_R under
/// which every image is block-diagonal.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: LieAlgebra,
    dim: usize,
    images: Vec<Mat<Cq>>,
    chiral_split: Option<(usize, usize)>,
}

impl Representation {
    /// Build and validate: skew-Hermitian images, the homomorphism property
    /// ρ_*([bᵢ, bⱼ]) = [ρ_*(bᵢ), ρ_*(bⱼ)], and block-diagonality under the
    /// chiral split when present.
    pub fn new(
        algebra: LieAlgebra,
        images: Vec<Mat<Cq>>,
        chiral_split: Option<(usize, usize)>,
    ) -> Result<Self, LieError> {
        assert_eq!(images.len(), algebra.dim(), "one image per basis element");
        let dim = images[0].rows();
        for (index, m) in images.iter().enumerate() {
            assert!(m.rows() == dim && m.cols() == dim, "image shape");
            if !(&m.dagger() + m).is_exactly_zero() {
                return Err(LieError::NotAntiHermitian { index });
            }
        }
        if let Some((dl, dr)) = chiral_split {
            assert_eq!(dl + dr, dim, "chiral split must partition the dimension");
            for m in &images {
                for r in 0..dl {
                    for c in dl..dim {
                        assert!(
                            m.get(r, c).is_exactly_zero() && m.get(c, r).is_exactly_zero(),
                            "chiral split must be preserved block-diagonally"
                        );
                    }
                }
            }
        }
        let rep = Representation { algebra, dim, images, chiral_split };
        for i in 0..rep.algebra.dim() {
            for j in 0..rep.algebra.dim() {
                let bracket_coords = rep.algebra.bracket(&unit(rep.algebra.dim(), i), &unit(rep.algebra.dim(), j));
                let lhs = rep.action(&bracket_coords);
                let rhs = rep.images[i].commutator(&rep.images[j]);
                let residual = (&lhs - &rhs).max_mag();
                if residual > super::algebra::CLOSURE_TOL {
                    return Err(LieError::ClosureViolation { residual });
                }
            }
        }
        Ok(rep)
    }

    /// The trivial representation on ℂ^dim (all images zero).
    pub fn trivial(algebra: LieAlgebra, dim: usize) -> Self {
        let images = vec![Mat::zeros(dim, dim); algebra.dim()];
        Representation { dim, images, algebra, chiral_split: None }
    }

    /// The defining representation of a matrix algebra (images = basis).
    pub fn fundamental(algebra: LieAlgebra) -> Self {
        let images = algebra.basis().to_vec();
        let dim = algebra.ambient();
        Representation { algebra, dim, images, chiral_split: None }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[Mat<Cq>] {
        &self.images
    }

    pub fn chiral_split(&self) -> Option<(usize, usize)> {
        self.chiral_split
    }

    /// ρ_*(X) for the coordinate vector X: Σ xᵢ ρ_*(bᵢ).
    pub fn action(&self, coords: &Mat<Cq>) -> Mat<Cq> {
        assert!(coords.rows() == self.algebra.dim() && coords.cols() == 1, "coordinate shape");
        let mut m = Mat::zeros(self.dim, self.dim);
        for (idx, img) in self.images.iter().enumerate() {
            let c = coords.get(idx, 0);
            if !c.is_exactly_zero() {
                m = &m + &img.scale(c);
            }
        }
        m
    }

    /// Direct sum of representations of the same algebra; images become
    /// block-diagonal. `chiral_split` of the result must be re-declared by
    /// the caller when meaningful.
    pub fn direct_sum(reps: &[Representation], chiral_split: Option<(usize, usize)>) -> Self {
        assert!(!reps.is_empty(), "nonempty summand list");
        let algebra = reps[0].algebra.clone();
        let dim: usize = reps.iter().map(|r| r.dim).sum();
        let mut images = vec![Mat::zeros(dim, dim); algebra.dim()];
        let mut off = 0usize;
        for rep in reps {
            assert_eq!(rep.algebra.dim(), algebra.dim(), "same algebra required");
            for (k, img) in rep.images.iter().enumerate() {
                for r in 0..rep.dim {
                    for c in 0..rep.dim {
                        images[k].set(off + r, off + c, img.get(r, c).clone());
                    }
                }
            }
            off += rep.dim;
        }
        Representation { algebra, dim, images, chiral_split }
    }

    /// Restrict to the block rows/cols `start..start+len` (must be preserved
    /// by every image).
    pub fn block(&self, start: usize, len: usize) -> Self {
        let mut images = Vec::with_capacity(self.images.len());
        for m in &self.images {
            let mut b = Mat::zeros(len, len);
            for r in 0..len {
                for c in 0..len {
                    b.set(r, c, m.get(start + r, start + c).clone());
                }
            }
            images.push(b);
        }
        Representation { algebra: self.algebra.clone(), dim: len, images, chiral_split: None }
    }
}

/// The u(1) representation z ↦ e^{3yiθ}z on ℂ: the generator i maps to 3yi.
pub fn hypercharge_rep(y: BigRational) -> Representation {
    let algebra = LieAlgebra::u1();
    let img = Mat::from_rows(vec![vec![Cq::new(q(0, 1), q(3, 1) * y)]]);
    Representation::new(algebra, vec![img], None).expect("abelian homomorphism")
}

/// Outer tensor product over the direct sum of the factor algebras: the basis
/// element b of factor k acts as id ⊗ … ⊗ ρ_{k*}(b) ⊗ … ⊗ id.
pub fn outer_tensor(factors: &[Representation]) -> Representation {
    assert!(!factors.is_empty(), "nonempty factor list");
    let algebra =
        LieAlgebra::direct_sum(&factors.iter().map(|f| f.algebra().clone()).collect::<Vec<_>>());
    let dim: usize = factors.iter().map(|f| f.dim()).product();
    assert!(dim <= 1 << 20, "outer tensor dimension overflow");
    let mut images = Vec::with_capacity(algebra.dim());
    for (k, factor) in factors.iter().enumerate() {
        for img in factor.images() {
            let mut full = Mat::from_rows(vec![vec![<Cq as Scalar>::from_i64(1)]]);
            for (m, other) in factors.iter().enumerate() {
                let piece = if m == k { img.clone() } else { Mat::identity(other.dim()) };
                full = full.kron(&piece);
            }
            images.push(full);
        }
    }
    Representation { algebra, dim, images, chiral_split: None }
}

/// Hypercharged test: search Z(𝔤) for X with det ρ_*(X) ≠ 0. Tries each
/// center basis element, then [`HYPERCHARGE_SAMPLES`] deterministic rational
/// combinations; returns the witness coordinates when found.
pub fn is_hypercharged(rep: &Representation) -> (bool, Option<Mat<Cq>>) {
    let center = rep.algebra().center();
    if center.is_empty() {
        return (false, None);
    }
    let try_witness = |coords: &Mat<Cq>| -> bool {
        rep.action(coords).determinant().mag() > HYPERCHARGE_DET_TOL
    };
    for z in &center {
        if try_witness(z) {
            return (true, Some(z.clone()));
        }
    }
    let mut rng = SampleRng::new(HYPERCHARGE_SEED);
    for _ in 0..HYPERCHARGE_SAMPLES {
        let mut combo = Mat::zeros(rep.algebra().dim(), 1);
        for z in &center {
            let c = Cq::new(rng.rational(5, 3), q(0, 1));
            combo = &combo + &z.scale(&c);
        }
        if try_witness(&combo) {
            return (true, Some(combo));
        }
    }
    (false, None)
}

/// dim(Z(𝔤) ∩ Ker ρ_*): the joint nullspace of the images over the center.
pub fn center_kernel_intersection(rep: &Representation) -> usize {
    let center = rep.algebra().center();
    if center.is_empty() {
        return 0;
    }
    // Columns: flattened ρ_*(z) for each center basis element z.
    let d2 = rep.dim() * rep.dim();
    let mut m = Mat::zeros(d2, center.len());
    for (col, z) in center.iter().enumerate() {
        let img = rep.action(z);
        for r in 0..rep.dim() {
            for c in 0..rep.dim() {
                m.set(r * rep.dim() + c, col, img.get(r, c).clone());
            }
        }
    }
    m.null_space(0.0).len()
}

fn unit(dim: usize, k: usize) -> Mat<Cq> {
    let mut v = Mat::zeros(dim, 1);
    v.set(k, 0, <Cq as Scalar>::from_i64(1));
    v
}
