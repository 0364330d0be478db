//! Matrix Lie algebras with exact rational structure.

use crate::mathkit::mat::Mat;
use crate::mathkit::scalar::{q, Cq, Scalar};
use thiserror::Error;

/// Residual magnitude above which a commutator is deemed outside the span.
pub const CLOSURE_TOL: f64 = 1e-10;

#[derive(Error, Debug)]
pub enum LieError {
    #[error("basis element {index} is not anti-Hermitian")]
    NotAntiHermitian { index: usize },
    #[error("commutator leaves the basis span (residual {residual:.3e})")]
    ClosureViolation { residual: f64 },
    #[error("inner product Gram matrix is not symmetric")]
    AsymmetricGram,
    #[error("Frobenius Gram matrix is singular (basis not independent)")]
    DependentBasis,
}

/// A compact matrix Lie algebra: an anti-Hermitian basis of a fixed ambient
/// size, with an Ad-invariant inner product given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    ambient: usize,
    basis: Vec<Mat<Cq>>,
    gram: Mat<Cq>,
    /// Structure constants: `structure[i][j]` = coordinates of [bᵢ, bⱼ].
    structure: Vec<Vec<Mat<Cq>>>,
    /// Inverse of the Frobenius Gram tr(bᵢ†bⱼ), cached for coordinates.
    frob_inv: Mat<Cq>,
}

impl LieAlgebra {
    /// Build an algebra from an anti-Hermitian basis, verifying closure and
    /// caching structure constants.
    pub fn from_basis(basis: Vec<Mat<Cq>>, gram: Mat<Cq>) -> Result<Self, LieError> {
        assert!(!basis.is_empty(), "basis must be nonempty");
        let ambient = basis[0].rows();
        for (index, b) in basis.iter().enumerate() {
            assert!(b.rows() == ambient && b.cols() == ambient, "ambient size mismatch");
            if !(&b.dagger() + b).is_exactly_zero() {
                return Err(LieError::NotAntiHermitian { index });
            }
        }
        if gram.transpose() != gram {
            return Err(LieError::AsymmetricGram);
        }
        let dim = basis.len();
        let mut frob = Mat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                frob.set(i, j, basis[i].dagger().matmul(&basis[j]).trace());
            }
        }
        let frob_inv = frob.inverse().ok_or(LieError::DependentBasis)?;
        let mut algebra = LieAlgebra {
            ambient,
            basis,
            gram,
            structure: Vec::new(),
            frob_inv,
        };
        let mut structure = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for j in 0..dim {
                let comm = algebra.basis[i].commutator(&algebra.basis[j]);
                row.push(algebra.coords(&comm)?);
            }
            structure.push(row);
        }
        algebra.structure = structure;
        Ok(algebra)
    }

    /// The abelian algebra u(1) = span{i}, unit-normalized generator.
    pub fn u1() -> Self {
        let basis = vec![Mat::from_rows(vec![vec![<Cq as Scalar>::i()]])];
        let gram = Mat::from_rows(vec![vec![<Cq as Scalar>::from_i64(1)]]);
        Self::from_basis(basis, gram).expect("u(1) closes")
    }

    /// su(2) with basis iσ_k/2 and inner product −tr(XY) (Gram = id/2).
    pub fn su2() -> Self {
        let i = <Cq as Scalar>::i();
        let h = Cq::new(q(1, 2), q(0, 1));
        let sigma = [
            Mat::from_rows(vec![
                vec![<Cq as Scalar>::from_i64(0), <Cq as Scalar>::from_i64(1)],
                vec![<Cq as Scalar>::from_i64(1), <Cq as Scalar>::from_i64(0)],
            ]),
            Mat::from_rows(vec![
                vec![<Cq as Scalar>::from_i64(0), -i.clone()],
                vec![i.clone(), <Cq as Scalar>::from_i64(0)],
            ]),
            Mat::from_rows(vec![
                vec![<Cq as Scalar>::from_i64(1), <Cq as Scalar>::from_i64(0)],
                vec![<Cq as Scalar>::from_i64(0), <Cq as Scalar>::from_i64(-1)],
            ]),
        ];
        let basis: Vec<Mat<Cq>> = sigma.iter().map(|s| s.scale(&i).scale(&h)).collect();
        let gram = minus_trace_gram(&basis);
        Self::from_basis(basis, gram).expect("su(2) closes")
    }

    /// su(3) with a rational basis: the six off-diagonal generators
    /// E_ab − E_ba and i(E_ab + E_ba), plus diag(i, −i, 0) and diag(0, i, −i);
    /// inner product −tr(XY).
    pub fn su3() -> Self {
        let i = <Cq as Scalar>::i();
        let one = <Cq as Scalar>::from_i64(1);
        let mut basis = Vec::new();
        for a in 0..3 {
            for b in (a + 1)..3 {
                let mut x: Mat<Cq> = Mat::zeros(3, 3);
                x.set(a, b, one.clone());
                x.set(b, a, -one.clone());
                basis.push(x);
                let mut y: Mat<Cq> = Mat::zeros(3, 3);
                y.set(a, b, i.clone());
                y.set(b, a, i.clone());
                basis.push(y);
            }
        }
        let mut d1: Mat<Cq> = Mat::zeros(3, 3);
        d1.set(0, 0, i.clone());
        d1.set(1, 1, -i.clone());
        basis.push(d1);
        let mut d2: Mat<Cq> = Mat::zeros(3, 3);
        d2.set(1, 1, i.clone());
        d2.set(2, 2, -i.clone());
        basis.push(d2);
        let gram = minus_trace_gram(&basis);
        Self::from_basis(basis, gram).expect("su(3) closes")
    }

    /// Direct sum: block-embedded bases, block-diagonal inner product.
    pub fn direct_sum(parts: &[LieAlgebra]) -> Self {
        let ambient: usize = parts.iter().map(|p| p.ambient).sum();
        let dim: usize = parts.iter().map(|p| p.dim()).sum();
        let mut basis = Vec::with_capacity(dim);
        let mut gram = Mat::zeros(dim, dim);
        let mut row_off = 0usize;
        let mut idx_off = 0usize;
        for p in parts {
            for b in &p.basis {
                let mut e: Mat<Cq> = Mat::zeros(ambient, ambient);
                for r in 0..p.ambient {
                    for c in 0..p.ambient {
                        e.set(row_off + r, row_off + c, b.get(r, c).clone());
                    }
                }
                basis.push(e);
            }
            for r in 0..p.dim() {
                for c in 0..p.dim() {
                    gram.set(idx_off + r, idx_off + c, p.gram.get(r, c).clone());
                }
            }
            row_off += p.ambient;
            idx_off += p.dim();
        }
        Self::from_basis(basis, gram).expect("direct sum of closed algebras closes")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Mat<Cq>] {
        &self.basis
    }

    pub fn gram(&self) -> &Mat<Cq> {
        &self.gram
    }

    /// The ambient matrix Σ xᵢ bᵢ of a coordinate vector.
    pub fn element(&self, coords: &Mat<Cq>) -> Mat<Cq> {
        assert!(coords.rows() == self.dim() && coords.cols() == 1, "coordinate shape");
        let mut m = Mat::zeros(self.ambient, self.ambient);
        for (idx, b) in self.basis.iter().enumerate() {
            m = &m + &b.scale(coords.get(idx, 0));
        }
        m
    }

    /// Coordinates of an ambient matrix over the basis (Frobenius projection
    /// with exact residual check).
    pub fn coords(&self, m: &Mat<Cq>) -> Result<Mat<Cq>, LieError> {
        let dim = self.dim();
        let mut rhs = Mat::zeros(dim, 1);
        for i in 0..dim {
            rhs.set(i, 0, self.basis[i].dagger().matmul(m).trace());
        }
        let coords = self.frob_inv.matmul(&rhs);
        let residual = (&self.element(&coords) - m).max_mag();
        if residual > CLOSURE_TOL {
            return Err(LieError::ClosureViolation { residual });
        }
        Ok(coords)
    }

    /// Bracket in coordinates via the cached structure constants:
    /// [x, y] = Σᵢⱼ xᵢ yⱼ [bᵢ, bⱼ].
    pub fn bracket(&self, x: &Mat<Cq>, y: &Mat<Cq>) -> Mat<Cq> {
        let dim = self.dim();
        let mut out = Mat::zeros(dim, 1);
        for i in 0..dim {
            let xi = x.get(i, 0);
            if xi.is_exactly_zero() {
                continue;
            }
            for j in 0..dim {
                let yj = y.get(j, 0);
                if yj.is_exactly_zero() {
                    continue;
                }
                out = &out + &self.structure[i][j].scale(&(xi.clone() * yj.clone()));
            }
        }
        out
    }

    /// Ad-invariant pairing of coordinate vectors: ⟨x, y⟩ = xᵀ G y
    /// (bilinear; coordinates of real algebra elements are real).
    pub fn pairing(&self, x: &Mat<Cq>, y: &Mat<Cq>) -> Cq {
        x.transpose().matmul(&self.gram).matmul(y).get(0, 0).clone()
    }

    /// Basis of the center Z(𝔤) as coordinate vectors: the joint nullspace of
    /// all adjoint maps, Gram–Schmidt-orthogonalized against the inner
    /// product and scaled so the first nonzero coordinate is 1.
    pub fn center(&self) -> Vec<Mat<Cq>> {
        let dim = self.dim();
        // Stack ad(bⱼ) for all j: rows (j·dim + k), columns i, entry = the
        // k-th coordinate of [bⱼ, bᵢ].
        let mut stacked = Mat::zeros(dim * dim, dim);
        for j in 0..dim {
            for i in 0..dim {
                for k in 0..dim {
                    stacked.set(j * dim + k, i, self.structure[j][i].get(k, 0).clone());
                }
            }
        }
        let raw = stacked.null_space(0.0);
        // Orthogonalize w.r.t. the Ad-invariant product, then canonical scale.
        let mut ortho: Vec<Mat<Cq>> = Vec::new();
        for v in raw {
            let mut w = v;
            for u in &ortho {
                let num = self.pairing(u, &w);
                let den = self.pairing(u, u);
                let f = num * den.try_inv().expect("positive-definite Gram");
                w = &w - &u.scale(&f);
            }
            if w.is_exactly_zero() {
                continue;
            }
            let lead = (0..dim)
                .map(|r| w.get(r, 0))
                .find(|c| !c.is_exactly_zero())
                .expect("nonzero vector")
                .clone();
            ortho.push(w.scale(&lead.try_inv().expect("nonzero leading coordinate")));
        }
        ortho
    }
}

/// Gram matrix of the pairing −tr(XY) over a basis.
fn minus_trace_gram(basis: &[Mat<Cq>]) -> Mat<Cq> {
    let dim = basis.len();
    let mut gram = Mat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            gram.set(i, j, -basis[i].matmul(&basis[j]).trace());
        }
    }
    gram
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_brackets_match_matrix_commutators() {
        let g = LieAlgebra::su2();
        // [iσ₁/2, iσ₂/2] = −σ₁σ₂/4·2(antisym) = ... verified against the
        // ambient commutator re-expanded in coordinates
        for i in 0..3 {
            for j in 0..3 {
                let x = unit(3, i);
                let y = unit(3, j);
                let via_coords = g.element(&g.bracket(&x, &y));
                let direct = g.basis()[i].commutator(&g.basis()[j]);
                assert_eq!(via_coords, direct);
            }
        }
        // explicitly: [b₁, b₂] = −b₃ with b_k = iσ_k/2
        let c = g.bracket(&unit(3, 0), &unit(3, 1));
        assert_eq!(g.element(&c), g.basis()[2].scale(&<Cq as Scalar>::from_i64(-1)));
    }

    #[test]
    fn self_bracket_vanishes() {
        let g = LieAlgebra::su3();
        for i in 0..g.dim() {
            let x = unit(g.dim(), i);
            assert!(g.bracket(&x, &x).is_exactly_zero());
        }
    }

    #[test]
    fn ad_invariance_on_basis_triples() {
        for g in [LieAlgebra::su2(), LieAlgebra::su3()] {
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    for c in 0..g.dim() {
                        let (za, xb, yc) = (unit(g.dim(), a), unit(g.dim(), b), unit(g.dim(), c));
                        let lhs = g.pairing(&g.bracket(&za, &xb), &yc);
                        let rhs = g.pairing(&xb, &g.bracket(&za, &yc));
                        assert!((lhs + rhs).is_exactly_zero(), "⟨[Z,X],Y⟩ + ⟨X,[Z,Y]⟩ = 0");
                    }
                }
            }
        }
    }

    #[test]
    fn centers_of_simple_and_abelian_factors() {
        assert_eq!(LieAlgebra::u1().center().len(), 1);
        assert_eq!(LieAlgebra::su2().center().len(), 0);
        assert_eq!(LieAlgebra::su3().center().len(), 0);
        let sm = LieAlgebra::direct_sum(&[LieAlgebra::su3(), LieAlgebra::su2(), LieAlgebra::u1()]);
        let center = sm.center();
        assert_eq!(center.len(), 1);
        // the central line is the u(1) coordinate (index 11 of 12)
        for k in 0..11 {
            assert!(center[0].get(k, 0).is_exactly_zero());
        }
        assert_eq!(center[0].get(11, 0), &<Cq as Scalar>::from_i64(1));
    }

    #[test]
    fn center_dimension_is_additive() {
        let g = LieAlgebra::direct_sum(&[
            LieAlgebra::su2(),
            LieAlgebra::u1(),
            LieAlgebra::u1(),
            LieAlgebra::su3(),
            LieAlgebra::u1(),
        ]);
        assert_eq!(g.center().len(), 3);
    }

    #[test]
    fn closure_violation_is_reported() {
        let g = LieAlgebra::su2();
        // a Hermitian (not anti-Hermitian) matrix is outside su(2)'s span
        let outside = Mat::from_rows(vec![
            vec![<Cq as Scalar>::from_i64(1), <Cq as Scalar>::from_i64(0)],
            vec![<Cq as Scalar>::from_i64(0), <Cq as Scalar>::from_i64(1)],
        ]);
        assert!(matches!(g.coords(&outside), Err(LieError::ClosureViolation { .. })));
    }

    fn unit(dim: usize, k: usize) -> Mat<Cq> {
        let mut v = Mat::zeros(dim, 1);
        v.set(k, 0, <Cq as Scalar>::from_i64(1));
        v
    }
}
