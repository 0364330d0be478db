//! Gamma matrices in the chiral representation, with exact entries.

use crate::mathkit::mat::Mat;
use crate::mathkit::scalar::Scalar;

/// Index position of a gamma matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variance {
    Lower,
    Upper,
}

/// Metric sign gᵅᵅ of the diagonal Minkowski metric diag(−1, +1, +1, +1).
pub fn metric_sign(alpha: usize) -> i64 {
    assert!(alpha < 4, "spacetime index out of range");
    if alpha == 0 {
        -1
    } else {
        1
    }
}

/// The four gamma matrices with both index positions, the chirality operator,
/// and the Dirac-form matrix, all over an exact or floating scalar `S`.
#[derive(Clone, Debug)]
pub struct GammaSet<S: Scalar> {
    lower: [Mat<S>; 4],
    upper: [Mat<S>; 4],
    gamma5: Mat<S>,
    form: Mat<S>,
}

/// Assemble a 4×4 matrix from 2×2 blocks [[a, b], [c, d]].
fn block2<S: Scalar>(a: &Mat<S>, b: &Mat<S>, c: &Mat<S>, d: &Mat<S>) -> Mat<S> {
    let mut m = Mat::zeros(4, 4);
    for r in 0..2 {
        for col in 0..2 {
            m.set(r, col, a.get(r, col).clone());
            m.set(r, col + 2, b.get(r, col).clone());
            m.set(r + 2, col, c.get(r, col).clone());
            m.set(r + 2, col + 2, d.get(r, col).clone());
        }
    }
    m
}

/// Pauli matrix σ_k, k ∈ {1, 2, 3}.
fn pauli<S: Scalar>(k: usize) -> Mat<S> {
    let o = S::zero;
    let l = S::one;
    let i = S::i;
    match k {
        // σ₁ = [[0, 1], [1, 0]]
        1 => Mat::from_rows(vec![vec![o(), l()], vec![l(), o()]]),
        // σ₂ = [[0, −i], [i, 0]]
        2 => Mat::from_rows(vec![vec![o(), -i()], vec![i(), o()]]),
        // σ₃ = [[1, 0], [0, −1]]
        3 => Mat::from_rows(vec![vec![l(), o()], vec![o(), -l()]]),
        _ => panic!("Pauli index must be 1, 2 or 3"),
    }
}

impl<S: Scalar> GammaSet<S> {
    /// Build the chiral-representation gamma matrices:
    ///
    /// ```text
    /// Γ₀ = i [[0,  id₂], [id₂, 0]],   Γ_k = i [[0, σ_k], [−σ_k, 0]]
    /// ```
    pub fn new() -> Self {
        let z2: Mat<S> = Mat::zeros(2, 2);
        let id2: Mat<S> = Mat::identity(2);
        let i = S::i();
        let g0 = block2(&z2, &id2, &id2, &z2).scale(&i);
        let mut lower = [g0, Mat::zeros(4, 4), Mat::zeros(4, 4), Mat::zeros(4, 4)];
        for k in 1..4 {
            let sk = pauli::<S>(k);
            lower[k] = block2(&z2, &sk, &-sk.clone(), &z2).scale(&i);
        }
        let upper = [
            lower[0].scale(&S::from_i64(metric_sign(0))),
            lower[1].clone(),
            lower[2].clone(),
            lower[3].clone(),
        ];
        // Γ₅ = −iΓ₀Γ₁Γ₂Γ₃ = diag(1, 1, −1, −1)
        let gamma5 = lower[0]
            .matmul(&lower[1])
            .matmul(&lower[2])
            .matmul(&lower[3])
            .scale(&-S::i());
        // Dirac-form matrix iΓ₁Γ₂Γ₃ = [[0, −i·id₂], [i·id₂, 0]]
        let form = lower[1].matmul(&lower[2]).matmul(&lower[3]).scale(&S::i());
        GammaSet { lower, upper, gamma5, form }
    }

    /// Γ_α (lowered) or Γᵅ = gᵅᵅΓ_α (upper).
    pub fn gamma(&self, alpha: usize, variance: Variance) -> &Mat<S> {
        assert!(alpha < 4, "spacetime index out of range");
        match variance {
            Variance::Lower => &self.lower[alpha],
            Variance::Upper => &self.upper[alpha],
        }
    }

    /// The chirality operator Γ₅ = diag(1, 1, −1, −1).
    pub fn gamma5(&self) -> &Mat<S> {
        &self.gamma5
    }

    /// The Dirac-form matrix iΓ₁Γ₂Γ₃; see the module docs.
    pub fn form(&self) -> &Mat<S> {
        &self.form
    }

    /// Γ^v := Σ_α v_α Γᵅ for a covector v (components with lowered index).
    pub fn gamma_covector(&self, v: &[S; 4]) -> Mat<S> {
        let mut m = Mat::zeros(4, 4);
        for (alpha, coeff) in v.iter().enumerate() {
            m = &m + &self.upper[alpha].scale(coeff);
        }
        m
    }

    /// XᵃΓ_a for a vector X (components with upper index).
    pub fn gamma_vector(&self, x: &[S; 4]) -> Mat<S> {
        let mut m = Mat::zeros(4, 4);
        for (a, coeff) in x.iter().enumerate() {
            m = &m + &self.lower[a].scale(coeff);
        }
        m
    }
}

impl<S: Scalar> Default for GammaSet<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// Minkowski inner product g(u, v) = −u⁰v⁰ + u¹v¹ + u²v² + u³v³.
pub fn minkowski<S: Scalar>(u: &[S; 4], v: &[S; 4]) -> S {
    let mut acc = -(u[0].clone() * v[0].clone());
    for a in 1..4 {
        acc = acc + u[a].clone() * v[a].clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::scalar::Cq;

    fn gs() -> GammaSet<Cq> {
        GammaSet::new()
    }

    #[test]
    fn anticommutation_relations_exact() {
        let g = gs();
        for a in 0..4 {
            for b in 0..4 {
                let ga = g.gamma(a, Variance::Upper);
                let gb = g.gamma(b, Variance::Upper);
                let anti = &ga.matmul(gb) + &gb.matmul(ga);
                let mut expect = Mat::zeros(4, 4);
                if a == b {
                    expect = Mat::identity(4).scale(&<Cq as Scalar>::from_i64(2 * metric_sign(a)));
                }
                assert_eq!(anti, expect, "{{Γ^{a}, Γ^{b}}}");
            }
        }
    }

    #[test]
    fn gamma5_is_chirality_diagonal() {
        let g = gs();
        let mut expect: Mat<Cq> = Mat::identity(4);
        expect.set(2, 2, <Cq as Scalar>::from_i64(-1));
        expect.set(3, 3, <Cq as Scalar>::from_i64(-1));
        assert_eq!(g.gamma5(), &expect);
        assert_eq!(g.gamma5().matmul(g.gamma5()), Mat::identity(4));
        for a in 0..4 {
            let ga = g.gamma(a, Variance::Upper);
            let anti = &g.gamma5().matmul(ga) + &ga.matmul(g.gamma5());
            assert!(anti.is_exactly_zero(), "Γ₅ anticommutes with Γ^{a}");
        }
    }

    #[test]
    fn upper_index_flips_time_component_only() {
        let g = gs();
        assert_eq!(
            g.gamma(0, Variance::Upper),
            &g.gamma(0, Variance::Lower).scale(&<Cq as Scalar>::from_i64(-1))
        );
        for k in 1..4 {
            assert_eq!(g.gamma(k, Variance::Upper), g.gamma(k, Variance::Lower));
        }
    }

    #[test]
    fn minus_i_gamma0_is_hermitian() {
        let g = gs();
        let m = g.gamma(0, Variance::Lower).scale(&-<Cq as Scalar>::i());
        assert_eq!(m.dagger(), m);
    }

    #[test]
    fn form_matrix_is_hermitian_offdiagonal() {
        let g = gs();
        let f = g.form();
        assert_eq!(f.dagger(), *f);
        // [[0, −i·id₂], [i·id₂, 0]]
        let i = <Cq as Scalar>::i();
        let mut expect: Mat<Cq> = Mat::zeros(4, 4);
        expect.set(0, 2, -i.clone());
        expect.set(1, 3, -i.clone());
        expect.set(2, 0, i.clone());
        expect.set(3, 1, i);
        assert_eq!(f, &expect);
    }

    #[test]
    fn lightlike_square_vanishes() {
        let g = gs();
        // (Γ⁰ + Γ¹)² = 0 for the lightlike covector (1, 1, 0, 0)
        let m = &g.gamma(0, Variance::Upper).clone() + &g.gamma(1, Variance::Upper).clone();
        assert!(m.matmul(&m).is_exactly_zero());
    }
}
