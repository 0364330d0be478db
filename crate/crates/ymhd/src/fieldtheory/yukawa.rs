//! The Yukawa coupling: an invariant real trilinear form pairing the two
//! chiral fermion flavor spaces through the Higgs space, together with its
//! extension to twisted spinors and two small demo model contexts.
//!
//! The form is stored through complex coefficients `Y[l][m][r]` against the
//! realified Higgs basis (coordinate index m < dim W picks Re φ_m, the index
//! m ≥ dim W picks Im φ_{m−dim W}), so that
//!
//! ```text
//! Y_{lr}(φ) = Σ_m Y[l][m][r] · c_m(φ),        c = realified coordinates,
//! 𝐘(u, φ, w) = −2 g_Y · Re Σ_{l,r} (u(:,l)† F w(:,r)) · Y_{lr}(φ)
//! ```
//!
//! with F the Dirac-form matrix on spinors. Everything is ℝ-linear in φ and
//! in the spinor slots, which is what the variational calculus needs.

use crate::clifford::gamma::GammaSet;
use crate::fieldtheory::fields::ModelContext;
use crate::liealg::algebra::LieAlgebra;
use crate::liealg::rep::{hypercharge_rep, outer_tensor, Representation};
use crate::mathkit::mat::Mat;
use crate::mathkit::poly::SpacetimePoly;
use crate::mathkit::scalar::{q, Cq, Scalar};
use num_traits::Zero;

/// Invariant trilinear Yukawa form with coupling constant g_Y.
#[derive(Clone, Debug)]
pub struct YukawaForm {
    g_y: Cq,
    coeffs: Vec<Vec<Vec<Cq>>>,
    dim_l: usize,
    dim_w: usize,
    dim_r: usize,
}

impl YukawaForm {
    /// Wrap a coefficient array `coeffs[l][m][r]` with l < dim V_L,
    /// m < 2·dim W (realified Higgs index) and r < dim V_R. The coupling
    /// constant must be real; gauge invariance is validated later, by the
    /// model context that knows the representations.
    pub fn new(g_y: Cq, coeffs: Vec<Vec<Vec<Cq>>>) -> Self {
        assert!(g_y.im.is_zero(), "Yukawa coupling constant must be real");
        let dim_l = coeffs.len();
        assert!(dim_l > 0, "empty left flavor space");
        let two_dw = coeffs[0].len();
        assert!(two_dw > 0 && two_dw % 2 == 0, "realified Higgs index must have even range");
        let dim_r = coeffs[0][0].len();
        assert!(dim_r > 0, "empty right flavor space");
        for row in &coeffs {
            assert_eq!(row.len(), two_dw, "ragged Higgs index");
            for entry in row {
                assert_eq!(entry.len(), dim_r, "ragged right flavor index");
            }
        }
        YukawaForm { g_y, coeffs, dim_l, dim_w: two_dw / 2, dim_r }
    }

    pub fn g_y(&self) -> &Cq {
        &self.g_y
    }

    pub fn dim_l(&self) -> usize {
        self.dim_l
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn dim_r(&self) -> usize {
        self.dim_r
    }

    pub fn coeff(&self, l: usize, m: usize, r: usize) -> &Cq {
        &self.coeffs[l][m][r]
    }

    /// Y_{lr} applied to one Higgs coefficient matrix (dim W × 1).
    fn y_of_coeff(&self, coeff: &Mat<Cq>) -> Mat<Cq> {
        assert!(coeff.rows() == self.dim_w && coeff.cols() == 1, "Higgs value shape");
        let mut out = Mat::zeros(self.dim_l, self.dim_r);
        for l in 0..self.dim_l {
            for r in 0..self.dim_r {
                let mut s = <Cq as Scalar>::from_i64(0);
                for m in 0..self.dim_w {
                    let z = coeff.get(m, 0);
                    s = s + self.coeffs[l][m][r].clone() * Cq::new(z.re.clone(), q(0, 1))
                        + self.coeffs[l][m + self.dim_w][r].clone()
                            * Cq::new(z.im.clone(), q(0, 1));
                }
                out.set(l, r, s);
            }
        }
        out
    }

    /// The matrix [Y_{lr}(φ)] for a Higgs value φ.
    pub fn y_of_mat(&self, phi: &Mat<Cq>) -> Mat<Cq> {
        self.y_of_coeff(phi)
    }

    /// The matrix polynomial [Y_{lr}(Υ)] for a Higgs polynomial Υ. Since the
    /// realified coordinates c_m are ℝ-linear and spacetime points are real,
    /// c_m may be applied coefficient-wise.
    pub fn y_of_poly(&self, upsilon: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
        let mut out = SpacetimePoly::zero(self.dim_l, self.dim_r);
        for (mono, coeff) in upsilon.terms() {
            out.add_term(*mono, self.y_of_coeff(coeff));
        }
        out
    }

    /// Entry-wise conjugate of [Y_{lr}(Υ)]; valid coefficient-wise because
    /// the monomials take real values.
    pub fn y_conj_of_poly(&self, upsilon: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
        self.y_of_poly(upsilon).map_coeffs(|m| m.map(|z| Scalar::conj(z)))
    }

    /// The extended coupling 𝐘(u, φ, w) for spinor-valued flavor columns:
    /// −2 g_Y · Re Σ_{l,r} (u(:,l)† F w(:,r)) · Y_{lr}(φ). Real-valued.
    pub fn coupling_value(
        &self,
        gammas: &GammaSet<Cq>,
        u: &Mat<Cq>,
        phi: &Mat<Cq>,
        w: &Mat<Cq>,
    ) -> Cq {
        assert!(u.rows() == 4 && u.cols() == self.dim_l, "left spinor-flavor shape");
        assert!(w.rows() == 4 && w.cols() == self.dim_r, "right spinor-flavor shape");
        let pairing = u.dagger().matmul(gammas.form()).matmul(w);
        let y = self.y_of_mat(phi);
        let mut total = <Cq as Scalar>::from_i64(0);
        for l in 0..self.dim_l {
            for r in 0..self.dim_r {
                total = total + pairing.get(l, r).clone() * y.get(l, r).clone();
            }
        }
        Cq::new(total.re * q(-2, 1) * &self.g_y.re, q(0, 1))
    }
}

/// Demo context on 𝔤 = su(2) ⊕ u(1): left flavors ℂ² (fundamental at
/// hypercharge −1), Higgs ℂ² (fundamental at +1), right flavor ℂ (singlet at
/// −2), and the Yukawa form ⟨τ_L, φ⟩·τ_R.
pub fn lepton_context() -> ModelContext {
    let su2 = LieAlgebra::su2();
    let vl = outer_tensor(&[
        Representation::fundamental(su2.clone()),
        hypercharge_rep(q(-1, 1)),
    ]);
    let vr = outer_tensor(&[
        Representation::trivial(su2.clone(), 1),
        hypercharge_rep(q(-2, 1)),
    ]);
    let rep_v = Representation::direct_sum(&[vl, vr], Some((2, 1)));
    let rep_w =
        outer_tensor(&[Representation::fundamental(su2), hypercharge_rep(q(1, 1))]);
    let mut coeffs =
        vec![vec![vec![<Cq as Scalar>::from_i64(0); 1]; 4]; 2];
    for l in 0..2 {
        coeffs[l][l][0] = <Cq as Scalar>::from_i64(1);
        coeffs[l][l + 2][0] = <Cq as Scalar>::i();
    }
    let yukawa = YukawaForm::new(<Cq as Scalar>::from_i64(1), coeffs);
    ModelContext::new(rep_v, rep_w, yukawa).expect("lepton demo context is invariant")
}

/// Demo context on 𝔤 = u(1): flavors ℂ(−1) and ℂ(−2), Higgs ℂ(+1), Yukawa
/// form conj(τ_L)·φ·τ_R.
pub fn abelian_context() -> ModelContext {
    let rep_v = Representation::direct_sum(
        &[hypercharge_rep(q(-1, 1)), hypercharge_rep(q(-2, 1))],
        Some((1, 1)),
    );
    let rep_w = hypercharge_rep(q(1, 1));
    let coeffs = vec![vec![
        vec![<Cq as Scalar>::from_i64(1)],
        vec![<Cq as Scalar>::i()],
    ]];
    let yukawa = YukawaForm::new(<Cq as Scalar>::from_i64(1), coeffs);
    ModelContext::new(rep_v, rep_w, yukawa).expect("abelian demo context is invariant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SampleRng;

    #[test]
    fn lepton_y_recovers_higgs_coordinates() {
        let ctx = lepton_context();
        let phi = Mat::col_vec(vec![Cq::new(q(1, 3), q(-2, 5)), Cq::new(q(4, 7), q(1, 2))]);
        let y = ctx.yukawa().y_of_mat(&phi);
        assert_eq!(y.rows(), 2);
        assert_eq!(y.cols(), 1);
        for l in 0..2 {
            assert_eq!(y.get(l, 0), phi.get(l, 0), "Y_l0(φ) = φ_l");
        }
    }

    #[test]
    fn demo_contexts_are_exactly_invariant() {
        for ctx in [lepton_context(), abelian_context()] {
            assert_eq!(ctx.yukawa_invariance_defect(6, 0x1), 0.0);
        }
    }

    #[test]
    fn wrong_hypercharge_breaks_invariance() {
        use crate::fieldtheory::fields::FieldError;
        // right flavor at −1 instead of −2 spoils −y_L + y_W + y_R = 0
        let rep_v = Representation::direct_sum(
            &[hypercharge_rep(q(-1, 1)), hypercharge_rep(q(-1, 1))],
            Some((1, 1)),
        );
        let rep_w = hypercharge_rep(q(1, 1));
        let coeffs = vec![vec![
            vec![<Cq as Scalar>::from_i64(1)],
            vec![<Cq as Scalar>::i()],
        ]];
        let yukawa = YukawaForm::new(<Cq as Scalar>::from_i64(1), coeffs);
        assert!(matches!(
            ModelContext::new(rep_v, rep_w, yukawa),
            Err(FieldError::YukawaNotInvariant { .. })
        ));
    }

    #[test]
    fn coupling_value_is_real_and_matches_hand_sum() {
        let ctx = abelian_context();
        let yk = ctx.yukawa();
        let gammas = ctx.gammas();
        // u = e₀ (left column), w = i·e₂: u†Fw = −i·i = 1, Y(1) = 1
        let mut u = Mat::zeros(4, 1);
        u.set(0, 0, <Cq as Scalar>::from_i64(1));
        let mut w = Mat::zeros(4, 1);
        w.set(2, 0, <Cq as Scalar>::i());
        let phi = Mat::col_vec(vec![<Cq as Scalar>::from_i64(1)]);
        let v = yk.coupling_value(gammas, &u, &phi, &w);
        assert_eq!(v, <Cq as Scalar>::from_i64(-2));
        // with w = e₂ the pairing is −i, whose real part vanishes
        let mut w2 = Mat::zeros(4, 1);
        w2.set(2, 0, <Cq as Scalar>::from_i64(1));
        assert_eq!(
            yk.coupling_value(gammas, &u, &phi, &w2),
            <Cq as Scalar>::from_i64(0)
        );
    }

    #[test]
    fn real_linearity_in_the_higgs_argument() {
        let ctx = lepton_context();
        let yk = ctx.yukawa();
        let mut rng = SampleRng::new(0x11);
        let p1 = rng.mat_cq(2, 1);
        let p2 = rng.mat_cq(2, 1);
        let a = Cq::new(q(5, 3), q(0, 1));
        let combo = &p1.scale(&a) + &p2;
        let lhs = yk.y_of_mat(&combo);
        let rhs = &yk.y_of_mat(&p1).scale(&a) + &yk.y_of_mat(&p2);
        assert_eq!(lhs, rhs);
        // complex scaling mixes Re and Im coordinates instead
        let ai = <Cq as Scalar>::i();
        let lhs_i = yk.y_of_mat(&p1.scale(&ai));
        let rhs_i = yk.y_of_mat(&p1).scale(&ai);
        assert_eq!(lhs_i, rhs_i, "this demo form happens to be ℂ-linear");
    }

    #[test]
    fn y_of_poly_commutes_with_evaluation() {
        let ctx = lepton_context();
        let yk = ctx.yukawa();
        let mut rng = SampleRng::new(0x12);
        let upsilon = rng.poly_cq(2, 1, 3);
        let x = [
            Cq::new(q(1, 2), q(0, 1)),
            Cq::new(q(-1, 3), q(0, 1)),
            Cq::new(q(2, 1), q(0, 1)),
            Cq::new(q(0, 1), q(0, 1)),
        ];
        let lhs = yk.y_of_poly(&upsilon).eval(&x);
        let rhs = yk.y_of_mat(&upsilon.eval(&x));
        assert_eq!(lhs, rhs);
        let conj_lhs = yk.y_conj_of_poly(&upsilon).eval(&x);
        assert_eq!(conj_lhs, rhs.map(|z| Scalar::conj(z)));
    }
}
