//! Field-theory operators on exact polynomial fields.
//!
//! Everything here acts on [`PolyForm`]/[`SpacetimePoly`] data with rational
//! complex coefficients, so the structural identities (curvature of the
//! covariant derivative, the divergence-current identity behind formal
//! self-adjointness of the Dirac operator, the Lichnerowicz–Weitzenböck
//! formula, the Noether compatibility identity for Euler–Lagrange sources)
//! can be asserted *exactly*, not just to a tolerance. Numerical tolerances
//! only enter where a computation is genuinely approximate: truncated gauge
//! exponentials and the sampled temporal-gauge ODE.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::clifford::gamma::{metric_sign, Variance};
use crate::fieldtheory::fields::{
    submatrix, FieldTriple, GaugeTransform, ModelContext, SourceTuple, SpinorField,
};
use crate::fieldtheory::forms::PolyForm;
use crate::liealg::algebra::LieAlgebra;
use crate::liealg::rep::Representation;
use crate::mathkit::mat::Mat;
use crate::mathkit::ode::ode_integrate;
use crate::mathkit::poly::SpacetimePoly;
use crate::mathkit::scalar::{cq_to_c64, q, Cq, Scalar, C64};

fn n(v: i64) -> Cq {
    <Cq as Scalar>::from_i64(v)
}

fn scalar_mat(c: Cq) -> Mat<Cq> {
    Mat::from_rows(vec![vec![c]])
}

// ---------------------------------------------------------------------------
// Polynomial helpers
// ---------------------------------------------------------------------------

/// Coefficient-wise real part. Because spacetime points are real, this is the
/// polynomial representing x ↦ Re p(x).
pub fn poly_re(p: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
    p.map_coeffs(|m| m.map(|z| Cq::new(z.re.clone(), q(0, 1))))
}

/// Coefficient-wise imaginary part, as a real polynomial.
pub fn poly_im(p: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
    p.map_coeffs(|m| m.map(|z| Cq::new(z.im.clone(), q(0, 1))))
}

/// Exact-to-floating conversion of a polynomial.
pub fn poly_to_c64(p: &SpacetimePoly<Cq>) -> SpacetimePoly<C64> {
    let mut out = SpacetimePoly::zero(p.rows(), p.cols());
    for (m, c) in p.terms() {
        out.add_term(*m, c.map(cq_to_c64));
    }
    out
}

/// Pointwise matrix product of polynomials.
pub fn poly_matmul(a: &SpacetimePoly<Cq>, b: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
    a.combine(b, a.rows(), b.cols(), |x, y| x.matmul(y))
}

/// Multiply a matrix polynomial by a scalar (1×1) polynomial.
pub fn poly_times(p: &SpacetimePoly<Cq>, f: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
    assert!(f.rows() == 1 && f.cols() == 1, "scalar factor");
    p.combine(f, p.rows(), p.cols(), |pc, fc| pc.scale(fc.get(0, 0)))
}

/// Multiply a spinor field by a scalar polynomial.
pub fn spinor_times(s: &SpinorField, f: &SpacetimePoly<Cq>) -> SpinorField {
    SpinorField::new(poly_times(s.poly(), f), s.sector(), s.dim_l(), s.dim_r())
        .expect("scalar factors preserve chirality support")
}

/// Multiply every component of a form by a scalar polynomial.
pub fn form_times(w: &PolyForm<Cq>, f: &SpacetimePoly<Cq>) -> PolyForm<Cq> {
    w.map(|p| poly_times(p, f))
}

// ---------------------------------------------------------------------------
// Covariant calculus
// ---------------------------------------------------------------------------

/// Bracket-valued wedge [α ∧ β] of 𝔤-coordinate-valued forms:
/// on two 1-forms, ([α ∧ β])_{μν} = [α_μ, β_ν] − [α_ν, β_μ].
pub fn wedge_bracket(
    alg: &LieAlgebra,
    a: &PolyForm<Cq>,
    b: &PolyForm<Cq>,
) -> PolyForm<Cq> {
    a.wedge_with(b, alg.dim(), 1, |x, y| alg.bracket(x, y))
}

/// Curvature F_A = dA + ½[A ∧ A] of a 𝔤-valued connection 1-form.
pub fn curvature(alg: &LieAlgebra, a: &PolyForm<Cq>) -> PolyForm<Cq> {
    assert_eq!(a.degree(), 1, "connection is a 1-form");
    a.d().add(&wedge_bracket(alg, a, a).scale(&Cq::new(q(1, 2), q(0, 1))))
}

/// Covariant exterior derivative on adjoint-valued forms: d_AW = dW + [A ∧ W].
pub fn covariant_d_ad(
    alg: &LieAlgebra,
    a: &PolyForm<Cq>,
    w: &PolyForm<Cq>,
) -> PolyForm<Cq> {
    w.d().add(&wedge_bracket(alg, a, w))
}

/// Covariant codifferential ⋆d_A⋆ on adjoint-valued forms of degree ≥ 1.
pub fn covariant_codiff_ad(
    alg: &LieAlgebra,
    a: &PolyForm<Cq>,
    w: &PolyForm<Cq>,
) -> PolyForm<Cq> {
    assert!(w.degree() >= 1, "codifferential needs degree ≥ 1");
    covariant_d_ad(alg, a, &w.hodge()).hodge()
}

/// Representation-valued wedge ρ_*(W) ∧ s for a 𝔤-coordinate form W and an
/// internal-vector-valued form s.
pub fn rep_wedge(rep: &Representation, w: &PolyForm<Cq>, s: &PolyForm<Cq>) -> PolyForm<Cq> {
    w.wedge_with(s, rep.dim(), s.cols(), |wc, sc| rep.action(wc).matmul(sc))
}

/// Covariant exterior derivative through a representation:
/// d_As = ds + ρ_*(A) ∧ s.
pub fn covariant_d_rep(
    rep: &Representation,
    a: &PolyForm<Cq>,
    s: &PolyForm<Cq>,
) -> PolyForm<Cq> {
    s.d().add(&rep_wedge(rep, a, s))
}

/// Covariant codifferential ⋆d_A⋆ through a representation (degree ≥ 1).
pub fn covariant_codiff_rep(
    rep: &Representation,
    a: &PolyForm<Cq>,
    s: &PolyForm<Cq>,
) -> PolyForm<Cq> {
    assert!(s.degree() >= 1, "codifferential needs degree ≥ 1");
    covariant_d_rep(rep, a, &s.hodge()).hodge()
}

/// Flavor-action wedge ϱ_*(W) ∧ s for a spinor-valued form s (values 4×dim V,
/// the internal action applied on the right as ϱᵀ).
pub fn spinor_wedge(ctx: &ModelContext, w: &PolyForm<Cq>, s: &PolyForm<Cq>) -> PolyForm<Cq> {
    let dv = ctx.dim_v();
    w.wedge_with(s, 4, dv, |wc, sc| sc.matmul(&ctx.rep_v().action(wc).transpose()))
}

/// One covariant partial derivative ∇_axis ψ = ∂_axis ψ + ψ·ϱ_*(A_axis)ᵀ;
/// keeps the chirality sector.
pub fn covariant_partial(
    ctx: &ModelContext,
    a: &PolyForm<Cq>,
    psi: &SpinorField,
    axis: usize,
) -> SpinorField {
    let twist = psi.poly().combine(&a.comp(&[axis as u8]), 4, ctx.dim_v(), |pc, ac| {
        pc.matmul(&ctx.rep_v().action(ac).transpose())
    });
    SpinorField::new(
        &psi.poly().derive(axis) + &twist,
        psi.sector(),
        psi.dim_l(),
        psi.dim_r(),
    )
    .expect("block-diagonal flavor action preserves chirality support")
}

/// The full covariant differential of a spinor field as a spinor-valued
/// 1-form: (d_Aψ)_α = ∇_αψ.
pub fn covariant_d_spinor(
    ctx: &ModelContext,
    a: &PolyForm<Cq>,
    psi: &SpinorField,
) -> PolyForm<Cq> {
    let mut out = PolyForm::zero(1, 4, ctx.dim_v());
    for axis in 0u8..4 {
        out.add_comp(&[axis], covariant_partial(ctx, a, psi, axis as usize).poly().clone());
    }
    out
}

/// Twisted Dirac operator D̸_Aψ = Σ_α iΓᵅ ∇_αψ; swaps the chirality sector.
pub fn dirac_operator(ctx: &ModelContext, a: &PolyForm<Cq>, psi: &SpinorField) -> SpinorField {
    let i = <Cq as Scalar>::i();
    let mut acc = SpacetimePoly::zero(4, ctx.dim_v());
    for alpha in 0..4 {
        let ig = ctx.gammas().gamma(alpha, Variance::Upper).scale(&i);
        let part = covariant_partial(ctx, a, psi, alpha);
        acc = &acc + &part.poly().map_coeffs(|m| ig.matmul(m));
    }
    SpinorField::new(acc, psi.sector().flipped(), psi.dim_l(), psi.dim_r())
        .expect("Clifford action maps one sector onto the other")
}

/// Bullet action of a 𝔤-coordinate-valued form (degree 0, 1 or 2) on a
/// spinor field:
///
/// * degree 0: ψ·ϱ_*(B)ᵀ;
/// * degree 1: Σ_β iΓᵝ ψ·ϱ_*(B_β)ᵀ (sector swaps);
/// * degree 2: −Σ_{μ<ν} [Γᵘ, Γᵛ] ψ·ϱ_*(B_{μν})ᵀ.
pub fn bullet_form(ctx: &ModelContext, b: &PolyForm<Cq>, psi: &SpinorField) -> SpinorField {
    let dv = ctx.dim_v();
    let i = <Cq as Scalar>::i();
    let flavor = |p: &SpacetimePoly<Cq>, coords: &SpacetimePoly<Cq>| {
        p.combine(coords, 4, dv, |pc, bc| pc.matmul(&ctx.rep_v().action(bc).transpose()))
    };
    let (poly, flips) = match b.degree() {
        0 => (flavor(psi.poly(), &b.comp(&[])), false),
        1 => {
            let mut acc = SpacetimePoly::zero(4, dv);
            for beta in 0..4 {
                let ig = ctx.gammas().gamma(beta, Variance::Upper).scale(&i);
                let term = flavor(psi.poly(), &b.comp(&[beta as u8]));
                acc = &acc + &term.map_coeffs(|m| ig.matmul(m));
            }
            (acc, true)
        }
        2 => {
            let mut acc = SpacetimePoly::zero(4, dv);
            for (idx, comp) in b.iter() {
                let (mu, nu) = (idx[0] as usize, idx[1] as usize);
                let gm = ctx.gammas().gamma(mu, Variance::Upper);
                let gn = ctx.gammas().gamma(nu, Variance::Upper);
                let commutator = &gm.matmul(gn) - &gn.matmul(gm);
                let term = flavor(psi.poly(), comp);
                acc = &acc - &term.map_coeffs(|m| commutator.matmul(m));
            }
            (acc, false)
        }
        d => panic!("bullet action undefined for degree {d}"),
    };
    SpinorField::new(
        poly,
        if flips { psi.sector().flipped() } else { psi.sector() },
        psi.dim_l(),
        psi.dim_r(),
    )
    .expect("bullet action respects the sector pattern")
}

// ---------------------------------------------------------------------------
// Interaction currents (Riesz representers of the bilinear pairings)
// ---------------------------------------------------------------------------

/// Higgs current into 𝔤: the representer of X ↦ 2Re⟨u₁, ρ_*(X)u₂⟩_W,
/// in basis coordinates (Gram-solved once per context). Antisymmetric.
pub fn interaction_ymh(
    ctx: &ModelContext,
    u1: &SpacetimePoly<Cq>,
    u2: &SpacetimePoly<Cq>,
) -> SpacetimePoly<Cq> {
    let dg = ctx.dim_g();
    let raw = u1.combine(u2, dg, 1, |c1, c2| {
        let mut r = Mat::zeros(dg, 1);
        for (idx, img) in ctx.rep_w().images().iter().enumerate() {
            let v = c1.dagger().matmul(img).matmul(c2).get(0, 0).clone();
            r.set(idx, 0, v * n(2));
        }
        r
    });
    poly_re(&raw).map_coeffs(|m| ctx.gram_inv().matmul(m))
}

/// Componentwise extension of [`interaction_ymh`] to a W-valued form in the
/// first slot (used with the 1-form d_AΦ).
pub fn interaction_ymh_form(
    ctx: &ModelContext,
    w1: &PolyForm<Cq>,
    u2: &SpacetimePoly<Cq>,
) -> PolyForm<Cq> {
    let mut out = PolyForm::zero(w1.degree(), ctx.dim_g(), 1);
    for (idx, comp) in w1.iter() {
        out.add_comp(idx, interaction_ymh(ctx, comp, u2));
    }
    out
}

/// Fermion current into 𝔤 (scalar version): the representer of
/// X ↦ Re⟨φ₁, X•φ₂⟩ = Re tr(φ₁† F φ₂ ϱ_*(X)ᵀ); the arguments must carry
/// opposite chirality sectors or the pairing vanishes identically.
pub fn interaction_ymd0(
    ctx: &ModelContext,
    f1: &SpinorField,
    f2: &SpinorField,
) -> SpacetimePoly<Cq> {
    assert_ne!(f1.sector(), f2.sector(), "scalar fermion current pairs opposite sectors");
    let dg = ctx.dim_g();
    let form = ctx.gammas().form().clone();
    let raw = f1.poly().combine(f2.poly(), dg, 1, |c1, c2| {
        let base = c1.dagger().matmul(&form).matmul(c2);
        let mut r = Mat::zeros(dg, 1);
        for (idx, img) in ctx.rep_v().images().iter().enumerate() {
            r.set(idx, 0, base.matmul(&img.transpose()).trace());
        }
        r
    });
    poly_re(&raw).map_coeffs(|m| ctx.gram_inv().matmul(m))
}

/// Fermion current into Ω¹(𝔤): the representer of the 1-form pairing
/// W ↦ Re⟨φ₁, W•φ₂⟩ against ⟨ω, θ⟩_{Ω¹} = Σ_β g^{ββ}⟨ω_β, θ_β⟩_𝔤.
/// Symmetric in its arguments, which must share a sector.
pub fn interaction_ymd1(
    ctx: &ModelContext,
    f1: &SpinorField,
    f2: &SpinorField,
) -> PolyForm<Cq> {
    assert_eq!(f1.sector(), f2.sector(), "one-form fermion current pairs equal sectors");
    let dg = ctx.dim_g();
    let i = <Cq as Scalar>::i();
    let mut out = PolyForm::zero(1, dg, 1);
    for beta in 0..4 {
        let fg = ctx.gammas().form().matmul(&ctx.gammas().gamma(beta, Variance::Upper)).scale(&i);
        let raw = f1.poly().combine(f2.poly(), dg, 1, |c1, c2| {
            let base = c1.dagger().matmul(&fg).matmul(c2);
            let mut r = Mat::zeros(dg, 1);
            for (idx, img) in ctx.rep_v().images().iter().enumerate() {
                r.set(idx, 0, base.matmul(&img.transpose()).trace());
            }
            r
        });
        let coords = poly_re(&raw)
            .map_coeffs(|m| ctx.gram_inv().matmul(m))
            .scale(&n(metric_sign(beta)));
        out.add_comp(&[beta as u8], coords);
    }
    out
}

/// Yukawa current into the left flavor block: the representer M of
/// Re⟨M, φ_L⟩ = −½𝐘(φ_L, Υ, w), in closed form M(:,l) = g_Y Σ_r Y_{lr}(Υ)·w_R(:,r).
/// Swaps the sector of `w` and lands in the V_L columns.
pub fn interaction_yh_l(
    ctx: &ModelContext,
    upsilon: &SpacetimePoly<Cq>,
    w: &SpinorField,
) -> SpinorField {
    let y = ctx.yukawa().y_of_poly(upsilon);
    let block = w
        .right_cols()
        .combine(&y, 4, ctx.dim_l(), |wc, yc| wc.matmul(&yc.transpose()))
        .scale(ctx.yukawa().g_y());
    SpinorField::from_left_cols(&block, w.sector().flipped(), ctx.dim_r())
}

/// Yukawa current into the right flavor block: the representer of
/// Re⟨·, φ_R⟩ = −½𝐘(u, Υ, φ_R), in closed form
/// M̃(:,r) = g_Y Σ_l conj(Y_{lr}(Υ))·u_L(:,l). Swaps the sector of `u`.
pub fn interaction_yh_r(
    ctx: &ModelContext,
    u: &SpinorField,
    upsilon: &SpacetimePoly<Cq>,
) -> SpinorField {
    let yc = ctx.yukawa().y_conj_of_poly(upsilon);
    let block = u
        .left_cols()
        .combine(&yc, 4, ctx.dim_r(), |uc, ycc| uc.matmul(ycc))
        .scale(ctx.yukawa().g_y());
    SpinorField::from_right_cols(&block, u.sector().flipped(), ctx.dim_l())
}

/// Yukawa current into W: the representer of φ ↦ −½𝐘(u, φ, w) against the
/// real inner product Re⟨·,·⟩_W, from the spinor pairing polynomial
/// P = u_L† F w_R.
pub fn interaction_hy(
    ctx: &ModelContext,
    u: &SpinorField,
    w: &SpinorField,
) -> SpacetimePoly<Cq> {
    assert_eq!(u.sector(), w.sector(), "the W-current pairs equal sectors");
    let yk = ctx.yukawa();
    let (dl, dw, dr) = (ctx.dim_l(), ctx.dim_w(), ctx.dim_r());
    let form = ctx.gammas().form().clone();
    let g_y = yk.g_y().re.clone();
    let pair = u.left_cols().combine(&w.right_cols(), dl, dr, |uc, wc| {
        uc.dagger().matmul(&form).matmul(wc)
    });
    pair.map_coeffs_to(dw, 1, |pc| {
        let mut out = Mat::zeros(dw, 1);
        for m in 0..dw {
            let mut s = n(0);
            let mut sp = n(0);
            for l in 0..dl {
                for r in 0..dr {
                    let p = pc.get(l, r).clone();
                    s = s + p.clone() * yk.coeff(l, m, r).clone();
                    sp = sp + p * yk.coeff(l, m + dw, r).clone();
                }
            }
            out.set(m, 0, Cq::new(&g_y * s.re, &g_y * sp.re));
        }
        out
    })
}

/// The extended Yukawa coupling as a real scalar polynomial:
/// 𝐘(u, Υ, w) = −2g_Y Re Σ_{l,r}(u_L(:,l)† F w_R(:,r))·Y_{lr}(Υ).
pub fn yukawa_coupling(
    ctx: &ModelContext,
    u: &SpinorField,
    upsilon: &SpacetimePoly<Cq>,
    w: &SpinorField,
) -> SpacetimePoly<Cq> {
    let (dl, dr) = (ctx.dim_l(), ctx.dim_r());
    let form = ctx.gammas().form().clone();
    let pair = u.left_cols().combine(&w.right_cols(), dl, dr, |uc, wc| {
        uc.dagger().matmul(&form).matmul(wc)
    });
    let y = ctx.yukawa().y_of_poly(upsilon);
    let contracted = pair.combine(&y, 1, 1, |pc, yc| {
        let mut s = n(0);
        for l in 0..dl {
            for r in 0..dr {
                s = s + pc.get(l, r).clone() * yc.get(l, r).clone();
            }
        }
        scalar_mat(s)
    });
    poly_re(&contracted).scale(&(n(-2) * ctx.yukawa().g_y().clone()))
}

// ---------------------------------------------------------------------------
// Lagrangian, Euler–Lagrange residuals, structural identities
// ---------------------------------------------------------------------------

/// The four Lagrangian summands as scalar polynomials (coefficients of dvol).
#[derive(Clone, Debug)]
pub struct LagrangianPieces {
    pub dirac: SpacetimePoly<Cq>,
    pub yukawa: SpacetimePoly<Cq>,
    pub yang_mills: SpacetimePoly<Cq>,
    pub higgs: SpacetimePoly<Cq>,
}

impl LagrangianPieces {
    pub fn total(&self) -> SpacetimePoly<Cq> {
        &(&self.dirac + &self.yukawa) + &(&self.yang_mills + &self.higgs)
    }
}

/// |Φ|² as a real scalar polynomial.
pub fn higgs_norm_sq(phi: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
    poly_re(&phi.combine(phi, 1, 1, |a, b| scalar_mat(a.dagger().matmul(b).get(0, 0).clone())))
}

/// Lagrangian density of a field triple: Re tr(ψ†F D̸_Aψ) + 𝐘(ψ, Φ, ψ)
/// − ½⟨F_A ∧ ⋆F_A⟩ + ⟨d_AΦ ∧ ⋆d_AΦ⟩ − 𝐕(|Φ|²) with 𝐕(u) = ½u² − u.
pub fn lagrangian_density(ctx: &ModelContext, t: &FieldTriple) -> LagrangianPieces {
    let alg = ctx.algebra();
    let form = ctx.gammas().form().clone();
    let dvol: &[u8] = &[0, 1, 2, 3];

    let dslash = dirac_operator(ctx, &t.a, &t.psi);
    let dirac = poly_re(&t.psi.poly().combine(dslash.poly(), 1, 1, |a, b| {
        scalar_mat(a.dagger().matmul(&form).matmul(b).trace())
    }));

    let yukawa = yukawa_coupling(ctx, &t.psi, &t.phi, &t.psi);

    let f_a = curvature(alg, &t.a);
    let gram = alg.gram().clone();
    let ym_wedge = f_a.wedge_with(&f_a.hodge(), 1, 1, |x, y| {
        scalar_mat(x.transpose().matmul(&gram).matmul(y).get(0, 0).clone())
    });
    let yang_mills = poly_re(&ym_wedge.comp(dvol)).scale(&Cq::new(q(-1, 2), q(0, 1)));

    let phi_form = PolyForm::from_scalar(t.phi.clone());
    let d_phi = covariant_d_rep(ctx.rep_w(), &t.a, &phi_form);
    let h_wedge = d_phi.wedge_with(&d_phi.hodge(), 1, 1, |x, y| {
        scalar_mat(x.dagger().matmul(y).get(0, 0).clone())
    });
    let kinetic = poly_re(&h_wedge.comp(dvol));
    let u = higgs_norm_sq(&t.phi);
    let potential = &poly_matmul(&u, &u).scale(&Cq::new(q(1, 2), q(0, 1))) - &u;
    let higgs = &kinetic - &potential;

    LagrangianPieces { dirac, yukawa, yang_mills, higgs }
}

/// Precomputed point evaluator for the Lagrangian density of one triple.
///
/// The derivative ingredients (Dirac image, curvature, covariant Higgs
/// differential) are *linear* in the fields, so they are formed once here;
/// each point evaluation then only does finite-dimensional contractions.
/// This avoids forming the quartic products symbolically and stays cheap for
/// truncated-gauge-transformed triples of large polynomial degree.
pub struct DensityEvaluator<'a> {
    ctx: &'a ModelContext,
    psi: SpacetimePoly<Cq>,
    dslash: SpacetimePoly<Cq>,
    f_a: PolyForm<Cq>,
    d_phi: PolyForm<Cq>,
    phi: SpacetimePoly<Cq>,
}

impl<'a> DensityEvaluator<'a> {
    pub fn new(ctx: &'a ModelContext, t: &FieldTriple) -> Self {
        DensityEvaluator {
            ctx,
            psi: t.psi.poly().clone(),
            dslash: dirac_operator(ctx, &t.a, &t.psi).poly().clone(),
            f_a: curvature(ctx.algebra(), &t.a),
            d_phi: covariant_d_rep(ctx.rep_w(), &t.a, &PolyForm::from_scalar(t.phi.clone())),
            phi: t.phi.clone(),
        }
    }

    /// Total density value at one (real rational) point.
    pub fn value(&self, x: &[Cq; 4]) -> Cq {
        let ctx = self.ctx;
        let alg = ctx.algebra();
        let form = ctx.gammas().form();
        let (dl, dr) = (ctx.dim_l(), ctx.dim_r());
        let half = q(1, 2);

        let psi = self.psi.eval(x);
        let dirac = psi.dagger().matmul(form).matmul(&self.dslash.eval(x)).trace();
        let dirac = Cq::new(dirac.re, q(0, 1));

        let u_l = submatrix(&psi, 0, 0, 4, dl);
        let w_r = submatrix(&psi, 0, dl, 4, dr);
        let phi_val = self.phi.eval(x);
        let yukawa = ctx.yukawa().coupling_value(ctx.gammas(), &u_l, &phi_val, &w_r);

        let mut ym = n(0);
        for a in 0u8..4 {
            for b in (a + 1)..4 {
                let comp = self.f_a.eval_comp(&[a, b], x);
                let sign = n(metric_sign(a as usize) * metric_sign(b as usize));
                ym = ym + sign * alg.pairing(&comp, &comp);
            }
        }
        let yang_mills = Cq::new(-half.clone() * ym.re, q(0, 1));

        let mut kin = n(0);
        for b in 0u8..4 {
            let comp = self.d_phi.eval_comp(&[b], x);
            kin = kin + n(metric_sign(b as usize)) * comp.dagger().matmul(&comp).get(0, 0).clone();
        }
        let nrm = phi_val.dagger().matmul(&phi_val).get(0, 0).re.clone();
        let pot = half * &nrm * &nrm - nrm;
        let higgs = Cq::new(kin.re - pot, q(0, 1));

        dirac + yukawa + yang_mills + higgs
    }
}

/// One-shot form of [`DensityEvaluator`].
pub fn lagrangian_value(ctx: &ModelContext, t: &FieldTriple, x: &[Cq; 4]) -> Cq {
    DensityEvaluator::new(ctx, t).value(x)
}

/// Euler–Lagrange residual of a field triple: the four source channels
/// (𝒦_L, 𝒦_R, 𝒥, ℱ) that vanish exactly on critical points.
pub fn el_residual(ctx: &ModelContext, t: &FieldTriple) -> SourceTuple {
    let alg = ctx.algebra();
    let dslash = dirac_operator(ctx, &t.a, &t.psi);
    let k_l = dslash.flavor_l().sub(&interaction_yh_l(ctx, &t.phi, &t.psi));
    let k_r = dslash.flavor_r().sub(&interaction_yh_r(ctx, &t.psi, &t.phi));

    let f_a = curvature(alg, &t.a);
    let phi_form = PolyForm::from_scalar(t.phi.clone());
    let d_phi = covariant_d_rep(ctx.rep_w(), &t.a, &phi_form);
    let psi_l = t.psi.flavor_l();
    let psi_r = t.psi.flavor_r();
    let j = covariant_codiff_ad(alg, &t.a, &f_a)
        .sub(&interaction_ymh_form(ctx, &d_phi, &t.phi))
        .sub(&interaction_ymd1(ctx, &psi_l, &psi_l))
        .sub(&interaction_ymd1(ctx, &psi_r, &psi_r));

    let box_phi = covariant_codiff_rep(ctx.rep_w(), &t.a, &d_phi).comp(&[]);
    let u = higgs_norm_sq(&t.phi);
    let v_prime_phi = &poly_times(&t.phi, &u) - &t.phi;
    let f = &(&box_phi - &v_prime_phi) - &interaction_hy(ctx, &t.psi, &t.psi);

    SourceTuple { k_l, k_r, j, f }
}

/// Divergence compatibility combination
/// D_A*𝒥 + representer-pairings of (ℱ, 𝒦_L, 𝒦_R) against the background;
/// identically zero when the sources are an Euler–Lagrange residual.
pub fn compatibility_residual(
    ctx: &ModelContext,
    t: &FieldTriple,
    src: &SourceTuple,
) -> SpacetimePoly<Cq> {
    let alg = ctx.algebra();
    let dstar_j = covariant_codiff_ad(alg, &t.a, &src.j).comp(&[]);
    let term_h = interaction_ymh(ctx, &src.f, &t.phi);
    let term_l = interaction_ymd0(ctx, &src.k_l, &t.psi.flavor_l()).scale(&n(2));
    let term_r = interaction_ymd0(ctx, &src.k_r, &t.psi.flavor_r()).scale(&n(2));
    &(&dstar_j + &term_h) + &(&term_l + &term_r)
}

/// Lichnerowicz–Weitzenböck residual D̸_A²ψ − □_Aψ − ½F_A•ψ with the
/// connection Laplacian □_A = ∇₀∇₀ − Σ_k ∇_k∇_k; identically zero.
pub fn lichnerowicz_residual(
    ctx: &ModelContext,
    a: &PolyForm<Cq>,
    psi: &SpinorField,
) -> SpinorField {
    let twice = dirac_operator(ctx, a, &dirac_operator(ctx, a, psi));
    let mut box_a = covariant_partial(ctx, a, &covariant_partial(ctx, a, psi, 0), 0);
    for k in 1..4 {
        box_a = box_a.sub(&covariant_partial(ctx, a, &covariant_partial(ctx, a, psi, k), k));
    }
    let f_a = curvature(ctx.algebra(), a);
    let half_bullet = bullet_form(ctx, &f_a, psi).scale(&Cq::new(q(1, 2), q(0, 1)));
    twice.sub(&box_a).sub(&half_bullet)
}

/// dvol-coefficient of the first-variation pairing
/// 2Re⟨𝒦_L, δψ_L⟩ + 2Re⟨𝒦_R, δψ_R⟩ − ⟨𝒥, δA⟩_{Ω¹𝔤} + 2Re⟨ℱ, δΦ⟩_W,
/// so that d/dt 𝒜(fields + t·δ)|₀ = ∫ (this polynomial) for variations δ
/// vanishing at the boundary.
pub fn variation_pairing(
    ctx: &ModelContext,
    src: &SourceTuple,
    d_psi: &SpinorField,
    d_a: &PolyForm<Cq>,
    d_phi: &SpacetimePoly<Cq>,
) -> SpacetimePoly<Cq> {
    let form = ctx.gammas().form().clone();
    let spinor_term = |k: &SpinorField, dp: &SpinorField| {
        poly_re(&k.poly().combine(dp.poly(), 1, 1, |a, b| {
            scalar_mat(a.dagger().matmul(&form).matmul(b).trace())
        }))
        .scale(&n(2))
    };
    let t_l = spinor_term(&src.k_l, &d_psi.flavor_l());
    let t_r = spinor_term(&src.k_r, &d_psi.flavor_r());
    let gram = ctx.algebra().gram().clone();
    let mut t_a = SpacetimePoly::zero(1, 1);
    for beta in 0u8..4 {
        let piece = src.j.comp(&[beta]).combine(&d_a.comp(&[beta]), 1, 1, |x, y| {
            scalar_mat(x.transpose().matmul(&gram).matmul(y).get(0, 0).clone())
        });
        t_a = &t_a + &poly_re(&piece).scale(&n(-metric_sign(beta as usize)));
    }
    let t_h = poly_re(&src.f.combine(d_phi, 1, 1, |x, y| {
        scalar_mat(x.dagger().matmul(y).get(0, 0).clone())
    }))
    .scale(&n(2));
    &(&t_l + &t_r) + &(&t_a + &t_h)
}

/// Infinitesimal gauge direction generated by an algebra-valued polynomial ξ:
/// (δψ, δA, δΦ) = (−ψ·ϱ_*(ξ)ᵀ, dξ + [A, ξ], −ρ_*(ξ)Φ).
pub fn gauge_direction(
    ctx: &ModelContext,
    t: &FieldTriple,
    xi: &SpacetimePoly<Cq>,
) -> (SpinorField, PolyForm<Cq>, SpacetimePoly<Cq>) {
    let dv = ctx.dim_v();
    let d_psi_poly = t
        .psi
        .poly()
        .combine(xi, 4, dv, |pc, xc| pc.matmul(&ctx.rep_v().action(xc).transpose()))
        .scale(&n(-1));
    let d_psi = SpinorField::new(d_psi_poly, t.psi.sector(), t.psi.dim_l(), t.psi.dim_r())
        .expect("flavor action keeps the sector");
    let d_a = covariant_d_ad(ctx.algebra(), &t.a, &PolyForm::from_scalar(xi.clone()));
    let d_phi = xi
        .combine(&t.phi, ctx.dim_w(), 1, |xc, pc| ctx.rep_w().action(xc).matmul(pc))
        .scale(&n(-1));
    (d_psi, d_a, d_phi)
}

// ---------------------------------------------------------------------------
// Gauge transforms
// ---------------------------------------------------------------------------

/// Truncated exponential Σ_{k≤order} M^k/k! of a square matrix polynomial.
fn exp_series(m: &SpacetimePoly<Cq>, order: usize) -> SpacetimePoly<Cq> {
    let dim = m.rows();
    assert_eq!(dim, m.cols(), "square exponent");
    let mut sum = SpacetimePoly::constant(Mat::identity(dim));
    let mut power = SpacetimePoly::constant(Mat::identity(dim));
    let mut inv_fact = BigRational::one();
    for k in 1..=order {
        power = poly_matmul(&power, m);
        inv_fact = inv_fact / BigRational::from_integer(BigInt::from(k));
        sum = &sum + &power.scale(&Cq::new(inv_fact.clone(), BigRational::zero()));
    }
    sum
}

/// Apply a pointed gauge transform 𝐔 = exp(ξ) to a field triple via exact
/// truncated power series of the transform's order:
/// ψ′ = ψ·(e^{−ϱ_*(ξ)})ᵀ, Φ′ = e^{−ρ_*(ξ)}Φ,
/// A′_α = e^{−ad_ξ}A_α + Σ_k (−ad_ξ)^k/(k+1)!(∂_αξ).
pub fn gauge_apply(ctx: &ModelContext, g: &GaugeTransform, t: &FieldTriple) -> FieldTriple {
    let order = g.order();
    let (dv, dw, dg) = (ctx.dim_v(), ctx.dim_w(), ctx.dim_g());
    let alg = ctx.algebra();

    let xi_v = g.xi().map_coeffs_to(dv, dv, |c| ctx.rep_v().action(c)).scale(&n(-1));
    let e_v = exp_series(&xi_v, order);
    let psi_poly = t.psi.poly().combine(&e_v, 4, dv, |pc, ec| pc.matmul(&ec.transpose()));
    let psi = SpinorField::new(psi_poly, t.psi.sector(), t.psi.dim_l(), t.psi.dim_r())
        .expect("block-diagonal exponential keeps the sector pattern");

    let xi_w = g.xi().map_coeffs_to(dw, dw, |c| ctx.rep_w().action(c)).scale(&n(-1));
    let e_w = exp_series(&xi_w, order);
    let phi = e_w.combine(&t.phi, dw, 1, |ec, pc| ec.matmul(pc));

    let neg_ad = |p: &SpacetimePoly<Cq>| {
        g.xi().combine(p, dg, 1, |xc, pc| alg.bracket(xc, pc)).scale(&n(-1))
    };
    let mut a = PolyForm::zero(1, dg, 1);
    for alpha in 0u8..4 {
        let mut term_a = t.a.comp(&[alpha]);
        let mut term_d = g.xi().derive(alpha as usize);
        let mut acc = &term_a + &term_d;
        let mut inv_fact_a = BigRational::one();
        let mut inv_fact_d = BigRational::one();
        for k in 1..=order {
            term_a = neg_ad(&term_a);
            term_d = neg_ad(&term_d);
            inv_fact_a = inv_fact_a / BigRational::from_integer(BigInt::from(k));
            inv_fact_d = inv_fact_d / BigRational::from_integer(BigInt::from(k + 1));
            acc = &acc + &term_a.scale(&Cq::new(inv_fact_a.clone(), BigRational::zero()));
            acc = &acc + &term_d.scale(&Cq::new(inv_fact_d.clone(), BigRational::zero()));
        }
        a.add_comp(&[alpha], acc);
    }

    FieldTriple { psi, a, phi }
}

// ---------------------------------------------------------------------------
// Temporal gauge normalization (sampled)
// ---------------------------------------------------------------------------

/// A sampled pointed gauge transform produced by temporal normalization:
/// per spatial point, the solution of ∂₀𝐔 = −V₀𝐔 with 𝐔 = id on the entry
/// slice, stored on a uniform time grid.
#[derive(Clone, Debug)]
pub struct TemporalGauge {
    t_entry: f64,
    h: f64,
    steps: usize,
    points: Vec<[f64; 3]>,
    trajectories: Vec<Vec<Mat<C64>>>,
}

/// Integrate the temporal-gauge ODE for the time component of a connection
/// 1-form along each requested spatial line.
pub fn temporal_gauge(
    alg: &LieAlgebra,
    a: &PolyForm<Cq>,
    points: &[[f64; 3]],
    t_entry: f64,
    t_exit: f64,
    steps: usize,
) -> TemporalGauge {
    assert!(t_exit > t_entry && steps >= 4, "forward time grid");
    let a0 = poly_to_c64(&a.comp(&[0]));
    let basis: Vec<Mat<C64>> = alg.basis().iter().map(|b| b.map(cq_to_c64)).collect();
    let ambient = alg.ambient();
    let mut trajectories = Vec::with_capacity(points.len());
    for p in points {
        let gen = |t: f64| {
            let x = [
                C64::new(t, 0.0),
                C64::new(p[0], 0.0),
                C64::new(p[1], 0.0),
                C64::new(p[2], 0.0),
            ];
            let coords = a0.eval(&x);
            let mut m = Mat::zeros(ambient, ambient);
            for (i, b) in basis.iter().enumerate() {
                m = &m + &b.scale(&-coords.get(i, 0));
            }
            m
        };
        let states = ode_integrate(gen, Mat::identity(ambient), t_entry, t_exit, steps);
        let traj: Vec<Mat<C64>> = states.into_iter().map(|s| s.y).collect();
        assert!(
            traj.iter().all(|u| u.max_mag().is_finite()),
            "temporal-gauge ODE blew up"
        );
        trajectories.push(traj);
    }
    TemporalGauge {
        t_entry,
        h: (t_exit - t_entry) / steps as f64,
        steps,
        points: points.to_vec(),
        trajectories,
    }
}

impl TemporalGauge {
    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn time(&self, it: usize) -> f64 {
        self.t_entry + it as f64 * self.h
    }

    /// Group sample 𝐔 at spatial point `ip`, time index `it`.
    pub fn sample(&self, ip: usize, it: usize) -> &Mat<C64> {
        &self.trajectories[ip][it]
    }

    /// Largest deviation of 𝐔†𝐔 from the identity over all samples.
    pub fn unitarity_defect(&self) -> f64 {
        let id = Mat::identity(self.trajectories[0][0].rows());
        self.trajectories
            .iter()
            .flatten()
            .map(|u| (&u.dagger().matmul(u) - &id).max_mag())
            .fold(0.0, f64::max)
    }

    /// Largest magnitude of the transformed time component
    /// (V·𝐔)₀ = 𝐔†(∂₀𝐔 + V₀𝐔), with ∂₀𝐔 from 4th-order centered
    /// differences on the stored grid (interior indices only).
    pub fn time_component_defect(&self, alg: &LieAlgebra, a: &PolyForm<Cq>) -> f64 {
        let a0 = poly_to_c64(&a.comp(&[0]));
        let basis: Vec<Mat<C64>> = alg.basis().iter().map(|b| b.map(cq_to_c64)).collect();
        let ambient = alg.ambient();
        let mut worst = 0.0f64;
        for (ip, p) in self.points.iter().enumerate() {
            for it in 2..=self.steps.saturating_sub(2) {
                let traj = &self.trajectories[ip];
                let du = &(&traj[it - 2] - &traj[it + 2])
                    + &(&traj[it + 1] - &traj[it - 1]).scale(&C64::new(8.0, 0.0));
                let du = du.scale(&C64::new(1.0 / (12.0 * self.h), 0.0));
                let x = [
                    C64::new(self.time(it), 0.0),
                    C64::new(p[0], 0.0),
                    C64::new(p[1], 0.0),
                    C64::new(p[2], 0.0),
                ];
                let coords = a0.eval(&x);
                let mut v0 = Mat::zeros(ambient, ambient);
                for (i, b) in basis.iter().enumerate() {
                    v0 = &v0 + &b.scale(coords.get(i, 0));
                }
                let residual = traj[it].dagger().matmul(&(&du + &v0.matmul(&traj[it])));
                worst = worst.max(residual.max_mag());
            }
        }
        worst
    }
}

// ---------------------------------------------------------------------------
// Exact integration over the unit 4-ball
// ---------------------------------------------------------------------------

fn big_factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// ∫_{B⁴} x^{2a} dx = π² · Π_i [(2aᵢ)!/(4^{aᵢ}aᵢ!)] / (2+Σaᵢ)! and zero for
/// odd exponents; this returns the exact rational multiple of π².
pub fn integrate_ball4(p: &SpacetimePoly<Cq>) -> Cq {
    assert!(p.rows() == 1 && p.cols() == 1, "scalar integrand");
    let mut total = n(0);
    for (m, c) in p.terms() {
        if m.iter().any(|&e| e % 2 == 1) {
            continue;
        }
        let mut w = BigRational::one();
        let mut s = 0u32;
        for &e in m.iter() {
            let a = e / 2;
            s += a;
            w = w * BigRational::new(big_factorial(2 * a), big_factorial(a) * BigInt::from(4).pow(a));
        }
        w = w / BigRational::from_integer(big_factorial(s + 2));
        total = total + c.get(0, 0).clone() * Cq::new(w, BigRational::zero());
    }
    total
}

/// The boundary-vanishing factor f(x) = 1 − |x|² of the unit 4-ball
/// (Euclidean norm), a degree-2 scalar polynomial.
pub fn ball_boundary_factor() -> SpacetimePoly<Cq> {
    let mut p = SpacetimePoly::constant(Mat::identity(1));
    for a in 0..4 {
        let mut m = [0u32; 4];
        m[a] = 2;
        p.add_term(m, Mat::identity(1).scale(&n(-1)));
    }
    p
}

/// Total action over the unit 4-ball as an exact rational multiple of π².
pub fn action_over_ball(ctx: &ModelContext, t: &FieldTriple) -> Cq {
    integrate_ball4(&lagrangian_density(ctx, t).total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::spinor::Sector;
    use crate::fieldtheory::yukawa::{abelian_context, lepton_context};
    use crate::sampling::SampleRng;

    fn unit_coords(dim: usize, k: usize) -> Mat<Cq> {
        let mut v = Mat::zeros(dim, 1);
        v.set(k, 0, n(1));
        v
    }

    /// Rational sample points inside the unit box (coordinates in [−¾, ¾]).
    fn sample_points(rng: &mut SampleRng, count: usize) -> Vec<[Cq; 4]> {
        (0..count)
            .map(|_| std::array::from_fn(|_| Cq::new(q(rng.int(3), 4), q(0, 1))))
            .collect()
    }

    fn random_plus(rng: &mut SampleRng, ctx: &ModelContext, deg: u32) -> SpinorField {
        SpinorField::from_weyl_blocks(
            Sector::Plus,
            &rng.poly_cq(2, ctx.dim_l(), deg),
            &rng.poly_cq(2, ctx.dim_r(), deg),
        )
    }

    #[test]
    fn curvature_matches_hand_examples() {
        // flat connection
        let ab = abelian_context();
        assert!(curvature(ab.algebra(), &PolyForm::zero(1, 1, 1)).is_exactly_zero());
        // abelian A = x¹·b·dx² → F = b·dx¹∧dx²
        let mut a = PolyForm::zero(1, 1, 1);
        a.add_comp(&[2], SpacetimePoly::monomial([0, 1, 0, 0], unit_coords(1, 0)));
        let f = curvature(ab.algebra(), &a);
        assert!((&f.comp(&[1, 2]) - &SpacetimePoly::constant(unit_coords(1, 0)))
            .is_exactly_zero());
        assert!(f.comp(&[0, 1]).is_exactly_zero());
        // constant non-commuting components: only the bracket survives
        let lep = lepton_context();
        let mut a2 = PolyForm::zero(1, 4, 1);
        a2.add_comp(&[0], SpacetimePoly::constant(unit_coords(4, 0)));
        a2.add_comp(&[1], SpacetimePoly::constant(unit_coords(4, 1)));
        let f2 = curvature(lep.algebra(), &a2);
        let expect = lep.algebra().bracket(&unit_coords(4, 0), &unit_coords(4, 1));
        assert!(
            (&f2.comp(&[0, 1]) - &SpacetimePoly::constant(expect)).is_exactly_zero()
        );
    }

    #[test]
    fn covariant_square_is_curvature_action() {
        let ctx = lepton_context();
        let mut rng = SampleRng::new(0x21);
        let t = FieldTriple::random(&ctx, &mut rng, 2);
        let phi_form = PolyForm::from_scalar(t.phi.clone());
        let twice = covariant_d_rep(
            ctx.rep_w(),
            &t.a,
            &covariant_d_rep(ctx.rep_w(), &t.a, &phi_form),
        );
        let f_a = curvature(ctx.algebra(), &t.a);
        let expect = rep_wedge(ctx.rep_w(), &f_a, &phi_form);
        assert!(twice.sub(&expect).is_exactly_zero());
        // and with A = 0 the covariant derivative is plain d
        let zero_a = PolyForm::zero(1, ctx.dim_g(), 1);
        assert!(covariant_d_rep(ctx.rep_w(), &zero_a, &phi_form)
            .sub(&phi_form.d())
            .is_exactly_zero());
    }

    #[test]
    fn dirac_operator_basics() {
        let ctx = abelian_context();
        let zero_a = PolyForm::zero(1, 1, 1);
        // constant spinor, flat connection
        let mut left = Mat::zeros(2, 1);
        left.set(0, 0, n(1));
        let e = SpinorField::from_weyl_blocks(
            Sector::Plus,
            &SpacetimePoly::constant(left.clone()),
            &SpacetimePoly::zero(2, 1),
        );
        assert!(dirac_operator(&ctx, &zero_a, &e).is_exactly_zero());
        // ψ = x⁰·e → iΓ⁰e
        let psi = spinor_times(&e, &SpacetimePoly::monomial([1, 0, 0, 0], Mat::identity(1)));
        let got = dirac_operator(&ctx, &zero_a, &psi);
        let ig0 = ctx.gammas().gamma(0, Variance::Upper).scale(&<Cq as Scalar>::i());
        let expect = e.poly().map_coeffs(|m| ig0.matmul(m));
        assert!((got.poly() - &expect).is_exactly_zero());
        assert_eq!(got.sector(), Sector::Minus);
    }

    /// A rational special-unitary gauge element for the lepton context:
    /// the plane rotation by the 3-4-5 triangle on the fundamental factor.
    fn rational_gauge(ctx: &ModelContext) -> (Mat<Cq>, Mat<Cq>, Mat<Cq>) {
        let u = Mat::from_rows(vec![
            vec![Cq::new(q(3, 5), q(0, 1)), Cq::new(q(4, 5), q(0, 1))],
            vec![Cq::new(q(-4, 5), q(0, 1)), Cq::new(q(3, 5), q(0, 1))],
        ]);
        // ϱ(U⁻¹) on V = V_L ⊕ V_R: block diag(U†, 1); ρ(U⁻¹) on W: U†.
        let mut bv = Mat::identity(ctx.dim_v());
        for r in 0..2 {
            for c in 0..2 {
                bv.set(r, c, u.dagger().get(r, c).clone());
            }
        }
        // coordinate matrix of Ad(U⁻¹): columns = coords(U†·bᵢ·U)
        let alg = ctx.algebra();
        let mut emb = Mat::identity(alg.ambient());
        for r in 0..2 {
            for c in 0..2 {
                emb.set(r, c, u.get(r, c).clone());
            }
        }
        let mut ad = Mat::zeros(alg.dim(), alg.dim());
        for i in 0..alg.dim() {
            let conj = emb.dagger().matmul(&alg.basis()[i]).matmul(&emb);
            let coords = alg.coords(&conj).expect("Ad preserves the algebra");
            for r in 0..alg.dim() {
                ad.set(r, i, coords.get(r, 0).clone());
            }
        }
        (bv, u.dagger(), ad)
    }

    #[test]
    fn dirac_and_el_residual_transform_covariantly_under_rational_gauge() {
        let ctx = lepton_context();
        let mut rng = SampleRng::new(0x22);
        let t = FieldTriple::random(&ctx, &mut rng, 2);
        let (bv, uw_inv, ad) = rational_gauge(&ctx);

        let psi_u = t.psi.apply_flavor_t(&bv);
        let a_u = t.a.map(|p| p.map_coeffs(|m| ad.matmul(m)));
        let phi_u = t.phi.map_coeffs(|m| uw_inv.matmul(m));
        let t_u = FieldTriple::new(&ctx, psi_u.clone(), a_u.clone(), phi_u.clone())
            .expect("transformed triple is well-formed");

        // Dirac covariance, exactly
        let lhs = dirac_operator(&ctx, &a_u, &psi_u);
        let rhs = dirac_operator(&ctx, &t.a, &t.psi).apply_flavor_t(&bv);
        assert!((lhs.poly() - rhs.poly()).is_exactly_zero());

        // Euler–Lagrange covariance, exactly, channel by channel
        let r = el_residual(&ctx, &t);
        let r_u = el_residual(&ctx, &t_u);
        assert!((r_u.k_l.poly() - r.k_l.apply_flavor_t(&bv).poly()).is_exactly_zero());
        assert!((r_u.k_r.poly() - r.k_r.apply_flavor_t(&bv).poly()).is_exactly_zero());
        assert!(r_u.j.sub(&r.j.map(|p| p.map_coeffs(|m| ad.matmul(m)))).is_exactly_zero());
        assert!((&r_u.f - &r.f.map_coeffs(|m| uw_inv.matmul(m))).is_exactly_zero());
    }

    #[test]
    fn ymh_current_example_and_antisymmetry() {
        let ctx = abelian_context();
        // ρ_*(b) = 3i on W = ℂ: representer of 2Re⟨1, 3i·i⟩ = −6 at the unit basis
        let one = SpacetimePoly::constant(scalar_mat(n(1)));
        let iconst = SpacetimePoly::constant(scalar_mat(<Cq as Scalar>::i()));
        let got = interaction_ymh(&ctx, &one, &iconst);
        assert!(
            (&got - &SpacetimePoly::constant(unit_coords(1, 0).scale(&n(-6))))
                .is_exactly_zero()
        );
        // antisymmetry on random arguments in the lepton context
        let lep = lepton_context();
        let mut rng = SampleRng::new(0x23);
        let u1 = rng.poly_cq(2, 1, 2);
        let u2 = rng.poly_cq(2, 1, 2);
        let anti = &interaction_ymh(&lep, &u1, &u2) + &interaction_ymh(&lep, &u2, &u1);
        assert!(anti.is_exactly_zero());
        assert!(interaction_ymh(&lep, &u1, &u1).is_exactly_zero());
    }

    #[test]
    fn interaction_currents_satisfy_their_defining_pairings() {
        let ctx = lepton_context();
        let alg = ctx.algebra();
        let mut rng = SampleRng::new(0x24);
        let x0: [Cq; 4] = std::array::from_fn(|_| n(0));

        // YMH against every basis direction: ⟨J(u₁,u₂), bᵢ⟩ = 2Re⟨u₁, ρ(bᵢ)u₂⟩
        let u1 = SpacetimePoly::constant(rng.mat_cq(2, 1));
        let u2 = SpacetimePoly::constant(rng.mat_cq(2, 1));
        let j = interaction_ymh(&ctx, &u1, &u2).eval(&x0);
        for i in 0..ctx.dim_g() {
            let lhs = alg.pairing(&j, &unit_coords(ctx.dim_g(), i));
            let rhs = u1
                .eval(&x0)
                .dagger()
                .matmul(&ctx.rep_w().images()[i])
                .matmul(&u2.eval(&x0))
                .get(0, 0)
                .clone();
            assert_eq!(lhs, Cq::new(rhs.re * q(2, 1), q(0, 1)));
        }

        // YMD-0: ⟨J⁰(φ₁,φ₂), bᵢ⟩ = Re tr(φ₁†Fφ₂ϱ(bᵢ)ᵀ), opposite sectors
        let p_plus = random_plus(&mut rng, &ctx, 0);
        let p_minus =
            dirac_operator(&ctx, &PolyForm::zero(1, ctx.dim_g(), 1), &random_plus(&mut rng, &ctx, 1));
        let j0 = interaction_ymd0(&ctx, &p_minus, &p_plus).eval(&x0);
        for i in 0..ctx.dim_g() {
            let lhs = alg.pairing(&j0, &unit_coords(ctx.dim_g(), i));
            let rhs = p_minus
                .poly()
                .eval(&x0)
                .dagger()
                .matmul(ctx.gammas().form())
                .matmul(&p_plus.poly().eval(&x0))
                .matmul(&ctx.rep_v().images()[i].transpose())
                .trace();
            assert_eq!(lhs, Cq::new(rhs.re, q(0, 1)));
        }

        // YMD-1: Σ_β g^{ββ}⟨J_β, bᵢ⟩ δ_{ββ'} = Re⟨φ₁, (bᵢ dx^{β'})•φ₂⟩; symmetric
        let q1 = random_plus(&mut rng, &ctx, 0);
        let q2 = random_plus(&mut rng, &ctx, 0);
        let j1 = interaction_ymd1(&ctx, &q1, &q2);
        for beta in 0u8..4 {
            for i in 0..ctx.dim_g() {
                let lhs = Cq::new(
                    alg.pairing(&j1.eval_comp(&[beta], &x0), &unit_coords(ctx.dim_g(), i)).re
                        * q(metric_sign(beta as usize), 1),
                    q(0, 1),
                );
                let ig = ctx
                    .gammas()
                    .gamma(beta as usize, Variance::Upper)
                    .scale(&<Cq as Scalar>::i());
                let rhs = q1
                    .poly()
                    .eval(&x0)
                    .dagger()
                    .matmul(ctx.gammas().form())
                    .matmul(&ig)
                    .matmul(&q2.poly().eval(&x0))
                    .matmul(&ctx.rep_v().images()[i].transpose())
                    .trace();
                assert_eq!(lhs, Cq::new(rhs.re, q(0, 1)));
            }
        }
        let j1_swapped = interaction_ymd1(&ctx, &q2, &q1);
        assert!(j1.sub(&j1_swapped).is_exactly_zero());

        // YH-L: Re⟨M, φ_L⟩_F = −½𝐘(φ_L, Υ, w), and the complex refinement
        // tr(M†Fφ) = −½[𝐘(φ,Υ,w) − i𝐘(iφ,Υ,w)]
        let upsilon = SpacetimePoly::constant(rng.mat_cq(2, 1));
        let w = random_plus(&mut rng, &ctx, 0);
        let m = interaction_yh_l(&ctx, &upsilon, &w);
        let phi_l = random_plus(&mut rng, &ctx, 0).flavor_l();
        let lhs = m
            .poly()
            .eval(&x0)
            .dagger()
            .matmul(ctx.gammas().form())
            .matmul(&phi_l.poly().eval(&x0))
            .trace();
        let couple = |u: &SpinorField| {
            yukawa_coupling(&ctx, u, &upsilon, &w).eval(&x0).get(0, 0).clone()
        };
        let y_phi = couple(&phi_l);
        let y_iphi = couple(&phi_l.scale(&<Cq as Scalar>::i()));
        let minus_half = Cq::new(q(-1, 2), q(0, 1));
        assert_eq!(
            lhs,
            minus_half * (y_phi - <Cq as Scalar>::i() * y_iphi)
        );

        // YH-R defining pairing (real form)
        let u_field = random_plus(&mut rng, &ctx, 0);
        let m_r = interaction_yh_r(&ctx, &u_field, &upsilon);
        let phi_r = random_plus(&mut rng, &ctx, 0).flavor_r();
        let lhs_r = m_r
            .poly()
            .eval(&x0)
            .dagger()
            .matmul(ctx.gammas().form())
            .matmul(&phi_r.poly().eval(&x0))
            .trace();
        let y_r = yukawa_coupling(&ctx, &u_field, &upsilon, &phi_r)
            .eval(&x0)
            .get(0, 0)
            .clone();
        assert_eq!(Cq::new(lhs_r.re, q(0, 1)), Cq::new(q(-1, 2) * y_r.re, q(0, 1)));

        // HY: Re⟨J_HY(u,w), φ⟩_W = −½𝐘(u, φ, w) for a constant Higgs probe
        let j_hy = interaction_hy(&ctx, &u_field, &w).eval(&x0);
        let probe = rng.mat_cq(2, 1);
        let lhs_h = j_hy.dagger().matmul(&probe).get(0, 0).clone();
        let y_h = yukawa_coupling(&ctx, &u_field, &SpacetimePoly::constant(probe), &w)
            .eval(&x0)
            .get(0, 0)
            .clone();
        assert_eq!(Cq::new(lhs_h.re, q(0, 1)), Cq::new(q(-1, 2) * y_h.re, q(0, 1)));
    }

    #[test]
    fn yh_current_matches_a_gram_solve_oracle() {
        // Solve the defining system Re⟨Σ cᵢ mᵢ, pⱼ⟩ = −½𝐘(pⱼ, Υ, w) over a
        // real basis {mᵢ} of the opposite-sector left block and compare with
        // the closed-form representer.
        let ctx = lepton_context();
        let mut rng = SampleRng::new(0x25);
        let upsilon = SpacetimePoly::constant(rng.mat_cq(2, 1));
        let w = random_plus(&mut rng, &ctx, 0);
        let x0: [Cq; 4] = std::array::from_fn(|_| n(0));
        let dl = ctx.dim_l();

        // real bases: mᵢ in the − sector L-block, pⱼ in the + sector L-block
        let mut m_basis = Vec::new();
        let mut p_basis = Vec::new();
        for row in 0..2usize {
            for col in 0..dl {
                for phase in 0..2 {
                    let v = if phase == 0 { n(1) } else { <Cq as Scalar>::i() };
                    let mut bm = Mat::zeros(4, ctx.dim_v());
                    bm.set(row + 2, col, v.clone());
                    m_basis.push(bm);
                    let mut bp = Mat::zeros(4, ctx.dim_v());
                    bp.set(row, col, v);
                    p_basis.push(bp);
                }
            }
        }
        let dim = m_basis.len();
        let mut gram = Mat::zeros(dim, dim);
        let mut rhs = Mat::zeros(dim, 1);
        let form = ctx.gammas().form();
        for (jj, pj) in p_basis.iter().enumerate() {
            for (ii, mi) in m_basis.iter().enumerate() {
                let pairing = mi.dagger().matmul(form).matmul(pj).trace();
                gram.set(jj, ii, Cq::new(pairing.re, q(0, 1)));
            }
            let pj_field =
                SpinorField::new(SpacetimePoly::constant(pj.clone()), Sector::Plus, dl, ctx.dim_r())
                    .unwrap();
            let y = yukawa_coupling(&ctx, &pj_field, &upsilon, &w).eval(&x0).get(0, 0).clone();
            rhs.set(jj, 0, Cq::new(q(-1, 2) * y.re, q(0, 1)));
        }
        let coeffs = gram.inverse().expect("spinor pairing is non-degenerate").matmul(&rhs);
        let mut oracle = Mat::zeros(4, ctx.dim_v());
        for (ii, mi) in m_basis.iter().enumerate() {
            oracle = &oracle + &mi.scale(coeffs.get(ii, 0));
        }
        let closed = interaction_yh_l(&ctx, &upsilon, &w).poly().eval(&x0);
        assert!((&oracle - &closed).is_exactly_zero());
    }

    #[test]
    fn lagrangian_hand_values_and_pointwise_consistency() {
        let ctx = abelian_context();
        // zero triple → all pieces vanish
        let zero = FieldTriple::zero(&ctx);
        let l0 = lagrangian_density(&ctx, &zero);
        assert!(l0.total().is_exactly_zero());
        // Φ constant of unit norm, A = 0, ψ = 0: only −𝐕(1) = ½ survives
        let phi = SpacetimePoly::constant(scalar_mat(n(1)));
        let t1 = FieldTriple { phi, ..FieldTriple::zero(&ctx) };
        let l1 = lagrangian_density(&ctx, &t1);
        assert!((&l1.higgs - &SpacetimePoly::constant(scalar_mat(Cq::new(q(1, 2), q(0, 1)))))
            .is_exactly_zero());
        // F = b·dx¹∧dx² with ⟨b,b⟩ = 1 → ℒ_YM = −½
        let mut a = PolyForm::zero(1, 1, 1);
        a.add_comp(&[2], SpacetimePoly::monomial([0, 1, 0, 0], unit_coords(1, 0)));
        let t2 = FieldTriple { a, ..FieldTriple::zero(&ctx) };
        let l2 = lagrangian_density(&ctx, &t2);
        assert!((&l2.yang_mills
            - &SpacetimePoly::constant(scalar_mat(Cq::new(q(-1, 2), q(0, 1)))))
            .is_exactly_zero());

        // pointwise evaluation agrees with the symbolic density
        let lep = lepton_context();
        let mut rng = SampleRng::new(0x26);
        let t = FieldTriple::random(&lep, &mut rng, 2);
        let total = lagrangian_density(&lep, &t).total();
        for x in sample_points(&mut rng, 6) {
            let direct = lagrangian_value(&lep, &t, &x);
            assert_eq!(total.eval(&x).get(0, 0).clone(), direct);
        }
    }

    #[test]
    fn el_residual_trivial_cases() {
        let ctx = lepton_context();
        let vacuum = el_residual(&ctx, &FieldTriple::zero(&ctx));
        assert!(vacuum.is_exactly_zero());
        // constant connection, everything else zero: F = const-bracket only…
        let ab = abelian_context();
        let mut a = PolyForm::zero(1, 1, 1);
        a.add_comp(&[1], SpacetimePoly::constant(unit_coords(1, 0)));
        let t = FieldTriple { a, ..FieldTriple::zero(&ab) };
        assert!(el_residual(&ab, &t).is_exactly_zero());
    }

    #[test]
    fn compatibility_identity_holds_exactly_and_detects_violations() {
        let ctx = lepton_context();
        let mut rng = SampleRng::new(0x27);
        for _ in 0..2 {
            let t = FieldTriple::random(&ctx, &mut rng, 2);
            let src = el_residual(&ctx, &t);
            let res = compatibility_residual(&ctx, &t, &src);
            assert!(res.is_exactly_zero(), "divergence identity must hold exactly");
            // perturbing 𝒥 by a constant basis direction breaks the identity
            let mut bad = src.clone();
            bad.j.add_comp(&[1], SpacetimePoly::constant(unit_coords(ctx.dim_g(), 0)));
            let broken = compatibility_residual(&ctx, &t, &bad);
            assert!(
                !broken.is_exactly_zero() && broken.max_coeff_mag() > 1e-3,
                "constant current perturbation must be detected"
            );
        }
    }

    #[test]
    fn lichnerowicz_identity_holds_exactly_and_needs_the_curvature_term() {
        let ctx = lepton_context();
        let mut rng = SampleRng::new(0x28);
        let deg = 3;
        let psi = random_plus(&mut rng, &ctx, deg);
        // flat case
        let zero_a = PolyForm::zero(1, ctx.dim_g(), 1);
        assert!(lichnerowicz_residual(&ctx, &zero_a, &psi).is_exactly_zero());
        // curved case, still exact
        let t = FieldTriple::random(&ctx, &mut rng, deg);
        assert!(lichnerowicz_residual(&ctx, &t.a, &psi).is_exactly_zero());
        // dropping the curvature term leaves a visible defect
        let twice = dirac_operator(&ctx, &t.a, &dirac_operator(&ctx, &t.a, &psi));
        let mut box_a = covariant_partial(&ctx, &t.a, &covariant_partial(&ctx, &t.a, &psi, 0), 0);
        for k in 1..4 {
            box_a = box_a.sub(&covariant_partial(&ctx, &t.a, &covariant_partial(&ctx, &t.a, &psi, k), k));
        }
        let without = twice.sub(&box_a);
        assert!(without.max_coeff_mag() > 1e-3, "curvature term is necessary");
    }

    #[test]
    fn dirac_divergence_current_identity_is_exact() {
        let ctx = lepton_context();
        let mut rng = SampleRng::new(0x29);
        let t = FieldTriple::random(&ctx, &mut rng, 2);
        let phi = random_plus(&mut rng, &ctx, 3);
        let psi = random_plus(&mut rng, &ctx, 3);
        let form = ctx.gammas().form().clone();
        let pair = |a: &SpinorField, b: &SpinorField| {
            poly_re(&a.poly().combine(b.poly(), 1, 1, |x, y| {
                scalar_mat(x.dagger().matmul(&form).matmul(y).trace())
            }))
        };
        let lhs = &pair(&dirac_operator(&ctx, &t.a, &phi), &psi)
            - &pair(&phi, &dirac_operator(&ctx, &t.a, &psi));
        // current j^α = Re⟨φ, iΓᵅψ⟩: the defect is −∂_α j^α
        let mut div = SpacetimePoly::zero(1, 1);
        for alpha in 0..4 {
            let ig = ctx.gammas().gamma(alpha, Variance::Upper).scale(&<Cq as Scalar>::i());
            let j_alpha = poly_re(&phi.poly().combine(psi.poly(), 1, 1, |x, y| {
                scalar_mat(x.dagger().matmul(&form).matmul(&ig.matmul(y)).trace())
            }));
            div = &div + &j_alpha.derive(alpha);
        }
        assert!((&lhs + &div).is_exactly_zero());
    }

    #[test]
    fn gauge_apply_identity_composition_and_norm_invariance() {
        let ctx = abelian_context();
        let mut rng = SampleRng::new(0x2A);
        let t = FieldTriple::random(&ctx, &mut rng, 1);
        // trivial exponent → identity
        let id = GaugeTransform::new(SpacetimePoly::zero(1, 1), 8).unwrap();
        let same = gauge_apply(&ctx, &id, &t);
        assert!((same.psi.poly() - t.psi.poly()).is_exactly_zero());
        assert!(same.a.sub(&t.a).is_exactly_zero());
        assert!((&same.phi - &t.phi).is_exactly_zero());

        // pointed linear exponent ξ = (1+x⁰)/32 · b
        let mut xi = SpacetimePoly::constant(unit_coords(1, 0).scale(&Cq::new(q(1, 32), q(0, 1))));
        xi.add_term([1, 0, 0, 0], unit_coords(1, 0).scale(&Cq::new(q(1, 32), q(0, 1))));
        let g1 = GaugeTransform::new(xi.clone(), 14).unwrap();
        let g2 = GaugeTransform::new(xi.scale(&Cq::new(q(1, 2), q(0, 1))), 14).unwrap();
        let g12 = GaugeTransform::new(xi.scale(&Cq::new(q(3, 2), q(0, 1))), 14).unwrap();
        let seq = gauge_apply(&ctx, &g2, &gauge_apply(&ctx, &g1, &t));
        let joint = gauge_apply(&ctx, &g12, &t);
        // abelian connections transform exactly: A′ = A + dξ at any order
        assert!(seq.a.sub(&joint.a).is_exactly_zero());
        let d_total = PolyForm::from_scalar(xi.scale(&Cq::new(q(3, 2), q(0, 1)))).d();
        assert!(joint.a.sub(&t.a.add(&d_total)).is_exactly_zero());
        // matter fields agree to truncation error; |Φ| is pointwise invariant
        for x in sample_points(&mut rng, 5) {
            let d_psi = (&seq.psi.poly().eval(&x) - &joint.psi.poly().eval(&x)).max_mag();
            let d_phi = (&seq.phi.eval(&x) - &joint.phi.eval(&x)).max_mag();
            assert!(d_psi < 1e-12 && d_phi < 1e-12, "composition defect {d_psi}, {d_phi}");
            let n0 = t.phi.eval(&x).dagger().matmul(&t.phi.eval(&x)).get(0, 0).mag();
            let n1 = joint.phi.eval(&x).dagger().matmul(&joint.phi.eval(&x)).get(0, 0).mag();
            assert!((n0 - n1).abs() < 1e-12, "|Φ| must be invariant");
        }
    }

    #[test]
    fn el_residual_is_gauge_covariant_for_polynomial_exponents() {
        let ctx = lepton_context();
        let mut rng = SampleRng::new(0x2B);
        let t = FieldTriple::random(&ctx, &mut rng, 1);
        // pointed exponent ξ = (1+x⁰)/64·(b₀ + b₃), order-8 truncation
        let dir = &unit_coords(4, 0) + &unit_coords(4, 3);
        let mut xi = SpacetimePoly::constant(dir.scale(&Cq::new(q(1, 64), q(0, 1))));
        xi.add_term([1, 0, 0, 0], dir.scale(&Cq::new(q(1, 64), q(0, 1))));
        let g = GaugeTransform::new(xi.clone(), 8).unwrap();
        let t_u = gauge_apply(&ctx, &g, &t);

        let r = el_residual(&ctx, &t);
        let r_u = el_residual(&ctx, &t_u);

        // transform the residual of t with the same truncated exponentials
        let e_v = exp_series(
            &xi.map_coeffs_to(ctx.dim_v(), ctx.dim_v(), |c| ctx.rep_v().action(c)).scale(&n(-1)),
            8,
        );
        let e_w = exp_series(
            &xi.map_coeffs_to(ctx.dim_w(), ctx.dim_w(), |c| ctx.rep_w().action(c)).scale(&n(-1)),
            8,
        );
        for x in sample_points(&mut rng, 8) {
            let ev = e_v.eval(&x);
            let ew = e_w.eval(&x);
            let scale = r.k_l.poly().eval(&x).max_mag().max(1.0);
            let kl = (&r_u.k_l.poly().eval(&x) - &r.k_l.poly().eval(&x).matmul(&ev.transpose()))
                .max_mag();
            let kr = (&r_u.k_r.poly().eval(&x) - &r.k_r.poly().eval(&x).matmul(&ev.transpose()))
                .max_mag();
            let ff = (&r_u.f.eval(&x) - &ew.matmul(&r.f.eval(&x))).max_mag();
            assert!(
                kl / scale < 1e-8 && kr / scale < 1e-8 && ff < 1e-8,
                "spinor/Higgs channels must transform covariantly ({kl}, {kr}, {ff})"
            );
            // YM channel: Ad(U⁻¹) in coordinates from the ambient conjugation
            let u_emb = {
                let xi_amb = ctx.algebra().element(&xi.eval(&x));
                crate::mathkit::ode::mat_exp(&xi_amb.map(cq_to_c64))
            };
            for beta in 0u8..4 {
                let j_val = r.j.eval_comp(&[beta], &x);
                let amb = ctx.algebra().element(&j_val).map(cq_to_c64);
                let expect = u_emb.dagger().matmul(&amb).matmul(&u_emb);
                let got = ctx
                    .algebra()
                    .element(&r_u.j.eval_comp(&[beta], &x))
                    .map(cq_to_c64);
                assert!(
                    (&got - &expect).max_mag() < 1e-8,
                    "YM channel must transform by Ad(U⁻¹)"
                );
            }
        }
    }

    #[test]
    fn ball_integrals_match_known_values() {
        // volume π²/2, second moment π²/12 per axis, odd moments vanish
        let one = SpacetimePoly::constant(Mat::identity(1));
        assert_eq!(integrate_ball4(&one), Cq::new(q(1, 2), q(0, 1)));
        for a in 0..4 {
            let mut sq = [0u32; 4];
            sq[a] = 2;
            assert_eq!(
                integrate_ball4(&SpacetimePoly::monomial(sq, Mat::identity(1))),
                Cq::new(q(1, 12), q(0, 1))
            );
            let mut odd = [0u32; 4];
            odd[a] = 3;
            assert!(integrate_ball4(&SpacetimePoly::monomial(odd, Mat::identity(1)))
                .is_exactly_zero());
        }
        // mixed quartic ∫x₀²x₁² = π²·(1/2)²/4! = π²/96
        assert_eq!(
            integrate_ball4(&SpacetimePoly::monomial([2, 2, 0, 0], Mat::identity(1))),
            Cq::new(q(1, 96), q(0, 1))
        );
    }

    #[test]
    fn action_derivative_matches_residual_pairing_exactly() {
        let ctx = abelian_context();
        let mut rng = SampleRng::new(0x2C);
        let t = FieldTriple::random(&ctx, &mut rng, 1);
        let core = FieldTriple::random(&ctx, &mut rng, 1);
        let f = ball_boundary_factor();
        let d_psi = spinor_times(&core.psi, &f);
        let d_a = form_times(&core.a, &f);
        let d_phi = poly_times(&core.phi, &f);

        let perturbed = |k: i64| FieldTriple {
            psi: t.psi.add(&d_psi.scale(&n(k))),
            a: t.a.add(&d_a.scale(&n(k))),
            phi: &t.phi + &d_phi.scale(&n(k)),
        };
        let act = |k: i64| action_over_ball(&ctx, &perturbed(k));
        // the action is quartic in t, so the 5-point stencil derivative is exact
        let twelfth = Cq::new(q(1, 12), q(0, 1));
        let derivative =
            (n(8) * (act(1) - act(-1)) - (act(2) - act(-2))) * twelfth;

        let src = el_residual(&ctx, &t);
        let pairing = variation_pairing(&ctx, &src, &d_psi, &d_a, &d_phi);
        assert_eq!(derivative, integrate_ball4(&pairing));
    }

    #[test]
    fn gauge_variations_pair_to_zero_and_preserve_the_density() {
        let ctx = lepton_context();
        let mut rng = SampleRng::new(0x2D);
        let t = FieldTriple::random(&ctx, &mut rng, 2);

        // exact: the first-variation pairing along a boundary-vanishing gauge
        // direction integrates to zero
        let dir = &unit_coords(4, 1) + &unit_coords(4, 3).scale(&Cq::new(q(1, 2), q(0, 1)));
        let xi = ball_boundary_factor().combine(&SpacetimePoly::constant(dir.clone()), 4, 1, |fc, dc| {
            dc.scale(fc.get(0, 0))
        });
        let src = el_residual(&ctx, &t);
        let (d_psi, d_a, d_phi) = gauge_direction(&ctx, &t, &xi);
        let pairing = variation_pairing(&ctx, &src, &d_psi, &d_a, &d_phi);
        assert!(integrate_ball4(&pairing).is_exactly_zero());

        // numeric: the Lagrangian density is pointwise invariant along the
        // truncated-exponential gauge orbit
        let mut xi_pt = SpacetimePoly::constant(dir.scale(&Cq::new(q(1, 16), q(0, 1))));
        xi_pt.add_term([1, 0, 0, 0], dir.scale(&Cq::new(q(1, 16), q(0, 1))));
        let g = GaugeTransform::new(xi_pt, 8).unwrap();
        let t_u = gauge_apply(&ctx, &g, &t);
        let ev0 = DensityEvaluator::new(&ctx, &t);
        let ev1 = DensityEvaluator::new(&ctx, &t_u);
        for x in sample_points(&mut rng, 8) {
            let l0 = cq_to_c64(&ev0.value(&x));
            let l1 = cq_to_c64(&ev1.value(&x));
            let scale = l0.norm().max(1.0);
            assert!(
                (l1 - l0).norm() / scale < 1e-8,
                "density must be gauge invariant pointwise"
            );
        }
    }

    #[test]
    fn temporal_gauge_normalizes_the_time_component() {
        let lep = lepton_context();
        let alg = lep.algebra();
        // V₀ = 0 → identity everywhere
        let flat = PolyForm::zero(1, alg.dim(), 1);
        let tg0 = temporal_gauge(alg, &flat, &[[0.0, 0.0, 0.0]], -1.0, 1.0, 16);
        let id = Mat::<C64>::identity(alg.ambient());
        for it in 0..=16 {
            assert!((&tg0.sample(0, it).clone() - &id).max_mag() < 1e-14);
        }

        // abelian constant V₀ = c·b → 𝐔(t) = exp(−c·b·(t−t_entry))
        let ab = abelian_context();
        let mut a_const = PolyForm::zero(1, 1, 1);
        a_const.add_comp(
            &[0],
            SpacetimePoly::constant(scalar_mat(Cq::new(q(7, 10), q(0, 1)))),
        );
        let tg1 = temporal_gauge(ab.algebra(), &a_const, &[[0.2, -0.3, 0.1]], -1.0, 1.0, 400);
        let b64 = ab.algebra().basis()[0].map(cq_to_c64);
        for it in [0usize, 100, 250, 400] {
            let dt = tg1.time(it) - (-1.0);
            let expect = crate::mathkit::ode::mat_exp(&b64.scale(&C64::new(-0.7 * dt, 0.0)));
            assert!(
                (&tg1.sample(0, it).clone() - &expect).max_mag() <= 1e-10,
                "closed-form exponential mismatch at step {it}"
            );
        }

        // polynomial non-abelian V₀: transformed time component ≈ 0, unitary,
        // and the end-state converges at 4th order in the step size
        let mut rng = SampleRng::new(0x2E);
        let mut a_poly = PolyForm::zero(1, alg.dim(), 1);
        a_poly.add_comp(&[0], rng.poly_real(alg.dim(), 1, 2).scale(&Cq::new(q(1, 2), q(0, 1))));
        let points = [[0.0, 0.0, 0.0], [0.5, -0.25, 0.75]];
        let tg = temporal_gauge(alg, &a_poly, &points, -1.0, 1.0, 400);
        assert!(tg.time_component_defect(alg, &a_poly) <= 1e-8);
        assert!(tg.unitarity_defect() <= 1e-10);
        let end = |steps: usize| {
            temporal_gauge(alg, &a_poly, &points[..1], -1.0, 1.0, steps).sample(0, steps).clone()
        };
        let e1 = (&end(50) - &end(100)).max_mag();
        let e2 = (&end(100) - &end(200)).max_mag();
        let ratio = e1 / e2;
        assert!((8.0..40.0).contains(&ratio), "expected ~2⁴ convergence, got {ratio}");
    }

    #[test]
    fn bullet_form_agrees_with_the_pointwise_bullet() {
        let ctx = lepton_context();
        let mut rng = SampleRng::new(0x2F);
        let psi = random_plus(&mut rng, &ctx, 2);
        let x: [Cq; 4] = std::array::from_fn(|_| Cq::new(rng.rational(2, 3), q(0, 1)));
        // degree 2: compare against the flat-array Clifford bullet
        let t = FieldTriple::random(&ctx, &mut rng, 2);
        let f_a = curvature(ctx.algebra(), &t.a);
        let got = bullet_form(&ctx, &f_a, &psi).poly().eval(&x);
        let mut mats = vec![Mat::<Cq>::zeros(ctx.dim_v(), ctx.dim_v()); 16];
        for i in 0..4u8 {
            for j in 0..4u8 {
                let comp = if i < j {
                    f_a.eval_comp(&[i, j], &x)
                } else if j < i {
                    f_a.eval_comp(&[j, i], &x).scale(&n(-1))
                } else {
                    continue;
                };
                mats[(4 * i + j) as usize] = ctx.rep_v().action(&comp);
            }
        }
        let expect = crate::clifford::ops::bullet_mat(ctx.gammas(), 2, &mats, &psi.poly().eval(&x));
        assert!((&got - &expect).is_exactly_zero());
    }
}
