//! Perturbation calculus around a background triple.
//!
//! Two layers live here. The *shorthand operators* (𝒩, ℳⁱ, 𝒪ⁱ, 𝒫, 𝒬,
//! ℛ_L/R, 𝒯ⁱ) are the named multilinear blocks that appear when the field
//! equations are rewritten for a perturbation (φ, W, Υ) riding on a
//! background (ψ, A, Φ). The *linearized interaction sources* are the
//! right-hand sides N^DL, N^DR, N^YM, N^H produced by differentiating the
//! perturbed system in the family parameters ε₁, ε₂, ε₃ at zero: level 1 is
//! the linear system (no interaction source survives), level 2 the mixed
//! second derivative, level 3 the full third cross-derivative including the
//! permutation sums.
//!
//! Correctness of the combinatorics is certified against
//! [`nonlinear_sources`]: composing the nonlinear source expressions with an
//! ε-polynomial family of fields and extracting the exact ε₁ε₂ε₃ (or ε₁ε₂)
//! polynomial coefficient on an integer grid must reproduce
//! [`linearized_sources`] exactly, coefficient by coefficient. The tests do
//! this in exact rational arithmetic.
//!
//! One printed-coefficient correction is baked in deliberately: the cubic
//! gauge self-interaction inside the three-fold Yang–Mills source carries
//! coefficient 1 on ⋆[W,⋆[W,W]] inside the ½Σ_π sum (not 2). With 2 the
//! extraction oracle fails on any configuration whose W-components do not
//! commute; the test `level3_matches_exact_epsilon_extraction` pins this.

use std::fmt;
use std::str::FromStr;

use crate::clifford::gamma::Variance;
use crate::clifford::spinor::Sector;
use crate::fieldtheory::fields::{
    FieldError, FieldTriple, ModelContext, SourceTuple, SpinorField,
};
use crate::fieldtheory::forms::PolyForm;
use crate::fieldtheory::ops::{
    bullet_form, covariant_codiff_ad, covariant_codiff_rep, covariant_d_ad, covariant_d_rep,
    covariant_d_spinor, curvature, interaction_hy, interaction_ymd1, interaction_ymh_form,
    interaction_yh_l, interaction_yh_r, poly_re, poly_times, rep_wedge, spinor_wedge,
    wedge_bracket,
};
use crate::mathkit::mat::Mat;
use crate::mathkit::poly::SpacetimePoly;
use crate::mathkit::scalar::{q, Cq, Scalar};

fn n(v: i64) -> Cq {
    <Cq as Scalar>::from_i64(v)
}

fn half() -> Cq {
    Cq::new(q(1, 2), q(0, 1))
}

fn quarter() -> Cq {
    Cq::new(q(1, 4), q(0, 1))
}

// ---------------------------------------------------------------------------
// Shorthand perturbation operators
// ---------------------------------------------------------------------------

/// Names for the multilinear blocks of the perturbed field equations.
///
/// * `N` — gauge-field self-interaction (linear through cubic in W);
/// * `M1`–`M3` — gauge/Higgs couplings into the Yang–Mills channel, graded
///   by total perturbation order;
/// * `O1`–`O3` — gauge/Higgs couplings into the Higgs channel, same grading;
/// * `P` — fermion current into the Yang–Mills channel;
/// * `Q` — fermion current into the Higgs channel;
/// * `RL`/`RR` — Yukawa couplings into the left/right Dirac channels;
/// * `T1`–`T3` — the extra blocks created by squaring the Dirac channels
///   into wave equations, graded by perturbation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PerturbationTag {
    N,
    M1,
    M2,
    M3,
    O1,
    O2,
    O3,
    P,
    Q,
    RL,
    RR,
    T1,
    T2,
    T3,
}

impl PerturbationTag {
    /// All tags in a fixed order (used by exhaustive checks and the CLI).
    pub fn all() -> [PerturbationTag; 14] {
        use PerturbationTag::*;
        [N, M1, M2, M3, O1, O2, O3, P, Q, RL, RR, T1, T2, T3]
    }

    pub fn name(self) -> &'static str {
        use PerturbationTag::*;
        match self {
            N => "N",
            M1 => "M1",
            M2 => "M2",
            M3 => "M3",
            O1 => "O1",
            O2 => "O2",
            O3 => "O3",
            P => "P",
            Q => "Q",
            RL => "RL",
            RR => "RR",
            T1 => "T1",
            T2 => "T2",
            T3 => "T3",
        }
    }
}

impl fmt::Display for PerturbationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PerturbationTag {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        PerturbationTag::all()
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FieldError::UnknownTag(s.to_string()))
    }
}

/// A value in one of the three channel spaces: a twisted-spinor field, a
/// Lie-algebra-valued form, or a W-valued scalar field.
#[derive(Clone, Debug)]
pub enum ChannelValue {
    Spinor(SpinorField),
    GaugeForm(PolyForm<Cq>),
    Higgs(SpacetimePoly<Cq>),
}

impl ChannelValue {
    pub fn max_coeff_mag(&self) -> f64 {
        match self {
            ChannelValue::Spinor(s) => s.max_coeff_mag(),
            ChannelValue::GaugeForm(w) => w.max_coeff_mag(),
            ChannelValue::Higgs(p) => p.max_coeff_mag(),
        }
    }

    pub fn is_exactly_zero(&self) -> bool {
        match self {
            ChannelValue::Spinor(s) => s.is_exactly_zero(),
            ChannelValue::GaugeForm(w) => w.is_exactly_zero(),
            ChannelValue::Higgs(p) => p.is_exactly_zero(),
        }
    }
}

/// ⋆(ρ_*(W) ∧ ⋆x) for a W-space-valued form x (returns a form of degree
/// `x.degree() − 1` once both Hodge stars are applied).
fn star_rep_wedge_star(
    rep: &crate::liealg::rep::Representation,
    w: &PolyForm<Cq>,
    x: &PolyForm<Cq>,
) -> PolyForm<Cq> {
    rep_wedge(rep, w, &x.hodge()).hodge()
}

/// ⋆(ϱ_*(W) ∧ ⋆x) for a spinor-valued form x.
fn star_spinor_wedge_star(ctx: &ModelContext, w: &PolyForm<Cq>, x: &PolyForm<Cq>) -> PolyForm<Cq> {
    spinor_wedge(ctx, w, &x.hodge()).hodge()
}

/// ⋆[W ∧ ⋆x] for an adjoint-valued form x.
fn star_bracket_star(
    alg: &crate::liealg::algebra::LieAlgebra,
    w: &PolyForm<Cq>,
    x: &PolyForm<Cq>,
) -> PolyForm<Cq> {
    wedge_bracket(alg, w, &x.hodge()).hodge()
}

/// A spinor field wrapped as a 0-form so it can enter wedge chains.
fn spinor_zero_form(psi: &SpinorField) -> PolyForm<Cq> {
    PolyForm::from_scalar(psi.poly().clone())
}

/// Rebuild a spinor field from a 0-form produced by a sector-preserving
/// wedge chain.
fn spinor_from_zero_form(form: &PolyForm<Cq>, like: &SpinorField) -> SpinorField {
    SpinorField::new(form.comp(&[]), like.sector(), like.dim_l(), like.dim_r())
        .expect("flavor wedges act block-diagonally and preserve the sector pattern")
}

/// Plain exterior derivative of a spinor field as a spinor-valued 1-form.
fn spinor_d(psi: &SpinorField) -> PolyForm<Cq> {
    let dv = psi.dim_l() + psi.dim_r();
    let mut out = PolyForm::zero(1, 4, dv);
    for axis in 0u8..4 {
        out.add_comp(&[axis], psi.poly().derive(axis as usize));
    }
    out
}

/// ρ_*(W)u as a W-valued 1-form, for a scalar W-valued field u.
fn rho_w(ctx: &ModelContext, w: &PolyForm<Cq>, u: &SpacetimePoly<Cq>) -> PolyForm<Cq> {
    rep_wedge(ctx.rep_w(), w, &PolyForm::from_scalar(u.clone()))
}

/// ⟨u, v⟩_W as a complex scalar polynomial (conjugate-linear in u).
fn higgs_inner(u: &SpacetimePoly<Cq>, v: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
    u.combine(v, 1, 1, |a, b| {
        Mat::from_rows(vec![vec![a.dagger().matmul(b).get(0, 0).clone()]])
    })
}

/// 2Re⟨u, v⟩_W as a real scalar polynomial.
fn higgs_re_inner2(u: &SpacetimePoly<Cq>, v: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
    poly_re(&higgs_inner(u, v)).scale(&n(2))
}

/// |u|²_W as a real scalar polynomial.
fn higgs_norm(u: &SpacetimePoly<Cq>) -> SpacetimePoly<Cq> {
    poly_re(&higgs_inner(u, u))
}

/// iΓᵅ (upper index) as a constant matrix.
fn i_gamma_upper(ctx: &ModelContext, alpha: usize) -> Mat<Cq> {
    ctx.gammas().gamma(alpha, Variance::Upper).scale(&<Cq as Scalar>::i())
}

/// Evaluate one shorthand block on (background, perturbation).
///
/// The background triple supplies (ψ, A, Φ) and the perturbation triple
/// (φ, W, Υ); each tag reads exactly the slots its definition mentions.
/// Spinor-valued blocks act on the full flavor space at once (the flavor
/// action is block-diagonal, so the left/right channel versions are the
/// chiral column blocks of the result).
pub fn perturbation_operator(
    ctx: &ModelContext,
    tag: PerturbationTag,
    background: &FieldTriple,
    perturbation: &FieldTriple,
) -> ChannelValue {
    let alg = ctx.algebra();
    let (psi, a, phi) = (&background.psi, &background.a, &background.phi);
    let (vphi, w, ups) = (&perturbation.psi, &perturbation.a, &perturbation.phi);
    match tag {
        // ⋆[W,⋆F_A] + ½D_A*[W,W] + ⋆[W,⋆D_AW] + ½⋆[W,⋆[W,W]]
        PerturbationTag::N => {
            let f_a = curvature(alg, a);
            let ww = wedge_bracket(alg, w, w);
            let out = star_bracket_star(alg, w, &f_a)
                .add(&covariant_codiff_ad(alg, a, &ww).scale(&half()))
                .add(&star_bracket_star(alg, w, &covariant_d_ad(alg, a, w)))
                .add(&star_bracket_star(alg, w, &ww).scale(&half()));
            ChannelValue::GaugeForm(out)
        }
        // ℐ_YMH(d_AΥ, Φ) + ℐ_YMH(d_AΦ, Υ) + ℐ_YMH(ρ(W)Φ, Φ)
        PerturbationTag::M1 => {
            let d_ups = covariant_d_rep(ctx.rep_w(), a, &PolyForm::from_scalar(ups.clone()));
            let d_phi = covariant_d_rep(ctx.rep_w(), a, &PolyForm::from_scalar(phi.clone()));
            let out = interaction_ymh_form(ctx, &d_ups, phi)
                .add(&interaction_ymh_form(ctx, &d_phi, ups))
                .add(&interaction_ymh_form(ctx, &rho_w(ctx, w, phi), phi));
            ChannelValue::GaugeForm(out)
        }
        // ℐ_YMH(d_AΥ, Υ) + ℐ_YMH(ρ(W)Υ, Φ) + ℐ_YMH(ρ(W)Φ, Υ)
        PerturbationTag::M2 => {
            let d_ups = covariant_d_rep(ctx.rep_w(), a, &PolyForm::from_scalar(ups.clone()));
            let out = interaction_ymh_form(ctx, &d_ups, ups)
                .add(&interaction_ymh_form(ctx, &rho_w(ctx, w, ups), phi))
                .add(&interaction_ymh_form(ctx, &rho_w(ctx, w, phi), ups));
            ChannelValue::GaugeForm(out)
        }
        // ℐ_YMH(ρ(W)Υ, Υ)
        PerturbationTag::M3 => {
            ChannelValue::GaugeForm(interaction_ymh_form(ctx, &rho_w(ctx, w, ups), ups))
        }
        // d_A*(ρ(W)Φ) + ⋆(ρ(W)∧⋆d_AΦ) + 2Re⟨Φ,Υ⟩Φ + |Φ|²Υ
        PerturbationTag::O1 => {
            let d_phi = covariant_d_rep(ctx.rep_w(), a, &PolyForm::from_scalar(phi.clone()));
            let out = &(&covariant_codiff_rep(ctx.rep_w(), a, &rho_w(ctx, w, phi)).comp(&[])
                + &star_rep_wedge_star(ctx.rep_w(), w, &d_phi).comp(&[]))
                + &(&poly_times(phi, &higgs_re_inner2(phi, ups))
                    + &poly_times(ups, &higgs_norm(phi)));
            ChannelValue::Higgs(out)
        }
        // ⋆(ρ(W)∧⋆ρ(W)Φ) + d_A*(ρ(W)Υ) + ⋆(ρ(W)∧⋆d_AΥ) + 2Re⟨Φ,Υ⟩Υ + |Υ|²Φ
        PerturbationTag::O2 => {
            let d_ups = covariant_d_rep(ctx.rep_w(), a, &PolyForm::from_scalar(ups.clone()));
            let out = &(&star_rep_wedge_star(ctx.rep_w(), w, &rho_w(ctx, w, phi)).comp(&[])
                + &covariant_codiff_rep(ctx.rep_w(), a, &rho_w(ctx, w, ups)).comp(&[]))
                + &(&star_rep_wedge_star(ctx.rep_w(), w, &d_ups).comp(&[])
                    + &(&poly_times(ups, &higgs_re_inner2(phi, ups))
                        + &poly_times(phi, &higgs_norm(ups))));
            ChannelValue::Higgs(out)
        }
        // ⋆(ρ(W)∧⋆ρ(W)Υ) + |Υ|²Υ
        PerturbationTag::O3 => {
            let out = &star_rep_wedge_star(ctx.rep_w(), w, &rho_w(ctx, w, ups)).comp(&[])
                + &poly_times(ups, &higgs_norm(ups));
            ChannelValue::Higgs(out)
        }
        // ℐ¹_YMD over both chiral blocks: (ψ_c,φ_c) + (φ_c,ψ_c) + (φ_c,φ_c)
        PerturbationTag::P => {
            let mut out = PolyForm::zero(1, ctx.dim_g(), 1);
            for (b, p) in [
                (psi.flavor_l(), vphi.flavor_l()),
                (psi.flavor_r(), vphi.flavor_r()),
            ] {
                out = out
                    .add(&interaction_ymd1(ctx, &b, &p))
                    .add(&interaction_ymd1(ctx, &p, &b))
                    .add(&interaction_ymd1(ctx, &p, &p));
            }
            ChannelValue::GaugeForm(out)
        }
        // ℐ_HY(ψ_L,φ_R) + ℐ_HY(φ_L,ψ_R) + ℐ_HY(φ_L,φ_R)
        PerturbationTag::Q => {
            let out = &(&interaction_hy(ctx, psi, vphi) + &interaction_hy(ctx, vphi, psi))
                + &interaction_hy(ctx, vphi, vphi);
            ChannelValue::Higgs(out)
        }
        // ℐ_YH,L(Υ,φ_R) + ℐ_YH,L(Φ,φ_R) + ℐ_YH,L(Υ,ψ_R)
        PerturbationTag::RL => {
            let out = interaction_yh_l(ctx, ups, vphi)
                .add(&interaction_yh_l(ctx, phi, vphi))
                .add(&interaction_yh_l(ctx, ups, psi));
            ChannelValue::Spinor(out)
        }
        // ℐ_YH,R(φ_L,Υ) + ℐ_YH,R(φ_L,Φ) + ℐ_YH,R(ψ_L,Υ)
        PerturbationTag::RR => {
            let out = interaction_yh_r(ctx, vphi, ups)
                .add(&interaction_yh_r(ctx, vphi, phi))
                .add(&interaction_yh_r(ctx, psi, ups));
            ChannelValue::Spinor(out)
        }
        // ½F_A•φ + 2⋆(ϱ(W)∧⋆d_Aψ)
        PerturbationTag::T1 => {
            let f_a = curvature(alg, a);
            let chain = star_spinor_wedge_star(ctx, w, &covariant_d_spinor(ctx, a, psi));
            let out = bullet_form(ctx, &f_a, vphi)
                .scale(&half())
                .add(&spinor_from_zero_form(&chain, psi).scale(&n(2)));
            ChannelValue::Spinor(out)
        }
        // ½D_AW•φ + 2⋆(ϱ(W)∧⋆d_Aφ) + ⋆(ϱ(W)∧⋆(ϱ(W)ψ)) + ¼[W,W]•ψ
        PerturbationTag::T2 => {
            let chain_phi = star_spinor_wedge_star(ctx, w, &covariant_d_spinor(ctx, a, vphi));
            let chain_psi =
                star_spinor_wedge_star(ctx, w, &spinor_wedge(ctx, w, &spinor_zero_form(psi)));
            let out = bullet_form(ctx, &covariant_d_ad(alg, a, w), vphi)
                .scale(&half())
                .add(&spinor_from_zero_form(&chain_phi, vphi).scale(&n(2)))
                .add(&spinor_from_zero_form(&chain_psi, psi))
                .add(&bullet_form(ctx, &wedge_bracket(alg, w, w), psi).scale(&quarter()));
            ChannelValue::Spinor(out)
        }
        // ⋆(ϱ(W)∧⋆(ϱ(W)φ)) + ¼[W,W]•φ
        PerturbationTag::T3 => {
            let chain =
                star_spinor_wedge_star(ctx, w, &spinor_wedge(ctx, w, &spinor_zero_form(vphi)));
            let out = spinor_from_zero_form(&chain, vphi)
                .add(&bullet_form(ctx, &wedge_bracket(alg, w, w), vphi).scale(&quarter()));
            ChannelValue::Spinor(out)
        }
    }
}

// ---------------------------------------------------------------------------
// Multi-fold linearized interaction sources
// ---------------------------------------------------------------------------

/// The ε-derivative fields feeding [`linearized_sources`].
///
/// Components reuse the triple container: `.psi` holds the spinor
/// perturbation φ, `.a` the gauge perturbation W, `.phi` the Higgs
/// perturbation Υ. `first[j]` is the first derivative in ε_{j+1};
/// `second` holds the mixed second derivatives in the fixed order
/// (ε₁ε₂, ε₁ε₃, ε₂ε₃).
#[derive(Clone, Debug, Default)]
pub struct LinearizedFields {
    pub first: Vec<FieldTriple>,
    pub second: Vec<FieldTriple>,
}

impl LinearizedFields {
    pub fn for_level2(xj: FieldTriple, xk: FieldTriple) -> Self {
        LinearizedFields { first: vec![xj, xk], second: Vec::new() }
    }

    pub fn for_level3(first: [FieldTriple; 3], second: [FieldTriple; 3]) -> Self {
        LinearizedFields { first: first.to_vec(), second: second.to_vec() }
    }

    fn first_or_err(&self, j: usize) -> Result<&FieldTriple, FieldError> {
        self.first
            .get(j)
            .ok_or_else(|| FieldError::MissingLinearizedField(format!("X_({})", j + 1)))
    }

    fn second_or_err(&self, j: usize, k: usize) -> Result<&FieldTriple, FieldError> {
        self.second
            .get(pair_slot(j, k))
            .ok_or_else(|| FieldError::MissingLinearizedField(format!("X_({}{})", j + 1, k + 1)))
    }
}

/// Index of the unordered pair {j,k} ⊂ {0,1,2} in the order (01, 02, 12).
fn pair_slot(j: usize, k: usize) -> usize {
    match (j.min(k), j.max(k)) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 2) => 2,
        other => panic!("not a pair of distinct indices in 0..3: {other:?}"),
    }
}

/// Interaction sources of the ε-differentiated field equations.
///
/// * level 1: the linear system — every interaction term is at least
///   quadratic in the perturbation, so all four channels vanish;
/// * level 2: the mixed ∂_{ε_j}∂_{ε_k} sources built from `first[0..2]`;
/// * level 3: the full ∂_{ε₁}∂_{ε₂}∂_{ε₃} sources built from all first- and
///   second-order fields, with the S₃ permutation sums.
///
/// Channels are packed as a [`SourceTuple`]: `k_l`/`k_r` are the left/right
/// Dirac wave sources, `j` the Yang–Mills source 1-form, `f` the Higgs
/// source.
pub fn linearized_sources(
    ctx: &ModelContext,
    level: u8,
    fields: &LinearizedFields,
) -> Result<SourceTuple, FieldError> {
    match level {
        1 => {
            fields.first_or_err(0)?;
            Ok(zero_wave_sources(ctx))
        }
        2 => {
            let xj = fields.first_or_err(0)?;
            let xk = fields.first_or_err(1)?;
            Ok(level2_sources(ctx, xj, xk))
        }
        3 => {
            let f1 = fields.first_or_err(0)?;
            let f2 = fields.first_or_err(1)?;
            let f3 = fields.first_or_err(2)?;
            let s12 = fields.second_or_err(0, 1)?;
            let s13 = fields.second_or_err(0, 2)?;
            let s23 = fields.second_or_err(1, 2)?;
            Ok(level3_sources(ctx, [f1, f2, f3], [s12, s13, s23]))
        }
        other => Err(FieldError::InvalidLevel(other)),
    }
}

fn zero_wave_sources(ctx: &ModelContext) -> SourceTuple {
    SourceTuple {
        k_l: SpinorField::zero(Sector::Plus, ctx.dim_l(), ctx.dim_r()),
        k_r: SpinorField::zero(Sector::Plus, ctx.dim_l(), ctx.dim_r()),
        j: PolyForm::zero(1, ctx.dim_g(), 1),
        f: SpacetimePoly::zero(ctx.dim_w(), 1),
    }
}

/// The chirality-agnostic quadratic Dirac-channel piece
/// 2⋆(ϱ(W_a)∧⋆dφ_b) + ½dW_a•φ_b on the full flavor space.
fn dirac_quad_common(ctx: &ModelContext, w_a: &PolyForm<Cq>, phi_b: &SpinorField) -> SpinorField {
    let chain = star_spinor_wedge_star(ctx, w_a, &spinor_d(phi_b));
    spinor_from_zero_form(&chain, phi_b)
        .scale(&n(2))
        .add(&bullet_form(ctx, &w_a.d(), phi_b).scale(&half()))
}

/// Σ_α ℐ_YH,L(∂_αΥ_a, iΓᵅφ_b): the Yukawa block of the left Dirac wave
/// source that pairs a Higgs derivative with a Clifford-rotated spinor.
fn yukawa_quad_l(ctx: &ModelContext, ups_a: &SpacetimePoly<Cq>, phi_b: &SpinorField) -> SpinorField {
    let mut acc = SpinorField::zero(Sector::Plus, ctx.dim_l(), ctx.dim_r());
    for alpha in 0..4 {
        let rotated = phi_b.apply_left(&i_gamma_upper(ctx, alpha), true);
        acc = acc.add(&interaction_yh_l(ctx, &ups_a.derive(alpha), &rotated));
    }
    acc
}

/// Σ_α ℐ_YH,R(iΓᵅφ_b, ∂_αΥ_a): the mirror block for the right channel.
fn yukawa_quad_r(ctx: &ModelContext, ups_a: &SpacetimePoly<Cq>, phi_b: &SpinorField) -> SpinorField {
    let mut acc = SpinorField::zero(Sector::Plus, ctx.dim_l(), ctx.dim_r());
    for alpha in 0..4 {
        let rotated = phi_b.apply_left(&i_gamma_upper(ctx, alpha), true);
        acc = acc.add(&interaction_yh_r(ctx, &rotated, &ups_a.derive(alpha)));
    }
    acc
}

fn level2_sources(ctx: &ModelContext, xj: &FieldTriple, xk: &FieldTriple) -> SourceTuple {
    let alg = ctx.algebra();
    let mut dl = SpinorField::zero(Sector::Plus, ctx.dim_l(), ctx.dim_r());
    let mut dr = dl.clone();
    let mut ym = PolyForm::zero(1, ctx.dim_g(), 1);
    let mut h = SpacetimePoly::zero(ctx.dim_w(), 1);
    for (a, b) in [(xj, xk), (xk, xj)] {
        let (w_a, ups_a) = (&a.a, &a.phi);
        let (phi_b, ups_b) = (&b.psi, &b.phi);
        let common = dirac_quad_common(ctx, w_a, phi_b);
        dl = dl.add(&common.flavor_l()).sub(&yukawa_quad_l(ctx, ups_a, phi_b));
        dr = dr.add(&common.flavor_r()).sub(&yukawa_quad_r(ctx, ups_a, phi_b));
        ym = ym
            .add(&wedge_bracket(alg, w_a, &b.a).codiff().scale(&half()))
            .add(&star_bracket_star(alg, w_a, &b.a.d()))
            .add(&interaction_ymh_form(
                ctx,
                &PolyForm::from_scalar(ups_a.clone()).d(),
                ups_b,
            ));
        h = &h
            + &star_rep_wedge_star(
                ctx.rep_w(),
                w_a,
                &PolyForm::from_scalar(ups_b.clone()).d(),
            )
            .comp(&[])
            .scale(&n(2));
    }
    let minus = n(-1);
    SourceTuple {
        k_l: dl.scale(&minus),
        k_r: dr.scale(&minus),
        j: ym.scale(&minus),
        f: h.scale(&minus),
    }
}

fn level3_sources(
    ctx: &ModelContext,
    first: [&FieldTriple; 3],
    second: [&FieldTriple; 3],
) -> SourceTuple {
    let alg = ctx.algebra();
    let two = n(2);
    let mut dl = SpinorField::zero(Sector::Plus, ctx.dim_l(), ctx.dim_r());
    let mut dr = dl.clone();
    let mut ym = PolyForm::zero(1, ctx.dim_g(), 1);
    let mut h = SpacetimePoly::zero(ctx.dim_w(), 1);
    const PERMS: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for [p1, p2, p3] in PERMS {
        let (f1, f2, f3) = (first[p1], first[p2], first[p3]);
        let s12 = second[pair_slot(p1, p2)];
        let s23 = second[pair_slot(p2, p3)];

        // Dirac channels: pair/single and single/pair quadratic splits, then
        // the genuinely cubic first-order terms.
        let common = dirac_quad_common(ctx, &s12.a, &f3.psi)
            .add(&dirac_quad_common(ctx, &f1.a, &s23.psi))
            .add(&{
                let inner = spinor_wedge(ctx, &f2.a, &spinor_zero_form(&f3.psi));
                let chain = star_spinor_wedge_star(ctx, &f1.a, &inner);
                spinor_from_zero_form(&chain, &f3.psi).scale(&two)
            })
            .add(&bullet_form(ctx, &wedge_bracket(alg, &f1.a, &f2.a), &f3.psi).scale(&half()));

        let yuk_l = yukawa_quad_l(ctx, &s12.phi, &f3.psi)
            .add(&yukawa_quad_l(ctx, &f1.phi, &s23.psi))
            .add(
                &interaction_yh_l(ctx, &f1.phi, &interaction_yh_r(ctx, &f2.psi, &f3.phi))
                    .scale(&two),
            )
            .add(
                &bullet_form(ctx, &f1.a, &interaction_yh_l(ctx, &f2.phi, &f3.psi)).scale(&two),
            );
        let yuk_r = yukawa_quad_r(ctx, &s12.phi, &f3.psi)
            .add(&yukawa_quad_r(ctx, &f1.phi, &s23.psi))
            .add(
                &interaction_yh_r(ctx, &interaction_yh_l(ctx, &f1.phi, &f2.psi), &f3.phi)
                    .scale(&two),
            )
            .add(
                &bullet_form(ctx, &f1.a, &interaction_yh_r(ctx, &f3.psi, &f2.phi)).scale(&two),
            );
        dl = dl.add(&common.flavor_l()).sub(&yuk_l);
        dr = dr.add(&common.flavor_r()).sub(&yuk_r);

        // Yang–Mills channel. The cubic ⋆[W,⋆[W,W]] enters with coefficient
        // 1 inside the ½Σ_π sum: that is the exact third cross-derivative of
        // ½⋆[W,⋆[W,W]] (the extraction oracle rejects coefficient 2).
        ym = ym
            .add(&wedge_bracket(alg, &s12.a, &f3.a).codiff().scale(&half()))
            .add(&wedge_bracket(alg, &f1.a, &s23.a).codiff().scale(&half()))
            .add(&star_bracket_star(alg, &s12.a, &f3.a.d()))
            .add(&star_bracket_star(alg, &f1.a, &s23.a.d()))
            .add(&interaction_ymh_form(
                ctx,
                &PolyForm::from_scalar(s12.phi.clone()).d(),
                &f3.phi,
            ))
            .add(&interaction_ymh_form(
                ctx,
                &PolyForm::from_scalar(f1.phi.clone()).d(),
                &s23.phi,
            ))
            .add(&star_bracket_star(alg, &f1.a, &wedge_bracket(alg, &f2.a, &f3.a)))
            .add(&interaction_ymh_form(ctx, &rho_w(ctx, &f1.a, &f2.phi), &f3.phi).scale(&two));

        // Higgs channel (plain Σ_π, no ½).
        h = &h
            + &(&(&star_rep_wedge_star(
                ctx.rep_w(),
                &s12.a,
                &PolyForm::from_scalar(f3.phi.clone()).d(),
            )
            .comp(&[])
                + &star_rep_wedge_star(
                    ctx.rep_w(),
                    &f1.a,
                    &PolyForm::from_scalar(s23.phi.clone()).d(),
                )
                .comp(&[]))
                + &(&star_rep_wedge_star(ctx.rep_w(), &f1.a, &rho_w(ctx, &f2.a, &f3.phi))
                    .comp(&[])
                    + &poly_times(&f3.phi, &higgs_inner(&f1.phi, &f2.phi))));
    }
    let minus_half = Cq::new(q(-1, 2), q(0, 1));
    SourceTuple {
        k_l: dl.scale(&minus_half),
        k_r: dr.scale(&minus_half),
        j: ym.scale(&minus_half),
        f: h.scale(&n(-1)),
    }
}

/// The nonlinear interaction sources N^DL, N^DR, N^YM, N^H of the principal
/// perturbed system, as closed polynomial expressions in one perturbation
/// triple (φ, W, Υ). Only the terms with derivatives falling on the
/// perturbation are kept (the system these source feeds is the one whose
/// repeated ε-differentiation produces [`linearized_sources`]); in the Dirac
/// channels the composite "Dirac operator of the Yukawa current" is expanded
/// with the opposite channel's equation substituted, which is where the
/// nested Yukawa-of-Yukawa cubic comes from.
pub fn nonlinear_sources(ctx: &ModelContext, pert: &FieldTriple) -> SourceTuple {
    let alg = ctx.algebra();
    let (vphi, w, ups) = (&pert.psi, &pert.a, &pert.phi);
    let ww = wedge_bracket(alg, w, w);

    // Dirac channels: ½dW•φ + 2⋆(ϱ(W)∧⋆dφ) + ⋆(ϱ(W)∧⋆(ϱ(W)φ)) + ¼[W,W]•φ
    // minus the expanded Yukawa-current Dirac composite.
    let common = dirac_quad_common(ctx, w, vphi)
        .add(&{
            let inner = spinor_wedge(ctx, w, &spinor_zero_form(vphi));
            spinor_from_zero_form(&star_spinor_wedge_star(ctx, w, &inner), vphi)
        })
        .add(&bullet_form(ctx, &ww, vphi).scale(&quarter()));
    let yuk_l = yukawa_quad_l(ctx, ups, vphi)
        .add(&bullet_form(ctx, w, &interaction_yh_l(ctx, ups, vphi)))
        .add(&interaction_yh_l(ctx, ups, &interaction_yh_r(ctx, vphi, ups)));
    let yuk_r = yukawa_quad_r(ctx, ups, vphi)
        .add(&bullet_form(ctx, w, &interaction_yh_r(ctx, vphi, ups)))
        .add(&interaction_yh_r(ctx, &interaction_yh_l(ctx, ups, vphi), ups));
    let n_dl = yuk_l.sub(&common.flavor_l());
    let n_dr = yuk_r.sub(&common.flavor_r());

    // Yang–Mills channel: ½d*[W,W] + ⋆[W,⋆dW] + ½⋆[W,⋆[W,W]]
    //                     + ℐ_YMH(dΥ,Υ) + ℐ_YMH(ρ(W)Υ,Υ).
    let d_ups_form = PolyForm::from_scalar(ups.clone()).d();
    let n_ym = ww
        .codiff()
        .scale(&half())
        .add(&star_bracket_star(alg, w, &w.d()))
        .add(&star_bracket_star(alg, w, &ww).scale(&half()))
        .add(&interaction_ymh_form(ctx, &d_ups_form, ups))
        .add(&interaction_ymh_form(ctx, &rho_w(ctx, w, ups), ups))
        .scale(&n(-1));

    // Higgs channel: 2⋆(ρ(W)∧⋆dΥ) + ⋆(ρ(W)∧⋆ρ(W)Υ) + |Υ|²Υ.
    let n_h = (&(&star_rep_wedge_star(ctx.rep_w(), w, &d_ups_form).comp(&[]).scale(&n(2))
        + &star_rep_wedge_star(ctx.rep_w(), w, &rho_w(ctx, w, ups)).comp(&[]))
        + &poly_times(ups, &higgs_norm(ups)))
        .scale(&n(-1));

    SourceTuple { k_l: n_dl, k_r: n_dr, j: n_ym, f: n_h }
}
