//! Transport along lightlike rays.
//!
//! Four operations live here, all driven by the same fourth-order integrator
//! over matrix-valued states:
//!
//! * [`parallel_transport`] — the gauge parallel transport P(t) along a ray,
//!   solving Ṗ = −ϱ_*(A_γ(γ̇))P with P(0) = id.
//! * [`ray_transform`] — the truncated broken-ray transform
//!   I_γ(t) = P(t)∫₀ᵗ P(u)⁻¹ ψ(γ(u)) du of a twisted spinor field, computed
//!   as a single stacked left-linear ODE (no separate quadrature pass).
//! * [`transport_system`] — the coupled first-order transport system for the
//!   principal-symbol triple (ς, w, υ) of a linearized-wave polarization:
//!   spinor, connection and Higgs symbols exchange amplitude through the
//!   Yukawa and Higgs-current couplings evaluated pointwise along the ray.
//! * [`symbol_transport_closed_form`] — the closed-form solution
//!   ς(t) = −½ ω·γ̇·(I_γ(t)) ϱ_*(b)ᵀ available when the connection symbol is
//!   a central flavor b tensored with a constant covector ω and the Higgs
//!   symbol vanishes.
//!
//! [`temporal_symbol_projection`] is the algebraic companion: it maps a
//! one-form symbol to its temporal-gauge representative, killing the time
//! slot by subtracting the multiple of the frequency covector that any
//! gauge-orbit direction contributes.
//!
//! Exact rational data (rays, covectors, polynomial fields) enters here and
//! floating-point trajectories come out; every solver output is checked for
//! finiteness before it is returned.

use num_rational::BigRational;

use super::geometry::{metric_sign, to_f64 as rat_f64, LightRay};
use super::MicrolocalError;
use crate::clifford::gamma::{GammaSet, Variance};
use crate::clifford::spinor::TwistedSpinor;
use crate::fieldtheory::fields::{FieldTriple, ModelContext, SpinorField};
use crate::fieldtheory::forms::PolyForm;
use crate::fieldtheory::ops::poly_to_c64;
use crate::liealg::rep::Representation;
use crate::mathkit::mat::Mat;
use crate::mathkit::ode::ode_solve_final;
use crate::mathkit::poly::SpacetimePoly;
use crate::mathkit::scalar::{cq_to_c64, Cq, Scalar, C64};

type R = BigRational;

fn four_f64(x: &[R; 4]) -> [f64; 4] {
    std::array::from_fn(|k| rat_f64(&x[k]))
}

fn point_c64(x: &[f64; 4]) -> [C64; 4] {
    std::array::from_fn(|k| C64::new(x[k], 0.0))
}

fn images_c64(rep: &Representation) -> Vec<Mat<C64>> {
    rep.images().iter().map(|m| m.map(cq_to_c64)).collect()
}

/// Σ_g coords_g · images[g] for a floating coordinate column.
fn act_c64(images: &[Mat<C64>], coords: &Mat<C64>) -> Mat<C64> {
    let n = images[0].rows();
    let mut out = Mat::zeros(n, n);
    for (g, img) in images.iter().enumerate() {
        out = &out + &img.scale(coords.get(g, 0));
    }
    out
}

/// The 𝔤-coordinates of A_γ(γ̇)(γ(u)), with the 1-form components converted
/// to floating polynomials once up front.
struct PulledGauge {
    comps: [SpacetimePoly<C64>; 4],
    vel: [f64; 4],
}

impl PulledGauge {
    fn new(a: &PolyForm<Cq>, gamma: &LightRay) -> Self {
        assert_eq!(a.degree(), 1, "gauge potential must be a 1-form");
        assert_eq!(a.cols(), 1, "gauge coordinates form a column");
        let comps = std::array::from_fn(|alpha| poly_to_c64(&a.comp(&[alpha as u8])));
        PulledGauge { comps, vel: gamma.velocity_f64() }
    }

    fn coords_at(&self, x: &[C64; 4]) -> Mat<C64> {
        let mut out = self.comps[0].eval(x).scale(&C64::new(self.vel[0], 0.0));
        for alpha in 1..4 {
            if self.vel[alpha] != 0.0 {
                out = &out + &self.comps[alpha].eval(x).scale(&C64::new(self.vel[alpha], 0.0));
            }
        }
        out
    }
}

fn ensure_finite(m: &Mat<C64>) -> Result<(), MicrolocalError> {
    if m.max_mag().is_finite() {
        Ok(())
    } else {
        Err(MicrolocalError::NonFinite)
    }
}

fn check_time(t: f64, gamma: &LightRay) -> Result<(), MicrolocalError> {
    let ell = rat_f64(gamma.length());
    if t.is_finite() && (0.0..=ell + 1e-12).contains(&t) {
        Ok(())
    } else {
        Err(MicrolocalError::OutOfRange {
            what: format!("transport time {t} outside the ray interval [0, {ell}]"),
        })
    }
}

/// Gauge parallel transport along a lightlike ray: the solution of
/// Ṗ(u) = −ϱ_*(A_γ(γ̇)(γ(u))) P(u), P(0) = id, evaluated at parameter `t`.
///
/// Spinor amplitudes are transported by the right action X ↦ X·P(t)ᵀ, so this
/// matrix is everything later stages need. `steps` fixes the number of
/// fourth-order integration steps over [0, t].
pub fn parallel_transport(
    a: &PolyForm<Cq>,
    gamma: &LightRay,
    rep: &Representation,
    t: f64,
    steps: usize,
) -> Result<Mat<C64>, MicrolocalError> {
    assert!(steps > 0, "at least one integration step");
    assert_eq!(a.rows(), rep.algebra().dim(), "gauge coordinates match the algebra");
    check_time(t, gamma)?;
    let pulled = PulledGauge::new(a, gamma);
    let images = images_c64(rep);
    let final_state = ode_solve_final(
        |u| act_c64(&images, &pulled.coords_at(&point_c64(&gamma.point(u)))).scale(&C64::new(-1.0, 0.0)),
        Mat::identity(rep.dim()),
        0.0,
        t,
        steps,
    );
    ensure_finite(&final_state)?;
    Ok(final_state)
}

/// Truncated ray transform of a twisted spinor field along a lightlike ray:
/// I_γ(t) = P(t) ∫₀ᵗ P(u)⁻¹ ψ(γ(u)) du, returned as the full 4×(d_L+d_R)
/// amplitude at parameter `t`.
///
/// Instead of transporting and quadrating separately, the integrand is folded
/// into one left-linear ODE on the stacked state [N; J] with N = (Pᵀ)⁻¹ and
/// J = ∫ ψ(γ(u))·N(u) du, so a single fourth-order pass with `nodes` steps
/// produces I = J·N⁻¹.
pub fn ray_transform(
    psi: &SpinorField,
    a: &PolyForm<Cq>,
    gamma: &LightRay,
    rep: &Representation,
    t: f64,
    nodes: usize,
) -> Result<Mat<C64>, MicrolocalError> {
    assert!(nodes > 0, "at least one integration step");
    assert_eq!(a.rows(), rep.algebra().dim(), "gauge coordinates match the algebra");
    let dv = rep.dim();
    assert_eq!(psi.dim_l() + psi.dim_r(), dv, "spinor flavors match the representation");
    check_time(t, gamma)?;
    let pulled = PulledGauge::new(a, gamma);
    let images = images_c64(rep);
    let psi_poly = poly_to_c64(psi.poly());

    // Stacked generator: d/du [N; J] = [[ϱᵀ, 0], [ψ(γ(u)), 0]] · [N; J].
    let generator = |u: f64| {
        let x = point_c64(&gamma.point(u));
        let rho_t = act_c64(&images, &pulled.coords_at(&x)).transpose();
        let psi_val = psi_poly.eval(&x);
        let mut g = Mat::zeros(dv + 4, dv + 4);
        for r in 0..dv {
            for c in 0..dv {
                g.set(r, c, rho_t.get(r, c).clone());
            }
        }
        for r in 0..4 {
            for c in 0..dv {
                g.set(dv + r, c, psi_val.get(r, c).clone());
            }
        }
        g
    };

    let mut initial = Mat::zeros(dv + 4, dv);
    for d in 0..dv {
        initial.set(d, d, C64::new(1.0, 0.0));
    }
    let final_state = ode_solve_final(generator, initial, 0.0, t, nodes);
    ensure_finite(&final_state)?;

    let mut n_block = Mat::zeros(dv, dv);
    let mut j_block = Mat::zeros(4, dv);
    for c in 0..dv {
        for r in 0..dv {
            n_block.set(r, c, final_state.get(r, c).clone());
        }
        for r in 0..4 {
            j_block.set(r, c, final_state.get(dv + r, c).clone());
        }
    }
    let n_inv = n_block.inverse().ok_or(MicrolocalError::NonFinite)?;
    let transform = j_block.matmul(&n_inv);
    ensure_finite(&transform)?;
    Ok(transform)
}

/// Principal-symbol polarization triple attached to a point and covector on a
/// ray: spinor amplitude ς (twisted, 4×(d_L+d_R)), connection amplitude
/// w = (w_β)ᵦ as four 𝔤-coordinate columns, Higgs amplitude υ ∈ W.
#[derive(Clone, Debug)]
pub struct SymbolTriple {
    pub varsigma: TwistedSpinor<C64>,
    pub w: [Mat<C64>; 4],
    pub upsilon: Mat<C64>,
    pub point: [f64; 4],
    pub covector: [f64; 4],
}

impl SymbolTriple {
    pub fn new(
        varsigma: TwistedSpinor<C64>,
        w: [Mat<C64>; 4],
        upsilon: Mat<C64>,
        point: [f64; 4],
        covector: [f64; 4],
    ) -> Self {
        for slot in &w {
            assert_eq!(slot.cols(), 1, "connection symbol slots are coordinate columns");
        }
        assert_eq!(upsilon.cols(), 1, "Higgs symbol is a column");
        SymbolTriple { varsigma, w, upsilon, point, covector }
    }

    /// The zero triple for a model, attached at the start of a ray.
    pub fn zero(ctx: &ModelContext, gamma: &LightRay) -> Self {
        use crate::clifford::spinor::Sector;
        SymbolTriple {
            varsigma: TwistedSpinor::zero(Sector::Plus, ctx.dim_l(), ctx.dim_r()),
            w: std::array::from_fn(|_| Mat::zeros(ctx.dim_g(), 1)),
            upsilon: Mat::zeros(ctx.dim_w(), 1),
            point: gamma.point(0.0),
            covector: four_f64(gamma.covector()),
        }
    }
}

/// Everything the transport-system derivative needs, converted to floating
/// point once per call.
struct SystemTables {
    images_v: Vec<Mat<C64>>,
    images_w: Vec<Mat<C64>>,
    gram_inv: Mat<C64>,
    g_y: C64,
    yuk: Vec<Vec<Vec<C64>>>,
    brackets: Vec<Vec<Mat<C64>>>,
    igamma_upper: [Mat<C64>; 4],
    vel_dot: Mat<C64>,
    vel_lower: [f64; 4],
    dl: usize,
    dr: usize,
    dw: usize,
    dg: usize,
}

impl SystemTables {
    fn new(ctx: &ModelContext, gamma: &LightRay) -> Self {
        let (dl, dr, dw, dg) = (ctx.dim_l(), ctx.dim_r(), ctx.dim_w(), ctx.dim_g());
        let gammas = GammaSet::<C64>::new();
        let i = <C64 as Scalar>::i();
        let igamma_upper =
            std::array::from_fn(|beta| gammas.gamma(beta, Variance::Upper).scale(&i));
        let vel = gamma.velocity_f64();
        let mut vel_dot = Mat::zeros(4, 4);
        for a in 0..4 {
            if vel[a] != 0.0 {
                let c = C64::new(0.0, vel[a]);
                vel_dot = &vel_dot + &gammas.gamma(a, Variance::Lower).scale(&c);
            }
        }
        let vel_lower = std::array::from_fn(|beta| metric_sign(beta) as f64 * vel[beta]);
        let mut yuk = vec![vec![vec![C64::new(0.0, 0.0); dr]; 2 * dw]; dl];
        for (l, row) in yuk.iter_mut().enumerate() {
            for (m, slot) in row.iter_mut().enumerate() {
                for (r, entry) in slot.iter_mut().enumerate() {
                    *entry = cq_to_c64(ctx.yukawa().coeff(l, m, r));
                }
            }
        }
        let alg = ctx.algebra();
        let unit = |g: usize| {
            let mut u = Mat::zeros(dg, 1);
            u.set(g, 0, <Cq as Scalar>::from_i64(1));
            u
        };
        let brackets = (0..dg)
            .map(|i| (0..dg).map(|j| alg.bracket(&unit(i), &unit(j)).map(cq_to_c64)).collect())
            .collect();
        SystemTables {
            images_v: images_c64(ctx.rep_v()),
            images_w: images_c64(ctx.rep_w()),
            gram_inv: ctx.gram_inv().map(cq_to_c64),
            g_y: cq_to_c64(ctx.yukawa().g_y()),
            yuk,
            brackets,
            igamma_upper,
            vel_dot,
            vel_lower,
            dl,
            dr,
            dw,
            dg,
        }
    }

    /// Structure-constant bracket of two floating coordinate columns.
    fn bracket(&self, x: &Mat<C64>, y: &Mat<C64>) -> Mat<C64> {
        let mut out = Mat::zeros(self.dg, 1);
        for i in 0..self.dg {
            let xi = *x.get(i, 0);
            if xi == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..self.dg {
                let c = xi * *y.get(j, 0);
                out = &out + &self.brackets[i][j].scale(&c);
            }
        }
        out
    }

    /// Higgs-current coordinates 𝕁_{YMH}(u₁, u₂): the 𝔤-column representing
    /// a ↦ 2 Re⟨ϱ_W*(a)u₁, u₂⟩ against the pairing Gram matrix.
    fn ymh(&self, u1: &Mat<C64>, u2: &Mat<C64>) -> Mat<C64> {
        let mut raw = Mat::zeros(self.dg, 1);
        let two = C64::new(2.0, 0.0);
        for (g, img) in self.images_w.iter().enumerate() {
            let v = *u1.dagger().matmul(img).matmul(u2).get(0, 0) * two;
            raw.set(g, 0, C64::new(v.re, 0.0));
        }
        self.gram_inv.matmul(&raw)
    }

    /// The ℝ-linear Yukawa matrix Y(υ) ∈ d_L×d_R.
    fn y_of(&self, upsilon: &Mat<C64>) -> Mat<C64> {
        let mut y = Mat::zeros(self.dl, self.dr);
        for l in 0..self.dl {
            for r in 0..self.dr {
                let mut acc = C64::new(0.0, 0.0);
                for m in 0..self.dw {
                    let z = *upsilon.get(m, 0);
                    acc += self.yuk[l][m][r] * C64::new(z.re, 0.0);
                    acc += self.yuk[l][m + self.dw][r] * C64::new(z.im, 0.0);
                }
                y.set(l, r, acc);
            }
        }
        y
    }

    /// Yukawa current into the left flavor block: g_Y · u_R · Y(υ)ᵀ, embedded
    /// into a full 4×(d_L+d_R) amplitude (right block zero).
    fn yh_left(&self, upsilon: &Mat<C64>, spinor: &Mat<C64>) -> Mat<C64> {
        let y_t = self.y_of(upsilon).transpose();
        let mut out = Mat::zeros(4, self.dl + self.dr);
        for row in 0..4 {
            for c in 0..self.dl {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..self.dr {
                    acc += *spinor.get(row, self.dl + k) * *y_t.get(k, c);
                }
                out.set(row, c, acc * self.g_y);
            }
        }
        out
    }

    /// Yukawa current into the right flavor block: g_Y · u_L · conj(Y(υ)),
    /// embedded into a full amplitude (left block zero).
    fn yh_right(&self, spinor: &Mat<C64>, upsilon: &Mat<C64>) -> Mat<C64> {
        let y_c = self.y_of(upsilon).conj();
        let mut out = Mat::zeros(4, self.dl + self.dr);
        for row in 0..4 {
            for c in 0..self.dr {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..self.dl {
                    acc += *spinor.get(row, k) * *y_c.get(k, c);
                }
                out.set(row, self.dl + c, acc * self.g_y);
            }
        }
        out
    }
}

#[derive(Clone)]
struct SystemState {
    s: Mat<C64>,
    w: [Mat<C64>; 4],
    u: Mat<C64>,
}

impl SystemState {
    fn axpy(&self, c: f64, d: &SystemState) -> SystemState {
        let cc = C64::new(c, 0.0);
        SystemState {
            s: &self.s + &d.s.scale(&cc),
            w: std::array::from_fn(|b| &self.w[b] + &d.w[b].scale(&cc)),
            u: &self.u + &d.u.scale(&cc),
        }
    }
}

/// Transport the principal-symbol triple (ς, w, υ) along a lightlike ray
/// through polynomial background fields (ψ, A, Φ):
///
/// * ς̇ + ς·ϱ_V*(A_γ(γ̇))ᵀ + ½ Σ_β (iΓᵝ)(γ̇·ψ)·ϱ_V*(w_β)ᵀ
///     + ½(Yukawa currents of (υ, γ̇·ψ)) = 0,
/// * ẇ_β + [A_γ(γ̇), w_β] − ½ γ̇_β 𝕁_{YMH}(υ, Φ) = 0,
/// * υ̇ + ϱ_W*(A_γ(γ̇))υ = 0,
///
/// integrated with `steps` fourth-order steps from the ray start to
/// parameter `t`. The spinor amplitude lives in the same chirality sector as
/// the background field ψ; the returned triple is re-attached at (γ(t), ξ).
pub fn transport_system(
    initial: &SymbolTriple,
    gamma: &LightRay,
    backgrounds: &FieldTriple,
    ctx: &ModelContext,
    t: f64,
    steps: usize,
) -> Result<SymbolTriple, MicrolocalError> {
    assert!(steps > 0, "at least one integration step");
    assert_eq!(initial.varsigma.dim_l(), ctx.dim_l(), "left flavor dimension");
    assert_eq!(initial.varsigma.dim_r(), ctx.dim_r(), "right flavor dimension");
    assert_eq!(
        initial.varsigma.sector(),
        backgrounds.psi.sector(),
        "symbol and background spinors share a sector"
    );
    assert_eq!(initial.upsilon.rows(), ctx.dim_w(), "Higgs symbol dimension");
    for slot in &initial.w {
        assert_eq!(slot.rows(), ctx.dim_g(), "connection symbol dimension");
    }
    check_time(t, gamma)?;

    let tables = SystemTables::new(ctx, gamma);
    let pulled = PulledGauge::new(&backgrounds.a, gamma);
    let psi_poly = poly_to_c64(backgrounds.psi.poly());
    let phi_poly = poly_to_c64(&backgrounds.phi);
    let half = C64::new(0.5, 0.0);
    let minus = C64::new(-1.0, 0.0);

    let derivative = |u_param: f64, state: &SystemState| -> SystemState {
        let x = point_c64(&gamma.point(u_param));
        let a_coords = pulled.coords_at(&x);
        let psi_val = psi_poly.eval(&x);
        let phi_val = phi_poly.eval(&x);
        let vpsi = tables.vel_dot.matmul(&psi_val);

        // ς̇ = −[ς ϱᵀ + ½ Σ_β iΓᵝ (γ̇·ψ) ϱ(w_β)ᵀ + ½ (Yukawa currents)]
        let rho_v_t = act_c64(&tables.images_v, &a_coords).transpose();
        let mut s_rhs = state.s.matmul(&rho_v_t);
        for beta in 0..4 {
            let flavored = act_c64(&tables.images_v, &state.w[beta]).transpose();
            s_rhs = &s_rhs + &tables.igamma_upper[beta].matmul(&vpsi).matmul(&flavored).scale(&half);
        }
        let yukawa =
            &tables.yh_left(&state.u, &vpsi) + &tables.yh_right(&vpsi, &state.u);
        s_rhs = &s_rhs + &yukawa.scale(&half);

        // ẇ_β = −[A_γ(γ̇), w_β] + ½ γ̇_β 𝕁_{YMH}(υ, Φ)
        let current = tables.ymh(&state.u, &phi_val);
        let w_rhs: [Mat<C64>; 4] = std::array::from_fn(|beta| {
            let drift = tables.bracket(&a_coords, &state.w[beta]).scale(&minus);
            &drift + &current.scale(&C64::new(0.5 * tables.vel_lower[beta], 0.0))
        });

        // υ̇ = −ϱ_W*(A_γ(γ̇)) υ
        let u_rhs = act_c64(&tables.images_w, &a_coords).matmul(&state.u).scale(&minus);

        SystemState { s: s_rhs.scale(&minus), w: w_rhs, u: u_rhs }
    };

    let mut state = SystemState {
        s: initial.varsigma.mat().clone(),
        w: initial.w.clone(),
        u: initial.upsilon.clone(),
    };
    let h = t / steps as f64;
    for step in 0..steps {
        let t0 = step as f64 * h;
        let k1 = derivative(t0, &state);
        let k2 = derivative(t0 + 0.5 * h, &state.axpy(0.5 * h, &k1));
        let k3 = derivative(t0 + 0.5 * h, &state.axpy(0.5 * h, &k2));
        let k4 = derivative(t0 + h, &state.axpy(h, &k3));
        state = state
            .axpy(h / 6.0, &k1)
            .axpy(h / 3.0, &k2)
            .axpy(h / 3.0, &k3)
            .axpy(h / 6.0, &k4);
    }
    ensure_finite(&state.s)?;
    ensure_finite(&state.u)?;
    for slot in &state.w {
        ensure_finite(slot)?;
    }

    Ok(SymbolTriple {
        varsigma: TwistedSpinor::new(
            initial.varsigma.sector(),
            ctx.dim_l(),
            ctx.dim_r(),
            state.s,
        ),
        w: state.w,
        upsilon: state.u,
        point: gamma.point(t),
        covector: four_f64(gamma.covector()),
    })
}

/// Closed-form spinor symbol for a reduced transport problem: when the
/// connection symbol is w_β = ω_β·b with b a *central* algebra element, the
/// Higgs symbol vanishes, and ς(0) = 0, the transported spinor amplitude is
///
///   ς(t) = −½ (iω_αΓᵅ)(iγ̇ᵃΓ_a) I_γ(t) ϱ_V*(b)ᵀ,
///
/// with I_γ the truncated ray transform of the background ψ. Centrality is
/// what lets ϱ_V*(b) slide through the transports; a non-central b is
/// rejected with [`MicrolocalError::NotCentral`].
pub fn symbol_transport_closed_form(
    ctx: &ModelContext,
    b: &Mat<Cq>,
    omega: &[R; 4],
    gamma: &LightRay,
    psi: &SpinorField,
    a: &PolyForm<Cq>,
    t: f64,
    nodes: usize,
) -> Result<TwistedSpinor<C64>, MicrolocalError> {
    assert_eq!(b.rows(), ctx.dim_g(), "flavor coordinates match the algebra");
    assert_eq!(b.cols(), 1, "flavor coordinates form a column");
    let alg = ctx.algebra();
    for g in 0..ctx.dim_g() {
        let mut unit = Mat::zeros(ctx.dim_g(), 1);
        unit.set(g, 0, <Cq as Scalar>::from_i64(1));
        if !alg.bracket(b, &unit).is_exactly_zero() {
            return Err(MicrolocalError::NotCentral);
        }
    }

    let transform = ray_transform(psi, a, gamma, ctx.rep_v(), t, nodes)?;
    let gammas = GammaSet::<C64>::new();
    let mut omega_dot = Mat::zeros(4, 4);
    for alpha in 0..4 {
        let w = rat_f64(&omega[alpha]);
        if w != 0.0 {
            omega_dot = &omega_dot + &gammas.gamma(alpha, Variance::Upper).scale(&C64::new(0.0, w));
        }
    }
    let vel = gamma.velocity_f64();
    let mut vel_dot = Mat::zeros(4, 4);
    for a_idx in 0..4 {
        if vel[a_idx] != 0.0 {
            vel_dot =
                &vel_dot + &gammas.gamma(a_idx, Variance::Lower).scale(&C64::new(0.0, vel[a_idx]));
        }
    }
    let flavor_t = ctx.rep_v().action(b).map(cq_to_c64).transpose();
    let mat = omega_dot
        .matmul(&vel_dot)
        .matmul(&transform)
        .matmul(&flavor_t)
        .scale(&C64::new(-0.5, 0.0));
    ensure_finite(&mat)?;
    Ok(TwistedSpinor::new(psi.sector(), psi.dim_l(), psi.dim_r(), mat))
}

/// Temporal-gauge projection of a one-form symbol at frequency η: replaces
/// w by w − (w₀/η₀)·η, which kills the time slot while changing w only along
/// the gauge-orbit direction η. The time slot of the result is set to zero
/// identically; a vanishing η₀ is rejected since the projection divides by it.
pub fn temporal_symbol_projection<S: Scalar>(
    w: &[Mat<S>; 4],
    eta: &[S; 4],
) -> Result<[Mat<S>; 4], MicrolocalError> {
    let inv0 = match eta[0].try_inv() {
        Some(v) if !eta[0].is_exactly_zero() => v,
        _ => return Err(MicrolocalError::ZeroTimeComponent),
    };
    let (rows, cols) = (w[0].rows(), w[0].cols());
    for slot in w {
        assert!(slot.rows() == rows && slot.cols() == cols, "uniform symbol shape");
    }
    Ok(std::array::from_fn(|beta| {
        if beta == 0 {
            Mat::zeros(rows, cols)
        } else {
            let factor = eta[beta].clone() * inv0.clone();
            &w[beta] - &w[0].scale(&factor)
        }
    }))
}
