//! The causal diamond, the probe region, lightlike rays, and the κ-weighted
//! decomposition of an outgoing frequency into three incoming ones.
//!
//! All geometry is exact: opening parameters enter as [`SqrtPair`]s so that
//! a(u) = √(1−u²) is a rational number, every covector is rational, and all
//! structural identities (lightlikeness, η = Σκ₍ᵢ₎ξ₍ᵢ₎, ω·ξ = 0) are checked
//! with exact arithmetic. A floating κ evaluator and a jet-form κ are provided
//! for the asymptotic machinery.

use super::MicrolocalError;
use crate::mathkit::jets::{sqrt_one_minus_sq, JetError, JetWindow, LaurentTaylorJet};
use crate::mathkit::scalar::{q, Cq};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type R = BigRational;

/// Metric signs of g = diag(−1, 1, 1, 1) (equal to those of its inverse).
pub(crate) use crate::clifford::gamma::metric_sign;

/// An exact point on the unit circle: (value, root) with value² + root² = 1
/// and root ≥ 0, standing for root = √(1 − value²).
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtPair {
    value: R,
    root: R,
}

impl SqrtPair {
    pub fn new(value: R, root: R) -> Result<Self, MicrolocalError> {
        if root.is_negative() || &value * &value + &root * &root != R::one() {
            return Err(MicrolocalError::NotUnitPair {
                value: value.to_string(),
                root: root.to_string(),
            });
        }
        Ok(SqrtPair { value, root })
    }

    /// The rational unit pair (2t/(1+t²), (1−t²)/(1+t²)), |t| ≤ 1; a rational
    /// parameterization producing arbitrarily small exact opening parameters.
    pub fn from_parameter(t: &R) -> Result<Self, MicrolocalError> {
        if t.abs() > R::one() {
            return Err(MicrolocalError::OutOfRange {
                what: format!("unit-pair parameter |t| ≤ 1 required, got {t}"),
            });
        }
        let denom = R::one() + t * t;
        SqrtPair::new(q(2, 1) * t / &denom, (R::one() - t * t) / &denom)
    }

    /// The parameter u itself.
    pub fn value(&self) -> &R {
        &self.value
    }

    /// The exact root a(u) = √(1 − u²).
    pub fn root(&self) -> &R {
        &self.root
    }

    /// Mirror image u ↦ −u (the root is unchanged).
    pub fn neg(&self) -> Self {
        SqrtPair { value: -self.value.clone(), root: self.root.clone() }
    }
}

/// κ coefficients from exact unit pairs; the three weights splitting the
/// outgoing frequency over the incoming rays. Pole at s = 0.
pub fn kappa_exact(r: &SqrtPair, s: &SqrtPair) -> Result<[R; 3], MicrolocalError> {
    if s.value().is_zero() {
        return Err(MicrolocalError::PoleAtS0);
    }
    let one = R::one();
    let opar = &one + r.root(); // 1 + a(r)
    let omas = &one - s.root(); // 1 − a(s)
    if omas.is_zero() {
        return Err(MicrolocalError::PoleAtS0);
    }
    let ratio = &opar / &omas;
    let half_ratio = &ratio / q(2, 1);
    let tilt = r.value() / (q(2, 1) * s.value()); // r/(2s)
    Ok([&one - &ratio, &half_ratio + &tilt, &half_ratio - &tilt])
}

/// Floating-point κ evaluation at raw (r, s) with a(u) = √(1−u²) from `sqrt`.
pub fn kappa_numeric(r: f64, s: f64) -> Result<[f64; 3], MicrolocalError> {
    if s == 0.0 {
        return Err(MicrolocalError::PoleAtS0);
    }
    if !(0.0..1.0).contains(&s.abs()) || r.abs() >= 1.0 {
        return Err(MicrolocalError::OutOfRange {
            what: format!("need 0 < |s| < 1 and |r| < 1, got (r, s) = ({r}, {s})"),
        });
    }
    let a = |u: f64| (1.0 - u * u).sqrt();
    let ratio = (1.0 + a(r)) / (1.0 - a(s));
    let tilt = r / (2.0 * s);
    Ok([1.0 - ratio, 0.5 * ratio + tilt, 0.5 * ratio - tilt])
}

/// κ as exact Laurent(s)–Taylor(r) jets: κ₁ opens with −4s⁻², and κ₂, κ₃
/// carry the r/(2s) tilt term.
pub fn kappa_jets(window: JetWindow) -> Result<[LaurentTaylorJet; 3], JetError> {
    let one = LaurentTaylorJet::one(1, window);
    let a_s = sqrt_one_minus_sq(window, false);
    let a_r = sqrt_one_minus_sq(window, true);
    let inv_omas = one.sub(&a_s).invert()?; // 1/(1 − a(s)) = 2s⁻² − 1/2 − …
    let ratio = one.add(&a_r).mul(&inv_omas)?;
    let half_ratio = ratio.scale(&<Cq as crate::mathkit::scalar::Scalar>::from_ratio(1, 2));
    let tilt = LaurentTaylorJet::scalar_monomial(
        <Cq as crate::mathkit::scalar::Scalar>::from_ratio(1, 2),
        -1,
        1,
        window,
    );
    Ok([one.sub(&ratio), half_ratio.add(&tilt), half_ratio.sub(&tilt)])
}

/// The causal diamond 𝔻 = {|x| ≤ t + 1 and |x| ≤ 1 − t}, its probe region
/// ℧ = int 𝔻 ∩ {|x| < ε₀}, and the past lightlike boundary ∂⁻𝔻 = {|x| = t+1}.
///
/// Membership tests compare squared spatial norms against squared bounds, so
/// they are exact over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct CausalDomain {
    eps0: R,
}

fn spatial_sq(p: &[R; 4]) -> R {
    &p[1] * &p[1] + &p[2] * &p[2] + &p[3] * &p[3]
}

impl CausalDomain {
    pub fn new(eps0: R) -> Result<Self, MicrolocalError> {
        if !eps0.is_positive() || eps0 >= R::one() {
            return Err(MicrolocalError::OutOfRange {
                what: format!("ε₀ must lie in (0, 1), got {eps0}"),
            });
        }
        Ok(CausalDomain { eps0 })
    }

    pub fn eps0(&self) -> &R {
        &self.eps0
    }

    /// |x| ≤ t + 1 and |x| ≤ 1 − t.
    pub fn contains(&self, p: &[R; 4]) -> bool {
        let up = R::one() + &p[0];
        let down = R::one() - &p[0];
        let xx = spatial_sq(p);
        !up.is_negative() && !down.is_negative() && xx <= &up * &up && xx <= &down * &down
    }

    /// Strict versions of both diamond inequalities.
    pub fn contains_interior(&self, p: &[R; 4]) -> bool {
        let up = R::one() + &p[0];
        let down = R::one() - &p[0];
        let xx = spatial_sq(p);
        up.is_positive() && down.is_positive() && xx < &up * &up && xx < &down * &down
    }

    /// ℧: interior of 𝔻 with |x| < ε₀.
    pub fn contains_probe(&self, p: &[R; 4]) -> bool {
        self.contains_interior(p) && spatial_sq(p) < &self.eps0 * &self.eps0
    }

    /// ∂⁻𝔻: |x| = t + 1 within the diamond.
    pub fn on_past_boundary(&self, p: &[R; 4]) -> bool {
        let up = R::one() + &p[0];
        !up.is_negative() && spatial_sq(p) == &up * &up && self.contains(p)
    }
}

/// Parameterization mode of a lightlike ray of length ℓ.
///
/// Incoming rays run from the probe region to the interaction point,
/// γ(t) = y + (ℓ−t)ξ^♯ with γ(ℓ) = y; outgoing rays run from the interaction
/// point back out, γ(t) = y − tξ^♯ with γ(0) = y.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayMode {
    Incoming,
    Outgoing,
}

/// A lightlike ray: anchor point y, exact lightlike covector ξ, a
/// parameterization mode, and a length ℓ. The velocity is γ̇ = −ξ^♯ in both
/// modes.
#[derive(Clone, Debug, PartialEq)]
pub struct LightRay {
    y: [R; 4],
    xi: [R; 4],
    mode: RayMode,
    ell: R,
}

/// Index raise through g⁻¹ = diag(−1, 1, 1, 1).
pub(crate) fn sharp(xi: &[R; 4]) -> [R; 4] {
    [-xi[0].clone(), xi[1].clone(), xi[2].clone(), xi[3].clone()]
}

/// ⟨ξ, ξ⟩ = −ξ₀² + ξ₁² + ξ₂² + ξ₃² (covectors against g⁻¹; the same
/// expression serves vectors against g).
pub(crate) fn minkowski_sq(xi: &[R; 4]) -> R {
    let mut acc = R::zero();
    for (alpha, c) in xi.iter().enumerate() {
        acc += q(metric_sign(alpha), 1) * c * c;
    }
    acc
}

impl LightRay {
    pub fn new(y: [R; 4], xi: [R; 4], mode: RayMode, ell: R) -> Result<Self, MicrolocalError> {
        if !minkowski_sq(&xi).is_zero() {
            return Err(MicrolocalError::NotLightlike { label: format!("{xi:?}") });
        }
        if !ell.is_positive() {
            return Err(MicrolocalError::OutOfRange {
                what: format!("ray length must be positive, got {ell}"),
            });
        }
        Ok(LightRay { y, xi, mode, ell })
    }

    pub fn base(&self) -> &[R; 4] {
        &self.y
    }

    pub fn covector(&self) -> &[R; 4] {
        &self.xi
    }

    pub fn mode(&self) -> RayMode {
        self.mode
    }

    pub fn length(&self) -> &R {
        &self.ell
    }

    /// γ̇ = −ξ^♯, constant along the ray (upper/vector components).
    pub fn velocity(&self) -> [R; 4] {
        let sh = sharp(&self.xi);
        [-sh[0].clone(), -sh[1].clone(), -sh[2].clone(), -sh[3].clone()]
    }

    pub fn velocity_f64(&self) -> [f64; 4] {
        let v = self.velocity();
        [to_f64(&v[0]), to_f64(&v[1]), to_f64(&v[2]), to_f64(&v[3])]
    }

    /// γ(t) with exact rational parameter.
    pub fn point_exact(&self, t: &R) -> [R; 4] {
        let sh = sharp(&self.xi);
        let factor = match self.mode {
            RayMode::Incoming => &self.ell - t,
            RayMode::Outgoing => -t.clone(),
        };
        std::array::from_fn(|a| &self.y[a] + &factor * &sh[a])
    }

    /// γ(t) in floating point.
    pub fn point(&self, t: f64) -> [f64; 4] {
        let sh = sharp(&self.xi);
        let factor = match self.mode {
            RayMode::Incoming => to_f64(&self.ell) - t,
            RayMode::Outgoing => -t,
        };
        std::array::from_fn(|a| to_f64(&self.y[a]) + factor * to_f64(&sh[a]))
    }
}

pub(crate) fn to_f64(x: &R) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn to_cq(x: &R) -> Cq {
    Cq::new(x.clone(), R::zero())
}

pub(crate) fn to_cq4(p: &[R; 4]) -> [Cq; 4] {
    std::array::from_fn(|a| to_cq(&p[a]))
}

/// One interaction configuration: three incoming lightlike covectors ξ₍ⱼ₎
/// with polarization covectors ω₍ⱼ₎, the outgoing lightlike covector η with
/// its exact decomposition η = Σ κ₍ⱼ₎ξ₍ⱼ₎, the interaction point y, and the
/// ray endpoints in the probe region.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionGeometry {
    y: [R; 4],
    ell: R,
    r: SqrtPair,
    s: SqrtPair,
    xi: [[R; 4]; 3],
    omega: [[R; 4]; 3],
    kappa: [R; 3],
    eta_single: [[R; 4]; 3],
    eta: [R; 4],
    endpoints: [[R; 4]; 3],
    z: [R; 4],
}

/// Build and validate the full configuration.
///
/// ξ₍₁₎ = (1,1,0,0), ξ₍₂₎ = (1,a(s),s,0), ξ₍₃₎ = (1,a(s),−s,0),
/// η = (1,−a(r),r,0), ω₍₁₎ = dx², ω₍₂₎ = s dx⁰ + dx², ω₍₃₎ = −s dx⁰ + dx².
/// Endpoints x₍ⱼ₎ = y + ℓξ₍ⱼ₎^♯ and z = y − ℓη^♯ must land in ℧, and y in 𝔻.
pub fn build_geometry(
    y: [R; 4],
    ell: R,
    r: SqrtPair,
    s: SqrtPair,
    domain: &CausalDomain,
) -> Result<InteractionGeometry, MicrolocalError> {
    if !s.value().is_positive() || s.root().is_zero() {
        return Err(MicrolocalError::OutOfRange {
            what: format!("need 0 < s < 1, got s = {}", s.value()),
        });
    }
    if r.root().is_zero() {
        return Err(MicrolocalError::OutOfRange {
            what: format!("need |r| < 1, got r = {}", r.value()),
        });
    }
    let one = R::one();
    let zero = R::zero();
    let a_s = s.root().clone();
    let a_r = r.root().clone();
    let xi: [[R; 4]; 3] = [
        [one.clone(), one.clone(), zero.clone(), zero.clone()],
        [one.clone(), a_s.clone(), s.value().clone(), zero.clone()],
        [one.clone(), a_s.clone(), -s.value().clone(), zero.clone()],
    ];
    let omega: [[R; 4]; 3] = [
        [zero.clone(), zero.clone(), one.clone(), zero.clone()],
        [s.value().clone(), zero.clone(), one.clone(), zero.clone()],
        [-s.value().clone(), zero.clone(), one.clone(), zero.clone()],
    ];
    let kappa = kappa_exact(&r, &s)?;
    let eta_single: [[R; 4]; 3] =
        std::array::from_fn(|j| std::array::from_fn(|a| &kappa[j] * &xi[j][a]));
    let eta: [R; 4] = [one.clone(), -a_r.clone(), r.value().clone(), zero.clone()];

    // Structural identities; these hold by construction and are re-checked
    // exactly so a bad edit cannot ship a corrupt configuration.
    for (label, cov) in
        xi.iter().enumerate().map(|(j, c)| (format!("ξ({})", j + 1), c)).chain(std::iter::once((
            "η".to_string(),
            &eta,
        )))
    {
        if !minkowski_sq(cov).is_zero() {
            return Err(MicrolocalError::NotLightlike { label });
        }
    }
    for a in 0..4 {
        let sum = &eta_single[0][a] + &eta_single[1][a] + &eta_single[2][a];
        assert_eq!(sum, eta[a], "η decomposition must be exact in component {a}");
    }
    for j in 0..3 {
        let mut pairing = R::zero();
        for a in 0..4 {
            pairing += q(metric_sign(a), 1) * &omega[j][a] * &xi[j][a];
        }
        assert!(pairing.is_zero(), "polarization ω({}) must annihilate ξ({})", j + 1, j + 1);
    }

    let eta_sharp = sharp(&eta);
    let endpoints: [[R; 4]; 3] = std::array::from_fn(|j| {
        let sh = sharp(&xi[j]);
        std::array::from_fn(|a| &y[a] + &ell * &sh[a])
    });
    let z: [R; 4] = std::array::from_fn(|a| &y[a] - &ell * &eta_sharp[a]);

    if !domain.contains(&y) {
        return Err(membership_err("interaction point y ∈ 𝔻", &y));
    }
    for (j, x) in endpoints.iter().enumerate() {
        if !domain.contains_probe(x) {
            return Err(membership_err(&format!("ray endpoint x({}) ∈ ℧", j + 1), x));
        }
    }
    if !domain.contains_probe(&z) {
        return Err(membership_err("outgoing endpoint z ∈ ℧", &z));
    }

    Ok(InteractionGeometry { y, ell, r, s, xi, omega, kappa, eta_single, eta, endpoints, z })
}

fn membership_err(requirement: &str, p: &[R; 4]) -> MicrolocalError {
    MicrolocalError::Membership {
        requirement: requirement.to_string(),
        point: format!(
            "({:.4}, {:.4}, {:.4}, {:.4})",
            to_f64(&p[0]),
            to_f64(&p[1]),
            to_f64(&p[2]),
            to_f64(&p[3])
        ),
    }
}

impl InteractionGeometry {
    pub fn y(&self) -> &[R; 4] {
        &self.y
    }

    pub fn length(&self) -> &R {
        &self.ell
    }

    pub fn r(&self) -> &SqrtPair {
        &self.r
    }

    pub fn s(&self) -> &SqrtPair {
        &self.s
    }

    /// ξ₍ⱼ₎ for j ∈ {1, 2, 3} (1-based as in the construction).
    pub fn xi(&self, j: usize) -> &[R; 4] {
        &self.xi[j - 1]
    }

    pub fn omega(&self, j: usize) -> &[R; 4] {
        &self.omega[j - 1]
    }

    pub fn kappa(&self) -> &[R; 3] {
        &self.kappa
    }

    /// η₍ⱼ₎ = κ₍ⱼ₎ ξ₍ⱼ₎.
    pub fn eta_single(&self, j: usize) -> &[R; 4] {
        &self.eta_single[j - 1]
    }

    /// η₍ₖₗ₎ = η₍ₖ₎ + η₍ₗ₎.
    pub fn eta_pair(&self, k: usize, l: usize) -> [R; 4] {
        std::array::from_fn(|a| &self.eta_single[k - 1][a] + &self.eta_single[l - 1][a])
    }

    pub fn eta(&self) -> &[R; 4] {
        &self.eta
    }

    /// Incoming-ray endpoint x₍ⱼ₎ = y + ℓξ₍ⱼ₎^♯ ∈ ℧.
    pub fn endpoint(&self, j: usize) -> &[R; 4] {
        &self.endpoints[j - 1]
    }

    /// Outgoing endpoint z = y − ℓη^♯ ∈ ℧.
    pub fn z(&self) -> &[R; 4] {
        &self.z
    }

    /// The incoming ray γ₍ⱼ₎ with γ(0) = x₍ⱼ₎ and γ(ℓ) = y.
    pub fn ray(&self, j: usize) -> LightRay {
        LightRay::new(
            self.y.clone(),
            self.xi[j - 1].clone(),
            RayMode::Incoming,
            self.ell.clone(),
        )
        .expect("validated geometry covectors are lightlike")
    }

    /// The outgoing ray γ₍₄₎ with γ(0) = y and γ(ℓ) = z.
    pub fn outgoing_ray(&self) -> LightRay {
        LightRay::new(self.y.clone(), self.eta.clone(), RayMode::Outgoing, self.ell.clone())
            .expect("validated geometry covectors are lightlike")
    }
}
