//! Field containers: chiral twisted-spinor fields, field triples (ψ, A, Φ),
//! Euler–Lagrange source tuples, gauge transforms with polynomial exponent,
//! and the model context bundling the group data every operator needs.

use crate::clifford::gamma::GammaSet;
use crate::clifford::spinor::{Sector, TwistedSpinor};
use crate::fieldtheory::forms::PolyForm;
use crate::fieldtheory::yukawa::YukawaForm;
use crate::liealg::algebra::LieAlgebra;
use crate::liealg::rep::Representation;
use crate::mathkit::mat::Mat;
use crate::mathkit::poly::SpacetimePoly;
use crate::mathkit::scalar::{q, Cq, Scalar};
use crate::sampling::SampleRng;
use thiserror::Error;

/// Pointed-gauge base point p = (−1, 0, 0, 0).
pub const BASE_POINT: [i64; 4] = [-1, 0, 0, 0];

/// Tolerance for the pointed-gauge condition U(p) = id.
pub const BASE_POINT_TOL: f64 = 1e-12;

#[derive(Error, Debug)]
pub enum FieldError {
    #[error("field shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },
    #[error("spinor field violates its chirality support pattern (defect {defect:.3e})")]
    ChiralityViolation { defect: f64 },
    #[error("representation on V carries no chiral split")]
    MissingChiralSplit,
    #[error("representations act for different algebras")]
    AlgebraMismatch,
    #[error("Yukawa coefficient array does not match (dim V_L, dim W, dim V_R)")]
    YukawaShape,
    #[error("Yukawa form violates gauge invariance (residual {residual:.3e})")]
    YukawaNotInvariant { residual: f64 },
    #[error("algebra inner-product Gram matrix is singular")]
    SingularGram,
    #[error("gauge exponent does not vanish at the base point (|ξ(p)| = {defect:.3e})")]
    NotPointed { defect: f64 },
    #[error("unknown perturbation-operator tag `{0}`")]
    UnknownTag(String),
    #[error("linearization level must be 1, 2 or 3 (got {0})")]
    InvalidLevel(u8),
    #[error("missing linearized field {0} for the requested level")]
    MissingLinearizedField(String),
}

/// A twisted-spinor-valued polynomial field: a 4×(d_L+d_R) polynomial whose
/// support respects the chirality sector at every point (for `Plus`, the V_L
/// columns live in the left-handed rows 0–1 and the V_R columns in rows 2–3;
/// `Minus` is crossed).
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    poly: SpacetimePoly<Cq>,
    sector: Sector,
    dim_l: usize,
    dim_r: usize,
}

impl SpinorField {
    pub fn new(
        poly: SpacetimePoly<Cq>,
        sector: Sector,
        dim_l: usize,
        dim_r: usize,
    ) -> Result<Self, FieldError> {
        if poly.rows() != 4 || poly.cols() != dim_l + dim_r {
            return Err(FieldError::ShapeMismatch {
                expected: format!("4×{}", dim_l + dim_r),
                got: format!("{}×{}", poly.rows(), poly.cols()),
            });
        }
        let f = SpinorField { poly, sector, dim_l, dim_r };
        let defect = f.support_defect();
        if defect != 0.0 {
            return Err(FieldError::ChiralityViolation { defect });
        }
        Ok(f)
    }

    pub fn zero(sector: Sector, dim_l: usize, dim_r: usize) -> Self {
        SpinorField { poly: SpacetimePoly::zero(4, dim_l + dim_r), sector, dim_l, dim_r }
    }

    /// Assemble from the two Weyl blocks: `left` is 2×d_L (the V_L columns),
    /// `right` is 2×d_R; the sector decides which spinor rows they occupy.
    pub fn from_weyl_blocks(
        sector: Sector,
        left: &SpacetimePoly<Cq>,
        right: &SpacetimePoly<Cq>,
    ) -> Self {
        assert!(left.rows() == 2 && right.rows() == 2, "Weyl blocks have 2 spinor rows");
        let (dim_l, dim_r) = (left.cols(), right.cols());
        let (l_row0, r_row0) = match sector {
            Sector::Plus => (0usize, 2usize),
            Sector::Minus => (2, 0),
        };
        let mut poly = SpacetimePoly::zero(4, dim_l + dim_r);
        for (block, row0, col0, cols) in
            [(left, l_row0, 0usize, dim_l), (right, r_row0, dim_l, dim_r)]
        {
            let embedded = block.map_coeffs_to(4, dim_l + dim_r, |m| {
                let mut out = Mat::zeros(4, dim_l + dim_r);
                for r in 0..2 {
                    for c in 0..cols {
                        out.set(row0 + r, col0 + c, m.get(r, c).clone());
                    }
                }
                out
            });
            poly = &poly + &embedded;
        }
        SpinorField { poly, sector, dim_l, dim_r }
    }

    /// Magnitude of the largest coefficient sitting outside the sector's
    /// allowed blocks (0.0 for a well-formed field).
    pub fn support_defect(&self) -> f64 {
        let (l_row0, r_row0) = match self.sector {
            Sector::Plus => (0usize, 2usize),
            Sector::Minus => (2, 0),
        };
        let mut defect = 0.0f64;
        for (_, coeff) in self.poly.terms() {
            for r in 0..4 {
                for c in 0..self.dim_l + self.dim_r {
                    let allowed_row0 = if c < self.dim_l { l_row0 } else { r_row0 };
                    if r != allowed_row0 && r != allowed_row0 + 1 {
                        defect = defect.max(coeff.get(r, c).mag());
                    }
                }
            }
        }
        defect
    }

    pub fn poly(&self) -> &SpacetimePoly<Cq> {
        &self.poly
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn dim_l(&self) -> usize {
        self.dim_l
    }

    pub fn dim_r(&self) -> usize {
        self.dim_r
    }

    /// Flavor projection: zero out the V_R columns.
    pub fn flavor_l(&self) -> Self {
        self.zero_columns(self.dim_l, self.dim_l + self.dim_r)
    }

    /// Flavor projection: zero out the V_L columns.
    pub fn flavor_r(&self) -> Self {
        self.zero_columns(0, self.dim_l)
    }

    fn zero_columns(&self, from: usize, to: usize) -> Self {
        let poly = self.poly.map_coeffs(|m| {
            let mut out = m.clone();
            for r in 0..4 {
                for c in from..to {
                    out.set(r, c, Cq::from_i64(0));
                }
            }
            out
        });
        SpinorField { poly, ..self.clone() }
    }

    /// The V_L column block as a 4×d_L polynomial.
    pub fn left_cols(&self) -> SpacetimePoly<Cq> {
        let dl = self.dim_l;
        self.poly.map_coeffs_to(4, dl, |m| {
            let mut out = Mat::zeros(4, dl);
            for r in 0..4 {
                for c in 0..dl {
                    out.set(r, c, m.get(r, c).clone());
                }
            }
            out
        })
    }

    /// The V_R column block as a 4×d_R polynomial.
    pub fn right_cols(&self) -> SpacetimePoly<Cq> {
        let (dl, dr) = (self.dim_l, self.dim_r);
        self.poly.map_coeffs_to(4, dr, |m| {
            let mut out = Mat::zeros(4, dr);
            for r in 0..4 {
                for c in 0..dr {
                    out.set(r, c, m.get(r, dl + c).clone());
                }
            }
            out
        })
    }

    /// Rebuild a full-width field from a V_L column block (V_R columns zero).
    pub fn from_left_cols(
        block: &SpacetimePoly<Cq>,
        sector: Sector,
        dim_r: usize,
    ) -> Self {
        let dl = block.cols();
        let poly = block.map_coeffs_to(4, dl + dim_r, |m| {
            let mut out = Mat::zeros(4, dl + dim_r);
            for r in 0..4 {
                for c in 0..dl {
                    out.set(r, c, m.get(r, c).clone());
                }
            }
            out
        });
        SpinorField { poly, sector, dim_l: dl, dim_r }
    }

    /// Rebuild a full-width field from a V_R column block (V_L columns zero).
    pub fn from_right_cols(
        block: &SpacetimePoly<Cq>,
        sector: Sector,
        dim_l: usize,
    ) -> Self {
        let dr = block.cols();
        let poly = block.map_coeffs_to(4, dim_l + dr, |m| {
            let mut out = Mat::zeros(4, dim_l + dr);
            for r in 0..4 {
                for c in 0..dr {
                    out.set(r, dim_l + c, m.get(r, c).clone());
                }
            }
            out
        });
        SpinorField { poly, sector, dim_l, dim_r: dr }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.sector, other.sector, "sector mismatch in spinor sum");
        assert!(self.dim_l == other.dim_l && self.dim_r == other.dim_r, "flavor dims");
        SpinorField { poly: &self.poly + &other.poly, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cq::from_i64(-1)))
    }

    pub fn scale(&self, c: &Cq) -> Self {
        SpinorField { poly: self.poly.scale(c), ..self.clone() }
    }

    /// Left action ψ ↦ Mψ on the spinor index; `flips` records whether M is
    /// an odd product of gamma matrices (which swaps the sector).
    pub fn apply_left(&self, m: &Mat<Cq>, flips: bool) -> Self {
        SpinorField {
            poly: self.poly.map_coeffs(|c| m.matmul(c)),
            sector: if flips { self.sector.flipped() } else { self.sector },
            ..self.clone()
        }
    }

    /// Flavor action ψ ↦ ψ·Bᵀ for a block-diagonal internal matrix B
    /// (coordinates act on the V index, transposed to match row layout).
    pub fn apply_flavor_t(&self, b: &Mat<Cq>) -> Self {
        assert!(
            b.rows() == self.dim_l + self.dim_r && b.cols() == b.rows(),
            "internal matrix dimension"
        );
        let bt = b.transpose();
        SpinorField { poly: self.poly.map_coeffs(|c| c.matmul(&bt)), ..self.clone() }
    }

    pub fn derive(&self, axis: usize) -> Self {
        SpinorField { poly: self.poly.derive(axis), ..self.clone() }
    }

    pub fn eval(&self, x: &[Cq; 4]) -> TwistedSpinor<Cq> {
        TwistedSpinor::new(self.sector, self.dim_l, self.dim_r, self.poly.eval(x))
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.poly.is_exactly_zero()
    }

    pub fn max_coeff_mag(&self) -> f64 {
        self.poly.max_coeff_mag()
    }
}

/// The group data shared by every field operator: the chiral fermion
/// representation ϱ on V = V_L ⊕ V_R, the Higgs representation ρ on W, the
/// Yukawa form, the gamma matrices, and the inverse Gram matrix of the
/// Ad-invariant product (solved once and reused by every Riesz representer).
#[derive(Clone, Debug)]
pub struct ModelContext {
    rep_v: Representation,
    rep_w: Representation,
    yukawa: YukawaForm,
    gammas: GammaSet<Cq>,
    gram_inv: Mat<Cq>,
    dim_l: usize,
    dim_r: usize,
}

impl ModelContext {
    pub fn new(
        rep_v: Representation,
        rep_w: Representation,
        yukawa: YukawaForm,
    ) -> Result<Self, FieldError> {
        let (dim_l, dim_r) =
            rep_v.chiral_split().ok_or(FieldError::MissingChiralSplit)?;
        if rep_v.algebra().dim() != rep_w.algebra().dim() {
            return Err(FieldError::AlgebraMismatch);
        }
        if yukawa.dim_l() != dim_l || yukawa.dim_w() != rep_w.dim() || yukawa.dim_r() != dim_r
        {
            return Err(FieldError::YukawaShape);
        }
        let gram_inv =
            rep_v.algebra().gram().inverse().ok_or(FieldError::SingularGram)?;
        let ctx = ModelContext {
            rep_v,
            rep_w,
            yukawa,
            gammas: GammaSet::new(),
            gram_inv,
            dim_l,
            dim_r,
        };
        let residual = ctx.yukawa_invariance_defect(8, YUKAWA_SAMPLE_SEED);
        if residual > YUKAWA_INVARIANCE_TOL {
            return Err(FieldError::YukawaNotInvariant { residual });
        }
        Ok(ctx)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.rep_v.algebra()
    }

    pub fn rep_v(&self) -> &Representation {
        &self.rep_v
    }

    pub fn rep_w(&self) -> &Representation {
        &self.rep_w
    }

    pub fn yukawa(&self) -> &YukawaForm {
        &self.yukawa
    }

    pub fn gammas(&self) -> &GammaSet<Cq> {
        &self.gammas
    }

    pub fn gram_inv(&self) -> &Mat<Cq> {
        &self.gram_inv
    }

    pub fn dim_g(&self) -> usize {
        self.algebra().dim()
    }

    pub fn dim_l(&self) -> usize {
        self.dim_l
    }

    pub fn dim_r(&self) -> usize {
        self.dim_r
    }

    pub fn dim_v(&self) -> usize {
        self.dim_l + self.dim_r
    }

    pub fn dim_w(&self) -> usize {
        self.rep_w.dim()
    }
}

/// A background or perturbation triple (ψ, A, Φ): a `Plus`-sector spinor
/// field, a Lie-algebra-valued connection 1-form in basis coordinates, and a
/// W-valued Higgs field.
#[derive(Clone, Debug)]
pub struct FieldTriple {
    pub psi: SpinorField,
    pub a: PolyForm<Cq>,
    pub phi: SpacetimePoly<Cq>,
}

impl FieldTriple {
    pub fn new(
        ctx: &ModelContext,
        psi: SpinorField,
        a: PolyForm<Cq>,
        phi: SpacetimePoly<Cq>,
    ) -> Result<Self, FieldError> {
        if psi.sector() != Sector::Plus {
            return Err(FieldError::ShapeMismatch {
                expected: "a + sector spinor field".into(),
                got: "a − sector spinor field".into(),
            });
        }
        if psi.dim_l() != ctx.dim_l() || psi.dim_r() != ctx.dim_r() {
            return Err(FieldError::ShapeMismatch {
                expected: format!("spinor flavors ({}, {})", ctx.dim_l(), ctx.dim_r()),
                got: format!("({}, {})", psi.dim_l(), psi.dim_r()),
            });
        }
        if a.degree() != 1 || a.rows() != ctx.dim_g() || a.cols() != 1 {
            return Err(FieldError::ShapeMismatch {
                expected: format!("𝔤-valued 1-form of coordinate shape {}×1", ctx.dim_g()),
                got: format!("degree-{} form of shape {}×{}", a.degree(), a.rows(), a.cols()),
            });
        }
        if phi.rows() != ctx.dim_w() || phi.cols() != 1 {
            return Err(FieldError::ShapeMismatch {
                expected: format!("W-valued field of shape {}×1", ctx.dim_w()),
                got: format!("{}×{}", phi.rows(), phi.cols()),
            });
        }
        Ok(FieldTriple { psi, a, phi })
    }

    pub fn zero(ctx: &ModelContext) -> Self {
        FieldTriple {
            psi: SpinorField::zero(Sector::Plus, ctx.dim_l(), ctx.dim_r()),
            a: PolyForm::zero(1, ctx.dim_g(), 1),
            phi: SpacetimePoly::zero(ctx.dim_w(), 1),
        }
    }

    /// Deterministic random triple of total polynomial degree ≤ `deg`:
    /// real-coordinate connection, complex Higgs and spinor fields.
    pub fn random(ctx: &ModelContext, rng: &mut SampleRng, deg: u32) -> Self {
        let left = rng.poly_cq(2, ctx.dim_l(), deg);
        let right = rng.poly_cq(2, ctx.dim_r(), deg);
        let psi = SpinorField::from_weyl_blocks(Sector::Plus, &left, &right);
        let mut a = PolyForm::zero(1, ctx.dim_g(), 1);
        for alpha in 0u8..4 {
            a.add_comp(&[alpha], rng.poly_real(ctx.dim_g(), 1, deg));
        }
        let phi = rng.poly_cq(ctx.dim_w(), 1, deg);
        FieldTriple { psi, a, phi }
    }
}

/// Euler–Lagrange sources (𝒦_L, 𝒦_R, 𝒥, ℱ): `Minus`-sector spinor channels,
/// a 𝔤-valued 1-form, and a W-valued field.
#[derive(Clone, Debug)]
pub struct SourceTuple {
    pub k_l: SpinorField,
    pub k_r: SpinorField,
    pub j: PolyForm<Cq>,
    pub f: SpacetimePoly<Cq>,
}

impl SourceTuple {
    pub fn zero(ctx: &ModelContext) -> Self {
        SourceTuple {
            k_l: SpinorField::zero(Sector::Minus, ctx.dim_l(), ctx.dim_r()),
            k_r: SpinorField::zero(Sector::Minus, ctx.dim_l(), ctx.dim_r()),
            j: PolyForm::zero(1, ctx.dim_g(), 1),
            f: SpacetimePoly::zero(ctx.dim_w(), 1),
        }
    }

    /// Largest coefficient magnitude over all four channels.
    pub fn max_coeff_mag(&self) -> f64 {
        self.k_l
            .max_coeff_mag()
            .max(self.k_r.max_coeff_mag())
            .max(self.j.max_coeff_mag())
            .max(self.f.max_coeff_mag())
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.k_l.is_exactly_zero()
            && self.k_r.is_exactly_zero()
            && self.j.is_exactly_zero()
            && self.f.is_exactly_zero()
    }
}

/// A pointed gauge transform 𝐔 = exp(ξ) stored through its algebra-valued
/// polynomial exponent ξ (basis coordinates, real coefficients), with
/// ξ(p) = 0 at the base point p = (−1, 0, 0, 0) so that 𝐔(p) = id. Group
/// and representation exponentials are evaluated by truncated power series
/// of `order` terms, exact in rational arithmetic.
#[derive(Clone, Debug)]
pub struct GaugeTransform {
    xi: SpacetimePoly<Cq>,
    order: usize,
}

impl GaugeTransform {
    pub fn new(xi: SpacetimePoly<Cq>, order: usize) -> Result<Self, FieldError> {
        assert!(xi.cols() == 1, "exponent holds basis coordinates");
        let p = std::array::from_fn(|k| Cq::from_i64(BASE_POINT[k]));
        let defect = xi.eval(&p).max_mag();
        if defect > BASE_POINT_TOL {
            return Err(FieldError::NotPointed { defect });
        }
        Ok(GaugeTransform { xi, order })
    }

    pub fn xi(&self) -> &SpacetimePoly<Cq> {
        &self.xi
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// Tolerance for the sampled Yukawa gauge-invariance identity.
pub const YUKAWA_INVARIANCE_TOL: f64 = 1e-10;

/// Seed for the invariance-defect samples drawn during context validation.
const YUKAWA_SAMPLE_SEED: u64 = 0x59;

impl ModelContext {
    /// Largest residual of the invariance identity
    /// 𝐘(ϱ(X)φ_L, Ψ, φ_R) + 𝐘(φ_L, ρ(X)Ψ, φ_R) + 𝐘(φ_L, Ψ, ϱ(X)φ_R) = 0
    /// over `samples` random constant arguments.
    pub fn yukawa_invariance_defect(&self, samples: usize, seed: u64) -> f64 {
        let mut rng = SampleRng::new(seed);
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let x = rng.mat_cq(self.dim_g(), 1);
            let x = x.map(|z| Cq::new(z.re.clone(), q(0, 1)));
            let u = rng.mat_cq(4, self.dim_l());
            let w = rng.mat_cq(4, self.dim_r());
            let phi = rng.mat_cq(self.dim_w(), 1);
            let act = self.rep_v.action(&x);
            let act_l = submatrix(&act, 0, 0, self.dim_l, self.dim_l);
            let act_r =
                submatrix(&act, self.dim_l, self.dim_l, self.dim_r, self.dim_r);
            let term1 = self.yukawa.coupling_value(
                &self.gammas,
                &u.matmul(&act_l.transpose()),
                &phi,
                &w,
            );
            let term2 = self.yukawa.coupling_value(
                &self.gammas,
                &u,
                &self.rep_w.action(&x).matmul(&phi),
                &w,
            );
            let term3 = self.yukawa.coupling_value(
                &self.gammas,
                &u,
                &phi,
                &w.matmul(&act_r.transpose()),
            );
            worst = worst.max((term1 + term2 + term3).mag());
        }
        worst
    }
}

/// Copy out a square sub-block.
pub(crate) fn submatrix(
    m: &Mat<Cq>,
    row0: usize,
    col0: usize,
    rows: usize,
    cols: usize,
) -> Mat<Cq> {
    let mut out = Mat::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            out.set(r, c, m.get(row0 + r, col0 + c).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_blocks_roundtrip_and_projections() {
        let mut rng = SampleRng::new(0xA0);
        let left = rng.poly_cq(2, 2, 2);
        let right = rng.poly_cq(2, 1, 2);
        let f = SpinorField::from_weyl_blocks(Sector::Plus, &left, &right);
        assert_eq!(f.support_defect(), 0.0);
        assert_eq!((f.dim_l(), f.dim_r()), (2, 1));
        let back = f.flavor_l().add(&f.flavor_r());
        assert!((back.poly() - f.poly()).is_exactly_zero());
        // the − sector places the same blocks in the crossed rows
        let g = SpinorField::from_weyl_blocks(Sector::Minus, &left, &right);
        assert_eq!(g.support_defect(), 0.0);
        let x = [Cq::from_ratio(1, 2), Cq::from_i64(0), Cq::from_i64(1), Cq::from_i64(-1)];
        let fv = f.eval(&x);
        let gv = g.eval(&x);
        for c in 0..2 {
            for r in 0..2 {
                assert_eq!(fv.mat().get(r, c), gv.mat().get(r + 2, c));
            }
        }
    }

    #[test]
    fn sector_violations_are_rejected() {
        let poly = SpacetimePoly::constant(Mat::from_rows(vec![
            vec![Cq::from_i64(1)],
            vec![Cq::from_i64(0)],
            vec![Cq::from_i64(1)], // forbidden row for a + sector V_L column
            vec![Cq::from_i64(0)],
        ]));
        assert!(matches!(
            SpinorField::new(poly, Sector::Plus, 1, 0),
            Err(FieldError::ChiralityViolation { .. })
        ));
    }

    #[test]
    fn gauge_transform_requires_pointed_exponent() {
        // ξ = (1 + x⁰)·c vanishes at p = (−1,0,0,0).
        let c = Mat::col_vec(vec![Cq::from_i64(1)]);
        let mut xi = SpacetimePoly::constant(c.clone());
        xi.add_term([1, 0, 0, 0], c.clone());
        assert!(GaugeTransform::new(xi, 8).is_ok());
        let bad = SpacetimePoly::constant(c);
        assert!(matches!(
            GaugeTransform::new(bad, 8),
            Err(FieldError::NotPointed { .. })
        ));
    }
}
