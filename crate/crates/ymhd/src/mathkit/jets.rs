//! Truncated Laurent–Taylor jets: Σ c_{j,k} s^j r^k with matrix coefficients.
//!
//! The certificate of the small-(s, r) interaction identity manipulates
//! expressions such as a(s) = √(1−s²) and 1/(1−a(s)) = 2s⁻² − 1/2 − s²/8 − …,
//! which live in the ring of formal Laurent series in `s` (bounded pole order)
//! tensored with Taylor series in `r`. Jets carry *exact* ℚ(i) matrix
//! coefficients inside a truncation window; products that would push
//! information below the window's lowest s-order are a hard error, while
//! orders above the window are the discarded O(·) tail.
//!
//! Besides the window, every jet tracks the s-order `exact_to` up to which its
//! coefficients are certainly those of the underlying exact series. Sums and
//! products propagate this ceiling, and inverting a jet with positive leading
//! order L costs 2L orders of certainty (the inverse's high orders depend on
//! input orders beyond the truncation). Stored coefficients are clipped to the
//! ceiling, so equalities between jets are equalities of certified data, and
//! [`LaurentTaylorJet::coeff_exact`] refuses to read beyond it.

use super::mat::Mat;
use super::scalar::{Cq, Scalar};
use std::collections::BTreeMap;
use thiserror::Error;

/// Truncation window: s-orders `s_lo ..= s_hi`, r-orders `0 ..= r_hi`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct JetWindow {
    pub s_lo: i32,
    pub s_hi: i32,
    pub r_hi: u32,
}

impl Default for JetWindow {
    /// The default window −6 ≤ s-order ≤ 4, r-order ≤ 3: double poles from
    /// 1/(1−a(s)) enter three-fold products, driving orders down to −6.
    fn default() -> Self {
        JetWindow { s_lo: -6, s_hi: 4, r_hi: 3 }
    }
}

impl JetWindow {
    /// Window with extra s-headroom above the default, for computations whose
    /// intermediate divisions consume certified orders.
    pub fn with_headroom(s_hi: i32) -> Self {
        JetWindow { s_hi, ..Self::default() }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error("product would carry s-order {order} below the window floor {floor}")]
    BelowWindow { order: i32, floor: i32 },
    #[error("leading coefficient (s-order {order}) is not invertible")]
    NonInvertibleLeading { order: i32 },
    #[error("leading s-order {order} exceeds the certified ceiling {ceiling}")]
    UncertainLeading { order: i32, ceiling: i32 },
    #[error("square root requires constant term 1 at s-order 0, r-order 0")]
    SqrtConstantTerm,
    #[error("jet shapes differ")]
    ShapeMismatch,
    #[error("coefficient at s-order {order} is beyond the certified ceiling {ceiling}")]
    BeyondCertified { order: i32, ceiling: i32 },
}

/// Matrix-valued truncated Laurent(s) × Taylor(r) series.
///
/// Equality compares window and certified coefficients; two jets certified to
/// different ceilings are never equal.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentTaylorJet {
    rows: usize,
    cols: usize,
    window: JetWindow,
    /// Certified ceiling: coefficients at s-orders ≤ `exact_to` match the
    /// exact series; nothing is stored above it.
    exact_to: i32,
    coef: BTreeMap<(i32, u32), Mat<Cq>>,
}

impl LaurentTaylorJet {
    /// Zero jet of a given value shape, certified across the window.
    pub fn zero(rows: usize, cols: usize, window: JetWindow) -> Self {
        LaurentTaylorJet { rows, cols, window, exact_to: window.s_hi, coef: BTreeMap::new() }
    }

    /// Constant jet (value at s⁰r⁰).
    pub fn constant(value: Mat<Cq>, window: JetWindow) -> Self {
        let mut j = Self::zero(value.rows(), value.cols(), window);
        j.add_term(0, 0, value);
        j
    }

    /// The scalar monomial c·s^j r^k as a 1×1 jet.
    pub fn scalar_monomial(c: Cq, j: i32, k: u32, window: JetWindow) -> Self {
        let mut out = Self::zero(1, 1, window);
        out.add_term(j, k, Mat::from_rows(vec![vec![c]]));
        out
    }

    /// The identity jet of dimension `n`.
    pub fn one(n: usize, window: JetWindow) -> Self {
        Self::constant(Mat::identity(n), window)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn window(&self) -> JetWindow {
        self.window
    }

    /// Certified s-order ceiling of this jet.
    pub fn exact_to(&self) -> i32 {
        self.exact_to
    }

    /// Coefficient of s^j r^k (zero matrix when absent or above the ceiling).
    pub fn coeff(&self, j: i32, k: u32) -> Mat<Cq> {
        self.coef.get(&(j, k)).cloned().unwrap_or_else(|| Mat::zeros(self.rows, self.cols))
    }

    /// Coefficient of s^j r^k, refusing orders beyond the certified ceiling.
    pub fn coeff_exact(&self, j: i32, k: u32) -> Result<Mat<Cq>, JetError> {
        if j > self.exact_to {
            return Err(JetError::BeyondCertified { order: j, ceiling: self.exact_to });
        }
        Ok(self.coeff(j, k))
    }

    /// Lowest stored s-order, if any coefficient is nonzero.
    pub fn lowest_s_order(&self) -> Option<i32> {
        self.coef.keys().map(|&(j, _)| j).min()
    }

    /// Iterate over stored (s-order, r-order, coefficient) terms.
    pub fn terms(&self) -> impl Iterator<Item = (i32, u32, &Mat<Cq>)> {
        self.coef.iter().map(|(&(j, k), c)| (j, k, c))
    }

    /// Add c·s^j r^k in place (drops exact zeros; orders above the window or
    /// the certified ceiling are the O(·) tail and are discarded).
    pub fn add_term(&mut self, j: i32, k: u32, c: Mat<Cq>) {
        assert!(c.rows() == self.rows && c.cols() == self.cols, "coefficient shape");
        if j > self.exact_to || k > self.window.r_hi || c.is_exactly_zero() {
            return;
        }
        assert!(j >= self.window.s_lo, "term below window floor must be rejected by caller");
        match self.coef.entry((j, k)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_exactly_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn clip_to_ceiling(&mut self) {
        let ceiling = self.exact_to;
        self.coef.retain(|&(j, _), _| j <= ceiling);
    }

    /// Sum of two jets (windows must agree); certified to the lower ceiling.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.window, other.window, "window mismatch");
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch");
        let mut out = self.clone();
        out.exact_to = self.exact_to.min(other.exact_to);
        out.clip_to_ceiling();
        for (&(j, k), c) in &other.coef {
            out.add_term(j, k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.rows, self.cols, self.window);
        out.exact_to = self.exact_to;
        for (&(j, k), c) in &self.coef {
            out.add_term(j, k, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Cq) -> Self {
        let mut out = Self::zero(self.rows, self.cols, self.window);
        out.exact_to = self.exact_to;
        for (&(j, k), c) in &self.coef {
            out.add_term(j, k, c.scale(s));
        }
        out
    }

    /// Shift by s^dj (dj may be negative); errors when a stored term would
    /// drop below the window floor. The ceiling shifts along.
    pub fn shift_s(&self, dj: i32) -> Result<Self, JetError> {
        let mut out = Self::zero(self.rows, self.cols, self.window);
        out.exact_to = (self.exact_to + dj).min(self.window.s_hi);
        for (&(j, k), c) in &self.coef {
            let nj = j + dj;
            if nj < self.window.s_lo {
                return Err(JetError::BelowWindow { order: nj, floor: self.window.s_lo });
            }
            out.add_term(nj, k, c.clone());
        }
        Ok(out)
    }

    /// Truncated product; coefficient matrices multiply with `matmul`.
    ///
    /// A product coefficient at s-order n gathers contributions c₁_j·c₂_{n−j},
    /// so it is certified only while n ≤ ceiling₁ + lead₂ and
    /// n ≤ ceiling₂ + lead₁.
    pub fn mul(&self, other: &Self) -> Result<Self, JetError> {
        assert_eq!(self.window, other.window, "window mismatch");
        if self.cols != other.rows {
            return Err(JetError::ShapeMismatch);
        }
        let mut out = Self::zero(self.rows, other.cols, self.window);
        out.exact_to = match (self.lowest_s_order(), other.lowest_s_order()) {
            (Some(l1), Some(l2)) => (self.exact_to + l2).min(other.exact_to + l1),
            // a certified-zero factor certifies the zero product through the
            // other factor's reach from this side's ceiling
            (None, Some(l2)) => self.exact_to + l2,
            (Some(l1), None) => other.exact_to + l1,
            (None, None) => self.window.s_hi,
        }
        .min(self.window.s_hi);
        for (&(j1, k1), c1) in &self.coef {
            for (&(j2, k2), c2) in &other.coef {
                let j = j1 + j2;
                let k = k1 + k2;
                if j < self.window.s_lo {
                    return Err(JetError::BelowWindow { order: j, floor: self.window.s_lo });
                }
                if j > out.exact_to || k > self.window.r_hi {
                    continue;
                }
                out.add_term(j, k, c1.matmul(c2));
            }
        }
        Ok(out)
    }

    /// Truncated product with a 1×1 (scalar) jet factor, broadcast over the
    /// coefficient matrices; same certification arithmetic as [`Self::mul`].
    pub fn scaled_by(&self, f: &Self) -> Result<Self, JetError> {
        assert_eq!(self.window, f.window, "window mismatch");
        if f.rows != 1 || f.cols != 1 {
            return Err(JetError::ShapeMismatch);
        }
        let mut out = Self::zero(self.rows, self.cols, self.window);
        out.exact_to = match (self.lowest_s_order(), f.lowest_s_order()) {
            (Some(l1), Some(l2)) => (self.exact_to + l2).min(f.exact_to + l1),
            (None, Some(l2)) => self.exact_to + l2,
            (Some(l1), None) => f.exact_to + l1,
            (None, None) => self.window.s_hi,
        }
        .min(self.window.s_hi);
        for (&(j1, k1), c1) in &self.coef {
            for (&(j2, k2), c2) in &f.coef {
                let j = j1 + j2;
                let k = k1 + k2;
                if j < self.window.s_lo {
                    return Err(JetError::BelowWindow { order: j, floor: self.window.s_lo });
                }
                if j > out.exact_to || k > self.window.r_hi {
                    continue;
                }
                out.add_term(j, k, c1.scale(c2.get(0, 0)));
            }
        }
        Ok(out)
    }

    /// The coefficient of r^k as a jet in s alone (stored at r-order 0),
    /// keeping the certification ceiling. Products only raise r-orders, so a
    /// Taylor coefficient never depends on orders beyond the window.
    pub fn r_coefficient(&self, k: u32) -> Self {
        let mut out = Self::zero(self.rows, self.cols, self.window);
        out.exact_to = self.exact_to;
        for (&(j, kk), c) in &self.coef {
            if kk == k {
                out.add_term(j, 0, c.clone());
            }
        }
        out
    }

    /// Inverse of a jet whose lowest-s-order, r⁰ coefficient is invertible.
    ///
    /// Writes j = s^L (A + N) with A constant and N of strictly positive (s, r)
    /// order, then sums the Neumann series (A + N)⁻¹ = Σ (−A⁻¹N)^k A⁻¹, which
    /// terminates inside the truncation window. The result is certified to
    /// `exact_to − 2L`: a pole (L < 0) gains certainty, a zero (L > 0) spends
    /// it, because high orders of the inverse depend on input orders past the
    /// truncation.
    pub fn invert(&self) -> Result<Self, JetError> {
        let lead = self.lowest_s_order().ok_or(JetError::NonInvertibleLeading { order: 0 })?;
        if lead > self.exact_to {
            return Err(JetError::UncertainLeading { order: lead, ceiling: self.exact_to });
        }
        let a = self.coeff(lead, 0);
        let a_inv = a
            .inverse()
            .ok_or(JetError::NonInvertibleLeading { order: lead })?;
        // n := s^{-L} j − A  (strictly positive-order part), as a jet.
        let shifted = self.shift_s(-lead)?;
        let mut n = shifted.clone();
        n.coef.remove(&(0, 0));
        // Neumann sum: inv = (Σ_k (−A⁻¹ N)^k) A⁻¹, then shift by −L.
        let span = (self.window.s_hi - self.window.s_lo) as u32 + self.window.r_hi + 1;
        let a_inv_jet = Self::constant(a_inv.clone(), self.window);
        let m = a_inv_jet.mul(&n)?.neg(); // −A⁻¹N, strictly positive order
        let mut acc = Self::one(self.rows, self.window);
        let mut pow = Self::one(self.rows, self.window);
        for _ in 0..span {
            pow = pow.mul(&m)?;
            if pow.coef.is_empty() {
                break;
            }
            acc = acc.add(&pow);
        }
        let mut out = acc.mul(&a_inv_jet)?.shift_s(-lead)?;
        out.exact_to = (self.exact_to - 2 * lead).min(self.window.s_hi);
        out.clip_to_ceiling();
        Ok(out)
    }

    /// Square root of a 1×1 jet with constant term 1, by Newton iteration
    /// x ← (x + j·x⁻¹)/2. Quadratic convergence caps the iteration count at
    /// log₂(window span) + 2.
    pub fn sqrt_one_plus(&self) -> Result<Self, JetError> {
        if self.rows != 1 || self.cols != 1 {
            return Err(JetError::ShapeMismatch);
        }
        let c0 = self.coeff(0, 0);
        if self.lowest_s_order() != Some(0) || c0.get(0, 0) != &<Cq as Scalar>::from_i64(1) {
            return Err(JetError::SqrtConstantTerm);
        }
        let span = (self.window.s_hi - self.window.s_lo) as u32 + self.window.r_hi + 1;
        let iters = (span as f64).log2().ceil() as usize + 2;
        let half = <Cq as Scalar>::from_ratio(1, 2);
        let mut x = Self::one(1, self.window);
        for _ in 0..iters {
            let x_inv = x.invert()?;
            x = x.add(&self.mul(&x_inv)?).scale(&half);
        }
        Ok(x)
    }

    /// True when no coefficient survives.
    pub fn is_exactly_zero(&self) -> bool {
        self.coef.is_empty()
    }

    /// Restrict to terms with s-order ≤ j_max and r-order ≤ k_max.
    pub fn truncate(&self, j_max: i32, k_max: u32) -> Self {
        let mut out = Self::zero(self.rows, self.cols, self.window);
        out.exact_to = self.exact_to.min(j_max);
        for (&(j, k), c) in &self.coef {
            if j <= j_max && k <= k_max {
                out.add_term(j, k, c.clone());
            }
        }
        out
    }

    /// Entry-wise evaluation at exact (s, r); pole orders evaluate literally.
    pub fn eval(&self, s: &Cq, r: &Cq) -> Result<Mat<Cq>, JetError> {
        let mut out = Mat::zeros(self.rows, self.cols);
        for (&(j, k), c) in &self.coef {
            let mut w = <Cq as Scalar>::from_i64(1);
            if j >= 0 {
                for _ in 0..j {
                    w = w * s.clone();
                }
            } else {
                let s_inv = s
                    .try_inv()
                    .ok_or(JetError::NonInvertibleLeading { order: j })?;
                for _ in 0..(-j) {
                    w = w * s_inv.clone();
                }
            }
            for _ in 0..k {
                w = w * r.clone();
            }
            out = &out + &c.scale(&w);
        }
        Ok(out)
    }
}

/// The jet of a(u) = √(1 − u²) in the variable chosen by `in_r`.
///
/// With `in_r = false` the expansion runs in s (used for a(s)); with
/// `in_r = true` it runs in r (used for a(r)).
pub fn sqrt_one_minus_sq(window: JetWindow, in_r: bool) -> LaurentTaylorJet {
    let one = <Cq as Scalar>::from_i64(1);
    let mut arg = LaurentTaylorJet::scalar_monomial(one, 0, 0, window);
    let minus_one = <Cq as Scalar>::from_i64(-1);
    if in_r {
        arg.add_term(0, 2, Mat::from_rows(vec![vec![minus_one]]));
    } else {
        arg.add_term(2, 0, Mat::from_rows(vec![vec![minus_one]]));
    }
    arg.sqrt_one_plus().expect("1 − u² has constant term 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::scalar::q;

    fn w() -> JetWindow {
        JetWindow::default()
    }

    fn one_jet(window: JetWindow) -> LaurentTaylorJet {
        LaurentTaylorJet::one(1, window)
    }

    fn int_jet(n: i64, j: i32, k: u32, window: JetWindow) -> LaurentTaylorJet {
        LaurentTaylorJet::scalar_monomial(<Cq as Scalar>::from_i64(n), j, k, window)
    }

    #[test]
    fn pole_order_cancellation() {
        let s2 = int_jet(1, 2, 0, w());
        let s_m2 = int_jet(1, -2, 0, w());
        let prod = s2.mul(&s_m2).unwrap();
        assert_eq!(prod, one_jet(w()).truncate(prod.exact_to(), w().r_hi));
        assert_eq!(prod.coeff(0, 0).get(0, 0), &<Cq as Scalar>::from_i64(1));
    }

    #[test]
    fn product_below_floor_errors() {
        let s_m4 = int_jet(1, -4, 0, w());
        let err = s_m4.mul(&s_m4).unwrap_err();
        assert_eq!(err, JetError::BelowWindow { order: -8, floor: -6 });
    }

    #[test]
    fn sqrt_squares_back() {
        let a = sqrt_one_minus_sq(w(), false);
        let sq = a.mul(&a).unwrap();
        let mut expect = one_jet(w());
        expect.add_term(2, 0, Mat::from_rows(vec![vec![<Cq as Scalar>::from_i64(-1)]]));
        assert_eq!(sq, expect);
        // binomial series: a(s) = 1 − s²/2 − s⁴/8 − …
        assert_eq!(a.coeff(2, 0).get(0, 0), &Cq::new(q(-1, 2), q(0, 1)));
        assert_eq!(a.coeff(4, 0).get(0, 0), &Cq::new(q(-1, 8), q(0, 1)));
    }

    #[test]
    fn sqrt_in_r_squares_back() {
        let a = sqrt_one_minus_sq(w(), true);
        let sq = a.mul(&a).unwrap();
        let mut expect = one_jet(w());
        expect.add_term(0, 2, Mat::from_rows(vec![vec![<Cq as Scalar>::from_i64(-1)]]));
        assert_eq!(sq, expect);
    }

    #[test]
    fn inverse_of_one_minus_a_has_double_pole() {
        // 1/(1−a(s)) = 2s⁻² − 1/2 − s²/8 − …; the s² coefficient needs a(s)
        // through s⁶, so certifying it takes s-headroom above the default cap.
        let wide = JetWindow::with_headroom(8);
        let a = sqrt_one_minus_sq(wide, false);
        let one_minus_a = one_jet(wide).sub(&a);
        let inv = one_minus_a.invert().unwrap();
        assert_eq!(inv.exact_to(), 8 - 4);
        assert_eq!(inv.coeff(-2, 0).get(0, 0), &<Cq as Scalar>::from_i64(2));
        assert_eq!(inv.coeff(0, 0).get(0, 0), &Cq::new(q(-1, 2), q(0, 1)));
        assert_eq!(inv.coeff(2, 0).get(0, 0), &Cq::new(q(-1, 8), q(0, 1)));
        // round trip multiplies back to 1 exactly within certified orders
        let round = inv.mul(&one_minus_a).unwrap();
        assert_eq!(round, one_jet(wide).truncate(round.exact_to(), wide.r_hi));
    }

    #[test]
    fn default_window_refuses_uncertified_inverse_order() {
        // under the default cap the inverse is certified only to s⁰
        let a = sqrt_one_minus_sq(w(), false);
        let inv = one_jet(w()).sub(&a).invert().unwrap();
        assert_eq!(inv.exact_to(), 0);
        assert_eq!(inv.coeff_exact(0, 0).unwrap().get(0, 0), &Cq::new(q(-1, 2), q(0, 1)));
        assert_eq!(
            inv.coeff_exact(2, 0).unwrap_err(),
            JetError::BeyondCertified { order: 2, ceiling: 0 }
        );
    }

    #[test]
    fn invert_round_trip_generic() {
        let mut j = int_jet(3, -1, 0, w());
        j.add_term(0, 1, Mat::from_rows(vec![vec![<Cq as Scalar>::from_i64(5)]]));
        j.add_term(1, 0, Mat::from_rows(vec![vec![<Cq as Scalar>::from_ratio(-2, 7)]]));
        let inv = j.invert().unwrap();
        let prod = j.mul(&inv).unwrap();
        assert_eq!(prod, one_jet(w()).truncate(prod.exact_to(), w().r_hi));
    }

    #[test]
    fn scalar_broadcast_matches_elementwise_product() {
        // (2×2 jet) scaled by (s⁻¹ + 3r): every coefficient scales and shifts
        let mut m = LaurentTaylorJet::zero(2, 2, w());
        let a = Mat::from_rows(vec![
            vec![<Cq as Scalar>::from_i64(1), <Cq as Scalar>::from_i64(2)],
            vec![<Cq as Scalar>::from_i64(3), <Cq as Scalar>::from_i64(4)],
        ]);
        m.add_term(1, 0, a.clone());
        let mut f = LaurentTaylorJet::scalar_monomial(<Cq as Scalar>::from_i64(1), -1, 0, w());
        f.add_term(0, 1, Mat::from_rows(vec![vec![<Cq as Scalar>::from_i64(3)]]));
        let p = m.scaled_by(&f).unwrap();
        assert_eq!(p.coeff(0, 0), a);
        assert_eq!(p.coeff(1, 1), a.scale(&<Cq as Scalar>::from_i64(3)));
        // certification follows the product rule
        assert_eq!(p.exact_to(), (m.exact_to() - 1).min(f.exact_to() + 1).min(w().s_hi));
    }

    #[test]
    fn r_coefficient_extracts_taylor_slices() {
        let mut j = LaurentTaylorJet::zero(1, 1, w());
        j.add_term(-2, 0, Mat::from_rows(vec![vec![<Cq as Scalar>::from_i64(7)]]));
        j.add_term(1, 1, Mat::from_rows(vec![vec![<Cq as Scalar>::from_i64(-5)]]));
        j.add_term(0, 2, Mat::from_rows(vec![vec![<Cq as Scalar>::from_i64(9)]]));
        let c1 = j.r_coefficient(1);
        assert_eq!(c1.coeff(1, 0).get(0, 0), &<Cq as Scalar>::from_i64(-5));
        assert!(c1.coeff(-2, 0).get(0, 0).is_exactly_zero());
        assert!(c1.coeff(0, 0).get(0, 0).is_exactly_zero());
        assert_eq!(c1.exact_to(), j.exact_to());
    }
}
