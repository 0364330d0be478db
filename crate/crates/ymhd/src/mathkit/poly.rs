//! Polynomial maps ℝ⁴ → (matrices over S), with exact differentiation.
//!
//! A [`SpacetimePoly`] stores a finite sum Σ c_m · (x⁰)^{m₀}(x¹)^{m₁}(x²)^{m₂}(x³)^{m₃}
//! with matrix coefficients c_m. All field-theoretic differential operators in
//! this crate act on such polynomials, so identities can be tested either by
//! exact coefficient comparison or by evaluation at sample points.

use super::mat::Mat;
use super::scalar::Scalar;
use std::collections::BTreeMap;

/// Multi-index over the four spacetime coordinates.
pub type MultiIndex = [u32; 4];

/// Matrix-valued polynomial on spacetime.
#[derive(Clone, PartialEq, Debug)]
pub struct SpacetimePoly<S: Scalar> {
    rows: usize,
    cols: usize,
    terms: BTreeMap<MultiIndex, Mat<S>>,
}

impl<S: Scalar> SpacetimePoly<S> {
    /// The zero polynomial with values of shape `rows × cols`.
    pub fn zero(rows: usize, cols: usize) -> Self {
        SpacetimePoly { rows, cols, terms: BTreeMap::new() }
    }

    /// Constant polynomial.
    pub fn constant(value: Mat<S>) -> Self {
        let mut p = Self::zero(value.rows(), value.cols());
        p.add_term([0, 0, 0, 0], value);
        p
    }

    /// Single monomial coefficient · x^m.
    pub fn monomial(m: MultiIndex, value: Mat<S>) -> Self {
        let mut p = Self::zero(value.rows(), value.cols());
        p.add_term(m, value);
        p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Iterate over (multi-index, coefficient) pairs in deterministic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Mat<S>)> {
        self.terms.iter()
    }

    /// Total degree (None for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Add `value · x^m` in place, dropping exact-zero coefficients.
    pub fn add_term(&mut self, m: MultiIndex, value: Mat<S>) {
        assert!(value.rows() == self.rows && value.cols() == self.cols, "coefficient shape");
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !value.is_exactly_zero() {
                    v.insert(value);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &value;
                if sum.is_exactly_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Entry-wise map of all coefficients (must preserve shape).
    pub fn map_coeffs(&self, f: impl Fn(&Mat<S>) -> Mat<S>) -> Self {
        let mut p = Self::zero(self.rows, self.cols);
        for (m, c) in &self.terms {
            p.add_term(*m, f(c));
        }
        p
    }

    /// Map coefficients through a shape-changing linear function.
    pub fn map_coeffs_to(
        &self,
        rows: usize,
        cols: usize,
        f: impl Fn(&Mat<S>) -> Mat<S>,
    ) -> Self {
        let mut p = Self::zero(rows, cols);
        for (m, c) in &self.terms {
            p.add_term(*m, f(c));
        }
        p
    }

    /// Scale by a scalar.
    pub fn scale(&self, s: &S) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    /// Exact partial derivative ∂/∂x^axis.
    pub fn derive(&self, axis: usize) -> Self {
        assert!(axis < 4, "axis out of range");
        let mut p = Self::zero(self.rows, self.cols);
        for (m, c) in &self.terms {
            if m[axis] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[axis] -= 1;
            p.add_term(m2, c.scale(&S::from_i64(m[axis] as i64)));
        }
        p
    }

    /// Evaluate at a point.
    pub fn eval(&self, x: &[S; 4]) -> Mat<S> {
        let mut out = Mat::zeros(self.rows, self.cols);
        for (m, c) in &self.terms {
            let mut w = S::one();
            for a in 0..4 {
                for _ in 0..m[a] {
                    w = w * x[a].clone();
                }
            }
            out = &out + &c.scale(&w);
        }
        out
    }

    /// Bilinear combination: conv of two polynomials through a coefficient map.
    ///
    /// `(p ⊛ q)(x) = f(p(x), q(x))` for any *bilinear* `f`; implemented as the
    /// convolution Σ_{m,n} f(c_m, d_n) x^{m+n}. The shape of the result is
    /// given by `rows × cols`.
    pub fn combine<T: Scalar>(
        &self,
        other: &SpacetimePoly<T>,
        rows: usize,
        cols: usize,
        f: impl Fn(&Mat<S>, &Mat<T>) -> Mat<S>,
    ) -> SpacetimePoly<S> {
        let mut p = SpacetimePoly::zero(rows, cols);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                let idx = [m[0] + n[0], m[1] + n[1], m[2] + n[2], m[3] + n[3]];
                p.add_term(idx, f(c, d));
            }
        }
        p
    }

    /// True when all coefficients vanish exactly.
    pub fn is_exactly_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff_mag(&self) -> f64 {
        self.terms.values().map(|c| c.max_mag()).fold(0.0, f64::max)
    }
}

impl<S: Scalar> std::ops::Add for &SpacetimePoly<S> {
    type Output = SpacetimePoly<S>;
    fn add(self, rhs: Self) -> SpacetimePoly<S> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl<S: Scalar> std::ops::Sub for &SpacetimePoly<S> {
    type Output = SpacetimePoly<S>;
    fn sub(self, rhs: Self) -> SpacetimePoly<S> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }
}

impl<S: Scalar> std::ops::Neg for &SpacetimePoly<S> {
    type Output = SpacetimePoly<S>;
    fn neg(self) -> SpacetimePoly<S> {
        self.map_coeffs(|c| -c.clone())
    }
}
