//! Matrix-valued polynomial differential forms on Minkowski ℝ⁴.
//!
//! A [`PolyForm`] of degree k keeps one [`SpacetimePoly`] component per
//! strictly increasing index tuple α₁ < … < α_k ⊂ {0,1,2,3}. All operators
//! act exactly on the polynomial coefficients:
//!
//! * exterior derivative `d`;
//! * Hodge star for g = diag(−1,1,1,1) with volume form
//!   dvol = dx⁰∧dx¹∧dx²∧dx³, fixed by ⋆dx^I = ε(I, Iᶜ)·g^{II}·dx^{Iᶜ}
//!   where ε(I, Iᶜ) is the sign of the permutation (I, Iᶜ) of (0,1,2,3) and
//!   g^{II} = Π_{α∈I} g^{αα}. This is the unique table with
//!   α ∧ ⋆β = ⟨α, β⟩ dvol; it gives ⋆1 = dvol, ⋆dvol = −1 and
//!   ⋆⋆ = (−1)^{k(4−k)}·sign(g) = (−1, +1, −1, +1, −1) on degrees 0..4;
//! * codifferential δ = ⋆d⋆ uniformly on every degree, so that on 1-forms
//!   δω = −∂_αωᵅ and δ is the formal adjoint of d for the indefinite L²
//!   pairing;
//! * wedge products against caller-chosen bilinear value maps (matrix
//!   product, Lie bracket, representation action, inner products…).

use std::collections::BTreeMap;

use crate::clifford::gamma::metric_sign;
use crate::mathkit::mat::Mat;
use crate::mathkit::poly::SpacetimePoly;
use crate::mathkit::scalar::Scalar;

/// Sign of the permutation sorting `idx` ascending, with the sorted tuple;
/// `None` when an index repeats (the wedge monomial vanishes).
pub fn sort_sign(idx: &[u8]) -> Option<(Vec<u8>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Sorted union of two sorted disjoint tuples with the sign of the
/// concatenation (left, right); `None` when they overlap.
pub fn merge_sign(left: &[u8], right: &[u8]) -> Option<(Vec<u8>, i64)> {
    let cat: Vec<u8> = left.iter().chain(right.iter()).copied().collect();
    sort_sign(&cat)
}

/// Complement Iᶜ of a sorted tuple I in {0,1,2,3} and the Hodge factor
/// ε(I, Iᶜ)·Π_{α∈I} g^{αα}.
fn hodge_factor(idx: &[u8]) -> (Vec<u8>, i64) {
    let comp: Vec<u8> = (0u8..4).filter(|a| !idx.contains(a)).collect();
    let (_, eps) = merge_sign(idx, &comp).expect("complement is disjoint");
    let metric: i64 = idx.iter().map(|&a| metric_sign(a as usize)).product();
    (comp, eps * metric)
}

/// A degree-k differential form whose components are matrix-valued
/// polynomials of a fixed shape.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm<S: Scalar> {
    degree: usize,
    rows: usize,
    cols: usize,
    comps: BTreeMap<Vec<u8>, SpacetimePoly<S>>,
}

impl<S: Scalar> PolyForm<S> {
    pub fn zero(degree: usize, rows: usize, cols: usize) -> Self {
        assert!(degree <= 4, "form degree on ℝ⁴ is at most 4");
        PolyForm { degree, rows, cols, comps: BTreeMap::new() }
    }

    /// Wrap a polynomial as a 0-form.
    pub fn from_scalar(p: SpacetimePoly<S>) -> Self {
        let mut f = PolyForm::zero(0, p.rows(), p.cols());
        f.add_comp(&[], p);
        f
    }

    /// Build from possibly unsorted index tuples; repeated indices drop the
    /// term, unsorted tuples contribute with the permutation sign.
    pub fn from_components(
        degree: usize,
        rows: usize,
        cols: usize,
        parts: Vec<(Vec<u8>, SpacetimePoly<S>)>,
    ) -> Self {
        let mut f = PolyForm::zero(degree, rows, cols);
        for (idx, p) in parts {
            assert_eq!(idx.len(), degree, "index tuple length must match the degree");
            if let Some((sorted, sign)) = sort_sign(&idx) {
                f.add_comp(&sorted, p.scale(&S::from_i64(sign)));
            }
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Component at a sorted index tuple (zero polynomial when absent).
    pub fn comp(&self, idx: &[u8]) -> SpacetimePoly<S> {
        assert_eq!(idx.len(), self.degree, "component index length");
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]), "component index must be sorted");
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| SpacetimePoly::zero(self.rows, self.cols))
    }

    /// Accumulate a polynomial into the component at a sorted tuple.
    pub fn add_comp(&mut self, idx: &[u8], p: SpacetimePoly<S>) {
        assert_eq!(idx.len(), self.degree, "component index length");
        assert!(idx.iter().all(|&a| a < 4), "indices range over 0..4");
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "component index must be sorted");
        assert!(p.rows() == self.rows && p.cols() == self.cols, "component shape");
        if p.is_exactly_zero() {
            return;
        }
        match self.comps.get_mut(idx) {
            Some(q) => {
                let sum = &*q + &p;
                if sum.is_exactly_zero() {
                    self.comps.remove(idx);
                } else {
                    *q = sum;
                }
            }
            None => {
                self.comps.insert(idx.to_vec(), p);
            }
        }
    }

    /// Iterate over the nonzero components (sorted tuples).
    pub fn iter(&self) -> impl Iterator<Item = (&[u8], &SpacetimePoly<S>)> {
        self.comps.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::from_i64(-1))
    }

    /// Apply a shape-preserving polynomial map to every component.
    pub fn map(&self, f: impl Fn(&SpacetimePoly<S>) -> SpacetimePoly<S>) -> Self {
        self.map_indexed(|_, p| f(p))
    }

    /// Apply an index-aware shape-preserving polynomial map componentwise.
    pub fn map_indexed(
        &self,
        f: impl Fn(&[u8], &SpacetimePoly<S>) -> SpacetimePoly<S>,
    ) -> Self {
        let mut out = PolyForm::zero(self.degree, self.rows, self.cols);
        let mut shape = None;
        for (idx, p) in &self.comps {
            let q = f(idx, p);
            let s = (q.rows(), q.cols());
            match shape {
                None => {
                    shape = Some(s);
                    out.rows = q.rows();
                    out.cols = q.cols();
                }
                Some(prev) => assert_eq!(prev, s, "map must keep one output shape"),
            }
            out.add_comp(idx, q);
        }
        out
    }

    /// Apply a value-level map (possibly changing the matrix shape) to every
    /// polynomial coefficient of every component.
    pub fn map_values(
        &self,
        rows: usize,
        cols: usize,
        f: impl Fn(&Mat<S>) -> Mat<S>,
    ) -> Self {
        let mut out = PolyForm::zero(self.degree, rows, cols);
        for (idx, p) in &self.comps {
            out.add_comp(idx, p.map_coeffs_to(rows, cols, &f));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch");
        let mut out = self.clone();
        for (idx, p) in &other.comps {
            out.add_comp(idx, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exterior derivative (degree ≤ 3: top-degree forms on ℝ⁴ are closed).
    pub fn d(&self) -> Self {
        assert!(self.degree < 4, "exterior derivative of a top-degree form");
        let mut out = PolyForm::zero(self.degree + 1, self.rows, self.cols);
        for (idx, p) in &self.comps {
            for axis in 0u8..4 {
                if idx.contains(&axis) {
                    continue;
                }
                let dp = p.derive(axis as usize);
                if dp.is_exactly_zero() {
                    continue;
                }
                let (merged, sign) = merge_sign(&[axis], idx).expect("axis not in tuple");
                out.add_comp(&merged, dp.scale(&S::from_i64(sign)));
            }
        }
        out
    }

    /// Hodge star for g = diag(−1,1,1,1), dvol = dx⁰∧dx¹∧dx²∧dx³.
    pub fn hodge(&self) -> Self {
        let mut out = PolyForm::zero(4 - self.degree, self.rows, self.cols);
        for (idx, p) in &self.comps {
            let (comp, factor) = hodge_factor(idx);
            out.add_comp(&comp, p.scale(&S::from_i64(factor)));
        }
        out
    }

    /// Codifferential δ = ⋆d⋆ (zero on 0-forms).
    pub fn codiff(&self) -> Self {
        if self.degree == 0 {
            return PolyForm::zero(0, self.rows, self.cols);
        }
        self.hodge().d().hodge()
    }

    /// Wedge product with the values combined through a bilinear map
    /// (a, b) ↦ f(a, b) of shape rows×cols.
    pub fn wedge_with<T: Scalar>(
        &self,
        other: &PolyForm<T>,
        rows: usize,
        cols: usize,
        f: impl Fn(&Mat<S>, &Mat<T>) -> Mat<S>,
    ) -> PolyForm<S> {
        assert!(self.degree + other.degree <= 4, "wedge degree exceeds 4");
        let mut out = PolyForm::zero(self.degree + other.degree, rows, cols);
        for (i, p) in &self.comps {
            for (j, q) in &other.comps {
                if let Some((merged, sign)) = merge_sign(i, j) {
                    let prod = p.combine(q, rows, cols, &f);
                    out.add_comp(&merged, prod.scale(&S::from_i64(sign)));
                }
            }
        }
        out
    }

    /// Evaluate one component at a point (zero matrix when absent).
    pub fn eval_comp(&self, idx: &[u8], x: &[S; 4]) -> Mat<S> {
        match self.comps.get(idx) {
            Some(p) => p.eval(x),
            None => Mat::zeros(self.rows, self.cols),
        }
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.comps.values().all(|p| p.is_exactly_zero())
    }

    /// Largest coefficient magnitude across all components.
    pub fn max_coeff_mag(&self) -> f64 {
        self.comps.values().map(|p| p.max_coeff_mag()).fold(0.0, f64::max)
    }

    /// Largest total polynomial degree across all components.
    pub fn max_degree(&self) -> u32 {
        self.comps.values().filter_map(|p| p.degree()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::scalar::Cq;
    use crate::sampling::SampleRng;

    fn dvol_key() -> Vec<u8> {
        vec![0, 1, 2, 3]
    }

    fn one_poly() -> SpacetimePoly<Cq> {
        SpacetimePoly::constant(Mat::identity(1))
    }

    /// Random scalar polynomial of total degree ≤ `deg`.
    fn rand_poly(rng: &mut SampleRng, deg: u32) -> SpacetimePoly<Cq> {
        rng.poly_cq(1, 1, deg)
    }

    #[test]
    fn sort_sign_counts_inversions_and_drops_repeats() {
        assert_eq!(sort_sign(&[0, 1, 2, 3]), Some((vec![0, 1, 2, 3], 1)));
        assert_eq!(sort_sign(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_sign(&[1, 1]), None);
        assert_eq!(sort_sign(&[]), Some((vec![], 1)));
    }

    #[test]
    fn hodge_of_one_is_dvol_and_of_dvol_is_minus_one() {
        let one = PolyForm::from_scalar(one_poly());
        let star_one = one.hodge();
        assert_eq!(star_one.degree(), 4);
        assert!((&star_one.comp(&dvol_key()) - &one_poly()).is_exactly_zero());

        let mut dvol = PolyForm::zero(4, 1, 1);
        dvol.add_comp(&dvol_key(), one_poly());
        let star_dvol = dvol.hodge();
        assert_eq!(star_dvol.degree(), 0);
        let expect = one_poly().scale(&Cq::from_i64(-1));
        assert!((&star_dvol.comp(&[]) - &expect).is_exactly_zero());
    }

    #[test]
    fn double_hodge_signs_follow_the_lorentzian_table() {
        // ⋆⋆ = (−1)^{k(4−k)}·sign(g) on degree k: −1, +1, −1, +1, −1.
        let expected = [-1i64, 1, -1, 1, -1];
        for k in 0usize..=4 {
            let tuples: Vec<Vec<u8>> = match k {
                0 => vec![vec![]],
                1 => (0u8..4).map(|a| vec![a]).collect(),
                2 => (0u8..4)
                    .flat_map(|a| ((a + 1)..4).map(move |b| vec![a, b]))
                    .collect(),
                3 => (0u8..4).map(|a| (0u8..4).filter(|&b| b != a).collect()).collect(),
                _ => vec![dvol_key()],
            };
            for t in tuples {
                let mut f = PolyForm::zero(k, 1, 1);
                f.add_comp(&t, one_poly());
                let ss = f.hodge().hodge();
                let expect = one_poly().scale(&Cq::from_i64(expected[k]));
                assert!(
                    (&ss.comp(&t) - &expect).is_exactly_zero(),
                    "⋆⋆ failed on degree {k} tuple {t:?}"
                );
            }
        }
    }

    #[test]
    fn wedge_against_hodge_reproduces_the_metric_pairing() {
        // α ∧ ⋆β = ⟨α, β⟩ dvol with ⟨dxᵅ, dxᵝ⟩ = δᵅᵝ gᵅᵅ on 1-forms.
        for a in 0u8..4 {
            for b in 0u8..4 {
                let mut alpha = PolyForm::zero(1, 1, 1);
                alpha.add_comp(&[a], one_poly());
                let mut beta = PolyForm::zero(1, 1, 1);
                beta.add_comp(&[b], one_poly());
                let w = alpha.wedge_with(&beta.hodge(), 1, 1, |x, y| x.matmul(y));
                let got = w.comp(&dvol_key());
                let expect = if a == b {
                    one_poly().scale(&Cq::from_i64(metric_sign(a as usize)))
                } else {
                    SpacetimePoly::zero(1, 1)
                };
                assert!((&got - &expect).is_exactly_zero(), "pairing failed at ({a},{b})");
            }
        }
    }

    #[test]
    fn exterior_derivative_squares_to_zero() {
        let mut rng = SampleRng::new(0xF0);
        for _ in 0..3 {
            let f0 = PolyForm::from_scalar(rand_poly(&mut rng, 3));
            assert!(f0.d().d().is_exactly_zero());

            let mut f1 = PolyForm::zero(1, 1, 1);
            for a in 0u8..4 {
                f1.add_comp(&[a], rand_poly(&mut rng, 3));
            }
            assert!(f1.d().d().is_exactly_zero());

            let mut f2 = PolyForm::zero(2, 1, 1);
            f2.add_comp(&[0, 2], rand_poly(&mut rng, 3));
            f2.add_comp(&[1, 3], rand_poly(&mut rng, 3));
            assert!(f2.d().d().is_exactly_zero());
        }
    }

    #[test]
    fn codifferential_on_one_forms_is_minus_divergence() {
        // δω = −∂_αωᵅ = ∂₀ω₀ − ∂₁ω₁ − ∂₂ω₂ − ∂₃ω₃.
        let mut rng = SampleRng::new(0xF1);
        let mut omega = PolyForm::zero(1, 1, 1);
        let comps: Vec<SpacetimePoly<Cq>> =
            (0..4).map(|_| rand_poly(&mut rng, 3)).collect();
        for (a, p) in comps.iter().enumerate() {
            omega.add_comp(&[a as u8], p.clone());
        }
        let got = omega.codiff().comp(&[]);
        let mut expect = SpacetimePoly::zero(1, 1);
        for (a, p) in comps.iter().enumerate() {
            let sign = Cq::from_i64(-metric_sign(a));
            expect = &expect + &p.derive(a).scale(&sign);
        }
        assert!((&got - &expect).is_exactly_zero());
    }

    #[test]
    fn scalar_one_form_wedge_anticommutes() {
        let mut rng = SampleRng::new(0xF2);
        let mut alpha = PolyForm::zero(1, 1, 1);
        let mut beta = PolyForm::zero(1, 1, 1);
        for a in 0u8..4 {
            alpha.add_comp(&[a], rand_poly(&mut rng, 2));
            beta.add_comp(&[a], rand_poly(&mut rng, 2));
        }
        let ab = alpha.wedge_with(&beta, 1, 1, |x, y| x.matmul(y));
        let ba = beta.wedge_with(&alpha, 1, 1, |x, y| x.matmul(y));
        assert!(ab.add(&ba).is_exactly_zero());
        // sanity on one mixed evaluation
        let x = [Cq::from_ratio(1, 3), Cq::from_ratio(-1, 2), Cq::from_i64(1), Cq::from_i64(0)];
        let v = ab.eval_comp(&[0, 1], &x);
        let direct = &alpha.eval_comp(&[0], &x).matmul(&beta.eval_comp(&[1], &x))
            - &alpha.eval_comp(&[1], &x).matmul(&beta.eval_comp(&[0], &x));
        assert!((&v - &direct).is_exactly_zero());
    }
}
