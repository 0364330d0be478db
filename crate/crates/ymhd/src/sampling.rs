//! Deterministic seeded sample generators for verification suites.
//!
//! Every randomized check in this crate draws from [`SampleRng`], a thin
//! wrapper over a counter-seeded ChaCha stream, so identical seeds give
//! identical samples on every platform and every run. Rational samples keep
//! numerators and denominators small enough that exact ℚ(i) arithmetic stays
//! fast through deep products.

use crate::mathkit::mat::Mat;
use crate::mathkit::poly::SpacetimePoly;
use crate::mathkit::scalar::{q, Cq, C64};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Deterministic random source for verification sampling.
pub struct SampleRng {
    rng: ChaCha20Rng,
}

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng { rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    /// Uniform integer in −max ..= max.
    pub fn int(&mut self, max: i64) -> i64 {
        self.rng.gen_range(-max..=max)
    }

    /// Small rational p/q with |p| ≤ max_num, 1 ≤ q ≤ max_den.
    pub fn rational(&mut self, max_num: i64, max_den: i64) -> BigRational {
        let p = self.int(max_num);
        let den = self.rng.gen_range(1..=max_den);
        q(p, den)
    }

    /// Small Gaussian-rational complex scalar.
    pub fn cq(&mut self) -> Cq {
        Cq::new(self.rational(3, 3), self.rational(3, 3))
    }

    /// Nonzero variant of [`SampleRng::cq`].
    pub fn cq_nonzero(&mut self) -> Cq {
        loop {
            let z = self.cq();
            if z != Cq::new(q(0, 1), q(0, 1)) {
                return z;
            }
        }
    }

    /// Matrix of small Gaussian-rational entries.
    pub fn mat_cq(&mut self, rows: usize, cols: usize) -> Mat<Cq> {
        let mut m = Mat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.cq());
            }
        }
        m
    }

    /// Skew-Hermitian matrix B = R − R† of small rational entries.
    pub fn skew_hermitian_cq(&mut self, n: usize) -> Mat<Cq> {
        let r = self.mat_cq(n, n);
        &r - &r.dagger()
    }

    /// Uniform float in −1.0 ..= 1.0.
    pub fn f64_unit(&mut self) -> f64 {
        self.rng.gen_range(-1.0..=1.0)
    }

    /// Complex float with coordinates in −1 ..= 1.
    pub fn c64(&mut self) -> C64 {
        C64::new(self.f64_unit(), self.f64_unit())
    }

    /// Matrix of complex floats with coordinates in −1 ..= 1.
    pub fn mat_c64(&mut self, rows: usize, cols: usize) -> Mat<C64> {
        let mut m = Mat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.c64());
            }
        }
        m
    }

    /// Real rational spacetime vector with small entries.
    pub fn vec4_rational(&mut self, max_num: i64, max_den: i64) -> [Cq; 4] {
        std::array::from_fn(|_| Cq::new(self.rational(max_num, max_den), q(0, 1)))
    }

    /// Random matrix-valued polynomial: every monomial of total degree
    /// ≤ `max_deg` appears with probability ~1/2, with small ℚ(i)
    /// coefficients. The constant term is always present.
    pub fn poly_cq(&mut self, rows: usize, cols: usize, max_deg: u32) -> SpacetimePoly<Cq> {
        let mut p = SpacetimePoly::constant(self.mat_cq(rows, cols));
        let d = max_deg as usize;
        for a0 in 0..=d {
            for a1 in 0..=(d - a0) {
                for a2 in 0..=(d - a0 - a1) {
                    for a3 in 0..=(d - a0 - a1 - a2) {
                        if a0 + a1 + a2 + a3 == 0 || self.rng.gen_range(0..2) == 0 {
                            continue;
                        }
                        let idx = [a0 as u32, a1 as u32, a2 as u32, a3 as u32];
                        p.add_term(idx, self.mat_cq(rows, cols));
                    }
                }
            }
        }
        p
    }

    /// Random real-coefficient polynomial (rational coefficients, no
    /// imaginary parts), as used for gauge-field coordinates.
    pub fn poly_real(&mut self, rows: usize, cols: usize, max_deg: u32) -> SpacetimePoly<Cq> {
        self.poly_cq(rows, cols, max_deg)
            .map_coeffs(|m| m.map(|z| Cq::new(z.re.clone(), q(0, 1))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SampleRng::new(7);
        let mut b = SampleRng::new(7);
        for _ in 0..16 {
            assert_eq!(a.cq(), b.cq());
        }
    }

    #[test]
    fn skew_hermitian_is_skew() {
        let mut rng = SampleRng::new(3);
        let m = rng.skew_hermitian_cq(3);
        assert_eq!(m.dagger(), -m);
    }
}
