//! The scalar abstraction: one trait, two rings.
//!
//! [`Cq`] is ℚ(i) — complex numbers with exact rational parts — used wherever a
//! statement must hold *exactly* (gamma algebra, interaction geometry, the
//! asymptotic-identity certificate). [`C64`] is ordinary double-precision ℂ,
//! used for polynomial field theory, transport ODEs and recovery, where the
//! acceptance thresholds are relative tolerances around 1e−8.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact Gaussian rational: re + i·im with re, im ∈ ℚ.
pub type Cq = Complex<BigRational>;

/// Double-precision complex scalar.
pub type C64 = Complex<f64>;

/// Common interface of the two scalar rings.
///
/// The trait deliberately exposes only what the layers above need: ring
/// operations (via supertraits), complex conjugation, the imaginary unit,
/// embedding of small rationals, exact-or-float inversion, and a magnitude
/// proxy used for pivot selection and approximate zero tests.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Complex conjugate.
    fn conj(&self) -> Self;
    /// The imaginary unit i.
    fn i() -> Self;
    /// Embed an integer.
    fn from_i64(n: i64) -> Self;
    /// Embed a rational p/q (q ≠ 0).
    fn from_ratio(p: i64, q: i64) -> Self;
    /// Multiplicative inverse, `None` when the element is zero (exact ring) or
    /// numerically negligible (float ring).
    fn try_inv(&self) -> Option<Self>;
    /// Magnitude proxy: |z| up to rounding. Used for pivoting and diagnostics,
    /// never for exact logic.
    fn mag(&self) -> f64;
    /// True for the additive identity (exact test in both rings).
    fn is_exactly_zero(&self) -> bool;
}

impl Scalar for Cq {
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Complex::new(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigRational::zero(),
        )
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_exactly_zero() {
            return None;
        }
        // 1/z = conj(z) / |z|²  with |z|² = re² + im² ∈ ℚ.
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Complex::new(&self.re / &norm, -&self.im / &norm))
    }

    fn mag(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::MAX);
        let im = self.im.to_f64().unwrap_or(f64::MAX);
        re.hypot(im)
    }

    fn is_exactly_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Scalar for C64 {
    fn conj(&self) -> Self {
        Complex::new(self.re, -self.im)
    }

    fn i() -> Self {
        Complex::new(0.0, 1.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Complex::new(p as f64 / q as f64, 0.0)
    }

    fn try_inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        Some(Complex::new(self.re / n, -self.im / n))
    }

    fn mag(&self) -> f64 {
        self.norm()
    }

    fn is_exactly_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

/// Convert an exact scalar to its floating image.
pub fn cq_to_c64(z: &Cq) -> C64 {
    Complex::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// Exact rational from a decimal-free pair, as a readability helper: q(3, 2) = 3/2.
pub fn q(p: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cq_inverse_is_exact() {
        let z = Cq::new(q(3, 7), q(-2, 5));
        let w = z.try_inv().unwrap();
        assert_eq!(z * w, <Cq as Scalar>::from_i64(1));
        assert!(Cq::zero().try_inv().is_none());
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        assert_eq!(<Cq as Scalar>::i() * <Cq as Scalar>::i(), <Cq as Scalar>::from_i64(-1));
        let i2 = <C64 as Scalar>::i() * <C64 as Scalar>::i();
        assert!((i2 + C64::one()).norm() == 0.0);
    }

    #[test]
    fn conjugation_is_involutive() {
        let z = Cq::new(q(1, 3), q(4, 9));
        assert_eq!(Scalar::conj(&Scalar::conj(&z)), z);
    }
}
