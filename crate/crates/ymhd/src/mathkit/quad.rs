//! Composite Simpson quadrature for matrix-valued integrands on a segment.
//!
//! Action functionals and L² pairings over the causal diamond reduce, after
//! factoring the integrand into polynomial data, to one-dimensional integrals
//! of smooth matrix-valued functions. Composite Simpson is exact on cubics and
//! fourth-order accurate otherwise, which is all the discretized
//! gauge-variation oracle needs.

use super::mat::Mat;
use super::scalar::C64;

/// ∫ₐᵇ f(t) dt by composite Simpson on `panels` sub-intervals (each panel
/// contributes three nodes). Exact for polynomial integrands of degree ≤ 3.
pub fn quadrature_line(
    f: impl Fn(f64) -> Mat<C64>,
    a: f64,
    b: f64,
    panels: usize,
) -> Mat<C64> {
    assert!(panels >= 1, "at least one panel");
    let h = (b - a) / panels as f64;
    let shape = f(a);
    let mut acc = Mat::zeros(shape.rows(), shape.cols());
    let weight = |m: Mat<C64>, w: f64| m.scale(&C64::new(w, 0.0));
    for p in 0..panels {
        let x0 = a + p as f64 * h;
        let x1 = x0 + 0.5 * h;
        let x2 = x0 + h;
        let panel = &(&weight(f(x0), 1.0) + &weight(f(x1), 4.0)) + &weight(f(x2), 1.0);
        acc = &acc + &weight(panel, h / 6.0);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(f: impl Fn(f64) -> f64 + Copy) -> impl Fn(f64) -> Mat<C64> + Copy {
        move |t| Mat::from_rows(vec![vec![C64::new(f(t), 0.0)]])
    }

    #[test]
    fn exact_on_cubics() {
        // ∫₀¹ (2t³ − 3t² + t − 5) dt = 1/2 − 1 + 1/2 − 5 = −5
        let got = quadrature_line(scalar(|t| 2.0 * t.powi(3) - 3.0 * t * t + t - 5.0), 0.0, 1.0, 3);
        assert!((got.get(0, 0).re - (-5.0)).abs() <= 1e-12);
        assert!(got.get(0, 0).im.abs() <= 1e-12);
    }

    #[test]
    fn exp_converges_fourth_order() {
        let exact = 1.0_f64.exp() - 1.0;
        let got = quadrature_line(scalar(|t| t.exp()), 0.0, 1.0, 64);
        assert!((got.get(0, 0).re - exact).abs() <= 1e-8);
        let coarse = quadrature_line(scalar(|t| t.exp()), 0.0, 1.0, 8);
        let fine = quadrature_line(scalar(|t| t.exp()), 0.0, 1.0, 16);
        let ratio = (coarse.get(0, 0).re - exact).abs() / (fine.get(0, 0).re - exact).abs();
        assert!((ratio - 16.0).abs() < 1.0, "halving should gain ~2⁴: {ratio}");
    }
}
