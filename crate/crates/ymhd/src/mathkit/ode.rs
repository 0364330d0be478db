//! Fourth-order Runge–Kutta integration of linear matrix ODEs y′ = G(t)·y.
//!
//! Parallel transport along lightlike rays solves U̇ + A_γ(γ̇)U = 0, a linear
//! system with smooth time-dependent generator. Classical RK4 on a uniform
//! grid gives O(h⁴) global accuracy, which the transport tolerances budget for.

use super::mat::Mat;
use super::scalar::C64;

/// One labelled sample of the solution trajectory.
#[derive(Clone, Debug)]
pub struct OdeState {
    pub t: f64,
    pub y: Mat<C64>,
}

/// Integrate y′ = G(t)·y from `t0` to `t1` with `steps` uniform RK4 steps,
/// returning the full trajectory including both endpoints.
pub fn ode_integrate(
    g: impl Fn(f64) -> Mat<C64>,
    y0: Mat<C64>,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Vec<OdeState> {
    assert!(steps >= 1, "at least one step");
    let h = (t1 - t0) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push(OdeState { t: t0, y: y.clone() });
    let half = C64::new(0.5 * h, 0.0);
    let sixth = C64::new(h / 6.0, 0.0);
    let two = C64::new(2.0, 0.0);
    for n in 0..steps {
        let t = t0 + n as f64 * h;
        let k1 = g(t).matmul(&y);
        let k2 = g(t + 0.5 * h).matmul(&(&y + &k1.scale(&half)));
        let k3 = g(t + 0.5 * h).matmul(&(&y + &k2.scale(&half)));
        let k4 = g(t + h).matmul(&(&y + &k3.scale(&C64::new(h, 0.0))));
        let incr = &(&k1 + &k2.scale(&two)) + &(&k3.scale(&two) + &k4);
        y = &y + &incr.scale(&sixth);
        out.push(OdeState { t: t0 + (n + 1) as f64 * h, y: y.clone() });
    }
    out
}

/// Final state convenience wrapper around [`ode_integrate`].
pub fn ode_solve_final(
    g: impl Fn(f64) -> Mat<C64>,
    y0: Mat<C64>,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Mat<C64> {
    ode_integrate(g, y0, t0, t1, steps).pop().expect("nonempty trajectory").y
}

/// exp(M) for a complex matrix by scaling-and-squaring on the Taylor series.
pub fn mat_exp(m: &Mat<C64>) -> Mat<C64> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "square matrix");
    let norm = m.max_mag() * n as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = C64::new(0.5_f64.powi(squarings as i32), 0.0);
    let a = m.scale(&scale);
    let mut sum = Mat::identity(n);
    let mut term: Mat<C64> = Mat::identity(n);
    for k in 1..=24 {
        term = term.matmul(&a).scale(&C64::new(1.0 / k as f64, 0.0));
        sum = &sum + &term;
        if term.max_mag() < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_generator_matches_exponential() {
        // y′ = M y with constant M: y(1) = exp(M) y(0)
        let m = Mat::from_rows(vec![
            vec![C64::new(0.0, 0.3), C64::new(0.2, -0.1)],
            vec![C64::new(-0.2, -0.1), C64::new(0.0, -0.3)],
        ]);
        let y0 = Mat::from_rows(vec![vec![C64::new(1.0, 0.0)], vec![C64::new(0.0, 1.0)]]);
        let got = ode_solve_final(|_| m.clone(), y0.clone(), 0.0, 1.0, 200);
        let expect = mat_exp(&m).matmul(&y0);
        let diff = &got - &expect;
        assert!(diff.max_mag() <= 1e-10, "RK4 vs exp: {}", diff.max_mag());
    }

    #[test]
    fn halving_step_gains_fourth_order() {
        let g = |t: f64| Mat::from_rows(vec![vec![C64::new(t.sin(), 0.5 * t.cos())]]);
        let y0 = Mat::from_rows(vec![vec![C64::new(1.0, 0.0)]]);
        // exact solution: exp(∫₀¹ g) for this commuting (scalar) generator
        let integral = C64::new(1.0 - 1.0_f64.cos(), 0.5 * 1.0_f64.sin());
        let exact = integral.exp();
        let err = |steps| {
            let y = ode_solve_final(g, y0.clone(), 0.0, 1.0, steps);
            (y.get(0, 0) - exact).norm()
        };
        let ratio = err(10) / err(20);
        assert!((ratio - 16.0).abs() < 3.0, "expected ~2⁴ gain, got {ratio}");
    }
}
