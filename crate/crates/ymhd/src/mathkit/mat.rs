//! Small dense matrices over a [`Scalar`], with exact Gaussian elimination.
//!
//! Row-major storage. Sizes in this crate stay tiny (4×4 spinor blocks, at most
//! a few dozen rows for Standard-Model internal spaces), so no effort is spent
//! on blocking or sparsity; the payoff is that the same code runs verbatim
//! over ℚ(i) and over ℂ.

use super::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense `rows × cols` matrix over the scalar `S`.
#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, S::one());
        }
        m
    }

    /// Build from a row-of-rows literal.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        assert!(r > 0);
        let c = rows[0].len();
        assert!(c > 0 && rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Column vector from entries.
    pub fn col_vec(entries: Vec<S>) -> Self {
        let r = entries.len();
        Mat { rows: r, cols: 1, data: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    /// Entry-wise map.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Scale by a scalar.
    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).conj());
            }
        }
        m
    }

    /// Entry-wise conjugate (no transpose).
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn trace(&self) -> S {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let mut t = S::zero();
        for k in 0..self.rows {
            t = t + self.get(k, k).clone();
        }
        t
    }

    /// Kronecker product (used for outer tensor products of representations).
    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_exactly_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        m.set(
                            r1 * other.rows + r2,
                            c1 * other.cols + c2,
                            a.clone() * other.get(r2, c2).clone(),
                        );
                    }
                }
            }
        }
        m
    }

    /// True when every entry is the exact zero.
    pub fn is_exactly_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_exactly_zero())
    }

    /// Largest entry magnitude (float proxy; exact zero ⇒ 0.0).
    pub fn max_mag(&self) -> f64 {
        self.data.iter().map(|x| x.mag()).fold(0.0, f64::max)
    }

    /// Frobenius norm proxy.
    pub fn frob(&self) -> f64 {
        self.data.iter().map(|x| x.mag() * x.mag()).sum::<f64>().sqrt()
    }

    /// Matrix commutator [A, B] = AB − BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other) - other.matmul(self)
    }

    /// Matrix product.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_exactly_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = m.get(r, c).clone() + a.clone() * other.get(k, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Solve A·X = B by Gaussian elimination with magnitude pivoting.
    ///
    /// Over ℚ(i) the pivot choice only avoids exact zeros, so the result is
    /// exact; over ℂ it provides partial pivoting. Returns `None` when the
    /// system is (numerically) singular.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "solve expects a square matrix");
        assert_eq!(self.rows, rhs.rows, "rhs height mismatch");
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            // Pick the row with the largest pivot magnitude.
            let mut best = None;
            let mut best_mag = 0.0;
            for r in col..n {
                let m = a.get(r, col).mag();
                if m > best_mag {
                    best_mag = m;
                    best = Some(r);
                }
            }
            let piv_row = best?;
            if a.get(piv_row, col).is_exactly_zero() {
                return None;
            }
            if piv_row != col {
                a.swap_rows(piv_row, col);
                b.swap_rows(piv_row, col);
            }
            let inv = a.get(col, col).try_inv()?;
            for c in 0..n {
                let v = a.get(col, c).clone() * inv.clone();
                a.set(col, c, v);
            }
            for c in 0..b.cols {
                let v = b.get(col, c).clone() * inv.clone();
                b.set(col, c, v);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_exactly_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let v = a.get(r, c).clone() - f.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                }
                for c in 0..b.cols {
                    let v = b.get(r, c).clone() - f.clone() * b.get(col, c).clone();
                    b.set(r, c, v);
                }
            }
        }
        Some(b)
    }

    /// Matrix inverse via [`Mat::solve`] against the identity.
    pub fn inverse(&self) -> Option<Self> {
        self.solve(&Self::identity(self.rows))
    }

    /// Determinant by Gaussian elimination with magnitude pivoting (exact
    /// over ℚ(i)).
    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant expects a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut best = col;
            let mut best_mag = 0.0;
            for r in col..n {
                let m = a.get(r, col).mag();
                if m > best_mag {
                    best_mag = m;
                    best = r;
                }
            }
            if a.get(best, col).is_exactly_zero() {
                return S::zero();
            }
            if best != col {
                a.swap_rows(best, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = det * pivot.clone();
            let Some(inv) = pivot.try_inv() else { return S::zero() };
            for r in col + 1..n {
                let f = a.get(r, col).clone() * inv.clone();
                if f.is_exactly_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a.get(r, c).clone() - f.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
    }

    /// Null space basis (columns), by reduction to row echelon form.
    ///
    /// Exact over ℚ(i); over ℂ treats entries with magnitude below `tol` as zero.
    pub fn null_space(&self, tol: f64) -> Vec<Mat<S>> {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivot_cols = Vec::new();
        let mut row = 0usize;
        for col in 0..cols {
            // Find pivot.
            let mut best = None;
            let mut best_mag = tol;
            for r in row..rows {
                let m = a.get(r, col).mag();
                if m > best_mag {
                    best_mag = m;
                    best = Some(r);
                }
            }
            let Some(piv) = best else { continue };
            a.swap_rows(piv, row);
            let inv = match a.get(row, col).try_inv() {
                Some(v) => v,
                None => continue,
            };
            for c in 0..cols {
                let v = a.get(row, c).clone() * inv.clone();
                a.set(row, c, v);
            }
            for r in 0..rows {
                if r == row {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_exactly_zero() {
                    continue;
                }
                for c in 0..cols {
                    let v = a.get(r, c).clone() - f.clone() * a.get(row, c).clone();
                    a.set(r, c, v);
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == rows {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = Mat::zeros(cols, 1);
            v.set(fc, 0, S::one());
            for (pr, &pc) in pivot_cols.iter().enumerate() {
                v.set(pc, 0, S::zero() - a.get(pr, fc).clone());
            }
            basis.push(v);
        }
        basis
    }
}

impl<S: Scalar> Add for Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<S: Scalar> Add for &Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: Self) -> Mat<S> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in add");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<S: Scalar> Sub for Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Scalar> Sub for &Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: Self) -> Mat<S> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in sub");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<S: Scalar> Neg for Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        self.map(|x| S::zero() - x.clone())
    }
}

impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: Self) -> Mat<S> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{:?} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::scalar::{q, Cq};

    fn rat(p: i64, den: i64) -> Cq {
        Cq::new(q(p, den), q(0, 1))
    }

    #[test]
    fn exact_solve_round_trip() {
        let a = Mat::from_rows(vec![
            vec![rat(2, 1), rat(1, 3)],
            vec![rat(-1, 2), rat(5, 7)],
        ]);
        let b = Mat::from_rows(vec![vec![rat(1, 1)], vec![rat(0, 1)]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.matmul(&x), b);
    }

    #[test]
    fn singular_solve_fails() {
        let a = Mat::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
        ]);
        assert!(a.solve(&Mat::identity(2)).is_none());
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = Mat::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(2, 1), rat(4, 1)],
        ]);
        let ns = a.null_space(0.0);
        assert_eq!(ns.len(), 1);
        assert!(a.matmul(&ns[0]).is_exactly_zero());
    }

    #[test]
    fn kron_shapes_and_identity() {
        let a = Mat::<Cq>::identity(2);
        let b = Mat::<Cq>::identity(3);
        assert_eq!(a.kron(&b), Mat::<Cq>::identity(6));
    }
}
