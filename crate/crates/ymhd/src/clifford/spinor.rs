//! Plain and internally twisted spinors with chirality bookkeeping.

use crate::mathkit::mat::Mat;
use crate::mathkit::scalar::Scalar;

/// A Dirac spinor: four components, the first two left-handed (Γ₅ = +1), the
/// last two right-handed (Γ₅ = −1).
#[derive(Clone, PartialEq, Debug)]
pub struct Spinor<S: Scalar> {
    mat: Mat<S>,
}

impl<S: Scalar> Spinor<S> {
    pub fn new(components: [S; 4]) -> Self {
        Spinor { mat: Mat::col_vec(components.to_vec()) }
    }

    pub fn zero() -> Self {
        Spinor { mat: Mat::zeros(4, 1) }
    }

    pub fn from_mat(mat: Mat<S>) -> Self {
        assert!(mat.rows() == 4 && mat.cols() == 1, "spinor is a 4-component column");
        Spinor { mat }
    }

    pub fn mat(&self) -> &Mat<S> {
        &self.mat
    }

    pub fn component(&self, s: usize) -> &S {
        self.mat.get(s, 0)
    }

    /// Left-handed projection: keeps components 0–1, zeroes 2–3.
    pub fn chiral_l(&self) -> Self {
        let mut m = self.mat.clone();
        m.set(2, 0, S::zero());
        m.set(3, 0, S::zero());
        Spinor { mat: m }
    }

    /// Right-handed projection: keeps components 2–3, zeroes 0–1.
    pub fn chiral_r(&self) -> Self {
        let mut m = self.mat.clone();
        m.set(0, 0, S::zero());
        m.set(1, 0, S::zero());
        Spinor { mat: m }
    }

    pub fn add(&self, other: &Self) -> Self {
        Spinor { mat: &self.mat + &other.mat }
    }

    pub fn scale(&self, c: &S) -> Self {
        Spinor { mat: self.mat.scale(c) }
    }
}

/// Chirality sector of a twisted spinor with internal space V = V_L ⊕ V_R.
///
/// In the `Plus` sector left-handed spinor rows pair with V_L columns and
/// right-handed rows with V_R columns; Clifford multiplication and other
/// odd-degree actions swap to the `Minus` sector, where the pairing is
/// crossed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sector {
    Plus,
    Minus,
}

impl Sector {
    pub fn flipped(self) -> Sector {
        match self {
            Sector::Plus => Sector::Minus,
            Sector::Minus => Sector::Plus,
        }
    }
}

/// A spinor twisted by the fermionic internal space: a 4 × (d_L + d_R) matrix
/// (spinor row index, internal column index) whose support respects the
/// chirality sector.
#[derive(Clone, PartialEq, Debug)]
pub struct TwistedSpinor<S: Scalar> {
    sector: Sector,
    dim_l: usize,
    dim_r: usize,
    mat: Mat<S>,
}

impl<S: Scalar> TwistedSpinor<S> {
    /// Wrap a full 4×(d_L+d_R) matrix, checking the sector support pattern.
    pub fn new(sector: Sector, dim_l: usize, dim_r: usize, mat: Mat<S>) -> Self {
        assert!(mat.rows() == 4 && mat.cols() == dim_l + dim_r, "twisted spinor shape");
        let ts = TwistedSpinor { sector, dim_l, dim_r, mat };
        ts.assert_sector_support();
        ts
    }

    pub fn zero(sector: Sector, dim_l: usize, dim_r: usize) -> Self {
        TwistedSpinor { sector, dim_l, dim_r, mat: Mat::zeros(4, dim_l + dim_r) }
    }

    /// Assemble from the two nonzero 2×d blocks: `left_block` carries the V_L
    /// columns, `right_block` the V_R columns. In the + sector the V_L block
    /// sits in the left-handed rows 0–1; in the − sector in rows 2–3.
    pub fn from_blocks(
        sector: Sector,
        left_block: &Mat<S>,
        right_block: &Mat<S>,
    ) -> Self {
        assert!(left_block.rows() == 2 && right_block.rows() == 2, "blocks have 2 spinor rows");
        let (dim_l, dim_r) = (left_block.cols(), right_block.cols());
        let mut mat = Mat::zeros(4, dim_l + dim_r);
        let (l_row0, r_row0) = match sector {
            Sector::Plus => (0, 2),
            Sector::Minus => (2, 0),
        };
        for r in 0..2 {
            for c in 0..dim_l {
                mat.set(l_row0 + r, c, left_block.get(r, c).clone());
            }
            for c in 0..dim_r {
                mat.set(r_row0 + r, dim_l + c, right_block.get(r, c).clone());
            }
        }
        TwistedSpinor { sector, dim_l, dim_r, mat }
    }

    fn assert_sector_support(&self) {
        let (zero_rows_l, zero_rows_r) = match self.sector {
            Sector::Plus => ((2, 4), (0, 2)),
            Sector::Minus => ((0, 2), (2, 4)),
        };
        for r in zero_rows_l.0..zero_rows_l.1 {
            for c in 0..self.dim_l {
                assert!(
                    self.mat.get(r, c).is_exactly_zero(),
                    "V_L column {c} must vanish on spinor row {r} in sector {:?}",
                    self.sector
                );
            }
        }
        for r in zero_rows_r.0..zero_rows_r.1 {
            for c in self.dim_l..self.dim_l + self.dim_r {
                assert!(
                    self.mat.get(r, c).is_exactly_zero(),
                    "V_R column {c} must vanish on spinor row {r} in sector {:?}",
                    self.sector
                );
            }
        }
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

    pub fn mat(&self) -> &Mat<S> {
        &self.mat
    }

    /// The 2×d_L block carried by the V_L columns (rows depend on the sector).
    pub fn left_block(&self) -> Mat<S> {
        let row0 = match self.sector {
            Sector::Plus => 0,
            Sector::Minus => 2,
        };
        let mut b = Mat::zeros(2, self.dim_l);
        for r in 0..2 {
            for c in 0..self.dim_l {
                b.set(r, c, self.mat.get(row0 + r, c).clone());
            }
        }
        b
    }

    /// The 2×d_R block carried by the V_R columns.
    pub fn right_block(&self) -> Mat<S> {
        let row0 = match self.sector {
            Sector::Plus => 2,
            Sector::Minus => 0,
        };
        let mut b = Mat::zeros(2, self.dim_r);
        for r in 0..2 {
            for c in 0..self.dim_r {
                b.set(r, c, self.mat.get(row0 + r, self.dim_l + c).clone());
            }
        }
        b
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.sector, other.sector, "sector mismatch");
        assert!(self.dim_l == other.dim_l && self.dim_r == other.dim_r, "dimension mismatch");
        TwistedSpinor {
            sector: self.sector,
            dim_l: self.dim_l,
            dim_r: self.dim_r,
            mat: &self.mat + &other.mat,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        TwistedSpinor {
            sector: self.sector,
            dim_l: self.dim_l,
            dim_r: self.dim_r,
            mat: self.mat.scale(c),
        }
    }

    /// Apply spinor-side matrix `a` (4×4) and internal-side matrix `b`
    /// ((d_L+d_R)-square, acting on the internal index): Ψ ↦ a·Ψ·bᵀ, with
    /// the sector adjusted by `flips`.
    pub fn apply(&self, a: &Mat<S>, b: &Mat<S>, flips: bool) -> Self {
        let sector = if flips { self.sector.flipped() } else { self.sector };
        TwistedSpinor::new(
            sector,
            self.dim_l,
            self.dim_r,
            a.matmul(&self.mat).matmul(&b.transpose()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::scalar::{Cq, Scalar};

    fn n(v: i64) -> Cq {
        <Cq as Scalar>::from_i64(v)
    }

    #[test]
    fn chiral_projections_split_and_idempotent() {
        let psi = Spinor::new([n(1), n(2), n(3), n(4)]);
        let l = psi.chiral_l();
        let r = psi.chiral_r();
        assert_eq!(l.add(&r), psi);
        assert_eq!(l.chiral_l(), l);
        assert_eq!(r.chiral_r(), r);
        assert_eq!(l.chiral_r(), Spinor::zero());
    }

    #[test]
    fn plus_sector_support_pattern() {
        let left = Mat::from_rows(vec![vec![n(1), n(2)], vec![n(3), n(4)]]);
        let right = Mat::from_rows(vec![vec![n(5)], vec![n(6)]]);
        let ts = TwistedSpinor::from_blocks(Sector::Plus, &left, &right);
        assert_eq!(ts.mat().get(0, 0), &n(1));
        assert_eq!(ts.mat().get(2, 2), &n(5));
        assert!(ts.mat().get(2, 0).is_exactly_zero());
        assert!(ts.mat().get(0, 2).is_exactly_zero());
        assert_eq!(ts.left_block(), left);
        assert_eq!(ts.right_block(), right);
    }

    #[test]
    #[should_panic(expected = "must vanish")]
    fn wrong_support_is_rejected() {
        let mut m: Mat<Cq> = Mat::zeros(4, 2);
        m.set(2, 0, n(1)); // V_L column on a right-handed row in the + sector
        TwistedSpinor::new(Sector::Plus, 1, 1, m);
    }
}
