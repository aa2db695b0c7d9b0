//! Dense matrices over arbitrary-precision rationals.
//!
//! Everything downstream (group elements, Lie directions, character
//! functionals, span comparisons) reduces to exact operations here. There is
//! no floating point anywhere: equality of matrices, membership of a matrix
//! in a span, and nilpotency are all decided exactly.
//!
//! Public indices on `get`/`set` are 0-based. Constructors that mirror the
//! classical `e_{i,j}` labeling live in `matgroup` and convert from 1-based
//! there.

use crate::error::{Error, Result};
use crate::rat::{rat, rat_string, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Rat>, // row-major
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.n_rows, self.n_cols)?;
        for r in 0..self.n_rows {
            let row: Vec<String> = (0..self.n_cols).map(|c| rat_string(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, data: vec![Rat::zero(); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Square matrix with a single 1 at 0-based position (r, c).
    pub fn unit_entry(dim: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zero(dim, dim);
        m.set(r, c, Rat::one());
        m
    }

    /// Antidiagonal identity: 1 at (i, n-1-i) for each row i.
    pub fn antidiagonal_identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, Rat::one());
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in 0..n_rows {
            for c in 0..n_cols {
                data.push(f(r, c));
            }
        }
        Self { n_rows, n_cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let n_rows = rows.len();
        let n_cols = if n_rows == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        Self::from_fn(n_rows, n_cols, |r, c| rat(rows[r][c]))
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.n_cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.n_cols + c] = v;
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.n_rows).all(|r| {
                (0..self.n_cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |r, c| self.get(c, r).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.n_rows, self.n_cols, |r, c| -self.get(r, c).clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_fn(self.n_rows, self.n_cols, |r, c| self.get(r, c) * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols), "shape mismatch in add");
        Self::from_fn(self.n_rows, self.n_cols, |r, c| self.get(r, c) + other.get(r, c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols), "shape mismatch in sub");
        Self::from_fn(self.n_rows, self.n_cols, |r, c| self.get(r, c) - other.get(r, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_cols, other.n_rows, "shape mismatch in mul");
        let mut out = Self::zero(self.n_rows, other.n_cols);
        for r in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.n_cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c) + a * b;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    /// Commutator AB - BA.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut t = Rat::zero();
        for i in 0..self.n_rows {
            t += self.get(i, i);
        }
        t
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.n_rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduced row echelon form together with the rank.
    ///
    /// RREF is a canonical representative of the row space, so two sets of
    /// vectors span the same space iff their stacked RREFs (zero rows
    /// dropped) are equal.
    pub fn rref(&self) -> (Self, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0usize;
        for col in 0..m.n_cols {
            if pivot_row >= m.n_rows {
                break;
            }
            let Some(src) = (pivot_row..m.n_rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.n_cols {
                    let a = m.get(pivot_row, c).clone();
                    let b = m.get(src, c).clone();
                    m.set(pivot_row, c, b);
                    m.set(src, c, a);
                }
            }
            let inv = {
                let p = m.get(pivot_row, col).clone();
                Rat::one() / p
            };
            for c in col..m.n_cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.n_rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.n_cols {
                    let v = m.get(r, c) - &f * m.get(pivot_row, c);
                    m.set(r, c, v);
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.n_rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Rat::zero();
            };
            if src != col {
                det = -det;
                for c in 0..n {
                    let a = m.get(col, c).clone();
                    let b = m.get(src, c).clone();
                    m.set(col, c, b);
                    m.set(src, c, a);
                }
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in (col + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col) / &pivot;
                for c in col..n {
                    let v = m.get(r, c) - &f * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{} matrix",
                self.n_rows, self.n_cols
            )));
        }
        let n = self.n_rows;
        let mut aug = Self::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rat::one());
        }
        let (red, _) = aug.rref();
        // The augmented matrix always has row rank n thanks to the identity
        // block, so invertibility must be read off the reduced left block.
        for r in 0..n {
            for c in 0..n {
                let v = red.get(r, c);
                if (r == c && !v.is_one()) || (r != c && !v.is_zero()) {
                    return Err(Error::SingularMatrix(format!(
                        "rank {} < {n}",
                        self.rank()
                    )));
                }
            }
        }
        Ok(Self::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }

    /// g m g^{-1}.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        let g_inv = g.inverse()?;
        Ok(g.mul(self).mul(&g_inv))
    }

    /// Exponential of a nilpotent matrix: the series terminates exactly.
    /// Errors if the matrix is not nilpotent.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("exp of non-square matrix".into()));
        }
        let n = self.n_rows;
        let mut acc = Self::identity(n);
        let mut term = Self::identity(n);
        let mut k = 0u64;
        loop {
            k += 1;
            term = term.mul(self);
            if term.is_zero_matrix() {
                return Ok(acc);
            }
            if k as usize > n {
                return Err(Error::InvalidParameter("matrix is not nilpotent".into()));
            }
            let factorial_inv = {
                let mut f = Rat::one();
                for i in 1..=k {
                    f *= rat(i as i64);
                }
                Rat::one() / f
            };
            acc = acc.add(&term.scale(&factorial_inv));
        }
    }

    /// Row vector of length n_rows * n_cols (row-major flattening).
    pub fn vectorize(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn row_strings(&self) -> Vec<Vec<String>> {
        (0..self.n_rows)
            .map(|r| (0..self.n_cols).map(|c| rat_string(self.get(r, c))).collect())
            .collect()
    }

    /// Entries with their absolute value summed; handy as a cheap "size" in
    /// debug assertions.
    pub fn l1_norm(&self) -> Rat {
        let mut s = Rat::zero();
        for v in &self.data {
            s += v.abs();
        }
        s
    }
}

/// Stacks the row-major flattenings of equally-shaped matrices.
pub fn stack_vectorized(mats: &[RationalMatrix]) -> RationalMatrix {
    if mats.is_empty() {
        return RationalMatrix::zero(0, 0);
    }
    let cols = mats[0].n_rows() * mats[0].n_cols();
    assert!(
        mats.iter().all(|m| m.n_rows() == mats[0].n_rows() && m.n_cols() == mats[0].n_cols()),
        "shape mismatch in span stack"
    );
    RationalMatrix::from_fn(mats.len(), cols, |r, c| mats[r].vectorize()[c].clone())
}

/// Canonical basis (RREF rows, zero rows dropped) of the span of `mats`
/// inside the ambient matrix space.
pub fn span_basis(mats: &[RationalMatrix]) -> RationalMatrix {
    let stacked = stack_vectorized(mats);
    let (red, rank) = stacked.rref();
    RationalMatrix::from_fn(rank, red.n_cols(), |r, c| red.get(r, c).clone())
}

pub fn span_dimension(mats: &[RationalMatrix]) -> usize {
    stack_vectorized(mats).rank()
}

pub fn same_span(a: &[RationalMatrix], b: &[RationalMatrix]) -> bool {
    if a.is_empty() && b.is_empty() {
        return true;
    }
    if a.is_empty() || b.is_empty() {
        return a.iter().all(|m| m.is_zero_matrix()) && b.iter().all(|m| m.is_zero_matrix());
    }
    if a[0].n_rows() != b[0].n_rows() || a[0].n_cols() != b[0].n_cols() {
        return false;
    }
    span_basis(a) == span_basis(b)
}

pub fn span_contains(basis: &[RationalMatrix], m: &RationalMatrix) -> bool {
    if m.is_zero_matrix() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let without = span_dimension(basis);
    let mut with: Vec<RationalMatrix> = basis.to_vec();
    with.push(m.clone());
    span_dimension(&with) == without
}

/// Block-diagonal assembly of square blocks.
pub fn block_diag(blocks: &[RationalMatrix]) -> RationalMatrix {
    let dim: usize = blocks.iter().map(|b| b.n_rows()).sum();
    assert!(blocks.iter().all(RationalMatrix::is_square), "block_diag needs square blocks");
    let mut out = RationalMatrix::zero(dim, dim);
    let mut off = 0usize;
    for b in blocks {
        for r in 0..b.n_rows() {
            for c in 0..b.n_cols() {
                out.set(off + r, off + c, b.get(r, c).clone());
            }
        }
        off += b.n_rows();
    }
    out
}

/// The skew form defining the symplectic group used throughout:
/// with n = half_rank and 1-based labels, J has +1 at (i, 2n+1-i) for
/// i <= n and -1 at (i, 2n+1-i) for i > n. In blocks, J = [[0, K], [-K, 0]]
/// with K the antidiagonal identity.
pub fn symplectic_form(half_rank: usize) -> RationalMatrix {
    let n = half_rank;
    let dim = 2 * n;
    let mut j = RationalMatrix::zero(dim, dim);
    for r in 0..dim {
        let v = if r < n { Rat::one() } else { -Rat::one() };
        j.set(r, dim - 1 - r, v);
    }
    j
}

pub fn is_symplectic(g: &RationalMatrix) -> bool {
    if !g.is_square() || g.n_rows() % 2 != 0 {
        return false;
    }
    let n = g.n_rows() / 2;
    let j = symplectic_form(n);
    g.transpose().mul(&j).mul(g) == j
}

/// A validated element of the symplectic group for the form above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticElement {
    mat: RationalMatrix,
    half_rank: usize,
}

impl SymplecticElement {
    pub fn new(mat: RationalMatrix) -> Result<Self> {
        if !mat.is_square() || mat.n_rows() % 2 != 0 {
            return Err(Error::NotSymplectic(format!(
                "matrix is {}x{}, need even square",
                mat.n_rows(),
                mat.n_cols()
            )));
        }
        if !is_symplectic(&mat) {
            return Err(Error::NotSymplectic("g^T J g != J".into()));
        }
        let half_rank = mat.n_rows() / 2;
        Ok(Self { mat, half_rank })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.mat
    }

    pub fn half_rank(&self) -> usize {
        self.half_rank
    }

    pub fn inverse(&self) -> Self {
        // symplectic matrices are invertible; unwrap is safe
        Self { mat: self.mat.inverse().expect("symplectic element invertible"), half_rank: self.half_rank }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.half_rank != other.half_rank {
            return Err(Error::DimensionMismatch("product of different-size elements".into()));
        }
        Ok(Self { mat: self.mat.mul(&other.mat), half_rank: self.half_rank })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn rref_and_rank() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (red, rank) = m.rref();
        assert_eq!(rank, 2);
        // canonical: leading ones, zeros above and below
        assert!(red.get(0, 0).is_one());
        assert!(red.get(1, 1).is_one());
        assert!(red.get(0, 1).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let singular = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn det_basics() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), rat(1));
        let m = RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), rat(-1));
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det(), rat(0));
    }

    #[test]
    fn symplectic_form_blocks() {
        // J = [[0, K], [-K, 0]] with K antidiagonal
        let j = symplectic_form(2);
        let expected = RationalMatrix::from_i64_rows(&[
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
            &[0, -1, 0, 0],
            &[-1, 0, 0, 0],
        ]);
        assert_eq!(j, expected);
        assert_eq!(j.det(), rat(1));
    }

    #[test]
    fn symplectic_membership() {
        assert!(is_symplectic(&RationalMatrix::identity(6)));
        // diag(a, a^{-1}) for the rank-1 form
        let t = RationalMatrix::from_fn(2, 2, |r, c| {
            if r != c {
                rat(0)
            } else if r == 0 {
                rat(3)
            } else {
                ratio(1, 3)
            }
        });
        assert!(is_symplectic(&t));
        // generic GL element is not symplectic
        let g = RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]);
        assert!(!is_symplectic(&g));
        assert!(SymplecticElement::new(g).is_err());
    }

    #[test]
    fn exp_of_nilpotent_terminates() {
        let n = RationalMatrix::from_i64_rows(&[&[0, 2, 0], &[0, 0, 3], &[0, 0, 0]]);
        let e = n.exp_nilpotent().unwrap();
        // exp = I + N + N^2/2
        assert_eq!(e.get(0, 1), &rat(2));
        assert_eq!(e.get(1, 2), &rat(3));
        assert_eq!(e.get(0, 2), &rat(3)); // 2*3/2
        let not_nilpotent = RationalMatrix::identity(2);
        assert!(not_nilpotent.exp_nilpotent().is_err());
    }

    #[test]
    fn span_comparison() {
        let a = vec![
            RationalMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]),
            RationalMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]),
        ];
        let b = vec![
            RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 0]]),
            RationalMatrix::from_i64_rows(&[&[1, -1], &[0, 0]]),
        ];
        assert!(same_span(&a, &b));
        assert!(span_contains(&a, &RationalMatrix::from_i64_rows(&[&[3, 7], &[0, 0]])));
        assert!(!span_contains(&a, &RationalMatrix::from_i64_rows(&[&[0, 0], &[1, 0]])));
        assert_eq!(span_dimension(&b), 2);
    }

    #[test]
    fn bracket_antisymmetry() {
        let a = RationalMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let b = RationalMatrix::from_i64_rows(&[&[0, 0], &[1, 0]]);
        let ab = a.bracket(&b);
        assert_eq!(ab, b.bracket(&a).neg());
        // [e12, e21] = e11 - e22
        assert_eq!(ab, RationalMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]));
    }
}
