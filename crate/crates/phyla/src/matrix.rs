//! Dense exact matrices over F_p.
//!
//! A matrix is a linear map F_p^cols -> F_p^rows, stored row-major with every
//! entry reduced. Composition is ordinary matrix product, so `a.mul(&b)`
//! means "apply `b` first". All eliminations pivot on the first nonzero row
//! in column order, which makes every derived basis deterministic.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{fadd, finv, fmul, fneg, freduce, fsub};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl core::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Matrix({}x{} mod {})[", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    /// Builds a matrix from row-major entries, reducing them mod p.
    pub fn new(p: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let entries = entries.into_iter().map(|e| e % p).collect();
        Matrix { p, rows, cols, entries }
    }

    /// Builds a matrix from row-major signed entries (test and fixture sugar).
    pub fn from_signed(p: u64, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let entries = entries.iter().map(|&e| freduce(p, e)).collect();
        Matrix { p, rows, cols, entries }
    }

    pub fn zero(p: u64, rows: usize, cols: usize) -> Matrix {
        Matrix { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Matrix {
        let mut m = Matrix::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Matrix {
        let mut m = Matrix::zero(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j) % p);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v % self.p;
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| fadd(self.p, a, b))
            .collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| fsub(self.p, a, b))
            .collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|&a| fneg(self.p, a)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let c = c % self.p;
        let entries = self.entries.iter().map(|&a| fmul(self.p, a, c)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul shape {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        assert_eq!(self.p, other.p, "mul field");
        let p = self.p as u128;
        let mut out = Matrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u128 * other.get(k, j) as u128;
                }
                out.set(i, j, (acc % p) as u64);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Horizontal concatenation `[a | b | ...]`; all blocks share a row count.
    pub fn hstack(p: u64, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(p, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.paste(0, off, b);
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks share a column count.
    pub fn vstack(p: u64, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zero(p, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack col mismatch");
            out.paste(off, 0, b);
            off += b.rows;
        }
        out
    }

    /// Block diagonal sum of the given maps.
    pub fn direct_sum(p: u64, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(p, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "paste bounds");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    /// Extracts the `rows x cols` block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block bounds");
        Matrix::from_fn(self.p, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Single column as a rows x 1 matrix.
    pub fn column(&self, j: usize) -> Matrix {
        self.block(0, self.rows, j, 1)
    }

    /// Flattens row-major into a (rows*cols) x 1 column vector.
    pub fn vec_rowmajor(&self) -> Matrix {
        Matrix { p: self.p, rows: self.rows * self.cols, cols: 1, entries: self.entries.clone() }
    }

    /// Inverse of `vec_rowmajor`.
    pub fn from_vec_rowmajor(p: u64, rows: usize, cols: usize, v: &Matrix) -> Matrix {
        assert_eq!(v.cols, 1, "expected a column vector");
        assert_eq!(v.rows, rows * cols, "vector length mismatch");
        Matrix { p, rows, cols, entries: v.entries.clone() }
    }

    /// Kronecker product: block `(i, j)` of the result is `a[i,j] * b`, so the
    /// row index `(i, k)` flattens to `i * b.rows + k`. This flattening is
    /// associative, which downstream code relies on literally.
    pub fn kron(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.p, b.p, "kron field");
        let mut out = Matrix::zero(self.p, self.rows * b.rows, self.cols * b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        out.set(i * b.rows + k, j * b.cols + l, fmul(self.p, a, b.get(k, l)));
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let t = self.get(a, j);
            self.set(a, j, self.get(b, j));
            self.set(b, j, t);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    /// Pivoting always picks the first nonzero row, so the output is a
    /// deterministic function of the input.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = match (r..m.rows).find(|&i| m.get(i, c) != 0) {
                Some(i) => i,
                None => continue,
            };
            m.swap_rows(r, pivot_row);
            let inv = finv(p, m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, fmul(p, m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = fsub(p, m.get(i, j), fmul(p, f, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ x : self * x = 0 }` as the columns of a cols x nullity
    /// matrix. Basis vectors are indexed by the free columns in ascending
    /// order; each has a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let is_pivot = |c: usize| pivots.binary_search(&c).is_ok();
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot(c)).collect();
        let mut out = Matrix::zero(self.p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, fneg(self.p, r.get(pi, fc)));
            }
        }
        out
    }

    /// Projection onto the cokernel of `self`: a (rows - rank) x rows matrix
    /// of full row rank with `proj * self = 0`. Surjective input gives the
    /// 0 x rows matrix; zero input gives the identity.
    pub fn cokernel_projection(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Solves `self * x = b` columnwise. Returns `None` when inconsistent;
    /// otherwise free variables are set to zero, so the solution is the
    /// deterministic minimal-support representative of its coset.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve shape");
        assert_eq!(self.p, b.p, "solve field");
        let aug = Matrix::hstack(self.p, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.p, self.cols, b.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(pi, self.cols + j));
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.p, self.rows))?;
        // A right inverse of a square matrix is two-sided.
        if x.mul(self).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    /// Right inverse of a surjective map (a section).
    pub fn right_inverse(&self) -> Option<Matrix> {
        let x = self.solve(&Matrix::identity(self.p, self.rows))?;
        Some(x)
    }

    /// Left inverse of an injective map (a retraction).
    pub fn left_inverse(&self) -> Option<Matrix> {
        let xt = self.transpose().solve(&Matrix::identity(self.p, self.cols))?;
        Some(xt.transpose())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        Matrix::from_signed(101, rows, cols, entries)
    }

    #[test]
    fn rref_normalises_dependent_rows() {
        let (r, pivots) = m(2, 2, &[2, 4, 1, 2]).rref();
        assert_eq!(r, m(2, 2, &[1, 2, 0, 0]));
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn kernel_basis_of_single_relation() {
        let k = m(1, 2, &[1, 2]).kernel_basis();
        assert_eq!(k, m(2, 1, &[-2, 1]));
    }

    #[test]
    fn kernel_of_zero_map_is_identity() {
        // 0 x 3 matrix: the zero map out of F^3 has full kernel.
        let k = Matrix::zero(101, 0, 3).kernel_basis();
        assert!(k.is_identity());
        let k = Matrix::zero(101, 2, 3).kernel_basis();
        assert!(k.is_identity());
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        let k = m(2, 1, &[1, 0]).kernel_basis();
        assert_eq!(k.cols(), 0);
        assert_eq!(k.rows(), 1);
    }

    #[test]
    fn cokernel_projection_of_column_inclusion() {
        let c = m(2, 1, &[1, 0]).cokernel_projection();
        assert_eq!(c, m(1, 2, &[0, 1]));
    }

    #[test]
    fn cokernel_projection_extremes() {
        assert!(Matrix::zero(101, 3, 3).cokernel_projection().is_identity());
        // surjective map has trivial cokernel
        let c = m(1, 2, &[1, 5]).cokernel_projection();
        assert_eq!((c.rows(), c.cols()), (0, 1));
        // inclusion of 0 into F^2
        let c = Matrix::zero(101, 2, 0).cokernel_projection();
        assert!(c.is_identity());
    }

    #[test]
    fn solve_underdetermined_zeroes_free_variables() {
        let x = m(1, 2, &[1, 1]).solve(&m(1, 1, &[3])).unwrap();
        assert_eq!(x, m(2, 1, &[3, 0]));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(2, 1, &[1, 1]);
        assert!(a.solve(&m(2, 1, &[1, 2])).is_none());
        assert!(a.solve(&m(2, 1, &[2, 2])).is_some());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn one_sided_inverses() {
        let inj = m(3, 2, &[1, 0, 0, 1, 1, 1]);
        let l = inj.left_inverse().unwrap();
        assert!(l.mul(&inj).is_identity());
        let surj = inj.transpose();
        let r = surj.right_inverse().unwrap();
        assert!(surj.mul(&r).is_identity());
        assert!(surj.left_inverse().is_none());
    }

    #[test]
    fn kron_block_layout() {
        let a = m(1, 2, &[1, 2]);
        let b = m(2, 1, &[3, 4]);
        // (i,k) row flattens to i*b.rows + k; (j,l) col to j*b.cols + l.
        assert_eq!(a.kron(&b), m(2, 2, &[3, 6, 4, 8]));
    }

    #[test]
    fn kron_flattening_is_associative() {
        let a = m(2, 1, &[1, 2]);
        let b = m(1, 2, &[3, 4]);
        let c = m(2, 2, &[5, 6, 7, 8]);
        assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn empty_matrices_compose() {
        let a = Matrix::zero(101, 0, 2);
        let b = Matrix::zero(101, 2, 3);
        let ab = a.mul(&b);
        assert_eq!((ab.rows(), ab.cols()), (0, 3));
        let c = Matrix::zero(101, 3, 0);
        let bc = b.mul(&c);
        assert_eq!((bc.rows(), bc.cols()), (2, 0));
        assert_eq!(bc.rank(), 0);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    const P: u64 = 101;

    fn arb_matrix(max_dim: usize) -> impl Strategy<Value = Matrix> {
        (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..P, r * c)
                .prop_map(move |entries| Matrix::new(P, r, c, entries))
        })
    }

    fn arb_pair(max_dim: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
        (0..=max_dim, 0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, k, c)| {
            let a = proptest::collection::vec(0..P, r * k)
                .prop_map(move |e| Matrix::new(P, r, k, e));
            let b = proptest::collection::vec(0..P, k * c)
                .prop_map(move |e| Matrix::new(P, k, c, e));
            (a, b)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((a, _) in arb_pair(5)) {
            prop_assert_eq!(a.rank() + a.kernel_basis().cols(), a.cols());
        }

        #[test]
        fn kernel_vectors_are_killed(a in arb_matrix(5)) {
            let k = a.kernel_basis();
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn cokernel_kills_image_and_has_full_rank(a in arb_matrix(5)) {
            let c = a.cokernel_projection();
            prop_assert!(c.mul(&a).is_zero());
            prop_assert_eq!(c.rank(), c.rows());
            prop_assert_eq!(c.rows() + a.rank(), a.rows());
        }

        #[test]
        fn solve_recovers_consistent_systems((a, x) in arb_pair(5)) {
            let b = a.mul(&x);
            let sol = a.solve(&b).expect("consistent by construction");
            prop_assert_eq!(a.mul(&sol), b);
        }

        #[test]
        fn rref_is_idempotent(a in arb_matrix(5)) {
            let (r, piv) = a.rref();
            let (rr, piv2) = r.rref();
            prop_assert_eq!(r, rr);
            prop_assert_eq!(piv, piv2);
        }

        #[test]
        fn kron_is_multiplicative((a, b) in arb_pair(3), (c, d) in arb_pair(3)) {
            // (A (x) C)(B (x) D) = AB (x) CD
            let lhs = a.kron(&c).mul(&b.kron(&d));
            let rhs = a.mul(&b).kron(&c.mul(&d));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn transpose_reverses_products((a, b) in arb_pair(4)) {
            prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        }
    }
}
