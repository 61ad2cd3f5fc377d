//! Dense exact rational matrices, sized for desk-scale lattice work.

use num::traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = QMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        QMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    if !self[(i, k)].is_zero() && !v[k].is_zero() {
                        acc += &self[(i, k)] * &v[k];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination with
    /// partial pivoting on nonzero entries.
    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[(r, col)].is_zero());
            let Some(p) = pivot_row else {
                return Rat::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for r in (col + 1)..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &pivot;
                for c in col..n {
                    let sub = &factor * &a[(col, c)];
                    a[(r, c)] -= sub;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Exact inverse via Gauss-Jordan.
    pub fn inverse(&self) -> Result<QMat, Error> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[(r, col)].is_zero());
            let Some(p) = pivot_row else {
                return Err(Error::SingularBasis);
            };
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pivot = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] /= &pivot;
                inv[(col, c)] /= &pivot;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in 0..n {
                    let s1 = &factor * &a[(col, c)];
                    a[(r, c)] -= s1;
                    let s2 = &factor * &inv[(col, c)];
                    inv[(r, c)] -= s2;
                }
            }
        }
        Ok(inv)
    }

    /// Reduced row echelon form; returns pivot column indices.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row >= a.rows {
                break;
            }
            let pivot_row = (row..a.rows).find(|&r| !a[(r, col)].is_zero());
            let Some(p) = pivot_row else { continue };
            a.swap_rows(p, row);
            let pivot = a[(row, col)].clone();
            for c in 0..a.cols {
                a[(row, c)] /= &pivot;
            }
            for r in 0..a.rows {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for c in 0..a.cols {
                    let s = &factor * &a[(row, c)];
                    a[(r, c)] -= s;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {x : A x = 0}, columns of the result.
    pub fn kernel(&self) -> QMat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = QMat::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = Rat::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                out[(pc, k)] = -r[(prow, fc)].clone();
            }
        }
        out
    }

    /// Solve A x = b for square nonsingular A.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>, Error> {
        Ok(self.inverse()?.mul_vec(b))
    }

    /// Canonical reduced column echelon form (RREF of the transpose,
    /// transposed back); canonical representative of the column span.
    pub fn column_span_canonical(&self) -> QMat {
        let (r, pivots) = self.transpose().rref();
        let rank = pivots.len();
        QMat::from_fn(self.rows, rank, |i, j| r[(j, i)].clone())
    }

    /// Gram matrix of the columns with respect to inner-product matrix `g`:
    /// result = selfᵀ · g · self.
    pub fn gram_with(&self, g: &QMat) -> QMat {
        self.transpose().mul(&g.mul(self))
    }

    /// Positive definiteness via leading principal minors (exact).
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        for k in 1..=self.rows {
            let sub = QMat::from_fn(k, k, |i, j| self[(i, j)].clone());
            if !sub.det().is_positive() {
                return false;
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn m(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[1, 2]]);
        assert_eq!(a.det(), rat(3));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(2));
        assert_eq!(inv[(0, 0)], frac(2, 3));
    }

    #[test]
    fn singular_rejected() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.det(), rat(0));
        assert!(a.inverse().is_err());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        let prod = a.mul(&k);
        for i in 0..prod.rows() {
            assert!(prod[(i, 0)].is_zero());
        }
    }

    #[test]
    fn column_span_canonical_identifies_spans() {
        let a = m(&[&[1, 0], &[1, 1], &[0, 2]]);
        let b = m(&[&[2, 1], &[3, 2], &[2, 2]]); // same span, different basis
        assert_eq!(a.column_span_canonical(), b.column_span_canonical());
        let c = m(&[&[1, 0], &[0, 1], &[0, 0]]);
        assert_ne!(a.column_span_canonical(), c.column_span_canonical());
    }

    #[test]
    fn positive_definite_check() {
        assert!(m(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!m(&[&[1, 2], &[2, 1]]).is_positive_definite());
    }
}
