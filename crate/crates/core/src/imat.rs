//! Integer matrices: Hermite normal form, integer kernels, saturation and
//! unimodular completion. These carry the sublattice combinatorics; all
//! canonical forms used for deduplication live here.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

use crate::qmat::QMat;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        IMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Columns of a QMat scaled by the lcm of denominators (same column span).
    pub fn from_qmat_scaled(q: &QMat) -> Self {
        let mut lcm = BigInt::one();
        for i in 0..q.rows() {
            for j in 0..q.cols() {
                lcm = num::integer::lcm(lcm, q[(i, j)].denom().clone());
            }
        }
        IMat::from_fn(q.rows(), q.cols(), |i, j| {
            let r = &q[(i, j)] * Rat::from_integer(lcm.clone());
            r.to_integer()
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IMat {
        IMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        IMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                if !self[(i, k)].is_zero() && !other[(k, j)].is_zero() {
                    acc += &self[(i, k)] * &other[(k, j)];
                }
            }
            acc
        })
    }

    pub fn to_qmat(&self) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| {
            Rat::from_integer(self[(i, j)].clone())
        })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let add = k * &self[(source, c)];
            self[(target, c)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self[(i, c)].clone();
            self[(i, c)] = v;
        }
    }

    /// Row-style Hermite normal form with transform: returns (H, U) with
    /// U unimodular and U·A = H. H is in row echelon shape with positive
    /// pivots and entries above each pivot reduced into [0, pivot).
    pub fn row_hnf(&self) -> (IMat, IMat) {
        let mut h = self.clone();
        let mut u = IMat::identity(self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row >= self.rows {
                break;
            }
            // Euclidean elimination in this column below pivot_row.
            loop {
                let mut best: Option<usize> = None;
                for r in pivot_row..self.rows {
                    if !h[(r, col)].is_zero() {
                        best = match best {
                            None => Some(r),
                            Some(b) => {
                                if h[(r, col)].magnitude() < h[(b, col)].magnitude() {
                                    Some(r)
                                } else {
                                    Some(b)
                                }
                            }
                        };
                    }
                }
                let Some(b) = best else { break };
                h.swap_rows(b, pivot_row);
                u.swap_rows(b, pivot_row);
                let mut done = true;
                let pivot = h[(pivot_row, col)].clone();
                for r in (pivot_row + 1)..self.rows {
                    if h[(r, col)].is_zero() {
                        continue;
                    }
                    let q = div_round_floor(&h[(r, col)], &pivot);
                    h.add_row_multiple(r, pivot_row, &(-q.clone()));
                    u.add_row_multiple(r, pivot_row, &(-q));
                    if !h[(r, col)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[(pivot_row, col)].is_zero() {
                continue;
            }
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            // Reduce entries above the pivot into [0, pivot).
            let pivot = h[(pivot_row, col)].clone();
            for r in 0..pivot_row {
                let q = div_round_floor(&h[(r, col)], &pivot);
                h.add_row_multiple(r, pivot_row, &(-q.clone()));
                u.add_row_multiple(r, pivot_row, &(-q));
            }
            pivot_row += 1;
        }
        (h, u)
    }

    pub fn rank(&self) -> usize {
        let (h, _) = self.row_hnf();
        (0..h.rows)
            .filter(|&r| (0..h.cols).any(|c| !h[(r, c)].is_zero()))
            .count()
    }

    /// Basis of the integer kernel {x in Z^cols : A x = 0}, as columns.
    /// The result is automatically saturated (a primitive sublattice basis).
    pub fn kernel(&self) -> IMat {
        let (h, u) = self.transpose().row_hnf();
        let rank = (0..h.rows)
            .filter(|&r| (0..h.cols).any(|c| !h[(r, c)].is_zero()))
            .count();
        // Rows of U beyond the rank annihilate the transpose; as columns they
        // span the kernel.
        IMat::from_fn(self.cols, self.cols - rank, |i, j| u[(rank + j, i)].clone())
    }

    /// Canonical Hermite form of the column lattice: unique basis of the
    /// sublattice generated by the columns. Zero columns are dropped.
    pub fn column_lattice_hnf(&self) -> IMat {
        let (h, _) = self.transpose().row_hnf();
        let nonzero: Vec<usize> = (0..h.rows)
            .filter(|&r| (0..h.cols).any(|c| !h[(r, c)].is_zero()))
            .collect();
        IMat::from_fn(self.rows, nonzero.len(), |i, j| h[(nonzero[j], i)].clone())
    }

    /// Saturation of the column span: canonical basis of
    /// (Q-span of columns) ∩ Z^rows.
    pub fn saturate_columns(&self) -> IMat {
        // Annihilator of the span, then its kernel; integer kernels are
        // saturated, and a final HNF makes the basis canonical.
        let ann = self.transpose().kernel(); // rows x (rows-rank) columns orthogonal to span
        let sat = ann.transpose().kernel();
        sat.column_lattice_hnf()
    }

    /// Whether the columns generate a saturated (primitive) sublattice.
    pub fn is_primitive(&self) -> bool {
        self.column_lattice_hnf() == self.saturate_columns()
    }

    /// For a primitive n×k column basis M, returns C with [M | C] unimodular.
    pub fn unimodular_completion(&self) -> IMat {
        let n = self.rows;
        let k = self.cols;
        let (h, u) = self.row_hnf();
        // U * M = H = [T; 0] with T k×k unimodular because M is primitive.
        let t = IMat::from_fn(k, k, |i, j| h[(i, j)].clone());
        debug_assert!(t.to_qmat().det().numer().magnitude() == BigInt::one().magnitude());
        let u_inv = qmat_to_imat_exact(&u.to_qmat().inverse().expect("unimodular"));
        IMat::from_fn(n, n - k, |i, j| u_inv[(i, k + j)].clone())
    }

    pub fn hnf_key(&self) -> Vec<BigInt> {
        let mut key = vec![BigInt::from(self.rows), BigInt::from(self.cols)];
        key.extend(self.data.iter().cloned());
        key
    }
}

fn div_round_floor(a: &BigInt, b: &BigInt) -> BigInt {
    num::integer::Integer::div_floor(a, b)
}

pub fn qmat_to_imat_exact(q: &QMat) -> IMat {
    IMat::from_fn(q.rows(), q.cols(), |i, j| {
        assert!(q[(i, j)].is_integer(), "expected integer matrix");
        q[(i, j)].to_integer()
    })
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Divide a vector by the gcd of its entries (canonical primitive vector).
pub fn primitive_vector(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = num::integer::gcd(g, x.clone());
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_transform_is_consistent() {
        let a = IMat::from_i64_rows(&[vec![4, 6], vec![2, 5], vec![0, 3]]);
        let (h, u) = a.row_hnf();
        assert_eq!(u.mul(&a), h);
        // U unimodular
        let det = u.to_qmat().det();
        assert!(det == Rat::from_integer(BigInt::one()) || det == -Rat::from_integer(BigInt::one()));
    }

    #[test]
    fn kernel_saturated() {
        // kernel of [2 4] in Z^2 is generated by (2,-1), not (4,-2)
        let a = IMat::from_i64_rows(&[vec![2, 4]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        let prod = a.mul(&k);
        assert!(prod[(0, 0)].is_zero());
        let v = primitive_vector(&k.col(0));
        assert_eq!(k.col(0), v);
    }

    #[test]
    fn saturation_divides_content() {
        // column (2,4): saturation is (1,2)
        let a = IMat::from_i64_rows(&[vec![2], vec![4]]);
        let s = a.saturate_columns();
        assert_eq!(s.col(0), vec![BigInt::from(1), BigInt::from(2)]);
        assert!(!a.is_primitive());
        assert!(s.is_primitive());
    }

    #[test]
    fn completion_is_unimodular() {
        let m = IMat::from_i64_rows(&[vec![1], vec![1], vec![0]]);
        assert!(m.is_primitive());
        let c = m.unimodular_completion();
        let full = IMat::from_fn(3, 3, |i, j| {
            if j == 0 {
                m[(i, 0)].clone()
            } else {
                c[(i, j - 1)].clone()
            }
        });
        let det = full.to_qmat().det();
        assert!(det.numer().magnitude() == BigInt::one().magnitude());
    }

    #[test]
    fn column_hnf_canonical() {
        let a = IMat::from_i64_rows(&[vec![1, 2], vec![1, 0]]);
        let b = IMat::from_i64_rows(&[vec![3, 2], vec![1, 0]]); // same column lattice
        assert_eq!(a.column_lattice_hnf(), b.column_lattice_hnf());
        let c = IMat::from_i64_rows(&[vec![1, 0], vec![0, 1]]);
        assert_ne!(a.column_lattice_hnf(), c.column_lattice_hnf());
    }
}
