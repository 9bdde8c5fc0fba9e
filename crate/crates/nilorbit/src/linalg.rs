//! Dense exact linear algebra over a [`Scalar`] field.
//!
//! Reduced row echelon form is the workhorse: kernels, solving, inversion
//! and the canonical subspace representation all reduce to it. Everything
//! is exact; there is no pivoting heuristic beyond "lowest column first",
//! which keeps every derived object deterministic.

use num::Zero;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> Mat<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut K {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[K] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = K::zero();
            for k in 0..self.cols {
                if !self.at(i, k).is_zero() && !other.at(k, j).is_zero() {
                    acc = acc + self.at(i, k).clone() * other.at(k, j).clone();
                }
            }
            acc
        })
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = K::zero();
                for k in 0..self.cols {
                    if !self.at(i, k).is_zero() && !v[k].is_zero() {
                        acc = acc + self.at(i, k).clone() * v[k].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() + other.at(i, j).clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() - other.at(i, j).clone()
        })
    }

    pub fn scale(&self, s: &K) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() * s.clone())
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (lead..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, pr);
            let inv = self.at(lead, col).inv().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.at(lead, c).clone() * inv.clone();
                *self.at_mut(lead, c) = v;
            }
            for r in 0..self.rows {
                if r != lead && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c).clone() - factor.clone() * self.at(lead, c).clone();
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Canonical basis of the right kernel `{v : M v = 0}`.
    ///
    /// One basis vector per free column, free coordinate set to one; the
    /// list is itself in reduced echelon form up to row order, hence
    /// canonical for the subspace.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut basis = Vec::new();
        let mut piv_iter = pivots.iter().copied().enumerate();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, c) in piv_iter.by_ref() {
            pivot_of_col[c] = Some(r);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![K::zero(); self.cols];
            v[free] = K::one();
            for (c, pr) in pivot_of_col.iter().enumerate() {
                if let Some(r) = pr {
                    v[c] = -m.at(*r, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `M x = rhs` with all free variables zero, if any.
    pub fn solve(&self, rhs: &[K]) -> Option<Vec<K>> {
        assert_eq!(self.rows, rhs.len(), "solve shape");
        let mut aug = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![K::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                K::one()
            } else {
                K::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug.at(i, n + j).clone()))
    }

    /// True if `M^k = 0` for some `k <= bound`.
    pub fn is_nilpotent(&self, bound: usize) -> bool {
        let mut acc = self.clone();
        for _ in 0..bound {
            if acc.is_zero() {
                return true;
            }
            acc = acc.mul(self);
        }
        acc.is_zero()
    }
}

pub fn vec_add<K: Scalar>(a: &[K], b: &[K]) -> Vec<K> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<K: Scalar>(a: &[K], b: &[K]) -> Vec<K> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_neg<K: Scalar>(a: &[K]) -> Vec<K> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn vec_scale<K: Scalar>(a: &[K], s: &K) -> Vec<K> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn dot<K: Scalar>(a: &[K], b: &[K]) -> K {
    assert_eq!(a.len(), b.len());
    let mut acc = K::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

pub fn is_zero_vec<K: Scalar>(a: &[K]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn unit_vec<K: Scalar>(n: usize, i: usize) -> Vec<K> {
    let mut v = vec![K::zero(); n];
    v[i] = K::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, Rational};

    fn m(rows: &[&[i64]]) -> Mat<Rational> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    #[test]
    fn rref_and_rank() {
        let mut a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let pivots = a.rref_in_place();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a.row(0), &[qi(1), qi(0), qi(1)]);
        assert_eq!(a.row(1), &[qi(0), qi(1), qi(1)]);
        assert!(is_zero_vec(a.row(2)));
    }

    #[test]
    fn kernel_is_exact() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(is_zero_vec(&a.mul_vec(v)));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = a.solve(&[qi(3), qi(2)]).unwrap();
        assert_eq!(x, vec![qi(1), qi(1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.mul(&a), Mat::identity(2));
        assert_eq!(*inv.at(0, 1), qi(-1));

        let sing = m(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[qi(1), qi(0)]).is_none());
    }

    #[test]
    fn nilpotence_check() {
        let n = m(&[&[0, 1], &[0, 0]]);
        assert!(n.is_nilpotent(2));
        let id: Mat<Rational> = Mat::identity(2);
        assert!(!id.is_nilpotent(5));
        assert_eq!(*n.scale(&q(1, 2)).at(0, 1), q(1, 2));
    }
}
