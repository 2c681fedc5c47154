//! Dense exact linear algebra over Q: reduced row echelon form, rank,
//! null spaces, inverses. Deterministic pivoting (first nonzero entry per
//! column) so every derived basis is canonical for its row space.

use crate::error::{Error, Result};
use crate::scalar::Q;
use num::{One, Zero};

/// Row-major dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Q::one();
        }
        m
    }

    /// Build from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::BadMatrix("rows have unequal lengths".into()));
        }
        Ok(QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }

    pub fn row_slice(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn matmul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.at(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(l, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j).clone();
                        *out.at_mut(i, j) = cur + a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mat_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form with zero rows dropped. Returns the nonzero
    /// echelon rows and the pivot column per row. The output is canonical for
    /// the row space.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // first nonzero entry at or below `row`
            let Some(p) = (row..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(row * m.cols + j, p * m.cols + j);
                }
            }
            let inv = m.at(row, col).clone();
            for j in col..m.cols {
                let v = m.at(row, j).clone();
                *m.at_mut(row, j) = v / &inv;
            }
            for i in 0..m.rows {
                if i != row && !m.at(i, col).is_zero() {
                    let f = m.at(i, col).clone();
                    for j in col..m.cols {
                        let sub = &f * m.at(row, j);
                        let v = m.at(i, j).clone();
                        *m.at_mut(i, j) = v - sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        m.data.truncate(row * m.cols);
        m.rows = row;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right null space {v : M v = 0}, one vector per
    /// free column, ordered by free column index.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left null space {u : u M = 0}.
    pub fn left_nullspace(&self) -> Vec<Vec<Q>> {
        self.transpose().nullspace()
    }

    /// Inverse of a square matrix, if nonsingular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Q::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = QMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = r.at(i, n + j).clone();
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_int;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q_int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.rows(), 2);
        assert_eq!(a.rank(), 2);
        // canonical: identical row space gives identical rref
        let b = m(&[&[1, 0, 1], &[3, 2, 5]]);
        let (r2, _) = b.rref();
        assert_eq!(r, r2);
    }

    #[test]
    fn nullspace_is_killed_by_matrix() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.mat_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn left_nullspace_kills_rows() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        let lns = a.left_nullspace();
        assert_eq!(lns.len(), 1);
        let u = &lns[0];
        for j in 0..2 {
            let mut acc = Q::zero();
            for i in 0..3 {
                acc += &u[i] * a.at(i, j);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), QMatrix::identity(2));
        let sing = m(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }
}
