//! Dense matrices over the rationals: determinants, solving, Pfaffians.

use crate::ratio::{rat, Rat};
use crate::{Error, Result};
use num::{One, Zero};

/// Row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_antisymmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if self[(i, j)] != -self[(j, i)].clone() {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| &self[(i, k)] * &other[(k, j)])
                .sum()
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Exact determinant by fraction-preserving Gaussian elimination.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero());
            let Some(p) = pivot else {
                return Rat::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pv = a[(col, col)].clone();
            det *= &pv;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &pv;
                for c in col..n {
                    let sub = &factor * &a[(col, c)];
                    a[(r, c)] -= sub;
                }
            }
        }
        det
    }

    /// Solves `self * x = b`; `None` when singular.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert!(self.is_square() && self.rows == b.len());
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if p != col {
                a.swap_rows(p, col);
                rhs.swap(p, col);
            }
            let pv = a[(col, col)].clone();
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &pv;
                for c in col..n {
                    let sub = &factor * &a[(col, c)];
                    a[(r, c)] -= sub;
                }
                let sub = &factor * &rhs[col];
                rhs[r] -= sub;
            }
        }
        Some(
            (0..n)
                .map(|i| &rhs[i] / &a[(i, i)])
                .collect(),
        )
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            cols.push(self.solve(&e)?);
        }
        Some(Mat::from_fn(n, n, |i, j| cols[j][i].clone()))
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            let pv = a[(rank, col)].clone();
            for r in rank + 1..rows {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &pv;
                for c in col..cols {
                    let sub = &factor * &a[(rank, c)];
                    a[(r, c)] -= sub;
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact Pfaffian of an even-dimensional antisymmetric matrix.
///
/// Skew-symmetric elimination by congruence: row/column swaps flip the sign,
/// adding a multiple of row `k+1` to row `j` together with the matching
/// column operation leaves the Pfaffian unchanged. The empty matrix has
/// Pfaffian 1.
pub fn pfaffian(m: &Mat) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::NotAntisymmetric(format!(
            "{}x{} is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    if !m.is_antisymmetric() {
        return Err(Error::NotAntisymmetric(
            "matrix is not exactly antisymmetric".into(),
        ));
    }
    let n = m.nrows();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    let mut a = m.clone();
    let mut sign = Rat::one();
    let mut prod = Rat::one();
    let mut k = 0;
    while k < n {
        // Find a nonzero entry in row k at column > k and move it to k+1.
        let Some(p) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
            return Ok(Rat::zero());
        };
        if p != k + 1 {
            swap_symmetric(&mut a, p, k + 1);
            sign = -sign;
        }
        let pivot = a[(k, k + 1)].clone();
        // Clear rows/columns k and k+1 beyond the 2x2 pivot block.
        for j in k + 2..n {
            if !a[(k, j)].is_zero() {
                let factor = &a[(k, j)] / &pivot;
                add_row_col(&mut a, k + 1, j, &factor);
            }
            if !a[(k + 1, j)].is_zero() {
                let factor = -(&a[(k + 1, j)] / &pivot);
                add_row_col(&mut a, k, j, &factor);
            }
        }
        prod *= &pivot;
        k += 2;
    }
    Ok(sign * prod)
}

/// Swap rows i,j and columns i,j (congruence by a permutation).
fn swap_symmetric(a: &mut Mat, i: usize, j: usize) {
    let n = a.nrows();
    for c in 0..n {
        let x = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = x;
    }
    for r in 0..n {
        let x = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = x;
    }
}

/// row_j -= f * row_src and col_j -= f * col_src (Pfaffian-preserving).
fn add_row_col(a: &mut Mat, src: usize, j: usize, f: &Rat) {
    let n = a.nrows();
    for c in 0..n {
        let sub = f * &a[(src, c)];
        a[(j, c)] -= sub;
    }
    for r in 0..n {
        let sub = f * &a[(r, src)];
        a[(r, j)] -= sub;
    }
}

/// Builds an antisymmetric matrix from its strict upper triangle, row by row.
pub fn antisymmetric_from_upper(n: usize, upper: &[Rat]) -> Mat {
    assert_eq!(upper.len(), n * (n - 1) / 2);
    let mut m = Mat::zeros(n, n);
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let v = it.next().unwrap().clone();
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
    }
    m
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}
