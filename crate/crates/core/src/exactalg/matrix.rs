//! Dense matrices over a [`Ring`], with fraction-free determinants and
//! Pfaffians.

use alloc::vec::Vec;
use core::fmt;

use super::{ExactAlgError, Ring};

#[derive(Clone, PartialEq)]
pub struct RingMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> RingMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RingMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        RingMatrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        RingMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &RingMatrix<T>) -> Result<Self, ExactAlgError> {
        if self.cols != rhs.rows {
            return Err(ExactAlgError::ShapeMismatch(
                self.rows, self.cols, rhs.rows, rhs.cols,
            ));
        }
        Ok(RingMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * rhs.get(k, j).clone();
            }
            acc
        }))
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        RingMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (i + 1..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone())
            })
    }

    fn require_square(&self) -> Result<(), ExactAlgError> {
        if self.rows != self.cols {
            return Err(ExactAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Determinant by Bareiss elimination with row pivoting.
    pub fn det(&self) -> Result<T, ExactAlgError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.data.clone();
        let at = |i: usize, j: usize| i * n + j;
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[at(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[at(r, k)].is_zero()) else {
                    return Ok(T::zero());
                };
                for j in 0..n {
                    m.swap(at(k, j), at(r, j));
                }
                negate = !negate;
            }
            let pivot = m[at(k, k)].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = pivot.clone() * m[at(i, j)].clone()
                        - m[at(i, k)].clone() * m[at(k, j)].clone();
                    m[at(i, j)] = num.div_exact(&prev).expect("Bareiss quotient is exact");
                }
            }
            prev = pivot;
        }
        let d = m[at(n - 1, n - 1)].clone();
        Ok(if negate { -d } else { d })
    }

    /// Determinant by cofactor expansion along the first row. Exponential;
    /// meant as an independent check on small matrices.
    pub fn det_cofactor(&self) -> Result<T, ExactAlgError> {
        self.require_square()?;
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.cofactor_rec(&idx, &idx))
    }

    fn cofactor_rec(&self, rows: &[usize], cols: &[usize]) -> T {
        if rows.is_empty() {
            return T::one();
        }
        let mut acc = T::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let a = self.get(rows[0], c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.clone() * self.cofactor_rec(&rows[1..], &rest);
            acc = if pos % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn require_skew(&self) -> Result<(), ExactAlgError> {
        self.require_square()?;
        if self.rows % 2 == 1 {
            return Err(ExactAlgError::OddDimension(self.rows));
        }
        if !self.is_skew() {
            return Err(ExactAlgError::NotSkew);
        }
        Ok(())
    }

    /// Pfaffian by fraction-free skew elimination.
    ///
    /// After step `k` the entry `(c, d)` holds the Pfaffian of the principal
    /// submatrix on the first `2k + 2` indices together with `c, d`; each
    /// update is a 4×4 Pfaffian divided exactly by the previous pivot.
    pub fn pfaffian(&self) -> Result<T, ExactAlgError> {
        self.require_skew()?;
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.data.clone();
        let at = |i: usize, j: usize| i * n + j;
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n / 2 - 1 {
            let (a, b) = (2 * k, 2 * k + 1);
            if m[at(a, b)].is_zero() {
                let Some(c) = (b + 1..n).find(|&c| !m[at(a, c)].is_zero()) else {
                    return Ok(T::zero());
                };
                for j in 0..n {
                    m.swap(at(b, j), at(c, j));
                }
                for i in 0..n {
                    m.swap(at(i, b), at(i, c));
                }
                negate = !negate;
            }
            let pivot = m[at(a, b)].clone();
            for c in b + 1..n {
                for d in c + 1..n {
                    let num = pivot.clone() * m[at(c, d)].clone()
                        - m[at(a, c)].clone() * m[at(b, d)].clone()
                        + m[at(a, d)].clone() * m[at(b, c)].clone();
                    let v = num.div_exact(&prev).expect("Pfaffian quotient is exact");
                    m[at(d, c)] = -v.clone();
                    m[at(c, d)] = v;
                }
            }
            prev = pivot;
        }
        let p = m[at(n - 2, n - 1)].clone();
        let p = if negate { -p } else { p };
        debug_assert!(n > 8 || p.clone() * p.clone() == self.det().expect("square"));
        Ok(p)
    }

    /// Pfaffian as a signed sum over perfect matchings. Exponential; meant
    /// as an independent check on small matrices.
    pub fn pfaffian_matchings(&self) -> Result<T, ExactAlgError> {
        self.require_skew()?;
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.matching_rec(&idx))
    }

    fn matching_rec(&self, idx: &[usize]) -> T {
        if idx.is_empty() {
            return T::one();
        }
        let first = idx[0];
        let mut acc = T::zero();
        for pos in 1..idx.len() {
            let a = self.get(first, idx[pos]);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..]
                .iter()
                .enumerate()
                .filter(|(p, _)| *p + 1 != pos)
                .map(|(_, &x)| x)
                .collect();
            let term = a.clone() * self.matching_rec(&rest);
            acc = if pos % 2 == 1 { acc + term } else { acc - term };
        }
        acc
    }
}

impl<T: fmt::Debug> fmt::Debug for RingMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        l.finish()
    }
}
